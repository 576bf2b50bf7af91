#include "elmiatt/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "elmiatt/error.hpp"

namespace elmiatt {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string at_line(std::size_t line_no) {
    return line_no ? "line " + std::to_string(line_no) + ": " : "";
}

double as_number(const ordered_json& j, const std::string& what, std::size_t line_no) {
    if (!j.is_number())
        throw Error(ErrorCode::SchemaError, at_line(line_no) + what + " must be a number");
    return j.get<double>();
}

std::vector<double> as_vector(const ordered_json& j, const std::string& what,
                              std::size_t line_no) {
    if (!j.is_array())
        throw Error(ErrorCode::SchemaError, at_line(line_no) + what + " must be an array");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& x : j)
        out.push_back(as_number(x, what + " entry", line_no));
    return out;
}

} // namespace

MiattSet to_miatt_set(const DatasetRecord& record) {
    std::vector<SoftTarget> targets;
    targets.reserve(record.miatts.size());
    for (const auto& row : record.miatts)
        targets.emplace_back(row);
    std::optional<std::vector<double>> weights;
    if (record.weights)
        weights = *record.weights;
    return MiattSet(std::move(targets), std::move(weights));
}

char fate_char(ElementFate fate) {
    switch (fate) {
    case ElementFate::Faithful: return 'f';
    case ElementFate::Corrupted: return 'c';
    case ElementFate::Omitted: return 'o';
    }
    return '?';
}

ElementFate fate_from_char(char c) {
    switch (c) {
    case 'f': return ElementFate::Faithful;
    case 'c': return ElementFate::Corrupted;
    case 'o': return ElementFate::Omitted;
    default:
        throw Error(ErrorCode::SchemaError,
                    std::string("fact_mask character must be f, c or o, got '") + c + "'");
    }
}

std::vector<std::string> mask_to_strings(const std::vector<std::vector<ElementFate>>& mask) {
    std::vector<std::string> out;
    out.reserve(mask.size());
    for (const auto& row : mask) {
        std::string s;
        s.reserve(row.size());
        for (auto f : row)
            s.push_back(fate_char(f));
        out.push_back(std::move(s));
    }
    return out;
}

DatasetRecord record_from_json_line(const std::string& line, std::size_t line_no) {
    ordered_json j;
    try {
        j = ordered_json::parse(line);
    } catch (const ordered_json::parse_error& e) {
        throw Error(ErrorCode::SchemaError, at_line(line_no) + "invalid JSON: " + e.what());
    }
    if (!j.is_object())
        throw Error(ErrorCode::SchemaError, at_line(line_no) + "record must be a JSON object");

    static const std::vector<std::string> known = {
        "id", "prediction", "miatts", "att", "exclusive_groups", "weights", "fact_mask"};
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw Error(ErrorCode::SchemaError, at_line(line_no) + "unknown field '" + key + "'");
    }
    for (const char* req : {"id", "prediction", "miatts"})
        if (!j.contains(req))
            throw Error(ErrorCode::SchemaError,
                        at_line(line_no) + "missing required field '" + req + "'");

    DatasetRecord r;
    if (!j["id"].is_string())
        throw Error(ErrorCode::SchemaError, at_line(line_no) + "id must be a string");
    r.id = j["id"].get<std::string>();

    r.prediction = as_vector(j["prediction"], "prediction", line_no);
    if (r.prediction.empty())
        throw Error(ErrorCode::SchemaError, at_line(line_no) + "prediction must be non-empty");
    const std::size_t m = r.prediction.size();

    if (!j["miatts"].is_array() || j["miatts"].size() < 2)
        throw Error(ErrorCode::SchemaError,
                    at_line(line_no) + "miatts must be an array of at least 2 targets");
    for (const auto& row : j["miatts"]) {
        auto v = as_vector(row, "miatt", line_no);
        if (v.size() != m)
            throw Error(ErrorCode::SchemaError,
                        at_line(line_no) + "miatt length differs from prediction length");
        r.miatts.push_back(std::move(v));
    }
    const std::size_t n = r.miatts.size();

    if (j.contains("att")) {
        auto v = as_vector(j["att"], "att", line_no);
        if (v.size() != m)
            throw Error(ErrorCode::SchemaError,
                        at_line(line_no) + "att length differs from prediction length");
        r.att = std::move(v);
    }
    if (j.contains("exclusive_groups")) {
        if (!j["exclusive_groups"].is_array())
            throw Error(ErrorCode::SchemaError,
                        at_line(line_no) + "exclusive_groups must be an array of index arrays");
        ExclusiveGroups groups;
        for (const auto& g : j["exclusive_groups"]) {
            if (!g.is_array())
                throw Error(ErrorCode::SchemaError,
                            at_line(line_no) + "exclusive group must be an index array");
            std::vector<std::size_t> group;
            for (const auto& idx : g) {
                if (!idx.is_number_unsigned())
                    throw Error(ErrorCode::SchemaError,
                                at_line(line_no) + "group index must be a non-negative integer");
                const auto e = idx.get<std::size_t>();
                if (e >= m)
                    throw Error(ErrorCode::SchemaError,
                                at_line(line_no) + "group index " + std::to_string(e) +
                                    " out of range for length " + std::to_string(m));
                group.push_back(e);
            }
            groups.push_back(std::move(group));
        }
        r.exclusive_groups = std::move(groups);
    }
    if (j.contains("weights")) {
        auto w = as_vector(j["weights"], "weights", line_no);
        if (w.size() != n)
            throw Error(ErrorCode::SchemaError,
                        at_line(line_no) + "weights count differs from miatts count");
        r.weights = std::move(w);
    }
    if (j.contains("fact_mask")) {
        if (!j["fact_mask"].is_array() || j["fact_mask"].size() != n)
            throw Error(ErrorCode::SchemaError,
                        at_line(line_no) + "fact_mask must hold one string per miatt");
        std::vector<std::string> mask;
        for (const auto& s : j["fact_mask"]) {
            if (!s.is_string())
                throw Error(ErrorCode::SchemaError,
                            at_line(line_no) + "fact_mask entries must be strings");
            auto str = s.get<std::string>();
            if (str.size() != m)
                throw Error(ErrorCode::SchemaError,
                            at_line(line_no) + "fact_mask length differs from prediction length");
            for (char c : str)
                fate_from_char(c); // validates the alphabet
            mask.push_back(std::move(str));
        }
        r.fact_mask = std::move(mask);
    }
    return r;
}

std::string record_to_json_line(const DatasetRecord& record) {
    ordered_json j;
    j["id"] = record.id;
    j["prediction"] = record.prediction;
    j["miatts"] = record.miatts;
    if (record.att)
        j["att"] = *record.att;
    if (record.exclusive_groups)
        j["exclusive_groups"] = *record.exclusive_groups;
    if (record.weights)
        j["weights"] = *record.weights;
    if (record.fact_mask)
        j["fact_mask"] = *record.fact_mask;
    return j.dump();
}

std::vector<DatasetRecord> read_dataset(std::istream& in) {
    std::vector<DatasetRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        records.push_back(record_from_json_line(line, line_no));
    }
    if (records.empty())
        throw Error(ErrorCode::EmptyDataset, "dataset holds no records");
    return records;
}

std::vector<DatasetRecord> read_dataset_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::IoError, "cannot open dataset file " + path);
    return read_dataset(in);
}

void write_dataset(std::ostream& out, const std::vector<DatasetRecord>& records) {
    for (const auto& r : records)
        out << record_to_json_line(r) << '\n';
}

void write_dataset_file(const std::string& path, const std::vector<DatasetRecord>& records) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorCode::IoError, "cannot open output file " + path);
    write_dataset(out, records);
    if (!out)
        throw Error(ErrorCode::IoError, "failed writing " + path);
}

EvalConfig parse_config(const std::string& json_text) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const ordered_json::parse_error& e) {
        throw Error(ErrorCode::ConfigError, std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw Error(ErrorCode::ConfigError, "config must be a JSON object");

    EvalConfig cfg;
    auto number = [&](const char* key, double& slot) {
        if (!j.contains(key))
            return;
        if (!j[key].is_number())
            throw Error(ErrorCode::ConfigError, std::string("config key ") + key + " must be a number");
        slot = j[key].get<double>();
    };
    number("delta", cfg.delta);
    number("delta_lo", cfg.delta_lo);
    number("delta_hi", cfg.delta_hi);
    number("tau_lo", cfg.tau_lo);
    number("tau_hi", cfg.tau_hi);
    number("alpha", cfg.alpha);
    number("gamma_q", cfg.gamma_q);
    number("lambda", cfg.lambda);
    number("gamma_k", cfg.gamma_k);
    number("eps_clamp", cfg.eps_clamp);
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned())
            throw Error(ErrorCode::ConfigError, "config key seed must be a non-negative integer");
        cfg.seed = j["seed"].get<std::uint64_t>();
    }

    static const std::vector<std::string> known = {"delta",  "delta_lo", "delta_hi", "tau_lo",
                                                   "tau_hi", "alpha",    "gamma_q",  "lambda",
                                                   "gamma_k", "eps_clamp", "seed"};
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw Error(ErrorCode::ConfigError, "unknown config key '" + key + "'");
    }

    cfg.validate();
    return cfg;
}

EvalConfig load_config_file(const std::string& path) {
    return parse_config(read_text_file(path));
}

std::string config_to_json(const EvalConfig& config) {
    ordered_json j;
    j["delta"] = config.delta;
    j["delta_lo"] = config.delta_lo;
    j["delta_hi"] = config.delta_hi;
    j["tau_lo"] = config.tau_lo;
    j["tau_hi"] = config.tau_hi;
    j["alpha"] = config.alpha;
    j["gamma_q"] = config.gamma_q;
    j["lambda"] = config.lambda;
    j["gamma_k"] = config.gamma_k;
    j["eps_clamp"] = config.eps_clamp;
    j["seed"] = config.seed;
    return j.dump();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::IoError, "cannot open file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorCode::IoError, "cannot open output file " + path);
    out << content;
    if (!out)
        throw Error(ErrorCode::IoError, "failed writing " + path);
}

} // namespace elmiatt
