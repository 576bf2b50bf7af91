#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "elmiatt/core.hpp"
#include "elmiatt/generator.hpp"
#include "elmiatt/laf.hpp"

namespace elmiatt {

// One JSON-lines dataset row. prediction/miatts/att share one length m;
// weights (one per IATT) and fact_mask (one f/c/o string per IATT) are
// optional extensions used by the generator and the weighted loss paths.
struct DatasetRecord {
    std::string id;
    std::vector<double> prediction;
    std::vector<std::vector<double>> miatts;
    std::optional<std::vector<double>> att;
    std::optional<ExclusiveGroups> exclusive_groups;
    std::optional<std::vector<double>> weights;
    std::optional<std::vector<std::string>> fact_mask;

    bool operator==(const DatasetRecord&) const = default;
};

MiattSet to_miatt_set(const DatasetRecord& record);

char fate_char(ElementFate fate);
ElementFate fate_from_char(char c); // throws SchemaError
std::vector<std::string> mask_to_strings(const std::vector<std::vector<ElementFate>>& mask);

// Shape errors (types, lengths, counts, group bounds) surface as SchemaError;
// value-range violations are left to the core constructors.
DatasetRecord record_from_json_line(const std::string& line, std::size_t line_no = 0);
std::string record_to_json_line(const DatasetRecord& record);

std::vector<DatasetRecord> read_dataset(std::istream& in);
std::vector<DatasetRecord> read_dataset_file(const std::string& path);
void write_dataset(std::ostream& out, const std::vector<DatasetRecord>& records);
void write_dataset_file(const std::string& path, const std::vector<DatasetRecord>& records);

// Config JSON: an object with any subset of the keys delta, delta_lo,
// delta_hi, tau_lo, tau_hi, alpha, gamma_q, lambda, gamma_k, eps_clamp,
// seed. Unknown keys are rejected.
EvalConfig parse_config(const std::string& json_text);
EvalConfig load_config_file(const std::string& path);
std::string config_to_json(const EvalConfig& config); // fixed key order

std::string read_text_file(const std::string& path);      // throws IoError
void write_text_file(const std::string& path, const std::string& content);

} // namespace elmiatt
