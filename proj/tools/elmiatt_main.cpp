// elmiatt: generate, assess and evaluate multiple-inaccurate-true-target
// datasets, and compare per-target vs aggregate-first losses.
//
// Exit codes: 0 success, 2 config error, 3 schema/io error, 4 domain error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "elmiatt/assessment.hpp"
#include "elmiatt/core.hpp"
#include "elmiatt/error.hpp"
#include "elmiatt/generator.hpp"
#include "elmiatt/io.hpp"
#include "elmiatt/laf.hpp"
#include "elmiatt/loss.hpp"
#include "elmiatt/rng.hpp"
#include "elmiatt/ternary.hpp"
#include "elmiatt/version.hpp"

using nlohmann::ordered_json;
using namespace elmiatt;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string input_path;
    std::string output_path; // empty -> stdout
    std::string csv_path;
    std::optional<double> delta, delta_lo, delta_hi, tau_lo, tau_hi;
    std::optional<double> alpha, gamma_q, lambda, gamma_k, eps_clamp;
    std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_input) {
    cmd->add_option("-c,--config", o.config_path, "JSON config file");
    auto* in = cmd->add_option("-i,--input", o.input_path, "input dataset (JSON lines)");
    if (needs_input)
        in->required();
    cmd->add_option("-o,--output", o.output_path, "output path (default: stdout)");
    cmd->add_option("--csv", o.csv_path, "also write per-sample rows as CSV");
    cmd->add_option("--delta", o.delta, "agreement band for boolean vectors");
    cmd->add_option("--delta-lo", o.delta_lo, "negative-fact cutoff");
    cmd->add_option("--delta-hi", o.delta_hi, "positive-fact cutoff");
    cmd->add_option("--tau-lo", o.tau_lo, "prediction 'off' cutoff");
    cmd->add_option("--tau-hi", o.tau_hi, "prediction 'on' cutoff");
    cmd->add_option("--alpha", o.alpha, "coverage weight in the quality score");
    cmd->add_option("--gamma-q", o.gamma_q, "redundancy penalty in the quality score");
    cmd->add_option("--lambda", o.lambda, "max vs noisy-OR mix weight");
    cmd->add_option("--gamma-k", o.gamma_k, "contradiction penalty strength");
    cmd->add_option("--eps-clamp", o.eps_clamp, "log clamp guard");
    cmd->add_option("--seed", o.seed, "RNG seed");
}

// File defaults, then flag overrides, then validation.
EvalConfig resolve_config(const CommonOpts& o) {
    EvalConfig cfg;
    if (!o.config_path.empty())
        cfg = load_config_file(o.config_path);
    if (o.delta) cfg.delta = *o.delta;
    if (o.delta_lo) cfg.delta_lo = *o.delta_lo;
    if (o.delta_hi) cfg.delta_hi = *o.delta_hi;
    if (o.tau_lo) cfg.tau_lo = *o.tau_lo;
    if (o.tau_hi) cfg.tau_hi = *o.tau_hi;
    if (o.alpha) cfg.alpha = *o.alpha;
    if (o.gamma_q) cfg.gamma_q = *o.gamma_q;
    if (o.lambda) cfg.lambda = *o.lambda;
    if (o.gamma_k) cfg.gamma_k = *o.gamma_k;
    if (o.eps_clamp) cfg.eps_clamp = *o.eps_clamp;
    if (o.seed) cfg.seed = *o.seed;
    cfg.validate();
    return cfg;
}

ordered_json make_report(const char* command, const EvalConfig& cfg) {
    ordered_json rep;
    rep["command"] = command;
    rep["tool_version"] = kVersion;
    rep["seed"] = cfg.seed;
    rep["config"] = ordered_json::parse(config_to_json(cfg));
    return rep;
}

void emit_text(const std::string& text, const std::string& path) {
    if (path.empty())
        std::cout << text;
    else
        write_text_file(path, text);
}

void emit_report(const ordered_json& rep, const std::string& path) {
    emit_text(rep.dump(2) + "\n", path);
}

std::string csv_cell(double x) { return ordered_json(x).dump(); }

void emit_csv(const std::string& path, const std::vector<std::string>& header,
              const std::vector<std::vector<std::string>>& rows) {
    if (path.empty())
        return;
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i)
        out += (i ? "," : "") + header[i];
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out += (i ? "," : "") + row[i];
        out += '\n';
    }
    write_text_file(path, out);
}

std::string record_id(std::size_t i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "s%06zu", i);
    return buf;
}

const std::vector<double>& require_att(const DatasetRecord& r) {
    if (!r.att)
        throw Error(ErrorCode::MissingAtt, "record " + r.id + " carries no att");
    return *r.att;
}

// --- generate ---

struct GenerateOpts {
    CommonOpts common;
    std::string pattern = "custom";
    std::size_t count = 1;
    std::size_t n = 2;
    std::size_t m = 8;
    double coverage = 1.0;
    double noise = 0.0;
    std::optional<double> overlap;
    std::string att_mode = "binary";
    double pred_noise = 0.0;
    std::string report_path;
};

// Seed salts keep the att, corruption and prediction streams decoupled while
// still being pure functions of (config seed, record index).
constexpr std::uint64_t kAttSalt = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kPredSalt = 0xD1B54A32D192ED03ull;

void run_generate(const GenerateOpts& o) {
    const EvalConfig cfg = resolve_config(o.common);
    const auto pattern = pattern_from_string(o.pattern);
    if (!pattern)
        throw Error(ErrorCode::ConfigError, "unknown pattern '" + o.pattern + "'");
    if (o.att_mode != "binary" && o.att_mode != "soft")
        throw Error(ErrorCode::ConfigError, "att mode must be binary or soft");
    if (!(o.pred_noise >= 0.0 && o.pred_noise <= 1.0))
        throw Error(ErrorCode::ConfigError, "pred-noise must lie in [0, 1]");
    if (o.count == 0)
        throw Error(ErrorCode::ConfigError, "count must be positive");

    std::vector<DatasetRecord> records;
    records.reserve(o.count);
    double union_sum = 0.0;
    for (std::size_t i = 0; i < o.count; ++i) {
        const std::uint64_t record_seed = cfg.seed + i;
        GenSpec spec;
        spec.m = o.m;
        spec.n = o.n;
        spec.coverage = o.coverage;
        spec.noise = o.noise;
        spec.pattern = *pattern;
        spec.overlap = o.overlap;
        spec.seed = record_seed;

        const auto att = generate_att(o.m, o.att_mode == "binary", record_seed ^ kAttSalt);
        const auto scenario = generate_miatts(att, spec);
        union_sum += union_coverage(scenario);

        Rng pred_rng(record_seed ^ kPredSalt);
        std::vector<double> pred = att.values();
        for (auto& p : pred)
            if (pred_rng.bernoulli(o.pred_noise))
                p = 1.0 - p;

        DatasetRecord r;
        r.id = record_id(i);
        r.prediction = std::move(pred);
        for (std::size_t n = 0; n < scenario.miatts.count(); ++n)
            r.miatts.push_back(scenario.miatts.target(n).values());
        r.att = att.values();
        r.fact_mask = mask_to_strings(scenario.fact_mask);
        records.push_back(std::move(r));
    }

    if (o.common.output_path.empty()) {
        write_dataset(std::cout, records);
    } else {
        write_dataset_file(o.common.output_path, records);
    }

    if (!o.report_path.empty()) {
        ordered_json rep = make_report("generate", cfg);
        ordered_json summary;
        summary["records"] = o.count;
        summary["pattern"] = to_string(*pattern);
        summary["n"] = o.n;
        summary["m"] = o.m;
        summary["coverage"] = o.coverage;
        summary["noise"] = o.noise;
        if (o.overlap)
            summary["overlap"] = *o.overlap;
        summary["att_mode"] = o.att_mode;
        summary["pred_noise"] = o.pred_noise;
        summary["mean_union_coverage"] = union_sum / static_cast<double>(o.count);
        rep["summary"] = std::move(summary);
        emit_report(rep, o.report_path);
    }
}

// --- assess ---

void run_assess(const CommonOpts& o) {
    const EvalConfig cfg = resolve_config(o);
    const auto records = read_dataset_file(o.input_path);

    ordered_json rep = make_report("assess", cfg);
    ordered_json rows = ordered_json::array();
    std::vector<std::vector<std::string>> csv;
    double quality_sum = 0.0;
    std::size_t counts[3] = {0, 0, 0};
    for (const auto& r : records) {
        const auto report = quality_score(to_miatt_set(r), cfg);
        ordered_json row;
        row["id"] = r.id;
        row["per_iatt_pr"] = report.per_iatt_pr;
        row["mean_pr"] = report.mean_pr;
        row["redundancy"] = report.redundancy;
        row["diversity"] = report.diversity;
        row["q_score"] = report.q_score;
        row["class"] = to_string(report.cls);
        rows.push_back(std::move(row));
        csv.push_back({r.id, csv_cell(report.mean_pr), csv_cell(report.redundancy),
                       csv_cell(report.diversity), csv_cell(report.q_score),
                       to_string(report.cls)});
        quality_sum += report.q_score;
        counts[static_cast<int>(report.cls)]++;
    }
    rep["per_sample"] = std::move(rows);
    ordered_json summary;
    summary["n_samples"] = records.size();
    summary["mean_q_score"] = quality_sum / static_cast<double>(records.size());
    summary["class_counts"] = {{"worst", counts[0]}, {"median", counts[1]}, {"best", counts[2]}};
    rep["summary"] = std::move(summary);
    emit_report(rep, o.output_path);
    emit_csv(o.csv_path, {"id", "mean_pr", "redundancy", "diversity", "q_score", "class"}, csv);
}

// --- eval-laf ---

void run_eval_laf(const CommonOpts& o) {
    const EvalConfig cfg = resolve_config(o);
    const auto records = read_dataset_file(o.input_path);

    ordered_json rep = make_report("eval-laf", cfg);
    ordered_json rows = ordered_json::array();
    std::vector<std::vector<std::string>> csv;
    std::vector<SampleScore> samples;
    samples.reserve(records.size());
    for (const auto& r : records) {
        const auto* groups = r.exclusive_groups ? &*r.exclusive_groups : nullptr;
        const auto s =
            evaluate_sample(SoftTarget(r.prediction), to_miatt_set(r), cfg, groups);
        ordered_json row;
        row["id"] = r.id;
        row["s_per_iatt"] = s.s_per_iatt;
        row["c_per_iatt"] = s.c_per_iatt;
        row["s_max"] = s.s_max;
        row["s_noisy_or"] = s.s_noisy_or;
        row["c_overall"] = s.c_overall;
        row["k_rate"] = s.k_rate;
        row["score"] = s.score;
        rows.push_back(std::move(row));
        csv.push_back({r.id, csv_cell(s.s_max), csv_cell(s.s_noisy_or), csv_cell(s.c_overall),
                       csv_cell(s.k_rate), csv_cell(s.score)});
        samples.push_back(s);
    }
    const auto d = aggregate_dataset(samples);
    rep["per_sample"] = std::move(rows);
    ordered_json summary;
    summary["n_samples"] = records.size();
    summary["mean_score"] = d.mean_score;
    summary["mean_coverage"] = d.mean_coverage;
    summary["mean_contradiction"] = d.mean_contradiction;
    rep["summary"] = std::move(summary);
    emit_report(rep, o.output_path);
    emit_csv(o.csv_path, {"id", "s_max", "s_noisy_or", "c_overall", "k_rate", "score"}, csv);
}

// --- eval-ternary ---

void run_eval_ternary(const CommonOpts& o) {
    const EvalConfig cfg = resolve_config(o);
    const auto records = read_dataset_file(o.input_path);

    ordered_json rep = make_report("eval-ternary", cfg);
    ordered_json rows = ordered_json::array();
    std::vector<std::vector<std::string>> csv;
    std::vector<double> scores;
    std::size_t decided = 0;
    for (const auto& r : records) {
        const auto verdicts = sample_verdicts(SoftTarget(r.prediction), to_miatt_set(r), cfg);
        const auto t_dagger = synthesize_ternary(verdicts);
        const double score = ternary_sample_score(t_dagger);
        ordered_json row;
        row["id"] = r.id;
        row["per_iatt_verdicts"] = verdicts;
        row["t_dagger"] = t_dagger;
        row["score"] = score;
        rows.push_back(std::move(row));
        csv.push_back({r.id, csv_cell(t_dagger), csv_cell(score)});
        scores.push_back(score);
        decided += t_dagger != 0.5 ? 1 : 0;
    }
    rep["per_sample"] = std::move(rows);
    ordered_json summary;
    summary["n_samples"] = records.size();
    summary["dataset_score"] = ternary_dataset_score(scores);
    summary["decided"] = decided;
    summary["unknown"] = records.size() - decided;
    rep["summary"] = std::move(summary);
    emit_report(rep, o.output_path);
    emit_csv(o.csv_path, {"id", "t_dagger", "score"}, csv);
}

// --- eval-att ---

void run_eval_att(const CommonOpts& o) {
    const EvalConfig cfg = resolve_config(o);
    const auto records = read_dataset_file(o.input_path);

    ordered_json rep = make_report("eval-att", cfg);
    ordered_json rows = ordered_json::array();
    std::vector<std::vector<std::string>> csv;
    double sum = 0.0;
    for (const auto& r : records) {
        const double s = att_score(SoftTarget(r.prediction), SoftTarget(require_att(r)), cfg);
        ordered_json row;
        row["id"] = r.id;
        row["att_score"] = s;
        rows.push_back(std::move(row));
        csv.push_back({r.id, csv_cell(s)});
        sum += s;
    }
    rep["per_sample"] = std::move(rows);
    ordered_json summary;
    summary["n_samples"] = records.size();
    summary["mean_att_score"] = sum / static_cast<double>(records.size());
    rep["summary"] = std::move(summary);
    emit_report(rep, o.output_path);
    emit_csv(o.csv_path, {"id", "att_score"}, csv);
}

// --- compare-eval ---

void run_compare_eval(const CommonOpts& o) {
    const EvalConfig cfg = resolve_config(o);
    const auto records = read_dataset_file(o.input_path);

    std::vector<SoftTarget> predictions;
    std::vector<MiattSet> miatts;
    std::vector<SoftTarget> atts;
    std::vector<ExclusiveGroups> groups(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        predictions.emplace_back(records[i].prediction);
        miatts.push_back(to_miatt_set(records[i]));
        atts.emplace_back(require_att(records[i]));
        if (records[i].exclusive_groups)
            groups[i] = *records[i].exclusive_groups;
    }
    const auto report = relation_report(predictions, miatts, atts, cfg, &groups);

    ordered_json rep = make_report("compare-eval", cfg);
    ordered_json rows = ordered_json::array();
    std::vector<std::vector<std::string>> csv;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto* g = groups[i].empty() ? nullptr : &groups[i];
        const auto laf = evaluate_sample(predictions[i], miatts[i], cfg, g);
        const auto t_dagger = synthesize_ternary(sample_verdicts(predictions[i], miatts[i], cfg));
        const double att = att_score(predictions[i], atts[i], cfg);
        ordered_json row;
        row["id"] = records[i].id;
        row["laf_score"] = laf.score;
        row["t_dagger"] = t_dagger;
        row["ternary_score"] = ternary_sample_score(t_dagger);
        row["att_score"] = att;
        row["abs_dev"] = std::abs(laf.score - att);
        rows.push_back(std::move(row));
        csv.push_back({records[i].id, csv_cell(laf.score), csv_cell(t_dagger), csv_cell(att)});
    }
    rep["per_sample"] = std::move(rows);
    ordered_json summary;
    summary["n_samples"] = report.n_samples;
    summary["ternary_decided"] = report.ternary_decided;
    summary["ternary_unknown"] = report.ternary_unknown;
    summary["decided_agree_att"] = report.decided_agree_att;
    summary["decided_disagree_att"] = report.ternary_decided - report.decided_agree_att;
    summary["laf_vs_att_mean_abs_dev"] = report.laf_vs_att_mean_abs_dev;
    rep["summary"] = std::move(summary);
    emit_report(rep, o.output_path);
    emit_csv(o.csv_path, {"id", "laf_score", "t_dagger", "att_score"}, csv);
}

// --- loss-compare ---

struct LossOpts {
    CommonOpts common;
    std::string loss;
    std::string method = "both";
    std::optional<double> lambda;
};

std::vector<double> record_weights(const DatasetRecord& r) {
    if (r.weights)
        return *r.weights;
    return std::vector<double>(r.miatts.size(), 1.0 / static_cast<double>(r.miatts.size()));
}

// Distribution-valued records: per-class weighted CE, target-averaged CE.
MethodScores categorical_scores(const DatasetRecord& r, double eps) {
    const auto w = record_weights(r);
    MethodScores out;
    std::vector<double> mean_target(r.prediction.size(), 0.0);
    for (std::size_t n = 0; n < r.miatts.size(); ++n) {
        out.s_a += w[n] * categorical_ce(r.prediction, r.miatts[n], eps);
        for (std::size_t c = 0; c < mean_target.size(); ++c)
            mean_target[c] += w[n] * r.miatts[n][c];
    }
    out.s_b = categorical_ce(r.prediction, mean_target, eps);
    bool all_equal = true;
    for (const auto& t : r.miatts)
        all_equal = all_equal && t == r.miatts.front();
    out.region = all_equal ? CurvatureRegion::Degenerate : CurvatureRegion::Mixed;
    out.verdict = OrderingVerdict::Equal;
    return out;
}

void run_loss_compare(const LossOpts& o) {
    const EvalConfig cfg = resolve_config(o.common);
    if (o.lambda && !(*o.lambda >= 0.0 && *o.lambda <= 1.0))
        throw Error(ErrorCode::ConfigError, "lambda must lie in [0, 1]");
    const auto records = read_dataset_file(o.common.input_path);
    const bool categorical = o.loss == "categorical-ce";
    const bool dice_loss = o.loss == "dice";

    ordered_json rep = make_report("loss-compare", cfg);
    ordered_json rows = ordered_json::array();
    std::vector<std::vector<std::string>> csv;
    std::size_t region_counts[4] = {0, 0, 0, 0};
    std::size_t verdict_counts[4] = {0, 0, 0, 0};
    double sum_a = 0.0, sum_b = 0.0, max_abs_diff = 0.0, sum_composite = 0.0;
    for (const auto& r : records) {
        MethodScores s;
        if (categorical) {
            s = categorical_scores(r, cfg.eps_clamp);
        } else {
            const SoftTarget pred(r.prediction);
            const auto set = to_miatt_set(r);
            s = dice_loss ? dice_method_scores(pred, set, kDiceClamp)
                          : ce_method_scores(pred, set, cfg.eps_clamp);
        }

        ordered_json row;
        row["id"] = r.id;
        if (o.method != "b") {
            row["s_a"] = s.s_a;
            if (!categorical)
                row["grad_a"] = s.grad_a;
        }
        if (o.method != "a") {
            row["s_b"] = s.s_b;
            if (!categorical)
                row["grad_b"] = s.grad_b;
        }
        if (o.method == "both")
            row["abs_diff"] = std::abs(s.s_a - s.s_b);
        row["region"] = to_string(s.region);
        row["verdict"] = to_string(s.verdict);
        if (o.lambda && dice_loss) {
            const double composite =
                *o.lambda * (1.0 - s.s_a) + (1.0 - *o.lambda) * (1.0 - s.s_b);
            row["composite_loss"] = composite;
            sum_composite += composite;
        }
        rows.push_back(std::move(row));
        csv.push_back({r.id, csv_cell(s.s_a), csv_cell(s.s_b), to_string(s.region),
                       to_string(s.verdict)});

        region_counts[static_cast<int>(s.region)]++;
        verdict_counts[static_cast<int>(s.verdict)]++;
        sum_a += s.s_a;
        sum_b += s.s_b;
        max_abs_diff = std::max(max_abs_diff, std::abs(s.s_a - s.s_b));
    }
    rep["per_sample"] = std::move(rows);

    const auto n = static_cast<double>(records.size());
    ordered_json summary;
    summary["n_samples"] = records.size();
    summary["loss"] = o.loss;
    summary["method"] = o.method;
    summary["mean_s_a"] = sum_a / n;
    summary["mean_s_b"] = sum_b / n;
    summary["max_abs_diff"] = max_abs_diff;
    summary["region_counts"] = {{"concave", region_counts[0]},
                                {"convex", region_counts[1]},
                                {"mixed", region_counts[2]},
                                {"degenerate", region_counts[3]}};
    summary["verdict_counts"] = {{"B>=A", verdict_counts[0]},
                                 {"B<=A", verdict_counts[1]},
                                 {"no-ordering", verdict_counts[2]},
                                 {"equal", verdict_counts[3]}};
    summary["dice_clamp"] = kDiceClamp;
    summary["ce_clamp"] = cfg.eps_clamp;
    if (o.lambda && dice_loss) {
        summary["lambda"] = *o.lambda;
        summary["mean_composite_loss"] = sum_composite / n;
    }
    rep["summary"] = std::move(summary);
    emit_report(rep, o.common.output_path);
    emit_csv(o.common.csv_path, {"id", "s_a", "s_b", "region", "verdict"}, csv);
}

// --- gradcheck ---

struct GradOpts {
    CommonOpts common;
    std::string loss;
    double h = 1e-5;
    double tol = 1e-6;
};

void run_gradcheck(const GradOpts& o) {
    const EvalConfig cfg = resolve_config(o.common);
    if (!(o.h > 0.0 && o.h < 0.1))
        throw Error(ErrorCode::ConfigError, "step h must lie in (0, 0.1)");
    const auto records = read_dataset_file(o.common.input_path);
    const bool dice_loss = o.loss == "dice";
    const double eps = dice_loss ? kDiceClamp : cfg.eps_clamp;

    ordered_json rep = make_report("gradcheck", cfg);
    ordered_json rows = ordered_json::array();
    std::vector<std::vector<std::string>> csv;
    GradCheckReport worst{};
    std::string worst_where;
    std::size_t checks = 0;
    for (const auto& r : records) {
        const auto w = record_weights(r);
        double max_a = 0.0, max_b = 0.0;
        for (std::size_t e = 0; e < r.prediction.size(); ++e) {
            // Nudge the evaluation point inward: x +/- h must stay in (0, 1),
            // and the log curvature needs x >> h for the central difference
            // to converge at the reported tolerance.
            const double lo = std::max(2.0 * o.h, 0.01);
            const double x = std::min(std::max(r.prediction[e], lo), 1.0 - lo);
            std::vector<double> column(r.miatts.size());
            for (std::size_t n = 0; n < r.miatts.size(); ++n)
                column[n] = r.miatts[n][e];

            const auto scores = dice_loss ? dice_method_scores(x, column, w, eps)
                                          : ce_method_scores(x, column, w, eps);
            const double t_bar = [&] {
                double m = 0.0;
                for (std::size_t n = 0; n < column.size(); ++n)
                    m += w[n] * column[n];
                return m;
            }();
            auto scalar = [&](double p, double t) {
                return dice_loss ? dice(p, t, eps) : ce(p, t, eps);
            };
            const double fd_a = finite_diff_gradient(
                [&](double p) {
                    double sum = 0.0;
                    for (std::size_t n = 0; n < column.size(); ++n)
                        sum += w[n] * scalar(p, column[n]);
                    return sum;
                },
                x, o.h);
            const double fd_b =
                finite_diff_gradient([&](double p) { return scalar(p, t_bar); }, x, o.h);

            const auto rep_a = grad_check(scores.grad_a, fd_a, o.h);
            const auto rep_b = grad_check(scores.grad_b, fd_b, o.h);
            checks += 2;
            max_a = std::max(max_a, rep_a.rel_error);
            max_b = std::max(max_b, rep_b.rel_error);
            if (rep_a.rel_error > worst.rel_error) {
                worst = rep_a;
                worst_where = r.id + "[" + std::to_string(e) + "]:A";
            }
            if (rep_b.rel_error > worst.rel_error) {
                worst = rep_b;
                worst_where = r.id + "[" + std::to_string(e) + "]:B";
            }
        }
        ordered_json row;
        row["id"] = r.id;
        row["max_rel_error_a"] = max_a;
        row["max_rel_error_b"] = max_b;
        row["n_elements"] = r.prediction.size();
        rows.push_back(std::move(row));
        csv.push_back({r.id, csv_cell(max_a), csv_cell(max_b)});
    }
    rep["per_sample"] = std::move(rows);
    ordered_json summary;
    summary["loss"] = o.loss;
    summary["n_checks"] = checks;
    summary["h"] = o.h;
    summary["tol"] = o.tol;
    summary["max_rel_error"] = worst.rel_error;
    summary["within_tol"] = worst.rel_error <= o.tol;
    ordered_json worst_row;
    worst_row["where"] = worst_where;
    worst_row["analytic"] = worst.analytic;
    worst_row["finite_diff"] = worst.finite_diff;
    worst_row["rel_error"] = worst.rel_error;
    worst_row["step"] = worst.step;
    summary["worst"] = std::move(worst_row);
    rep["summary"] = std::move(summary);
    emit_report(rep, o.common.output_path);
    emit_csv(o.common.csv_path, {"id", "max_rel_error_a", "max_rel_error_b"}, csv);
}

int exit_code_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::ConfigError:
        return 2;
    case ErrorCode::IoError:
    case ErrorCode::SchemaError:
        return 3;
    default:
        return 4;
    }
}

void print_error(const std::string& code, const std::string& message, int exit_code) {
    ordered_json err;
    err["error"]["code"] = code;
    err["error"]["message"] = message;
    err["error"]["exit"] = exit_code;
    std::cerr << err.dump() << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"MIATT dataset generation, quality assessment, three-valued "
                 "evaluation and multi-target loss analysis"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    GenerateOpts gen;
    auto* c_gen = app.add_subcommand("generate", "synthesize a seeded dataset");
    add_common(c_gen, gen.common, false);
    c_gen->add_option("--pattern", gen.pattern,
                      "no-coverage|coverage-low-diversity|coverage-high-diversity|custom "
                      "(aliases: worst, median, best)");
    c_gen->add_option("--count", gen.count, "number of records");
    c_gen->add_option("-n", gen.n, "targets per record");
    c_gen->add_option("-m", gen.m, "elements per target");
    c_gen->add_option("--coverage", gen.coverage, "faithful fraction per target");
    c_gen->add_option("--noise", gen.noise, "corrupted fraction of the rest");
    c_gen->add_option("--overlap", gen.overlap, "shared faithful fraction (custom pattern)");
    c_gen->add_option("--att-mode", gen.att_mode, "binary|soft");
    c_gen->add_option("--pred-noise", gen.pred_noise, "per-element prediction flip rate");
    c_gen->add_option("--report", gen.report_path, "also write a run report here");

    CommonOpts assess_o, laf_o, ternary_o, att_o, compare_o;
    auto* c_assess = app.add_subcommand("assess", "quality-score each MIATT set");
    add_common(c_assess, assess_o, true);
    auto* c_laf = app.add_subcommand("eval-laf", "three-valued evaluation with original targets");
    add_common(c_laf, laf_o, true);
    auto* c_ternary = app.add_subcommand("eval-ternary", "fused ternary-target evaluation");
    add_common(c_ternary, ternary_o, true);
    auto* c_att = app.add_subcommand("eval-att", "binary baseline against the accurate target");
    add_common(c_att, att_o, true);
    auto* c_compare = app.add_subcommand("compare-eval", "relate the three evaluation schemes");
    add_common(c_compare, compare_o, true);

    LossOpts loss;
    auto* c_loss = app.add_subcommand("loss-compare", "per-target vs aggregate-first losses");
    add_common(c_loss, loss.common, true);
    c_loss->add_option("--loss", loss.loss, "dice|ce|categorical-ce")
        ->required()
        ->check(CLI::IsMember({"dice", "ce", "categorical-ce"}));
    c_loss->add_option("--method", loss.method, "a|b|both")
        ->check(CLI::IsMember({"a", "b", "both"}));
    c_loss->add_option("--composite-lambda", loss.lambda,
                       "also emit the composite dice loss with this mix");

    GradOpts grad;
    auto* c_grad = app.add_subcommand("gradcheck", "analytic vs finite-difference gradients");
    add_common(c_grad, grad.common, true);
    c_grad->add_option("--loss", grad.loss, "dice|ce")
        ->required()
        ->check(CLI::IsMember({"dice", "ce"}));
    c_grad->add_option("--step", grad.h, "central-difference step");
    c_grad->add_option("--tol", grad.tol, "relative-error tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e); // --help / --version
        print_error("ConfigError", e.what(), 2);
        return 2;
    }

    try {
        if (*c_gen) run_generate(gen);
        else if (*c_assess) run_assess(assess_o);
        else if (*c_laf) run_eval_laf(laf_o);
        else if (*c_ternary) run_eval_ternary(ternary_o);
        else if (*c_att) run_eval_att(att_o);
        else if (*c_compare) run_compare_eval(compare_o);
        else if (*c_loss) run_loss_compare(loss);
        else if (*c_grad) run_gradcheck(grad);
    } catch (const Error& e) {
        const int code = exit_code_for(e.code());
        print_error(to_string(e.code()), e.what(), code);
        return code;
    } catch (const std::exception& e) {
        print_error("Unexpected", e.what(), 4);
        return 4;
    }
    return 0;
}
