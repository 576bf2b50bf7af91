#include "elmiatt/ternary.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "elmiatt/error.hpp"

namespace elmiatt {

TernaryTarget synthesize_ternary(std::span<const TruthValue> verdicts) {
    if (verdicts.size() < 2)
        throw Error(ErrorCode::TooFewTargets, "ternary: need at least 2 verdicts, got " +
                                                  std::to_string(verdicts.size()));
    for (auto v : verdicts)
        if (!is_ternary(v))
            throw Error(ErrorCode::OutOfRange, "ternary: verdicts must lie in {0, 0.5, 1}");
    if (std::all_of(verdicts.begin(), verdicts.end(), [](TruthValue v) { return v == 1.0; }))
        return 1.0;
    if (std::all_of(verdicts.begin(), verdicts.end(), [](TruthValue v) { return v == 0.0; }))
        return 0.0;
    return 0.5;
}

TruthValue per_iatt_verdict(const SoftTarget& prediction, const SoftTarget& iatt,
                            const EvalConfig& config) {
    const auto verdicts = iatt_fact_verdicts(prediction, iatt, config);
    if (verdicts.empty())
        return 0.5;
    const double m = *std::min_element(verdicts.begin(), verdicts.end());
    if (m == 1.0)
        return 1.0;
    if (m == 0.0)
        return 0.0;
    return 0.5;
}

std::vector<TruthValue> sample_verdicts(const SoftTarget& prediction, const MiattSet& miatts,
                                        const EvalConfig& config) {
    if (prediction.size() != miatts.length())
        throw Error(ErrorCode::DimensionMismatch, "ternary: prediction/target length mismatch");
    std::vector<TruthValue> out;
    out.reserve(miatts.count());
    for (std::size_t n = 0; n < miatts.count(); ++n)
        out.push_back(per_iatt_verdict(prediction, miatts.target(n), config));
    return out;
}

double ternary_sample_score(TernaryTarget t_dagger) {
    if (!is_ternary(t_dagger))
        throw Error(ErrorCode::OutOfRange, "ternary: score input must lie in {0, 0.5, 1}");
    return t_dagger;
}

double ternary_dataset_score(std::span<const double> scores) {
    if (scores.empty())
        throw Error(ErrorCode::EmptyDataset, "ternary: no scores to average");
    double sum = 0.0;
    for (auto s : scores)
        sum += s;
    return sum / static_cast<double>(scores.size());
}

double att_score(const SoftTarget& prediction, const SoftTarget& att, const EvalConfig& config) {
    config.validate();
    for (std::size_t e = 0; e < att.size(); ++e)
        if (att[e] > config.delta_lo && att[e] < config.delta_hi)
            throw Error(ErrorCode::AttNotConfident,
                        "ternary: accurate target is undecided at element " + std::to_string(e));
    return per_iatt_verdict(prediction, att, config) == 1.0 ? 1.0 : 0.0;
}

RelationReport relation_report(std::span<const SoftTarget> predictions,
                               std::span<const MiattSet> miatts,
                               std::span<const SoftTarget> atts, const EvalConfig& config,
                               const std::vector<ExclusiveGroups>* groups) {
    if (predictions.empty())
        throw Error(ErrorCode::EmptyDataset, "ternary: empty dataset in relation report");
    if (predictions.size() != miatts.size() || predictions.size() != atts.size())
        throw Error(ErrorCode::DimensionMismatch,
                    "ternary: relation report needs one prediction, MIATT set and att per sample");
    if (groups && groups->size() != predictions.size())
        throw Error(ErrorCode::DimensionMismatch,
                    "ternary: one exclusion-group list per sample required");

    RelationReport r;
    r.n_samples = predictions.size();
    double dev_sum = 0.0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const auto t_dagger = synthesize_ternary(sample_verdicts(predictions[i], miatts[i], config));
        const double att = att_score(predictions[i], atts[i], config);
        if (t_dagger == 0.5) {
            ++r.ternary_unknown;
        } else {
            ++r.ternary_decided;
            if (t_dagger == att)
                ++r.decided_agree_att;
        }
        const auto* g = groups && !(*groups)[i].empty() ? &(*groups)[i] : nullptr;
        const auto laf = evaluate_sample(predictions[i], miatts[i], config, g);
        dev_sum += std::abs(laf.score - att);
    }
    r.laf_vs_att_mean_abs_dev = dev_sum / static_cast<double>(r.n_samples);
    return r;
}

} // namespace elmiatt
