#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "elmiatt/core.hpp"
#include "elmiatt/laf.hpp"

namespace elmiatt {

// Fused three-valued truth value of a MIATT set: unanimous true, unanimous
// false, otherwise unknown.
using TernaryTarget = TruthValue;

struct RelationReport {
    std::size_t n_samples = 0;
    std::size_t ternary_decided = 0; // t-dagger in {0, 1}
    std::size_t ternary_unknown = 0;
    std::size_t decided_agree_att = 0;
    double laf_vs_att_mean_abs_dev = 0.0;
};

// 1 if every verdict is 1, 0 if every verdict is 0, else 0.5.
TernaryTarget synthesize_ternary(std::span<const TruthValue> verdicts);

// Three-valued verdict of a prediction against one target's facts: 1 when
// every fact is satisfied, 0 when any is violated, 0.5 otherwise (including a
// target asserting nothing).
TruthValue per_iatt_verdict(const SoftTarget& prediction, const SoftTarget& iatt,
                            const EvalConfig& config);

// Per-IATT verdicts for one sample, feeding synthesize_ternary.
std::vector<TruthValue> sample_verdicts(const SoftTarget& prediction, const MiattSet& miatts,
                                        const EvalConfig& config);

// The score IS the ternary value.
double ternary_sample_score(TernaryTarget t_dagger);

double ternary_dataset_score(std::span<const double> scores);

// Binary baseline verdict against a fully-confident accurate target.
double att_score(const SoftTarget& prediction, const SoftTarget& att, const EvalConfig& config);

// Counts decided ternary verdicts, their agreement with the ATT verdict, and
// the mean |LAF score - ATT score| deviation. groups, when given, supplies
// per-sample exclusion groups for the LAF side.
RelationReport relation_report(std::span<const SoftTarget> predictions,
                               std::span<const MiattSet> miatts,
                               std::span<const SoftTarget> atts, const EvalConfig& config,
                               const std::vector<ExclusiveGroups>* groups = nullptr);

} // namespace elmiatt
