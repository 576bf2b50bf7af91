#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "elmiatt/core.hpp"

namespace elmiatt {

enum class Polarity : unsigned char { Positive, Negative };

const char* to_string(Polarity p);

// One elementwise polarity assertion made by an IATT, already judged against
// the prediction. verdict ∈ {0, 0.5, 1}.
struct Fact {
    std::size_t iatt = 0;
    std::size_t element = 0;
    Polarity polarity = Polarity::Positive;
    TruthValue verdict = 0.5;
};

struct FactVerdicts {
    std::size_t n_iatts = 0;
    std::vector<Fact> facts; // grouped by IATT, elements ascending
    // Mutually exclusive fact pairs (indices into `facts`).
    std::vector<std::pair<std::size_t, std::size_t>> exclusions;

    std::vector<TruthValue> verdicts_for(std::size_t iatt) const;
};

struct SampleScore {
    std::vector<double> s_per_iatt;
    std::vector<double> c_per_iatt;
    double s_max = 0.0;
    double s_noisy_or = 0.0;
    double c_overall = 0.0;
    double k_rate = 0.0;
    double score = 0.0;
};

struct DatasetScore {
    double mean_score = 0.0;
    double mean_coverage = 0.0;
    double mean_contradiction = 0.0;
    std::vector<SampleScore> per_sample;
};

using ExclusiveGroups = std::vector<std::vector<std::size_t>>;

// Turns each sufficiently confident IATT element into a fact (value >= delta_hi
// asserts the element, <= delta_lo denies it, the band in between asserts
// nothing) and judges each fact against the prediction with the closed
// tau_hi / tau_lo cutoffs. Exclusion pairs come only from the caller-declared
// groups: two positive facts on distinct elements of one group exclude each
// other.
FactVerdicts extract_fact_verdicts(const SoftTarget& prediction, const MiattSet& miatts,
                                   const EvalConfig& config,
                                   const ExclusiveGroups* groups = nullptr);

// Verdicts of a single target's facts against the prediction, element order.
std::vector<TruthValue> iatt_fact_verdicts(const SoftTarget& prediction, const SoftTarget& iatt,
                                           const EvalConfig& config);

// Min over fact verdicts; an IATT with no facts is silent, hence 0.5.
double satisfaction(std::span<const TruthValue> facts);

// Weighted minimum min over max(v, 1 - alpha); alpha = 1 recovers plain min,
// alpha = 0 mutes a fact entirely.
double satisfaction_weighted(std::span<const TruthValue> facts, std::span<const double> alphas);

// Fraction of facts with a decided verdict; no facts means zero coverage.
double applicability(std::span<const TruthValue> facts);

// Fraction of exclusion pairs where both verdicts reach the threshold
// (default: exactly 1). No declared exclusions -> 0.
double contradiction_rate(const FactVerdicts& verdicts, double threshold = 1.0);

// (lambda * s_max + (1 - lambda) * s_noisy_or) * c_overall * (1 - gamma_k * k).
double combine_sample(double s_max, double s_noisy_or, double c_overall, double k_rate,
                      double lambda, double gamma_k);

SampleScore aggregate_sample(const FactVerdicts& verdicts, const EvalConfig& config);

// extract + aggregate in one call.
SampleScore evaluate_sample(const SoftTarget& prediction, const MiattSet& miatts,
                            const EvalConfig& config, const ExclusiveGroups* groups = nullptr);

DatasetScore aggregate_dataset(const std::vector<SampleScore>& samples);

} // namespace elmiatt
