#include "elmiatt/laf.hpp"

#include <algorithm>
#include <string>

#include "elmiatt/error.hpp"
#include "elmiatt/k3.hpp"

namespace elmiatt {

const char* to_string(Polarity p) {
    return p == Polarity::Positive ? "positive" : "negative";
}

std::vector<TruthValue> FactVerdicts::verdicts_for(std::size_t iatt) const {
    std::vector<TruthValue> out;
    for (const auto& f : facts)
        if (f.iatt == iatt)
            out.push_back(f.verdict);
    return out;
}

namespace {

// Facts one target asserts, judged against the prediction.
void append_facts(const SoftTarget& prediction, const SoftTarget& target, std::size_t iatt,
                  const EvalConfig& config, std::vector<Fact>& out) {
    for (std::size_t e = 0; e < target.size(); ++e) {
        Polarity pol;
        if (target[e] >= config.delta_hi)
            pol = Polarity::Positive;
        else if (target[e] <= config.delta_lo)
            pol = Polarity::Negative;
        else
            continue; // target asserts nothing about this element

        const double p = prediction[e];
        TruthValue v = 0.5;
        if (pol == Polarity::Positive)
            v = p >= config.tau_hi ? 1.0 : (p <= config.tau_lo ? 0.0 : 0.5);
        else
            v = p <= config.tau_lo ? 1.0 : (p >= config.tau_hi ? 0.0 : 0.5);
        out.push_back(Fact{iatt, e, pol, v});
    }
}

} // namespace

FactVerdicts extract_fact_verdicts(const SoftTarget& prediction, const MiattSet& miatts,
                                   const EvalConfig& config, const ExclusiveGroups* groups) {
    config.validate();
    if (prediction.size() != miatts.length())
        throw Error(ErrorCode::DimensionMismatch,
                    "laf: prediction length " + std::to_string(prediction.size()) +
                        " vs target length " + std::to_string(miatts.length()));
    if (groups)
        for (const auto& g : *groups)
            for (auto e : g)
                if (e >= miatts.length())
                    throw Error(ErrorCode::BadGroup,
                                "laf: group references element " + std::to_string(e) +
                                    " beyond length " + std::to_string(miatts.length()));

    FactVerdicts out;
    out.n_iatts = miatts.count();
    for (std::size_t n = 0; n < miatts.count(); ++n)
        append_facts(prediction, miatts.target(n), n, config, out.facts);

    if (groups) {
        for (const auto& g : *groups) {
            for (std::size_t j = 0; j < out.facts.size(); ++j) {
                if (out.facts[j].polarity != Polarity::Positive)
                    continue;
                if (std::find(g.begin(), g.end(), out.facts[j].element) == g.end())
                    continue;
                for (std::size_t k = j + 1; k < out.facts.size(); ++k) {
                    if (out.facts[k].polarity != Polarity::Positive)
                        continue;
                    if (out.facts[k].element == out.facts[j].element)
                        continue;
                    if (std::find(g.begin(), g.end(), out.facts[k].element) == g.end())
                        continue;
                    out.exclusions.emplace_back(j, k);
                }
            }
        }
    }
    return out;
}

std::vector<TruthValue> iatt_fact_verdicts(const SoftTarget& prediction, const SoftTarget& iatt,
                                           const EvalConfig& config) {
    config.validate();
    if (prediction.size() != iatt.size())
        throw Error(ErrorCode::DimensionMismatch,
                    "laf: prediction length " + std::to_string(prediction.size()) +
                        " vs target length " + std::to_string(iatt.size()));
    std::vector<Fact> facts;
    append_facts(prediction, iatt, 0, config, facts);
    std::vector<TruthValue> verdicts;
    verdicts.reserve(facts.size());
    for (const auto& f : facts)
        verdicts.push_back(f.verdict);
    return verdicts;
}

double satisfaction(std::span<const TruthValue> facts) {
    if (facts.empty())
        return 0.5;
    return *std::min_element(facts.begin(), facts.end());
}

double satisfaction_weighted(std::span<const TruthValue> facts, std::span<const double> alphas) {
    if (facts.size() != alphas.size())
        throw Error(ErrorCode::DimensionMismatch, "laf: one weight per fact required");
    for (auto a : alphas)
        if (!(a >= 0.0 && a <= 1.0))
            throw Error(ErrorCode::OutOfRange, "laf: fact weights must lie in [0, 1]");
    if (facts.empty())
        return 0.5;
    double m = 1.0;
    for (std::size_t i = 0; i < facts.size(); ++i)
        m = std::min(m, std::max(facts[i], 1.0 - alphas[i]));
    return m;
}

double applicability(std::span<const TruthValue> facts) {
    if (facts.empty())
        return 0.0;
    std::size_t decided = 0;
    for (auto v : facts)
        decided += v != 0.5 ? 1 : 0;
    return static_cast<double>(decided) / static_cast<double>(facts.size());
}

double contradiction_rate(const FactVerdicts& verdicts, double threshold) {
    if (!(threshold > 0.0 && threshold <= 1.0))
        throw Error(ErrorCode::OutOfRange, "laf: contradiction threshold must lie in (0, 1]");
    if (verdicts.exclusions.empty())
        return 0.0;
    std::size_t hits = 0;
    for (const auto& [j, k] : verdicts.exclusions) {
        if (j >= verdicts.facts.size() || k >= verdicts.facts.size() || j == k)
            throw Error(ErrorCode::BadGroup, "laf: exclusion pair references a bad fact index");
        if (verdicts.facts[j].verdict >= threshold && verdicts.facts[k].verdict >= threshold)
            ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(verdicts.exclusions.size());
}

double combine_sample(double s_max, double s_noisy_or, double c_overall, double k_rate,
                      double lambda, double gamma_k) {
    return (lambda * s_max + (1.0 - lambda) * s_noisy_or) * c_overall * (1.0 - gamma_k * k_rate);
}

SampleScore aggregate_sample(const FactVerdicts& verdicts, const EvalConfig& config) {
    config.validate();
    if (verdicts.n_iatts == 0)
        throw Error(ErrorCode::TooFewTargets, "laf: no targets to aggregate");

    SampleScore s;
    s.s_per_iatt.reserve(verdicts.n_iatts);
    s.c_per_iatt.reserve(verdicts.n_iatts);
    for (std::size_t n = 0; n < verdicts.n_iatts; ++n) {
        const auto v = verdicts.verdicts_for(n);
        s.s_per_iatt.push_back(satisfaction(v));
        s.c_per_iatt.push_back(applicability(v));
    }
    s.s_max = *std::max_element(s.s_per_iatt.begin(), s.s_per_iatt.end());
    s.s_noisy_or = k3::noisy_or(s.s_per_iatt);
    double c_sum = 0.0;
    for (auto c : s.c_per_iatt)
        c_sum += c;
    s.c_overall = c_sum / static_cast<double>(verdicts.n_iatts);
    s.k_rate = contradiction_rate(verdicts);
    s.score = combine_sample(s.s_max, s.s_noisy_or, s.c_overall, s.k_rate,
                             config.lambda, config.gamma_k);
    return s;
}

SampleScore evaluate_sample(const SoftTarget& prediction, const MiattSet& miatts,
                            const EvalConfig& config, const ExclusiveGroups* groups) {
    return aggregate_sample(extract_fact_verdicts(prediction, miatts, config, groups), config);
}

DatasetScore aggregate_dataset(const std::vector<SampleScore>& samples) {
    if (samples.empty())
        throw Error(ErrorCode::EmptyDataset, "laf: cannot aggregate an empty dataset");
    DatasetScore d;
    for (const auto& s : samples) {
        d.mean_score += s.score;
        d.mean_coverage += s.c_overall;
        d.mean_contradiction += s.k_rate;
    }
    const auto n = static_cast<double>(samples.size());
    d.mean_score /= n;
    d.mean_coverage /= n;
    d.mean_contradiction /= n;
    d.per_sample = samples;
    return d;
}

} // namespace elmiatt
