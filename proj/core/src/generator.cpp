#include "elmiatt/generator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "elmiatt/error.hpp"
#include "elmiatt/rng.hpp"

namespace elmiatt {

const char* to_string(MiattPattern pattern) {
    switch (pattern) {
    case MiattPattern::NoCoverage: return "no-coverage";
    case MiattPattern::CoverageLowDiversity: return "coverage-low-diversity";
    case MiattPattern::CoverageHighDiversity: return "coverage-high-diversity";
    case MiattPattern::Custom: return "custom";
    }
    return "unknown";
}

std::optional<MiattPattern> pattern_from_string(const std::string& name) {
    if (name == "no-coverage" || name == "worst") return MiattPattern::NoCoverage;
    if (name == "coverage-low-diversity" || name == "median") return MiattPattern::CoverageLowDiversity;
    if (name == "coverage-high-diversity" || name == "best") return MiattPattern::CoverageHighDiversity;
    if (name == "custom") return MiattPattern::Custom;
    return std::nullopt;
}

void GenSpec::validate() const {
    if (m == 0)
        throw Error(ErrorCode::DimensionMismatch, "generator: m must be positive");
    if (n < 2)
        throw Error(ErrorCode::TooFewTargets, "generator: need at least 2 targets, got " + std::to_string(n));
    if (!(coverage >= 0.0 && coverage <= 1.0))
        throw Error(ErrorCode::OutOfRange, "generator: coverage must lie in [0, 1]");
    if (!(noise >= 0.0 && noise <= 1.0))
        throw Error(ErrorCode::OutOfRange, "generator: noise must lie in [0, 1]");
    if (overlap) {
        if (pattern != MiattPattern::Custom)
            throw Error(ErrorCode::ConfigError, "generator: overlap only applies to the custom pattern");
        if (!(*overlap >= 0.0 && *overlap <= 1.0))
            throw Error(ErrorCode::OutOfRange, "generator: overlap must lie in [0, 1]");
    }
}

SoftTarget generate_att(std::size_t m, bool binary, std::uint64_t seed) {
    if (m == 0)
        throw Error(ErrorCode::DimensionMismatch, "generator: m must be positive");
    Rng rng(seed);
    std::vector<double> values(m);
    for (auto& v : values)
        v = binary ? (rng.bernoulli(0.5) ? 1.0 : 0.0) : rng.uniform01();
    return SoftTarget(std::move(values));
}

namespace {

// Faithful index sets per pattern. Every set has the same cardinality
// k = round(coverage * m); only their arrangement differs.
std::vector<std::vector<std::size_t>> faithful_sets(const GenSpec& spec, Rng& rng) {
    const std::size_t m = spec.m;
    const std::size_t k = static_cast<std::size_t>(std::llround(spec.coverage * static_cast<double>(m)));
    std::vector<std::vector<std::size_t>> sets(spec.n);

    switch (spec.pattern) {
    case MiattPattern::NoCoverage:
        break; // all empty regardless of coverage
    case MiattPattern::CoverageLowDiversity: {
        auto base = rng.sample(m, k);
        for (auto& s : sets)
            s = base;
        break;
    }
    case MiattPattern::CoverageHighDiversity: {
        // Tile one permutation with wrapping contiguous chunks so the union
        // grows as min(n * k, m) and pairwise overlap is minimal.
        auto perm = rng.permutation(m);
        for (std::size_t i = 0; i < spec.n; ++i) {
            sets[i].reserve(k);
            for (std::size_t j = 0; j < k; ++j)
                sets[i].push_back(perm[(i * k + j) % m]);
        }
        break;
    }
    case MiattPattern::Custom: {
        if (spec.overlap) {
            const auto shared = static_cast<std::size_t>(std::llround(*spec.overlap * static_cast<double>(k)));
            auto pool = rng.permutation(m);
            std::vector<std::size_t> core(pool.begin(), pool.begin() + shared);
            std::vector<std::size_t> rest(pool.begin() + shared, pool.end());
            for (auto& s : sets) {
                s = core;
                auto extra = rng.sample(rest.size(), k - shared);
                for (auto idx : extra)
                    s.push_back(rest[idx]);
            }
        } else {
            for (auto& s : sets)
                s = rng.sample(m, k);
        }
        break;
    }
    }
    return sets;
}

} // namespace

GeneratedScenario generate_miatts(const SoftTarget& att, const GenSpec& spec) {
    spec.validate();
    if (att.size() != spec.m)
        throw Error(ErrorCode::DimensionMismatch,
                    "generator: att length " + std::to_string(att.size()) +
                        " does not match spec.m " + std::to_string(spec.m));

    Rng rng(spec.seed);
    auto sets = faithful_sets(spec, rng);

    std::vector<std::vector<double>> targets(spec.n, std::vector<double>(spec.m, 0.5));
    std::vector<std::vector<ElementFate>> mask(
        spec.n, std::vector<ElementFate>(spec.m, ElementFate::Omitted));

    for (std::size_t i = 0; i < spec.n; ++i) {
        std::vector<bool> faithful(spec.m, false);
        for (auto idx : sets[i]) {
            faithful[idx] = true;
            targets[i][idx] = att[idx];
            mask[i][idx] = ElementFate::Faithful;
        }
        // Corrupt a fixed fraction of the non-faithful elements.
        std::vector<std::size_t> remaining;
        remaining.reserve(spec.m - sets[i].size());
        for (std::size_t e = 0; e < spec.m; ++e)
            if (!faithful[e])
                remaining.push_back(e);
        const auto c = static_cast<std::size_t>(
            std::llround(spec.noise * static_cast<double>(remaining.size())));
        auto picks = rng.sample(remaining.size(), c);
        for (auto p : picks) {
            const auto e = remaining[p];
            targets[i][e] = 1.0 - att[e];
            mask[i][e] = ElementFate::Corrupted;
        }
    }

    std::vector<SoftTarget> iatts;
    iatts.reserve(spec.n);
    for (auto& row : targets)
        iatts.emplace_back(std::move(row));
    return GeneratedScenario{att, MiattSet(std::move(iatts)), std::move(mask)};
}

double union_coverage(const GeneratedScenario& scenario) {
    const std::size_t m = scenario.att.size();
    std::vector<bool> covered(m, false);
    for (const auto& row : scenario.fact_mask)
        for (std::size_t e = 0; e < m; ++e)
            if (row[e] == ElementFate::Faithful)
                covered[e] = true;
    const auto count = static_cast<double>(std::count(covered.begin(), covered.end(), true));
    return count / static_cast<double>(m);
}

} // namespace elmiatt
