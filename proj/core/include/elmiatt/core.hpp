#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <optional>
#include <vector>

#include "elmiatt/error.hpp"

namespace elmiatt {

// Scalar truth value in [0, 1]; canonical three-valued levels are 0, 0.5, 1.
using TruthValue = double;

inline bool is_ternary(TruthValue v) {
    return v == 0.0 || v == 0.5 || v == 1.0;
}

// Length-m vector of unit-interval values. One type serves every role a
// target plays: prediction, inaccurate target, accurate target, mean target.
class SoftTarget {
public:
    SoftTarget() = default;
    explicit SoftTarget(std::vector<double> values) : values_(std::move(values)) {
        if (values_.empty())
            throw Error(ErrorCode::DimensionMismatch, "SoftTarget needs at least one element");
        for (double v : values_) {
            if (!(v >= 0.0 && v <= 1.0))
                throw Error(ErrorCode::OutOfRange, "SoftTarget element outside [0, 1]");
        }
    }

    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    const std::vector<double>& values() const noexcept { return values_; }

    bool operator==(const SoftTarget&) const = default;

private:
    std::vector<double> values_;
};

// N >= 2 soft targets of common length, with optional reliability weights
// (non-negative, summing to 1).
class MiattSet {
public:
    MiattSet(std::vector<SoftTarget> targets,
             std::optional<std::vector<double>> weights = std::nullopt);

    std::size_t count() const noexcept { return targets_.size(); }   // N
    std::size_t length() const noexcept { return targets_[0].size(); } // m
    const std::vector<SoftTarget>& targets() const noexcept { return targets_; }
    const SoftTarget& target(std::size_t n) const { return targets_[n]; }
    const std::optional<std::vector<double>>& weights() const noexcept { return weights_; }

private:
    std::vector<SoftTarget> targets_;
    std::optional<std::vector<double>> weights_;
};

MiattSet validate_miatt_set(std::vector<SoftTarget> targets,
                            std::optional<std::vector<double>> weights = std::nullopt);

// Every threshold and penalty weight in one place. The two distinct knobs
// that share one symbol upstream are split apart here: gamma_q scales the
// redundancy penalty of the quality score, gamma_k the contradiction penalty
// of the sample score.
struct EvalConfig {
    double delta = 0.25;     // agreement band for boolean vectors
    double delta_lo = 0.25;  // IATT value <= delta_lo asserts a negative fact
    double delta_hi = 0.75;  // IATT value >= delta_hi asserts a positive fact
    double tau_lo = 0.25;    // prediction <= tau_lo reads as "off"
    double tau_hi = 0.75;    // prediction >= tau_hi reads as "on"
    double alpha = 1.0;      // coverage weight in the quality score
    double gamma_q = 1.0;    // redundancy penalty in the quality score
    double lambda = 0.5;     // strict-max vs noisy-OR mix
    double gamma_k = 0.5;    // contradiction penalty strength
    double eps_clamp = 1e-12; // log/division guard
    std::uint64_t seed = 0;

    void validate() const;
};

// min(max(x, eps), 1 - eps); pre: eps in (0, 1e-3).
inline double clamp_unit(double x, double eps_clamp) {
    assert(eps_clamp > 0.0 && eps_clamp < 1e-3);
    return std::min(std::max(x, eps_clamp), 1.0 - eps_clamp);
}

} // namespace elmiatt
