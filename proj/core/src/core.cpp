#include "elmiatt/core.hpp"

#include <cmath>

namespace elmiatt {

const char* to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::TooFewTargets:     return "TooFewTargets";
    case ErrorCode::OutOfRange:        return "OutOfRange";
    case ErrorCode::BadWeights:        return "BadWeights";
    case ErrorCode::SpecMismatch:      return "SpecMismatch";
    case ErrorCode::BadGroup:          return "BadGroup";
    case ErrorCode::EmptyDataset:      return "EmptyDataset";
    case ErrorCode::MissingAtt:        return "MissingAtt";
    case ErrorCode::AttNotConfident:   return "AttNotConfident";
    case ErrorCode::NotADistribution:  return "NotADistribution";
    case ErrorCode::DomainViolation:   return "DomainViolation";
    case ErrorCode::ConfigError:       return "ConfigError";
    case ErrorCode::IoError:           return "IoError";
    case ErrorCode::SchemaError:       return "SchemaError";
    }
    return "UnknownError";
}

MiattSet::MiattSet(std::vector<SoftTarget> targets,
                   std::optional<std::vector<double>> weights)
    : targets_(std::move(targets)), weights_(std::move(weights)) {
    if (targets_.size() < 2)
        throw Error(ErrorCode::TooFewTargets, "a MIATT set needs N >= 2 targets");
    const std::size_t m = targets_[0].size();
    for (const auto& t : targets_) {
        if (t.size() != m)
            throw Error(ErrorCode::DimensionMismatch, "MIATT targets differ in length");
    }
    if (weights_) {
        if (weights_->size() != targets_.size())
            throw Error(ErrorCode::BadWeights, "one weight per target required");
        double sum = 0.0;
        for (double w : *weights_) {
            if (!(w >= 0.0))
                throw Error(ErrorCode::BadWeights, "weights must be non-negative");
            sum += w;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw Error(ErrorCode::BadWeights, "weights must sum to 1");
    }
}

MiattSet validate_miatt_set(std::vector<SoftTarget> targets,
                            std::optional<std::vector<double>> weights) {
    return MiattSet(std::move(targets), std::move(weights));
}

void EvalConfig::validate() const {
    auto fail = [](const char* msg) { throw Error(ErrorCode::ConfigError, msg); };
    if (!(delta > 0.0 && delta < 1.0)) fail("delta must lie in (0, 1)");
    if (!(delta_lo >= 0.0 && delta_lo < delta_hi && delta_hi <= 1.0))
        fail("need 0 <= delta_lo < delta_hi <= 1");
    if (!(tau_lo >= 0.0 && tau_lo < tau_hi && tau_hi <= 1.0))
        fail("need 0 <= tau_lo < tau_hi <= 1");
    if (!(alpha >= 0.0)) fail("alpha must be >= 0");
    if (!(gamma_q >= 0.0)) fail("gamma_q must be >= 0");
    if (!(lambda >= 0.0 && lambda <= 1.0)) fail("lambda must lie in [0, 1]");
    if (!(gamma_k >= 0.0 && gamma_k <= 1.0)) fail("gamma_k must lie in [0, 1]");
    if (!(eps_clamp > 0.0 && eps_clamp < 1e-3)) fail("eps_clamp must lie in (0, 1e-3)");
}

} // namespace elmiatt
