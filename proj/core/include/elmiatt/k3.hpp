#pragma once

#include <span>

#include "elmiatt/core.hpp"
#include "elmiatt/error.hpp"

namespace elmiatt::k3 {

// Kleene strong three-valued connectives under Goedel t-norm/t-conorm
// semantics, generalized to the whole unit interval. On {0, 0.5, 1} they
// restrict to the classic K3 tables.

inline TruthValue neg(TruthValue a) { return 1.0 - a; }

inline TruthValue conj(TruthValue a, TruthValue b) { return a < b ? a : b; }

inline TruthValue disj(TruthValue a, TruthValue b) { return a > b ? a : b; }

inline TruthValue implies(TruthValue a, TruthValue b) { return disj(neg(a), b); }

// Probabilistic "at least one holds": 1 - prod(1 - s_n). Empty input yields 0.
inline double noisy_or(std::span<const double> values) {
    double prod = 1.0;
    for (double s : values) {
        if (!(s >= 0.0 && s <= 1.0))
            throw Error(ErrorCode::OutOfRange, "noisy_or input outside [0, 1]");
        prod *= 1.0 - s;
    }
    return 1.0 - prod;
}

} // namespace elmiatt::k3
