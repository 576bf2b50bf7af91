#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "elmiatt/core.hpp"

namespace elmiatt {

// Structural patterns for synthetic MIATT sets: the "no coverage",
// "coverage but low diversity" and "coverage with high diversity" corners,
// plus a free-form pattern with independently sampled index sets.
enum class MiattPattern {
    NoCoverage,
    CoverageLowDiversity,
    CoverageHighDiversity,
    Custom,
};

const char* to_string(MiattPattern pattern);
std::optional<MiattPattern> pattern_from_string(const std::string& name);

struct GenSpec {
    std::size_t m = 1;          // elements per target
    std::size_t n = 2;          // number of IATTs
    double coverage = 1.0;      // fraction of elements each IATT copies faithfully
    double noise = 0.0;         // fraction of the remaining elements corrupted
    MiattPattern pattern = MiattPattern::Custom;
    std::optional<double> overlap; // Custom only: shared fraction of faithful indices
    std::uint64_t seed = 0;

    void validate() const;
};

// What happened to one element of one IATT.
enum class ElementFate : unsigned char {
    Faithful,  // copied from the accurate target exactly
    Corrupted, // flipped to 1 - att value
    Omitted,   // set to the uninformative 0.5
};

struct GeneratedScenario {
    SoftTarget att;
    MiattSet miatts;
    // fact_mask[n][e]: fate of element e in IATT n. The three fates
    // partition each IATT's index set.
    std::vector<std::vector<ElementFate>> fact_mask;
};

// Deterministic synthetic accurate target; binary mode draws from {0, 1},
// soft mode from [0, 1).
SoftTarget generate_att(std::size_t m, bool binary, std::uint64_t seed);

// Builds N IATTs around a known accurate target. Faithful elements copy the
// att value exactly, corrupted ones flip to 1 - value, the rest fall to 0.5.
// Pattern selects how faithful index sets relate across IATTs:
//   NoCoverage            - empty index sets (coverage forced to 0)
//   CoverageLowDiversity  - every IATT uses one shared index set
//   CoverageHighDiversity - index sets tile a common permutation, minimizing
//                           pairwise overlap
//   Custom                - independent random sets; `overlap` optionally
//                           forces a shared core between them
GeneratedScenario generate_miatts(const SoftTarget& att, const GenSpec& spec);

// |union of faithful index sets| / m.
double union_coverage(const GeneratedScenario& scenario);

} // namespace elmiatt
