#pragma once

#include <cstdint>
#include <vector>

#include "elmiatt/core.hpp"

namespace elmiatt {

using BoolVector = std::vector<std::uint8_t>;

enum class QualityClass { Worst, Median, Best };

const char* to_string(QualityClass c);

struct AssessmentReport {
    SoftTarget probable_target;              // elementwise mean of the IATTs
    std::vector<BoolVector> boolean_vectors; // agreement with the probable target
    std::vector<double> per_iatt_pr;         // |v_n| / m
    double mean_pr = 0.0;
    double redundancy = 0.0; // raw ratio, may exceed 1 for N >= 4
    double diversity = 0.0;  // max(0, 1 - redundancy)
    double q_score = 0.0;
    QualityClass cls = QualityClass::Worst;
};

// Elementwise mean of the IATTs: the probable true target standing in for
// the inaccessible accurate one.
SoftTarget probable_true_target(const MiattSet& set);

// v[i] = 1 iff the target agrees with the reference within strict delta.
BoolVector boolean_vector(const SoftTarget& iatt, const SoftTarget& probable, double delta);

// |v| / m.
double partial_representation(const BoolVector& v);

// Sum of pairwise intersections over the total number of set bits; 0 when
// nothing is set anywhere. Exceeds 1 once four or more vectors pile onto the
// same elements; reported raw, unclamped.
double redundancy(const std::vector<BoolVector>& vectors);

// alpha * mean_pr - gamma_q * red, the raw quality combiner.
double overall_quality(double mean_pr, double red, double alpha, double gamma_q);

AssessmentReport quality_score(const MiattSet& set, const EvalConfig& config);

// Nearest corner on the mean_pr axis (0 worst, 0.5 median, 1 best), ties
// toward the lower class; diversity is carried along, it does not move the
// label.
QualityClass classify_quality(double mean_pr, double diversity);

} // namespace elmiatt
