#include "elmiatt/assessment.hpp"

#include <cmath>
#include <string>

#include "elmiatt/error.hpp"

namespace elmiatt {

const char* to_string(QualityClass c) {
    switch (c) {
    case QualityClass::Worst: return "worst";
    case QualityClass::Median: return "median";
    case QualityClass::Best: return "best";
    }
    return "unknown";
}

SoftTarget probable_true_target(const MiattSet& set) {
    std::vector<double> mean(set.length(), 0.0);
    for (std::size_t n = 0; n < set.count(); ++n) {
        const auto& t = set.target(n);
        for (std::size_t e = 0; e < set.length(); ++e)
            mean[e] += t[e];
    }
    for (auto& v : mean)
        v /= static_cast<double>(set.count());
    return SoftTarget(std::move(mean));
}

BoolVector boolean_vector(const SoftTarget& iatt, const SoftTarget& probable, double delta) {
    if (iatt.size() != probable.size())
        throw Error(ErrorCode::DimensionMismatch,
                    "assessment: target length " + std::to_string(iatt.size()) +
                        " vs reference length " + std::to_string(probable.size()));
    if (!(delta > 0.0 && delta < 1.0))
        throw Error(ErrorCode::OutOfRange, "assessment: delta must lie in (0, 1)");
    BoolVector v(iatt.size(), 0);
    for (std::size_t e = 0; e < iatt.size(); ++e)
        v[e] = std::abs(iatt[e] - probable[e]) < delta ? 1 : 0; // strict: boundary excluded
    return v;
}

double partial_representation(const BoolVector& v) {
    if (v.empty())
        throw Error(ErrorCode::DimensionMismatch, "assessment: empty boolean vector");
    std::size_t ones = 0;
    for (auto b : v)
        ones += b ? 1 : 0;
    return static_cast<double>(ones) / static_cast<double>(v.size());
}

double redundancy(const std::vector<BoolVector>& vectors) {
    if (vectors.size() < 2)
        throw Error(ErrorCode::TooFewTargets, "assessment: redundancy needs at least 2 vectors");
    const std::size_t m = vectors.front().size();
    for (const auto& v : vectors)
        if (v.size() != m)
            throw Error(ErrorCode::DimensionMismatch, "assessment: boolean vectors differ in length");

    std::size_t total = 0;
    for (const auto& v : vectors)
        for (auto b : v)
            total += b ? 1 : 0;
    if (total == 0)
        return 0.0;

    std::size_t inter = 0;
    for (std::size_t j = 0; j + 1 < vectors.size(); ++j)
        for (std::size_t k = j + 1; k < vectors.size(); ++k)
            for (std::size_t e = 0; e < m; ++e)
                inter += (vectors[j][e] && vectors[k][e]) ? 1 : 0;
    return static_cast<double>(inter) / static_cast<double>(total);
}

double overall_quality(double mean_pr, double red, double alpha, double gamma_q) {
    return alpha * mean_pr - gamma_q * red;
}

AssessmentReport quality_score(const MiattSet& set, const EvalConfig& config) {
    config.validate();
    AssessmentReport report;
    report.probable_target = probable_true_target(set);
    report.boolean_vectors.reserve(set.count());
    report.per_iatt_pr.reserve(set.count());
    double sum_pr = 0.0;
    for (std::size_t n = 0; n < set.count(); ++n) {
        auto v = boolean_vector(set.target(n), report.probable_target, config.delta);
        const double pr = partial_representation(v);
        report.boolean_vectors.push_back(std::move(v));
        report.per_iatt_pr.push_back(pr);
        sum_pr += pr;
    }
    report.mean_pr = sum_pr / static_cast<double>(set.count());
    report.redundancy = redundancy(report.boolean_vectors);
    report.diversity = std::max(0.0, 1.0 - report.redundancy);
    report.q_score =
        overall_quality(report.mean_pr, report.redundancy, config.alpha, config.gamma_q);
    report.cls = classify_quality(report.mean_pr, report.diversity);
    return report;
}

QualityClass classify_quality(double mean_pr, double diversity) {
    if (!(mean_pr >= 0.0 && mean_pr <= 1.0))
        throw Error(ErrorCode::OutOfRange, "assessment: mean_pr must lie in [0, 1]");
    if (!(diversity >= 0.0 && diversity <= 1.0))
        throw Error(ErrorCode::OutOfRange, "assessment: diversity must lie in [0, 1]");
    if (mean_pr <= 0.25)
        return QualityClass::Worst;
    if (mean_pr <= 0.75)
        return QualityClass::Median;
    return QualityClass::Best;
}

} // namespace elmiatt
