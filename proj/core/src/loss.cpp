#include "elmiatt/loss.hpp"

#include <cmath>
#include <string>

namespace elmiatt {

const char* to_string(CurvatureRegion r) {
    switch (r) {
    case CurvatureRegion::Concave: return "concave";
    case CurvatureRegion::Convex: return "convex";
    case CurvatureRegion::Mixed: return "mixed";
    case CurvatureRegion::Degenerate: return "degenerate";
    }
    return "unknown";
}

const char* to_string(OrderingVerdict v) {
    switch (v) {
    case OrderingVerdict::BGeA: return "B>=A";
    case OrderingVerdict::BLeA: return "B<=A";
    case OrderingVerdict::NoOrdering: return "no-ordering";
    case OrderingVerdict::Equal: return "equal";
    }
    return "unknown";
}

namespace {

void check_target(double t) {
    if (!(t >= 0.0 && t <= 1.0))
        throw Error(ErrorCode::OutOfRange, "loss: target must lie in [0, 1]");
}

void check_targets(std::span<const double> targets) {
    if (targets.size() < 2)
        throw Error(ErrorCode::TooFewTargets, "loss: need at least 2 targets, got " +
                                                  std::to_string(targets.size()));
    for (auto t : targets)
        check_target(t);
}

void check_weights(std::span<const double> weights, std::size_t n) {
    if (weights.size() != n)
        throw Error(ErrorCode::DimensionMismatch, "loss: one weight per target required");
    double sum = 0.0;
    for (auto w : weights) {
        if (!(w >= 0.0))
            throw Error(ErrorCode::BadWeights, "loss: weights must be nonnegative");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw Error(ErrorCode::BadWeights, "loss: weights must sum to 1");
}

double weighted_mean(std::span<const double> values, std::span<const double> weights) {
    double m = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i)
        m += weights[i] * values[i];
    return m;
}

// Verdicts follow region membership, never the computed s_a/s_b comparison.
OrderingVerdict verdict_for(CurvatureRegion r) {
    switch (r) {
    case CurvatureRegion::Degenerate: return OrderingVerdict::Equal;
    case CurvatureRegion::Concave: return OrderingVerdict::BGeA;
    case CurvatureRegion::Convex: return OrderingVerdict::BLeA;
    case CurvatureRegion::Mixed: break;
    }
    return OrderingVerdict::NoOrdering;
}

CurvatureRegion classify_dice_region(double pred_clamped, std::span<const double> targets) {
    bool all_equal = true;
    for (auto t : targets)
        all_equal = all_equal && t == targets.front();
    if (all_equal)
        return CurvatureRegion::Degenerate;

    const double root = std::sqrt(3.0) * pred_clamped;
    bool all_below = true;
    bool all_above = true;
    for (auto t : targets) {
        all_below = all_below && t < root;
        all_above = all_above && t > root;
    }
    if (all_below)
        return CurvatureRegion::Concave;
    if (all_above)
        return CurvatureRegion::Convex;
    return CurvatureRegion::Mixed;
}

// Elementwise regions fold into a sample-level one. Degenerate elements never
// break an inequality, so concave+degenerate is still globally concave.
CurvatureRegion combine_regions(std::span<const CurvatureRegion> regions) {
    bool has_concave = false;
    bool has_convex = false;
    bool has_mixed = false;
    for (auto r : regions) {
        has_concave = has_concave || r == CurvatureRegion::Concave;
        has_convex = has_convex || r == CurvatureRegion::Convex;
        has_mixed = has_mixed || r == CurvatureRegion::Mixed;
    }
    if (has_mixed || (has_concave && has_convex))
        return CurvatureRegion::Mixed;
    if (has_concave)
        return CurvatureRegion::Concave;
    if (has_convex)
        return CurvatureRegion::Convex;
    return CurvatureRegion::Degenerate;
}

} // namespace

double dice(double pred, double target, double eps_clamp) {
    check_target(target);
    const double p = clamp_unit(pred, eps_clamp);
    return 2.0 * p * target / (p * p + target * target);
}

double dice_gradient(double pred, double target, double eps_clamp) {
    check_target(target);
    const double p = clamp_unit(pred, eps_clamp);
    const double d = p * p + target * target;
    return 2.0 * target * (target * target - p * p) / (d * d);
}

double dice_second_derivative(double pred, double target) {
    if (!(pred > 0.0 && pred < 1.0))
        throw Error(ErrorCode::OutOfRange, "loss: pred must lie strictly inside (0, 1)");
    check_target(target);
    const double d = pred * pred + target * target;
    return 4.0 * pred * target * (target * target - 3.0 * pred * pred) / (d * d * d);
}

MethodScores dice_method_scores(double pred, std::span<const double> targets, double eps_clamp) {
    check_targets(targets);
    const std::vector<double> uniform(targets.size(), 1.0 / static_cast<double>(targets.size()));
    return dice_method_scores(pred, targets, uniform, eps_clamp);
}

MethodScores dice_method_scores(double pred, std::span<const double> targets,
                                std::span<const double> weights, double eps_clamp) {
    check_targets(targets);
    check_weights(weights, targets.size());

    MethodScores out;
    const double t_bar = weighted_mean(targets, weights);
    for (std::size_t i = 0; i < targets.size(); ++i) {
        out.s_a += weights[i] * dice(pred, targets[i], eps_clamp);
        out.grad_a += weights[i] * dice_gradient(pred, targets[i], eps_clamp);
    }
    out.s_b = dice(pred, t_bar, eps_clamp);
    out.grad_b = dice_gradient(pred, t_bar, eps_clamp);
    out.region = classify_dice_region(clamp_unit(pred, eps_clamp), targets);
    out.verdict = verdict_for(out.region);
    return out;
}

std::pair<double, double> method_gradients_dice(double pred, std::span<const double> targets,
                                                double eps_clamp) {
    const auto scores = dice_method_scores(pred, targets, eps_clamp);
    return {scores.grad_a, scores.grad_b};
}

double composite_dice_loss(double pred, std::span<const double> targets, double lambda,
                           double eps_clamp) {
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw Error(ErrorCode::OutOfRange, "loss: lambda must lie in [0, 1]");
    const auto scores = dice_method_scores(pred, targets, eps_clamp);
    return lambda * (1.0 - scores.s_a) + (1.0 - lambda) * (1.0 - scores.s_b);
}

double ce(double pred, double target, double eps_clamp) {
    check_target(target);
    const double p = clamp_unit(pred, eps_clamp);
    return -(target * std::log(p) + (1.0 - target) * std::log(1.0 - p));
}

double ce_gradient(double pred, double target, double eps_clamp) {
    check_target(target);
    const double p = clamp_unit(pred, eps_clamp);
    return (p - target) / (p * (1.0 - p));
}

MethodScores ce_method_scores(double pred, std::span<const double> targets, double eps_clamp) {
    check_targets(targets);
    const std::vector<double> uniform(targets.size(), 1.0 / static_cast<double>(targets.size()));
    return ce_method_scores(pred, targets, uniform, eps_clamp);
}

MethodScores ce_method_scores(double pred, std::span<const double> targets,
                              std::span<const double> weights, double eps_clamp) {
    check_targets(targets);
    check_weights(weights, targets.size());

    MethodScores out;
    const double t_bar = weighted_mean(targets, weights);
    for (std::size_t i = 0; i < targets.size(); ++i) {
        out.s_a += weights[i] * ce(pred, targets[i], eps_clamp);
        out.grad_a += weights[i] * ce_gradient(pred, targets[i], eps_clamp);
    }
    out.s_b = ce(pred, t_bar, eps_clamp);
    out.grad_b = ce_gradient(pred, t_bar, eps_clamp);

    bool all_equal = true;
    for (auto t : targets)
        all_equal = all_equal && t == targets.front();
    out.region = all_equal ? CurvatureRegion::Degenerate : CurvatureRegion::Mixed;
    out.verdict = OrderingVerdict::Equal; // affine in the target, always
    return out;
}

double categorical_ce(std::span<const double> pred, std::span<const double> target,
                      double eps_clamp) {
    if (pred.size() != target.size())
        throw Error(ErrorCode::DimensionMismatch, "loss: class counts differ");
    auto check_dist = [](std::span<const double> v, const char* name) {
        double sum = 0.0;
        for (auto x : v) {
            if (!(x >= 0.0))
                throw Error(ErrorCode::NotADistribution,
                            std::string("loss: ") + name + " has a negative mass");
            sum += x;
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw Error(ErrorCode::NotADistribution,
                        std::string("loss: ") + name + " does not sum to 1");
    };
    check_dist(pred, "pred");
    check_dist(target, "target");

    double loss = 0.0;
    for (std::size_t c = 0; c < pred.size(); ++c)
        loss -= target[c] * std::log(clamp_unit(pred[c], eps_clamp));
    return loss;
}

double dice(const SoftTarget& pred, const SoftTarget& target, double eps_clamp) {
    if (pred.size() != target.size())
        throw Error(ErrorCode::DimensionMismatch, "loss: vector lengths differ");
    double sum = 0.0;
    for (std::size_t e = 0; e < pred.size(); ++e)
        sum += dice(pred[e], target[e], eps_clamp);
    return sum / static_cast<double>(pred.size());
}

double ce(const SoftTarget& pred, const SoftTarget& target, double eps_clamp) {
    if (pred.size() != target.size())
        throw Error(ErrorCode::DimensionMismatch, "loss: vector lengths differ");
    double sum = 0.0;
    for (std::size_t e = 0; e < pred.size(); ++e)
        sum += ce(pred[e], target[e], eps_clamp);
    return sum / static_cast<double>(pred.size());
}

namespace {

template <typename ScalarOp>
MethodScores vector_method_scores(const SoftTarget& pred, const MiattSet& targets,
                                  double eps_clamp, ScalarOp&& op) {
    if (pred.size() != targets.length())
        throw Error(ErrorCode::DimensionMismatch, "loss: prediction/target length mismatch");

    MethodScores out;
    std::vector<double> weights;
    if (targets.weights())
        weights = *targets.weights();
    else
        weights.assign(targets.count(), 1.0 / static_cast<double>(targets.count()));

    std::vector<CurvatureRegion> regions;
    regions.reserve(pred.size());
    std::vector<double> column(targets.count());
    for (std::size_t e = 0; e < pred.size(); ++e) {
        for (std::size_t n = 0; n < targets.count(); ++n)
            column[n] = targets.target(n)[e];
        const MethodScores s = op(pred[e], column, weights, eps_clamp);
        out.s_a += s.s_a;
        out.s_b += s.s_b;
        out.grad_a += s.grad_a;
        out.grad_b += s.grad_b;
        regions.push_back(s.region);
    }
    const auto m = static_cast<double>(pred.size());
    out.s_a /= m;
    out.s_b /= m;
    out.grad_a /= m;
    out.grad_b /= m;
    out.region = combine_regions(regions);
    return out;
}

} // namespace

MethodScores dice_method_scores(const SoftTarget& pred, const MiattSet& targets,
                                double eps_clamp) {
    auto out = vector_method_scores(pred, targets, eps_clamp,
                                    [](double p, std::span<const double> t,
                                       std::span<const double> w, double eps) {
                                        return dice_method_scores(p, t, w, eps);
                                    });
    out.verdict = verdict_for(out.region);
    return out;
}

MethodScores ce_method_scores(const SoftTarget& pred, const MiattSet& targets, double eps_clamp) {
    auto out = vector_method_scores(pred, targets, eps_clamp,
                                    [](double p, std::span<const double> t,
                                       std::span<const double> w, double eps) {
                                        return ce_method_scores(p, t, w, eps);
                                    });
    out.verdict = OrderingVerdict::Equal;
    return out;
}

double composite_dice_loss(const SoftTarget& pred, const MiattSet& targets, double lambda,
                           double eps_clamp) {
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw Error(ErrorCode::OutOfRange, "loss: lambda must lie in [0, 1]");
    const auto scores = dice_method_scores(pred, targets, eps_clamp);
    return lambda * (1.0 - scores.s_a) + (1.0 - lambda) * (1.0 - scores.s_b);
}

GradCheckReport grad_check(double analytic, double finite_diff, double step) {
    GradCheckReport r;
    r.analytic = analytic;
    r.finite_diff = finite_diff;
    r.step = step;
    r.rel_error = std::abs(analytic - finite_diff) / std::max(1.0, std::abs(analytic));
    return r;
}

} // namespace elmiatt
