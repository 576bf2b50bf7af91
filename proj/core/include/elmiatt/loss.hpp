#pragma once

#include <span>
#include <utility>
#include <vector>

#include "elmiatt/core.hpp"
#include "elmiatt/error.hpp"

namespace elmiatt {

// Default clamps guarding Dice's 0/0 and CE's log(0); both surfaced in CLI
// reports so published numbers stay reproducible.
inline constexpr double kDiceClamp = 1e-7;
inline constexpr double kCeClamp = 1e-12;

// Where the target set sits relative to Dice's inflection at sqrt(3) * pred.
enum class CurvatureRegion { Concave, Convex, Mixed, Degenerate };

// Jensen-direction claim between aggregate-first (B) and per-target (A).
enum class OrderingVerdict { BGeA, BLeA, NoOrdering, Equal };

const char* to_string(CurvatureRegion r);
const char* to_string(OrderingVerdict v);

struct MethodScores {
    double s_a = 0.0;    // mean of per-target losses/similarities
    double s_b = 0.0;    // loss/similarity of the mean target
    double grad_a = 0.0; // d s_a / d pred (vector forms: mean over elements)
    double grad_b = 0.0;
    CurvatureRegion region = CurvatureRegion::Mixed;
    OrderingVerdict verdict = OrderingVerdict::NoOrdering;
};

struct GradCheckReport {
    double analytic = 0.0;
    double finite_diff = 0.0;
    double rel_error = 0.0;
    double step = 0.0;
};

// --- Dice (per-element scalar form 2pt / (p^2 + t^2)) ---

double dice(double pred, double target, double eps_clamp = kDiceClamp);

// d Dice / d pred = 2t(t^2 - p^2) / (p^2 + t^2)^2.
double dice_gradient(double pred, double target, double eps_clamp = kDiceClamp);

// d^2 Dice / d target^2 = 4pt(t^2 - 3p^2) / (p^2 + t^2)^3; root at sqrt(3) p.
double dice_second_derivative(double pred, double target);

MethodScores dice_method_scores(double pred, std::span<const double> targets,
                                double eps_clamp = kDiceClamp);
MethodScores dice_method_scores(double pred, std::span<const double> targets,
                                std::span<const double> weights, double eps_clamp = kDiceClamp);

std::pair<double, double> method_gradients_dice(double pred, std::span<const double> targets,
                                                double eps_clamp = kDiceClamp);

// lambda (1 - s_a) + (1 - lambda)(1 - s_b).
double composite_dice_loss(double pred, std::span<const double> targets, double lambda,
                           double eps_clamp = kDiceClamp);

// --- Cross-entropy ---

double ce(double pred, double target, double eps_clamp = kCeClamp);

// d CE / d pred = (p - t) / (p(1 - p)); linear in t, so A and B coincide.
double ce_gradient(double pred, double target, double eps_clamp = kCeClamp);

MethodScores ce_method_scores(double pred, std::span<const double> targets,
                              double eps_clamp = kCeClamp);
MethodScores ce_method_scores(double pred, std::span<const double> targets,
                              std::span<const double> weights, double eps_clamp = kCeClamp);

double categorical_ce(std::span<const double> pred, std::span<const double> target,
                      double eps_clamp = kCeClamp);

// --- Vector forms: elementwise mean of the scalar values ---

double dice(const SoftTarget& pred, const SoftTarget& target, double eps_clamp = kDiceClamp);
double ce(const SoftTarget& pred, const SoftTarget& target, double eps_clamp = kCeClamp);

// Per-sample method comparison; MiattSet weights drive both the Method-A mean
// and the Method-B aggregate target. Regions combine across elements: all
// degenerate stays Degenerate, degenerate+concave counts as Concave (the
// inequality still binds), likewise convex, anything else is Mixed.
MethodScores dice_method_scores(const SoftTarget& pred, const MiattSet& targets,
                                double eps_clamp = kDiceClamp);
MethodScores ce_method_scores(const SoftTarget& pred, const MiattSet& targets,
                              double eps_clamp = kCeClamp);

double composite_dice_loss(const SoftTarget& pred, const MiattSet& targets, double lambda,
                           double eps_clamp = kDiceClamp);

// --- Numerical oracle ---

// Central difference (f(x+h) - f(x-h)) / 2h.
template <typename F>
double finite_diff_gradient(F&& f, double x, double h) {
    if (!(h > 0.0))
        throw Error(ErrorCode::DomainViolation, "loss: finite-difference step must be positive");
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

GradCheckReport grad_check(double analytic, double finite_diff, double step);

} // namespace elmiatt
