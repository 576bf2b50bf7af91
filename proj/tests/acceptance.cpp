// Exit gate: ten independent criteria, each printing one [PASS]/[FAIL] line.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "elmiatt/assessment.hpp"
#include "elmiatt/generator.hpp"
#include "elmiatt/k3.hpp"
#include "elmiatt/laf.hpp"
#include "elmiatt/loss.hpp"
#include "elmiatt/rng.hpp"
#include "elmiatt/ternary.hpp"

namespace fs = std::filesystem;
using namespace elmiatt;
using Clock = std::chrono::steady_clock;

namespace {

void report(int number, const char* name, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d %s%s%s\n", ok ? "PASS" : "FAIL", number, name,
                detail.empty() ? "" : ": ", detail.c_str());
    std::fflush(stdout);
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(ELMIATT_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace

// 1. Cross-entropy gives the same number and gradient whether the loss is
//    averaged over targets or taken at the averaged target.
TEST_CASE("criterion 1") {
    const auto t0 = Clock::now();
    Rng rng(101);
    bool ok = true;
    double worst_value = 0.0, worst_grad = 0.0;

    for (int i = 0; i < 1000 && ok; ++i) {
        const std::size_t n = 2 + rng.below(15);
        std::vector<double> targets(n);
        for (auto& t : targets)
            t = rng.uniform01();
        const double p = 0.01 + 0.98 * rng.uniform01();
        const auto s = ce_method_scores(p, targets);
        const double dv = std::abs(s.s_a - s.s_b) / std::max(1.0, s.s_a);
        const double dg = std::abs(s.grad_a - s.grad_b);
        worst_value = std::max(worst_value, dv);
        worst_grad = std::max(worst_grad, dg);
        ok = ok && dv <= 1e-12 && dg <= 1e-12 && s.verdict == OrderingVerdict::Equal;

        // categorical form: loss at the mean distribution equals the mean loss
        const std::size_t classes = 2 + rng.below(5);
        std::vector<double> pred(classes);
        double psum = 0.0;
        for (auto& x : pred)
            psum += x = 0.05 + rng.uniform01();
        for (auto& x : pred)
            x /= psum;
        std::vector<std::vector<double>> cats(n, std::vector<double>(classes));
        std::vector<double> mean(classes, 0.0);
        double cat_mean_loss = 0.0;
        for (auto& row : cats) {
            double rsum = 0.0;
            for (auto& x : row)
                rsum += x = 0.05 + rng.uniform01();
            for (std::size_t c = 0; c < classes; ++c) {
                row[c] /= rsum;
                mean[c] += row[c] / static_cast<double>(n);
            }
            cat_mean_loss += categorical_ce(pred, row) / static_cast<double>(n);
        }
        const double cat_b = categorical_ce(pred, mean);
        const double dc = std::abs(cat_mean_loss - cat_b) / std::max(1.0, cat_mean_loss);
        worst_value = std::max(worst_value, dc);
        ok = ok && dc <= 1e-12;
    }
    const double elapsed = seconds_since(t0);
    ok = ok && elapsed < 1.0;
    char buf[160];
    std::snprintf(buf, sizeof buf, "1000 instances, worst |A-B| %.2e, worst grad gap %.2e, %.2fs",
                  worst_value, worst_grad, elapsed);
    report(1, "ce-methods-equivalent", ok, buf);
    CHECK(ok);
}

// 2. Dice: aggregate-first dominates inside the concave region, is dominated
//    inside the convex region, matches for identical targets, and mixed sets
//    claim no ordering.
TEST_CASE("criterion 2") {
    const auto t0 = Clock::now();
    Rng rng(202);
    bool ok = true;
    for (int i = 0; i < 1000 && ok; ++i) {
        const double p = 0.15 + 0.35 * rng.uniform01();
        const double root = std::sqrt(3.0) * p;
        const std::size_t n = 2 + rng.below(7);

        std::vector<double> below(n), above(n), same(n, rng.uniform01());
        for (auto& t : below)
            t = rng.uniform01() * root * 0.95;
        for (auto& t : above)
            t = root * 1.05 + rng.uniform01() * (1.0 - root * 1.05);

        const auto concave = dice_method_scores(p, below);
        ok = ok && concave.region == CurvatureRegion::Concave &&
             concave.verdict == OrderingVerdict::BGeA && concave.s_b >= concave.s_a - 1e-12;

        const auto convex = dice_method_scores(p, above);
        ok = ok && convex.region == CurvatureRegion::Convex &&
             convex.verdict == OrderingVerdict::BLeA && convex.s_b <= convex.s_a + 1e-12;

        const auto degen = dice_method_scores(p, same);
        ok = ok && degen.region == CurvatureRegion::Degenerate &&
             degen.verdict == OrderingVerdict::Equal && std::abs(degen.s_a - degen.s_b) <= 1e-12;

        std::vector<double> mixed{below[0], above[0]};
        const auto span = dice_method_scores(p, mixed);
        ok = ok && span.region == CurvatureRegion::Mixed &&
             span.verdict == OrderingVerdict::NoOrdering;
    }
    const double elapsed = seconds_since(t0);
    ok = ok && elapsed < 1.0;
    char buf[120];
    std::snprintf(buf, sizeof buf, "1000 instances per region, %.2fs", elapsed);
    report(2, "dice-jensen-directions", ok, buf);
    CHECK(ok);
}

// 3. The curvature of Dice in the target flips sign at sqrt(3) * pred, found
//    independently by bisecting the analytic second derivative and a
//    second-difference quotient.
TEST_CASE("criterion 3") {
    bool ok = true;
    double worst = 0.0;
    const auto bisect = [](auto&& f, double lo, double hi) {
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (f(mid) < 0.0)
                lo = mid;
            else
                hi = mid;
        }
        return 0.5 * (lo + hi);
    };
    for (double p = 0.10; p <= 0.551; p += 0.05) {
        const double expected = std::sqrt(3.0) * p;
        const double analytic = bisect(
            [&](double t) { return dice_second_derivative(p, t); }, 1e-4, 0.999);
        const double h = 1e-4;
        const double numeric = bisect(
            [&](double t) { return (dice(p, t + h) - 2.0 * dice(p, t) + dice(p, t - h)) / (h * h); },
            2.0 * h, 0.999);
        worst = std::max({worst, std::abs(analytic - expected), std::abs(numeric - expected)});
        ok = ok && std::abs(analytic - expected) <= 1e-3 && std::abs(numeric - expected) <= 1e-3;
    }
    char buf[120];
    std::snprintf(buf, sizeof buf, "roots within %.2e of sqrt(3)*pred over the pred sweep", worst);
    report(3, "dice-curvature-threshold", ok, buf);
    CHECK(ok);
}

// 4. Analytic gradients agree with central finite differences.
TEST_CASE("criterion 4") {
    Rng rng(404);
    bool ok = true;
    double worst = 0.0;
    const double h = 1e-5;
    for (int i = 0; i < 1000; ++i) {
        const double p = 0.05 + 0.9 * rng.uniform01();
        const double t = rng.uniform01();

        const double fd_dice = finite_diff_gradient([&](double x) { return dice(x, t); }, p, h);
        const double e_dice =
            std::abs(dice_gradient(p, t) - fd_dice) / std::max(1.0, std::abs(fd_dice));

        const double fd_ce = finite_diff_gradient([&](double x) { return ce(x, t); }, p, h);
        const double e_ce = std::abs(ce_gradient(p, t) - fd_ce) / std::max(1.0, std::abs(fd_ce));

        // the two aggregation orders, via the method-score gradients
        std::vector<double> targets{t, rng.uniform01(), rng.uniform01()};
        const auto [ga, gb] = method_gradients_dice(p, targets);
        const double fd_a = finite_diff_gradient(
            [&](double x) { return dice_method_scores(x, targets).s_a; }, p, h);
        const double fd_b = finite_diff_gradient(
            [&](double x) { return dice_method_scores(x, targets).s_b; }, p, h);
        const double e_a = std::abs(ga - fd_a) / std::max(1.0, std::abs(fd_a));
        const double e_b = std::abs(gb - fd_b) / std::max(1.0, std::abs(fd_b));

        worst = std::max({worst, e_dice, e_ce, e_a, e_b});
        ok = ok && e_dice <= 1e-6 && e_ce <= 1e-6 && e_a <= 1e-6 && e_b <= 1e-6;
    }
    char buf[120];
    std::snprintf(buf, sizeof buf, "1000 interior points, worst rel error %.2e", worst);
    report(4, "gradients-match-finite-differences", ok, buf);
    CHECK(ok);
}

// 5. The three-valued connectives satisfy the classic algebra exhaustively.
TEST_CASE("criterion 5") {
    const std::array<double, 3> vals{0.0, 0.5, 1.0};
    bool ok = true;
    std::size_t checks = 0;
    for (double a : vals) {
        ok = ok && k3::neg(k3::neg(a)) == a;
        ok = ok && k3::conj(a, a) == a && k3::disj(a, a) == a;
        ++checks;
        for (double b : vals) {
            ok = ok && k3::conj(a, b) == k3::conj(b, a);
            ok = ok && k3::disj(a, b) == k3::disj(b, a);
            ok = ok && k3::neg(k3::conj(a, b)) == k3::disj(k3::neg(a), k3::neg(b));
            ok = ok && k3::neg(k3::disj(a, b)) == k3::conj(k3::neg(a), k3::neg(b));
            ok = ok && k3::implies(a, b) == k3::disj(k3::neg(a), b);
            ++checks;
            for (double c : vals) {
                ok = ok && k3::conj(k3::conj(a, b), c) == k3::conj(a, k3::conj(b, c));
                ok = ok && k3::disj(k3::disj(a, b), c) == k3::disj(a, k3::disj(b, c));
                ++checks;
            }
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "%zu identities over {0, 0.5, 1}, zero failures", checks);
    report(5, "three-valued-algebra", ok, buf);
    CHECK(ok);
}

// 6. Sample scores stay in [0,1], noisy-OR dominates the max, the mix-weight
//    endpoints reduce exactly, and zero coverage forces a zero score.
TEST_CASE("criterion 6") {
    Rng rng(606);
    bool ok = true;
    for (int i = 0; i < 1000 && ok; ++i) {
        EvalConfig cfg;
        cfg.lambda = rng.uniform01();
        cfg.gamma_k = rng.uniform01();

        const std::size_t m = 2 + rng.below(5);
        const std::size_t n = 2 + rng.below(3);
        std::vector<double> pred(m);
        for (auto& x : pred)
            x = rng.uniform01();
        std::vector<SoftTarget> targets;
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<double> t(m);
            for (auto& x : t)
                x = rng.uniform01();
            targets.emplace_back(std::move(t));
        }
        ExclusiveGroups groups;
        if (m >= 2)
            groups.push_back({0, 1});
        const auto s = evaluate_sample(SoftTarget(pred), MiattSet(std::move(targets)), cfg,
                                       &groups);
        ok = ok && s.score >= 0.0 && s.score <= 1.0 && s.s_noisy_or >= s.s_max;

        const double hi = combine_sample(s.s_max, s.s_noisy_or, s.c_overall, s.k_rate, 1.0,
                                         cfg.gamma_k);
        const double lo = combine_sample(s.s_max, s.s_noisy_or, s.c_overall, s.k_rate, 0.0,
                                         cfg.gamma_k);
        const double penalty = s.c_overall * (1.0 - cfg.gamma_k * s.k_rate);
        ok = ok && std::abs(hi - s.s_max * penalty) <= 1e-15;
        ok = ok && std::abs(lo - s.s_noisy_or * penalty) <= 1e-15;

        // an all-silent set has zero coverage, hence zero score
        std::vector<SoftTarget> silent(2, SoftTarget(std::vector<double>(m, 0.5)));
        const auto z = evaluate_sample(SoftTarget(pred), MiattSet(std::move(silent)), cfg);
        ok = ok && z.c_overall == 0.0 && z.score == 0.0;
    }
    report(6, "sample-score-structure", ok, "1000 random samples");
    CHECK(ok);
}

// 7. With zero noise and jointly covering targets, every decided fused verdict
//    matches the reference verdict; injected noise produces visible
//    disagreement rather than silence.
TEST_CASE("criterion 7") {
    EvalConfig cfg;
    bool ok = true;
    std::size_t decided = 0, total = 0;

    // exhaustive sweep: binary reference, every faithful-subset combination
    // whose union covers all elements, every binary prediction
    for (std::size_t m = 1; m <= 4 && ok; ++m) {
        const std::size_t top = std::size_t{1} << m;
        std::vector<SoftTarget> preds;
        preds.reserve(top);
        for (std::size_t bits = 0; bits < top; ++bits) {
            std::vector<double> v(m);
            for (std::size_t e = 0; e < m; ++e)
                v[e] = (bits >> e) & 1 ? 1.0 : 0.0;
            preds.emplace_back(std::move(v));
        }
        for (std::size_t att_bits = 0; att_bits < top && ok; ++att_bits) {
            const auto& att = preds[att_bits];
            // IATT for a faithful subset: reference value inside, silence outside
            std::vector<SoftTarget> iatts;
            iatts.reserve(top);
            for (std::size_t sub = 0; sub < top; ++sub) {
                std::vector<double> v(m, 0.5);
                for (std::size_t e = 0; e < m; ++e)
                    if ((sub >> e) & 1)
                        v[e] = att[e];
                iatts.emplace_back(std::move(v));
            }
            // verdict tables keyed by (subset, prediction)
            std::vector<std::vector<TruthValue>> verdict(top, std::vector<TruthValue>(top));
            for (std::size_t sub = 0; sub < top; ++sub)
                for (std::size_t pb = 0; pb < top; ++pb)
                    verdict[sub][pb] = per_iatt_verdict(preds[pb], iatts[sub], cfg);
            std::vector<double> att_verdict(top);
            for (std::size_t pb = 0; pb < top; ++pb)
                att_verdict[pb] = att_score(preds[pb], att, cfg);

            const std::size_t full = top - 1;
            for (std::size_t s1 = 0; s1 < top && ok; ++s1)
                for (std::size_t s2 = 0; s2 < top && ok; ++s2) {
                    if ((s1 | s2) == full)
                        for (std::size_t pb = 0; pb < top; ++pb) {
                            const std::array<TruthValue, 2> vs{verdict[s1][pb], verdict[s2][pb]};
                            const auto td = synthesize_ternary(vs);
                            ++total;
                            if (td != 0.5) {
                                ++decided;
                                ok = ok && ternary_sample_score(td) == att_verdict[pb];
                            }
                        }
                    for (std::size_t s3 = 0; s3 < top && ok; ++s3) {
                        if ((s1 | s2 | s3) != full)
                            continue;
                        for (std::size_t pb = 0; pb < top; ++pb) {
                            const std::array<TruthValue, 3> vs{verdict[s1][pb], verdict[s2][pb],
                                                               verdict[s3][pb]};
                            const auto td = synthesize_ternary(vs);
                            ++total;
                            if (td != 0.5) {
                                ++decided;
                                ok = ok && ternary_sample_score(td) == att_verdict[pb];
                            }
                        }
                    }
                }
        }
    }

    // seeded random scenarios, still zero noise, full union by construction
    Rng rng(707);
    for (std::uint64_t seed = 0; seed < 1000 && ok; ++seed) {
        const std::size_t m = 6;
        const auto att = generate_att(m, true, seed ^ 0xABCDull);
        GenSpec spec;
        spec.m = m;
        spec.n = 2 + seed % 2;
        spec.coverage = 0.5;
        spec.noise = 0.0;
        spec.pattern = MiattPattern::CoverageHighDiversity;
        spec.seed = seed;
        const auto scen = generate_miatts(att, spec);
        ok = ok && union_coverage(scen) == 1.0;

        std::vector<double> pred = att.values();
        for (auto& x : pred)
            if (rng.bernoulli(0.3))
                x = 1.0 - x;
        const auto td =
            synthesize_ternary(sample_verdicts(SoftTarget(pred), scen.miatts, cfg));
        ++total;
        if (td != 0.5) {
            ++decided;
            ok = ok && ternary_sample_score(td) == att_score(SoftTarget(pred), att, cfg);
        }
    }
    ok = ok && decided > 0;

    // corrupted facts must surface as decided disagreement
    std::vector<SoftTarget> preds;
    std::vector<MiattSet> sets;
    std::vector<SoftTarget> atts;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto att = generate_att(10, true, seed + 5000);
        GenSpec spec;
        spec.m = 10;
        spec.n = 2;
        spec.coverage = 0.5;
        spec.noise = 0.3;
        spec.pattern = MiattPattern::CoverageLowDiversity;
        spec.seed = seed;
        preds.push_back(att); // the prediction nails the reference exactly
        sets.push_back(generate_miatts(att, spec).miatts);
        atts.push_back(att);
    }
    const auto noisy = relation_report(preds, sets, atts, cfg);
    const std::size_t disagree = noisy.ternary_decided - noisy.decided_agree_att;
    ok = ok && disagree > 0;

    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "%zu decided of %zu zero-noise verdicts all agree; %zu/200 noisy disagreements",
                  decided, total, disagree);
    report(7, "fused-verdict-soundness", ok, buf);
    CHECK(ok);
}

// 8. The quality grid's three diagonal corners come out at 1, 0 and <= 0 and
//    classify as best / median / worst.
TEST_CASE("criterion 8") {
    bool ok = true;

    // best corner: full coverage with zero overlap in the combiner
    ok = ok && std::abs(overall_quality(1.0, 0.0, 1.0, 1.0) - 1.0) <= 1e-9;
    ok = ok && classify_quality(1.0, 1.0) == QualityClass::Best;

    EvalConfig cfg; // alpha = gamma_q = 1

    // median corner, reachable with concrete targets
    const auto median = quality_score(
        MiattSet({SoftTarget{{1, 0}}, SoftTarget{{1, 1}}}), cfg);
    ok = ok && std::abs(median.mean_pr - 0.5) <= 1e-9;
    ok = ok && std::abs(median.q_score - 0.0) <= 1e-9;
    ok = ok && classify_quality(0.5, 0.5) == QualityClass::Median;
    ok = ok && median.cls == QualityClass::Median;

    // worst corner: no agreement at all, score pinned at or below zero
    const auto worst = quality_score(
        MiattSet({SoftTarget{{0, 1}}, SoftTarget{{1, 0}}}), cfg);
    ok = ok && worst.mean_pr == 0.0 && worst.q_score <= 0.0;
    ok = ok && classify_quality(0.0, 0.0) == QualityClass::Worst;
    ok = ok && worst.cls == QualityClass::Worst;

    // and the penalty direction: mean_pr 0 with redundancy r gives -r
    ok = ok && overall_quality(0.0, 0.25, 1.0, 1.0) == -0.25;

    report(8, "quality-grid-corners", ok,
           "combiner corner 1.0, vector corners 0.0 and <= 0");
    CHECK(ok);
}

// 9. Union coverage accumulates across targets: many independent partial
//    views approach full coverage; two disjoint halves reach it exactly.
TEST_CASE("criterion 9") {
    const auto att = generate_att(100, true, 9);
    GenSpec spec;
    spec.m = 100;
    spec.n = 32;
    spec.coverage = 0.3;
    spec.noise = 0.0;
    spec.pattern = MiattPattern::Custom; // independent index sets
    spec.seed = 99;
    const double wide = union_coverage(generate_miatts(att, spec));

    const auto att2 = generate_att(10, true, 9);
    GenSpec halves;
    halves.m = 10;
    halves.n = 2;
    halves.coverage = 0.5;
    halves.noise = 0.0;
    halves.pattern = MiattPattern::CoverageHighDiversity;
    halves.seed = 1;
    const double exact = union_coverage(generate_miatts(att2, halves));

    const bool ok = wide >= 0.99 && exact == 1.0;
    char buf[96];
    std::snprintf(buf, sizeof buf, "32 x 0.3 coverage union %.4f; disjoint halves %.1f", wide,
                  exact);
    report(9, "union-coverage-growth", ok, buf);
    CHECK(ok);
}

// 10. The full pipeline is byte-reproducible and fast enough to rerun freely.
TEST_CASE("criterion 10") {
    const auto dir = fs::temp_directory_path() / "elmiatt_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);

    const auto pipeline = [&](const std::string& tag) {
        const auto data = (dir / ("data_" + tag + ".jsonl")).string();
        bool ok = true;
        ok = ok && run_cli("generate --pattern coverage-high-diversity --count 1000 -n 3 -m 64 "
                           "--coverage 0.4 --noise 0.2 --pred-noise 0.1 --seed 31 -o " +
                           data) == 0;
        ok = ok && run_cli("assess -i " + data + " -o " +
                           (dir / ("assess_" + tag + ".json")).string()) == 0;
        ok = ok && run_cli("eval-laf -i " + data + " -o " +
                           (dir / ("laf_" + tag + ".json")).string()) == 0;
        ok = ok && run_cli("eval-ternary -i " + data + " -o " +
                           (dir / ("ternary_" + tag + ".json")).string()) == 0;
        ok = ok && run_cli("loss-compare --loss dice --method both --composite-lambda 0.5 -i " +
                           data + " -o " + (dir / ("loss_" + tag + ".json")).string()) == 0;
        return ok;
    };

    const auto t0 = Clock::now();
    bool ok = pipeline("one");
    const double first_run = seconds_since(t0);
    ok = ok && pipeline("two");

    for (const char* stem : {"data", "assess", "laf", "ternary", "loss"}) {
        const auto ext = std::string(stem) == "data" ? ".jsonl" : ".json";
        const auto a = slurp(dir / (std::string(stem) + "_one" + ext));
        const auto b = slurp(dir / (std::string(stem) + "_two" + ext));
        ok = ok && !a.empty() && a == b;
    }
    ok = ok && first_run < 10.0;

    char buf[120];
    std::snprintf(buf, sizeof buf,
                  "1000 samples x 64 elements, two identical runs, first pass %.2fs", first_run);
    report(10, "pipeline-reproducibility", ok, buf);
    CHECK(ok);
}
