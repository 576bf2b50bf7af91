#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <vector>

#include "elmiatt/error.hpp"
#include "elmiatt/k3.hpp"

using namespace elmiatt;

static constexpr std::array<double, 3> kTernary = {0.0, 0.5, 1.0};

TEST_CASE("ternary tables are exhaustively correct") {
    CHECK(k3::neg(0.5) == 0.5); // the fixed point
    CHECK(k3::neg(1.0) == 0.0);
    CHECK(k3::neg(0.3) == doctest::Approx(0.7));

    for (double a : kTernary) {
        CHECK(k3::neg(k3::neg(a)) == a); // involution
        CHECK(k3::conj(a, 1.0) == a);
        CHECK(k3::conj(a, 0.0) == 0.0);
        CHECK(k3::disj(a, 0.0) == a);
        CHECK(k3::disj(a, 1.0) == 1.0);
        CHECK(k3::conj(a, a) == a);
        CHECK(k3::disj(a, a) == a);
        for (double b : kTernary) {
            CHECK(k3::conj(a, b) == k3::conj(b, a));
            CHECK(k3::disj(a, b) == k3::disj(b, a));
            CHECK(k3::neg(k3::conj(a, b)) == k3::disj(k3::neg(a), k3::neg(b)));
            CHECK(k3::neg(k3::disj(a, b)) == k3::conj(k3::neg(a), k3::neg(b)));
            CHECK(k3::implies(a, b) == k3::disj(k3::neg(a), b));
            for (double c : kTernary) {
                CHECK(k3::conj(k3::conj(a, b), c) == k3::conj(a, k3::conj(b, c)));
                CHECK(k3::disj(k3::disj(a, b), c) == k3::disj(a, k3::disj(b, c)));
            }
        }
    }
    CHECK(k3::conj(1.0, 0.5) == 0.5);
    CHECK(k3::disj(0.0, 0.5) == 0.5);
    CHECK(k3::implies(1.0, 0.0) == 0.0);
    CHECK(k3::implies(0.0, 0.0) == 1.0);
    CHECK(k3::implies(0.5, 0.5) == 0.5);
}

TEST_CASE("connectives are monotone over the unit interval") {
    for (int i = 0; i <= 10; ++i) {
        for (int j = 0; j <= 10; ++j) {
            const double a = i / 10.0, b = j / 10.0;
            const double a2 = std::min(1.0, a + 0.1);
            CHECK(k3::conj(a2, b) >= k3::conj(a, b));
            CHECK(k3::disj(a2, b) >= k3::disj(a, b));
            std::vector<double> v1 = {a, b}, v2 = {a2, b};
            CHECK(k3::noisy_or(v2) >= k3::noisy_or(v1) - 1e-15);
        }
    }
}

TEST_CASE("noisy-or dominates max and handles edge inputs") {
    std::vector<double> v = {0.5, 0.5};
    CHECK(k3::noisy_or(v) == doctest::Approx(0.75));
    std::vector<double> certain = {1.0, 0.3};
    CHECK(k3::noisy_or(certain) == 1.0);
    CHECK(k3::noisy_or(std::vector<double>{}) == 0.0);
    CHECK(k3::noisy_or(std::vector<double>{0.8, 0.5}) == doctest::Approx(0.9));

    for (int i = 0; i <= 10; ++i)
        for (int j = 0; j <= 10; ++j) {
            std::vector<double> in = {i / 10.0, j / 10.0};
            const double nor = k3::noisy_or(in);
            const double mx = std::max(in[0], in[1]);
            CHECK(nor >= mx - 1e-15);
            // equality iff at most one value is nonzero or some value is 1
            const bool expect_equal = in[0] == 0.0 || in[1] == 0.0 || in[0] == 1.0 || in[1] == 1.0;
            CHECK((std::abs(nor - mx) <= 1e-15) == expect_equal);
        }

    CHECK_THROWS_AS(k3::noisy_or(std::vector<double>{1.2}), Error);
    CHECK_THROWS_AS(k3::noisy_or(std::vector<double>{-0.1}), Error);
}
