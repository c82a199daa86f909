#include <doctest.h>

#include <cmath>
#include <random>

#include "cslik/numkernel.hpp"
#include "oracles.hpp"

using namespace cslik;

TEST_CASE("normal_cdf known values") {
    CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    // 0.9750021048517795 frozen from the series oracle
    CHECK(normal_cdf(1.96) == doctest::Approx(0.9750021048517795).epsilon(1e-12));
    CHECK(normal_cdf(1.96) == doctest::Approx(0.9750).epsilon(1e-4));
}

TEST_CASE("normal_cdf matches the series oracle to 1e-12") {
    for (double x = -8.0; x <= 8.0; x += 0.173) {
        CHECK(std::abs(normal_cdf(x) - oracle::normal_cdf(x)) <= 1e-12);
    }
}

TEST_CASE("normal_cdf reflection identity") {
    for (double x : {0.1, 0.5, 1.0, 2.0, 3.7, 6.0}) {
        CHECK(normal_cdf(-x) == doctest::Approx(1.0 - normal_cdf(x)).epsilon(1e-14));
    }
}

TEST_CASE("normal_cdf is nondecreasing on a 1e4-point grid") {
    double prev = normal_cdf(-10.0);
    for (int i = 1; i < 10000; ++i) {
        double x = -10.0 + 20.0 * i / 9999.0;
        double v = normal_cdf(x);
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("normal_cdf rejects non-finite input") {
    CHECK_THROWS_AS(normal_cdf(std::numeric_limits<double>::infinity()), std::invalid_argument);
    CHECK_THROWS_AS(normal_cdf(std::nan("")), std::invalid_argument);
}

TEST_CASE("normal_quantile known values") {
    CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-14));
    // 1.959963984540054 frozen from bisection on the oracle CDF
    CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-10));
    CHECK(normal_quantile(0.975) == doctest::Approx(1.95996).epsilon(1e-4));
}

TEST_CASE("normal_quantile symmetry") {
    for (double p : {0.01, 0.1, 0.3, 0.45}) {
        CHECK(normal_quantile(p) == doctest::Approx(-normal_quantile(1.0 - p)).epsilon(1e-12));
    }
}

TEST_CASE("normal_quantile round trip") {
    for (double p = 1e-6; p < 1.0; p += 0.003) {
        CHECK(std::abs(normal_cdf(normal_quantile(p)) - p) <= 1e-10);
    }
    // quantile(cdf(x)) = x on [-6, 6]
    for (double x = -6.0; x <= 6.0; x += 0.11) {
        CHECK(std::abs(normal_quantile(normal_cdf(x)) - x) <= 1e-8);
    }
}

TEST_CASE("normal_quantile rejects boundary p") {
    CHECK_THROWS_AS(normal_quantile(0.0), std::invalid_argument);
    CHECK_THROWS_AS(normal_quantile(1.0), std::invalid_argument);
    CHECK_THROWS_AS(normal_quantile(-0.2), std::invalid_argument);
}

TEST_CASE("chi2_1_cdf values and identity") {
    CHECK(chi2_1_cdf(0.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(chi2_1_cdf(3.841) == doctest::Approx(0.95).epsilon(1e-3));
    // 2*Phi(sqrt(6.9)) - 1, frozen from the oracle: 0.9913804250393983
    CHECK(chi2_1_cdf(6.9) == doctest::Approx(0.9913804250393983).epsilon(1e-10));
    for (double x : {0.01, 0.5, 1.0, 3.84, 10.0}) {
        CHECK(chi2_1_cdf(x) == 2.0 * normal_cdf(std::sqrt(x)) - 1.0);
    }
    CHECK_THROWS_AS(chi2_1_cdf(-0.1), std::invalid_argument);
}

TEST_CASE("bisect finds roots") {
    auto linear = [](double x) { return x - 1.0; };
    CHECK(bisect(linear, Bracket{0.0, 2.0, 1e-12}) == doctest::Approx(1.0).epsilon(1e-10));

    auto f = [](double x) { return normal_cdf(x) - 0.975; };
    CHECK(bisect(f, Bracket{0.0, 10.0, 1e-12}) ==
          doctest::Approx(normal_quantile(0.975)).epsilon(1e-8));
    CHECK(bisect(f, Bracket{0.0, 10.0, 1e-12}) == doctest::Approx(1.95996).epsilon(1e-4));
}

TEST_CASE("bisect rejects a same-sign bracket") {
    auto f = [](double x) { return x * x + 1.0; };
    CHECK_THROWS_AS(bisect(f, Bracket{0.0, 2.0, 1e-10}), std::domain_error);
}

TEST_CASE("bisect is deterministic") {
    auto f = [](double x) { return std::erf(x) - 0.3; };
    double a = bisect(f, Bracket{0.0, 5.0, 1e-12});
    double b = bisect(f, Bracket{0.0, 5.0, 1e-12});
    CHECK(a == b);
}

TEST_CASE("Probability rejects boundary and outside values") {
    CHECK_THROWS_AS(Probability(0.0), std::invalid_argument);
    CHECK_THROWS_AS(Probability(1.0), std::invalid_argument);
    CHECK_THROWS_AS(Probability(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(Probability(1.5), std::invalid_argument);
    CHECK(Probability(0.05).value() == 0.05);
}
