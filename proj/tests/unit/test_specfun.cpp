#include <cmath>
#include <numbers>
#include <vector>

#include "anharmonic/errors.hpp"
#include "anharmonic/specfun.hpp"
#include "doctest.h"

using namespace anharmonic;
using namespace anharmonic::specfun;

TEST_SUITE("specfun") {

TEST_CASE("log_gamma known values") {
    CHECK(std::abs(log_gamma(1.0)) < 1e-14);
    CHECK(std::abs(log_gamma(0.5) - 0.5 * std::log(std::numbers::pi)) < 1e-13);
    CHECK(std::abs(log_gamma(10.0) - std::log(362880.0)) < 1e-12);
    CHECK_THROWS_AS(log_gamma(0.0), DomainError);
    CHECK_THROWS_AS(log_gamma(-1.5), DomainError);
}

TEST_CASE("log_gamma against libm on [0.05, 200]") {
    for (double z = 0.05; z <= 200.0; z *= 1.07) {
        const double ref = std::lgamma(z);
        CHECK(std::abs(log_gamma(z) - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
    }
}

TEST_CASE("trigamma") {
    const double pi2 = std::numbers::pi * std::numbers::pi;
    CHECK(std::abs(trigamma(1.0) - pi2 / 6.0) < 1e-12);
    CHECK(std::abs(trigamma(0.5) - pi2 / 2.0) < 1e-12);

    // Brute-force series with an Euler-Maclaurin remainder for k >= 1e6.
    const double z = 17.86;
    double sum = 0.0;
    for (int k = 999'999; k >= 0; --k) sum += 1.0 / ((z + k) * (z + k));
    const double w = z + 1e6;
    sum += 1.0 / w + 0.5 / (w * w) + 1.0 / (6.0 * w * w * w);
    CHECK(std::abs(trigamma(z) - sum) < 1e-10);

    for (double v : {0.1, 1.0, 3.7, 42.0}) {
        CHECK(std::abs(trigamma(v) - trigamma(v + 1.0) - 1.0 / (v * v)) < 1e-12);
    }
    CHECK_THROWS_AS(trigamma(0.0), DomainError);
}

TEST_CASE("digamma") {
    CHECK(std::abs(digamma(1.0) + std::numbers::egamma) < 1e-13);
    CHECK(std::abs(digamma(0.3) - (-3.5025242222001331249)) < 1e-12);
    for (double v : {0.2, 2.5, 31.0}) CHECK(std::abs(digamma(v + 1.0) - digamma(v) - 1.0 / v) < 1e-12);
    // derivative check against trigamma
    const double h = 1e-4;
    CHECK(std::abs((digamma(3.0 + h) - digamma(3.0 - h)) / (2 * h) - trigamma(3.0)) < 1e-7);
}

TEST_CASE("laguerre_assoc") {
    for (int k : {0, 1, 5}) CHECK(laguerre_assoc(0, k, 2.3) == 1.0);
    for (double x : {-1.0, 0.0, 0.7, 9.0}) CHECK(std::abs(laguerre_assoc(1, 0, x) - (1.0 - x)) < 1e-15);

    auto direct = [](int n, int k, double x) {
        double s = 0.0;
        for (int i = 0; i <= n; ++i) {
            const double binom = std::exp(std::lgamma(n + k + 1.0) - std::lgamma(n - i + 1.0) -
                                          std::lgamma(k + i + 1.0));
            s += (i % 2 ? -1.0 : 1.0) * binom * std::pow(x, i) / std::tgamma(i + 1.0);
        }
        return s;
    };
    CHECK(std::abs(laguerre_assoc(6, 2, 4.0) - direct(6, 2, 4.0)) < 1e-10);
    CHECK(std::abs(laguerre_assoc(6, 2, 4.0) - 2.7555555555555555556) < 1e-10);
    for (int n : {2, 7, 12}) {
        for (int k : {0, 3}) CHECK(std::abs(laguerre_assoc(n, k, 1.7) - direct(n, k, 1.7)) < 1e-9);
    }
}

TEST_CASE("macdonald K0") {
    CHECK(std::abs(macdonald_imag_order(0.0, 1.0) - 0.42102443824070833334) < 1e-10);
    for (double x : {0.01, 0.2, 0.49, 0.5, 0.51, 1.0, 3.0, 10.0, 40.0}) {
        const double ref = std::cyl_bessel_k(0.0, x);
        CHECK(std::abs(macdonald_imag_order(0.0, x) - ref) <= 1e-12 * std::max(1.0, ref));
    }
    CHECK_THROWS_AS(macdonald_imag_order(1.0, 0.0), DomainError);
}

TEST_CASE("macdonald against trapezoid of the defining integral") {
    const double nu = 2.0;
    const double x = 0.5;
    const double tmax = std::acosh(745.0 / x);
    const int n = 1'000'000;
    const double h = tmax / n;
    double sum = 0.5 * std::exp(-x);  // t = 0 endpoint
    for (int i = 1; i < n; ++i) {
        const double t = i * h;
        sum += std::exp(-x * std::cosh(t)) * std::cos(nu * t);
    }
    CHECK(std::abs(macdonald_imag_order(nu, x) - sum * h) < 1e-8);
    CHECK(std::abs(macdonald_imag_order(nu, x) - 0.016502018949481442656) < 1e-12);
}

TEST_CASE("macdonald reference values across regimes") {
    struct Ref {
        double x, nu, k;
    };
    // arbitrary-precision reference values
    const std::vector<Ref> refs{{0.3, 0.5, 1.1009281827393464939},
                                {0.01, 3.0, -0.012297294234570473077},
                                {1e-4, 12.0, -3.3504259770904627306e-9},
                                {0.45, 0.02, 1.0126480212158195347},
                                {0.2, 49.0, -9.9773936231436031069e-35},
                                {2.0, 1.5, 0.070695017157808281071},
                                {25.0, 4.0, 2.5294365806143722002e-12}};
    for (const auto& r : refs) {
        CAPTURE(r.x);
        CAPTURE(r.nu);
        CHECK(std::abs(macdonald_imag_order(r.nu, r.x) - r.k) < 1e-12);
    }
    CHECK(std::abs(macdonald_imag_order_scaled(4.0, 25.0) - std::exp(25.0) * 2.5294365806143722002e-12) <
          1e-12);
}

TEST_CASE("macdonald is even in nu and continuous at the regime switch") {
    for (double nu : {0.3, 2.0, 7.5}) {
        for (double x : {0.05, 0.7, 4.0}) {
            CHECK(macdonald_imag_order(nu, x) == macdonald_imag_order(-nu, x));
        }
        const double below = macdonald_imag_order(nu, std::nextafter(0.5, 0.0));
        const double above = macdonald_imag_order(nu, 0.5);
        CHECK(std::abs(below - above) < 1e-13);
    }
}

TEST_CASE("h_entropy") {
    CHECK(h_entropy(0.5) == 0.0);
    CHECK(std::abs(h_entropy(1.5) - 2.0 * std::log(2.0)) < 1e-14);
    CHECK(std::abs(h_entropy(5.0) - (5.5 * std::log(5.5) - 4.5 * std::log(4.5))) < 1e-13);
    CHECK_THROWS_AS(h_entropy(0.49), DomainError);
    double prev = 0.0;
    for (double x = 0.5 + 1e-9; x < 50.0; x = 0.5 + (x - 0.5) * 1.5) {
        const double v = h_entropy(x);
        CHECK(v > prev);
        prev = v;
    }
    CHECK(h_entropy(0.5 + 1e-12) > 0.0);
    CHECK(h_entropy(0.5 + 1e-12) < 1e-10);
}

}
