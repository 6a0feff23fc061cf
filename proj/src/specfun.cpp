#include "anharmonic/specfun.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "anharmonic/errors.hpp"
#include "anharmonic/quad.hpp"

namespace anharmonic::specfun {

namespace {

void require_positive(double z, const char* name) {
    if (!(z > 0.0)) {
        throw DomainError(std::string(name) + ": argument must be positive, got " +
                          std::to_string(z));
    }
}

// Below this x, the head [0, T0] with x cosh T0 = kHeadBound is summed analytically.
constexpr double kHeadBound = 0.5;
constexpr int kHeadTerms = 22;
// exp(-745) is the smallest normal-range exponent worth integrating.
constexpr double kUnderflowArg = 745.0;

constexpr std::array<double, kHeadTerms> inverse_factorials() {
    std::array<double, kHeadTerms> out{};
    double f = 1.0;
    for (int k = 0; k < kHeadTerms; ++k) {
        if (k > 0) f *= k;
        out[k] = 1.0 / f;
    }
    return out;
}

// sum_k (-x)^k / k! int_0^T0 cosh^k(t) cos(nu t) dt with x cosh T0 = kHeadBound.
// Expanding cosh^k into exponentials, x^k 2^{-k} e^{(k-2j) T0} = y^{k-j} z^j with
// y = x e^{T0} / 2 and z = x e^{-T0} / 2, so no intermediate overflows.
double macdonald_head(double nu, double x, double t0) {
    static constexpr auto inv_fact = inverse_factorials();
    constexpr int kOffset = kHeadTerms - 1;
    const double y = 0.5 * x * std::exp(t0);
    const double z = 0.5 * x * std::exp(-t0);
    const double half_x = 0.5 * x;
    const std::complex<double> phase = std::polar(1.0, nu * t0);

    std::array<double, kHeadTerms> y_pow{};
    std::array<double, kHeadTerms> z_pow{};
    std::array<double, kHeadTerms> hx_pow{};
    y_pow[0] = z_pow[0] = hx_pow[0] = 1.0;
    for (int k = 1; k < kHeadTerms; ++k) {
        y_pow[k] = y_pow[k - 1] * y;
        z_pow[k] = z_pow[k - 1] * z;
        hx_pow[k] = hx_pow[k - 1] * half_x;
    }
    std::array<double, 2 * kHeadTerms - 1> re_upper{};
    std::array<double, 2 * kHeadTerms - 1> re_lower{};
    for (int a = -kOffset; a <= kOffset; ++a) {
        if (a == 0 && nu == 0.0) continue;
        const std::complex<double> r = 1.0 / std::complex<double>(a, nu);
        re_upper[a + kOffset] = std::real(phase * r);
        re_lower[a + kOffset] = std::real(r);
    }

    double sum = 0.0;
    for (int k = 0; k < kHeadTerms; ++k) {
        double term = 0.0;
        for (int j = 0; j <= k; ++j) {
            const int a = k - 2 * j;
            const double weight = inv_fact[j] * inv_fact[k - j];
            if (a == 0 && nu == 0.0) {
                term += weight * y_pow[k - j] * z_pow[j] * t0;
            } else {
                term += weight * (y_pow[k - j] * z_pow[j] * re_upper[a + kOffset] -
                                  hx_pow[k] * re_lower[a + kOffset]);
            }
        }
        sum += (k % 2 == 0) ? term : -term;
    }
    return sum;
}

// ln Gamma(z) for Re z > 0, defined up to multiples of 2 pi i.
std::complex<double> log_gamma_complex(std::complex<double> z) {
    std::complex<double> prod = 1.0;
    while (z.real() < 15.0) {
        prod *= z;
        z += 1.0;
    }
    const std::complex<double> inv = 1.0 / z;
    const std::complex<double> inv2 = inv * inv;
    const std::complex<double> series =
        inv * (1.0 / 12.0 +
               inv2 * (-1.0 / 360.0 +
                       inv2 * (1.0 / 1260.0 +
                               inv2 * (-1.0 / 1680.0 +
                                       inv2 * (1.0 / 1188.0 +
                                               inv2 * (-691.0 / 360360.0 + inv2 / 156.0))))));
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi) + series -
           std::log(prod);
}

// Orders where the ascending series below is used; outside, 1/sinh(pi nu) loses
// precision (small nu) or the terms outgrow the result (large nu).
constexpr double kSeriesMinOrder = 1e-2;
constexpr double kSeriesMaxOrder = 50.0;

// K_{i nu}(x) = -pi Im I_{i nu}(x) / sinh(pi nu) with
// I_{i nu}(x) = sum_k (x/2)^{2k + i nu} / (k! Gamma(k + 1 + i nu)).
double macdonald_series(double nu, double x) {
    const double h = 0.5 * x;
    const std::complex<double> i_nu(0.0, nu);
    std::complex<double> term =
        std::exp(i_nu * std::log(h) - log_gamma_complex(1.0 + i_nu));
    std::complex<double> sum = term;
    const double h2 = h * h;
    for (int k = 1; k < 200; ++k) {
        term *= h2 / (static_cast<double>(k) * (static_cast<double>(k) + i_nu));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return -std::numbers::pi * sum.imag() / std::sinh(std::numbers::pi * nu);
}

quad::Options macdonald_options(double magnitude) {
    return {1e-13 * magnitude, 1e-12, 400'000};
}

}  // namespace

double log_gamma(double z) {
    require_positive(z, "log_gamma");
    // Shift up to the asymptotic regime, then Stirling's series.
    double shift = 0.0;
    double w = z;
    double prod = 1.0;
    while (w < 15.0) {
        prod *= w;
        w += 1.0;
        if (prod > 1e280) {
            shift += std::log(prod);
            prod = 1.0;
        }
    }
    shift += std::log(prod);
    const double inv = 1.0 / w;
    const double inv2 = inv * inv;
    const double series =
        inv * (1.0 / 12.0 +
               inv2 * (-1.0 / 360.0 +
                       inv2 * (1.0 / 1260.0 +
                               inv2 * (-1.0 / 1680.0 +
                                       inv2 * (1.0 / 1188.0 +
                                               inv2 * (-691.0 / 360360.0 + inv2 / 156.0))))));
    const double stirling =
        (w - 0.5) * std::log(w) - w + 0.5 * std::log(2.0 * std::numbers::pi) + series;
    return stirling - shift;
}

double digamma(double z) {
    require_positive(z, "digamma");
    double acc = 0.0;
    double w = z;
    while (w < 10.0) {
        acc -= 1.0 / w;
        w += 1.0;
    }
    // psi(w) ~ ln w - 1/(2w) - sum_k B_{2k} / (2k w^{2k}), through B_12.
    const double inv2 = 1.0 / (w * w);
    const double series =
        inv2 * (1.0 / 12.0 +
                inv2 * (-1.0 / 120.0 +
                        inv2 * (1.0 / 252.0 +
                                inv2 * (-1.0 / 240.0 + inv2 * (1.0 / 132.0 + inv2 * (-691.0 / 32760.0))))));
    return acc + std::log(w) - 0.5 / w - series;
}

double trigamma(double z) {
    require_positive(z, "trigamma");
    double acc = 0.0;
    double w = z;
    while (w < 10.0) {
        acc += 1.0 / (w * w);
        w += 1.0;
    }
    // psi'(w) ~ 1/w + 1/(2w^2) + sum_k B_{2k} / w^{2k+1}, through B_12.
    const double inv = 1.0 / w;
    const double inv2 = inv * inv;
    const double tail =
        inv + 0.5 * inv2 +
        inv * inv2 *
            (1.0 / 6.0 +
             inv2 * (-1.0 / 30.0 +
                     inv2 * (1.0 / 42.0 +
                             inv2 * (-1.0 / 30.0 + inv2 * (5.0 / 66.0 + inv2 * (-691.0 / 2730.0))))));
    return acc + tail;
}

double laguerre_assoc(int n, int k, double x) {
    if (n < 0 || k < 0) throw DomainError("laguerre_assoc: n and k must be non-negative");
    double prev = 1.0;
    if (n == 0) return prev;
    double cur = 1.0 + k - x;
    for (int m = 1; m < n; ++m) {
        const double next = ((2.0 * m + 1.0 + k - x) * cur - (m + k) * prev) / (m + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

double macdonald_imag_order_scaled(double nu, double x) {
    require_positive(x, "macdonald_imag_order");
    nu = std::abs(nu);
    if (x < kHeadBound) return std::exp(x) * macdonald_imag_order(nu, x);

    // e^{x} K = int_0^{t*} exp(-2x sinh^2(t/2)) cos(nu t) dt, cut where the exponent hits -745.
    const double t_end = 2.0 * std::asinh(std::sqrt(kUnderflowArg / (2.0 * x)));
    auto integrand = [x, nu](double t) {
        const double s = std::sinh(0.5 * t);
        return std::exp(-2.0 * x * s * s) * std::cos(nu * t);
    };
    const double magnitude = std::sqrt(std::numbers::pi / (2.0 * x));
    return quad::integrate_1d(integrand, {0.0, t_end}, macdonald_options(magnitude)).value;
}

double macdonald_imag_order(double nu, double x) {
    require_positive(x, "macdonald_imag_order");
    nu = std::abs(nu);
    if (x >= kHeadBound) {
        if (x > kUnderflowArg) return 0.0;
        return std::exp(-x) * macdonald_imag_order_scaled(nu, x);
    }
    if (nu >= kSeriesMinOrder && nu <= kSeriesMaxOrder) return macdonald_series(nu, x);
    const double t0 = std::acosh(kHeadBound / x);
    const double t_end = std::acosh(kUnderflowArg / x);
    auto integrand = [x, nu](double t) { return std::exp(-x * std::cosh(t)) * std::cos(nu * t); };
    const double tail =
        quad::integrate_1d(integrand, {t0, t_end}, macdonald_options(t_end - t0)).value;
    return macdonald_head(nu, x, t0) + tail;
}

double h_entropy(double x) {
    if (!(x >= 0.5)) {
        throw DomainError("h_entropy: argument must be >= 1/2, got " + std::to_string(x));
    }
    const double up = x + 0.5;
    const double down = x - 0.5;
    const double lower_term = down > 0.0 ? down * std::log(down) : 0.0;
    return up * std::log(up) - lower_term;
}

}  // namespace anharmonic::specfun
