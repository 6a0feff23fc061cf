#include "anharmonic/oscillators.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>
#include <utility>

#include "anharmonic/errors.hpp"
#include "anharmonic/specfun.hpp"

namespace anharmonic::osc {

namespace {

constexpr quad::Options kMomentOptions{1e-15, 1e-13, 2'000'000};
constexpr double kUnderflowArg = 745.0;
constexpr double kLogTailMass = -29.933606208922594;  // ln 1e-13, a decade inside the budget

// Rescales phi so that int phi^2 = 1 on its support.
Wavefunction renormalized(std::function<double(double)> f, quad::Bounds support, bool even) {
    auto shared = std::make_shared<std::function<double(double)>>(std::move(f));
    const double norm2 =
        quad::integrate_1d([&](double x) { return std::pow((*shared)(x), 2); }, support,
                           kMomentOptions)
            .value;
    const double scale = 1.0 / std::sqrt(norm2);
    return {[shared, scale](double x) { return scale * (*shared)(x); }, support, even};
}

// The support window bounds the norm tail only; weighted moments need more room.
quad::Bounds widened(const quad::Bounds& b) {
    const double mid = 0.5 * (b.lower + b.upper);
    const double half = b.upper - mid;
    return {mid - 2.0 * half, mid + 2.0 * half};
}

double moment(const Wavefunction& phi, int power) {
    return quad::integrate_1d(
               [&](double x) {
                   const double v = phi(x);
                   return std::pow(x, power) * v * v;
               },
               widened(phi.support), kMomentOptions)
        .value;
}

// int (phi')^2 with a fourth-order central difference of step h.
double kinetic_moment(const Wavefunction& phi, double h) {
    auto integrand = [&](double x) {
        const double d =
            (phi(x - 2.0 * h) - 8.0 * phi(x - h) + 8.0 * phi(x + h) - phi(x + 2.0 * h)) / (12.0 * h);
        return d * d;
    };
    return quad::integrate_1d(integrand, widened(phi.support), kMomentOptions).value;
}

double log_cosh(double u) {
    const double a = std::abs(u);
    return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

}  // namespace

double MhoParams::tau() const {
    if (!(alpha > 0.0)) throw DomainError("MHO requires alpha > 0");
    if (!(beta >= 0.0)) throw DomainError("MHO requires beta >= 0");
    return beta / std::sqrt(alpha);
}

double MorseParams::n() const {
    if (!(d > 0.0) || !(alpha > 0.0)) throw BoundStateError("Morse requires D > 0 and alpha > 0");
    const double n = std::sqrt(2.0 * d) / alpha - 0.5;
    if (!(n > 0.0)) throw BoundStateError("Morse requires alpha < 2*sqrt(2D)");
    return n;
}

double PtParams::s() const {
    if (!(a > 0.0) || !(alpha > 0.0)) throw BoundStateError("Poschl-Teller requires A > 0 and alpha > 0");
    const double s = 0.5 * (-1.0 + std::sqrt(1.0 + 8.0 * a / (alpha * alpha)));
    if (!(s > 0.0)) throw BoundStateError("Poschl-Teller requires s > 0");
    return s;
}

GroundState mho_ground(const MhoParams& params) {
    const double tau = params.tau();
    const double alpha = params.alpha;
    const double shift = params.beta / alpha;
    // sqrt(2) cosh(beta x) e^{-alpha x^2/2} / sqrt(1 + e^{tau^2}), written as two
    // Gaussians centred at +-beta/alpha so nothing overflows for large tau.
    const double pref = std::pow(alpha / std::numbers::pi, 0.25) /
                        std::sqrt(2.0 * (1.0 + std::exp(-tau * tau)));
    auto f = [alpha, shift, pref](double x) {
        const double a = x - shift;
        const double b = x + shift;
        return pref * (std::exp(-0.5 * alpha * a * a) + std::exp(-0.5 * alpha * b * b));
    };
    const double reach = shift + std::sqrt(60.0 / alpha);
    return {renormalized(f, {-reach, reach}, true), 0.5 * (alpha - params.beta * params.beta)};
}

Covariance2 mho_covariance(const MhoParams& params) {
    const double tau = params.tau();
    const double alpha = params.alpha;
    const double b2 = params.beta * params.beta;
    Covariance2 c;
    c.sxx = 0.5 / alpha + (b2 / (alpha * alpha)) / (1.0 + std::exp(-tau * tau));
    c.spp = 0.5 * alpha - b2 / (1.0 + std::exp(tau * tau));
    return c;
}

quad::Bounds morse_support(double n, double alpha) {
    const double lower = -std::log(kUnderflowArg / (n + 0.5)) / alpha;
    // Mass at y = (2N+1) e^{-alpha x} < y+ is at most y+^{2N} / Gamma(2N+1).
    const double log_y = (kLogTailMass + specfun::log_gamma(2.0 * n + 1.0)) / (2.0 * n);
    const double upper = (std::log(2.0 * n + 1.0) - log_y) / alpha;
    return {lower, upper};
}

GroundState morse_ground(const MorseParams& params) {
    const double n = params.n();
    const double alpha = params.alpha;
    const double log_pref =
        0.5 * std::log(alpha) + n * std::log(2.0 * n + 1.0) - 0.5 * specfun::log_gamma(2.0 * n);
    auto f = [n, alpha, log_pref](double x) {
        return std::exp(log_pref - alpha * n * x - (n + 0.5) * std::exp(-alpha * x));
    };
    return {renormalized(f, morse_support(n, alpha), false), -0.5 * alpha * alpha * n * n};
}

double morse_determinant(double n) {
    if (!(n > 0.0)) throw BoundStateError("Morse requires N > 0");
    return 0.5 * n * specfun::trigamma(2.0 * n);
}

Covariance2 morse_covariance(const MorseParams& params) {
    const double n = params.n();
    const double alpha = params.alpha;
    Covariance2 c;
    c.sxx = specfun::trigamma(2.0 * n) / (alpha * alpha);
    c.spp = 0.5 * alpha * alpha * n;
    // ln y with y = (2N+1) e^{-alpha x} ~ Gamma(2N, 1) has mean psi(2N).
    c.dx = (std::log(2.0 * n + 1.0) - specfun::digamma(2.0 * n)) / alpha;
    return c;
}

Wavefunction pt_unit_ground(double s) {
    if (!(s > 0.0)) throw BoundStateError("Poschl-Teller requires s > 0");
    const double log_pref = -0.25 * std::log(std::numbers::pi) +
                            0.5 * (specfun::log_gamma(s + 0.5) - specfun::log_gamma(s));
    auto f = [s, log_pref](double u) { return std::exp(log_pref - s * log_cosh(u)); };
    // cosh^{-2s} u <= 4^s e^{-2s|u|}
    const double reach =
        std::max(1.0, (2.0 * log_pref + 2.0 * s * std::numbers::ln2 - std::log(2.0 * s) -
                       kLogTailMass) /
                          (2.0 * s));
    return renormalized(f, {-reach, reach}, true);
}

GroundState pt_ground(const PtParams& params) {
    const double s = params.s();
    const double alpha = params.alpha;
    auto unit = std::make_shared<Wavefunction>(pt_unit_ground(s));
    const double root = std::sqrt(alpha);
    Wavefunction phi{[unit, alpha, root](double x) { return root * (*unit)(alpha * x); },
                     {unit->support.lower / alpha, unit->support.upper / alpha},
                     true};
    return {std::move(phi), -0.5 * alpha * alpha * s * s};
}

Covariance2 pt_covariance(const PtParams& params) {
    const double s = params.s();
    static std::mutex mutex;
    static std::map<double, std::pair<double, double>> cache;
    std::pair<double, double> unit;
    bool hit = false;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(s); it != cache.end()) {
            unit = it->second;
            hit = true;
        }
    }
    if (!hit) {
        const Wavefunction phi = pt_unit_ground(s);
        unit = {moment(phi, 2), kinetic_moment(phi, 1e-3 / std::sqrt(1.0 + s))};
        std::lock_guard lock(mutex);
        cache.emplace(s, unit);
    }
    const double a2 = params.alpha * params.alpha;
    Covariance2 c;
    c.sxx = unit.first / a2;
    c.spp = unit.second * a2;
    return c;
}

}  // namespace anharmonic::osc
