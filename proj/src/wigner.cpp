#include "anharmonic/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "anharmonic/errors.hpp"
#include "anharmonic/oscillators.hpp"
#include "anharmonic/specfun.hpp"

namespace anharmonic::wigner {

namespace {

constexpr double kUnderflowLog = -745.0;
constexpr quad::Options kInnerOptions{1e-11, 1e-9, 400'000};

double spread_p(const Wavefunction& phi) {
    const double h = 1e-4 * phi.support.width();
    auto integrand = [&](double x) {
        const double d =
            (phi(x - 2.0 * h) - 8.0 * phi(x - h) + 8.0 * phi(x + h) - phi(x + 2.0 * h)) / (12.0 * h);
        return d * d;
    };
    return std::sqrt(quad::integrate_1d(integrand, phi.support, {1e-10, 1e-6, 1'000'000}).value);
}

struct FockTerms {
    std::vector<fock::Complex> c;
    std::vector<double> log_fact;
    std::vector<std::size_t> last_m;  // per offset d: largest m with c_m c_{m+d} != 0, or npos
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

double fock_density(const FockTerms& t, double x, double p) {
    const double r = x * x + p * p;
    if (r > 500.0) return 0.0;
    const double arg = 2.0 * r;  // 4|z|^2
    const std::complex<double> two_z(std::numbers::sqrt2 * x, std::numbers::sqrt2 * p);
    const std::size_t n = t.c.size();
    std::complex<double> power(1.0, 0.0);
    double sum = 0.0;
    for (std::size_t d = 0; d < n; ++d) {
        if (d > 0) power *= two_z;
        const std::size_t top = t.last_m[d];
        if (top == FockTerms::npos) continue;
        const double weight = d == 0 ? 1.0 : 2.0;
        double l_prev = 0.0;
        double l_cur = 1.0;  // L_0^{(d)}
        for (std::size_t m = 0; m <= top; ++m) {
            if (m > 0) {
                const double mm = static_cast<double>(m - 1);
                const double next =
                    ((2.0 * mm + 1.0 + d - arg) * l_cur - (mm + d) * l_prev) / (mm + 1.0);
                l_prev = l_cur;
                l_cur = next;
            }
            const fock::Complex cc = t.c[m] * std::conj(t.c[m + d]);
            if (cc == fock::Complex(0.0)) continue;
            const double ratio = std::exp(0.5 * (t.log_fact[m] - t.log_fact[m + d]));
            const double sign = m % 2 == 0 ? 1.0 : -1.0;
            sum += weight * sign * ratio * l_cur * std::real(cc * power);
        }
    }
    // W_z = (2/pi) e^{-2|z|^2} sum; W(x, p) = W_z / 2.
    return std::exp(-r) * sum / std::numbers::pi;
}

struct Integrand {
    const WignerField& w;
    double operator()(double x, double p) const {
        const double v = w(x, p);
        return v < 0.0 ? -v : 0.0;
    }
};

quad::QuadResult integrate_piece(const Integrand& f, double x0, double x1, double p0, double p1,
                                 const quad::Options& opts) {
    if (!(x1 > x0) || !(p1 > p0)) return {};
    return quad::integrate_2d(f, {{x0, x1}, {p0, p1}}, opts);
}

}  // namespace

WignerField mho_wigner(double tau) {
    if (!(tau > 0.0)) throw DomainError("mho_wigner: tau must be positive");
    const double t2 = tau * tau;
    const double norm = 1.0 / (std::numbers::pi * t2 * (1.0 + std::exp(-t2)));
    // cosh(2q) e^{-q^2/tau^2} / (1 + e^{tau^2}) split into Gaussians centred at +-tau^2.
    auto density = [t2, norm](double q, double p) {
        const double gp = std::exp(-p * p / t2);
        const double a = q - t2;
        const double b = q + t2;
        const double humps = 0.5 * (std::exp(-a * a / t2) + std::exp(-b * b / t2));
        return norm * gp * (humps + std::exp(-q * q / t2) * std::cos(2.0 * p));
    };
    const double reach = std::max(6.0 * tau, 6.0);
    return {density, {{-(t2 + reach), t2 + reach}, {-reach, reach}}, true, true};
}

WignerField morse_wigner(double n) {
    if (!(n > 0.0)) throw BoundStateError("morse_wigner: N must be positive");
    const double log_const = std::numbers::ln2 + 2.0 * n * std::log(2.0 * n + 1.0) -
                             std::log(std::numbers::pi) - specfun::log_gamma(2.0 * n);
    const double log_scale = std::log(2.0 * n + 1.0);
    auto density = [n, log_const, log_scale](double q, double p) {
        const double log_arg = log_scale - q;
        if (log_arg < -690.0) return 0.0;
        const double arg = std::exp(log_arg);
        const double log_pref = log_const - 2.0 * n * q - arg;
        if (log_pref < kUnderflowLog) return 0.0;
        return std::exp(log_pref) * specfun::macdonald_imag_order_scaled(2.0 * p, arg);
    };
    const quad::Bounds q_range = osc::morse_support(n, 1.0);
    const double reach = 10.0 * std::sqrt(0.5 * n) + 2.0;
    return {density, {q_range, {-reach, reach}}, false, true};
}

WignerField wavefunction_wigner(const Wavefunction& phi) {
    auto shared = std::make_shared<Wavefunction>(phi);
    auto density = [shared](double x, double p) {
        const quad::Bounds s = shared->support;
        const double reach = std::min(x - s.lower, s.upper - x);
        if (!(reach > 0.0)) return 0.0;
        auto integrand = [&](double u) {
            return (*shared)(x - u) * (*shared)(x + u) * std::cos(2.0 * u * p);
        };
        return 2.0 / std::numbers::pi * quad::integrate_1d(integrand, {0.0, reach}, kInnerOptions).value;
    };
    const double reach_p = 10.0 * spread_p(phi) + 2.0;
    return {density, {phi.support, {-reach_p, reach_p}}, phi.even, true};
}

WignerField fock_wigner(const fock::FockState& s) {
    auto terms = std::make_shared<FockTerms>();
    terms->c = s.coeffs();
    const std::size_t n = s.dim();
    terms->log_fact.resize(n);
    for (std::size_t k = 0; k < n; ++k) terms->log_fact[k] = specfun::log_gamma(k + 1.0);
    terms->last_m.assign(n, FockTerms::npos);
    std::size_t n_max = 0;
    bool has_even = false;
    bool has_odd = false;
    for (std::size_t m = 0; m < n; ++m) {
        if (s[m] == fock::Complex(0.0)) continue;
        n_max = m;
        (m % 2 == 0 ? has_even : has_odd) = true;
        for (std::size_t j = m; j < n; ++j) {
            if (s[j] != fock::Complex(0.0)) terms->last_m[j - m] = m;
        }
    }
    auto density = [terms](double x, double p) { return fock_density(*terms, x, p); };
    const double reach = std::sqrt(2.0 * n_max + 1.0) + 7.0;
    const bool real = s.is_real();
    return {density, {{-reach, reach}, {-reach, reach}}, real && !(has_even && has_odd), real};
}

Negativity negativity_volume(const WignerField& w, const NegativityOptions& opts) {
    const Integrand f{w};
    const double factor = (w.even_x ? 2.0 : 1.0) * (w.even_p ? 2.0 : 1.0);
    quad::Bounds bx = w.box.x;
    quad::Bounds bp = w.box.p;
    if (w.even_x) bx.lower = 0.0;
    if (w.even_p) bp.lower = 0.0;

    // Shallow negative islands (|W| ~ 1e-6) slip between the nodes of coarse
    // cells, so the starting mesh is fine in absolute phase-space units.
    const double span = std::max(bx.width(), bp.width());
    const auto mesh = static_cast<std::size_t>(std::clamp(std::ceil(span / 0.25), 8.0, 64.0));
    quad::Options main = opts.quad;
    main.initial_splits = std::max(main.initial_splits, mesh);
    quad::QuadResult r = quad::integrate_2d(f, {bx, bp}, main);
    double total = r.value;
    double error = r.abs_error;
    std::size_t evals = r.evaluations;

    quad::Options frame = opts.quad;
    frame.abs_tol = std::min(frame.abs_tol, 0.1 * opts.frame_tol / factor);
    frame.initial_splits = std::max<std::size_t>(frame.initial_splits, 4);
    for (int k = 0; k < opts.max_doublings; ++k) {
        auto grow = [](quad::Bounds b, bool even) {
            if (even) return quad::Bounds{0.0, 2.0 * b.upper};
            const double half = 0.5 * b.width();
            return quad::Bounds{b.lower - half, b.upper + half};
        };
        const quad::Bounds nx = grow(bx, w.even_x);
        const quad::Bounds np = grow(bp, w.even_p);
        double added = 0.0;
        for (const auto& piece :
             {integrate_piece(f, nx.lower, bx.lower, np.lower, np.upper, frame),
              integrate_piece(f, bx.upper, nx.upper, np.lower, np.upper, frame),
              integrate_piece(f, bx.lower, bx.upper, np.lower, bp.lower, frame),
              integrate_piece(f, bx.lower, bx.upper, bp.upper, np.upper, frame)}) {
            added += piece.value;
            error += piece.abs_error;
            evals += piece.evaluations;
        }
        total += added;
        bx = nx;
        bp = np;
        if (2.0 * factor * added < opts.frame_tol) break;
    }

    Negativity out;
    out.delta = 2.0 * factor * total;
    out.abs_error = 2.0 * factor * error;
    out.evaluations = evals;
    if (out.delta <= out.abs_error || out.delta < 0.0) out.delta = 0.0;
    out.nu = out.delta / (1.0 + out.delta);
    return out;
}

}  // namespace anharmonic::wigner
