#include "anharmonic/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "anharmonic/errors.hpp"
#include "anharmonic/parallel.hpp"
#include "anharmonic/specfun.hpp"

namespace anharmonic::perturb {

void PolyParams::validate() const {
    if (!(omega > 0.0)) throw DomainError("poly requires omega > 0");
    if (!(eps4 >= 0.0) || !(eps6 >= 0.0)) throw DomainError("poly requires eps4 >= 0 and eps6 >= 0");
}

bool PolyParams::in_validity_box() const {
    return eps4 <= 0.1 * std::pow(omega, 3) * (1.0 + 1e-12) &&
           eps6 <= 0.03 * std::pow(omega, 4) * (1.0 + 1e-12);
}

namespace {

double power_element(int n, int dn, double omega, int power) {
    if (n < 0 || dn < 0 || dn > power || dn % 2 != 0) {
        throw std::invalid_argument("matrix element offset out of range");
    }
    const auto ops = fock::ladder_matrices(static_cast<std::size_t>(std::max(n + dn + 1, 2)), omega);
    const auto& m = power == 4 ? ops.x4 : ops.x6;
    return m(static_cast<std::size_t>(n), static_cast<std::size_t>(n + dn));
}

}  // namespace

double x4_element(int n, int dn, double omega) { return power_element(n, dn, omega, 4); }

double x6_element(int n, int dn, double omega) { return power_element(n, dn, omega, 6); }

GammaCoeffs perturbative_gammas(const PolyParams& params) {
    params.validate();
    const double w = params.omega;
    const auto ops = fock::ladder_matrices(7, w);
    auto ratio = [&](std::size_t k) {
        const double v = params.eps4 * ops.x4(0, k) + params.eps6 * ops.x6(0, k);
        return -v / (w * static_cast<double>(k));
    };
    const double r2 = ratio(2);
    const double r4 = ratio(4);
    const double r6 = ratio(6);
    const double g0 = 1.0 / std::sqrt(1.0 + r2 * r2 + r4 * r4 + r6 * r6);
    return {g0, g0 * r2, g0 * r4, g0 * r6};
}

double normalization_c(const PolyParams& params) {
    params.validate();
    const double w = params.omega;
    const double e4 = params.eps4;
    const double e6 = params.eps6;
    return std::sqrt(w * w * (96.0 * std::pow(w, 6) + 117.0 * e4 * e4) + 945.0 * w * e4 * e6 +
                     2055.0 * e6 * e6) /
           (4.0 * std::sqrt(6.0) * std::pow(w, 4));
}

PerturbativeGround perturbative_ground(const PolyParams& params, std::size_t dim) {
    if (dim < 7) throw std::invalid_argument("perturbative_ground: dim must be >= 7");
    const GammaCoeffs g = perturbative_gammas(params);
    std::vector<double> c(dim, 0.0);
    c[0] = g.gamma0;
    c[2] = g.gamma2;
    c[4] = g.gamma4;
    c[6] = g.gamma6;
    return {fock::FockState(c), g, !params.in_validity_box()};
}

fock::SymMatrix hamiltonian(const PolyParams& params, std::size_t dim) {
    params.validate();
    const auto ops = fock::ladder_matrices(dim, params.omega);
    fock::SymMatrix h = ops.x4 * params.eps4 + ops.x6 * params.eps6;
    for (std::size_t n = 0; n < dim; ++n) h.add_diagonal(n, params.omega * (n + 0.5));
    return h;
}

NumericGround numeric_ground(const PolyParams& params, std::size_t dim) {
    if (dim < 31) throw std::invalid_argument("numeric_ground: dim must be >= 31");
    const auto eig = fock::symmetric_eigen(hamiltonian(params, dim));
    std::vector<double> v = eig.vector(0);
    if (v[0] < 0.0) {
        for (auto& x : v) x = -x;
    }
    fock::FockState state(v);
    state.normalize();
    return {std::move(state), eig.values[0]};
}

double energy_expectation(const PolyParams& params, const fock::FockState& s, std::size_t dim) {
    const auto h = hamiltonian(params, dim);
    const auto psi = s.resized(dim);
    fock::Complex e = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) e += std::conj(psi[i]) * h(i, j) * psi[j];
    }
    return e.real() / psi.norm_squared();
}

osc::Covariance2 pol_covariance(const fock::FockState& s, double omega) {
    if (!(omega > 0.0)) throw DomainError("pol_covariance: omega must be positive");
    fock::Complex a1 = 0.0;
    fock::Complex a2 = 0.0;
    double number = 0.0;
    const std::size_t n = s.dim();
    for (std::size_t k = 0; k < n; ++k) {
        number += static_cast<double>(k) * std::norm(s[k]);
        if (k + 1 < n) a1 += std::conj(s[k]) * s[k + 1] * std::sqrt(k + 1.0);
        if (k + 2 < n) a2 += std::conj(s[k]) * s[k + 2] * std::sqrt((k + 1.0) * (k + 2.0));
    }
    osc::Covariance2 c;
    c.dx = std::sqrt(2.0 / omega) * a1.real();
    c.dp = std::sqrt(2.0 * omega) * a1.imag();
    c.sxx = (2.0 * a2.real() + 2.0 * number + 1.0) / (2.0 * omega) - c.dx * c.dx;
    c.spp = 0.5 * omega * (2.0 * number + 1.0 - 2.0 * a2.real()) - c.dp * c.dp;
    c.sxp = a2.imag() - c.dx * c.dp;
    return c;
}

std::vector<double> Range::points() const {
    if (count == 0) throw std::invalid_argument("Range: count must be >= 1");
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = count == 1 ? start
                            : start + (stop - start) * static_cast<double>(i) /
                                          static_cast<double>(count - 1);
    }
    return out;
}

std::vector<FidelityCell> fidelity_map(const Range& eps4, const Range& eps6, double omega,
                                       std::size_t dim) {
    const auto e4 = eps4.points();
    const auto e6 = eps6.points();
    return parallel_map(e4.size() * e6.size(), [&](std::size_t idx) {
        FidelityCell cell{e4[idx / e6.size()], e6[idx % e6.size()], 0.0, {}};
        try {
            const PolyParams params{omega, cell.eps4, cell.eps6};
            cell.fidelity = fock::fidelity(perturbative_ground(params).state,
                                           numeric_ground(params, dim).state);
        } catch (const std::exception& e) {
            cell.error = e.what();
        }
        return cell;
    });
}

double appendix_wigner(const GammaCoeffs& g, double x, double p) {
    const std::complex<double> z(x / std::numbers::sqrt2, p / std::numbers::sqrt2);
    const double t = 4.0 * std::norm(z);
    const std::complex<double> z2 = z * z;
    const double re2 = z2.real();
    const double re4 = (z2 * z2).real();
    const double re6 = (z2 * z2 * z2).real();
    auto lag = [t](int n, int k) { return specfun::laguerre_assoc(n, k, t); };
    const double diag = g.gamma0 * g.gamma0 + g.gamma2 * g.gamma2 * lag(2, 0) +
                        g.gamma4 * g.gamma4 * lag(4, 0) + g.gamma6 * g.gamma6 * lag(6, 0);
    const double cross =
        4.0 * std::sqrt(2.0) * g.gamma0 * g.gamma2 * re2 * lag(0, 2) +
        16.0 / std::sqrt(6.0) * g.gamma0 * g.gamma4 * re4 * lag(0, 4) +
        32.0 / (3.0 * std::sqrt(5.0)) * g.gamma0 * g.gamma6 * re6 * lag(0, 6) +
        4.0 / std::sqrt(3.0) * g.gamma2 * g.gamma4 * re2 * lag(2, 2) +
        16.0 / (3.0 * std::sqrt(10.0)) * g.gamma2 * g.gamma6 * re4 * lag(2, 4) +
        8.0 / std::sqrt(30.0) * g.gamma4 * g.gamma6 * re2 * lag(4, 2);
    return std::exp(-0.5 * t) * (diag + cross) / std::numbers::pi;
}

}  // namespace anharmonic::perturb
