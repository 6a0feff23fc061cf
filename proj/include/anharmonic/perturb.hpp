#pragma once

// H = (p^2 + omega^2 x^2) / 2 + eps4 x^4 + eps6 x^6 in the number basis of the
// frequency-omega oscillator: first-order ground state, exact diagonalisation in a
// truncated basis, and the fidelity between the two.

#include <cstddef>
#include <string>
#include <vector>

#include "anharmonic/fock.hpp"
#include "anharmonic/oscillators.hpp"

namespace anharmonic::perturb {

struct PolyParams {
    double omega = 1.0;
    double eps4 = 0.0;
    double eps6 = 0.0;

    /// Throws DomainError unless omega > 0 and eps4, eps6 >= 0.
    void validate() const;
    /// eps4 / omega^3 <= 0.1 and eps6 / omega^4 <= 0.03, the region where the
    /// first-order state has been checked against diagonalisation.
    bool in_validity_box() const;
};

/// <n| x^4 |n + dn> for dn in {0, 2, 4}, from ladder-operator products.
double x4_element(int n, int dn, double omega);
/// <n| x^6 |n + dn> for dn in {0, 2, 4, 6}.
double x6_element(int n, int dn, double omega);

struct GammaCoeffs {
    double gamma0 = 1.0;
    double gamma2 = 0.0;
    double gamma4 = 0.0;
    double gamma6 = 0.0;
};

/// gamma_k = -gamma0 <k|V|0> / (omega k), gamma0 = 1 / C.
GammaCoeffs perturbative_gammas(const PolyParams& params);

/// C = sqrt(omega^2 (96 omega^6 + 117 eps4^2) + 945 omega eps4 eps6 + 2055 eps6^2) / (4 sqrt(6) omega^4).
double normalization_c(const PolyParams& params);

struct PerturbativeGround {
    fock::FockState state;
    GammaCoeffs gamma;
    bool extrapolated = false;
};

PerturbativeGround perturbative_ground(const PolyParams& params, std::size_t dim = 7);

/// Hamiltonian matrix on the first dim levels, powers built in a padded workspace.
fock::SymMatrix hamiltonian(const PolyParams& params, std::size_t dim);

struct NumericGround {
    fock::FockState state;  // sign fixed by c_0 > 0
    double energy = 0.0;
};

inline constexpr std::size_t kDefaultDiagDim = 61;

NumericGround numeric_ground(const PolyParams& params, std::size_t dim = kDefaultDiagDim);

/// <psi| H |psi> with the same matrix as numeric_ground.
double energy_expectation(const PolyParams& params, const fock::FockState& s, std::size_t dim);

/// Covariance of (x, p) in the frequency-omega basis from <a>, <a^dag a> and <a^2>.
osc::Covariance2 pol_covariance(const fock::FockState& s, double omega);

struct Range {
    double start = 0.0;
    double stop = 0.0;
    std::size_t count = 1;

    /// Evenly spaced points, start and stop included; count == 1 gives start.
    std::vector<double> points() const;
};

struct FidelityCell {
    double eps4 = 0.0;
    double eps6 = 0.0;
    double fidelity = 0.0;
    std::string error;  // empty on success
};

/// Row-major over eps4 (outer) and eps6 (inner).
std::vector<FidelityCell> fidelity_map(const Range& eps4, const Range& eps6, double omega = 1.0,
                                       std::size_t dim = kDefaultDiagDim);

/// Explicit four-level Wigner expansion at z = (x + ip)/sqrt(2), returned in x, p
/// units (W_z / 2):
///   (2/pi) e^{-2|z|^2} [sum_k gamma_k^2 L_k + sum_{j<k} c_jk gamma_j gamma_k Re(z^{k-j}) L_j^{(k-j)}]
/// with every Laguerre argument 4|z|^2.
double appendix_wigner(const GammaCoeffs& g, double x, double p);

}  // namespace anharmonic::perturb
