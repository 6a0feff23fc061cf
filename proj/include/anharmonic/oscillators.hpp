#pragma once

// Exactly solvable anharmonic oscillators (hbar = m = 1): modified harmonic
// oscillator, Morse and Poschl-Teller. Ground states, energies, covariance
// matrices and the single effective parameter each model collapses onto.

#include "anharmonic/wavefunction.hpp"

namespace anharmonic::osc {

/// V(x) = alpha^2 x^2 / 2 - alpha beta x tanh(beta x).
struct MhoParams {
    double alpha = 1.0;
    double beta = 0.0;

    /// tau = sqrt(beta^2 / alpha). Throws DomainError for alpha <= 0 or beta < 0.
    double tau() const;
};

/// V(x) = D (e^{-2 alpha x} - 2 e^{-alpha x}).
struct MorseParams {
    double d = 1.0;
    double alpha = 1.0;

    /// N = sqrt(2D)/alpha - 1/2. Throws BoundStateError unless alpha < 2 sqrt(2D).
    double n() const;
};

/// V(x) = -A sech^2(alpha x), A = alpha^2 s (s + 1) / 2.
struct PtParams {
    double a = 1.0;
    double alpha = 1.0;

    /// Throws BoundStateError when s <= 0.
    double s() const;
};

/// Symmetrised second moments and first moments of (x, p).
struct Covariance2 {
    double sxx = 0.5;
    double sxp = 0.0;
    double spp = 0.5;
    double dx = 0.0;
    double dp = 0.0;

    double det() const noexcept { return sxx * spp - sxp * sxp; }
};

struct GroundState {
    Wavefunction phi;
    double energy = 0.0;
};

GroundState mho_ground(const MhoParams& params);
Covariance2 mho_covariance(const MhoParams& params);

GroundState morse_ground(const MorseParams& params);
Covariance2 morse_covariance(const MorseParams& params);
/// det of the Morse covariance, N psi'(2N) / 2.
double morse_determinant(double n);

GroundState pt_ground(const PtParams& params);
/// Moments by quadrature of the unit-range (alpha = 1) ground state, cached per s,
/// then rescaled: sxx / alpha^2, spp * alpha^2.
Covariance2 pt_covariance(const PtParams& params);

/// Normalised ground state of -A sech^2(u) for a given s, in u = alpha x.
Wavefunction pt_unit_ground(double s);

/// Morse support window [x-, x+]: (N + 1/2) e^{-alpha x-} = 745 and the mass
/// beyond x+ is below 1e-12.
quad::Bounds morse_support(double n, double alpha);

}  // namespace anharmonic::osc
