#pragma once

// Wigner functions, normalised so that the full-plane integral is 1, and the
// negativity volume built on them.

#include <functional>

#include "anharmonic/fock.hpp"
#include "anharmonic/quad.hpp"
#include "anharmonic/wavefunction.hpp"

namespace anharmonic::wigner {

struct WignerField {
    std::function<double(double, double)> density;
    quad::Box box;  // finite box holding essentially all of |W|
    bool even_x = false;
    bool even_p = false;

    double operator()(double x, double p) const { return density(x, p); }
};

/// MHO in q = beta x, p = beta y / alpha:
/// e^{-(q^2+p^2)/tau^2} (cosh 2q + e^{tau^2} cos 2p) / (pi tau^2 (1 + e^{tau^2})).
WignerField mho_wigner(double tau);

/// Morse in q = alpha x, p = y / alpha:
/// 2 e^{-2Nq} (2N+1)^{2N} K_{2ip}((2N+1) e^{-q}) / (pi Gamma(2N)).
WignerField morse_wigner(double n);

/// (2/pi) int_0^inf phi(x-u) phi(x+u) cos(2up) du for a real, normalised phi.
WignerField wavefunction_wigner(const Wavefunction& phi);

/// Displaced-parity evaluation in x, p with z = (x + ip)/sqrt(2):
/// W_z = (2/pi) e^{-2|z|^2} sum_{m,d} w_d (-1)^m sqrt(m!/(m+d)!) L_m^{(d)}(4|z|^2)
///       Re(c_m c*_{m+d} (2z)^d),  w_0 = 1, w_{d>0} = 2, and W(x, p) = W_z / 2.
WignerField fock_wigner(const fock::FockState& s);

struct NegativityOptions {
    quad::Options quad = quad::kDefault2d;
    /// Stop growing the box once a new frame adds less than this to int |W|.
    double frame_tol = 1e-6;
    int max_doublings = 6;
};

struct Negativity {
    double delta = 0.0;
    double nu = 0.0;
    double abs_error = 0.0;
    std::size_t evaluations = 0;
};

/// delta = int |W| - 1, evaluated as 2 int max(-W, 0), which is the same for a
/// normalised W but needs no cancellation against the positive mass.
/// nu = delta / (1 + delta).
Negativity negativity_volume(const WignerField& w, const NegativityOptions& opts = {});

}  // namespace anharmonic::wigner
