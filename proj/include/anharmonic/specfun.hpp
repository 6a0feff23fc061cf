#pragma once

// Special functions used by the oscillator models and phase-space measures.
// All functions are pure and throw DomainError outside their domain.

namespace anharmonic::specfun {

/// ln Gamma(z) for z > 0.
double log_gamma(double z);

/// Digamma psi(z) = d/dz ln Gamma(z) for z > 0.
double digamma(double z);

/// Trigamma psi'(z) = d^2/dz^2 ln Gamma(z) for z > 0.
double trigamma(double z);

/// Associated Laguerre polynomial L_n^{(k)}(x) by the three-term recurrence in n.
double laguerre_assoc(int n, int k, double x);

/// Macdonald function of purely imaginary order, K_{i nu}(x), x > 0.
///
/// Evaluated from K_{i nu}(x) = int_0^inf exp(-x cosh t) cos(nu t) dt. For small x
/// the stretch of the integrand where x cosh t is below 1/2 is integrated term by
/// term from the Taylor series of the exponential; the remainder goes to the
/// adaptive 1D engine.
double macdonald_imag_order(double nu, double x);

/// exp(x) * K_{i nu}(x); stays O(1/sqrt(x)) for large x where K itself underflows.
double macdonald_imag_order_scaled(double nu, double x);

/// h(x) = (x + 1/2) ln(x + 1/2) - (x - 1/2) ln(x - 1/2), x >= 1/2, with 0 ln 0 = 0.
/// Von Neumann entropy (nats) of a single-mode Gaussian state with sqrt(det sigma) = x.
double h_entropy(double x);

}  // namespace anharmonic::specfun
