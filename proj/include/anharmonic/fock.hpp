#pragma once

// Truncated Fock-space algebra in units hbar = m = 1.
//
// States live in the number basis of an oscillator with frequency omega
// (omega = 1 unless stated). Quadratures: x = (a + a^dag) / sqrt(2 omega),
// p = i sqrt(omega / 2) (a^dag - a).

#include <complex>
#include <cstddef>
#include <vector>

#include "anharmonic/wavefunction.hpp"

namespace anharmonic::fock {

using Complex = std::complex<double>;

class FockState {
public:
    FockState() : coeffs_(1, Complex(1.0, 0.0)) {}
    explicit FockState(std::vector<Complex> coeffs);
    explicit FockState(const std::vector<double>& real_coeffs);

    /// |n> in a space of dimension dim (dim > n).
    static FockState number(std::size_t n, std::size_t dim);

    std::size_t dim() const noexcept { return coeffs_.size(); }
    const Complex& operator[](std::size_t n) const { return coeffs_[n]; }
    const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }

    double norm_squared() const noexcept;
    /// Scales to unit norm. Throws DomainError for the zero vector.
    FockState& normalize();
    /// Zero-padded or cropped copy.
    FockState resized(std::size_t dim) const;
    bool is_real(double tol = 0.0) const noexcept;

private:
    std::vector<Complex> coeffs_;
};

/// Dense real symmetric matrix; set() writes both triangles.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

    std::size_t size() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    void set(std::size_t i, std::size_t j, double v) {
        data_[i * n_ + j] = v;
        data_[j * n_ + i] = v;
    }
    void add_diagonal(std::size_t i, double v) { data_[i * n_ + i] += v; }

    SymMatrix operator*(double s) const;
    SymMatrix operator+(const SymMatrix& other) const;
    /// Leading dim x dim block.
    SymMatrix cropped(std::size_t dim) const;
    double frobenius_norm() const;
    double trace() const;
    const std::vector<double>& data() const noexcept { return data_; }

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

/// Product of two symmetric matrices that commute (powers of one operator), so
/// the result is symmetric.
SymMatrix power_product(const SymMatrix& a, const SymMatrix& b);

/// Quadrature operators and powers, each exact on the returned dimension.
struct QuadratureOperators {
    SymMatrix x;
    SymMatrix x2;
    SymMatrix x4;
    SymMatrix x6;
    SymMatrix p2;
};

/// Powers are formed in a workspace padded by kPowerPadding levels, then cropped.
inline constexpr std::size_t kPowerPadding = 8;

QuadratureOperators ladder_matrices(std::size_t dim, double omega = 1.0);

struct EigenSystem {
    std::vector<double> values;   // ascending
    std::vector<double> vectors;  // column k (contiguous) pairs with values[k]
    std::size_t n = 0;
    std::size_t sweeps = 0;

    std::vector<double> vector(std::size_t k) const {
        return {vectors.begin() + static_cast<std::ptrdiff_t>(k * n),
                vectors.begin() + static_cast<std::ptrdiff_t>((k + 1) * n)};
    }
};

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops below
/// 1e-12 of the matrix norm. Throws NonConvergence after 100 sweeps.
EigenSystem symmetric_eigen(const SymMatrix& m);

/// |<a|b>|^2; the shorter state is zero-padded.
double fidelity(const FockState& a, const FockState& b);

struct FockExpansion {
    FockState state;         // renormalised
    double tail_mass = 0.0;  // 1 - sum |c_n|^2 before renormalisation
};

inline constexpr double kDefaultTailBound = 1e-8;

/// c_n = int psi_n(x) phi(x) dx over the unit-frequency Hermite functions.
/// Throws TruncationError when the discarded tail mass exceeds tail_bound.
FockExpansion fock_expand(const Wavefunction& phi, std::size_t dim,
                          double tail_bound = kDefaultTailBound);

/// Unit-frequency Hermite functions psi_0..psi_{count-1} at x.
std::vector<double> hermite_functions(double x, std::size_t count);

/// sum_n c_n psi_n(x), real part (states are real in practice).
double synthesize(const FockState& s, double x);

/// Two-mode amplitudes M[k][m] of |k>|m>, row-major, dim x dim.
class TwoModeAmplitudes {
public:
    explicit TwoModeAmplitudes(std::size_t dim) : dim_(dim), m_(dim * dim) {}

    std::size_t dim() const noexcept { return dim_; }
    const Complex& operator()(std::size_t k, std::size_t m) const { return m_[k * dim_ + m]; }
    Complex& operator()(std::size_t k, std::size_t m) { return m_[k * dim_ + m]; }
    double norm_squared() const noexcept;
    TwoModeAmplitudes& operator*=(Complex s);

private:
    std::size_t dim_;
    std::vector<Complex> m_;
};

/// B = exp[(pi/4)(a^dag b - a b^dag)] applied to s (x) |0>:
/// |n>|0> -> sum_k sqrt(C(n,k)) 2^{-n/2} (-1)^{n-k} |k>|n-k>.
TwoModeAmplitudes beam_splitter_50_50(const FockState& s);

/// Entanglement entropy in nats, -sum s_i^2 ln s_i^2 over the Schmidt coefficients.
double entanglement_entropy(const TwoModeAmplitudes& m);

}  // namespace anharmonic::fock
