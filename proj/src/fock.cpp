#include "anharmonic/fock.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "anharmonic/errors.hpp"
#include "anharmonic/specfun.hpp"

namespace anharmonic::fock {

FockState::FockState(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("FockState: dimension must be >= 1");
}

FockState::FockState(const std::vector<double>& real_coeffs)
    : FockState(std::vector<Complex>(real_coeffs.begin(), real_coeffs.end())) {}

FockState FockState::number(std::size_t n, std::size_t dim) {
    if (dim <= n) throw std::invalid_argument("FockState::number: dim must exceed n");
    std::vector<Complex> c(dim);
    c[n] = 1.0;
    return FockState(std::move(c));
}

double FockState::norm_squared() const noexcept {
    double s = 0.0;
    for (const auto& c : coeffs_) s += std::norm(c);
    return s;
}

FockState& FockState::normalize() {
    const double n2 = norm_squared();
    if (!(n2 > 0.0)) throw DomainError("FockState::normalize: zero vector");
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& c : coeffs_) c *= inv;
    return *this;
}

FockState FockState::resized(std::size_t dim) const {
    std::vector<Complex> c(coeffs_);
    c.resize(dim);
    return FockState(std::move(c));
}

bool FockState::is_real(double tol) const noexcept {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [tol](const Complex& c) { return std::abs(c.imag()) <= tol; });
}

SymMatrix SymMatrix::operator*(double s) const {
    SymMatrix out(*this);
    for (auto& v : out.data_) v *= s;
    return out;
}

SymMatrix SymMatrix::operator+(const SymMatrix& other) const {
    if (other.n_ != n_) throw std::invalid_argument("SymMatrix: size mismatch");
    SymMatrix out(*this);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += other.data_[i];
    return out;
}

SymMatrix SymMatrix::cropped(std::size_t dim) const {
    if (dim > n_) throw std::invalid_argument("SymMatrix::cropped: dim exceeds size");
    SymMatrix out(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) out.data_[i * dim + j] = data_[i * n_ + j];
    }
    return out;
}

double SymMatrix::frobenius_norm() const {
    return std::sqrt(std::inner_product(data_.begin(), data_.end(), data_.begin(), 0.0));
}

double SymMatrix::trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < n_; ++i) t += data_[i * n_ + i];
    return t;
}

SymMatrix power_product(const SymMatrix& a, const SymMatrix& b) {
    const std::size_t n = a.size();
    if (b.size() != n) throw std::invalid_argument("power_product: size mismatch");
    SymMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += a(i, k) * b(k, j);
            out.set(i, j, s);
        }
    }
    return out;
}

QuadratureOperators ladder_matrices(std::size_t dim, double omega) {
    if (dim < 2) throw std::invalid_argument("ladder_matrices: dim must be >= 2");
    if (!(omega > 0.0)) throw DomainError("ladder_matrices: omega must be positive");
    const std::size_t work = dim + kPowerPadding;
    SymMatrix x(work);
    for (std::size_t n = 0; n + 1 < work; ++n) {
        x.set(n, n + 1, std::sqrt((n + 1.0) / (2.0 * omega)));
    }
    const SymMatrix x2 = power_product(x, x);
    const SymMatrix x4 = power_product(x2, x2);
    const SymMatrix x6 = power_product(x4, x2);

    SymMatrix p2(dim);
    for (std::size_t n = 0; n < dim; ++n) {
        p2.set(n, n, 0.5 * omega * (2.0 * n + 1.0));
        if (n + 2 < dim) p2.set(n, n + 2, -0.5 * omega * std::sqrt((n + 1.0) * (n + 2.0)));
    }
    return {x.cropped(dim), x2.cropped(dim), x4.cropped(dim), x6.cropped(dim), p2};
}

EigenSystem symmetric_eigen(const SymMatrix& m) {
    const std::size_t n = m.size();
    std::vector<double> a(m.data());
    std::vector<double> v(n * n, 0.0);  // row-major, column k is eigenvector k
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
    auto at = [&a, n](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };

    const double threshold = 1e-12 * m.frobenius_norm();
    std::size_t sweep = 0;
    for (;; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) off += 2.0 * at(i, j) * at(i, j);
        }
        if (std::sqrt(off) <= threshold) break;
        if (sweep == 100) {
            throw NonConvergence("symmetric_eigen: no convergence after 100 sweeps", std::sqrt(off),
                                 threshold);
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = at(p, q);
                if (apq == 0.0) continue;
                const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = at(k, p);
                    const double akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = at(p, k);
                    const double aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
                at(p, q) = 0.0;
                at(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v[k * n + p];
                    const double vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t l, std::size_t r) { return at(l, l) < at(r, r); });
    EigenSystem out;
    out.n = n;
    out.sweeps = sweep;
    out.values.resize(n);
    out.vectors.resize(n * n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = at(order[k], order[k]);
        for (std::size_t i = 0; i < n; ++i) out.vectors[k * n + i] = v[i * n + order[k]];
    }
    return out;
}

double fidelity(const FockState& a, const FockState& b) {
    const std::size_t n = std::min(a.dim(), b.dim());
    Complex overlap = 0.0;
    for (std::size_t i = 0; i < n; ++i) overlap += std::conj(a[i]) * b[i];
    return std::norm(overlap);
}

std::vector<double> hermite_functions(double x, std::size_t count) {
    std::vector<double> psi(count, 0.0);
    if (count == 0) return psi;
    psi[0] = std::exp(-0.5 * x * x) / std::sqrt(std::sqrt(std::numbers::pi));
    if (count > 1) psi[1] = std::numbers::sqrt2 * x * psi[0];
    for (std::size_t n = 1; n + 1 < count; ++n) {
        const double np1 = n + 1.0;
        psi[n + 1] = std::sqrt(2.0 / np1) * x * psi[n] - std::sqrt(n / np1) * psi[n - 1];
    }
    return psi;
}

double synthesize(const FockState& s, double x) {
    const auto psi = hermite_functions(x, s.dim());
    double sum = 0.0;
    for (std::size_t n = 0; n < s.dim(); ++n) sum += s[n].real() * psi[n];
    return sum;
}

FockExpansion fock_expand(const Wavefunction& phi, std::size_t dim, double tail_bound) {
    if (dim == 0) throw std::invalid_argument("fock_expand: dim must be >= 1");
    // Beyond the classical turning point of psi_{dim-1} the basis functions are negligible.
    const double reach = std::sqrt(2.0 * dim + 1.0) + 12.0;
    const quad::Bounds window{std::max(phi.support.lower, -reach),
                              std::min(phi.support.upper, reach)};
    std::vector<Complex> c(dim, 0.0);
    if (window.lower < window.upper) {
        const quad::Options opts{1e-13, 1e-11, 2'000'000};
        for (std::size_t n = 0; n < dim; ++n) {
            if (phi.even && n % 2 == 1) continue;
            auto integrand = [&phi, n](double x) {
                return hermite_functions(x, n + 1)[n] * phi(x);
            };
            c[n] = quad::integrate_1d(integrand, window, opts).value;
        }
    }
    FockState state(std::move(c));
    const double captured = state.norm_squared();
    const double tail = 1.0 - captured;
    if (tail > tail_bound) {
        char msg[128];
        std::snprintf(msg, sizeof msg, "fock_expand: tail mass %.3g at dim %zu exceeds %.3g", tail,
                      dim, tail_bound);
        throw TruncationError(msg, tail);
    }
    state.normalize();
    return {std::move(state), tail};
}

double TwoModeAmplitudes::norm_squared() const noexcept {
    double s = 0.0;
    for (const auto& c : m_) s += std::norm(c);
    return s;
}

TwoModeAmplitudes& TwoModeAmplitudes::operator*=(Complex s) {
    for (auto& c : m_) c *= s;
    return *this;
}

TwoModeAmplitudes beam_splitter_50_50(const FockState& s) {
    const std::size_t dim = s.dim();
    TwoModeAmplitudes out(dim);
    std::vector<double> weight;  // C(n, k) / 2^n
    for (std::size_t n = 0; n < dim; ++n) {
        if (s[n] == Complex(0.0)) continue;
        weight.assign(n + 1, 0.0);
        if (n <= 1000) {
            weight[0] = std::ldexp(1.0, -static_cast<int>(n));
            for (std::size_t k = 0; k < n; ++k) weight[k + 1] = weight[k] * (n - k) / (k + 1.0);
        } else {
            const double log_fact_n = specfun::log_gamma(n + 1.0);
            for (std::size_t k = 0; k <= n; ++k) {
                weight[k] = std::exp(log_fact_n - specfun::log_gamma(k + 1.0) -
                                     specfun::log_gamma(n - k + 1.0) - n * std::numbers::ln2);
            }
        }
        for (std::size_t k = 0; k <= n; ++k) {
            const double sign = ((n - k) % 2 == 0) ? 1.0 : -1.0;
            out(k, n - k) += s[n] * (sign * std::sqrt(weight[k]));
        }
    }
    return out;
}

namespace {

double entropy_of_spectrum(const std::vector<double>& values, double trace) {
    double h = 0.0;
    for (double lambda : values) {
        const double p = lambda / trace;
        if (p > 0.0) h -= p * std::log(p);
    }
    return h;
}

}  // namespace

double entanglement_entropy(const TwoModeAmplitudes& m) {
    const std::size_t n = m.dim();
    bool real = true;
    for (std::size_t k = 0; k < n && real; ++k) {
        for (std::size_t j = 0; j < n; ++j) {
            if (m(k, j).imag() != 0.0) {
                real = false;
                break;
            }
        }
    }
    // Reduced state of the first mode, rho = M M^dag; its spectrum is {s_i^2}.
    if (real) {
        SymMatrix rho(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                double s = 0.0;
                for (std::size_t k = 0; k < n; ++k) s += m(i, k).real() * m(j, k).real();
                rho.set(i, j, s);
            }
        }
        const double trace = rho.trace();
        return entropy_of_spectrum(symmetric_eigen(rho).values, trace);
    }
    // Hermitian rho = A + iB embedded as the real symmetric [[A, -B], [B, A]];
    // every eigenvalue appears twice.
    SymMatrix embed(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            Complex s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += m(i, k) * std::conj(m(j, k));
            embed.set(i, j, s.real());
            embed.set(n + i, n + j, s.real());
            embed.set(i, n + j, s.imag());
            embed.set(j, n + i, -s.imag());
        }
    }
    const double trace = 0.5 * embed.trace();
    return 0.5 * entropy_of_spectrum(symmetric_eigen(embed).values, trace);
}

}  // namespace anharmonic::fock
