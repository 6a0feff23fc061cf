#include <cmath>
#include <numbers>
#include <random>

#include "anharmonic/errors.hpp"
#include "anharmonic/fock.hpp"
#include "anharmonic/oscillators.hpp"
#include "anharmonic/perturb.hpp"
#include "doctest.h"

using namespace anharmonic;
using namespace anharmonic::fock;

namespace {

double max_offdiag_asymmetry(const SymMatrix& m) {
    double worst = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) worst = std::max(worst, std::abs(m(i, j) - m(j, i)));
    return worst;
}

}  // namespace

TEST_SUITE("fock") {

TEST_CASE("ladder matrices") {
    const auto two = ladder_matrices(2, 1.0);
    CHECK(std::abs(two.x(0, 1) - 1.0 / std::sqrt(2.0)) < 1e-15);

    for (double w : {1.0, 0.7, 2.3}) {
        const auto ops = ladder_matrices(12, w);
        CHECK(std::abs(ops.x4(0, 0) - 3.0 / (4.0 * w * w)) < 1e-13);
        CHECK(std::abs(ops.x6(0, 0) - 15.0 / (8.0 * w * w * w)) < 1e-13);
        for (std::size_t n = 0; n + 1 < 12; ++n)
            CHECK(std::abs(ops.x(n, n + 1) - std::sqrt((n + 1.0) / (2.0 * w))) < 1e-15);
        // padding: the last rows of x^4 are exact, e.g. the diagonal (6n^2 + 6n + 3) / (4 w^2)
        const double n = 11.0;
        CHECK(std::abs(ops.x4(11, 11) - (6 * n * n + 6 * n + 3) / (4 * w * w)) < 1e-11);
        CHECK(max_offdiag_asymmetry(ops.x) == 0.0);
        CHECK(max_offdiag_asymmetry(ops.x4) == 0.0);
    }
}

TEST_CASE("x^2 spectrum is nonnegative") {
    const auto ops = ladder_matrices(40, 1.0);
    const auto eig = symmetric_eigen(ops.x2);
    CHECK(eig.values.front() > -1e-12);
}

TEST_CASE("symmetric_eigen small cases") {
    SymMatrix d(3);
    d.set(0, 0, 3);
    d.set(1, 1, 1);
    d.set(2, 2, 2);
    const auto e = symmetric_eigen(d);
    CHECK(e.values == std::vector<double>{1, 2, 3});

    SymMatrix x(2);
    x.set(0, 1, 1.0);
    const auto ex = symmetric_eigen(x);
    CHECK(std::abs(ex.values[0] + 1.0) < 1e-14);
    CHECK(std::abs(ex.values[1] - 1.0) < 1e-14);
    const auto v0 = ex.vector(0);
    CHECK(std::abs(std::abs(v0[0]) - 1.0 / std::sqrt(2.0)) < 1e-14);
    CHECK(std::abs(v0[0] + v0[1]) < 1e-14);
}

TEST_CASE("symmetric_eigen residuals, trace and orthonormality") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const std::size_t n = 30;
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) m.set(i, j, u(rng));
    const auto e = symmetric_eigen(m);
    double tr = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        tr += e.values[k];
        if (k) CHECK(e.values[k] >= e.values[k - 1]);
        const auto v = e.vector(k);
        double res = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double mv = 0.0;
            for (std::size_t j = 0; j < n; ++j) mv += m(i, j) * v[j];
            res += (mv - e.values[k] * v[i]) * (mv - e.values[k] * v[i]);
        }
        CHECK(std::sqrt(res) < 1e-9 * m.frobenius_norm());
        for (std::size_t l = 0; l <= k; ++l) {
            const auto w = e.vector(l);
            double dot = 0.0;
            for (std::size_t i = 0; i < n; ++i) dot += v[i] * w[i];
            CHECK(std::abs(dot - (k == l ? 1.0 : 0.0)) < 1e-10);
        }
    }
    CHECK(std::abs(tr - m.trace()) < 1e-9);
}

TEST_CASE("harmonic spectrum at dim 61") {
    const auto e = symmetric_eigen(perturb::hamiltonian({1.0, 0.0, 0.0}, 61));
    CHECK(std::abs(e.values[0] - 0.5) < 1e-10);
    CHECK(std::abs(e.values[60] - 60.5) < 1e-10);
}

TEST_CASE("fidelity") {
    const FockState s(std::vector<Complex>{{0.6, 0.0}, {0.0, 0.8}});
    CHECK(std::abs(fidelity(s, s) - 1.0) < 1e-15);
    CHECK(fidelity(FockState::number(0, 3), FockState::number(2, 5)) == 0.0);
    const FockState plus(std::vector<double>{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)});
    CHECK(std::abs(fidelity(plus, FockState::number(1, 4)) - 0.5) < 1e-15);
}

TEST_CASE("fock_expand") {
    const double c = std::pow(std::numbers::pi, -0.25);
    const Wavefunction vac{[c](double x) { return c * std::exp(-0.5 * x * x); }, {-12, 12}, true};
    const auto ex = fock_expand(vac, 4);
    CHECK(std::abs(ex.state[0].real() - 1.0) < 1e-12);
    for (std::size_t n = 1; n < 4; ++n) CHECK(std::abs(ex.state[n]) < 1e-12);

    const auto mho = fock_expand(osc::mho_ground({1.0, 1e-4}).phi, 20);
    CHECK(std::abs(mho.state[0]) > 1.0 - 1e-7);

    const double d5 = 0.5 * 5.5 * 5.5;  // N = sqrt(2D) - 1/2 = 5 at alpha = 1
    const auto morse = fock_expand(osc::morse_ground({d5, 1.0}).phi, 60);
    CHECK(morse.tail_mass < 1e-8);
    CHECK(std::abs(morse.state.norm_squared() - 1.0) < 1e-12);

    // a wide squeezed Gaussian does not fit in four levels
    const Wavefunction wide{[](double x) { return std::pow(std::numbers::pi * 25.0, -0.25) *
                                                   std::exp(-x * x / 50.0); },
                            {-60, 60}, true};
    CHECK_THROWS_AS(fock_expand(wide, 4), TruncationError);
}

TEST_CASE("synthesis reproduces model ground states") {
    std::vector<Wavefunction> states{osc::mho_ground({1.0, 1.0}).phi, osc::mho_ground({2.0, 1.0}).phi,
                                     osc::morse_ground({0.5 * 5.5 * 5.5, 1.0}).phi,
                                     osc::morse_ground({1.0, 0.7}).phi, osc::pt_ground({1.0, 1.0}).phi};
    // dim 60 only bounds the tail mass by 1e-8 (pointwise ~1e-4); 150 levels resolve 1e-6
    for (const auto& phi : states) {
        const auto ex = fock_expand(phi, 150);
        const double lo = phi.support.lower;
        const double hi = phi.support.upper;
        double worst = 0.0;
        for (int i = 0; i <= 1000; ++i) {
            const double x = lo + (hi - lo) * i / 1000.0;
            worst = std::max(worst, std::abs(synthesize(ex.state, x) - phi(x)));
        }
        CHECK(worst < 1e-6);
    }
}

TEST_CASE("hermite functions match closed forms") {
    const double x = 0.83;
    const auto psi = hermite_functions(x, 4);
    const double g = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
    CHECK(std::abs(psi[0] - g) < 1e-15);
    CHECK(std::abs(psi[1] - std::sqrt(2.0) * x * g) < 1e-15);
    CHECK(std::abs(psi[2] - (2 * x * x - 1) / std::sqrt(2.0) * g) < 1e-15);
    CHECK(std::abs(psi[3] - (2 * x * x * x - 3 * x) / std::sqrt(3.0) * g) < 1e-15);
}

TEST_CASE("beam splitter") {
    const auto m0 = beam_splitter_50_50(FockState::number(0, 3));
    CHECK(std::abs(m0(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(m0.norm_squared() - 1.0) < 1e-15);

    const auto m1 = beam_splitter_50_50(FockState::number(1, 3));
    CHECK(std::abs(std::norm(m1(1, 0)) - 0.5) < 1e-15);
    CHECK(std::abs(std::norm(m1(0, 1)) - 0.5) < 1e-15);
    CHECK(std::abs(m1(1, 0) + m1(0, 1)) < 1e-15);  // (|1,0> - |0,1>)/sqrt 2

    const auto m2 = beam_splitter_50_50(FockState::number(2, 3));
    CHECK(std::abs(std::norm(m2(2, 0)) - 0.25) < 1e-15);
    CHECK(std::abs(std::norm(m2(1, 1)) - 0.5) < 1e-15);
    CHECK(std::abs(std::norm(m2(0, 2)) - 0.25) < 1e-15);

    // photon number conservation for a state supported on n in {0, 3, 5}
    std::vector<Complex> c(8, 0.0);
    c[0] = 0.5;
    c[3] = Complex(0.5, 0.5);
    c[5] = Complex(0.0, -0.5);
    const auto m = beam_splitter_50_50(FockState(c));
    CHECK(std::abs(m.norm_squared() - 1.0) < 1e-12);
    for (std::size_t k = 0; k < m.dim(); ++k)
        for (std::size_t j = 0; j < m.dim(); ++j) {
            const std::size_t n = k + j;
            if (n != 0 && n != 3 && n != 5) CHECK(m(k, j) == Complex(0.0, 0.0));
        }
}

TEST_CASE("entanglement entropy") {
    TwoModeAmplitudes product(3);
    product(0, 0) = 0.6;
    product(0, 2) = 0.8;
    CHECK(std::abs(entanglement_entropy(product)) < 1e-14);

    TwoModeAmplitudes bell(2);
    bell(0, 0) = 1.0 / std::sqrt(2.0);
    bell(1, 1) = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(entanglement_entropy(bell) - std::log(2.0)) < 1e-14);

    CHECK(std::abs(entanglement_entropy(beam_splitter_50_50(FockState::number(1, 2))) - std::log(2.0)) <
          1e-12);

    // global phase and the alternative (-1)^k sign convention leave the entropy unchanged
    std::vector<Complex> c{0.7, Complex(0.1, 0.3), 0.4, Complex(0.0, 0.2), 0.3};
    FockState s(c);
    s.normalize();
    auto m = beam_splitter_50_50(s);
    const double e = entanglement_entropy(m);
    CHECK(e > 0.1);
    auto phased = m;
    phased *= std::polar(1.0, 1.234);
    CHECK(std::abs(entanglement_entropy(phased) - e) < 1e-12);
    auto flipped = m;
    for (std::size_t k = 0; k < m.dim(); ++k)
        for (std::size_t j = 0; j < m.dim(); ++j)
            if ((k + j) % 2) flipped(k, j) = -flipped(k, j);
    CHECK(std::abs(entanglement_entropy(flipped) - e) < 1e-12);
}

}
