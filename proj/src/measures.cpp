#include "anharmonic/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <tuple>

#include "anharmonic/errors.hpp"
#include "anharmonic/specfun.hpp"

namespace anharmonic::measures {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

struct Evaluator {
    const MeasureOptions& opts;

    void finish_gaussian_part(MeasureRecord& r, const osc::Covariance2& cov) const {
        r.eta_ng = nonlinearity_eta(cov);
        std::tie(r.r_x, r.r_p) = squeezing_ratios(cov);
    }

    void finish_entanglement(MeasureRecord& r, const Wavefunction& phi) const {
        try {
            r.ent_potential =
                entanglement_potential(fock::fock_expand(phi, opts.dim_fock, opts.tail_bound).state);
        } catch (const TruncationError& e) {
            r.ent_potential = std::numeric_limits<double>::quiet_NaN();
            r.note = e.what();
        }
    }

    MeasureRecord operator()(const osc::MhoParams& p) const {
        MeasureRecord r;
        r.effective = p.tau();
        finish_gaussian_part(r, osc::mho_covariance(p));
        const auto ground = osc::mho_ground(p);
        r.energy = ground.energy;
        if (r.effective > 0.0) {
            r.nu = wigner::negativity_volume(wigner::mho_wigner(r.effective), opts.negativity).nu;
        }
        finish_entanglement(r, ground.phi);
        return r;
    }

    MeasureRecord operator()(const osc::MorseParams& p) const {
        MeasureRecord r;
        r.effective = p.n();
        finish_gaussian_part(r, osc::morse_covariance(p));
        const auto ground = osc::morse_ground(p);
        r.energy = ground.energy;
        r.nu = wigner::negativity_volume(wigner::morse_wigner(r.effective), opts.negativity).nu;
        finish_entanglement(r, ground.phi);
        return r;
    }

    MeasureRecord operator()(const osc::PtParams& p) const {
        MeasureRecord r;
        r.effective = p.s();
        finish_gaussian_part(r, osc::pt_covariance(p));
        const auto ground = osc::pt_ground(p);
        r.energy = ground.energy;
        // nu is invariant under x -> alpha x, so the unit-range state serves every alpha.
        r.nu = wigner::negativity_volume(
                   wigner::wavefunction_wigner(osc::pt_unit_ground(r.effective)), opts.negativity)
                   .nu;
        finish_entanglement(r, ground.phi);
        return r;
    }

    MeasureRecord operator()(const perturb::PolyParams& p) const {
        p.validate();
        MeasureRecord r;
        const auto pert = perturb::perturbative_ground(p);
        const auto exact = perturb::numeric_ground(p, opts.dim_diag);
        r.extrapolated = pert.extrapolated;
        r.fidelity = fock::fidelity(pert.state, exact.state);
        r.energy = exact.energy;
        finish_gaussian_part(r, perturb::pol_covariance(pert.state, p.omega));
        // The Wigner function in the omega basis is a symplectic rescaling of the
        // physical one, so nu needs no change of basis.
        r.nu = wigner::negativity_volume(wigner::fock_wigner(pert.state), opts.negativity).nu;
        if (p.omega == 1.0) {
            r.ent_potential = entanglement_potential(pert.state);
        } else {
            // E is basis dependent: re-expand in the unit-frequency basis.
            auto state = std::make_shared<fock::FockState>(pert.state);
            const double scale = std::sqrt(p.omega);
            const double amp = std::sqrt(scale);
            const double reach = (std::sqrt(2.0 * state->dim() + 1.0) + 12.0) / scale;
            Wavefunction phi{[state, scale, amp](double x) {
                                 return amp * fock::synthesize(*state, scale * x);
                             },
                             {-reach, reach},
                             true};
            finish_entanglement(r, phi);
        }
        return r;
    }
};

template <class E>
[[noreturn]] void rethrow_with(const std::string& model, const E& e) {
    throw E(model + ": " + e.what());
}

}  // namespace

double nonlinearity_eta(const osc::Covariance2& cov) {
    const double det = cov.det();
    if (!(det >= 0.25 - 1e-10)) {
        throw DomainError("nonlinearity_eta: covariance violates det >= 1/4 (det = " +
                          std::to_string(det) + ")");
    }
    return specfun::h_entropy(std::max(0.5, std::sqrt(det)));
}

std::pair<double, double> squeezing_ratios(const osc::Covariance2& cov) {
    return {2.0 * cov.sxx, 2.0 * cov.spp};
}

double entanglement_potential(const fock::FockState& s) {
    return fock::entanglement_entropy(fock::beam_splitter_50_50(s));
}

std::string model_name(const ModelParams& m) {
    return std::visit(Overloaded{[](const osc::MhoParams&) { return std::string("mho"); },
                                 [](const osc::MorseParams&) { return std::string("morse"); },
                                 [](const osc::PtParams&) { return std::string("pt"); },
                                 [](const perturb::PolyParams&) { return std::string("poly"); }},
                      m);
}

wigner::WignerField physical_wigner(const ModelParams& model) {
    return std::visit(
        Overloaded{
            [](const osc::MhoParams& p) {
                const double tau = p.tau();
                const double alpha = p.alpha;
                if (tau == 0.0) {
                    auto density = [alpha](double x, double y) {
                        return std::exp(-alpha * x * x - y * y / alpha) / std::numbers::pi;
                    };
                    const double rx = 8.0 / std::sqrt(alpha);
                    const double ry = 8.0 * std::sqrt(alpha);
                    return wigner::WignerField{density, {{-rx, rx}, {-ry, ry}}, true, true};
                }
                // q = beta x, p = beta y / alpha; dq dp = tau^2 dx dy.
                const double beta = p.beta;
                auto unit = wigner::mho_wigner(tau);
                auto density = [unit, alpha, beta, tau](double x, double y) {
                    return tau * tau * unit(beta * x, beta * y / alpha);
                };
                return wigner::WignerField{density,
                                           {{unit.box.x.lower / beta, unit.box.x.upper / beta},
                                            {unit.box.p.lower * alpha / beta,
                                             unit.box.p.upper * alpha / beta}},
                                           true,
                                           true};
            },
            [](const osc::MorseParams& p) {
                // q = alpha x, p = y / alpha; unit Jacobian.
                const double alpha = p.alpha;
                auto unit = wigner::morse_wigner(p.n());
                auto density = [unit, alpha](double x, double y) { return unit(alpha * x, y / alpha); };
                return wigner::WignerField{density,
                                           {{unit.box.x.lower / alpha, unit.box.x.upper / alpha},
                                            {unit.box.p.lower * alpha, unit.box.p.upper * alpha}},
                                           false,
                                           true};
            },
            [](const osc::PtParams& p) { return wigner::wavefunction_wigner(osc::pt_ground(p).phi); },
            [](const perturb::PolyParams& p) {
                // The omega-basis state is the unit-basis state of x' = sqrt(omega) x.
                const double root = std::sqrt(p.omega);
                auto unit = wigner::fock_wigner(perturb::perturbative_ground(p).state);
                auto density = [unit, root](double x, double y) { return unit(root * x, y / root); };
                return wigner::WignerField{density,
                                           {{unit.box.x.lower / root, unit.box.x.upper / root},
                                            {unit.box.p.lower * root, unit.box.p.upper * root}},
                                           unit.even_x,
                                           unit.even_p};
            }},
        model);
}

MeasureRecord measure_model(const ModelParams& model, const MeasureOptions& opts) {
    const std::string name = model_name(model);
    try {
        MeasureRecord r = std::visit(Evaluator{opts}, model);
        r.model = name;
        return r;
    } catch (const BoundStateError& e) {
        rethrow_with(name, e);
    } catch (const DomainError& e) {
        rethrow_with(name, e);
    } catch (const NonConvergence& e) {
        throw NonConvergence(name + ": " + e.what(), e.best_value(), e.error_estimate());
    } catch (const TruncationError& e) {
        throw TruncationError(name + ": " + e.what(), e.tail_mass());
    } catch (const std::invalid_argument& e) {
        rethrow_with(name, e);
    }
}

}  // namespace anharmonic::measures
