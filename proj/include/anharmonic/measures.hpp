#pragma once

// Figures of merit for a ground state: entropic nonlinearity eta_NG, Wigner
// negativity nu, entanglement potential E and the squeezing ratios. Entropies in nats.

#include <string>
#include <utility>
#include <variant>

#include "anharmonic/fock.hpp"
#include "anharmonic/oscillators.hpp"
#include "anharmonic/perturb.hpp"
#include "anharmonic/wigner.hpp"

namespace anharmonic::measures {

/// h(sqrt(det sigma)); sqrt(det) within 1e-10 below 1/2 is clamped to 1/2.
double nonlinearity_eta(const osc::Covariance2& cov);

/// (2 sxx, 2 spp): variances relative to the vacuum value 1/2.
std::pair<double, double> squeezing_ratios(const osc::Covariance2& cov);

/// Entanglement entropy of the 50:50 beam-splitter output with vacuum in the second port.
double entanglement_potential(const fock::FockState& s);

using ModelParams =
    std::variant<osc::MhoParams, osc::MorseParams, osc::PtParams, perturb::PolyParams>;

struct MeasureOptions {
    std::size_t dim_fock = 60;      // basis size for E
    std::size_t dim_diag = perturb::kDefaultDiagDim;
    double tail_bound = fock::kDefaultTailBound;
    wigner::NegativityOptions negativity{};
};

struct MeasureRecord {
    std::string model;
    double eta_ng = 0.0;
    double nu = 0.0;
    double ent_potential = 0.0;
    double r_x = 1.0;
    double r_p = 1.0;
    double energy = 0.0;
    double effective = 0.0;   // tau, N or s; 0 for poly
    double fidelity = -1.0;   // poly only: perturbative vs diagonalised ground state
    bool extrapolated = false;
    /// Set when E could not be computed (ent_potential is then NaN), e.g. a Morse
    /// state too wide for the dim_fock basis.
    std::string note;
};

std::string model_name(const ModelParams& m);

/// Ground-state Wigner function in the physical variables (x, p) of the model.
wigner::WignerField physical_wigner(const ModelParams& model);

/// Throws the underlying module error (BoundStateError, DomainError,
/// NonConvergence, ...) with the model name prefixed to the message. A
/// TruncationError from the Fock expansion only blanks E and fills note.
MeasureRecord measure_model(const ModelParams& model, const MeasureOptions& opts = {});

}  // namespace anharmonic::measures
