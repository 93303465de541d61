// models.hpp - vectorized Lindblad generators for the three engine variants

#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "masertur/params.hpp"

namespace masertur {

using Complex = std::complex<double>;

// One dissipative term rate * (phase * A rho B^dag - 1/2 {B^dag A, rho}).
// Cross terms (A != B) carry the noise-induced coherence of the four-level
// engine. `tilt` dresses only the sandwich with exp(i * tilt * chi): -1 for
// counted emission into the cold bath, +1 for counted absorption, 0 otherwise.
struct JumpTerm {
    Eigen::MatrixXcd a;
    Eigen::MatrixXcd b;
    double rate = 0.0;
    int tilt = 0;
    int count_weight = 0; // net photons added to the cold-bath counter
};

// A model spelled out as Hamiltonian + jump terms + the retained component
// basis. The retained components are closed under the dynamics; the dropped
// coherences decay independently.
struct LindbladModel {
    int levels = 0;
    Eigen::MatrixXcd hamiltonian;
    std::vector<JumpTerm> jumps;
    std::vector<std::pair<int, int>> basis; // (row, col) index pairs
    std::vector<std::string> labels;        // component names, e.g. "rho_10"
};

LindbladModel lindblad_model(ModelKind kind, const EngineParams& params);

// Counting-field-dressed generator on the retained component vector.
struct TiltedLiouvillian {
    ModelKind kind;
    double chi = 0.0;
    Eigen::MatrixXcd entries;
    std::vector<std::string> basis;

    int dim() const { return static_cast<int>(entries.rows()); }
};

// Generator matrix of `model` on its retained basis. Throws if a retained
// component couples to a dropped one (never happens for the built-in kinds).
// The complex-chi overload serves the fluctuation-theorem diagnostic
// xi(chi) = xi(-chi + iA).
Eigen::MatrixXcd superoperator_matrix(const LindbladModel& model, Complex chi);
inline Eigen::MatrixXcd superoperator_matrix(const LindbladModel& model, double chi) {
    return superoperator_matrix(model, Complex(chi, 0.0));
}

TiltedLiouvillian build_tilted_liouvillian(ModelKind kind, const EngineParams& params,
                                           double chi);

// Density-matrix components in the model basis order. `tail` holds the
// sub-ulp refinement of a solved steady state: the weak-drive population
// imbalance that carries the current lives below the rounding of
// `components`, and consumers that difference populations need it.
struct DensityVector {
    ModelKind kind;
    Eigen::VectorXcd components;
    Eigen::VectorXcd tail; // empty or componentwise correction
    std::vector<std::string> labels;

    int population_count() const {
        return kind == ModelKind::FourLevelNIC ? 4 : 3;
    }
    double trace() const {
        double t = 0.0;
        for (int i = 0; i < population_count(); ++i) t += components[i].real();
        return t;
    }
    // Positivity and hermiticity sanity checks; returns a description of the
    // first violated invariant, empty if all hold.
    std::string check_physical(double tol = 1e-10) const;
};

// Unique null vector of the untilted generator, trace-normalized.
// Throws DegenerateKernel if the kernel dimension exceeds one.
DensityVector steady_state(ModelKind kind, const EngineParams& params);

// Net photon emission rate into the cold bath read off the cold dissipator.
double cold_current_from_state(ModelKind kind, const EngineParams& params,
                               const DensityVector& state);

// Relaxation rate: smallest |Re| over the nonzero spectrum of L(0).
double spectral_gap(ModelKind kind, const EngineParams& params);

} // namespace masertur
