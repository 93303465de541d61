// fcs.hpp - photon-current cumulants from the counting-field-tilted generator

#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <string>

#include "masertur/models.hpp"

namespace masertur {

enum class CumulantMethod { EigFD, CharPoly, Trajectory };

const char* to_string(CumulantMethod m);
CumulantMethod cumulant_method_from_string(const std::string& s);

// Long-time mean and scaled variance of the net photon current into the
// cold bath, with method diagnostics (step sizes, imaginary residuals,
// Monte Carlo standard errors).
struct Cumulants {
    double current = 0.0;
    double variance = 0.0;
    CumulantMethod method = CumulantMethod::CharPoly;
    std::map<std::string, double> diagnostics;
};

// Coefficients of det(L(chi) - xi I) = sum_n c_n xi^n around xi = 0.
// Primes are counting-field derivatives: c' = i d_chi c|_0, c'' = -d^2_chi c|_0.
struct CharPolyCoefficients {
    double c0p = 0.0;  // c_0'
    double c0pp = 0.0; // c_0''
    double c1 = 0.0;
    double c1p = 0.0;  // c_1'
    double c2 = 0.0;
};

// Eigenvalue of L(chi) with the largest real part (the scaled cumulant
// generating function branch through xi(0) = 0).
std::complex<double> dominant_eigenvalue(const TiltedLiouvillian& L);

// Cumulants from central differences of the dominant eigenvalue, one
// Richardson halving. step must lie in (0, 0.1].
Cumulants cumulants_eig_fd(ModelKind kind, const EngineParams& params,
                           double step = 1e-3);

// Charpoly coefficients by Faddeev-LeVerrier at chi in {0, +-step, +-step/2},
// derivatives by Richardson-extrapolated central differences.
CharPolyCoefficients charpoly_coeffs_numeric(
    const std::function<TiltedLiouvillian(double)>& L_at, double step = 1e-3);

// Cumulants through I = -c0'/c1 and var = -(c0'' + 2 I (c1' + c2 I)) / c1.
Cumulants cumulants_charpoly(ModelKind kind, const EngineParams& params,
                             double step = 1e-3);

// The closed-form Model I current (rational function of the parameters).
double current_model1_closed_form(const EngineParams& params);

// Quantum-jump Monte Carlo oracle counting net cold-bath emissions.
// horizon <= 0 selects 100x the inverse spectral gap. Deterministic in seed,
// independent of any parallel scheduling.
Cumulants trajectory_cumulants(ModelKind kind, const EngineParams& params,
                               double horizon, int n_traj, std::uint64_t seed);

// Dispatch on method with per-method defaults.
Cumulants cumulants(ModelKind kind, const EngineParams& params,
                    CumulantMethod method = CumulantMethod::CharPoly,
                    double step = 1e-3);

} // namespace masertur
