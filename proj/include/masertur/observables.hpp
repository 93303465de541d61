// observables.hpp - entropy production, power statistics, the TUR quantifier
// Q and reliability R, plus the printed closed-form Q expressions

#pragma once

#include <optional>

#include "masertur/fcs.hpp"

namespace masertur {

// Degeneracy guard: Q is 0/0 at zero current (threshold n_h = n_c, lambda = 0,
// or the p = -1 endpoint). Points closer than this are reported degenerate.
constexpr double kCurrentEpsilon = 1e-12;

struct TurReport {
    ModelKind kind;
    EngineParams params;
    double current = 0.0;
    double variance = 0.0;
    double sigma = 0.0;       // entropy production rate
    double q = 0.0;           // sigma * var(P) / P^2
    double reliability = 0.0; // P / sqrt(var(P))
    std::optional<double> power;
    std::optional<double> power_variance;
    CumulantMethod method = CumulantMethod::CharPoly;
};

// sigma = ln[n_h (n_c + 1) / (n_c (n_h + 1))] * I; nonnegative for any
// steady-state current produced by these engines.
double entropy_production(double current, double n_h, double n_c);

double power(double current, const LevelFrequencies& freqs);
double power_variance(double variance, const LevelFrequencies& freqs);

double reliability(const Cumulants& c);

// Full TUR report at one operation point. Throws DegenerateOperation when
// |current| <= kCurrentEpsilon; probe thresholds parametrically instead.
TurReport tur_q(ModelKind kind, const EngineParams& params,
                CumulantMethod method = CumulantMethod::CharPoly,
                double step = 1e-3,
                const std::optional<LevelFrequencies>& freqs = std::nullopt);

// Population-only part of Q; >= 2 for all valid occupations.
double q_pop(double n_h, double n_c);

// The p = -1 closed form of the four-level engine equals q_pop.
double q_nic_p_minus1(double n_h, double n_c);

// FCS q of the four-level engine extrapolated to the p -> -1 endpoint, where
// the current vanishes and the direct ratio is 0/0.
double q_nic_endpoint_limit(EngineParams params,
                            CumulantMethod method = CumulantMethod::CharPoly);

// Printed closed forms (verbatim transcriptions, quarantined; the FCS
// pipeline is ground truth). See closed_forms.hpp for repaired variants.
double q1_closed_form(const EngineParams& params);   // Model I
double q2_closed_form(const EngineParams& params);   // Model II
double q_ht_closed_form(const EngineParams& params); // high-temperature limit

} // namespace masertur
