// observables.cpp - assembly of sigma, P, Q and R from cumulants

#include "masertur/observables.hpp"

#include <cmath>

namespace masertur {

namespace {

// ln[n_h(n_c+1) / (n_c(n_h+1))] = log1p((n_h - n_c) / (n_c(n_h+1))), which
// stays fully accurate through the n_h -> n_c threshold
double affinity(double n_h, double n_c) {
    if (!(n_h > 0.0) || !(n_c > 0.0))
        throw invalid_params("entropy production needs n_h > 0 and n_c > 0 "
                             "(log divergence at zero occupation)");
    return std::log1p((n_h - n_c) / (n_c * (n_h + 1.0)));
}

} // namespace

double entropy_production(double current, double n_h, double n_c) {
    return affinity(n_h, n_c) * current;
}

double power(double current, const LevelFrequencies& freqs) {
    freqs.validate();
    return (freqs.omega_h - freqs.omega_c) * current;
}

double power_variance(double variance, const LevelFrequencies& freqs) {
    freqs.validate();
    const double de = freqs.omega_h - freqs.omega_c;
    return de * de * variance;
}

double reliability(const Cumulants& c) {
    if (!(c.variance > 0.0))
        throw Error(ErrorCode::DegenerateOperation,
                    "reliability undefined: variance is not positive");
    return c.current / std::sqrt(c.variance);
}

TurReport tur_q(ModelKind kind, const EngineParams& params, CumulantMethod method,
                double step, const std::optional<LevelFrequencies>& freqs) {
    params.validate();
    const Cumulants c = cumulants(kind, params, method, step);
    if (std::abs(c.current) <= kCurrentEpsilon)
        throw Error(ErrorCode::DegenerateOperation,
                    "degenerate: zero current at threshold (Q is 0/0)");

    TurReport r;
    r.kind = kind;
    r.params = params;
    r.current = c.current;
    r.variance = c.variance;
    r.method = method;
    r.sigma = entropy_production(c.current, params.n_h, params.n_c);
    // Q = sigma var(I)/I^2 written as affinity * var/I to avoid squaring
    r.q = r.sigma / c.current * c.variance / c.current;
    r.reliability = c.current / std::sqrt(c.variance);
    if (freqs) {
        r.power = power(c.current, *freqs);
        r.power_variance = power_variance(c.variance, *freqs);
    }
    return r;
}

double q_pop(double n_h, double n_c) {
    if (!(n_h > 0.0) || !(n_c > 0.0))
        throw invalid_params("q_pop needs positive occupations");
    if (n_h == n_c)
        throw Error(ErrorCode::DegenerateOperation,
                    "q_pop is 0/0 at n_h = n_c (limit equals 2)");
    return affinity(n_h, n_c) * (n_h + n_c + 2.0 * n_h * n_c) / (n_h - n_c);
}

double q_nic_p_minus1(double n_h, double n_c) { return q_pop(n_h, n_c); }

double q_nic_endpoint_limit(EngineParams params, CumulantMethod method) {
    params.validate();
    // q(p) has a removable 0/0 at p = -1; extrapolate from p = -1 + delta.
    // The charpoly extraction keeps its relative accuracy as the current
    // vanishes, so the nodes can sit tight against the endpoint; Neville on
    // four nodes leaves an O(delta^4) bias far below 1e-6.
    const std::array<double, 4> deltas{5e-4, 2.5e-4, 1.25e-4, 6.25e-5};
    std::array<double, 4> q{};
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        params.p = -1.0 + deltas[i];
        q[i] = tur_q(ModelKind::FourLevelNIC, params, method).q;
    }
    std::array<double, 4> x = deltas;
    for (std::size_t m = 1; m < q.size(); ++m)
        for (std::size_t i = 0; i + m < q.size(); ++i)
            q[i] = (x[i + m] * q[i] - x[i] * q[i + 1]) / (x[i + m] - x[i]);
    return q[0];
}

} // namespace masertur
