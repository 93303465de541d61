// sweep.hpp - randomized and gridded parameter exploration with a
// deterministic seed-substream scheme

#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "masertur/observables.hpp"
#include "masertur/rng.hpp"

namespace masertur {

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
};

// Defaults are the published histogram sampling ranges; p is kept inside the
// open interval because the endpoints are degenerate.
struct SweepRanges {
    Interval gamma_h{1e-4, 5.0};
    Interval gamma_c{1e-4, 5.0};
    Interval lambda{1e-4, 1.0};
    Interval n_h{0.0, 10.0};
    Interval n_c{0.0, 10.0};
    Interval p{-0.999, 0.999};
};

struct SweepSpec {
    ModelKind kind = ModelKind::ThreeLevelI;
    SweepRanges ranges;
    std::uint64_t count = 0;
    std::uint64_t seed = 0;
    double bin_width = 0.01;
    std::map<std::string, double> fixed; // pinned parameters, by field name

    void validate() const;
};

// Sample i is a pure function of (seed, i): subsets share a common prefix and
// results do not depend on worker count. Draw order: gamma_h, gamma_c,
// lambda, n_h, n_c, then p (FourLevelNIC only).
EngineParams sample_at(const SweepSpec& spec, std::uint64_t index);
std::vector<EngineParams> sample_params(const SweepSpec& spec);

struct Histogram {
    double bin_width = 0.01;
    long long first_bin = 0; // bin k covers [k*w, (k+1)*w)
    std::vector<std::uint64_t> counts;
    std::uint64_t total = 0;        // histogrammed samples
    std::uint64_t excluded = 0;     // degenerate or failed points
    std::uint64_t requested = 0;    // total + excluded == requested
    double min_value = std::numeric_limits<double>::infinity();
    double max_value = -std::numeric_limits<double>::infinity();
    std::uint64_t violations = 0;   // q < 2 tally
    double violation_fraction = 0.0;

    long long bin_of(double v) const;
    void insert(double v);
    void merge(const Histogram& other);
};

// Histogram of tur_q over the sampled parameter stream. Per-point failures
// are excluded and counted, never fatal. workers = 0 picks the hardware
// concurrency.
Histogram q_histogram(const SweepSpec& spec,
                      CumulantMethod method = CumulantMethod::CharPoly,
                      int workers = 0);

struct CurvePoint {
    double x = 0.0;
    bool degenerate = false;
    std::string note;   // e.g. "limit" for the extrapolated p = -1 endpoint
    TurReport report{}; // valid when !degenerate
};

struct Curve {
    std::string abscissa; // "lambda" or "p"
    std::vector<CurvePoint> points;
};

// Q and R along a strictly increasing lambda grid at fixed base parameters.
Curve lambda_curve(ModelKind kind, const EngineParams& base,
                   const std::vector<double>& grid,
                   CumulantMethod method = CumulantMethod::CharPoly);

// Q along a p grid for the four-level engine; p = -1 is evaluated as the
// parametric limit and tagged "limit".
Curve p_curve(const EngineParams& base, const std::vector<double>& grid,
              CumulantMethod method = CumulantMethod::CharPoly);

// Max |q(k Gamma_h, k Gamma_c, k lambda) - q| over the k list.
double scaling_check(ModelKind kind, const EngineParams& params,
                     const std::vector<double>& ks,
                     CumulantMethod method = CumulantMethod::CharPoly);

} // namespace masertur
