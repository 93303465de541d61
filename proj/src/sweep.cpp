// sweep.cpp - deterministic parameter sweeps, histograms and figure curves

#include "masertur/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace masertur {

void SweepSpec::validate() const {
    auto chk = [](const Interval& iv, const char* name) {
        if (!(iv.lo <= iv.hi) || !std::isfinite(iv.lo) || !std::isfinite(iv.hi))
            throw invalid_params(std::string("bad range for ") + name);
    };
    chk(ranges.gamma_h, "gamma_h");
    chk(ranges.gamma_c, "gamma_c");
    chk(ranges.lambda, "lambda");
    chk(ranges.n_h, "n_h");
    chk(ranges.n_c, "n_c");
    chk(ranges.p, "p");
    if (!(ranges.gamma_h.lo > 0.0) || !(ranges.gamma_c.lo > 0.0))
        throw invalid_params("coupling ranges must stay positive");
    if (ranges.p.lo < -1.0 || ranges.p.hi > 1.0)
        throw invalid_params("p range must lie within [-1, 1]");
    if (!(bin_width > 0.0)) throw invalid_params("bin_width must be > 0");
    for (const auto& [key, value] : fixed) {
        if (key != "gamma_h" && key != "gamma_c" && key != "lambda" &&
            key != "n_h" && key != "n_c" && key != "p")
            throw invalid_params("unknown fixed parameter '" + key + "'");
        (void)value;
    }
}

EngineParams sample_at(const SweepSpec& spec, std::uint64_t index) {
    SplitMix64 rng = substream(spec.seed, index);
    EngineParams pr;
    auto draw = [&](const char* name, const Interval& iv, double& field) {
        auto it = spec.fixed.find(name);
        if (it != spec.fixed.end()) {
            field = it->second;
        } else {
            field = rng.uniform(iv.lo, iv.hi);
        }
    };
    draw("gamma_h", spec.ranges.gamma_h, pr.gamma_h);
    draw("gamma_c", spec.ranges.gamma_c, pr.gamma_c);
    draw("lambda", spec.ranges.lambda, pr.lambda);
    draw("n_h", spec.ranges.n_h, pr.n_h);
    draw("n_c", spec.ranges.n_c, pr.n_c);
    if (spec.kind == ModelKind::FourLevelNIC) draw("p", spec.ranges.p, pr.p);
    return pr;
}

std::vector<EngineParams> sample_params(const SweepSpec& spec) {
    spec.validate();
    std::vector<EngineParams> out;
    out.reserve(spec.count);
    for (std::uint64_t i = 0; i < spec.count; ++i) out.push_back(sample_at(spec, i));
    return out;
}

long long Histogram::bin_of(double v) const {
    return static_cast<long long>(std::floor(v / bin_width));
}

void Histogram::insert(double v) {
    const long long b = bin_of(v);
    if (counts.empty()) {
        first_bin = b;
        counts.assign(1, 0);
    } else if (b < first_bin) {
        counts.insert(counts.begin(), static_cast<std::size_t>(first_bin - b), 0);
        first_bin = b;
    } else if (b >= first_bin + static_cast<long long>(counts.size())) {
        counts.resize(static_cast<std::size_t>(b - first_bin + 1), 0);
    }
    ++counts[static_cast<std::size_t>(b - first_bin)];
    ++total;
    min_value = std::min(min_value, v);
    max_value = std::max(max_value, v);
    if (v < 2.0) ++violations;
    violation_fraction = total ? static_cast<double>(violations) / total : 0.0;
}

void Histogram::merge(const Histogram& other) {
    if (other.counts.empty()) {
        excluded += other.excluded;
        requested += other.requested;
        return;
    }
    if (counts.empty()) {
        first_bin = other.first_bin;
        counts = other.counts;
    } else {
        const long long lo = std::min(first_bin, other.first_bin);
        const long long hi =
            std::max(first_bin + static_cast<long long>(counts.size()),
                     other.first_bin + static_cast<long long>(other.counts.size()));
        std::vector<std::uint64_t> merged(static_cast<std::size_t>(hi - lo), 0);
        for (std::size_t i = 0; i < counts.size(); ++i)
            merged[static_cast<std::size_t>(first_bin - lo) + i] += counts[i];
        for (std::size_t i = 0; i < other.counts.size(); ++i)
            merged[static_cast<std::size_t>(other.first_bin - lo) + i] += other.counts[i];
        first_bin = lo;
        counts = std::move(merged);
    }
    total += other.total;
    excluded += other.excluded;
    requested += other.requested;
    min_value = std::min(min_value, other.min_value);
    max_value = std::max(max_value, other.max_value);
    violations += other.violations;
    violation_fraction = total ? static_cast<double>(violations) / total : 0.0;
}

Histogram q_histogram(const SweepSpec& spec, CumulantMethod method, int workers) {
    spec.validate();
    if (workers <= 0)
        workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    const std::uint64_t n = spec.count;
    workers = static_cast<int>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(n, 1)));

    auto run_range = [&](std::uint64_t lo, std::uint64_t hi, Histogram& h) {
        h.bin_width = spec.bin_width;
        for (std::uint64_t i = lo; i < hi; ++i) {
            ++h.requested;
            EngineParams pr = sample_at(spec, i);
            if (pr.n_h == pr.n_c || pr.n_h <= 0.0 || pr.n_c <= 0.0) {
                ++h.excluded;
                continue;
            }
            try {
                h.insert(tur_q(spec.kind, pr, method).q);
            } catch (const Error&) {
                ++h.excluded;
            }
        }
    };

    std::vector<Histogram> parts(static_cast<std::size_t>(workers));
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (n + workers - 1) / std::max(workers, 1);
    for (int w = 0; w < workers; ++w) {
        const std::uint64_t lo = w * chunk, hi = std::min(n, (w + 1) * chunk);
        if (lo >= hi) break;
        pool.emplace_back(run_range, lo, hi, std::ref(parts[static_cast<std::size_t>(w)]));
    }
    for (auto& t : pool) t.join();

    Histogram out;
    out.bin_width = spec.bin_width;
    for (const auto& part : parts) out.merge(part);
    return out;
}

namespace {

void check_grid(const std::vector<double>& grid) {
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw invalid_params("curve grid must be strictly increasing");
}

} // namespace

Curve lambda_curve(ModelKind kind, const EngineParams& base,
                   const std::vector<double>& grid, CumulantMethod method) {
    check_grid(grid);
    if (!grid.empty() && !(grid.front() > 0.0))
        throw invalid_params("lambda grid must stay positive");
    Curve c;
    c.abscissa = "lambda";
    for (double lam : grid) {
        CurvePoint pt;
        pt.x = lam;
        EngineParams pr = base;
        pr.lambda = lam;
        try {
            pt.report = tur_q(kind, pr, method);
        } catch (const Error& e) {
            pt.degenerate = true;
            pt.note = e.what();
        }
        c.points.push_back(std::move(pt));
    }
    return c;
}

Curve p_curve(const EngineParams& base, const std::vector<double>& grid,
              CumulantMethod method) {
    check_grid(grid);
    if (!grid.empty() && (grid.front() < -1.0 || grid.back() > 1.0))
        throw invalid_params("p grid must lie within [-1, 1]");
    Curve c;
    c.abscissa = "p";
    for (double p : grid) {
        CurvePoint pt;
        pt.x = p;
        EngineParams pr = base;
        pr.p = p;
        try {
            if (p == -1.0) {
                // current and variance vanish exactly at the endpoint;
                // q is reported as the parametric limit
                pt.report.kind = ModelKind::FourLevelNIC;
                pt.report.params = pr;
                pt.report.method = method;
                pt.report.q = q_nic_endpoint_limit(pr, method);
                pt.note = "limit";
            } else {
                pt.report = tur_q(ModelKind::FourLevelNIC, pr, method);
            }
        } catch (const Error& e) {
            pt.degenerate = true;
            pt.note = e.what();
        }
        c.points.push_back(std::move(pt));
    }
    return c;
}

double scaling_check(ModelKind kind, const EngineParams& params,
                     const std::vector<double>& ks, CumulantMethod method) {
    for (double k : ks)
        if (!(k > 0.0)) throw invalid_params("scaling factors must be positive");
    const double q0 = tur_q(kind, params, method).q;
    double worst = 0.0;
    for (double k : ks)
        worst = std::max(worst,
                         std::abs(tur_q(kind, params.scaled_couplings(k), method).q - q0));
    return worst;
}

} // namespace masertur
