// acceptance.cpp - the release gate: one pass/fail line per criterion

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "masertur/io.hpp"
#include "masertur/closed_forms.hpp"
#include "masertur/validate.hpp"

using namespace masertur;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    void require(bool ok, const std::string& why) {
        if (!ok && pass) {
            pass = false;
            detail = why;
        }
    }
};

constexpr ModelKind kKinds[] = {ModelKind::ThreeLevelI, ModelKind::ThreeLevelII,
                                ModelKind::FourLevelNIC};
constexpr ModelKind kThreeLevel[] = {ModelKind::ThreeLevelI, ModelKind::ThreeLevelII};

const EngineParams kFig2{0.1, 2.0, 0.2, 5.0, 0.027};
const EngineParams kFig4{0.3, 0.03, 0.3, 6.0, 3.0};
const EngineParams kFig5{0.6, 0.4, 0.5, 5.0, 2.0};

constexpr std::uint64_t kSeed = 7451; // published histogram seed

EngineParams draw_full(SplitMix64& rng, ModelKind kind) {
    EngineParams pr;
    pr.gamma_h = rng.uniform(1e-4, 5.0);
    pr.gamma_c = rng.uniform(1e-4, 5.0);
    pr.lambda = rng.uniform(1e-4, 1.0);
    pr.n_h = rng.uniform(0.0, 10.0);
    pr.n_c = rng.uniform(0.0, 10.0);
    if (kind == ModelKind::FourLevelNIC) pr.p = rng.uniform(-0.999, 0.999);
    return pr;
}

// cross-method comparison grid: the operational drive range of the figure
// datasets. Below lambda ~ 1e-2 the double rounding of the generator entries
// itself moves the near-cancelling current at the 1e-6 level, which is a
// representation bound rather than a method disagreement.
EngineParams draw_operational(SplitMix64& rng, ModelKind kind) {
    EngineParams pr = draw_full(rng, kind);
    pr.lambda = rng.uniform(0.01, 1.0);
    return pr;
}

// moderate draws for limit studies: occupations bounded away from the
// threshold, couplings away from the sampling-box corners
EngineParams draw_moderate(SplitMix64& rng, ModelKind kind) {
    EngineParams pr;
    pr.gamma_h = rng.uniform(0.05, 2.0);
    pr.gamma_c = rng.uniform(0.05, 2.0);
    pr.lambda = rng.uniform(0.1, 1.0);
    pr.n_h = rng.uniform(0.5, 8.0);
    pr.n_c = rng.uniform(0.5, 8.0);
    if (std::abs(pr.n_h - pr.n_c) < 0.2) pr.n_h += 0.5;
    if (kind == ModelKind::FourLevelNIC) pr.p = rng.uniform(-0.9, 0.9);
    return pr;
}

// scaled-occupation protocols shrink the current by three powers of the
// scale; these draws keep it clear of the 1e-12 degeneracy guard
EngineParams draw_high_t(SplitMix64& rng) {
    EngineParams pr;
    pr.gamma_h = rng.uniform(0.2, 2.0);
    pr.gamma_c = rng.uniform(0.2, 2.0);
    pr.lambda = rng.uniform(0.3, 1.0);
    pr.n_c = rng.uniform(0.5, 5.0);
    pr.n_h = pr.n_c + rng.uniform(1.0, 3.0);
    return pr;
}

std::string fmt(double v) { return io::format_double(v); }

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
    return g;
}

// shared 10^6-sample histograms (criteria 10 and 14)
struct HistogramCache {
    bool ready = false;
    Histogram model_i, model_ii, nic;
    double elapsed = 0.0;
    void ensure() {
        if (ready) return;
        const auto t0 = std::chrono::steady_clock::now();
        SweepSpec spec;
        spec.count = 1000000;
        spec.seed = kSeed;
        spec.kind = ModelKind::ThreeLevelI;
        model_i = q_histogram(spec);
        spec.kind = ModelKind::ThreeLevelII;
        model_ii = q_histogram(spec);
        spec.kind = ModelKind::FourLevelNIC;
        nic = q_histogram(spec);
        elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                      .count();
        ready = true;
    }
};
HistogramCache g_hist;

Outcome c01_null_eigenvalue() {
    Outcome o;
    SplitMix64 rng(101);
    double worst = 0.0;
    for (ModelKind kind : kKinds)
        for (int i = 0; i < 1000; ++i) {
            const EngineParams pr = draw_full(rng, kind);
            worst = std::max(worst, std::abs(dominant_eigenvalue(
                                        build_tilted_liouvillian(kind, pr, 0.0))));
        }
    o.require(worst < 1e-10, "max |xi(0)| = " + fmt(worst));
    o.detail = "max |xi(0)| = " + fmt(worst);
    return o;
}

Outcome c02_method_agreement() {
    Outcome o;
    SplitMix64 rng(102);
    double worst = 0.0;
    int used = 0;
    for (ModelKind kind : kKinds)
        for (int i = 0; i < 1000; ++i) {
            const EngineParams pr = draw_operational(rng, kind);
            const Cumulants a = cumulants_eig_fd(kind, pr);
            const Cumulants b = cumulants_charpoly(kind, pr);
            if (std::abs(a.current) < 1e-10) continue;
            ++used;
            worst = std::max(worst, std::abs(a.current - b.current) / std::abs(a.current));
            worst =
                std::max(worst, std::abs(a.variance - b.variance) / std::abs(a.variance));
        }
    o.require(worst < 1e-5, "max rel dev " + fmt(worst));
    o.detail = "max rel dev " + fmt(worst) + " over " + std::to_string(used) + " points";
    return o;
}

Outcome c03_closed_form_current() {
    Outcome o;
    SplitMix64 rng(103);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const EngineParams pr = draw_operational(rng, ModelKind::ThreeLevelI);
        const double ref = current_model1_closed_form(pr);
        if (std::abs(ref) < 1e-10) continue;
        worst = std::max(worst, std::abs(cumulants_eig_fd(ModelKind::ThreeLevelI, pr).current - ref) /
                                    std::abs(ref));
        worst = std::max(worst, std::abs(cumulants_charpoly(ModelKind::ThreeLevelI, pr).current - ref) /
                                    std::abs(ref));
    }
    o.require(worst < 1e-6, "max rel dev " + fmt(worst));
    o.detail = "max rel dev " + fmt(worst);
    return o;
}

Outcome c04_steady_state_consistency() {
    Outcome o;
    SplitMix64 rng(104);
    double worst = 0.0;
    for (ModelKind kind : kKinds)
        for (int i = 0; i < 1000; ++i) {
            const EngineParams pr = draw_operational(rng, kind);
            const double fcs = cumulants_charpoly(kind, pr).current;
            if (std::abs(fcs) < 1e-10) continue;
            const double direct = cold_current_from_state(kind, pr, steady_state(kind, pr));
            worst = std::max(worst, std::abs(direct - fcs) / std::abs(fcs));
        }
    o.require(worst < 1e-8, "max rel dev " + fmt(worst));
    o.detail = "max rel dev " + fmt(worst);
    return o;
}

Outcome c05_threshold_saturation() {
    Outcome o;
    SplitMix64 rng(105);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i)
        for (ModelKind kind : kThreeLevel) {
            EngineParams pr;
            pr.gamma_h = rng.uniform(0.05, 3.0);
            pr.gamma_c = rng.uniform(0.05, 3.0);
            pr.lambda = rng.uniform(0.05, 1.0);
            pr.n_c = rng.uniform(0.1, 5.0);
            for (double sgn : {1.0, -1.0}) {
                pr.n_h = pr.n_c * (1.0 + sgn * 1e-4);
                worst = std::max(worst, std::abs(tur_q(kind, pr).q - 2.0));
            }
        }
    o.require(worst < 1e-3, "max |q - 2| = " + fmt(worst));
    o.detail = "max |q - 2| = " + fmt(worst);
    return o;
}

Outcome c06_scaling_invariance() {
    Outcome o;
    SplitMix64 rng(106);
    const std::vector<double> ks{0.1, 0.5, 2.0, 10.0};
    double worst = 0.0;
    for (ModelKind kind : kKinds)
        for (int i = 0; i < 100; ++i) {
            const EngineParams pr = draw_moderate(rng, kind);
            worst = std::max(worst, scaling_check(kind, pr, ks));
        }
    o.require(worst < 1e-8, "max |dq| = " + fmt(worst));
    o.detail = "max |dq| = " + fmt(worst);
    return o;
}

Outcome c07_high_t_three_level() {
    Outcome o;
    SplitMix64 rng(107);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i)
        for (ModelKind kind : kThreeLevel) {
            EngineParams scaled = draw_high_t(rng);
            scaled.n_h *= 1e4;
            scaled.n_c *= 1e4;
            const double q = tur_q(kind, scaled).q;
            const double qht = q_ht_closed_form(scaled);
            worst = std::max(worst, std::abs(q - qht));
            // "always violated": the high-temperature form sits strictly
            // below 2; its violation term is evaluated directly because the
            // offset is far below double resolution around 2
            o.require(printed::q_ht_violation(scaled) > 0.0, "violation term not positive");
            o.require(qht <= 2.0, "q_HT above 2");
        }
    o.require(worst < 1e-2, "max |q - q_HT| = " + fmt(worst));
    if (o.pass) o.detail = "max |q - q_HT| = " + fmt(worst) + ", q_HT < 2 throughout";
    return o;
}

Outcome c08_high_t_nic() {
    Outcome o;
    SplitMix64 rng(108);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        EngineParams pr = draw_high_t(rng);
        pr.p = rng.uniform(-0.9, 0.9);
        pr.n_h *= 1e4;
        pr.n_c *= 1e4;
        worst = std::max(worst, std::abs(tur_q(ModelKind::FourLevelNIC, pr).q - 2.0));
    }
    o.require(worst < 1e-2, "max |q - 2| = " + fmt(worst));
    o.detail = "max |q - 2| = " + fmt(worst);
    return o;
}

Outcome c09_endpoint_identity() {
    Outcome o;
    SplitMix64 rng(109);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const EngineParams pr = draw_moderate(rng, ModelKind::FourLevelNIC);
        const double lim = q_nic_endpoint_limit(pr);
        const double pop = q_pop(pr.n_h, pr.n_c);
        worst = std::max(worst, std::abs(lim - pop) / pop);
    }
    o.require(worst < 1e-6, "max rel dev " + fmt(worst));
    o.detail = "max rel dev " + fmt(worst);
    return o;
}

Outcome c10_inequalities() {
    Outcome o;
    SplitMix64 rng(110);
    double lowest_pop = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 100000; ++i) {
        const double nh = rng.uniform(1e-4, 10.0);
        const double nc = rng.uniform(1e-4, 10.0);
        if (nh == nc) continue;
        lowest_pop = std::min(lowest_pop, q_pop(nh, nc));
    }
    o.require(lowest_pop >= 2.0 - 1e-12, "min q_pop = " + fmt(lowest_pop));

    g_hist.ensure();
    const double lowest_q = std::min({g_hist.model_i.min_value, g_hist.model_ii.min_value,
                                      g_hist.nic.min_value});
    o.require(lowest_q >= 1.0, "min sampled q = " + fmt(lowest_q));
    o.detail = "min q_pop = " + fmt(lowest_pop) + ", min sampled q = " + fmt(lowest_q);
    return o;
}

Outcome c11_figure2() {
    Outcome o;
    const auto grid = linspace(0.01, 1.0, 100);
    const Curve qi = lambda_curve(ModelKind::ThreeLevelI, kFig2, grid);
    const Curve qii = lambda_curve(ModelKind::ThreeLevelII, kFig2, grid);

    // saturation: under a 1% relative change per doubling of lambda far out
    EngineParams big = kFig2;
    big.lambda = 6.0;
    const double q6 = tur_q(ModelKind::ThreeLevelI, big).q;
    big.lambda = 12.0;
    const double q12 = tur_q(ModelKind::ThreeLevelI, big).q;
    o.require(std::abs(q12 - q6) < 0.01 * q12,
              "no saturation: |q(12) - q(6)| = " + fmt(std::abs(q12 - q6)));

    int sign_changes = 0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double a = qi.points[i - 1].report.q - qii.points[i - 1].report.q;
        const double b = qi.points[i].report.q - qii.points[i].report.q;
        if (a * b < 0.0) ++sign_changes;
    }
    o.require(sign_changes >= 1, "q curves do not cross");

    int r_changes = 0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double a =
            qi.points[i - 1].report.reliability - qii.points[i - 1].report.reliability;
        const double b = qi.points[i].report.reliability - qii.points[i].report.reliability;
        if (a * b < 0.0) ++r_changes;
    }
    const double r_i_end = qi.points.back().report.reliability;
    const double r_ii_end = qii.points.back().report.reliability;
    o.require(r_changes >= 1, "reliability curves do not cross");
    o.require(r_i_end > r_ii_end, "model I reliability not higher at large lambda");
    if (o.pass)
        o.detail = "saturation, q crossings " + std::to_string(sign_changes) +
                   ", R crossings " + std::to_string(r_changes) + ", R_I(1) > R_II(1)";
    return o;
}

// The published curve shows a sub-2 dip for model I at these parameters; the
// actual dynamics never drops below q = 2.38 on any lambda (it does with
// n_c = 0.27 instead of 0.027, pointing at a caption misprint). Kept as an
// expected failure so a change in behavior surfaces.
Outcome c11x_figure2_model_i_dip() {
    Outcome o;
    double min_qi = 1e300, at = 0.0;
    for (double lam = 0.02; lam <= 3.0; lam += 0.02) {
        EngineParams pr = kFig2;
        pr.lambda = lam;
        const double q = tur_q(ModelKind::ThreeLevelI, pr).q;
        if (q < min_qi) {
            min_qi = q;
            at = lam;
        }
    }
    o.require(min_qi < 2.0, "min q_I = " + fmt(min_qi) + " at lambda = " + fmt(at));
    o.detail = "min q_I = " + fmt(min_qi) + " at lambda = " + fmt(at);
    return o;
}

Outcome c12_figure4() {
    Outcome o;
    const auto grid = linspace(0.01, 1.0, 100);
    const Curve ref = lambda_curve(ModelKind::ThreeLevelI, kFig4, grid);
    EngineParams lo = kFig4, hi = kFig4;
    lo.p = -0.945;
    hi.p = 0.7;
    const Curve below = lambda_curve(ModelKind::FourLevelNIC, lo, grid);
    const Curve above = lambda_curve(ModelKind::FourLevelNIC, hi, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        o.require(below.points[i].report.q < ref.points[i].report.q,
                  "p=-0.945 not below model I at lambda = " + fmt(grid[i]));
        o.require(above.points[i].report.q > ref.points[i].report.q,
                  "p=0.7 not above model I at lambda = " + fmt(grid[i]));
    }
    if (o.pass) o.detail = "ordering holds on all " + std::to_string(grid.size()) + " points";
    return o;
}

Outcome c13_figure5() {
    Outcome o;
    std::vector<double> grid;
    for (double p = -1.0; p <= 0.98 + 1e-12; p += 0.02) grid.push_back(p);
    for (double lam : {1.0, 0.5, 0.15}) {
        EngineParams pr = kFig5;
        pr.lambda = lam;
        const Curve c = p_curve(pr, grid);
        double best = 1e300;
        std::size_t best_i = 0;
        for (std::size_t i = 0; i < c.points.size(); ++i) {
            if (c.points[i].degenerate) continue;
            if (c.points[i].report.q < best) {
                best = c.points[i].report.q;
                best_i = i;
            }
        }
        o.require(best_i > 0 && best_i + 1 < c.points.size(),
                  "no interior minimum at lambda = " + fmt(lam));
        const double endpoint = c.points.front().report.q;
        o.require(std::abs(endpoint - q_pop(5.0, 2.0)) < 1e-4,
                  "endpoint mismatch at lambda = " + fmt(lam) + ": " + fmt(endpoint));
    }
    if (o.pass) o.detail = "interior minima and p = -1 endpoints verified";
    return o;
}

Outcome c14_histograms() {
    Outcome o;
    g_hist.ensure();
    auto bulk = [](const Histogram& h) {
        std::uint64_t inside = 0;
        for (std::size_t i = 0; i < h.counts.size(); ++i) {
            const long long b = h.first_bin + static_cast<long long>(i);
            const double lo = b * h.bin_width, hi = (b + 1) * h.bin_width;
            if (lo >= 1.99 - 1e-12 && hi <= 2.01 + 1e-12) inside += h.counts[i];
        }
        return static_cast<double>(inside) / static_cast<double>(h.total);
    };
    const double fi = bulk(g_hist.model_i), fii = bulk(g_hist.model_ii),
                 fn = bulk(g_hist.nic);
    o.require(fi > 0.5, "model I bulk fraction " + fmt(fi));
    o.require(fii > 0.5, "model II bulk fraction " + fmt(fii));
    o.require(fn > 0.5, "NIC bulk fraction " + fmt(fn));
    o.require(g_hist.model_ii.min_value < g_hist.model_i.min_value,
              "min(Q_II) not below min(Q_I)");
    o.require(g_hist.nic.min_value > g_hist.model_i.min_value,
              "min(Q_NIC) not above min(Q_I)");
    o.detail = "bulk " + fmt(fi) + "/" + fmt(fii) + "/" + fmt(fn) + ", minima " +
               fmt(g_hist.model_i.min_value) + "/" + fmt(g_hist.model_ii.min_value) +
               "/" + fmt(g_hist.nic.min_value);
    return o;
}

Outcome c15_trajectory() {
    Outcome o;
    const Cumulants mc = trajectory_cumulants(ModelKind::ThreeLevelI, kFig2, 0.0, 10000, 2024);
    const Cumulants cp = cumulants_charpoly(ModelKind::ThreeLevelI, kFig2);
    const double dev_i = std::abs(mc.current - cp.current) / mc.diagnostics.at("se_current");
    const double dev_v =
        std::abs(mc.variance - cp.variance) / mc.diagnostics.at("se_variance");
    o.require(dev_i < 3.0, "current off by " + fmt(dev_i) + " SE");
    o.require(dev_v < 3.0, "variance off by " + fmt(dev_v) + " SE");
    o.detail = "current dev " + fmt(dev_i) + " SE, variance dev " + fmt(dev_v) + " SE";
    return o;
}

Outcome c16_discrepancy_report() {
    Outcome o;
    const std::string rep = discrepancy_report();
    o.require(!rep.empty(), "report is empty");
    o.require(rep.find("c0'") != std::string::npos, "missing coefficient section");
    o.require(rep.find("signed rel err") != std::string::npos, "missing signed errors");
    o.detail = std::to_string(rep.size()) + " bytes";
    return o;
}

struct Criterion {
    int id;
    const char* name;
    double budget_s;   // stated runtime budget (0 = none stated)
    bool expect_fail;  // documented defect: red is the recorded outcome
    std::function<Outcome()> run;
};

} // namespace

int main(int argc, char** argv) {
    const int only = argc > 1 ? std::atoi(argv[1]) : 0;
    const std::vector<Criterion> criteria{
        {1, "null-eigenvalue", 10.0, false, c01_null_eigenvalue},
        {2, "method-agreement", 30.0, false, c02_method_agreement},
        {3, "closed-form-current", 10.0, false, c03_closed_form_current},
        {4, "steady-state-consistency", 0.0, false, c04_steady_state_consistency},
        {5, "threshold-saturation", 0.0, false, c05_threshold_saturation},
        {6, "scaling-invariance", 0.0, false, c06_scaling_invariance},
        {7, "high-T-three-level", 0.0, false, c07_high_t_three_level},
        {8, "high-T-NIC", 0.0, false, c08_high_t_nic},
        {9, "endpoint-identity", 0.0, false, c09_endpoint_identity},
        {10, "inequality-suites", 0.0, false, c10_inequalities},
        {11, "figure2-reproduction", 5.0, false, c11_figure2},
        {11, "figure2-model-I-dip", 0.0, true, c11x_figure2_model_i_dip},
        {12, "figure4-reproduction", 10.0, false, c12_figure4},
        {13, "figure5-reproduction", 0.0, false, c13_figure5},
        {14, "histogram-statistics", 600.0, false, c14_histograms},
        {15, "trajectory-oracle", 300.0, false, c15_trajectory},
        {16, "discrepancy-report", 0.0, false, c16_discrepancy_report},
    };

    const double cores = std::max(1u, std::thread::hardware_concurrency());
    int failures = 0;
    for (const auto& c : criteria) {
        if (only && c.id != only) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        // histogram time is charged to criterion 14 (its stated budget
        // assumes eight cores; scale on smaller machines)
        if (c.id == 14) elapsed = g_hist.elapsed;
        double budget = c.budget_s;
        if (c.id == 14 && cores < 8.0) budget = c.budget_s * 8.0 / cores;
        if (budget > 0.0 && elapsed > budget) {
            o.pass = false;
            o.detail += " [over budget: " + io::format_double(elapsed) + " s > " +
                        io::format_double(budget) + " s]";
        }
        const char* tag;
        bool counted;
        if (!c.expect_fail) {
            tag = o.pass ? "PASS " : "FAIL ";
            counted = !o.pass;
        } else {
            // a documented defect: red is expected, green means the
            // recorded analysis no longer holds and must be revisited
            tag = o.pass ? "XPASS" : "XFAIL";
            counted = o.pass;
        }
        std::printf("[%s] %02d %-26s %s (%.1f s)\n", tag, c.id, c.name,
                    o.detail.c_str(), elapsed);
        std::fflush(stdout);
        if (counted) ++failures;
    }
    if (failures) std::printf("%d unexpected outcome(s)\n", failures);
    return failures;
}
