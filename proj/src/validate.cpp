// validate.cpp - the `validate` subcommand's check battery

#include "masertur/validate.hpp"

#include "masertur/io.hpp"
#include "masertur/closed_forms.hpp"

#include <cmath>
#include <sstream>

namespace masertur {

namespace {

EngineParams random_params(SplitMix64& rng, ModelKind kind, double n_lo = 0.05,
                           double n_hi = 10.0) {
    EngineParams pr;
    pr.gamma_h = rng.uniform(1e-4, 5.0);
    pr.gamma_c = rng.uniform(1e-4, 5.0);
    pr.lambda = rng.uniform(1e-4, 1.0);
    pr.n_h = rng.uniform(n_lo, n_hi);
    pr.n_c = rng.uniform(n_lo, n_hi);
    if (kind == ModelKind::FourLevelNIC) pr.p = rng.uniform(-0.999, 0.999);
    return pr;
}

constexpr ModelKind kKinds[] = {ModelKind::ThreeLevelI, ModelKind::ThreeLevelII,
                                ModelKind::FourLevelNIC};

std::string fmt(double v) { return io::format_double(v); }

CheckResult check_null_eigenvalue(std::uint64_t seed) {
    SplitMix64 rng(seed);
    double worst = 0.0;
    for (ModelKind kind : kKinds)
        for (int i = 0; i < 200; ++i) {
            EngineParams pr = random_params(rng, kind, 0.0);
            const auto xi0 = dominant_eigenvalue(build_tilted_liouvillian(kind, pr, 0.0));
            worst = std::max(worst, std::abs(xi0));
        }
    return {"null-eigenvalue", worst < 1e-10, false, "max |xi(0)| = " + fmt(worst)};
}

CheckResult check_conjugation(std::uint64_t seed) {
    SplitMix64 rng(seed + 1);
    double worst = 0.0;
    for (ModelKind kind : kKinds)
        for (int i = 0; i < 100; ++i) {
            EngineParams pr = random_params(rng, kind);
            const double chi = rng.uniform(1e-3, 1.0);
            const auto xp = dominant_eigenvalue(build_tilted_liouvillian(kind, pr, chi));
            const auto xm = dominant_eigenvalue(build_tilted_liouvillian(kind, pr, -chi));
            worst = std::max(worst, std::abs(xm - std::conj(xp)));
        }
    return {"conjugation-symmetry", worst < 1e-9, false,
            "max |xi(-chi) - conj(xi(chi))| = " + fmt(worst)};
}

CheckResult check_method_agreement(std::uint64_t seed) {
    SplitMix64 rng(seed + 2);
    double worst = 0.0;
    int used = 0;
    for (ModelKind kind : kKinds)
        for (int i = 0; i < 100; ++i) {
            EngineParams pr = random_params(rng, kind, 0.0);
            pr.lambda = rng.uniform(0.01, 1.0);
            const Cumulants a = cumulants_eig_fd(kind, pr);
            const Cumulants b = cumulants_charpoly(kind, pr);
            if (std::abs(a.current) < 1e-10) continue;
            ++used;
            worst = std::max(worst, std::abs(a.current - b.current) / std::abs(a.current));
            worst = std::max(worst, std::abs(a.variance - b.variance) / std::abs(a.variance));
        }
    return {"method-agreement", worst < 1e-5, false,
            "max rel deviation " + fmt(worst) + " over " + std::to_string(used) + " points"};
}

CheckResult check_steady_state_consistency(std::uint64_t seed) {
    SplitMix64 rng(seed + 3);
    double worst = 0.0;
    for (ModelKind kind : kKinds)
        for (int i = 0; i < 100; ++i) {
            EngineParams pr = random_params(rng, kind);
            pr.lambda = rng.uniform(0.01, 1.0);
            const double direct = cold_current_from_state(kind, pr, steady_state(kind, pr));
            const double fcs = cumulants_charpoly(kind, pr).current;
            if (std::abs(fcs) < 1e-10) continue;
            worst = std::max(worst, std::abs(direct - fcs) / std::abs(fcs));
        }
    return {"steady-state-consistency", worst < 1e-8, false,
            "max rel deviation " + fmt(worst)};
}

CheckResult check_closed_form_current(std::uint64_t seed) {
    SplitMix64 rng(seed + 4);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        EngineParams pr = random_params(rng, ModelKind::ThreeLevelI, 0.0);
        pr.lambda = rng.uniform(0.01, 1.0);
        const double closed = current_model1_closed_form(pr);
        if (std::abs(closed) < 1e-12) continue;
        const double a = cumulants_eig_fd(ModelKind::ThreeLevelI, pr).current;
        const double b = cumulants_charpoly(ModelKind::ThreeLevelI, pr).current;
        worst = std::max(worst, std::abs(a - closed) / std::abs(closed));
        worst = std::max(worst, std::abs(b - closed) / std::abs(closed));
    }
    return {"closed-form-current", worst < 1e-6, false, "max rel deviation " + fmt(worst)};
}

CheckResult check_scaling_invariance(std::uint64_t seed) {
    SplitMix64 rng(seed + 5);
    const std::vector<double> ks{0.1, 0.5, 2.0, 10.0};
    double worst = 0.0;
    for (ModelKind kind : kKinds)
        for (int i = 0; i < 50; ++i) {
            EngineParams pr = random_params(rng, kind, 0.1);
            if (std::abs(pr.n_h - pr.n_c) < 0.05) continue;
            worst = std::max(worst, scaling_check(kind, pr, ks));
        }
    return {"scaling-invariance", worst < 1e-8, false, "max |dQ| = " + fmt(worst)};
}

CheckResult check_qpop_bound(std::uint64_t seed) {
    SplitMix64 rng(seed + 6);
    double lowest = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 100000; ++i) {
        const double nh = rng.uniform(1e-4, 10.0);
        const double nc = rng.uniform(1e-4, 10.0);
        if (nh == nc) continue;
        lowest = std::min(lowest, q_pop(nh, nc));
    }
    return {"qpop-lower-bound", lowest >= 2.0 - 1e-12, false, "min = " + fmt(lowest)};
}

CheckResult check_threshold_saturation(std::uint64_t seed) {
    SplitMix64 rng(seed + 7);
    double worst = 0.0;
    for (ModelKind kind : {ModelKind::ThreeLevelI, ModelKind::ThreeLevelII})
        for (int i = 0; i < 20; ++i) {
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
    return {"threshold-saturation", worst < 1e-3, false, "max |q - 2| = " + fmt(worst)};
}

// scaled-occupation protocols need the shrinking current to stay above the
// degeneracy guard, so these draws avoid the weakest corners
EngineParams high_t_draw(SplitMix64& rng) {
    EngineParams pr;
    pr.gamma_h = rng.uniform(0.2, 2.0);
    pr.gamma_c = rng.uniform(0.2, 2.0);
    pr.lambda = rng.uniform(0.3, 1.0);
    pr.n_c = rng.uniform(0.5, 5.0);
    pr.n_h = pr.n_c + rng.uniform(1.0, 3.0);
    return pr;
}

CheckResult check_high_t_three_level(std::uint64_t seed) {
    SplitMix64 rng(seed + 8);
    double worst = 0.0;
    bool violated = true;
    for (ModelKind kind : {ModelKind::ThreeLevelI, ModelKind::ThreeLevelII})
        for (int i = 0; i < 20; ++i) {
            EngineParams scaled = high_t_draw(rng);
            scaled.n_h *= 1e4;
            scaled.n_c *= 1e4;
            const double q = tur_q(kind, scaled).q;
            const double qht = q_ht_closed_form(scaled);
            worst = std::max(worst, std::abs(q - qht));
            violated = violated && printed::q_ht_violation(scaled) > 0.0;
        }
    return {"high-T-three-level", worst < 1e-2 && violated, false,
            "max |q - q_HT| = " + fmt(worst)};
}

CheckResult check_high_t_nic(std::uint64_t seed) {
    SplitMix64 rng(seed + 9);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        EngineParams pr = high_t_draw(rng);
        pr.p = rng.uniform(-0.9, 0.9);
        pr.n_h *= 1e4;
        pr.n_c *= 1e4;
        worst = std::max(worst, std::abs(tur_q(ModelKind::FourLevelNIC, pr).q - 2.0));
    }
    return {"high-T-NIC", worst < 1e-2, false, "max |q - 2| = " + fmt(worst)};
}

CheckResult check_endpoint_identity(std::uint64_t seed) {
    SplitMix64 rng(seed + 10);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        EngineParams pr;
        pr.gamma_h = rng.uniform(0.05, 2.0);
        pr.gamma_c = rng.uniform(0.05, 2.0);
        pr.lambda = rng.uniform(0.1, 1.0);
        pr.n_h = rng.uniform(0.5, 8.0);
        pr.n_c = rng.uniform(0.5, 8.0);
        if (std::abs(pr.n_h - pr.n_c) < 0.2) pr.n_h += 0.5;
        const double limit = q_nic_endpoint_limit(pr);
        const double pop = q_pop(pr.n_h, pr.n_c);
        worst = std::max(worst, std::abs(limit - pop) / pop);
    }
    return {"endpoint-identity", worst < 1e-6, false, "max rel deviation " + fmt(worst)};
}

CheckResult check_q_bound(std::uint64_t seed, int workers) {
    SweepSpec spec;
    spec.count = 20000;
    spec.seed = seed + 11;
    double lowest = std::numeric_limits<double>::infinity();
    for (ModelKind kind : kKinds) {
        spec.kind = kind;
        lowest = std::min(lowest, q_histogram(spec, CumulantMethod::CharPoly, workers).min_value);
    }
    return {"q-bound-guarnieri", lowest >= 1.0, false, "min q = " + fmt(lowest)};
}

// Gallavotti-Cohen style symmetry xi(chi) = xi(-chi + iA) with the affinity
// A = ln[n_h(n_c+1)/(n_c(n_h+1))]. Informational diagnostic only.
CheckResult check_fluctuation_theorem(std::uint64_t seed) {
    SplitMix64 rng(seed + 12);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        EngineParams pr = random_params(rng, ModelKind::ThreeLevelI, 0.2, 5.0);
        const double A = std::log(pr.n_h * (pr.n_c + 1.0) / (pr.n_c * (pr.n_h + 1.0)));
        const double chi = rng.uniform(0.05, 0.5);
        const LindbladModel model = lindblad_model(ModelKind::ThreeLevelI, pr);
        TiltedLiouvillian La, Lb;
        La.kind = Lb.kind = ModelKind::ThreeLevelI;
        La.chi = chi;
        Lb.chi = -chi;
        La.entries = superoperator_matrix(model, Complex(chi, 0.0));
        Lb.entries = superoperator_matrix(model, Complex(-chi, A));
        const auto xa = dominant_eigenvalue(La);
        const auto xb = dominant_eigenvalue(Lb);
        worst = std::max(worst, std::abs(xa - xb));
    }
    return {"fluctuation-theorem", worst < 1e-9, true,
            "max |xi(chi) - xi(-chi + iA)| = " + fmt(worst) + " (informational)"};
}

CheckResult check_trajectory(std::uint64_t seed) {
    EngineParams pr{0.1, 2.0, 0.2, 5.0, 0.027};
    const Cumulants mc =
        trajectory_cumulants(ModelKind::ThreeLevelI, pr, 0.0, 10000, seed + 13);
    const Cumulants cp = cumulants_charpoly(ModelKind::ThreeLevelI, pr);
    const double dev_i =
        std::abs(mc.current - cp.current) / mc.diagnostics.at("se_current");
    const double dev_v =
        std::abs(mc.variance - cp.variance) / mc.diagnostics.at("se_variance");
    return {"trajectory-agreement", dev_i < 3.0 && dev_v < 3.0, false,
            "current " + fmt(dev_i) + " SE, variance " + fmt(dev_v) + " SE"};
}

CheckResult check_discrepancy_report() {
    const std::string rep = discrepancy_report();
    return {"discrepancy-report", !rep.empty(), false,
            std::to_string(rep.size()) + " bytes"};
}

} // namespace

std::vector<CheckResult> run_validation(const ValidationOptions& opts) {
    std::vector<CheckResult> out;
    out.push_back(check_null_eigenvalue(opts.seed));
    out.push_back(check_conjugation(opts.seed));
    out.push_back(check_method_agreement(opts.seed));
    out.push_back(check_steady_state_consistency(opts.seed));
    out.push_back(check_closed_form_current(opts.seed));
    out.push_back(check_scaling_invariance(opts.seed));
    out.push_back(check_qpop_bound(opts.seed));
    out.push_back(check_threshold_saturation(opts.seed));
    out.push_back(check_high_t_three_level(opts.seed));
    out.push_back(check_high_t_nic(opts.seed));
    out.push_back(check_endpoint_identity(opts.seed));
    out.push_back(check_q_bound(opts.seed, opts.workers));
    out.push_back(check_fluctuation_theorem(opts.seed));
    if (opts.with_trajectory) out.push_back(check_trajectory(opts.seed));
    out.push_back(check_discrepancy_report());
    return out;
}

namespace {

void report_value(std::ostringstream& os, const std::string& label, double printed,
                  double truth) {
    const double rel = (printed - truth) / (truth == 0.0 ? 1.0 : truth);
    os << "  " << label << ": printed " << fmt(printed) << ", pipeline " << fmt(truth)
       << ", signed rel err " << fmt(rel) << "\n";
}

} // namespace

std::string discrepancy_report() {
    std::ostringstream os;
    os << "Closed-form discrepancy report (FCS pipeline is ground truth)\n";
    os << "==============================================================\n\n";

    const EngineParams ref{0.1, 2.0, 0.2, 5.0, 0.027};
    os << "Reference point: gamma_h=0.1 gamma_c=2 lambda=0.2 n_h=5 n_c=0.027\n\n";

    {
        os << "[Model I TUR quantifier]\n";
        const double truth = tur_q(ModelKind::ThreeLevelI, ref).q;
        report_value(os, "Q^I as printed", q1_closed_form(ref), truth);
        report_value(os, "Q^I with occupations restored in G, H",
                     printed::q1_repaired(ref), truth);
        os << "  note: the printed G and H brackets end in 6(2+3n) with no\n"
              "  occupation factor; restoring n_h / n_c (as in the c2 display)\n"
              "  reproduces the pipeline exactly.\n\n";
    }
    {
        os << "[Model II TUR quantifier]\n";
        const double truth = tur_q(ModelKind::ThreeLevelII, ref).q;
        report_value(os, "Q^II as printed", q2_closed_form(ref), truth);
        os << "  note: the printed bracket mixes unprimed A, B, C into a primed\n"
              "  expression and leaves C' unused; no single-symbol repair matches\n"
              "  the pipeline, so the full expression is treated as unreliable.\n\n";
    }
    {
        os << "[Model I characteristic-polynomial coefficients]\n";
        auto L_at = [&](double chi) {
            return build_tilted_liouvillian(ModelKind::ThreeLevelI, ref, chi);
        };
        const CharPolyCoefficients num = charpoly_coeffs_numeric(L_at);
        const CharPolyCoefficients pp = printed::charpoly_printed_model1(ref);
        const CharPolyCoefficients rp = printed::charpoly_repaired_model1(ref);
        report_value(os, "c0'  printed", pp.c0p, num.c0p);
        report_value(os, "c0'' printed", pp.c0pp, num.c0pp);
        report_value(os, "c1   printed", pp.c1, num.c1);
        report_value(os, "c1'  printed", pp.c1p, num.c1p);
        report_value(os, "c2   printed", pp.c2, num.c2);
        report_value(os, "c1   repaired", rp.c1, num.c1);
        report_value(os, "c2   repaired", rp.c2, num.c2);
        os << "  note: under the det(L - xi I) sign convention the printed c0',\n"
              "  c0'' and c1' are exact; c1 misses a lambda^2 on its second group\n"
              "  and the sign consistent with I = -c0'/c1; c2 misses rate factors\n"
              "  on its bracket terms and lambda^2 on its final group.\n\n";
    }
    os << "[Transcription notes]\n"
          "  - The Model II coherence equation prints the drive term of\n"
          "    d/dt rho_g0 with the sign opposite to the one required for\n"
          "    consistency with the population equations; the generator is\n"
          "    built from the dissipator form.\n"
          "  - The four-level d/dt rho_22 line omits the sign of its\n"
          "    cross-coupling group; the dissipator form fixes it to minus.\n"
          "  - One entry of the printed five-component supermatrix carries a\n"
          "    stray token; the row is reconstructed from the component\n"
          "    equations.\n";
    return os.str();
}

} // namespace masertur
