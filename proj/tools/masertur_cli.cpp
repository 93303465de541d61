// masertur_cli.cpp - command-line frontend: single-point evaluation, figure
// datasets, sweeps and the validation suite

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "masertur/io.hpp"
#include "masertur/validate.hpp"

namespace fs = std::filesystem;
using namespace masertur;

namespace {

std::string command_line(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

// plain key=value configuration: each key is a long flag without the
// dashes; flags given on the command line win
std::vector<std::string> apply_config_file(const std::vector<std::string>& args) {
    std::string path;
    std::vector<std::string> out;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            ++i;
            continue;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            continue;
        }
        out.push_back(args[i]);
    }
    if (path.empty()) return out;

    std::ifstream f(path);
    if (!f) throw invalid_params("cannot read config file '" + path + "'");
    std::string line;
    while (std::getline(f, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) continue;
        const std::string flag = "--" + key;
        bool overridden = false;
        for (const auto& a : out)
            if (a == flag || a.rfind(flag + "=", 0) == 0) {
                overridden = true;
                break;
            }
        if (!overridden) {
            out.push_back(flag);
            out.push_back(value);
        }
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> base_metadata(
    const std::string& cmd, std::optional<std::uint64_t> seed) {
    std::vector<std::pair<std::string, std::string>> kv;
    kv.emplace_back("command", cmd);
    if (seed) kv.emplace_back("seed", std::to_string(*seed));
    kv.emplace_back("version", io::version());
    kv.emplace_back("timestamp", io::timestamp());
    return kv;
}

void emit(const std::string& path, const std::string& contents) {
    if (path.empty() || path == "-") {
        std::cout << contents;
    } else {
        io::write_file(path, contents);
    }
}

struct EvalConfig {
    std::string model = "I";
    EngineParams params;
    std::string method = "charpoly";
    double step = 1e-3;
    std::string format = "csv";
    std::string out;
    double omega_h = 0.0, omega_c = 0.0; // optional power conversion
};

int cmd_eval(const EvalConfig& cfg, const std::string& cmdline) {
    const ModelKind kind = model_kind_from_string(cfg.model);
    std::optional<LevelFrequencies> freqs;
    if (cfg.omega_h != 0.0 || cfg.omega_c != 0.0)
        freqs = LevelFrequencies{cfg.omega_h, cfg.omega_c};
    const TurReport r =
        tur_q(kind, cfg.params, cumulant_method_from_string(cfg.method), cfg.step, freqs);

    if (cfg.format == "json") {
        io::json j{{"meta", io::json::object()}};
        for (const auto& [k, v] : base_metadata(cmdline, std::nullopt)) j["meta"][k] = v;
        j["report"] = io::to_json(r);
        emit(cfg.out, j.dump(2) + "\n");
    } else {
        std::string s = io::metadata_block(base_metadata(cmdline, std::nullopt));
        s += io::csv_header_tur() + "\n" + io::csv_row(r) + "\n";
        emit(cfg.out, s);
    }
    return 0;
}

struct FigureConfig {
    std::string which;
    std::string out_dir = ".";
    std::uint64_t samples = 1000000;
    std::uint64_t seed = 7451;
    int workers = 0;
    std::string method = "charpoly";
};

// short tag for file names (full precision lives in the metadata)
std::string short_tag(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
    return g;
}

void write_curve(const fs::path& path, const Curve& curve,
                 std::vector<std::pair<std::string, std::string>> meta) {
    io::write_file(path.string(), io::metadata_block(meta) + io::csv(curve));
}

int cmd_figure(const FigureConfig& cfg, const std::string& cmdline) {
    const CumulantMethod method = cumulant_method_from_string(cfg.method);
    fs::create_directories(cfg.out_dir);
    const fs::path dir = cfg.out_dir;
    auto meta = [&](std::initializer_list<std::pair<std::string, std::string>> extra) {
        auto kv = base_metadata(cmdline, cfg.seed);
        kv.insert(kv.end(), extra);
        return kv;
    };

    if (cfg.which == "fig2") {
        const EngineParams base{0.1, 2.0, 0.2, 5.0, 0.027};
        const auto grid = linspace(0.01, 1.0, 100);
        for (auto [kind, tag] :
             {std::pair{ModelKind::ThreeLevelI, "model_I"},
              std::pair{ModelKind::ThreeLevelII, "model_II"}}) {
            const Curve c = lambda_curve(kind, base, grid, method);
            write_curve(dir / ("fig2_q_" + std::string(tag) + ".csv"), c,
                        meta({{"figure", "fig2"},
                              {"params", "gamma_h=0.1 gamma_c=2 n_h=5 n_c=0.027"}}));
            // the reliability inset reads the same points
            write_curve(dir / ("fig2_reliability_" + std::string(tag) + ".csv"), c,
                        meta({{"figure", "fig2-inset"},
                              {"column", "reliability"},
                              {"params", "gamma_h=0.1 gamma_c=2 n_h=5 n_c=0.027"}}));
        }
        return 0;
    }
    if (cfg.which == "fig3") {
        for (auto [kind, tag] : {std::pair{ModelKind::ThreeLevelI, "model_I"},
                                 std::pair{ModelKind::ThreeLevelII, "model_II"},
                                 std::pair{ModelKind::FourLevelNIC, "model_NIC"}}) {
            SweepSpec spec;
            spec.kind = kind;
            spec.count = cfg.samples;
            spec.seed = cfg.seed;
            const Histogram h = q_histogram(spec, method, cfg.workers);
            auto kv = meta({{"figure", "fig3"},
                            {"model", to_string(kind)},
                            {"samples", std::to_string(cfg.samples)},
                            {"bin_width", io::format_double(spec.bin_width)},
                            {"ranges",
                             "gamma in [1e-4,5], n in [0,10], lambda in [1e-4,1]"
                             + std::string(kind == ModelKind::FourLevelNIC
                                               ? ", p uniform in [-0.999,0.999]"
                                               : "")},
                            {"excluded", std::to_string(h.excluded)},
                            {"min_q", io::format_double(h.min_value)},
                            {"max_q", io::format_double(h.max_value)},
                            {"violation_fraction", io::format_double(h.violation_fraction)}});
            io::write_file((dir / ("fig3_histogram_" + std::string(tag) + ".csv")).string(),
                           io::metadata_block(kv) + io::csv(h));
        }
        return 0;
    }
    if (cfg.which == "fig4") {
        const EngineParams base{0.3, 0.03, 0.3, 6.0, 3.0};
        const auto grid = linspace(0.01, 1.0, 100);
        for (double p : {-0.945, 0.0, 0.7}) {
            EngineParams pr = base;
            pr.p = p;
            const Curve c = lambda_curve(ModelKind::FourLevelNIC, pr, grid, method);
            std::string tag = short_tag(p);
            write_curve(dir / ("fig4_q_nic_p_" + tag + ".csv"), c,
                        meta({{"figure", "fig4"},
                              {"p", tag},
                              {"params", "gamma_h=0.3 gamma_c=0.03 n_h=6 n_c=3"}}));
        }
        const Curve ref = lambda_curve(ModelKind::ThreeLevelI, base, grid, method);
        write_curve(dir / "fig4_q_model_I.csv", ref,
                    meta({{"figure", "fig4"},
                          {"params", "gamma_h=0.3 gamma_c=0.03 n_h=6 n_c=3"}}));
        return 0;
    }
    if (cfg.which == "fig5") {
        const EngineParams base{0.6, 0.4, 0.5, 5.0, 2.0};
        std::vector<double> grid;
        for (double p = -1.0; p <= 0.98 + 1e-12; p += 0.02) grid.push_back(p);
        for (double lam : {1.0, 0.5, 0.15}) {
            EngineParams pr = base;
            pr.lambda = lam;
            const Curve c = p_curve(pr, grid, method);
            write_curve(dir / ("fig5_q_nic_lambda_" + short_tag(lam) + ".csv"), c,
                        meta({{"figure", "fig5"},
                              {"lambda", short_tag(lam)},
                              {"params", "gamma_h=0.6 gamma_c=0.4 n_h=5 n_c=2"}}));
        }
        return 0;
    }
    throw invalid_params("unknown figure '" + cfg.which + "' (fig2|fig3|fig4|fig5)");
}

struct ValidateConfig {
    std::uint64_t seed = 12345;
    bool with_trajectory = false;
    int workers = 0;
    std::string report_out;
};

int cmd_validate(const ValidateConfig& cfg) {
    ValidationOptions opts;
    opts.seed = cfg.seed;
    opts.with_trajectory = cfg.with_trajectory;
    opts.workers = cfg.workers;
    const auto results = run_validation(opts);

    bool all_pass = true;
    for (const auto& r : results) {
        std::cout << r.name << ": " << (r.pass ? "PASS" : "FAIL") << " (" << r.detail
                  << ")" << (r.quarantined ? " [informational]" : "") << "\n";
        if (!r.quarantined) all_pass = all_pass && r.pass;
    }
    const std::string report = discrepancy_report();
    if (!cfg.report_out.empty()) {
        io::write_file(cfg.report_out, report);
        std::cout << "discrepancy report written to " << cfg.report_out << "\n";
    } else {
        std::cout << "\n" << report;
    }
    return all_pass ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"TUR statistics for three-level and four-level maser heat engines",
                 "masertur"};
    app.require_subcommand(1);

    EvalConfig ec;
    CLI::App* eval = app.add_subcommand("eval", "evaluate one operation point");
    std::string cfg_path; // consumed by apply_config_file before parsing
    eval->add_option("--config", cfg_path, "key=value configuration file; flags override");
    eval->add_option("--model", ec.model, "I, II or NIC")->required();
    eval->add_option("--gamma-h", ec.params.gamma_h, "hot coupling")->required();
    eval->add_option("--gamma-c", ec.params.gamma_c, "cold coupling")->required();
    eval->add_option("--lambda", ec.params.lambda, "matter-field coupling")->required();
    eval->add_option("--nh", ec.params.n_h, "hot occupation")->required();
    eval->add_option("--nc", ec.params.n_c, "cold occupation")->required();
    eval->add_option("--p", ec.params.p, "noise-induced coherence parameter");
    eval->add_option("--method", ec.method, "eigfd|charpoly|trajectory");
    eval->add_option("--step", ec.step, "counting-field step");
    eval->add_option("--format", ec.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    eval->add_option("--out", ec.out, "output file ('-' = stdout)");
    eval->add_option("--omega-h", ec.omega_h, "hot transition frequency");
    eval->add_option("--omega-c", ec.omega_c, "cold transition frequency");

    FigureConfig fc;
    CLI::App* figure = app.add_subcommand("figure", "emit a figure dataset");
    figure->add_option("--config", cfg_path, "key=value configuration file; flags override");
    figure->add_option("which", fc.which, "fig2|fig3|fig4|fig5")->required();
    figure->add_option("--out", fc.out_dir, "output directory")
        ->envname("MASERTUR_OUT_DIR");
    figure->add_option("--samples", fc.samples, "histogram sample count (fig3)");
    figure->add_option("--seed", fc.seed, "sweep seed");
    figure->add_option("--workers", fc.workers, "worker threads (0 = all cores)");
    figure->add_option("--method", fc.method, "eigfd|charpoly");

    ValidateConfig vc;
    CLI::App* validate = app.add_subcommand("validate", "run the validation suite");
    validate->add_option("--config", cfg_path, "key=value configuration file; flags override");
    validate->add_option("--seed", vc.seed, "randomized-check seed");
    validate->add_flag("--with-trajectory", vc.with_trajectory,
                       "include the Monte Carlo agreement check");
    validate->add_option("--workers", vc.workers, "worker threads");
    validate->add_option("--report-out", vc.report_out, "discrepancy report file");

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        args = apply_config_file(args);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    }
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    const std::string cmdline = command_line(argc, argv);
    try {
        if (eval->parsed()) return cmd_eval(ec, cmdline);
        if (figure->parsed()) return cmd_figure(fc, cmdline);
        if (validate->parsed()) return cmd_validate(vc);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 1;
}
