#include "fracgs/cli.hpp"

#include <omp.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "fracgs/checks.hpp"
#include "fracgs/config.hpp"
#include "fracgs/version.hpp"

namespace fracgs {

namespace {

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

struct CliOptions {
    std::string config_path;
    std::string output_dir_override;
    std::optional<unsigned long long> seed_override;
    int threads = 0;
};

RunConfig load_and_override(const CliOptions& opt) {
    RunConfig cfg = load_config(opt.config_path);
    if (!opt.output_dir_override.empty()) cfg.output_dir = opt.output_dir_override;
    if (opt.seed_override) cfg.solver.rng_seed = *opt.seed_override;
    if (opt.threads > 0) omp_set_num_threads(opt.threads);
    return cfg;
}

void ensure_writable_dir(const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    const fs::path probe = fs::path(dir) / ".write_probe";
    std::ofstream out(probe);
    if (!out) {
        throw ConfigError("output directory is not writable: " + dir);
    }
    out.close();
    fs::remove(probe, ec);
}

void write_profile(const std::string& path, const StatePair& s, const PotentialSet& pot) {
    std::ofstream out(path);
    out << "x,u,v,V1,V2,lambda\n";
    const GridPtr& g = s.u.grid;
    for (int j = 0; j < g->n; ++j) {
        out << fmt17(g->node(j)) << ',' << fmt17(s.u[j]) << ',' << fmt17(s.v[j]) << ','
            << fmt17(pot.effective_V1()[j]) << ',' << fmt17(pot.effective_V2()[j]) << ','
            << fmt17(pot.effective_lambda()[j]) << '\n';
    }
}

void write_trace(const std::string& path, const std::vector<IterateRecord>& trace) {
    std::ofstream out(path);
    out << "iter,energy,grad_norm,norm_E_sq,nehari_res\n";
    for (size_t i = 0; i < trace.size(); ++i) {
        out << i << ',' << fmt17(trace[i].energy) << ',' << fmt17(trace[i].grad_norm) << ','
            << fmt17(trace[i].norm_E_sq) << ',' << fmt17(trace[i].nehari_res) << '\n';
    }
}

void write_run_summary(const std::string& path, const RunConfig& cfg,
                       const GroundStateResult& res, const ThetaAdmissibility& adm,
                       const char* command = "solve") {
    std::ofstream out(path);
    out << "version: " << kVersion << '\n';
    out << "command: " << command << '\n';
    out << "flavor: "
        << (cfg.flavor == PotentialFlavor::periodic ? "periodic" : "asymptotically_periodic")
        << '\n';
    out << "config: " << cfg.echo_json() << '\n';
    out << "seed: " << cfg.solver.rng_seed << '\n';
    out << "converged: " << (res.converged ? "true" : "false") << '\n';
    out << "energy: " << fmt17(res.energy) << '\n';
    out << "grad_norm: " << fmt17(res.grad_norm) << '\n';
    out << "nehari_residual: " << fmt17(res.nehari_res) << '\n';
    out << "lagrange_multiplier: " << fmt17(res.lagrange_multiplier) << '\n';
    out << "iterations: " << res.iterations << '\n';
    out << "start_index: " << res.start_index << '\n';
    out << "n_starts: " << cfg.solver.n_starts << '\n';
    out << "n_converged: " << res.n_converged << '\n';
    out << "tail_mass: " << fmt17(res.tail_mass) << '\n';
    out << "tail_flag: " << (res.tail_flag ? "true" : "false") << '\n';
    out << "recenter_shifts: ";
    for (size_t i = 0; i < res.recenter_shifts.size(); ++i) {
        if (i) out << ',';
        out << res.recenter_shifts[i];
    }
    out << '\n';
    out << "theta_min: " << fmt17(adm.theta_min) << '\n';
    out << "theta0_estimate: " << fmt17(adm.theta0_value) << '\n';
    out << "theta_admissible: " << (adm.admissible ? "yes" : "no") << '\n';
}

int cmd_validate(const CliOptions& opt) {
    const RunConfig cfg = load_and_override(opt);
    const GridPtr grid = build_grid(cfg);
    const PotentialSet pot = build_potentials(cfg, grid);

    std::cout << "== potential assumptions ==\n";
    const ValidationReport pot_rep = validate_potentials(pot);
    std::cout << pot_rep.to_string();

    std::cout << "== nonlinearity assumptions ==\n";
    ValidationReport nl_rep;
    for (int i = 0; i < 2; ++i) {
        ValidationReport r = validate_nonlinearity(cfg.nl[static_cast<size_t>(i)]);
        for (auto& e : r.entries) {
            e.name = (i == 0 ? "f1." : "f2.") + e.name;
            nl_rep.entries.push_back(e);
        }
    }
    std::cout << nl_rep.to_string();

    if (!pot_rep.all_passed() || !nl_rep.all_passed()) {
        std::cout << "== estimated constants ==\nskipped (assumptions failed)\n";
        return kExitCheckFailed;
    }

    std::cout << "== estimated constants (upper bounds) ==\n";
    const ThetaAdmissibility adm = check_theta_admissibility(pot, cfg.nl, cfg.omega);
    std::cout << "S_q: " << fmt17(adm.S_q) << '\n';
    std::cout << "kappa_1: " << fmt17(adm.kappa1) << '\n';
    std::cout << "kappa_2: " << fmt17(adm.kappa2) << '\n';
    std::cout << "nu_1: " << fmt17(adm.nu1) << '\n';
    std::cout << "nu_2: " << fmt17(adm.nu2) << '\n';
    std::cout << "theta0: " << fmt17(adm.theta0_value) << '\n';
    std::cout << "theta: " << fmt17(adm.theta_min) << '\n';
    std::cout << "theta > theta0: " << (adm.admissible ? "yes" : "no") << '\n';

    return kExitOk;
}

int cmd_solve(const CliOptions& opt) {
    const RunConfig cfg = load_and_override(opt);
    const GridPtr grid = build_grid(cfg);
    const PotentialSet pot = build_potentials(cfg, grid);

    const ValidationReport rep = validate_potentials(pot);
    if (!rep.all_passed()) {
        std::cerr << "validation failed:\n" << rep.to_string();
        return kExitCheckFailed;
    }
    ensure_writable_dir(cfg.output_dir);

    EstimatorConfig quick;
    quick.n_starts = 6;
    quick.max_iters = 150;
    const ThetaAdmissibility adm = check_theta_admissibility(pot, cfg.nl, cfg.omega, quick);
    if (!adm.admissible) {
        std::cerr << "WARNING: theta = " << fmt17(adm.theta_min)
                  << " is not above the estimated threshold theta0 = "
                  << fmt17(adm.theta0_value) << "; the minimizer may not exist\n";
    }

    const GroundStateResult res = minimize_ground_state(pot, cfg.nl, cfg.solver);

    namespace fs = std::filesystem;
    write_run_summary((fs::path(cfg.output_dir) / "run_summary").string(), cfg, res, adm);
    write_profile((fs::path(cfg.output_dir) / "profile.csv").string(), res.state, pot);
    write_trace((fs::path(cfg.output_dir) / "trace.csv").string(), res.trace);

    std::cout << "energy: " << fmt17(res.energy) << '\n';
    std::cout << "converged: " << (res.converged ? "true" : "false") << " ("
              << res.n_converged << "/" << cfg.solver.n_starts << " starts)\n";
    return res.converged ? kExitOk : kExitUnconverged;
}

int cmd_compare(const CliOptions& opt) {
    const RunConfig cfg = load_and_override(opt);
    if (cfg.flavor != PotentialFlavor::asymptotically_periodic) {
        std::cerr << "compare requires an asymptotically_periodic config\n";
        return kExitUsage;
    }
    const GridPtr grid = build_grid(cfg);
    const PotentialSet pot = build_potentials(cfg, grid);
    const ValidationReport rep = validate_potentials(pot);
    if (!rep.all_passed()) {
        std::cerr << "validation failed:\n" << rep.to_string();
        return kExitCheckFailed;
    }
    ensure_writable_dir(cfg.output_dir);

    EstimatorConfig quick;
    quick.n_starts = 6;
    quick.max_iters = 150;
    const ThetaAdmissibility adm = check_theta_admissibility(pot, cfg.nl, cfg.omega, quick);
    if (!adm.admissible) {
        std::cerr << "WARNING: theta = " << fmt17(adm.theta_min)
                  << " is not above the estimated threshold theta0 = "
                  << fmt17(adm.theta0_value) << "; the minimizer may not exist\n";
    }

    ComparisonReport cr;
    try {
        cr = compare_levels(pot, cfg.nl, cfg.solver);
    } catch (const std::runtime_error& e) {
        std::cerr << e.what() << '\n';
        return kExitUnconverged;
    }

    namespace fs = std::filesystem;
    write_run_summary((fs::path(cfg.output_dir) / "run_summary_periodic").string(), cfg,
                      cr.periodic, adm, "compare");
    write_run_summary((fs::path(cfg.output_dir) / "run_summary_asymptotic").string(), cfg,
                      cr.asymptotic, adm, "compare");
    write_profile((fs::path(cfg.output_dir) / "profile_periodic.csv").string(),
                  cr.periodic.state, pot.periodic_limit());
    write_profile((fs::path(cfg.output_dir) / "profile_asymptotic.csv").string(),
                  cr.asymptotic.state, pot);
    write_trace((fs::path(cfg.output_dir) / "trace_periodic.csv").string(), cr.periodic.trace);
    write_trace((fs::path(cfg.output_dir) / "trace_asymptotic.csv").string(),
                cr.asymptotic.trace);

    const double threshold = 5.0 * cfg.solver.grad_tol;
    const bool ordering = cr.margin > threshold;
    const bool certificate = cr.certificate < cr.c_periodic;
    {
        std::ofstream out(fs::path(cfg.output_dir) / "compare_summary");
        out << "version: " << kVersion << '\n';
        out << "command: compare\n";
        out << "config: " << cfg.echo_json() << '\n';
        out << "c_periodic: " << fmt17(cr.c_periodic) << '\n';
        out << "c_asymptotic: " << fmt17(cr.c_asymptotic) << '\n';
        out << "certificate: " << fmt17(cr.certificate) << '\n';
        out << "margin: " << fmt17(cr.margin) << '\n';
        out << "certificate_margin: " << fmt17(cr.certificate_margin) << '\n';
        out << "threshold: " << fmt17(threshold) << '\n';
        out << "ordering_holds: " << (ordering ? "true" : "false") << '\n';
        out << "certificate_holds: " << (certificate ? "true" : "false") << '\n';
    }

    std::cout << "c_periodic:   " << fmt17(cr.c_periodic) << '\n';
    std::cout << "c_asymptotic: " << fmt17(cr.c_asymptotic) << '\n';
    std::cout << "margin:       " << fmt17(cr.margin) << '\n';
    std::cout << "certificate:  " << fmt17(cr.certificate) << '\n';
    return (ordering && certificate) ? kExitOk : kExitCheckFailed;
}

int cmd_checks(const CliOptions& opt) {
    const RunConfig cfg = load_and_override(opt);
    if (cfg.checks.empty()) {
        std::cout << "0 checks run\n";
        return kExitOk;
    }
    const std::vector<CheckReport> reports = run_named_checks(cfg, cfg.checks);
    bool all = true;
    for (const auto& r : reports) {
        std::cout << r.to_string() << '\n';
        all = all && r.passed;
    }
    std::cout << reports.size() << " checks run, "
              << (all ? "all passed" : "some FAILED") << '\n';
    return all ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"1D coupled fractional Schrodinger ground states on the Nehari set"};
    app.require_subcommand(1);

    CliOptions opt;
    auto add_common = [&](CLI::App* sub, bool with_output) {
        sub->add_option("--config", opt.config_path, "JSON config file")->required();
        if (with_output) {
            sub->add_option("--output-dir", opt.output_dir_override, "output directory");
        }
        sub->add_option("--seed", opt.seed_override, "override solver.rng_seed");
        sub->add_option("--threads", opt.threads, "OpenMP thread count");
    };

    CLI::App* validate = app.add_subcommand("validate", "check model assumptions");
    CLI::App* solve = app.add_subcommand("solve", "compute a ground state");
    CLI::App* compare = app.add_subcommand("compare", "periodic vs asymptotic levels");
    CLI::App* checks = app.add_subcommand("checks", "run property checks");
    add_common(validate, false);
    add_common(solve, true);
    add_common(compare, true);
    add_common(checks, false);

    std::vector<const char*> argv;
    argv.push_back("fracgs");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (validate->parsed()) return cmd_validate(opt);
        if (solve->parsed()) return cmd_solve(opt);
        if (compare->parsed()) return cmd_compare(opt);
        if (checks->parsed()) return cmd_checks(opt);
    } catch (const ConfigError& e) {
        std::cerr << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << '\n';
        return kExitCheckFailed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace fracgs
