// Acceptance suite: runs every contract of the artifact end to end against
// the shipped configs and prints one pass/fail line per criterion.
//
// Usage: acceptance [configs_dir]

#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "fracgs/checks.hpp"
#include "fracgs/cli.hpp"
#include "fracgs/config.hpp"
#include "fracgs/nehari.hpp"
#include "fracgs/random_fields.hpp"
#include "fracgs/solver.hpp"
#include "fracgs/spectral.hpp"
#include "support.hpp"

using namespace fracgs;
using fracgs::test::rel_err;

namespace {

int g_failures = 0;

void report(const char* name, bool ok, const std::string& detail = {}) {
    std::printf("[%s] %s%s%s\n", ok ? "PASS" : "FAIL", name, detail.empty() ? "" : " -- ",
                detail.c_str());
    if (!ok) ++g_failures;
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

// ---- C1: spectral symbol exactness and composition -------------------------

void criterion_spectral_exactness() {
    const GridPtr g = make_grid(8.0, 512);
    double worst = 0.0;
    for (double s : {0.25, 0.5}) {
        for (int m : {1, 2, 7, 33, 120, 256}) {
            const double k = g->freq(m);
            const Field f = sample(g, [k](double x) { return std::cos(k * x); });
            const Field out = frac_laplacian(f, s);
            const double symbol = std::pow(k, 2.0 * s);
            for (int j = 0; j < g->n; ++j) {
                worst = std::max(worst, std::abs(out[j] - symbol * f[j]) / symbol);
            }
        }
    }
    std::mt19937_64 rng(1);
    const Field f = random_smooth_field(g, rng, 6.0);
    const Field twice = frac_laplacian(frac_laplacian(f, 0.25), 0.25);
    const Field once = frac_laplacian(f, 0.5);
    double num = 0.0, den = 0.0;
    for (int j = 0; j < g->n; ++j) {
        num += (twice[j] - once[j]) * (twice[j] - once[j]);
        den += once[j] * once[j];
    }
    const double comp = std::sqrt(num / den);
    report("C1 spectral symbol exactness + composition",
           worst <= 1e-10 && comp <= 1e-10,
           "plane-wave err " + fmt(worst) + ", composition err " + fmt(comp));
}

// ---- C2: Gagliardo quadrature vs multiplier norm ----------------------------

void criterion_seminorm_identity() {
    const GridPtr g = make_grid(16.0, 2048);
    std::mt19937_64 rng(2);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        const Field env = gaussian_bump(g, 0.0, 1.5 + 0.2 * i, 1.0);
        const Field noise = random_smooth_field(g, rng, 3.0);
        Field f(g);
        for (int j = 0; j < g->n; ++j) f[j] = env[j] * noise[j];
        const double quad = gagliardo_seminorm_sq(f);
        const double mult = 2.0 * M_PI * quarter_kinetic_sq(f);
        worst = std::max(worst, rel_err(quad, mult));
    }
    report("C2 seminorm identity (quadrature vs multiplier)", worst <= 0.02,
           "worst relative gap " + fmt(worst) + " over 10 fields");
}

// ---- C3: coercivity of the quadratic part -----------------------------------

void criterion_coercivity(const RunConfig& per_cfg, const RunConfig& asym_cfg) {
    double worst = 1e300;
    for (const RunConfig* cfg : {&per_cfg, &asym_cfg}) {
        const GridPtr g = build_grid(*cfg);
        const PotentialSet pot = build_potentials(*cfg, g);
        std::mt19937_64 rng(3);
        for (int i = 0; i < 1000; ++i) {
            const StatePair s = random_smooth_state(g, rng, 6.0);
            const double a = quadratic_part(s, pot);
            const double e = norm_E_sq(s, pot);
            worst = std::min(worst, (a - (1.0 - pot.delta) * e) / e);
        }
    }
    report("C3 coercivity on 1000 random states per set", worst >= -1e-12,
           "worst margin " + fmt(worst));
}

// ---- C4: pure-power Nehari projection oracle --------------------------------

void criterion_fibering_oracle(const RunConfig& cfg) {
    const GridPtr g = build_grid(cfg);
    const PotentialSet pot = build_potentials(cfg, g);
    NonlinearityPair pp = cfg.nl;
    pp[0].mode = NonlinearityMode::pure_power;
    pp[1].mode = NonlinearityMode::pure_power;
    const double q = pp[0].q;
    pp[1].q = q;
    pp[1].theta = pp[0].theta;

    std::mt19937_64 rng(4);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const StatePair s = random_smooth_state(g, rng, 6.0);
        const double A = quadratic_part(s, pot);
        double B = 0.0;
        for (int j = 0; j < s.u.size(); ++j) {
            B += std::pow(std::abs(s.u[j]), q) + std::pow(std::abs(s.v[j]), q);
        }
        B *= g->dx;
        const double t_closed = std::pow(A / (q * pp[0].theta * B), 1.0 / (q - 2.0));
        worst = std::max(worst, rel_err(project(s, pot, pp, 1e-12).t0, t_closed));
    }
    report("C4 pure-power projection matches closed form", worst <= 1e-8,
           "worst relative t0 error " + fmt(worst));
}

// ---- C5: projection properties ----------------------------------------------

void criterion_projection_properties(const RunConfig& cfg) {
    const GridPtr g = build_grid(cfg);
    const PotentialSet pot = build_potentials(cfg, g);
    std::mt19937_64 rng(5);
    bool unique_ok = true, ray_ok = true, sign_ok = true;
    double worst_defect = 0.0;
    for (int i = 0; i < 100; ++i) {
        StatePair s = random_smooth_state(g, rng, 6.0);
        s = 0.8 * s;
        const FiberingResult fr = project(s, pot, cfg.nl, 1e-12);

        RayCache ray(s, pot, cfg.nl);
        const double guard = 0.99 * std::sqrt(kExpArgGuard / cfg.nl[0].alpha0) / max_abs(s);
        const double lo = 1e-3 * fr.t0, hi = std::min(1e3 * fr.t0, guard);
        int changes = 0;
        double prev = ray.gprime(lo);
        for (int k = 1; k < 200; ++k) {
            const double t = lo * std::pow(hi / lo, k / 199.0);
            const double cur = ray.gprime(t);
            if ((prev > 0.0) != (cur > 0.0)) ++changes;
            prev = cur;
        }
        unique_ok = unique_ok && changes == 1;

        const double g0 = ray.g(fr.t0);
        const double defect = max_on_ray_check(s, pot, cfg.nl, fr.t0);
        worst_defect = std::max(worst_defect, defect);
        ray_ok = ray_ok && defect <= 1e-8 * std::abs(g0) + 1e-12;

        const StatePair up = 1.2 * fr.projected;
        sign_ok = sign_ok && nehari_residual(up, pot, cfg.nl) < 0.0 &&
                  project(up, pot, cfg.nl, 1e-12).t0 < 1.0;
    }
    report("C5 projection: unique root, ray maximum, residual sign law",
           unique_ok && ray_ok && sign_ok, "worst ray defect " + fmt(worst_defect));
}

// ---- C6: closed form of the quotient envelope --------------------------------

void criterion_ray_envelope(const RunConfig& cfg) {
    const GridPtr g = build_grid(cfg);
    const PotentialSet pot = build_potentials(cfg, g);
    std::mt19937_64 rng(6);
    const double q = cfg.nl[0].q;
    const double theta = std::min(cfg.nl[0].theta, cfg.nl[1].theta);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const StatePair s = random_smooth_state(g, rng, 6.0);
        const auto [numeric, closed] = ray_envelope_check(s, pot, q, theta);
        worst = std::max(worst, rel_err(numeric, closed));
    }
    report("C6 ray-envelope closed form vs numeric maximization", worst <= 1e-8,
           "worst relative gap " + fmt(worst));
}

// ---- C7: gradient exactness ---------------------------------------------------

void criterion_gradient(const RunConfig& cfg) {
    const GridPtr g = build_grid(cfg);
    const PotentialSet pot = build_potentials(cfg, g);
    std::mt19937_64 rng(7);
    const double h = 1e-5;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        StatePair s = random_smooth_state(g, rng, 6.0);
        s = 0.8 * s;
        const StatePair d = random_smooth_state(g, rng, 6.0);
        const StatePair grad = gradient(s, pot, cfg.nl);
        const double analytic = l2_inner(grad.u, d.u) + l2_inner(grad.v, d.v);
        const double ep = energy({s.u + h * d.u, s.v + h * d.v}, pot, cfg.nl).total;
        const double em = energy({s.u - h * d.u, s.v - h * d.v}, pot, cfg.nl).total;
        const double fd = (ep - em) / (2.0 * h);
        worst = std::max(worst,
                         std::abs(fd - analytic) / (std::abs(fd) + std::abs(analytic) + 1e-12));
    }
    report("C7 gradient matches directional derivatives", worst <= 1e-5,
           "worst relative error " + fmt(worst));
}

// ---- C8: solver contract on the default periodic config ----------------------

GroundStateResult criterion_solver_contract(const RunConfig& cfg) {
    const GridPtr g = build_grid(cfg);
    const PotentialSet pot = build_potentials(cfg, g);

    EstimatorConfig quick;
    quick.n_starts = 8;
    const ThetaAdmissibility adm = check_theta_admissibility(pot, cfg.nl, cfg.omega, quick);

    const GroundStateResult res = minimize_ground_state(pot, cfg.nl, cfg.solver);

    bool energies_ok = true;
    for (size_t i = 0; i < res.start_energies.size(); ++i) {
        if (res.start_converged[i]) energies_ok = energies_ok && res.start_energies[i] > 0.0;
    }
    const double mu = std::min(cfg.nl[0].mu, cfg.nl[1].mu);
    const double floor_c = (0.5 - 1.0 / mu) * (1.0 - pot.delta);
    bool floor_ok = true;
    for (const auto& it : res.trace) {
        floor_ok = floor_ok && it.energy >= floor_c * it.norm_E_sq - 1e-10;
    }

    const bool ok = adm.admissible && res.n_converged >= 12 && energies_ok &&
                    std::abs(res.lagrange_multiplier) <= 1e-6 && floor_ok && res.converged;
    report("C8 solver contract (converged starts, positivity, multiplier, floor)", ok,
           fmt(res.n_converged * 1.0) + "/16 converged, c_N " + fmt(res.energy) +
               ", |eta| " + fmt(std::abs(res.lagrange_multiplier)) + ", theta0 " +
               fmt(adm.theta0_value));
    return res;
}

// ---- C9: translation invariance and recentering neutrality -------------------

void criterion_translation(const RunConfig& cfg, const GroundStateResult& solved) {
    const GridPtr g = build_grid(cfg);
    const PotentialSet pot = build_potentials(cfg, g);
    std::mt19937_64 rng(9);
    const int per = g->nodes_per_unit();
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        StatePair s = random_smooth_state(g, rng, 6.0);
        s = 0.7 * s;
        const double base = energy(s, pot, cfg.nl).total;
        for (int units : {1, -2, 5, 11}) {
            const double shifted =
                energy(shift(s, static_cast<long>(units) * per), pot, cfg.nl).total;
            worst = std::max(worst, rel_err(base, shifted));
        }
    }
    // Recentering neutrality on the converged minimizer itself.
    const double e0 = energy(solved.state, pot, cfg.nl).total;
    const long c = vanishing_argmax_node(solved.state, 1.0, true);
    const double e1 = energy(shift(solved.state, c - g->n / 2), pot, cfg.nl).total;
    worst = std::max(worst, rel_err(e0, e1));
    report("C9 integer-shift invariance and recentering neutrality", worst <= 1e-10,
           "worst relative drift " + fmt(worst));
}

// ---- C10: asymptotic level ordering -------------------------------------------

void criterion_level_ordering(const RunConfig& cfg) {
    const GridPtr g = build_grid(cfg);
    const PotentialSet pot = build_potentials(cfg, g);
    const ComparisonReport rep = compare_levels(pot, cfg.nl, cfg.solver);
    const double threshold = 5.0 * cfg.solver.grad_tol;
    const bool ok = rep.margin > threshold && rep.certificate < rep.c_periodic;
    report("C10 asymptotic level below periodic level, with certificate", ok,
           "margin " + fmt(rep.margin) + ", certificate margin " +
               fmt(rep.certificate_margin));
}

// ---- C11: exponential-integral boundedness ------------------------------------

void criterion_tm_boundedness(const RunConfig& cfg) {
    const GridPtr g = build_grid(cfg);
    const TmSweepResult sweep = tm_ratio_sweep(g, 200, cfg.omega);
    const double frozen = 1.102733901992742;  // first-run value on this family
    const double drift = std::abs(sweep.sup_ratio - frozen) / frozen;
    const bool ok = std::isfinite(sweep.sup_ratio) && sweep.report.passed && drift <= 0.05;
    report("C11 exponential-ratio sweep bounded with stable sup", ok,
           "sup " + fmt(sweep.sup_ratio) + ", drift " + fmt(drift));
}

// ---- C12: splitting defect ------------------------------------------------------

void criterion_brezis_lieb(const RunConfig& cfg) {
    const GridPtr g = make_grid(64.0, 2048);
    const Field u = gaussian_bump(g, 0.0, 1.0, 1.0);
    const Field w = gaussian_bump(g, 0.0, 1.0, 0.8);
    const BrezisLiebResult res = brezis_lieb_check(u, w, {4.0, 8.0, 16.0}, cfg.nl[0]);
    report("C12 splitting defect decreases and vanishes at separation", res.report.passed,
           "defects " + fmt(res.defects[0]) + " > " + fmt(res.defects[1]) + " > " +
               fmt(res.defects[2]));
}

// ---- C13: validators accept the defaults and reject the broken variants --------

void criterion_validators(const RunConfig& cfg) {
    bool ok = true;
    std::string why;

    const GridPtr g = build_grid(cfg);
    const PotentialSet pot = build_potentials(cfg, g);
    if (!validate_potentials(pot).all_passed()) {
        ok = false;
        why += "default potentials rejected; ";
    }
    for (const auto& spec : cfg.nl) {
        if (!validate_nonlinearity(spec).all_passed()) {
            ok = false;
            why += "default nonlinearity rejected; ";
        }
    }

    NonlinearitySpec bad_mu = cfg.nl[0];
    bad_mu.mu = bad_mu.q + 1.0;
    const ValidationReport r1 = validate_nonlinearity(bad_mu);
    if (r1.all_passed() || !r1.find("H3") || r1.find("H3")->passed) {
        ok = false;
        why += "mu>q not rejected as H3; ";
    }

    PotentialSet bad_delta = pot;
    bad_delta.delta = 1.0;
    const ValidationReport r2 = validate_potentials(bad_delta);
    if (r2.all_passed() || !r2.find("V3") || r2.find("V3")->passed) {
        ok = false;
        why += "delta>=1 not rejected as V3; ";
    }

    PotentialSet bad_periodic = pot;
    bad_periodic.V1 = sample(g, [](double x) { return x * x * 0.01 + 1.0; });
    const ValidationReport r3 = validate_potentials(bad_periodic);
    if (r3.all_passed() || !r3.find("V1") || r3.find("V1")->passed) {
        ok = false;
        why += "aperiodic V not rejected as V1; ";
    }

    report("C13 validators: defaults accepted, corruptions rejected by name", ok, why);
}

// ---- C14: determinism ------------------------------------------------------------

void criterion_determinism(const RunConfig& cfg, const GroundStateResult& first) {
    const GridPtr g = build_grid(cfg);
    const PotentialSet pot = build_potentials(cfg, g);
    const GroundStateResult second = minimize_ground_state(pot, cfg.nl, cfg.solver);
    const bool ok = std::memcmp(&first.energy, &second.energy, sizeof(double)) == 0 &&
                    std::memcmp(&first.grad_norm, &second.grad_norm, sizeof(double)) == 0 &&
                    std::memcmp(&first.nehari_res, &second.nehari_res, sizeof(double)) == 0 &&
                    std::memcmp(&first.lagrange_multiplier, &second.lagrange_multiplier,
                                sizeof(double)) == 0 &&
                    first.start_index == second.start_index &&
                    first.iterations == second.iterations;
    report("C14 rerun with identical config and seed is bit-identical", ok,
           "energy " + fmt(second.energy));
}

// ---- finer grid run ---------------------------------------------------------------

void finer_grid_run(RunConfig cfg, const GroundStateResult& coarse) {
    cfg.N = 4096;
    cfg.solver.n_starts = 4;
    const GridPtr g = build_grid(cfg);
    const PotentialSet pot = build_potentials(cfg, g);
    const GroundStateResult res = minimize_ground_state(pot, cfg.nl, cfg.solver);
    report("N=4096 solver run (resolution control)", res.converged && res.energy > 0.0,
           "c_N " + fmt(res.energy) + " vs N=1024 " + fmt(coarse.energy));
}

}  // namespace

int main(int argc, char** argv) {
    const std::string dir = argc > 1 ? argv[1] : "configs";
    const RunConfig per_cfg = load_config(dir + "/periodic.json");
    const RunConfig asym_cfg = load_config(dir + "/asymptotic.json");

    criterion_spectral_exactness();
    criterion_seminorm_identity();
    criterion_coercivity(per_cfg, asym_cfg);
    criterion_fibering_oracle(per_cfg);
    criterion_projection_properties(per_cfg);
    criterion_ray_envelope(per_cfg);
    criterion_gradient(per_cfg);
    const GroundStateResult solved = criterion_solver_contract(per_cfg);
    criterion_translation(per_cfg, solved);
    criterion_level_ordering(asym_cfg);
    criterion_tm_boundedness(per_cfg);
    criterion_brezis_lieb(per_cfg);
    criterion_validators(per_cfg);
    criterion_determinism(per_cfg, solved);
    finer_grid_run(per_cfg, solved);

    if (g_failures == 0) {
        std::printf("acceptance: all criteria passed\n");
    } else {
        std::printf("acceptance: %d criteria FAILED\n", g_failures);
    }
    return g_failures == 0 ? 0 : 1;
}
