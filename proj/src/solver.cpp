#include "fracgs/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "fracgs/analysis.hpp"
#include "fracgs/random_fields.hpp"
#include "fracgs/spectral.hpp"

namespace fracgs {

void SolverConfig::validate() const {
    if (max_iters <= 0 || n_starts <= 0 || recenter_every <= 0 || polish_iters < 0) {
        throw std::invalid_argument("SolverConfig: counts must be positive");
    }
    if (!(grad_tol > 0.0 && step_init > 0.0 && t_tol > 0.0 && armijo_c > 0.0)) {
        throw std::invalid_argument("SolverConfig: tolerances and steps must be positive");
    }
    if (!(shrink > 0.0 && shrink < 1.0)) {
        throw std::invalid_argument("SolverConfig: shrink factor must lie in (0,1)");
    }
}

namespace {

double field_mean(const Field& f) {
    double acc = 0.0;
    for (double x : f.values) acc += x;
    return acc / static_cast<double>(f.size());
}

double tail_mass_fraction(const StatePair& s) {
    const GridPtr& g = s.u.grid;
    double tail = 0.0, total = 0.0;
    for (int j = 0; j < g->n; ++j) {
        const double d = s.u[j] * s.u[j] + s.v[j] * s.v[j];
        total += d;
        if (std::abs(g->node(j)) >= 0.9 * g->L) tail += d;
    }
    return total > 0.0 ? tail / total : 0.0;
}

struct Preconditioner {
    double vbar1 = 0.0;
    double vbar2 = 0.0;

    StatePair apply(const StatePair& g) const {
        return {apply_inverse_symbol(g.u, vbar1), apply_inverse_symbol(g.v, vbar2)};
    }
};

void require_solvable(const PotentialSet& pot, const NonlinearityPair& nl,
                      const SolverConfig& cfg) {
    cfg.validate();
    ValidationReport rep = validate_potentials(pot);
    if (!rep.all_passed()) {
        throw std::invalid_argument("solver: potential set failed validation\n" +
                                    rep.to_string());
    }
    if (!cfg.allow_oracle_modes) {
        for (const auto& spec : nl) {
            if (spec.mode != NonlinearityMode::critical) {
                throw std::invalid_argument(
                    "solver: pure-power mode requires allow_oracle_modes");
            }
        }
    }
}

}  // namespace

GroundStateResult run_single_start(const StatePair& start, const PotentialSet& pot,
                                   const NonlinearityPair& nl, const SolverConfig& cfg,
                                   bool enable_recentering) {
    const GridPtr& g = start.u.grid;
    Preconditioner P{std::max(field_mean(pot.effective_V1()), 1e-12),
                     std::max(field_mean(pot.effective_V2()), 1e-12)};

    GroundStateResult res;

    StatePair state = start;
    if (!enable_recentering && pot.grid->supports_unit_period()) {
        // Asymptotic systems recenter once, before the first projection.
        const long c = vanishing_argmax_node(state, 1.0, true);
        const long z = c - g->n / 2;
        if (z != 0) {
            state = shift(state, z);
            res.recenter_shifts.push_back(z);
        }
    }

    FiberingResult fr0 = project(state, pot, nl, cfg.t_tol);
    state = std::move(fr0.projected);
    double E = energy(state, pot, nl).total;
    double state_residual = fr0.residual_at_t0;

    auto grad_measurements = [&](const StatePair& s) {
        StatePair grad = gradient(s, pot, nl);
        StatePair pg = P.apply(grad);
        const double gnorm =
            std::sqrt(l2_inner(pg.u, pg.u) + l2_inner(pg.v, pg.v)) /
            std::sqrt(norm_E_sq(s, pot));
        return std::make_tuple(std::move(grad), std::move(pg), gnorm);
    };

    int iters_done = 0;
    bool converged = false;

    auto descend = [&](int budget, bool recenter_allowed) {
        for (int it = 0; it < budget; ++it) {
            auto [grad, pg, gnorm] = grad_measurements(state);
            res.trace.push_back({E, norm_E_sq(state, pot), gnorm, state_residual});
            ++iters_done;
            if (gnorm <= cfg.grad_tol) {
                converged = true;
                return;
            }

            const double slope = -(l2_inner(grad.u, pg.u) + l2_inner(grad.v, pg.v));
            double alpha = cfg.step_init;
            bool accepted = false;
            for (int bt = 0; bt < 60; ++bt) {
                StatePair trial{state.u - alpha * pg.u, state.v - alpha * pg.v};
                try {
                    FiberingResult fr = project(trial, pot, nl, cfg.t_tol);
                    const double Et = energy(fr.projected, pot, nl).total;
                    if (Et <= E + cfg.armijo_c * alpha * slope + 1e-14 * std::abs(E)) {
                        state = std::move(fr.projected);
                        state_residual = fr.residual_at_t0;
                        E = Et;
                        accepted = true;
                        break;
                    }
                } catch (const std::overflow_error&) {
                    // Trial left the representable range; shrink and retry.
                } catch (const std::runtime_error&) {
                    // Degenerate trial ray; shrink and retry.
                }
                alpha *= cfg.shrink;
            }
            if (!accepted) {
                // Stalled line search: either we are at tolerance or we stop.
                auto [grad2, pg2, gnorm2] = grad_measurements(state);
                (void)grad2;
                (void)pg2;
                converged = gnorm2 <= cfg.grad_tol;
                return;
            }

            if (recenter_allowed && enable_recentering && (it + 1) % cfg.recenter_every == 0) {
                const long c = vanishing_argmax_node(state, 1.0, true);
                const long z = c - g->n / 2;
                if (z != 0) {
                    state = shift(state, z);
                    res.recenter_shifts.push_back(z);
                    E = energy(state, pot, nl).total;
                }
            }
        }
    };

    descend(cfg.max_iters, true);

    // Nonnegative representative: take moduli, reproject, polish.
    StatePair abs_state{abs(state.u), abs(state.v)};
    if (max_abs(abs_state) > 0.0) {
        FiberingResult fr = project(abs_state, pot, nl, cfg.t_tol);
        E = energy(fr.projected, pot, nl).total;
        state = std::move(fr.projected);
        state_residual = fr.residual_at_t0;
        converged = false;
        descend(cfg.polish_iters, false);
    }

    auto [grad, pg, gnorm] = grad_measurements(state);
    (void)grad;
    (void)pg;
    res.state = std::move(state);
    res.energy = E;
    res.grad_norm = gnorm;
    res.nehari_res = nehari_residual(res.state, pot, nl);
    res.lagrange_multiplier = res.nehari_res / norm_E_sq(res.state, pot);
    res.iterations = iters_done;
    res.converged = converged || gnorm <= cfg.grad_tol;
    res.tail_mass = tail_mass_fraction(res.state);
    res.tail_flag = res.tail_mass > cfg.tail_threshold;
    return res;
}

GroundStateResult minimize_from_starts(const std::vector<StatePair>& starts,
                                       const PotentialSet& pot, const NonlinearityPair& nl,
                                       const SolverConfig& cfg) {
    require_solvable(pot, nl, cfg);
    if (starts.empty()) throw std::invalid_argument("minimize_from_starts: no starts");
    const bool recenter = pot.flavor == PotentialFlavor::periodic;

    std::vector<GroundStateResult> results(starts.size());
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < static_cast<int>(starts.size()); ++i) {
        results[static_cast<size_t>(i)] =
            run_single_start(starts[static_cast<size_t>(i)], pot, nl, cfg, recenter);
        results[static_cast<size_t>(i)].start_index = i;
    }

    // Deterministic merge: lowest energy among converged starts, falling back
    // to the lowest energy overall; ties break on the start index.
    int best = -1;
    for (int pass = 0; pass < 2 && best < 0; ++pass) {
        for (int i = 0; i < static_cast<int>(results.size()); ++i) {
            const auto& r = results[static_cast<size_t>(i)];
            if (pass == 0 && !r.converged) continue;
            if (best < 0 || r.energy < results[static_cast<size_t>(best)].energy) best = i;
        }
    }

    GroundStateResult out = results[static_cast<size_t>(best)];
    out.n_converged = 0;
    for (const auto& r : results) {
        out.start_energies.push_back(r.energy);
        out.start_converged.push_back(r.converged);
        if (r.converged) ++out.n_converged;
    }
    return out;
}

GroundStateResult minimize_ground_state(const PotentialSet& pot, const NonlinearityPair& nl,
                                        const SolverConfig& cfg) {
    require_solvable(pot, nl, cfg);
    std::vector<StatePair> starts;
    starts.reserve(static_cast<size_t>(cfg.n_starts));
    for (int i = 0; i < cfg.n_starts; ++i) {
        std::mt19937_64 rng(cfg.rng_seed + static_cast<unsigned long long>(i) * 1000003ULL);
        Field u = random_gaussian_bump(pot.grid, rng);
        Field v = random_gaussian_bump(pot.grid, rng);
        starts.emplace_back(std::move(u), std::move(v));
    }
    return minimize_from_starts(starts, pot, nl, cfg);
}

double upper_bound_cN(const std::vector<StatePair>& trials, const PotentialSet& pot,
                      const NonlinearityPair& nl, double t_tol) {
    if (trials.empty()) throw std::invalid_argument("upper_bound_cN: no trials");
    double best = std::numeric_limits<double>::infinity();
    for (const auto& trial : trials) {
        const StatePair proj = project(trial, pot, nl, t_tol).projected;
        best = std::min(best, energy(proj, pot, nl).total);
    }
    return best;
}

ComparisonReport compare_levels(const PotentialSet& asym_pot, const NonlinearityPair& nl,
                                const SolverConfig& cfg) {
    if (asym_pot.flavor != PotentialFlavor::asymptotically_periodic) {
        throw std::invalid_argument("compare_levels: asymptotically periodic set required");
    }
    ComparisonReport rep;
    const PotentialSet periodic = asym_pot.periodic_limit();
    rep.periodic = minimize_ground_state(periodic, nl, cfg);
    rep.asymptotic = minimize_ground_state(asym_pot, nl, cfg);
    if (!rep.periodic.converged || !rep.asymptotic.converged) {
        throw std::runtime_error("compare_levels: a ground-state solve did not converge");
    }
    rep.c_periodic = rep.periodic.energy;
    rep.c_asymptotic = rep.asymptotic.energy;

    // Certificate: reproject the periodic minimizer onto the tilde Nehari set
    // and evaluate the tilde energy there.
    const StatePair proj = project(rep.periodic.state, asym_pot, nl, cfg.t_tol).projected;
    rep.certificate = energy(proj, asym_pot, nl).total;
    rep.margin = rep.c_periodic - rep.c_asymptotic;
    rep.certificate_margin = rep.c_periodic - rep.certificate;
    return rep;
}

ThetaAdmissibility check_theta_admissibility(const PotentialSet& pot,
                                             const NonlinearityPair& nl, double omega,
                                             const EstimatorConfig& est) {
    if (nl[0].q != nl[1].q) {
        throw std::invalid_argument("check_theta_admissibility: components must share q");
    }
    ThetaAdmissibility out;
    const double q = nl[0].q;
    EstimateResult sq = estimate_Sq(pot, q, est);
    EstimateResult k1 = estimate_kappa(pot.effective_V1(), est);
    EstimateResult k2 = estimate_kappa(pot.effective_V2(), est);
    EstimateResult n1 = estimate_nu(pot.effective_V1(), est);
    EstimateResult n2 = estimate_nu(pot.effective_V2(), est);

    out.S_q = sq.value;
    out.kappa1 = k1.value;
    out.kappa2 = k2.value;
    out.kappa = std::min(k1.value, k2.value);
    out.nu1 = n1.value;
    out.nu2 = n2.value;
    out.theta_min = std::min(nl[0].theta, nl[1].theta);
    const double alpha0 = std::max(nl[0].alpha0, nl[1].alpha0);
    const double mu = std::min(nl[0].mu, nl[1].mu);
    out.theta0_value = theta0(pot.delta, mu, q, alpha0, omega, out.kappa, out.S_q);
    out.admissible = out.theta_min > out.theta0_value;
    return out;
}

}  // namespace fracgs
