#pragma once

#include <vector>

#include "fracgs/functional.hpp"
#include "fracgs/nehari.hpp"

namespace fracgs {

struct SolverConfig {
    int max_iters = 2000;
    double grad_tol = 1e-6;   // on the preconditioned gradient norm / ||state||_E
    double step_init = 1.0;
    double shrink = 0.5;      // backtracking factor, in (0,1)
    double armijo_c = 1e-4;   // sufficient-decrease constant
    int recenter_every = 25;  // periodic flavor only
    int n_starts = 16;
    unsigned long long rng_seed = 12345;
    double t_tol = 1e-10;  // Nehari projection tolerance (relative on t0)
    int polish_iters = 50;
    double tail_threshold = 1e-3;  // relative L2 mass in the outer 10%
    bool allow_oracle_modes = false;

    void validate() const;
};

struct IterateRecord {
    double energy = 0.0;
    double norm_E_sq = 0.0;
    double grad_norm = 0.0;
    double nehari_res = 0.0;  // residual of the projection that produced the iterate
};

struct GroundStateResult {
    StatePair state;  // nonnegative after post-processing
    double energy = 0.0;
    double grad_norm = 0.0;
    double nehari_res = 0.0;
    double lagrange_multiplier = 0.0;
    int iterations = 0;
    int start_index = 0;
    double tail_mass = 0.0;
    std::vector<long> recenter_shifts;  // node shifts applied
    bool converged = false;
    bool tail_flag = false;
    std::vector<IterateRecord> trace;

    // Multi-start context.
    int n_converged = 0;
    std::vector<double> start_energies;
    std::vector<bool> start_converged;
};

/** One descent run from an explicit initial state: reproject onto the Nehari
 * set, precondition the gradient mode-wise by 1/(|k| + mean V_i), backtrack on
 * the reprojected energy, recenter by integer-period shifts (periodic flavor),
 * then take moduli, reproject and polish.
 */
GroundStateResult run_single_start(const StatePair& start, const PotentialSet& pot,
                                   const NonlinearityPair& nl, const SolverConfig& cfg,
                                   bool enable_recentering);

/// Multi-start driver over caller-provided initial states; best energy wins.
GroundStateResult minimize_from_starts(const std::vector<StatePair>& starts,
                                       const PotentialSet& pot, const NonlinearityPair& nl,
                                       const SolverConfig& cfg);

/// Standard entry: seeded random Gaussian-bump starts on the set's grid.
GroundStateResult minimize_ground_state(const PotentialSet& pot, const NonlinearityPair& nl,
                                        const SolverConfig& cfg);

/// min over trials of the energy at their Nehari projection — an upper bound
/// on the discrete ground level by construction.
double upper_bound_cN(const std::vector<StatePair>& trials, const PotentialSet& pot,
                      const NonlinearityPair& nl, double t_tol = 1e-10);

struct ComparisonReport {
    GroundStateResult periodic;
    GroundStateResult asymptotic;
    double c_periodic = 0.0;
    double c_asymptotic = 0.0;
    double certificate = 0.0;         // tilde energy of the projected periodic minimizer
    double margin = 0.0;              // c_periodic - c_asymptotic
    double certificate_margin = 0.0;  // c_periodic - certificate
};

/** Solves both systems of an asymptotically periodic set and evaluates the
 * level-ordering certificate: the periodic minimizer, reprojected onto the
 * tilde Nehari set, must have tilde energy strictly below the periodic level.
 */
ComparisonReport compare_levels(const PotentialSet& asym_pot, const NonlinearityPair& nl,
                                const SolverConfig& cfg);

struct ThetaAdmissibility {
    double theta0_value = 0.0;
    double theta_min = 0.0;
    double S_q = 0.0;
    double kappa = 0.0;  // min of the per-component bounds
    double kappa1 = 0.0, kappa2 = 0.0;
    double nu1 = 0.0, nu2 = 0.0;
    bool admissible = false;
};

/// Evaluates the largeness threshold for theta from estimated constants.
ThetaAdmissibility check_theta_admissibility(const PotentialSet& pot,
                                             const NonlinearityPair& nl, double omega,
                                             const EstimatorConfig& est = {});

}  // namespace fracgs
