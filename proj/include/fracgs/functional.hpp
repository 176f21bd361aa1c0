#pragma once

#include <array>
#include <vector>

#include "fracgs/grid.hpp"
#include "fracgs/model.hpp"

namespace fracgs {

using NonlinearityPair = std::array<NonlinearitySpec, 2>;

/** Energy I(u,v) split into its ingredients.
 *
 * total = (kinetic_u + potential_u + kinetic_v + potential_v - 2 coupling)/2
 *         - F1_integral - F2_integral, reconstructible to round-off.
 */
struct EnergyReport {
    double total = 0.0;
    double kinetic_u = 0.0, kinetic_v = 0.0;      // ||(-Delta)^(1/4) .||^2
    double potential_u = 0.0, potential_v = 0.0;  // int V_i (.)^2
    double coupling = 0.0;                        // int lambda u v
    double F1_integral = 0.0, F2_integral = 0.0;
};

/// ||f||_{E_i}^2 = ||(-Delta)^(1/4) f||^2 + int V_i f^2.
double norm_Ei_sq(const Field& f, const Field& Vi);

/// ||(u,v)||_E^2 against the set's effective potentials.
double norm_E_sq(const StatePair& s, const PotentialSet& pot);

/// Quadratic part ||(u,v)||_E^2 - 2 int lambda u v (coercive for validated sets).
double quadratic_part(const StatePair& s, const PotentialSet& pot);

EnergyReport energy(const StatePair& s, const PotentialSet& pot, const NonlinearityPair& nl);

/** L^2-Riesz gradient of the energy:
 *  component u: (-Delta)^(1/2) u + V1 u - f1(u) - lambda v, and symmetrically in v.
 *  Pairing the result with any direction under l2_inner reproduces the
 *  directional derivative of `energy`.
 */
StatePair gradient(const StatePair& s, const PotentialSet& pot, const NonlinearityPair& nl);

/// <I'(u,v),(u,v)>; zero on the discrete Nehari manifold.
double nehari_residual(const StatePair& s, const PotentialSet& pot, const NonlinearityPair& nl);

/// S_q(u,v) = sqrt(quadratic_part) / ||(u,v)||_{L^q}, with the product-space
/// convention ||(u,v)||_{L^q} = (||u||_q^q + ||v||_q^q)^(1/q).
double sq_quotient(const StatePair& s, const PotentialSet& pot, double q);

/// (||u||_q^q + ||v||_q^q)^(1/q)
double lq_pair_norm(const StatePair& s, double q);

/** Multi-start quotient minimization. Infima are reported as the best upper
 * bound found, never as certified values; `spread` is max-min across starts.
 */
struct EstimateResult {
    double value = 0.0;
    double spread = 0.0;
    std::vector<double> per_start;
    bool converged = true;
};

struct EstimatorConfig {
    int n_starts = 16;
    int max_iters = 300;
    double tol = 1e-9;  // relative decrease per sweep below which a start stops
    unsigned long long seed = 20240001ULL;
};

EstimateResult estimate_Sq(const PotentialSet& pot, double q, const EstimatorConfig& cfg = {});
EstimateResult estimate_kappa(const Field& Vi, const EstimatorConfig& cfg = {});
EstimateResult estimate_nu(const Field& Vi, const EstimatorConfig& cfg = {});

}  // namespace fracgs
