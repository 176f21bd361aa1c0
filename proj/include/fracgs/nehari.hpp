#pragma once

#include <utility>

#include "fracgs/functional.hpp"

namespace fracgs {

/** Result of projecting a nonzero state onto the Nehari set:
 * projected = t0 * state with <I'(projected), projected> = 0 up to tolerance.
 */
struct FiberingResult {
    double t0 = 0.0;
    StatePair projected;
    double residual_at_t0 = 0.0;
    double t_lo = 0.0, t_hi = 0.0;
    int iterations = 0;
};

/** Ray energies: g(t) = I(t u, t v) and g'(t) = <I'(tu,tv),(tu,tv)>/t.
 * The quadratic part is cached so repeated ray evaluations cost O(n) pointwise
 * work with no transforms.
 */
class RayCache {
  public:
    RayCache(const StatePair& state, const PotentialSet& pot, const NonlinearityPair& nl);

    double g(double t) const;       // energy along the ray
    double gprime(double t) const;  // derivative; zero at the projection
    double quadratic() const { return quad_; }

  private:
    const StatePair& state_;
    const NonlinearityPair& nl_;
    double quad_ = 0.0;
    double dx_ = 0.0;
};

std::pair<double, double> fibering(const StatePair& state, const PotentialSet& pot,
                                   const NonlinearityPair& nl, double t);

/** Unique positive root of g' by bracketing (geometric expansion from t = 1)
 * followed by safeguarded Newton-bisection; tol is relative on t0.
 */
FiberingResult project(const StatePair& state, const PotentialSet& pot,
                       const NonlinearityPair& nl, double tol = 1e-10);

/** Scans g on a 200-point log grid around t0 (clamped to the exponential
 * guard, where g is provably negative) and returns max g - g(t0).
 */
double max_on_ray_check(const StatePair& state, const PotentialSet& pot,
                        const NonlinearityPair& nl, double t0, int n_points = 200);

/** Numeric vs closed-form maximum of
 *  h(t) = t^2/2 Sq(u,v)^2 ||(u,v)||_q^2 - theta t^q ||(u,v)||_q^q,
 * returned as (numeric, closed_form).
 */
std::pair<double, double> ray_envelope_check(const StatePair& state, const PotentialSet& pot,
                                         double q, double theta);

}  // namespace fracgs
