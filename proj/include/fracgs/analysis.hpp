#pragma once

#include <string>
#include <vector>

#include "fracgs/functional.hpp"

namespace fracgs {

/// One empirical check: passed iff worst_margin >= -tolerance.
struct CheckReport {
    std::string name;
    int samples = 0;
    double worst_margin = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::vector<std::string> details;

    std::string to_string() const;
};

/** Normalized test family for the exponential-integral sweeps: Gaussians,
 * smooth compact bumps and modulated wave packets, widths interleaved from
 * wide to narrow so a sup trend in family size is meaningful.
 */
std::vector<Field> exponential_test_family(const GridPtr& g, int count);

struct TmSweepResult {
    CheckReport report;
    double sup_ratio = 0.0;       // empirical H_alpha over the family
    double sup_first_half = 0.0;  // saturation reference
    std::vector<double> ratios;
};

/** Ratio sweep for int(e^{alpha u^2}-1) <= H_alpha ||u||_2^2 over fields
 * normalized to ||(-Delta)^(1/4) u||_2 = 1. Passes when the sup is finite and
 * does not keep growing as the family doubles (trend tolerance `trend_tol`).
 */
TmSweepResult tm_ratio_sweep(const GridPtr& g, int family_size, double alpha,
                             double trend_tol = 0.05);

/** Uniform bound sweep: sup of int(e^{alpha u^2}-1) over the family scaled to
 * ||u||_{1/2} = rho0, valid while alpha rho0^2 stays below omega.
 */
CheckReport exp_integral_uniform_bound(const GridPtr& g, int family_size, double alpha,
                                       double rho0);

/** Grid-sweep sup of (e^{alpha s^2}-1)^l / (e^{r alpha s^2}-1) for r > l > 1;
 * finite, attained in the interior. Returns the empirical constant in
 * worst_margin-free form (details carry the argmax).
 */
CheckReport exp_power_check(double alpha, double l, double r, double s_max,
                            int n_points = 20000);
double exp_power_sup(double alpha, double l, double r, double s_max, int n_points = 20000);

struct BrezisLiebResult {
    CheckReport report;
    std::vector<double> defects;  // max of the f- and F-version defects per separation
};

/** Splitting defect for u_n = u + shift(w, n*separation): both
 *  int f(u_n)u_n - int f(u_n-u)(u_n-u) - int f(u)u  and the F-version must
 * shrink as the separation grows (non-strictly once below final_tol).
 * Separations are node-exact multiples.
 */
BrezisLiebResult brezis_lieb_check(const Field& u, const Field& w,
                                   const std::vector<double>& separations,
                                   const NonlinearitySpec& nl, double final_tol = 1e-6);

/// sup over window centers of int_{y-R}^{y+R} (u^2+v^2); R >= dx.
double vanishing_diagnostic(const StatePair& s, double R);

/// Node index of the maximizing window center; `unit_centers_only` restricts
/// the scan to integer positions (the shift granularity that preserves
/// 1-periodic potentials exactly).
long vanishing_argmax_node(const StatePair& s, double R, bool unit_centers_only);

/// Serial reference for the window scan (no prefix sums); for tests/bench.
double vanishing_diagnostic_serial(const StatePair& s, double R);

}  // namespace fracgs
