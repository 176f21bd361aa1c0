#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fracgs/grid.hpp"

namespace fracgs {

/// One validator outcome. `margin` is the worst slack observed; negative means violated.
struct ValidationEntry {
    std::string name;     // e.g. "V3", "H2", "CG"
    bool passed = false;
    bool skipped = false;
    double margin = 0.0;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationEntry> entries;

    bool all_passed() const;
    const ValidationEntry* find(const std::string& name) const;
    std::string to_string() const;
};

enum class PotentialFlavor { periodic, asymptotically_periodic };

/** Sampled potentials V1, V2, lambda with coupling bound delta.
 *
 * Periodic flavor: V_i and lambda are 1-periodic (rules V1-V3).
 * Asymptotically periodic flavor additionally carries Vt1, Vt2, lambdat —
 * the potentials actually used by the energy — strictly ordered against the
 * periodic limit (rules V4-V6). `effective_*` returns whichever set drives
 * the system being solved.
 */
struct PotentialSet {
    PotentialFlavor flavor = PotentialFlavor::periodic;
    GridPtr grid;
    Field V1, V2, lambda;
    double delta = 0.0;

    // Asymptotic flavor only.
    Field Vt1, Vt2, lambdat;
    double edge_decay_tol = 1e-2;

    const Field& effective_V1() const;
    const Field& effective_V2() const;
    const Field& effective_lambda() const;

    /// Periodic-limit view of an asymptotically periodic set.
    PotentialSet periodic_limit() const;
};

/// Parameters of the sine/cosine default family:
/// V1 = v1_base + v1_amp sin^2(pi x), V2 = v2_base + v2_amp cos^2(pi x),
/// lambda = lambda_factor sqrt(V1 V2).
struct PeriodicFamilyParams {
    double v1_base = 1.0;
    double v1_amp = 0.5;
    double v2_base = 1.5;
    double v2_amp = 0.5;
    double lambda_factor = 0.5;
    double delta = 0.6;
};

struct BumpParams {
    double a1 = 0.05;  // Vt_i = V_i - a_i/(1+x^2)
    double a2 = 0.05;
    double b = 0.01;  // lambdat = lambda + b/(1+x^2)
};

/// Builds the set without validating (CLI validate needs reports for bad input too).
PotentialSet build_periodic_potentials(const GridPtr& grid, const PeriodicFamilyParams& p);
PotentialSet build_asymptotic_potentials(const PotentialSet& periodic, const BumpParams& b);

/// Validated constructors; throw std::invalid_argument when the validator rejects.
PotentialSet make_periodic_potentials(const GridPtr& grid, const PeriodicFamilyParams& p);
PotentialSet make_asymptotic_potentials(const PotentialSet& periodic, const BumpParams& b);

ValidationReport validate_potentials(const PotentialSet& pot);

enum class NonlinearityMode { critical, pure_power };

/** Nonlinearity f(s) = theta q |s|^(q-2) s + q |s|^(q-2) s (e^(a0 s^2)-1) + 2 a0 |s|^q s e^(a0 s^2)
 *  with primitive F(s) = theta |s|^q + |s|^q (e^(a0 s^2)-1).
 *
 * pure_power mode keeps only the theta term; it has closed-form Nehari
 * projections and exists for oracle tests only (it is not exponentially
 * critical, and validators flag it as such).
 */
struct NonlinearitySpec {
    double q = 4.0;
    double mu = 3.0;
    double theta = 1.0;
    double alpha0 = 1.0;
    NonlinearityMode mode = NonlinearityMode::critical;
};

/// Exponent budget: |alpha0 s^2| above this raises std::overflow_error instead
/// of silently saturating a line search with infinities.
inline constexpr double kExpArgGuard = 700.0;

double f_eval(const NonlinearitySpec& nl, double s);
double F_eval(const NonlinearitySpec& nl, double s);
double fprime_eval(const NonlinearitySpec& nl, double s);

/// phi(s) = f(s) s - 2 F(s); positive for s != 0.
double phi_eval(const NonlinearitySpec& nl, double s);

struct NonlinearitySampling {
    double s_min = 1e-6;
    double s_max = 10.0;
    int n_samples = 400;
};

ValidationReport validate_nonlinearity(const NonlinearitySpec& nl,
                                       const NonlinearitySampling& sampling = {});

/** Admissibility threshold
 *    theta0 = (S_q^q / q) * ( (1/(1-delta)) (mu/(mu-2)) ((q-2)/q) (alpha0/(kappa om)) )^((q-2)/2).
 * Callers pass alpha0 = max over components, mu = min, kappa = min (so 1/kappa is max).
 */
double theta0(double delta, double mu, double q, double alpha0, double omega, double kappa,
              double S_q);

}  // namespace fracgs
