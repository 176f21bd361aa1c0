#include "fracgs/nehari.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fracgs {

RayCache::RayCache(const StatePair& state, const PotentialSet& pot, const NonlinearityPair& nl)
    : state_(state), nl_(nl), dx_(state.u.grid->dx) {
    quad_ = quadratic_part(state, pot);
}

double RayCache::g(double t) const {
    double fsum = 0.0;
    for (int j = 0; j < state_.u.size(); ++j) {
        fsum += F_eval(nl_[0], t * state_.u[j]) + F_eval(nl_[1], t * state_.v[j]);
    }
    return 0.5 * t * t * quad_ - fsum * dx_;
}

double RayCache::gprime(double t) const {
    double fsum = 0.0;
    for (int j = 0; j < state_.u.size(); ++j) {
        fsum += f_eval(nl_[0], t * state_.u[j]) * state_.u[j] +
                f_eval(nl_[1], t * state_.v[j]) * state_.v[j];
    }
    return t * quad_ - fsum * dx_;
}

std::pair<double, double> fibering(const StatePair& state, const PotentialSet& pot,
                                   const NonlinearityPair& nl, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("fibering: t must be positive");
    if (max_abs(state) == 0.0) throw std::invalid_argument("fibering: zero state");
    RayCache ray(state, pot, nl);
    return {ray.g(t), ray.gprime(t)};
}

namespace {

// Largest t at which the critical-mode exponentials stay under the guard.
double guard_ceiling(const StatePair& state, const NonlinearityPair& nl) {
    double ceil_t = std::numeric_limits<double>::infinity();
    const double mu = max_abs(state.u);
    const double mv = max_abs(state.v);
    if (nl[0].mode == NonlinearityMode::critical && mu > 0.0) {
        ceil_t = std::min(ceil_t, std::sqrt(kExpArgGuard / nl[0].alpha0) / mu);
    }
    if (nl[1].mode == NonlinearityMode::critical && mv > 0.0) {
        ceil_t = std::min(ceil_t, std::sqrt(kExpArgGuard / nl[1].alpha0) / mv);
    }
    return 0.999 * ceil_t;
}

}  // namespace

FiberingResult project(const StatePair& state, const PotentialSet& pot,
                       const NonlinearityPair& nl, double tol) {
    if (max_abs(state) == 0.0) throw std::invalid_argument("project: zero state");
    RayCache ray(state, pot, nl);
    const double t_guard = guard_ceiling(state, nl);

    // Bracket [t_lo, t_hi] with g'(t_lo) > 0 > g'(t_hi) by doubling/halving
    // from t = 1. g' > 0 near 0 and g' < 0 for large t, so this terminates
    // for any nonzero state of a validated set.
    double t_lo = std::min(1.0, 0.5 * t_guard);
    double t_hi = t_lo;
    const int max_doublings = 60;
    if (ray.gprime(t_lo) > 0.0) {
        bool found = false;
        for (int i = 0; i < max_doublings; ++i) {
            double cand = t_hi * 2.0;
            if (cand > t_guard) cand = 0.5 * (t_hi + t_guard);
            if (ray.gprime(cand) < 0.0) {
                t_hi = cand;
                found = true;
                break;
            }
            t_lo = cand;
            t_hi = cand;
            if (t_guard - cand < 1e-12 * t_guard) break;
        }
        if (!found) {
            throw std::runtime_error(
                "project: no sign change of g' within the expansion limit (degenerate state)");
        }
    } else {
        bool found = false;
        for (int i = 0; i < max_doublings; ++i) {
            const double cand = t_lo * 0.5;
            if (ray.gprime(cand) > 0.0) {
                t_lo = cand;
                found = true;
                break;
            }
            t_hi = cand;
            t_lo = cand;
        }
        if (!found) {
            throw std::runtime_error(
                "project: no sign change of g' within the contraction limit (degenerate state)");
        }
    }

    FiberingResult res;
    res.t_lo = t_lo;
    res.t_hi = t_hi;

    // Safeguarded Newton on g' with finite-difference second derivative;
    // bisection whenever the Newton step leaves the bracket.
    double t = 0.5 * (t_lo + t_hi);
    double gp = ray.gprime(t);
    int it = 0;
    const int max_iters = 200;
    while (it++ < max_iters) {
        if (gp > 0.0) {
            t_lo = t;
        } else {
            t_hi = t;
        }
        const double h = 1e-6 * t;
        double t_next = 0.0;
        const double gpp = (ray.gprime(t + h) - ray.gprime(t - h)) / (2.0 * h);
        if (gpp != 0.0 && std::isfinite(gpp)) {
            t_next = t - gp / gpp;
        }
        if (!(t_next > t_lo && t_next < t_hi)) {
            t_next = 0.5 * (t_lo + t_hi);
        }
        if (std::abs(t_next - t) <= tol * t) {
            t = t_next;
            break;
        }
        t = t_next;
        gp = ray.gprime(t);
        if (t_hi - t_lo <= tol * t) break;
    }

    res.t0 = t;
    res.projected = t * state;
    res.residual_at_t0 = t * ray.gprime(t);  // <I'(tu,tv),(tu,tv)> = t g'(t)
    res.iterations = it;
    return res;
}

double max_on_ray_check(const StatePair& state, const PotentialSet& pot,
                        const NonlinearityPair& nl, double t0, int n_points) {
    if (!(t0 > 0.0)) throw std::invalid_argument("max_on_ray_check: t0 must be positive");
    RayCache ray(state, pot, nl);
    const double t_guard = guard_ceiling(state, nl);

    double lo = t0 / 50.0;
    double hi = std::min(50.0 * t0, t_guard);
    // Beyond the guard the pure-power envelope already forces g < 0 < g(t0),
    // so clamping cannot hide a larger maximum.
    const double g0 = ray.g(t0);
    double worst = -std::numeric_limits<double>::infinity();
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < n_points; ++i) {
        const double t = std::exp(llo + (lhi - llo) * static_cast<double>(i) /
                                            static_cast<double>(n_points - 1));
        worst = std::max(worst, ray.g(t));
    }
    return worst - g0;
}

std::pair<double, double> ray_envelope_check(const StatePair& state, const PotentialSet& pot,
                                         double q, double theta) {
    if (max_abs(state) == 0.0) throw std::invalid_argument("ray_envelope_check: zero state");
    const double sq = sq_quotient(state, pot, q);
    const double m = lq_pair_norm(state, q);
    const double m2 = m * m;
    const double mq = std::pow(m, q);

    auto h = [&](double t) {
        return 0.5 * t * t * sq * sq * m2 - theta * std::pow(t, q) * mq;
    };
    // Analytic argmax tbar = (sq^2 m^2 / (q theta m^q))^(1/(q-2)); scan around
    // it and refine by golden section so the numeric route is independent.
    const double tbar = std::pow(sq * sq * m2 / (q * theta * mq), 1.0 / (q - 2.0));
    double lo = tbar / 64.0, hi = tbar * 64.0;
    const int coarse = 512;
    double best_t = tbar, best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < coarse; ++i) {
        const double t = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i /
                                                     static_cast<double>(coarse - 1));
        const double val = h(t);
        if (val > best) {
            best = val;
            best_t = t;
        }
    }
    double a = best_t / 1.5, b = best_t * 1.5;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - gr * (b - a), d = a + gr * (b - a);
    for (int i = 0; i < 200; ++i) {
        if (h(c) > h(d)) {
            b = d;
        } else {
            a = c;
        }
        c = b - gr * (b - a);
        d = a + gr * (b - a);
        if (b - a < 1e-12 * best_t) break;
    }
    const double numeric = h(0.5 * (a + b));
    const double closed = (0.5 - 1.0 / q) * std::pow(sq, 2.0 * q / (q - 2.0)) /
                          std::pow(q * theta, 2.0 / (q - 2.0));
    return {numeric, closed};
}

}  // namespace fracgs
