#include "fracgs/functional.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "fracgs/random_fields.hpp"
#include "fracgs/spectral.hpp"

namespace fracgs {

double norm_Ei_sq(const Field& f, const Field& Vi) {
    require_same_grid(f, Vi);
    double pot = 0.0;
    for (int j = 0; j < f.size(); ++j) pot += Vi[j] * f[j] * f[j];
    return quarter_kinetic_sq(f) + pot * f.grid->dx;
}

double norm_E_sq(const StatePair& s, const PotentialSet& pot) {
    return norm_Ei_sq(s.u, pot.effective_V1()) + norm_Ei_sq(s.v, pot.effective_V2());
}

double quadratic_part(const StatePair& s, const PotentialSet& pot) {
    const Field& lam = pot.effective_lambda();
    double c = 0.0;
    for (int j = 0; j < s.u.size(); ++j) c += lam[j] * s.u[j] * s.v[j];
    return norm_E_sq(s, pot) - 2.0 * c * s.u.grid->dx;
}

EnergyReport energy(const StatePair& s, const PotentialSet& pot, const NonlinearityPair& nl) {
    require_same_grid(s.u, pot.effective_V1());
    const int n = s.u.size();
    const double dx = s.u.grid->dx;
    const Field& V1 = pot.effective_V1();
    const Field& V2 = pot.effective_V2();
    const Field& lam = pot.effective_lambda();

    EnergyReport r;
    r.kinetic_u = quarter_kinetic_sq(s.u);
    r.kinetic_v = quarter_kinetic_sq(s.v);
    double pu = 0.0, pv = 0.0, c = 0.0, f1 = 0.0, f2 = 0.0;
    for (int j = 0; j < n; ++j) {
        pu += V1[j] * s.u[j] * s.u[j];
        pv += V2[j] * s.v[j] * s.v[j];
        c += lam[j] * s.u[j] * s.v[j];
        f1 += F_eval(nl[0], s.u[j]);
        f2 += F_eval(nl[1], s.v[j]);
    }
    r.potential_u = pu * dx;
    r.potential_v = pv * dx;
    r.coupling = c * dx;
    r.F1_integral = f1 * dx;
    r.F2_integral = f2 * dx;
    r.total = 0.5 * (r.kinetic_u + r.potential_u + r.kinetic_v + r.potential_v -
                     2.0 * r.coupling) -
              r.F1_integral - r.F2_integral;
    return r;
}

StatePair gradient(const StatePair& s, const PotentialSet& pot, const NonlinearityPair& nl) {
    const Field& V1 = pot.effective_V1();
    const Field& V2 = pot.effective_V2();
    const Field& lam = pot.effective_lambda();

    Field gu = frac_laplacian(s.u, 0.5);
    Field gv = frac_laplacian(s.v, 0.5);
    for (int j = 0; j < s.u.size(); ++j) {
        gu[j] += V1[j] * s.u[j] - f_eval(nl[0], s.u[j]) - lam[j] * s.v[j];
        gv[j] += V2[j] * s.v[j] - f_eval(nl[1], s.v[j]) - lam[j] * s.u[j];
    }
    return {std::move(gu), std::move(gv)};
}

double nehari_residual(const StatePair& s, const PotentialSet& pot, const NonlinearityPair& nl) {
    double fsum = 0.0;
    for (int j = 0; j < s.u.size(); ++j) {
        fsum += f_eval(nl[0], s.u[j]) * s.u[j] + f_eval(nl[1], s.v[j]) * s.v[j];
    }
    return quadratic_part(s, pot) - fsum * s.u.grid->dx;
}

double lq_pair_norm(const StatePair& s, double q) {
    double acc = 0.0;
    for (int j = 0; j < s.u.size(); ++j) {
        acc += std::pow(std::abs(s.u[j]), q) + std::pow(std::abs(s.v[j]), q);
    }
    return std::pow(acc * s.u.grid->dx, 1.0 / q);
}

double sq_quotient(const StatePair& s, const PotentialSet& pot, double q) {
    const double m = lq_pair_norm(s, q);
    if (m == 0.0) throw std::invalid_argument("sq_quotient: zero state");
    return std::sqrt(quadratic_part(s, pot)) / m;
}

namespace {

double field_mean(const Field& f) {
    double acc = 0.0;
    for (double x : f.values) acc += x;
    return acc / static_cast<double>(f.size());
}

double l2_sq(const Field& f) {
    double acc = 0.0;
    for (double x : f.values) acc += x * x;
    return acc * f.grid->dx;
}

// Shared minimization driver for the scalar quotient estimators. `value`
// evaluates the quotient, `step` moves the iterate by a step size and reports
// whether the trial state is usable (negative size undoes the last move).
// Backtracks on increase; a start counts as converged when it either stalls
// below `tol` relative decrease or cannot improve at any step size. Running
// out of iterations while still improving is the non-converged case.
template <typename Value, typename Step>
double descend_quotient(Value&& value, Step&& step, int max_iters, double tol, bool* converged) {
    double cur = value();
    double eta = 0.5;
    int stagnant = 0;
    bool done = false;
    for (int it = 0; it < max_iters && !done; ++it) {
        bool moved = false;
        for (int bt = 0; bt < 30; ++bt) {
            if (step(eta)) {
                const double next = value();
                if (next < cur) {
                    const double drop = (cur - next) / std::max(std::abs(cur), 1e-300);
                    cur = next;
                    moved = true;
                    eta = std::min(eta * 1.5, 2.0);
                    stagnant = (drop < tol) ? stagnant + 1 : 0;
                    break;
                }
                step(-eta);  // undo
            }
            eta *= 0.5;
        }
        done = !moved || stagnant >= 3;
    }
    if (converged) *converged = done;
    return cur;
}

EstimateResult run_multistart(const GridPtr& g, const EstimatorConfig& cfg,
                              const std::function<double(Field&, bool*)>& run_one_field) {
    EstimateResult res;
    res.per_start.resize(static_cast<size_t>(cfg.n_starts));
    std::vector<bool> ok(static_cast<size_t>(cfg.n_starts), false);
    const double k_cut = std::min(8.0, 0.25 * g->freq(g->n / 2));

#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < cfg.n_starts; ++i) {
        std::mt19937_64 rng(cfg.seed + static_cast<unsigned long long>(i) * 7919ULL);
        Field u0 = random_smooth_field(g, rng, k_cut);
        bool conv = false;
        res.per_start[static_cast<size_t>(i)] = run_one_field(u0, &conv);
        ok[static_cast<size_t>(i)] = conv;
    }
    res.value = *std::min_element(res.per_start.begin(), res.per_start.end());
    res.spread = *std::max_element(res.per_start.begin(), res.per_start.end()) - res.value;
    res.converged = std::any_of(ok.begin(), ok.end(), [](bool b) { return b; });
    return res;
}

}  // namespace

EstimateResult estimate_nu(const Field& Vi, const EstimatorConfig& cfg) {
    const GridPtr g = Vi.grid;
    const double vbar = std::max(field_mean(Vi), 1e-8);

    auto run_one = [&](Field& u, bool* conv) {
        auto rayleigh = [&](const Field& w) { return norm_Ei_sq(w, Vi) / l2_sq(w); };
        auto value = [&]() { return rayleigh(u); };
        Field backup = u;
        auto step = [&](double eta) {
            if (eta < 0.0) {  // undo
                u = backup;
                return true;
            }
            backup = u;
            const double r = rayleigh(u);
            Field resid = frac_laplacian(u, 0.5);
            for (int j = 0; j < u.size(); ++j) resid[j] += (Vi[j] - r) * u[j];
            Field d = apply_inverse_symbol(resid, vbar);
            for (int j = 0; j < u.size(); ++j) u[j] -= eta * d[j];
            const double nrm = std::sqrt(l2_sq(u));
            if (!(nrm > 0.0) || !std::isfinite(nrm)) {
                u = backup;
                return false;
            }
            u = (1.0 / nrm) * u;
            return true;
        };
        return descend_quotient(value, step, cfg.max_iters, cfg.tol, conv);
    };
    return run_multistart(g, cfg, run_one);
}

EstimateResult estimate_kappa(const Field& Vi, const EstimatorConfig& cfg) {
    const GridPtr g = Vi.grid;
    const double vbar = std::max(field_mean(Vi), 1e-8);

    auto run_one = [&](Field& u, bool* conv) {
        auto quotient = [&](const Field& w) {
            const double num = norm_Ei_sq(w, Vi);
            const double den = 2.0 * M_PI * quarter_kinetic_sq(w) + l2_sq(w);
            return num / den;
        };
        Field backup = u;
        auto value = [&]() { return quotient(u); };
        auto step = [&](double eta) {
            if (eta < 0.0) {
                u = backup;
                return true;
            }
            backup = u;
            const double r = quotient(u);
            const double den = 2.0 * M_PI * quarter_kinetic_sq(u) + l2_sq(u);
            // gradient of num - r*den, scaled by 1/den
            Field lap = frac_laplacian(u, 0.5);
            Field resid(u.grid);
            for (int j = 0; j < u.size(); ++j) {
                resid[j] = (lap[j] + Vi[j] * u[j] - r * (2.0 * M_PI * lap[j] + u[j])) / den;
            }
            Field d = apply_inverse_symbol(resid, vbar);
            for (int j = 0; j < u.size(); ++j) u[j] -= eta * d[j];
            const double nrm = std::sqrt(l2_sq(u));
            if (!(nrm > 0.0) || !std::isfinite(nrm)) {
                u = backup;
                return false;
            }
            u = (1.0 / nrm) * u;
            return true;
        };
        return descend_quotient(value, step, cfg.max_iters, cfg.tol, conv);
    };
    return run_multistart(g, cfg, run_one);
}

EstimateResult estimate_Sq(const PotentialSet& pot, double q, const EstimatorConfig& cfg) {
    const GridPtr g = pot.grid;
    const Field& V1 = pot.effective_V1();
    const Field& V2 = pot.effective_V2();
    const Field& lam = pot.effective_lambda();
    const double vbar1 = std::max(field_mean(V1), 1e-8);
    const double vbar2 = std::max(field_mean(V2), 1e-8);

    EstimateResult res;
    res.per_start.resize(static_cast<size_t>(cfg.n_starts));
    std::vector<bool> ok(static_cast<size_t>(cfg.n_starts), false);
    const double k_cut = std::min(8.0, 0.25 * g->freq(g->n / 2));

#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < cfg.n_starts; ++i) {
        std::mt19937_64 rng(cfg.seed + 31ULL + static_cast<unsigned long long>(i) * 7919ULL);
        StatePair w = random_smooth_state(g, rng, k_cut);
        StatePair backup = w;

        auto value = [&]() { return sq_quotient(w, pot, q); };
        auto step = [&](double eta) {
            if (eta < 0.0) {
                w = backup;
                return true;
            }
            backup = w;
            const double A = quadratic_part(w, pot);
            const double M = std::pow(lq_pair_norm(w, q), q);
            Field gu = frac_laplacian(w.u, 0.5);
            Field gv = frac_laplacian(w.v, 0.5);
            for (int j = 0; j < w.u.size(); ++j) {
                const double au = gu[j] + V1[j] * w.u[j] - lam[j] * w.v[j];
                const double av = gv[j] + V2[j] * w.v[j] - lam[j] * w.u[j];
                gu[j] = au / A - std::pow(std::abs(w.u[j]), q - 2.0) * w.u[j] / M;
                gv[j] = av / A - std::pow(std::abs(w.v[j]), q - 2.0) * w.v[j] / M;
            }
            Field du = apply_inverse_symbol(gu, vbar1);
            Field dv = apply_inverse_symbol(gv, vbar2);
            for (int j = 0; j < w.u.size(); ++j) {
                w.u[j] -= eta * du[j];
                w.v[j] -= eta * dv[j];
            }
            const double A2 = quadratic_part(w, pot);
            if (!(A2 > 0.0) || !std::isfinite(A2)) {
                w = backup;
                return false;
            }
            const double sc = 1.0 / std::sqrt(A2);
            w.u = sc * w.u;
            w.v = sc * w.v;
            return true;
        };
        bool conv = false;
        res.per_start[static_cast<size_t>(i)] =
            descend_quotient(value, step, cfg.max_iters, cfg.tol, &conv);
        ok[static_cast<size_t>(i)] = conv;
    }
    res.value = *std::min_element(res.per_start.begin(), res.per_start.end());
    res.spread = *std::max_element(res.per_start.begin(), res.per_start.end()) - res.value;
    res.converged = std::any_of(ok.begin(), ok.end(), [](bool b) { return b; });
    return res;
}

}  // namespace fracgs
