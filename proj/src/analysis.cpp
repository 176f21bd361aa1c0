#include "fracgs/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fracgs/spectral.hpp"

namespace fracgs {

std::string CheckReport::to_string() const {
    std::ostringstream os;
    os << (passed ? "pass" : "FAIL") << "  " << name << "  samples=" << samples
       << "  worst_margin=" << worst_margin;
    for (const auto& d : details) os << "\n    " << d;
    return os.str();
}

std::vector<Field> exponential_test_family(const GridPtr& g, int count) {
    std::vector<Field> fam;
    fam.reserve(static_cast<size_t>(count));
    const double w_max = g->L / 4.0;
    const double w_min = 4.0 * g->dx;
    const double period = 2.0 * g->L;

    for (int i = 0; i < count; ++i) {
        // Widths descend as the family grows; shapes and centers interleave.
        const double frac = static_cast<double>(i) / std::max(1, count - 1);
        const double width = w_max * std::pow(w_min / w_max, frac);
        const double center = 0.3 * g->L * std::sin(2.39996 * i);  // deterministic spread
        const int kind = i % 3;
        Field f(g);
        for (int j = 0; j < g->n; ++j) {
            double d = g->node(j) - center;
            d -= period * std::round(d / period);
            double val = 0.0;
            if (kind == 0) {
                val = std::exp(-d * d / (2.0 * width * width));
            } else if (kind == 1) {
                const double r = d / (3.0 * width);
                val = std::abs(r) < 1.0 ? std::exp(-1.0 / (1.0 - r * r)) : 0.0;
            } else {
                const double k_mod = M_PI / (4.0 * width);
                val = std::cos(k_mod * d) * std::exp(-d * d / (2.0 * width * width));
            }
            f[j] = val;
        }
        fam.push_back(std::move(f));
    }
    return fam;
}

namespace {

double exp_integral(const Field& u, double alpha) {
    double acc = 0.0;
    for (int j = 0; j < u.size(); ++j) acc += std::expm1(alpha * u[j] * u[j]);
    return acc * u.grid->dx;
}

double l2_sq(const Field& u) {
    double acc = 0.0;
    for (double x : u.values) acc += x * x;
    return acc * u.grid->dx;
}

}  // namespace

TmSweepResult tm_ratio_sweep(const GridPtr& g, int family_size, double alpha,
                             double trend_tol) {
    if (!(alpha > 0.0)) throw std::invalid_argument("tm_ratio_sweep: alpha must be positive");
    const std::vector<Field> fam = exponential_test_family(g, family_size);

    TmSweepResult out;
    out.ratios.resize(fam.size());
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < static_cast<int>(fam.size()); ++i) {
        const Field& raw = fam[static_cast<size_t>(i)];
        const double kin = quarter_kinetic_sq(raw);
        const Field u = (1.0 / std::sqrt(kin)) * raw;
        out.ratios[static_cast<size_t>(i)] = exp_integral(u, alpha) / l2_sq(u);
    }

    double sup = 0.0, sup_half = 0.0;
    for (size_t i = 0; i < out.ratios.size(); ++i) {
        sup = std::max(sup, out.ratios[i]);
        if (i < out.ratios.size() / 2) sup_half = std::max(sup_half, out.ratios[i]);
    }
    out.sup_ratio = sup;
    out.sup_first_half = sup_half;

    CheckReport rep;
    rep.name = "tm_ratio_sweep";
    rep.samples = family_size;
    rep.tolerance = 0.0;
    const bool finite = std::isfinite(sup);
    rep.worst_margin = finite ? sup_half * (1.0 + trend_tol) - sup
                              : -std::numeric_limits<double>::infinity();
    rep.passed = finite && rep.worst_margin >= 0.0;
    {
        std::ostringstream os;
        os << "alpha=" << alpha << " sup=" << sup << " sup_first_half=" << sup_half;
        rep.details.push_back(os.str());
    }
    out.report = rep;
    return out;
}

CheckReport exp_integral_uniform_bound(const GridPtr& g, int family_size, double alpha,
                                       double rho0) {
    const std::vector<Field> fam = exponential_test_family(g, family_size);
    std::vector<double> vals(fam.size());
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < static_cast<int>(fam.size()); ++i) {
        const Field& raw = fam[static_cast<size_t>(i)];
        const double half_norm_sq = 2.0 * M_PI * quarter_kinetic_sq(raw) + l2_sq(raw);
        const Field u = (rho0 / std::sqrt(half_norm_sq)) * raw;
        vals[static_cast<size_t>(i)] = exp_integral(u, alpha);
    }
    const double sup = *std::max_element(vals.begin(), vals.end());

    CheckReport rep;
    rep.name = "exp_integral_uniform_bound";
    rep.samples = family_size;
    rep.passed = std::isfinite(sup);
    rep.worst_margin = rep.passed ? 0.0 : -std::numeric_limits<double>::infinity();
    std::ostringstream os;
    os << "alpha=" << alpha << " rho0=" << rho0 << " empirical_C=" << sup;
    rep.details.push_back(os.str());
    return rep;
}

double exp_power_sup(double alpha, double l, double r, double s_max, int n_points) {
    if (!(r > l && l > 1.0 && alpha > 0.0)) {
        throw std::invalid_argument("exp_power_sup: need r > l > 1 and alpha > 0");
    }
    const double s_cap = std::min(s_max, std::sqrt(0.98 * 700.0 / (r * alpha)));
    const double lo = std::log(1e-6), hi = std::log(s_cap);
    double sup = 0.0;
    for (int i = 0; i < n_points; ++i) {
        const double s = std::exp(lo + (hi - lo) * i / static_cast<double>(n_points - 1));
        const double num = l * std::log(std::expm1(alpha * s * s));
        const double den = std::log(std::expm1(r * alpha * s * s));
        sup = std::max(sup, std::exp(num - den));
    }
    return sup;
}

CheckReport exp_power_check(double alpha, double l, double r, double s_max, int n_points) {
    const double sup = exp_power_sup(alpha, l, r, s_max, n_points);
    CheckReport rep;
    rep.name = "exp_power_check";
    rep.samples = n_points;
    rep.passed = std::isfinite(sup) && sup > 0.0;
    rep.worst_margin = rep.passed ? 0.0 : -std::numeric_limits<double>::infinity();
    std::ostringstream os;
    os << "alpha=" << alpha << " l=" << l << " r=" << r << " empirical_C=" << sup;
    rep.details.push_back(os.str());
    return rep;
}

namespace {

double seam_magnitude(const Field& f) {
    const GridPtr& g = f.grid;
    double worst = 0.0;
    for (int j = 0; j < g->n; ++j) {
        if (std::abs(std::abs(g->node(j)) - g->L) <= 1.0) {
            worst = std::max(worst, std::abs(f[j]));
        }
    }
    return worst;
}

}  // namespace

BrezisLiebResult brezis_lieb_check(const Field& u, const Field& w,
                                   const std::vector<double>& separations,
                                   const NonlinearitySpec& nl, double final_tol) {
    require_same_grid(u, w);
    const GridPtr& g = u.grid;
    const double dx = g->dx;
    const double scale = std::max(max_abs(u), max_abs(w));

    auto fu_integral = [&](const Field& a) {
        double acc = 0.0;
        for (int j = 0; j < a.size(); ++j) acc += f_eval(nl, a[j]) * a[j];
        return acc * dx;
    };
    auto F_integral = [&](const Field& a) {
        double acc = 0.0;
        for (int j = 0; j < a.size(); ++j) acc += F_eval(nl, a[j]);
        return acc * dx;
    };

    const double fu_u = fu_integral(u);
    const double F_u = F_integral(u);

    CheckReport rep;
    rep.name = "brezis_lieb_check";
    rep.samples = static_cast<int>(separations.size());
    rep.tolerance = 0.0;

    std::vector<double> defects;
    for (double sep : separations) {
        const long z = std::lround(sep / dx);
        const Field wn = shift(w, -z);  // moves the bump by +sep
        const Field un = u + wn;
        if (seam_magnitude(un) > 1e-10 * scale) {
            throw std::invalid_argument("brezis_lieb_check: bumps overlap the wrap seam");
        }
        const double d1 = std::abs(fu_integral(un) - fu_integral(wn) - fu_u);
        const double d2 = std::abs(F_integral(un) - F_integral(wn) - F_u);
        defects.push_back(std::max(d1, d2));
        std::ostringstream os;
        os << "separation=" << sep << " defect_f=" << d1 << " defect_F=" << d2;
        rep.details.push_back(os.str());
    }

    double margin = final_tol - defects.back();
    bool decreasing = true;
    for (size_t i = 1; i < defects.size(); ++i) {
        if (!(defects[i] < defects[i - 1] || defects[i] <= final_tol)) decreasing = false;
        margin = std::min(margin, defects[i - 1] - defects[i]);
    }
    rep.worst_margin = margin;
    rep.passed = decreasing && defects.back() <= final_tol;

    BrezisLiebResult out;
    out.report = std::move(rep);
    out.defects = std::move(defects);
    return out;
}

namespace {

std::vector<double> window_masses(const StatePair& s, double R, int* out_width) {
    const GridPtr& g = s.u.grid;
    const int n = g->n;
    if (!(R >= g->dx)) throw std::invalid_argument("vanishing window: R must be >= dx");
    const int w = std::max(1, static_cast<int>(std::lround(2.0 * R / g->dx)));
    const int h = w / 2;
    if (out_width) *out_width = w;

    // Circular prefix sums of the pointwise density.
    std::vector<double> dens(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) dens[static_cast<size_t>(j)] = s.u[j] * s.u[j] + s.v[j] * s.v[j];
    std::vector<double> prefix(static_cast<size_t>(n + 1), 0.0);
    for (int j = 0; j < n; ++j) prefix[static_cast<size_t>(j + 1)] = prefix[static_cast<size_t>(j)] + dens[static_cast<size_t>(j)];
    const double total = prefix[static_cast<size_t>(n)];

    std::vector<double> mass(static_cast<size_t>(n));
#pragma omp parallel for schedule(static)
    for (int c = 0; c < n; ++c) {
        int a = c - h;
        double m;
        if (a < 0) a += n;
        int b = a + w;
        if (b <= n) {
            m = prefix[static_cast<size_t>(b)] - prefix[static_cast<size_t>(a)];
        } else {
            m = (total - prefix[static_cast<size_t>(a)]) + prefix[static_cast<size_t>(b - n)];
        }
        mass[static_cast<size_t>(c)] = m * g->dx;
    }
    return mass;
}

}  // namespace

double vanishing_diagnostic(const StatePair& s, double R) {
    const std::vector<double> mass = window_masses(s, R, nullptr);
    return *std::max_element(mass.begin(), mass.end());
}

long vanishing_argmax_node(const StatePair& s, double R, bool unit_centers_only) {
    const std::vector<double> mass = window_masses(s, R, nullptr);
    const GridPtr& g = s.u.grid;
    if (!unit_centers_only) {
        return static_cast<long>(
            std::max_element(mass.begin(), mass.end()) - mass.begin());
    }
    const int step = g->nodes_per_unit();
    long best = 0;
    double best_mass = -1.0;
    for (int c = 0; c < g->n; c += step) {
        if (mass[static_cast<size_t>(c)] > best_mass) {
            best_mass = mass[static_cast<size_t>(c)];
            best = c;
        }
    }
    return best;
}

double vanishing_diagnostic_serial(const StatePair& s, double R) {
    const GridPtr& g = s.u.grid;
    const int n = g->n;
    if (!(R >= g->dx)) throw std::invalid_argument("vanishing window: R must be >= dx");
    const int w = std::max(1, static_cast<int>(std::lround(2.0 * R / g->dx)));
    const int h = w / 2;
    double sup = 0.0;
    for (int c = 0; c < n; ++c) {
        double m = 0.0;
        for (int o = 0; o < w; ++o) {
            const int j = (c - h + o + 2 * n) % n;
            m += s.u[j] * s.u[j] + s.v[j] * s.v[j];
        }
        sup = std::max(sup, m * g->dx);
    }
    return sup;
}

}  // namespace fracgs
