#include "fracgs/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fracgs {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

int Grid1D::nodes_per_unit() const {
    const double p = 1.0 / dx;
    const double r = std::round(p);
    if (std::abs(p - r) > 1e-9 * p) {
        throw std::invalid_argument("grid spacing does not divide the unit period");
    }
    return static_cast<int>(r);
}

bool Grid1D::supports_unit_period() const {
    const double p = 1.0 / dx;
    const double twoL = 2.0 * L;
    return std::abs(p - std::round(p)) <= 1e-9 * p &&
           std::abs(twoL - std::round(twoL)) <= 1e-9 * twoL;
}

GridPtr make_grid(double L, int n) {
    if (!(L > 0.0)) throw std::invalid_argument("make_grid: L must be positive");
    if (!is_power_of_two(n) || n < 8) {
        throw std::invalid_argument("make_grid: n must be a power of two >= 8");
    }
    auto g = std::make_shared<Grid1D>();
    g->L = L;
    g->n = n;
    g->dx = 2.0 * L / static_cast<double>(n);
    g->nodes.resize(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        g->nodes[static_cast<size_t>(j)] = -L + g->dx * static_cast<double>(j);
    }
    return g;
}

Field::Field(GridPtr g, std::vector<double> v) : grid(std::move(g)), values(std::move(v)) {
    if (static_cast<int>(values.size()) != grid->n) {
        throw std::invalid_argument("Field: sample count does not match grid");
    }
}

StatePair::StatePair(Field u_, Field v_) : u(std::move(u_)), v(std::move(v_)) {
    require_same_grid(u, v);
}

void require_same_grid(const Field& a, const Field& b) {
    if (!a.grid || !b.grid || !a.grid->same_as(*b.grid)) {
        throw std::invalid_argument("fields live on different grids");
    }
}

void require_finite(const Field& f, const char* what) {
    for (double x : f.values) {
        if (!std::isfinite(x)) {
            throw std::invalid_argument(std::string(what) + ": non-finite sample");
        }
    }
}

Field operator*(double c, const Field& f) {
    Field out = f;
    for (double& x : out.values) x *= c;
    return out;
}

Field operator+(const Field& a, const Field& b) {
    require_same_grid(a, b);
    Field out = a;
    for (int j = 0; j < out.size(); ++j) out[j] += b[j];
    return out;
}

Field operator-(const Field& a, const Field& b) {
    require_same_grid(a, b);
    Field out = a;
    for (int j = 0; j < out.size(); ++j) out[j] -= b[j];
    return out;
}

StatePair operator*(double c, const StatePair& s) { return {c * s.u, c * s.v}; }

StatePair operator+(const StatePair& a, const StatePair& b) { return {a.u + b.u, a.v + b.v}; }

Field abs(const Field& f) {
    Field out = f;
    for (double& x : out.values) x = std::abs(x);
    return out;
}

double lp_norm(const Field& f, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
    double acc = 0.0;
    for (double x : f.values) acc += std::pow(std::abs(x), p);
    return std::pow(acc * f.grid->dx, 1.0 / p);
}

double l2_inner(const Field& f, const Field& g) {
    require_same_grid(f, g);
    double acc = 0.0;
    for (int j = 0; j < f.size(); ++j) acc += f[j] * g[j];
    return acc * f.grid->dx;
}

Field shift(const Field& f, long z) {
    const int n = f.size();
    long r = z % n;
    if (r < 0) r += n;
    Field out(f.grid);
    for (int j = 0; j < n; ++j) {
        out[j] = f[static_cast<int>((j + r) % n)];
    }
    return out;
}

StatePair shift(const StatePair& s, long z) { return {shift(s.u, z), shift(s.v, z)}; }

double max_abs(const Field& f) {
    double m = 0.0;
    for (double x : f.values) m = std::max(m, std::abs(x));
    return m;
}

double max_abs(const StatePair& s) { return std::max(max_abs(s.u), max_abs(s.v)); }

}  // namespace fracgs
