#pragma once

#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

namespace fracgs {

/** Uniform periodic grid on [-L, L).
 *
 * Nodes x_j = -L + j*dx, j = 0..n-1, dx = 2L/n. Angular frequencies are
 * k_m = pi*m/L, so a real field of length n carries modes m = 0..n/2 in
 * half-complex storage. Immutable after construction; share freely.
 */
struct Grid1D {
    double L = 0.0;
    int n = 0;
    double dx = 0.0;
    std::vector<double> nodes;

    double node(int j) const { return nodes[static_cast<size_t>(j)]; }

    /// Angular frequency of half-spectrum bin m (0 <= m <= n/2).
    double freq(int m) const { return M_PI * static_cast<double>(m) / L; }

    /// Number of grid nodes per unit length, exact only if 1/dx is integer.
    int nodes_per_unit() const;

    /// True if integer translations are exact cyclic shifts (1/dx and 2L integers).
    bool supports_unit_period() const;

    bool same_as(const Grid1D& other) const {
        return n == other.n && L == other.L;
    }
};

using GridPtr = std::shared_ptr<const Grid1D>;

/// Builds a grid; throws std::invalid_argument unless L > 0 and n is a power of two >= 8.
GridPtr make_grid(double L, int n);

/** Real-valued samples of a function on a grid. */
struct Field {
    GridPtr grid;
    std::vector<double> values;

    Field() = default;
    explicit Field(GridPtr g) : grid(std::move(g)), values(grid->n, 0.0) {}
    Field(GridPtr g, std::vector<double> v);

    int size() const { return static_cast<int>(values.size()); }
    double& operator[](int j) { return values[static_cast<size_t>(j)]; }
    double operator[](int j) const { return values[static_cast<size_t>(j)]; }
};

/// Samples fn(x) at every node.
template <typename F>
Field sample(const GridPtr& g, F&& fn) {
    Field out(g);
    for (int j = 0; j < g->n; ++j) out[j] = fn(g->node(j));
    return out;
}

struct StatePair {
    Field u;
    Field v;

    StatePair() = default;
    StatePair(Field u_, Field v_);
};

void require_same_grid(const Field& a, const Field& b);
void require_finite(const Field& f, const char* what);

// Elementwise helpers (value semantics, no expression templates needed at this size).
Field operator*(double c, const Field& f);
Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
StatePair operator*(double c, const StatePair& s);
StatePair operator+(const StatePair& a, const StatePair& b);
Field abs(const Field& f);

/// Rectangle-rule L^p norm, (sum |f_j|^p dx)^(1/p), p >= 1.
double lp_norm(const Field& f, double p);

/// Rectangle-rule inner product sum f_j g_j dx; throws on grid mismatch.
double l2_inner(const Field& f, const Field& g);

/// Cyclic shift by z nodes: out(x_j) = f(x_{j+z}) with periodic wraparound.
Field shift(const Field& f, long z);
StatePair shift(const StatePair& s, long z);

double max_abs(const Field& f);
double max_abs(const StatePair& s);

}  // namespace fracgs
