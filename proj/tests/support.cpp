#include "support.hpp"

#include <cmath>

#include "fracgs/random_fields.hpp"

namespace fracgs::test {

Field pv_half_laplacian_oracle(const GridPtr& g, const std::function<double(double)>& u,
                               const std::function<double(double)>& u_second, int panels) {
    const double L = g->L;
    const double period = 2.0 * L;
    auto u_per = [&](double y) {
        y -= period * std::round(y / period);
        return u(y);
    };
    if (panels % 2 != 0) ++panels;
    const double h = L / static_cast<double>(panels);
    const double kc = M_PI / (2.0 * L);

    Field out(g);
#pragma omp parallel for schedule(static)
    for (int j = 0; j < g->n; ++j) {
        const double x = g->node(j);
        const double u_x = u(x);
        auto integrand = [&](double r) {
            if (r == 0.0) return -u_second(x);
            const double s = std::sin(kc * r);
            return (2.0 * u_x - u_per(x + r) - u_per(x - r)) * (kc * kc) / (s * s);
        };
        // Composite Simpson over [0, L] (panels forced even above).
        double acc = integrand(0.0) + integrand(L);
        for (int i = 1; i < panels; ++i) {
            acc += integrand(h * i) * (i % 2 == 1 ? 4.0 : 2.0);
        }
        out[j] = acc * h / 3.0 / M_PI;
    }
    return out;
}

TestSetup default_setup(int n, double theta) {
    TestSetup ts;
    ts.grid = make_grid(16.0, n);
    PeriodicFamilyParams params;
    ts.pot = make_periodic_potentials(ts.grid, params);
    NonlinearitySpec spec;
    spec.q = 4.0;
    spec.mu = 3.0;
    spec.theta = theta;
    spec.alpha0 = 1.0;
    spec.mode = NonlinearityMode::critical;
    ts.nl = {spec, spec};
    return ts;
}

StatePair random_state(const TestSetup& ts, std::mt19937_64& rng, double amplitude) {
    StatePair s = random_smooth_state(ts.grid, rng, 4.0);
    return amplitude * s;
}

}  // namespace fracgs::test
