#pragma once

#include <functional>
#include <random>

#include "fracgs/functional.hpp"
#include "fracgs/grid.hpp"
#include "fracgs/model.hpp"

namespace fracgs::test {

inline double rel_err(double a, double b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

/** Independent oracle for the half Laplacian on the torus: principal-value
 * quadrature of the singular-integral form with the periodized kernel,
 *
 *   (1/pi) int_0^L (2u(x) - u(x+r) - u(x-r)) (pi/2L)^2 / sin^2(pi r/2L) dr,
 *
 * evaluated by composite Simpson with the r -> 0 limit -u''(x) supplied
 * analytically. No Fourier transform is involved anywhere.
 */
Field pv_half_laplacian_oracle(const GridPtr& g, const std::function<double(double)>& u,
                               const std::function<double(double)>& u_second,
                               int panels = 20000);

/// Default model used across suites: L=16, N=1024 sine/cosine potentials.
struct TestSetup {
    GridPtr grid;
    PotentialSet pot;
    NonlinearityPair nl;
};

TestSetup default_setup(int n = 1024, double theta = 40.0);

/// Random smooth states with a deterministic stream.
StatePair random_state(const TestSetup& ts, std::mt19937_64& rng, double amplitude = 1.0);

}  // namespace fracgs::test
