#pragma once

#include "fracgs/grid.hpp"

namespace fracgs {

/** Fractional Laplacian (-Delta)^s as the Fourier multiplier |k|^(2s).
 *
 * Real input, real output (half-complex transforms). Only s = 1/4 and
 * s = 1/2 are admitted. Plane waves cos(k x) with on-grid k are exact
 * eigenvectors of the discrete operator.
 */
Field frac_laplacian(const Field& f, double s);

/// O(n^2) direct-DFT evaluation of the same multiplier; reference path for tests/bench.
Field frac_laplacian_direct(const Field& f, double s);

/// ||(-Delta)^(1/4) f||_{L^2}^2 evaluated from the spectrum (no inverse transform).
double quarter_kinetic_sq(const Field& f);

/** Squared Gagliardo seminorm [f]_{1/2}^2 by pairwise quadrature.
 *
 * Double rectangle sum of |f_i - f_j|^2 / d(x_i, x_j)^2 over node pairs with
 * the chordal torus distance d(u) = (2L/pi)|sin(pi u / 2L)| — the closed form
 * of the periodized 1/u^2 kernel, so 2*pi*||(-Delta)^(1/4) f||^2 is recovered
 * up to quadrature error. The i = j cell contributes the integrand limit
 * |f'(x_i)|^2 via a centered difference. OpenMP over rows; row partials are
 * combined in index order so results do not depend on the thread count.
 */
double gagliardo_seminorm_sq(const Field& f);

/// Single-threaded reference implementation of the same quadrature.
double gagliardo_seminorm_sq_serial(const Field& f);

/// Gaussian low-pass: multiplies mode k by exp(-(k/k_cut)^2).
Field spectral_lowpass(const Field& f, double k_cut);

/// Multiplies mode k by 1/(|k| + shift); inverse of the whitened symbol used
/// to precondition gradient flows. shift must be positive.
Field apply_inverse_symbol(const Field& f, double shift);

}  // namespace fracgs
