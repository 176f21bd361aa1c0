#include "fracgs/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <vector>

namespace fracgs {

namespace {

// FFTW planning is not thread-safe; executing a plan on fresh arrays is.
// Plans are cached per transform size and created under a lock. FFTW_ESTIMATE
// keeps planning deterministic, which the reproducibility contract relies on.
struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

PlanPair get_plans(int n) {
    static std::map<int, PlanPair> cache;
    std::lock_guard<std::mutex> lock(planner_mutex());
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    double* re = fftw_alloc_real(static_cast<size_t>(n));
    fftw_complex* cx = fftw_alloc_complex(static_cast<size_t>(n / 2 + 1));
    PlanPair p;
    p.fwd = fftw_plan_dft_r2c_1d(n, re, cx, FFTW_ESTIMATE);
    p.bwd = fftw_plan_dft_c2r_1d(n, cx, re, FFTW_ESTIMATE);
    fftw_free(re);
    fftw_free(cx);
    cache[n] = p;
    return p;
}

struct FftBuffers {
    double* re = nullptr;
    fftw_complex* cx = nullptr;
    explicit FftBuffers(int n) {
        re = fftw_alloc_real(static_cast<size_t>(n));
        cx = fftw_alloc_complex(static_cast<size_t>(n / 2 + 1));
    }
    ~FftBuffers() {
        fftw_free(re);
        fftw_free(cx);
    }
    FftBuffers(const FftBuffers&) = delete;
    FftBuffers& operator=(const FftBuffers&) = delete;
};

template <typename Weight>
Field apply_symbol(const Field& f, Weight&& w) {
    const int n = f.size();
    PlanPair plans = get_plans(n);
    FftBuffers buf(n);
    for (int j = 0; j < n; ++j) buf.re[j] = f[j];
    fftw_execute_dft_r2c(plans.fwd, buf.re, buf.cx);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (int m = 0; m <= n / 2; ++m) {
        const double mult = w(f.grid->freq(m)) * inv_n;
        buf.cx[m][0] *= mult;
        buf.cx[m][1] *= mult;
    }
    fftw_execute_dft_c2r(plans.bwd, buf.cx, buf.re);
    Field out(f.grid);
    for (int j = 0; j < n; ++j) out[j] = buf.re[j];
    return out;
}

void check_exponent(double s) {
    if (s != 0.25 && s != 0.5) {
        throw std::invalid_argument("frac_laplacian: exponent must be 1/4 or 1/2");
    }
}

}  // namespace

Field frac_laplacian(const Field& f, double s) {
    check_exponent(s);
    require_finite(f, "frac_laplacian");
    const double two_s = 2.0 * s;
    return apply_symbol(f, [two_s](double k) { return std::pow(k, two_s); });
}

Field frac_laplacian_direct(const Field& f, double s) {
    check_exponent(s);
    require_finite(f, "frac_laplacian_direct");
    const int n = f.size();
    const Grid1D& g = *f.grid;

    // Naive half-spectrum DFT; independent of FFTW.
    std::vector<std::complex<double>> spec(static_cast<size_t>(n / 2 + 1));
    for (int m = 0; m <= n / 2; ++m) {
        std::complex<double> acc(0.0, 0.0);
        const double w = -2.0 * M_PI * static_cast<double>(m) / static_cast<double>(n);
        for (int j = 0; j < n; ++j) {
            acc += f[j] * std::complex<double>(std::cos(w * j), std::sin(w * j));
        }
        spec[static_cast<size_t>(m)] = acc * std::pow(g.freq(m), 2.0 * s);
    }
    Field out(f.grid);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (int j = 0; j < n; ++j) {
        double acc = spec[0].real();
        const double w = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(n);
        for (int m = 1; m < n / 2; ++m) {
            const std::complex<double> ph(std::cos(w * m), std::sin(w * m));
            acc += 2.0 * (spec[static_cast<size_t>(m)] * ph).real();
        }
        acc += (spec[static_cast<size_t>(n / 2)] *
                std::complex<double>(std::cos(w * (n / 2)), std::sin(w * (n / 2))))
                   .real();
        out[j] = acc * inv_n;
    }
    return out;
}

double quarter_kinetic_sq(const Field& f) {
    require_finite(f, "quarter_kinetic_sq");
    const int n = f.size();
    const Grid1D& g = *f.grid;

    PlanPair plans = get_plans(n);
    FftBuffers buf(n);
    for (int j = 0; j < n; ++j) buf.re[j] = f[j];
    fftw_execute_dft_r2c(plans.fwd, buf.re, buf.cx);

    // Parseval: sum_j f_j^2 dx = (dx/n) sum_m |fhat_m|^2 over the full spectrum.
    double acc = 0.0;
    for (int m = 1; m < n / 2; ++m) {
        const double a = buf.cx[m][0], b = buf.cx[m][1];
        acc += 2.0 * g.freq(m) * (a * a + b * b);
    }
    {
        const int m = n / 2;
        const double a = buf.cx[m][0], b = buf.cx[m][1];
        acc += g.freq(m) * (a * a + b * b);
    }
    return acc * g.dx / static_cast<double>(n);
}

namespace {

// Inverse squared chordal distances by node offset m = 1..n-1:
// 1/d(m*dx)^2 with d(u) = (2L/pi) |sin(pi u / 2L)|, i.e. (pi/2L)^2 / sin^2(pi m / n).
std::vector<double> chordal_inv_sq(const Grid1D& g) {
    const int n = g.n;
    std::vector<double> invd2(static_cast<size_t>(n), 0.0);
    const double c = M_PI / (2.0 * g.L);
    for (int m = 1; m < n; ++m) {
        const double s = std::sin(M_PI * static_cast<double>(m) / static_cast<double>(n));
        invd2[static_cast<size_t>(m)] = (c * c) / (s * s);
    }
    return invd2;
}

double gagliardo_row(const Field& f, const std::vector<double>& invd2, int i) {
    const int n = f.size();
    const double fi = f[i];
    const int ip = (i + 1) % n;
    const int im = (i + n - 1) % n;
    const double slope = (f[ip] - f[im]) / (2.0 * f.grid->dx);
    double acc = slope * slope;
    for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        const double d = fi - f[j];
        acc += d * d * invd2[static_cast<size_t>((j - i + n) % n)];
    }
    return acc;
}

}  // namespace

double gagliardo_seminorm_sq(const Field& f) {
    require_finite(f, "gagliardo_seminorm_sq");
    const int n = f.size();
    const double dx = f.grid->dx;
    const std::vector<double> invd2 = chordal_inv_sq(*f.grid);

    // Row partials are combined in index order afterwards, so the result does
    // not depend on the OpenMP schedule or thread count.
    std::vector<double> row(static_cast<size_t>(n));
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        row[static_cast<size_t>(i)] = gagliardo_row(f, invd2, i);
    }
    double total = 0.0;
    for (int i = 0; i < n; ++i) total += row[static_cast<size_t>(i)];
    return total * dx * dx;
}

double gagliardo_seminorm_sq_serial(const Field& f) {
    require_finite(f, "gagliardo_seminorm_sq_serial");
    const int n = f.size();
    const double dx = f.grid->dx;
    const std::vector<double> invd2 = chordal_inv_sq(*f.grid);

    double total = 0.0;
    for (int i = 0; i < n; ++i) total += gagliardo_row(f, invd2, i);
    return total * dx * dx;
}

Field spectral_lowpass(const Field& f, double k_cut) {
    if (!(k_cut > 0.0)) throw std::invalid_argument("spectral_lowpass: k_cut must be positive");
    return apply_symbol(f, [k_cut](double k) {
        const double r = k / k_cut;
        return std::exp(-r * r);
    });
}

Field apply_inverse_symbol(const Field& f, double shift) {
    if (!(shift > 0.0)) {
        throw std::invalid_argument("apply_inverse_symbol: shift must be positive");
    }
    return apply_symbol(f, [shift](double k) { return 1.0 / (k + shift); });
}

}  // namespace fracgs
