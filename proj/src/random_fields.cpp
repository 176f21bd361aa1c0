#include "fracgs/random_fields.hpp"

#include <cmath>

#include "fracgs/spectral.hpp"

namespace fracgs {

Field gaussian_bump(const GridPtr& g, double center, double width, double amplitude) {
    const double period = 2.0 * g->L;
    return sample(g, [&](double x) {
        double d = x - center;
        d -= period * std::round(d / period);
        return amplitude * std::exp(-d * d / (2.0 * width * width));
    });
}

Field random_gaussian_bump(const GridPtr& g, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uc(-0.5 * g->L, 0.5 * g->L);
    std::uniform_real_distribution<double> uw(0.5, 2.0);
    std::uniform_real_distribution<double> ua(0.5, 1.5);
    return gaussian_bump(g, uc(rng), uw(rng), ua(rng));
}

Field random_smooth_field(const GridPtr& g, std::mt19937_64& rng, double k_cut) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Field noise(g);
    for (int j = 0; j < g->n; ++j) noise[j] = gauss(rng);
    Field smooth = spectral_lowpass(noise, k_cut);
    const double peak = max_abs(smooth);
    if (peak > 0.0) smooth = (1.0 / peak) * smooth;
    return smooth;
}

StatePair random_smooth_state(const GridPtr& g, std::mt19937_64& rng, double k_cut) {
    Field u = random_smooth_field(g, rng, k_cut);
    Field v = random_smooth_field(g, rng, k_cut);
    return {std::move(u), std::move(v)};
}

}  // namespace fracgs
