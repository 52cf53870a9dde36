#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "permrm/fft.hpp"

namespace permrm {

/// Law of a nonpositive random variable with a continuous part on (grid_start, 0)
/// and an atom at 0. The continuous part is discretized on the lattice
/// x_i = -(i+1)*step: density[i] is the density at x_i, so the cell mass is
/// density[i]*step. Lattice positions are closed under addition
/// (x_i + x_j = x_{i+j+1}), which keeps repeated convolution free of
/// cumulative grid shift. The atom is a scalar, never smeared onto the grid.
struct MixedDistribution {
    double step = 0.0;
    std::vector<double> density;
    double mass_at_zero = 0.0;
    double grid_start = 0.0;  // lower support edge, -(size() + 0.5)*step

    std::size_t size() const { return density.size(); }
    double position(std::size_t i) const { return -static_cast<double>(i + 1) * step; }
    double cell_mass(std::size_t i) const { return density[i] * step; }

    double continuous_mass() const {
        double s = 0.0;
        for (std::size_t i = density.size(); i-- > 0;) s += density[i];
        return s * step;
    }
    double total_mass() const { return mass_at_zero + continuous_mass(); }

    /// CDF at the lattice points, far end first summed, plus the value at 0-:
    /// cdf[i] = P(X <= x_i).
    std::vector<double> lattice_cdf() const {
        std::vector<double> cdf(density.size(), 0.0);
        double acc = 0.0;
        for (std::size_t i = density.size(); i-- > 0;) {
            acc += density[i] * step;
            cdf[i] = acc;
        }
        return cdf;
    }

    /// Pure atom at zero: the identity element of convolve().
    static MixedDistribution unit(double step) {
        MixedDistribution d;
        d.step = step;
        d.mass_at_zero = 1.0;
        d.grid_start = -0.5 * step;
        return d;
    }
};

/// Distribution of the sum of two independent variables. Continuous x
/// continuous goes through discrete convolution of the cell masses; each
/// density also reappears scaled by the other side's atom; the atoms multiply.
/// `max_cells` truncates the far tail (used by the n-fold builder to cap work
/// at the support that can matter); the lost mass is far below any quantile of
/// interest and is not renormalized.
inline MixedDistribution convolve(const MixedDistribution& a, const MixedDistribution& b,
                                  std::size_t max_cells = std::numeric_limits<std::size_t>::max()) {
    if (a.step <= 0.0 || b.step <= 0.0)
        throw std::invalid_argument("convolve: distributions must carry a positive grid step");
    if (std::fabs(a.step - b.step) > 1e-12 * a.step)
        throw std::invalid_argument("convolve: grid steps differ (" + std::to_string(a.step) +
                                    " vs " + std::to_string(b.step) + ")");

    std::size_t ka = a.size(), kb = b.size();
    std::size_t full = (ka && kb) ? ka + kb : std::max(ka, kb);
    std::size_t k = std::min(full, max_cells);

    MixedDistribution out;
    out.step = a.step;
    out.mass_at_zero = a.mass_at_zero * b.mass_at_zero;
    out.density.assign(k, 0.0);
    out.grid_start = -(static_cast<double>(k) + 0.5) * out.step;

    if (ka && kb) {
        std::vector<double> cont = detail::convolve_real(a.density, b.density);
        // cont[t] pairs x_i + x_j with t = i + j, landing on lattice index t + 1
        std::size_t limit = std::min(cont.size(), k > 0 ? k - 1 : 0);
        for (std::size_t t = 0; t < limit; ++t)
            out.density[t + 1] = std::max(cont[t], 0.0) * out.step;
    }
    for (std::size_t i = 0; i < std::min(ka, k); ++i) out.density[i] += b.mass_at_zero * a.density[i];
    for (std::size_t i = 0; i < std::min(kb, k); ++i) out.density[i] += a.mass_at_zero * b.density[i];
    return out;
}

} // namespace permrm
