// SPDX-License-Identifier: Apache-2.0
//
// Bound-state energy levels E_nj = mu c^2 / sqrt(1 + gamma^2/(n+s)^2) and
// their degeneracy pattern.
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "abcs/physics.hpp"

namespace abcs {

struct BoundLevel {
    int n = 0;
    double j = 0.5;
    double energy = 0.0;
    int degeneracy = 1;
};

inline double energy_level(int n, Channel ch, const FluxSplit& split,
                           double gamma, double rest_energy) {
    if (!(gamma > 0.0))
        throw DomainError("energy_level: bound states require gamma > 0");
    if (n < 0) throw DomainError("energy_level: n must be >= 0");
    if (n == 0 && ch.j() < 0.0)
        throw DomainError("energy_level: n = 0 exists only for j > 0");
    const ChannelExponent ex = channel_exponent(ch, split, gamma);
    if (!ex.subcritical())
        throw DomainError("energy_level: supercritical channel unsupported");
    const double ns = n + ex.s;
    return rest_energy / std::sqrt(1.0 + gamma * gamma / (ns * ns));
}

// Enumerates levels for 0 <= n <= n_max, |j| <= j_max. At nu = 0 the n >= 1
// levels depend on |j| only and the +-j pair is merged with degeneracy 2.
inline std::vector<BoundLevel> spectrum(int n_max, double j_max,
                                        const FluxSplit& split, double gamma,
                                        double rest_energy) {
    if (n_max < 0) throw DomainError("spectrum: n_max must be >= 0");
    std::vector<BoundLevel> levels;
    const double tie = 1e-12 * rest_energy;
    const int m_hi = static_cast<int>(std::floor(j_max - 0.5));
    // positive j first so a negative-j level can merge into its partner
    std::vector<int> ms;
    for (int m = 0; m <= m_hi; ++m) ms.push_back(m);
    for (int m = -1; m >= -m_hi - 1; --m) ms.push_back(m);
    for (int n = 0; n <= n_max; ++n) {
        for (int m : ms) {
            const Channel ch{m};
            if (std::abs(ch.j()) > j_max + 1e-12) continue;
            if (n == 0 && ch.j() < 0.0) continue;
            const double e = energy_level(n, ch, split, gamma, rest_energy);
            if (split.nu == 0.0 && n >= 1 && ch.j() < 0.0) {
                // merge with the +|j| partner
                bool merged = false;
                for (auto& lv : levels) {
                    if (lv.n == n && lv.j == -ch.j() &&
                        std::abs(lv.energy - e) <= tie) {
                        lv.degeneracy = 2;
                        merged = true;
                        break;
                    }
                }
                if (merged) continue;
            }
            levels.push_back(BoundLevel{n, ch.j(), e, 1});
        }
    }
    std::sort(levels.begin(), levels.end(), [](const BoundLevel& a, const BoundLevel& b) {
        if (a.energy != b.energy) return a.energy < b.energy;
        if (a.n != b.n) return a.n < b.n;
        return a.j < b.j;
    });
    return levels;
}

}  // namespace abcs
