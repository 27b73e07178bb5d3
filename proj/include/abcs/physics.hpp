// SPDX-License-Identifier: Apache-2.0
//
// Problem definition and derived kinematics: flux decomposition, wave
// numbers, relativistic Coulomb strength parameters, and per-channel
// classification of the indicial exponent.
#pragma once

#include <cmath>
#include <string>

#include "abcs/errors.hpp"
#include "abcs/specfun.hpp"

namespace abcs {

// Dimensionless problem definition. Natural units (hbar = c = 1) throughout;
// energies are measured against rest_energy (mu c^2).
struct PhysicalConfig {
    double gamma = 0.0;        // Coulomb coupling Z q^2 / (hbar c)
    double alpha = 0.0;        // flux parameter q phi / (2 pi hbar c)
    double rest_energy = 1.0;  // mu c^2

    void validate() const {
        if (!(std::abs(gamma) < 0.5))
            throw DomainError("PhysicalConfig: |gamma| must be < 1/2");
        if (!(rest_energy > 0.0))
            throw DomainError("PhysicalConfig: rest_energy must be > 0");
        if (!std::isfinite(alpha)) throw DomainError("PhysicalConfig: alpha not finite");
    }
};

// alpha = m0 + nu with integer m0 and nu in (-1/2, 1/2]. Observables depend
// on the flux only through nu.
struct FluxSplit {
    int m0 = 0;
    double nu = 0.0;
};

inline FluxSplit split_flux(double alpha) {
    if (!std::isfinite(alpha)) throw DomainError("split_flux: alpha not finite");
    const double m0 = std::ceil(alpha - 0.5);
    return FluxSplit{static_cast<int>(m0), alpha - m0};
}

// Angular channel labeled by half-odd-integer j; stored exactly via the
// integer m = j - 1/2.
struct Channel {
    int m = 0;
    double j() const { return m + 0.5; }
    static Channel from_j(double j) {
        const double m = j - 0.5;
        if (m != std::floor(m))
            throw DomainError("Channel: j must be a half-odd integer");
        return Channel{static_cast<int>(m)};
    }
};

// Derived quantities at a fixed scattering energy E > mu c^2.
struct Kinematics {
    double energy = 0.0;
    double k1 = 0.0;          // (E + mu c^2) / hbar c
    double k2 = 0.0;          // (E - mu c^2) / hbar c
    double k = 0.0;           // sqrt(k1 k2)
    double beta = 0.0;        // kappa / (hbar v_c) = gamma E / k
    double beta_prime = 0.0;  // beta sqrt(1 - v^2/c^2)
    double v_over_c = 0.0;    // k / E

    // beta'/beta = mu c^2 / E, well defined even at gamma = 0
    double beta_ratio() const { return (k1 - k2) / (k1 + k2); }
};

inline Kinematics kinematics(const PhysicalConfig& cfg, double energy) {
    cfg.validate();
    if (!(energy > cfg.rest_energy))
        throw DomainError("kinematics: need E > mu c^2 (scattering regime)");
    Kinematics kin;
    kin.energy = energy;
    kin.k1 = energy + cfg.rest_energy;
    kin.k2 = energy - cfg.rest_energy;
    kin.k = std::sqrt(kin.k1 * kin.k2);
    kin.v_over_c = kin.k / energy;
    kin.beta = cfg.gamma * energy / kin.k;
    kin.beta_prime = cfg.gamma * cfg.rest_energy / kin.k;
    return kin;
}

// Indicial behavior at the origin: real exponent s = sqrt((j+nu)^2 - gamma^2)
// when subcritical, imaginary exponent i gamma' otherwise.
struct ChannelExponent {
    enum class Kind { Subcritical, Supercritical };
    Kind kind = Kind::Subcritical;
    double s = 0.0;            // valid when Subcritical
    double gamma_prime = 0.0;  // valid when Supercritical

    bool subcritical() const { return kind == Kind::Subcritical; }
};

inline ChannelExponent channel_exponent(Channel ch, const FluxSplit& split,
                                        double gamma) {
    const double x = ch.j() + split.nu;
    const double d = x * x - gamma * gamma;
    if (std::abs(d) < 1e-12)
        throw DomainError("channel_exponent: (j+nu)^2 = gamma^2 critical boundary");
    ChannelExponent ex;
    if (d > 0.0) {
        ex.kind = ChannelExponent::Kind::Subcritical;
        ex.s = std::sqrt(d);
    } else {
        ex.kind = ChannelExponent::Kind::Supercritical;
        ex.gamma_prime = std::sqrt(-d);
    }
    return ex;
}

}  // namespace abcs
