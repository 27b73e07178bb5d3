// SPDX-License-Identifier: Apache-2.0
//
// Per-channel S-matrix values: the exact unitary expression, its small-gamma
// approximation, the mean-S prescription for a supercritical channel, and
// the analytic radial wavefunctions the S-matrix is read off from.
#pragma once

#include <cmath>
#include <complex>
#include <utility>

#include "abcs/physics.hpp"
#include "abcs/specfun.hpp"

namespace abcs {

enum class SMethod { Exact, Approx, SupercriticalMean };

struct ChannelResult {
    Channel channel;
    ChannelExponent exponent;
    cplx s_value{0.0, 0.0};
    double phase_shift = 0.0;   // eta_j = arg(S)/2, folded to (-pi/2, pi/2]
    bool phase_defined = false; // only when |S| = 1 within tolerance
    SMethod method = SMethod::Exact;
};

namespace detail {

inline void set_phase(ChannelResult& r) {
    if (std::abs(std::abs(r.s_value) - 1.0) < 1e-10) {
        r.phase_shift = 0.5 * std::arg(r.s_value);
        r.phase_defined = true;
    }
}

}  // namespace detail

// S_j = (j+nu+i beta') Gamma(s-i beta)/Gamma(s+1+i beta) exp(i(j-s)pi),
// defined for subcritical channels; exactly unimodular.
inline ChannelResult s_exact(Channel ch, const Kinematics& kin,
                             const FluxSplit& split, double gamma) {
    const ChannelExponent ex = channel_exponent(ch, split, gamma);
    if (!ex.subcritical())
        throw DomainError("s_exact: channel is supercritical");
    const double x = ch.j() + split.nu;
    const cplx ratio =
        gamma_ratio(cplx(ex.s, -kin.beta), cplx(ex.s + 1.0, kin.beta));
    // j - s in real arithmetic first; avoids branch flips at large |j|
    const cplx phase = std::polar(1.0, (ch.j() - ex.s) * kPi);
    ChannelResult r{ch, ex, cplx(x, kin.beta_prime) * ratio * phase,
                    0.0, false, SMethod::Exact};
    detail::set_phase(r);
    return r;
}

// Small-gamma approximation (s replaced by |j+nu|); valid away from
// |nu| close to 1/2 for the edge channels.
inline ChannelResult s_approx(Channel ch, const Kinematics& kin,
                              const FluxSplit& split) {
    const double b = kin.beta;
    const double db = kin.beta - kin.beta_prime;
    const double nu = split.nu;
    cplx s;
    if (ch.m >= 0) {  // j > 0
        const double x = ch.m + nu + 0.5;
        const cplx pre = std::polar(1.0, -nu * kPi);
        s = pre * gamma_ratio(cplx(x, -b), cplx(x, b)) -
            cplx(0.0, db) * pre * gamma_ratio(cplx(x, -b), cplx(x + 1.0, b));
    } else {  // j < 0
        const double x = -ch.m - nu + 0.5;  // |m| - nu + 1/2
        const cplx pre = std::polar(1.0, nu * kPi);
        s = pre * gamma_ratio(cplx(x, -b), cplx(x, b)) +
            cplx(0.0, db) * pre * gamma_ratio(cplx(x - 1.0, -b), cplx(x, b));
    }
    ChannelResult r{ch, ChannelExponent{}, s, 0.0, false, SMethod::Approx};
    const double x = ch.j() + nu;
    r.exponent.kind = ChannelExponent::Kind::Subcritical;
    r.exponent.s = std::abs(x);
    detail::set_phase(r);
    return r;
}

// The two equally admissible oscillatory-origin solutions of a supercritical
// channel, obtained from the exact S by the continuation s -> +-i gamma'.
// Neither is unimodular; the physical prescription takes their mean.
inline std::pair<cplx, cplx> s_supercritical_pair(Channel ch, const Kinematics& kin,
                                                  const FluxSplit& split,
                                                  double gamma) {
    const ChannelExponent ex = channel_exponent(ch, split, gamma);
    if (ex.subcritical())
        throw DomainError("s_supercritical: channel is not supercritical");
    const double gp = ex.gamma_prime;
    const double x = ch.j() + split.nu;
    const cplx jphase = std::polar(1.0, ch.j() * kPi);
    auto branch = [&](double g) {
        return cplx(x, kin.beta_prime) *
               gamma_ratio(cplx(0.0, g - kin.beta), cplx(1.0, kin.beta + g)) *
               jphase * std::exp(g * kPi);
    };
    return {branch(gp), branch(-gp)};
}

inline ChannelResult s_supercritical(Channel ch, const Kinematics& kin,
                                     const FluxSplit& split, double gamma) {
    auto [s1, s2] = s_supercritical_pair(ch, kin, split, gamma);
    ChannelResult r{ch, channel_exponent(ch, split, gamma), 0.5 * (s1 + s2),
                    0.0, false, SMethod::SupercriticalMean};
    return r;
}

// Routed S value: exact where subcritical, mean prescription otherwise.
inline ChannelResult s_matrix(Channel ch, const Kinematics& kin,
                              const FluxSplit& split, double gamma) {
    const ChannelExponent ex = channel_exponent(ch, split, gamma);
    if (ex.subcritical()) return s_exact(ch, kin, split, gamma);
    return s_supercritical(ch, kin, split, gamma);
}

// Analytic radial wavefunctions (f, g) of a subcritical channel at rho = k r,
// normalized so that the large-rho asymptotics carry S_j directly.
inline std::pair<cplx, cplx> radial_wavefunction_analytic(
    Channel ch, const Kinematics& kin, const FluxSplit& split, double gamma,
    double rho, const AccelConfig& cfg = AccelConfig{}) {
    if (!(rho > 0.0)) throw DomainError("radial_wavefunction_analytic: rho must be > 0");
    const ChannelExponent ex = channel_exponent(ch, split, gamma);
    if (!ex.subcritical())
        throw DomainError("radial_wavefunction_analytic: supercritical channel");
    const double s = ex.s;
    const double b = kin.beta;
    const double x = ch.j() + split.nu;
    const cplx a(s, -b);
    const cplx bb(2.0 * s + 1.0, 0.0);
    const cplx z(0.0, -2.0 * rho);

    const cplx amp_A = cplx(0.0, 1.0) * std::sqrt(2.0 / (kPi * kin.k)) /
                       std::sqrt(kin.k1 + kin.k2);
    const double sign_m = (ch.m % 2 == 0) ? 1.0 : -1.0;  // e^{i m pi}
    const cplx aj = amp_A * std::pow(2.0, s) * cplx(x, kin.beta_prime) *
                    gamma_ratio(a, bb) * std::exp(b * kPi / 2.0) * sign_m *
                    std::polar(1.0, -s * kPi / 2.0 + kPi / 4.0);

    const cplx u = aj * std::pow(rho, s) * kummer_phi(a, bb, z, cfg);
    const cplx v = aj * (a / cplx(x, kin.beta_prime)) * std::pow(rho, s) *
                   kummer_phi(a + 1.0, bb, z, cfg);
    const cplx eir = std::polar(1.0, rho);
    const cplx f = 0.5 * std::sqrt(kin.k1) * eir * (u + v);
    const cplx g = cplx(0.0, -0.5) * std::sqrt(kin.k2) * eir * (u - v);
    return {f, g};
}

}  // namespace abcs
