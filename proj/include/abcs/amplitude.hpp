// SPDX-License-Identifier: Apache-2.0
//
// Scattering amplitude f(theta) and differential cross section: the
// regularized partial-wave series, the small-gamma closed forms at general
// nu, and the fully closed nu = 0 and nu = 1/2 results.
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "abcs/physics.hpp"
#include "abcs/smatrix.hpp"
#include "abcs/specfun.hpp"

namespace abcs {

struct AngularGrid {
    std::vector<double> theta;  // radians, each in [theta_min, 2pi - theta_min]

    explicit AngularGrid(std::vector<double> values) : theta(std::move(values)) {
        for (double th : theta)
            if (!(th >= kThetaMin && th <= 2.0 * kPi - kThetaMin))
                throw DomainError("AngularGrid: angle outside [theta_min, 2pi - theta_min]");
    }

    static AngularGrid uniform_degrees(double min_deg, double max_deg, int count) {
        if (count < 1) throw DomainError("AngularGrid: count must be >= 1");
        std::vector<double> v;
        const double step = (count > 1) ? (max_deg - min_deg) / (count - 1) : 0.0;
        for (int i = 0; i < count; ++i)
            v.push_back((min_deg + i * step) * kPi / 180.0);
        return AngularGrid(std::move(v));
    }
};

enum class AmpMethod { SeriesExact, ClosedNu0, ClosedNuHalf, ClosedGeneric };

// Which S_j enters the partial-wave sum.
enum class SeriesCoefficients { Exact, Approx };

struct SeriesDiagnostics {
    int terms_used = 0;
    double max_residual = 0.0;
};

struct AmplitudeProfile {
    AngularGrid grid;
    std::vector<cplx> f_values;
    std::vector<double> sigma_values;  // |f|^2 pointwise
    AmpMethod method = AmpMethod::SeriesExact;
    std::optional<SeriesDiagnostics> series_diagnostics;
};

inline AccelConfig series_accel_defaults() {
    AccelConfig cfg;
    cfg.tolerance = 1e-7;
    return cfg;
}

namespace detail {

// Gamma(1/2-nu+i b) Gamma(1/2+nu-i b) / (Gamma(i b) Gamma(1/2+i b)):
// coefficient of the Rutherford-like pole term. Vanishes with b.
inline cplx pole_coefficient(double nu, double b) {
    if (b == 0.0) return cplx(0.0, 0.0);
    return std::exp(log_gamma(cplx(0.5 - nu, b)) + log_gamma(cplx(0.5 + nu, -b)) -
                    log_gamma(cplx(0.0, b)) - log_gamma(cplx(0.5, b)));
}

inline cplx coulomb_log_phase(double b, double theta) {
    const double s = std::sin(0.5 * theta);
    return std::polar(1.0, b * std::log(s * s));
}

}  // namespace detail

// --- closed small-gamma forms ------------------------------------------------

// Nonrelativistic part, robust form: explicit pole term plus one unit-circle
// hypergeometric term. Well defined for the whole range of nu.
inline cplx closed_f0(double theta, double nu, double beta, double k,
                      const AccelConfig& cfg = AccelConfig{}) {
    const double sh = std::sin(0.5 * theta);
    const cplx pole = cplx(0.0, -1.0) * std::polar(1.0, -nu * theta) *
                      detail::pole_coefficient(nu, beta) *
                      detail::coulomb_log_phase(beta, theta) /
                      (std::sqrt(2.0 * k) * sh);
    cplx bracket;
    if (beta == 0.0) {
        bracket = cplx(0.0, 2.0 * std::sin(nu * kPi));
    } else {
        bracket = std::polar(1.0, nu * kPi) *
                      gamma_ratio(cplx(1.5 - nu, -beta), cplx(1.5 - nu, beta)) -
                  std::polar(1.0, -nu * kPi) *
                      gamma_ratio(cplx(-0.5 + nu, -beta), cplx(-0.5 + nu, beta));
    }
    const cplx zm = std::polar(1.0, -theta);
    const cplx rest = cplx(0.0, -1.0) / std::sqrt(2.0 * kPi * k) * bracket * zm *
                      gauss_f1ab(cplx(1.5 - nu, -beta), cplx(1.5 - nu, beta), zm, cfg);
    return pole + rest;
}

// Same quantity as closed_f0 via the two-hypergeometric form (arguments at
// e^{+i theta} and e^{-i theta}).
inline cplx closed_f0_direct(double theta, double nu, double beta, double k,
                             const AccelConfig& cfg = AccelConfig{}) {
    const cplx zp = std::polar(1.0, theta);
    const cplx zm = std::polar(1.0, -theta);
    const cplx t1 = std::polar(1.0, -nu * kPi) *
                    gamma_ratio(cplx(0.5 + nu, -beta), cplx(0.5 + nu, beta)) *
                    gauss_f1ab(cplx(0.5 + nu, -beta), cplx(0.5 + nu, beta), zp, cfg);
    const cplx t2 = std::polar(1.0, nu * kPi) *
                    gamma_ratio(cplx(1.5 - nu, -beta), cplx(1.5 - nu, beta)) * zm *
                    gauss_f1ab(cplx(1.5 - nu, -beta), cplx(1.5 - nu, beta), zm, cfg);
    return cplx(0.0, -1.0) / std::sqrt(2.0 * kPi * k) * (t1 + t2);
}

// Relativistic correction, robust form. Vanishes identically at beta' = beta.
inline cplx closed_f1(double theta, double nu, double beta, double beta_prime,
                      double k, const AccelConfig& cfg = AccelConfig{}) {
    if (beta == 0.0) return cplx(0.0, 0.0);
    const cplx pole = -(1.0 - beta_prime / beta) *
                      detail::pole_coefficient(nu, beta) *
                      std::polar(1.0, -0.5 * theta - nu * theta) *
                      detail::coulomb_log_phase(beta, theta) / std::sqrt(2.0 * k);
    const cplx bracket =
        std::polar(1.0, nu * kPi) *
            gamma_ratio(cplx(0.5 - nu, -beta), cplx(1.5 - nu, beta)) +
        std::polar(1.0, -nu * kPi) *
            gamma_ratio(cplx(-0.5 + nu, -beta), cplx(0.5 + nu, beta));
    const cplx zm = std::polar(1.0, -theta);
    const cplx rest = (beta - beta_prime) / std::sqrt(2.0 * kPi * k) * bracket * zm *
                      gauss_f1ab(cplx(0.5 - nu, -beta), cplx(1.5 - nu, beta), zm, cfg);
    return pole + rest;
}

// Same quantity as closed_f1 via the two-hypergeometric form.
inline cplx closed_f1_direct(double theta, double nu, double beta,
                             double beta_prime, double k,
                             const AccelConfig& cfg = AccelConfig{}) {
    if (beta == beta_prime) return cplx(0.0, 0.0);
    const cplx zp = std::polar(1.0, theta);
    const cplx zm = std::polar(1.0, -theta);
    const cplx t1 = std::polar(1.0, -nu * kPi) *
                    gamma_ratio(cplx(0.5 + nu, -beta), cplx(1.5 + nu, beta)) *
                    gauss_f1ab(cplx(0.5 + nu, -beta), cplx(1.5 + nu, beta), zp, cfg);
    const cplx t2 = std::polar(1.0, nu * kPi) *
                    gamma_ratio(cplx(0.5 - nu, -beta), cplx(1.5 - nu, beta)) * zm *
                    gauss_f1ab(cplx(0.5 - nu, -beta), cplx(1.5 - nu, beta), zm, cfg);
    return -(beta - beta_prime) / std::sqrt(2.0 * kPi * k) * (t1 - t2);
}

// --- fully closed special cases ----------------------------------------------

// nu = 0: pure-Coulomb-like closed amplitude.
inline cplx closed_amplitude_nu0(const Kinematics& kin, double theta) {
    const double b = kin.beta;
    if (b == 0.0) return cplx(0.0, 0.0);  // free particle
    const double sh = std::sin(0.5 * theta);
    const cplx bracket =
        1.0 - cplx(0.0, 1.0) * std::polar(1.0, -0.5 * theta) * sh *
                  (1.0 - kin.beta_prime / b);
    return cplx(0.0, -1.0) * gamma_ratio(cplx(0.5, -b), cplx(0.0, b)) *
           detail::coulomb_log_phase(b, theta) / (std::sqrt(2.0 * kin.k) * sh) *
           bracket;
}

// nu = 1/2: closed amplitude; beta Gamma(-i beta) is evaluated as
// i Gamma(1 - i beta) so the beta -> 0 limit is regular.
inline cplx closed_amplitude_nu_half(const Kinematics& kin, double theta) {
    const double b = kin.beta;
    const double sh = std::sin(0.5 * theta);
    const double rel = 1.0 - kin.beta_ratio();
    const cplx bracket =
        1.0 - cplx(0.0, 1.0) * std::polar(1.0, -0.5 * theta) * sh * rel;
    return -std::polar(1.0, -0.5 * theta) * cplx(0.0, 1.0) *
           gamma_ratio(cplx(1.0, -b), cplx(0.5, b)) *
           detail::coulomb_log_phase(b, theta) / (std::sqrt(2.0 * kin.k) * sh) *
           bracket;
}

// Closed differential cross sections (the tanh/coth pair).
inline double cross_section_nu0(const Kinematics& kin, double theta) {
    const double b = kin.beta;
    const double s2 = std::sin(0.5 * theta) * std::sin(0.5 * theta);
    const double v2 = kin.v_over_c * kin.v_over_c;
    return b * std::tanh(b * kPi) / (2.0 * kin.k * s2) * (1.0 - v2 * s2);
}

inline double cross_section_nu_half(const Kinematics& kin, double theta) {
    const double b = kin.beta;
    const double s2 = std::sin(0.5 * theta) * std::sin(0.5 * theta);
    const double v2 = kin.v_over_c * kin.v_over_c;
    const double bcoth = (b == 0.0) ? 1.0 / kPi : b / std::tanh(b * kPi);
    return bcoth / (2.0 * kin.k * s2) * (1.0 - v2 * s2);
}

// --- regularized partial-wave series -----------------------------------------

namespace detail {

struct SeriesCoefficientTable {
    std::vector<cplx> pos;  // S_{m+1/2}, m = 0..n
    std::vector<cplx> neg;  // S_{-m+1/2}, m = 1..n (index m-1)
};

inline SeriesCoefficientTable build_coefficients(const Kinematics& kin,
                                                 const FluxSplit& split,
                                                 double gamma, int n_max,
                                                 SeriesCoefficients kind) {
    SeriesCoefficientTable tab;
    tab.pos.reserve(n_max + 1);
    tab.neg.reserve(n_max);
    auto value = [&](int m) {
        const Channel ch{m};
        if (kind == SeriesCoefficients::Approx) return s_approx(ch, kin, split).s_value;
        return s_matrix(ch, kin, split, gamma).s_value;
    };
    for (int m = 0; m <= n_max; ++m) tab.pos.push_back(value(m));
    for (int m = 1; m <= n_max; ++m) tab.neg.push_back(value(-m));
    return tab;
}

}  // namespace detail

// f(theta) = -i/sqrt(2 pi k) sum_j S_j e^{i m theta}, Abel-damped by t^{|m|}
// over the damping grid and extrapolated t -> 1. A supercritical j = -1/2
// channel enters through the mean-S prescription automatically.
inline AmplitudeProfile amplitude_series(
    const Kinematics& kin, const FluxSplit& split, double gamma,
    const AngularGrid& grid, const AccelConfig& accel = series_accel_defaults(),
    SeriesCoefficients coeffs = SeriesCoefficients::Exact) {
    accel.validate();
    const std::size_t nt = accel.damping_grid.size();

    // per-damping-point cutoff from the tail bound t^N / (1-t) < 0.01 tol
    std::vector<int> cutoff(nt);
    int n_max = 0;
    for (std::size_t kd = 0; kd < nt; ++kd) {
        const double t = accel.damping_grid[kd];
        const double target = 0.01 * accel.tolerance * (1.0 - t);
        int n = static_cast<int>(std::ceil(std::log(target) / std::log(t))) + 1;
        n = std::min(n, accel.max_terms);
        cutoff[kd] = n;
        n_max = std::max(n_max, n);
    }

    const auto tab =
        detail::build_coefficients(kin, split, gamma, n_max, coeffs);

    std::vector<double> h(nt);
    for (std::size_t kd = 0; kd < nt; ++kd) h[kd] = 1.0 - accel.damping_grid[kd];

    AmplitudeProfile prof{grid, {}, {}, AmpMethod::SeriesExact, SeriesDiagnostics{}};
    prof.series_diagnostics->terms_used = n_max;
    const cplx norm = cplx(0.0, -1.0) / std::sqrt(2.0 * kPi * kin.k);

    for (double theta : grid.theta) {
        const cplx ep = std::polar(1.0, theta);
        const cplx em = std::conj(ep);
        std::vector<cplx> vals(nt);
        for (std::size_t kd = 0; kd < nt; ++kd) {
            const double t = accel.damping_grid[kd];
            cplx sum = tab.pos[0];
            cplx fp = ep, fm = em;  // e^{+-i m theta}
            double tw = t;
            for (int m = 1; m <= cutoff[kd]; ++m) {
                sum += tw * (tab.pos[m] * fp + tab.neg[m - 1] * fm);
                tw *= t;
                fp *= ep;
                fm *= em;
            }
            vals[kd] = sum;
        }
        auto [value, resid] = detail::extrapolate_to_zero(h, vals);
        if (resid > 10.0 * accel.tolerance * (1.0 + std::abs(value)))
            throw ConvergenceError("amplitude_series: extrapolation residual too large",
                                   resid);
        prof.series_diagnostics->max_residual =
            std::max(prof.series_diagnostics->max_residual, resid);
        const cplx f = norm * value;
        prof.f_values.push_back(f);
        prof.sigma_values.push_back(std::norm(f));
    }
    return prof;
}

// --- closed-form profiles ------------------------------------------------------

inline AmplitudeProfile amplitude_closed_nu0(const Kinematics& kin,
                                             const AngularGrid& grid) {
    AmplitudeProfile prof{grid, {}, {}, AmpMethod::ClosedNu0, std::nullopt};
    for (double theta : grid.theta) {
        const cplx f = closed_amplitude_nu0(kin, theta);
        prof.f_values.push_back(f);
        prof.sigma_values.push_back(std::norm(f));
    }
    return prof;
}

inline AmplitudeProfile amplitude_closed_nu_half(const Kinematics& kin,
                                                 const AngularGrid& grid) {
    AmplitudeProfile prof{grid, {}, {}, AmpMethod::ClosedNuHalf, std::nullopt};
    for (double theta : grid.theta) {
        const cplx f = closed_amplitude_nu_half(kin, theta);
        prof.f_values.push_back(f);
        prof.sigma_values.push_back(std::norm(f));
    }
    return prof;
}

// Generic-nu small-gamma closed profile, f0 + f1 in the robust forms.
inline AmplitudeProfile amplitude_closed_generic(
    const Kinematics& kin, const FluxSplit& split, const AngularGrid& grid,
    const AccelConfig& cfg = AccelConfig{}) {
    AmplitudeProfile prof{grid, {}, {}, AmpMethod::ClosedGeneric, std::nullopt};
    for (double theta : grid.theta) {
        const cplx f = closed_f0(theta, split.nu, kin.beta, kin.k, cfg) +
                       closed_f1(theta, split.nu, kin.beta, kin.beta_prime,
                                 kin.k, cfg);
        prof.f_values.push_back(f);
        prof.sigma_values.push_back(std::norm(f));
    }
    return prof;
}

}  // namespace abcs
