// SPDX-License-Identifier: Apache-2.0
//
// Complex special functions used by every analytic formula in the library:
// log-gamma (Lanczos), gamma ratios, the confluent hypergeometric function
// Phi(a,b,z), and the Gauss function F(1,a,b;z) on and inside the unit
// circle with oscillatory-tail acceleration.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <utility>
#include <vector>

#include "abcs/errors.hpp"

namespace abcs {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Forward angles below this are rejected by the unit-circle hypergeometric
// and by the amplitude routines (the series degrade as theta -> 0).
inline constexpr double kThetaMin = kPi / 36.0;

// Controls summation of conditionally convergent / accelerated series.
struct AccelConfig {
    int max_terms = 400000;
    std::vector<double> damping_grid = default_damping_grid();
    double tolerance = 1e-8;

    static std::vector<double> default_damping_grid() {
        std::vector<double> t;
        for (int k = 6; k <= 12; ++k) t.push_back(1.0 - std::ldexp(1.0, -k));
        return t;
    }

    void validate() const {
        if (max_terms < 16) throw DomainError("AccelConfig: max_terms must be >= 16");
        if (damping_grid.size() < 3)
            throw DomainError("AccelConfig: damping grid needs at least 3 points");
        for (double t : damping_grid)
            if (!(t > 0.0 && t < 1.0))
                throw DomainError("AccelConfig: damping points must lie in (0,1)");
        if (!(tolerance > 0.0)) throw DomainError("AccelConfig: tolerance must be > 0");
    }
};

namespace detail {

inline bool is_nonpositive_integer(const cplx& z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// log(sin(pi z)): the dominant exponential is factored out so the remaining
// log has its argument near 1 — continuous off the real axis, conjugate
// symmetric, and stable for |Im z| up to several hundred.
inline cplx log_sin_pi(const cplx& z) {
    const cplx ipz = cplx(0.0, 1.0) * (kPi * z);
    const double ln2 = std::log(2.0);
    if (z.imag() > 0.0)
        return -ipz + std::log(1.0 - std::exp(2.0 * ipz)) + cplx(-ln2, kPi / 2.0);
    return ipz + std::log(1.0 - std::exp(-2.0 * ipz)) + cplx(-ln2, -kPi / 2.0);
}

// Lanczos coefficients, g = 607/128, 15 terms (Godfrey). ~15 significant
// digits for Re z >= 1/2.
inline constexpr double kLanczosG = 607.0 / 128.0;
inline constexpr double kLanczos[15] = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

// Polynomial extrapolation of y(h) to h = 0 (Neville scheme). Returns the
// extrapolated value and a residual estimate from the last diagonal step.
template <typename T>
inline std::pair<T, double> extrapolate_to_zero(const std::vector<double>& h,
                                                std::vector<T> y) {
    const std::size_t n = h.size();
    if (n < 2 || y.size() != n) throw DomainError("extrapolate_to_zero: bad table");
    T prev_diag = y[0];
    for (std::size_t j = 1; j < n; ++j) {
        prev_diag = y[n - 1];
        for (std::size_t i = n - 1; i >= j; --i) {
            y[i] = y[i] + (y[i - 1] - y[i]) * (h[i] / (h[i] - h[i - j]));
            if (i == j) break;
        }
    }
    const double resid = std::abs(y[n - 1] - prev_diag);
    return {y[n - 1], resid};
}

}  // namespace detail

// Principal-branch log Gamma for Re z >= 1/2; the reflection formula (with a
// stable log-sin) is used for Re z < 1/2. exp(log_gamma(z)) = Gamma(z).
inline cplx log_gamma(const cplx& z) {
    if (detail::is_nonpositive_integer(z))
        throw PoleError("log_gamma: pole at non-positive integer");
    if (z.real() < 0.5) {
        // Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return std::log(kPi) - detail::log_sin_pi(z) - log_gamma(1.0 - z);
    }
    cplx sum(detail::kLanczos[0], 0.0);
    for (int k = 1; k < 15; ++k) sum += detail::kLanczos[k] / (z + double(k - 1));
    const cplx base = z + (detail::kLanczosG - 0.5);
    const cplx result = 0.5 * std::log(2.0 * kPi) + (z - 0.5) * std::log(base) -
                        base + std::log(sum);
    if (!std::isfinite(result.real()) || !std::isfinite(result.imag()))
        throw Error("log_gamma: overflow for extreme argument");
    return result;
}

// Gamma(a)/Gamma(b), evaluated in log space.
inline cplx gamma_ratio(const cplx& a, const cplx& b) {
    const cplx d = log_gamma(a) - log_gamma(b);
    if (d.real() > 700.0) throw Error("gamma_ratio: overflow");
    return std::exp(d);
}

namespace detail {

// |z| below which the Taylor series of Phi is used. The series is summed in
// extended precision: peak-term cancellation at |z|=25 costs ~e^25 * eps_ld,
// which stays below 1e-8.
inline constexpr double kKummerSwitchRadius = 25.0;

inline cplx kummer_taylor(const cplx& a, const cplx& b, const cplx& z,
                          const AccelConfig& cfg) {
    using lcplx = std::complex<long double>;
    const lcplx la(a.real(), a.imag()), lb(b.real(), b.imag()), lz(z.real(), z.imag());
    lcplx term(1.0L, 0.0L), sum(1.0L, 0.0L);
    const long double tol = 0.01L * (long double)cfg.tolerance;
    int quiet = 0;
    for (int n = 0; n < cfg.max_terms; ++n) {
        term *= (la + (long double)n) / (lb + (long double)n) * lz /
                (long double)(n + 1);
        sum += term;
        if (std::abs(term) < tol * std::abs(sum)) {
            if (++quiet >= 2 && n > std::abs(z)) break;
        } else {
            quiet = 0;
        }
        if (n == cfg.max_terms - 1)
            throw ConvergenceError("kummer_phi: series did not converge",
                                   std::abs(term) / std::abs(sum));
    }
    return cplx((double)sum.real(), (double)sum.imag());
}

// Optimal truncation of an asymptotic 2F0-type tail: sum while terms shrink.
inline cplx asymptotic_tail(const cplx& p, const cplx& q, const cplx& inv_z,
                            double tol, int max_terms) {
    cplx term(1.0, 0.0), sum(1.0, 0.0);
    double prev = std::numeric_limits<double>::max();
    for (int n = 0; n < max_terms; ++n) {
        term *= (p + double(n)) * (q + double(n)) / double(n + 1) * inv_z;
        const double mag = std::abs(term);
        if (mag >= prev || mag < tol * std::abs(sum)) {
            if (mag < prev) sum += term;
            break;
        }
        sum += term;
        prev = mag;
    }
    return sum;
}

inline cplx kummer_asymptotic(const cplx& a, const cplx& b, const cplx& z,
                              const AccelConfig& cfg) {
    // Phi(a,b,z) ~ G(b)/G(b-a) (-z)^{-a} 2F0(a, 1+a-b; -1/z)
    //            + G(b)/G(a) e^z z^{a-b} 2F0(b-a, 1-a; 1/z)
    // with arg(-z) = arg z + pi for Im z <= 0, arg z - pi otherwise.
    const double shift = (z.imag() > 0.0) ? -kPi : kPi;
    const cplx log_mz(std::log(std::abs(z)), std::arg(z) + shift);
    const cplx log_z = std::log(z);
    const cplx lg_b = log_gamma(b);
    const double tol = 0.01 * cfg.tolerance;

    cplx first(0.0, 0.0);
    if (!is_nonpositive_integer(b - a)) {
        const cplx tail = asymptotic_tail(a, 1.0 + a - b, -1.0 / z, tol, 256);
        first = std::exp(lg_b - log_gamma(b - a) - a * log_mz) * tail;
    }
    cplx second(0.0, 0.0);
    if (!is_nonpositive_integer(a)) {
        const cplx tail = asymptotic_tail(b - a, 1.0 - a, 1.0 / z, tol, 256);
        second = std::exp(lg_b - log_gamma(a) + z + (a - b) * log_z) * tail;
    }
    const cplx result = first + second;
    if (!std::isfinite(result.real()) || !std::isfinite(result.imag()))
        throw Error("kummer_phi: overflow in asymptotic expansion");
    return result;
}

}  // namespace detail

// Confluent hypergeometric function Phi(a,b,z) = sum (a)_n/(b)_n z^n/n!.
inline cplx kummer_phi(const cplx& a, const cplx& b, const cplx& z,
                       const AccelConfig& cfg = AccelConfig{}) {
    cfg.validate();
    if (detail::is_nonpositive_integer(b))
        throw PoleError("kummer_phi: b at non-positive integer");
    if (z == cplx(0.0, 0.0)) return cplx(1.0, 0.0);
    if (detail::is_nonpositive_integer(a))  // terminating polynomial
        return detail::kummer_taylor(a, b, z, cfg);
    if (std::abs(z) <= detail::kKummerSwitchRadius)
        return detail::kummer_taylor(a, b, z, cfg);
    return detail::kummer_asymptotic(a, b, z, cfg);
}

namespace detail {

// Direct sum of F(1,a,b;z) = sum (a)_n/(b)_n z^n for |z| < 1.
inline cplx f1ab_direct(const cplx& a, const cplx& b, const cplx& z,
                        const AccelConfig& cfg) {
    const double az = std::abs(z);
    cplx term(1.0, 0.0), sum(1.0, 0.0);
    for (int n = 0; n < cfg.max_terms; ++n) {
        term *= (a + double(n)) / (b + double(n)) * z;
        sum += term;
        if (std::abs(term) / (1.0 - az) < 0.01 * cfg.tolerance * (1.0 + std::abs(sum)))
            return sum;
    }
    throw ConvergenceError("gauss_f1ab: direct series did not converge",
                           std::abs(term));
}

// Abel summation on the unit circle: F(t) = sum c_n (t z)^n for each damping
// point, then polynomial extrapolation t -> 1.
inline cplx f1ab_abel(const cplx& a, const cplx& b, const cplx& z,
                      const AccelConfig& cfg) {
    const std::size_t nt = cfg.damping_grid.size();
    std::vector<cplx> acc(nt, cplx(0.0, 0.0));
    std::vector<double> pw(nt, 1.0);
    std::vector<bool> active(nt, true);
    std::size_t live = nt;

    cplx d(1.0, 0.0);  // c_n z^n
    for (int n = 0; n < cfg.max_terms && live > 0; ++n) {
        for (std::size_t k = 0; k < nt; ++k) {
            if (!active[k]) continue;
            acc[k] += d * pw[k];
            pw[k] *= cfg.damping_grid[k];
            // crude tail bound |c| t^{n+1} / (1-t)
            if (std::abs(d) * pw[k] / (1.0 - cfg.damping_grid[k]) <
                0.02 * cfg.tolerance * (1.0 + std::abs(acc[k]))) {
                active[k] = false;
                --live;
            }
        }
        d *= (a + double(n)) / (b + double(n)) * z;
    }
    if (live > 0)
        throw ConvergenceError("gauss_f1ab: Abel sum hit max_terms", std::abs(d));

    std::vector<double> h(nt);
    for (std::size_t k = 0; k < nt; ++k) h[k] = 1.0 - cfg.damping_grid[k];
    auto [value, resid] = extrapolate_to_zero(h, acc);
    if (resid > 10.0 * cfg.tolerance * (1.0 + std::abs(value)))
        throw ConvergenceError("gauss_f1ab: extrapolation residual too large", resid);
    return value;
}

}  // namespace detail

// F(1,a,b;z) for |z| <= 1, z != 1. On the unit circle the Pfaff transform
// F(1,a,b;z) = (1-z)^{-1} F(1,b-a,b;z/(z-1)) is used when the mapped argument
// is comfortably inside the disc, otherwise Abel damping with extrapolation.
inline cplx gauss_f1ab(const cplx& a, const cplx& b, const cplx& z,
                       const AccelConfig& cfg = AccelConfig{}) {
    cfg.validate();
    if (detail::is_nonpositive_integer(b))
        throw PoleError("gauss_f1ab: b at non-positive integer");
    if (a == cplx(0.0, 0.0)) return cplx(1.0, 0.0);
    const double az = std::abs(z);
    if (az > 1.0 + 1e-9) throw DomainError("gauss_f1ab: |z| must be <= 1");
    if (az < 0.95) return detail::f1ab_direct(a, b, z, cfg);
    if (std::abs(std::arg(z)) < kThetaMin)
        throw DomainError("gauss_f1ab: argument too close to the forward direction");
    const cplx w = z / (z - 1.0);
    if (std::abs(w) < 0.9)
        return detail::f1ab_direct(b - a, b, w, cfg) / (1.0 - z);
    return detail::f1ab_abel(a, b, z, cfg);
}

}  // namespace abcs
