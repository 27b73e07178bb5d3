// SPDX-License-Identifier: Apache-2.0
//
// Cross-validation pipeline: checks the algebraic identities of the stack
// (kinematics, unitarity, dual closed forms, series resummation) and the
// ODE-vs-analytic S-matrix agreement for one problem configuration.
#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "abcs/amplitude.hpp"
#include "abcs/ode.hpp"
#include "abcs/physics.hpp"
#include "abcs/smatrix.hpp"

namespace abcs {

struct ValidationReport {
    std::string text;  // deterministic line-per-check report
    double max_kinematic_dev = 0.0;
    double max_unitarity_dev = 0.0;
    double max_dual_form_dev = 0.0;
    double max_resummation_dev = 0.0;
    double max_ode_dev = 0.0;
    bool passed = true;
};

namespace detail {

inline std::string fmt_check(const char* name, double dev, double tol, bool pass) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%-22s max_dev=%.15g tol=%.15g %s\n", name, dev,
                  tol, pass ? "PASS" : "FAIL");
    return buf;
}

}  // namespace detail

inline ValidationReport run_validation(const PhysicalConfig& cfg, double energy) {
    cfg.validate();
    const FluxSplit split = split_flux(cfg.alpha);
    const Kinematics kin = kinematics(cfg, energy);
    ValidationReport rep;

    // kinematic identity beta^2 - beta'^2 = gamma^2
    {
        const double lhs = kin.beta * kin.beta - kin.beta_prime * kin.beta_prime;
        const double dev = std::abs(lhs - cfg.gamma * cfg.gamma) /
                           std::max(1.0, kin.beta * kin.beta);
        rep.max_kinematic_dev = dev;
        const bool ok = dev < 1e-13;
        rep.passed = rep.passed && ok;
        rep.text += detail::fmt_check("kinematic-identity", dev, 1e-13, ok);
    }

    // unitarity of the exact S over |j| <= 21/2 (subcritical channels)
    {
        double dev = 0.0;
        for (int m = -11; m <= 10; ++m) {
            const Channel ch{m};
            if (!channel_exponent(ch, split, cfg.gamma).subcritical()) continue;
            const auto r = s_exact(ch, kin, split, cfg.gamma);
            dev = std::max(dev, std::abs(std::abs(r.s_value) - 1.0));
        }
        rep.max_unitarity_dev = dev;
        const bool ok = dev < 1e-10;
        rep.passed = rep.passed && ok;
        rep.text += detail::fmt_check("unitarity", dev, 1e-10, ok);
    }

    const std::vector<double> angles = {kPi / 3, kPi / 2, 2 * kPi / 3, 5 * kPi / 6};

    // the two algebraic forms of f0 and f1 agree
    {
        double dev = 0.0;
        for (double th : angles) {
            const cplx a0 = closed_f0(th, split.nu, kin.beta, kin.k);
            const cplx b0 = closed_f0_direct(th, split.nu, kin.beta, kin.k);
            dev = std::max(dev, std::abs(a0 - b0) / std::max(1e-30, std::abs(a0)));
            const cplx a1 = closed_f1(th, split.nu, kin.beta, kin.beta_prime, kin.k);
            const cplx b1 =
                closed_f1_direct(th, split.nu, kin.beta, kin.beta_prime, kin.k);
            const double scale = std::max({std::abs(a0), std::abs(a1), 1e-30});
            dev = std::max(dev, std::abs(a1 - b1) / scale);
        }
        rep.max_dual_form_dev = dev;
        const bool ok = dev < 1e-7;
        rep.passed = rep.passed && ok;
        rep.text += detail::fmt_check("dual-form", dev, 1e-7, ok);
    }

    // Abel-summed approximate series equals f0 + f1
    {
        const AngularGrid grid{std::vector<double>(angles)};
        const auto series = amplitude_series(kin, split, cfg.gamma, grid,
                                             series_accel_defaults(),
                                             SeriesCoefficients::Approx);
        const auto closed = amplitude_closed_generic(kin, split, grid);
        double dev = 0.0;
        for (std::size_t i = 0; i < grid.theta.size(); ++i)
            dev = std::max(dev, std::abs(series.f_values[i] - closed.f_values[i]) /
                                    std::abs(closed.f_values[i]));
        rep.max_resummation_dev = dev;
        const bool ok = dev < 1e-5;
        rep.passed = rep.passed && ok;
        rep.text += detail::fmt_check("resummation", dev, 1e-5, ok);
    }

    // numerically integrated radial solutions reproduce the exact S
    if (cfg.gamma != 0.0) {
        double dev = 0.0;
        for (int m : {0, -1, 1, -2, 2}) {
            const Channel ch{m};
            if (!channel_exponent(ch, split, cfg.gamma).subcritical()) continue;
            const auto traj =
                integrate_radial(ch, kin, split, cfg.gamma, 1e-6, 60.0, 1e-11);
            const auto match = extract_s(traj, {30.0, 60.0});
            const auto exact = s_exact(ch, kin, split, cfg.gamma);
            dev = std::max(dev, std::abs(match.s_extracted - exact.s_value));
        }
        rep.max_ode_dev = dev;
        const bool ok = dev < 1e-5;
        rep.passed = rep.passed && ok;
        rep.text += detail::fmt_check("ode-vs-exact", dev, 1e-5, ok);
    } else {
        rep.text += "ode-vs-exact           skipped (gamma = 0)\n";
    }

    rep.text += rep.passed ? "overall PASS\n" : "overall FAIL\n";
    return rep;
}

}  // namespace abcs
