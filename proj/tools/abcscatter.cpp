// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: phase shifts, amplitudes, cross sections, bound
// spectra, and the self-validation pipeline, emitted as CSV or JSON.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "abcs/abcs.hpp"
#include "abcs/validation.hpp"

using namespace abcs;
using nlohmann::json;

namespace {

constexpr int kExitInvalidSpec = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitValidationBreach = 4;

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

struct ThetaSpec {
    double min_deg = 30.0, max_deg = 180.0;
    int count = 16;
};

// "min:max:count" in degrees
ThetaSpec parse_theta(const std::string& s) {
    ThetaSpec t;
    if (std::sscanf(s.c_str(), "%lf:%lf:%d", &t.min_deg, &t.max_deg, &t.count) != 3)
        throw CLI::ValidationError("--theta", "expected min:max:count");
    return t;
}

// half-odd integers accepted as "5/2" or a decimal
double parse_half_odd(const std::string& s) {
    double num_ = 0.0, den = 1.0;
    if (std::sscanf(s.c_str(), "%lf/%lf", &num_, &den) == 2) return num_ / den;
    return std::stod(s);
}

const char* method_name(AmpMethod m) {
    switch (m) {
        case AmpMethod::SeriesExact: return "SeriesExact";
        case AmpMethod::ClosedNu0: return "ClosedNu0";
        case AmpMethod::ClosedNuHalf: return "ClosedNuHalf";
        case AmpMethod::ClosedGeneric: return "ClosedGeneric";
    }
    return "?";
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    json spec;
    json diagnostics = json::object();
};

void emit(const Table& t, const std::string& format) {
    if (format == "csv") {
        for (std::size_t i = 0; i < t.columns.size(); ++i)
            std::printf("%s%s", i ? "," : "", t.columns[i].c_str());
        std::printf("\n");
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < row.size(); ++i)
                std::printf("%s%s", i ? "," : "", row[i].c_str());
            std::printf("\n");
        }
        if (!t.diagnostics.empty())
            std::fprintf(stderr, "diagnostics: %s\n", t.diagnostics.dump().c_str());
    } else {
        json out;
        out["spec"] = t.spec;
        out["rows"] = json::array();
        for (const auto& row : t.rows) {
            json r = json::object();
            for (std::size_t i = 0; i < row.size(); ++i) r[t.columns[i]] = row[i];
            out["rows"].push_back(r);
        }
        out["diagnostics"] = t.diagnostics;
        std::printf("%s\n", out.dump(2).c_str());
    }
}

AmplitudeProfile compute_profile(const PhysicalConfig& cfg, const Kinematics& kin,
                                 const FluxSplit& split, const AngularGrid& grid,
                                 const std::string& method) {
    if (method == "series")
        return amplitude_series(kin, split, cfg.gamma, grid);
    if (method == "closed") {
        if (split.nu == 0.0) return amplitude_closed_nu0(kin, grid);
        if (split.nu == 0.5) return amplitude_closed_nu_half(kin, grid);
        return amplitude_closed_generic(kin, split, grid);
    }
    // auto: fully closed forms at the two special fluxes, series otherwise
    if (split.nu == 0.0) return amplitude_closed_nu0(kin, grid);
    if (split.nu == 0.5) return amplitude_closed_nu_half(kin, grid);
    return amplitude_series(kin, split, cfg.gamma, grid);
}

json spec_json(const PhysicalConfig& cfg, std::optional<double> energy) {
    json s;
    s["gamma"] = cfg.gamma;
    s["alpha"] = cfg.alpha;
    s["rest_energy"] = cfg.rest_energy;
    if (energy) s["energy"] = *energy;
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Partial-wave scattering and bound states for the combined "
                 "flux-string + Coulomb potential in two dimensions"};
    app.require_subcommand(1);

    double gamma = 0.0, alpha = 0.0, energy = 1.25;
    std::string theta_str = "30:180:16", jmax_str = "21/2", method = "auto",
                format = "csv", dump_path;
    int nmax = 3;

    auto add_common = [&](CLI::App* sub, bool needs_energy) {
        sub->add_option("--gamma", gamma, "Coulomb coupling, |gamma| < 1/2");
        sub->add_option("--alpha", alpha, "flux parameter");
        if (needs_energy) sub->add_option("--energy", energy, "E / (mu c^2), > 1");
        sub->add_option("--format", format, "csv | json")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    auto* ps = app.add_subcommand("phase-shifts", "per-channel S-matrix table");
    add_common(ps, true);
    ps->add_option("--jmax", jmax_str, "channel cutoff, e.g. 21/2");
    ps->add_option("--method", method, "auto | series | closed")
        ->check(CLI::IsMember({"auto", "series", "closed"}));

    auto* amp = app.add_subcommand("amplitude", "scattering amplitude on a grid");
    add_common(amp, true);
    amp->add_option("--theta", theta_str, "grid min:max:count in degrees");
    amp->add_option("--method", method, "auto | series | closed")
        ->check(CLI::IsMember({"auto", "series", "closed"}));

    auto* xs = app.add_subcommand("cross-section", "differential cross section");
    add_common(xs, true);
    xs->add_option("--theta", theta_str, "grid min:max:count in degrees");
    xs->add_option("--method", method, "auto | series | closed")
        ->check(CLI::IsMember({"auto", "series", "closed"}));

    auto* bs = app.add_subcommand("bound-states", "bound level table");
    add_common(bs, false);
    bs->add_option("--nmax", nmax, "largest radial quantum number");
    bs->add_option("--jmax", jmax_str, "channel cutoff, e.g. 5/2");

    auto* val = app.add_subcommand("validate", "run the cross-validation pipeline");
    add_common(val, true);
    val->add_option("--dump-trajectory", dump_path,
                    "write the j=1/2 radial trajectory as CSV to this path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInvalidSpec;
    }

    const PhysicalConfig cfg{gamma, alpha, 1.0};
    try {
        cfg.validate();
        const FluxSplit split = split_flux(alpha);

        if (ps->parsed()) {
            const auto kin = kinematics(cfg, energy);
            const double jmax = parse_half_odd(jmax_str);
            Table t;
            t.spec = spec_json(cfg, energy);
            t.spec["jmax"] = jmax;
            t.spec["method"] = method;
            t.columns = {"j", "method", "re_S", "im_S", "abs_S", "phase_shift"};
            const int m_hi = static_cast<int>(std::floor(jmax - 0.5));
            for (int m = -m_hi - 1; m <= m_hi; ++m) {
                const Channel ch{m};
                const auto r = (method == "series" || method == "auto")
                                   ? s_matrix(ch, kin, split, gamma)
                                   : s_approx(ch, kin, split);
                const char* how = r.method == SMethod::Exact ? "Exact"
                                  : r.method == SMethod::Approx
                                      ? "Approx"
                                      : "SupercriticalMean";
                t.rows.push_back({num(ch.j()), how, num(r.s_value.real()),
                                  num(r.s_value.imag()), num(std::abs(r.s_value)),
                                  r.phase_defined ? num(r.phase_shift) : "nan"});
            }
            emit(t, format);
            return 0;
        }

        if (amp->parsed() || xs->parsed()) {
            const auto kin = kinematics(cfg, energy);
            const ThetaSpec ts = parse_theta(theta_str);
            const auto grid =
                AngularGrid::uniform_degrees(ts.min_deg, ts.max_deg, ts.count);
            const auto prof = compute_profile(cfg, kin, split, grid, method);
            Table t;
            t.spec = spec_json(cfg, energy);
            t.spec["theta"] = theta_str;
            t.spec["method"] = method;
            if (amp->parsed()) {
                t.columns = {"theta_deg", "re_f", "im_f", "sigma", "method"};
                for (std::size_t i = 0; i < grid.theta.size(); ++i)
                    t.rows.push_back({num(grid.theta[i] * 180.0 / kPi),
                                      num(prof.f_values[i].real()),
                                      num(prof.f_values[i].imag()),
                                      num(prof.sigma_values[i]),
                                      method_name(prof.method)});
            } else {
                t.columns = {"theta_deg", "sigma", "method"};
                for (std::size_t i = 0; i < grid.theta.size(); ++i)
                    t.rows.push_back({num(grid.theta[i] * 180.0 / kPi),
                                      num(prof.sigma_values[i]),
                                      method_name(prof.method)});
            }
            if (prof.series_diagnostics) {
                t.diagnostics["terms_used"] = prof.series_diagnostics->terms_used;
                t.diagnostics["max_residual"] = prof.series_diagnostics->max_residual;
            }
            emit(t, format);
            return 0;
        }

        if (bs->parsed()) {
            const double jmax = parse_half_odd(jmax_str);
            const auto levels = spectrum(nmax, jmax, split, gamma, cfg.rest_energy);
            Table t;
            t.spec = spec_json(cfg, std::nullopt);
            t.spec["nmax"] = nmax;
            t.spec["jmax"] = jmax;
            t.columns = {"n", "j", "energy", "degeneracy"};
            for (const auto& lv : levels)
                t.rows.push_back({num(lv.n), num(lv.j), num(lv.energy),
                                  num(lv.degeneracy)});
            emit(t, format);
            return 0;
        }

        if (val->parsed()) {
            const auto rep = run_validation(cfg, energy);
            std::fputs(rep.text.c_str(), stdout);
            if (!dump_path.empty()) {
                const auto kin = kinematics(cfg, energy);
                const auto traj =
                    integrate_radial(Channel{0}, kin, split, gamma, 1e-6, 60.0, 1e-11);
                std::ofstream out(dump_path);
                out << "rho,re_f,im_f,re_g,im_g\n";
                for (std::size_t i = 0; i < traj.rho_samples.size(); ++i)
                    out << num(traj.rho_samples[i]) << ','
                        << num(traj.f_samples[i].real()) << ','
                        << num(traj.f_samples[i].imag()) << ','
                        << num(traj.g_samples[i].real()) << ','
                        << num(traj.g_samples[i].imag()) << '\n';
            }
            return rep.passed ? 0 : kExitValidationBreach;
        }
    } catch (const ConvergenceError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNoConvergence;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInvalidSpec;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInvalidSpec;
    }
    return kExitInvalidSpec;
}
