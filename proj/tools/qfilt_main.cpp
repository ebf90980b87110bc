// qfilt: photon statistics of a cavity-filtered single-photon source.
//
// Subcommands: steady, sweep, kernel, compare.
// Exit codes: 0 ok, 2 configuration error, 3 solver error, 4 I/O error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "qfilt/effective_model.hpp"
#include "qfilt/errors.hpp"
#include "qfilt/liouvillian.hpp"
#include "qfilt/meanfield.hpp"
#include "qfilt/observables.hpp"
#include "qfilt/steady_state.hpp"
#include "qfilt/sweep.hpp"

namespace {

using nlohmann::ordered_json;

struct ConfigError : qfilt::Error {
    using qfilt::Error::Error;
};
struct IoError : qfilt::Error {
    using qfilt::Error::Error;
};

struct RunConfig {
    qfilt::ModelParams params;
    std::string out;
    std::string gamma_a_spec;
    std::string omega_spec;
    int workers = 0;
    double t_max = 0.0;  // 0: derive from the kernel support
    int samples = 1000;
};

const std::set<std::string> kKnownKeys = {
    "gamma_diss", "gamma_pump", "gamma_deph", "gamma_a", "omega_rabi",
    "n_max", "tol_steady", "tol_quad", "omega", "out", "workers",
    "t_max", "samples"};

double as_number(const ordered_json& v, const std::string& key) {
    if (!v.is_number()) throw ConfigError("config key " + key + " must be a number");
    return v.get<double>();
}

void load_config_file(const std::string& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    ordered_json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config file must hold a flat JSON object");
    for (const auto& [key, value] : j.items()) {
        if (!kKnownKeys.count(key)) throw ConfigError("unknown config key: " + key);
        if (key == "gamma_diss") cfg.params.gamma_diss = as_number(value, key);
        else if (key == "gamma_pump") cfg.params.gamma_pump = as_number(value, key);
        else if (key == "gamma_deph") cfg.params.gamma_deph = as_number(value, key);
        else if (key == "gamma_a") {
            if (value.is_string()) cfg.gamma_a_spec = value.get<std::string>();
            else cfg.params.gamma_a = as_number(value, key);
        } else if (key == "omega_rabi" || key == "omega") {
            if (value.is_string()) cfg.omega_spec = value.get<std::string>();
            else cfg.params.omega_rabi = as_number(value, key);
        } else if (key == "n_max") cfg.params.n_max = value.get<int>();
        else if (key == "tol_steady") cfg.params.tol_steady = as_number(value, key);
        else if (key == "tol_quad") cfg.params.tol_quad = as_number(value, key);
        else if (key == "out") cfg.out = value.get<std::string>();
        else if (key == "workers") cfg.workers = value.get<int>();
        else if (key == "t_max") cfg.t_max = as_number(value, key);
        else if (key == "samples") cfg.samples = value.get<int>();
    }
}

// Writes to cfg.out when set, else to stdout.
void deliver(const RunConfig& cfg, const std::string& payload) {
    if (cfg.out.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(cfg.out, std::ios::binary);
    if (!out) throw IoError("cannot open output path: " + cfg.out);
    out << payload;
    if (!out) throw IoError("short write to output path: " + cfg.out);
}

double parse_rate_flag(const std::string& text, const char* name) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size())
        throw ConfigError(std::string(name) + " must be a plain number here");
    return v;
}

int cmd_steady(RunConfig cfg) {
    if (!cfg.gamma_a_spec.empty())
        cfg.params.gamma_a = parse_rate_flag(cfg.gamma_a_spec, "--gamma-a");
    if (!cfg.omega_spec.empty())
        cfg.params.omega_rabi = parse_rate_flag(cfg.omega_spec, "--omega");
    qfilt::ModelParams p;
    try {
        p = qfilt::validate_params(cfg.params);
    } catch (const qfilt::Error& e) {
        throw ConfigError(e.what());
    }

    const auto ops = qfilt::build_system_operators(p.n_max);
    const auto L = qfilt::build_liouvillian(p, ops);
    const auto rho = qfilt::solve_steady(L, p);

    ordered_json out;
    out["n_a"] = qfilt::expectation(rho, ops.n_a_op).real();
    out["n_sigma"] = qfilt::expectation(rho, ops.n_sigma_op).real();
    out["J"] = qfilt::expectation(rho, ops.flow_op).real();
    try {
        out["beta"] = qfilt::beta_efficiency(rho, p, ops);
    } catch (const qfilt::UndefinedEfficiency&) {
        out["beta"] = nullptr;
    }
    try {
        out["g2_full"] = qfilt::g2_full(rho, ops);
    } catch (const qfilt::InsufficientPhotons&) {
        out["g2_full"] = nullptr;
        out["g2_full_reason"] = "insufficient photons";
    }
    out["g2_eff"] = qfilt::g2_eff(p);
    out["g2_neglect"] = qfilt::g2_neglect(p);
    out["regime"] = qfilt::to_string(qfilt::classify_regime(p));
    out["n_max_used"] = p.n_max;
    out["residual"] = qfilt::steady_residual(L, rho);
    deliver(cfg, out.dump(2) + "\n");
    return 0;
}

qfilt::SweepGrid make_grid(RunConfig& cfg) {
    if (cfg.gamma_a_spec.empty() || cfg.omega_spec.empty())
        throw ConfigError("sweep needs --gamma-a and --omega grid specs");
    qfilt::SweepGrid grid;
    try {
        grid.gamma_a_axis = qfilt::parse_axis_spec(cfg.gamma_a_spec);
        grid.omega_axis = qfilt::parse_axis_spec(cfg.omega_spec);
        grid.base = qfilt::validate_params(cfg.params);
    } catch (const qfilt::Error& e) {
        throw ConfigError(e.what());
    }
    return grid;
}

int cmd_sweep(RunConfig cfg) {
    const auto grid = make_grid(cfg);
    const auto t0 = std::chrono::steady_clock::now();
    const auto records = qfilt::run_sweep(grid, cfg.workers);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::ostringstream csv;
    qfilt::write_sweep_csv(csv, records);
    deliver(cfg, csv.str());

    std::size_t failures = 0;
    for (const auto& r : records)
        if (!r.g2_full) ++failures;
    std::cerr << "points=" << records.size() << " failures=" << failures
              << " wall_s=" << wall << "\n";
    return 0;
}

int cmd_compare(RunConfig cfg) {
    const auto grid = make_grid(cfg);
    const auto records = qfilt::run_sweep(grid, cfg.workers);
    const auto rep = qfilt::compare_maps(records, grid.base);

    ordered_json out;
    out["max_rel_diff"] = rep.record.rel_diff ? ordered_json(*rep.record.rel_diff)
                                              : ordered_json(nullptr);
    out["gamma_a"] = rep.record.gamma_a;
    out["omega"] = rep.record.omega;
    out["beta"] = rep.record.beta ? ordered_json(*rep.record.beta)
                                  : ordered_json(nullptr);
    out["regime"] = qfilt::to_string(rep.record.regime);
    out["strong_coupling"] = rep.strong_coupling;
    out["incoherent"] = rep.incoherent;
    deliver(cfg, out.dump(2) + "\n");
    return 0;
}

int cmd_kernel(RunConfig cfg) {
    if (!cfg.gamma_a_spec.empty())
        cfg.params.gamma_a = parse_rate_flag(cfg.gamma_a_spec, "--gamma-a");
    if (!cfg.omega_spec.empty())
        cfg.params.omega_rabi = parse_rate_flag(cfg.omega_spec, "--omega");
    qfilt::ModelParams p;
    try {
        p = qfilt::validate_params(cfg.params);
        if (cfg.samples < 2) throw ConfigError("kernel needs --samples >= 2");
        if (cfg.t_max < 0) throw ConfigError("kernel needs --tmax > 0");
    } catch (const qfilt::Error& e) {
        throw ConfigError(e.what());
    }
    const double t_max =
        cfg.t_max > 0 ? cfg.t_max : qfilt::kernel_support_time(p);

    std::ostringstream csv;
    csv << "t,K\n";
    for (int i = 0; i < cfg.samples; ++i) {
        const double t = t_max * i / (cfg.samples - 1);
        const auto s = qfilt::kernel_K(p, t);
        csv << fmt::format("{:.17g},{:.17g}\n", s.t, s.value);
    }
    const double numeric = qfilt::kernel_integral_numeric(p);
    const double closed = qfilt::kernel_integral_closed_form(p);
    csv << fmt::format("# integral_numeric={:.17g} integral_closed_form={:.17g} rel_error={:.17g}\n",
                       numeric, closed, std::abs(numeric - closed) / closed);
    deliver(cfg, csv.str());
    return 0;
}

int fail(int code, const std::string& msg) {
    nlohmann::json err{{"error", msg}, {"exit_code", code}};
    std::cerr << err.dump() << "\n";
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"photon statistics of a single-photon source behind a Lorentz cavity filter"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "flat JSON config file");
        sub->add_option("--out", cfg.out, "output path (default stdout)");
        sub->add_option("--gamma-a", cfg.gamma_a_spec,
                        "cavity linewidth (number, or min:max:count(log|lin) for grids)");
        sub->add_option("--omega", cfg.omega_spec, "Rabi constant (number or grid spec)");
        sub->add_option("--nmax", cfg.params.n_max, "Fock cutoff");
    };

    auto* steady = app.add_subcommand("steady", "steady-state observables as JSON");
    add_common(steady);
    auto* sweep = app.add_subcommand("sweep", "(gamma_a, omega) grid as CSV");
    add_common(sweep);
    sweep->add_option("--workers", cfg.workers, "worker threads (default: cores)");
    auto* compare = app.add_subcommand("compare", "discrepancy arg-max report as JSON");
    add_common(compare);
    compare->add_option("--workers", cfg.workers, "worker threads (default: cores)");
    auto* kernel = app.add_subcommand("kernel", "memory kernel K(t) as CSV");
    add_common(kernel);
    kernel->add_option("--tmax", cfg.t_max, "sample range end (default: kernel support)");
    kernel->add_option("--samples", cfg.samples, "number of samples");

    // flags override config-file values: stash flag state, apply file, re-parse
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        return fail(2, e.what());
    }

    try {
        if (!config_path.empty()) {
            RunConfig file_cfg;
            load_config_file(config_path, file_cfg);
            // restore any file-provided value not overridden on the CLI
            auto* sub = app.get_subcommands().front();
            auto keep = [&](const char* flag) { return sub->count(flag) == 0; };
            if (keep("--out") && !file_cfg.out.empty()) cfg.out = file_cfg.out;
            if (keep("--gamma-a")) {
                if (!file_cfg.gamma_a_spec.empty()) cfg.gamma_a_spec = file_cfg.gamma_a_spec;
                cfg.params.gamma_a = file_cfg.params.gamma_a;
            }
            if (keep("--omega")) {
                if (!file_cfg.omega_spec.empty()) cfg.omega_spec = file_cfg.omega_spec;
                cfg.params.omega_rabi = file_cfg.params.omega_rabi;
            }
            if (keep("--nmax")) cfg.params.n_max = file_cfg.params.n_max;
            if (sub->get_option_no_throw("--workers") == nullptr ||
                keep("--workers"))
                if (file_cfg.workers) cfg.workers = file_cfg.workers;
            if (sub->get_option_no_throw("--tmax") == nullptr || keep("--tmax"))
                if (file_cfg.t_max) cfg.t_max = file_cfg.t_max;
            if (sub->get_option_no_throw("--samples") == nullptr || keep("--samples"))
                if (file_cfg.samples != 1000) cfg.samples = file_cfg.samples;
            cfg.params.gamma_diss = file_cfg.params.gamma_diss;
            cfg.params.gamma_pump = file_cfg.params.gamma_pump;
            cfg.params.gamma_deph = file_cfg.params.gamma_deph;
            cfg.params.tol_steady = file_cfg.params.tol_steady;
            cfg.params.tol_quad = file_cfg.params.tol_quad;
        }

        if (app.got_subcommand("steady")) return cmd_steady(cfg);
        if (app.got_subcommand("sweep")) return cmd_sweep(cfg);
        if (app.got_subcommand("compare")) return cmd_compare(cfg);
        if (app.got_subcommand("kernel")) return cmd_kernel(cfg);
        return fail(2, "no subcommand");
    } catch (const ConfigError& e) {
        return fail(2, e.what());
    } catch (const IoError& e) {
        return fail(4, e.what());
    } catch (const qfilt::Error& e) {
        return fail(3, e.what());
    } catch (const std::exception& e) {
        return fail(3, e.what());
    }
}
