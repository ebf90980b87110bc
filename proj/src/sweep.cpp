#include "qfilt/sweep.hpp"

#include <atomic>
#include <cmath>
#include <ostream>
#include <thread>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "qfilt/effective_model.hpp"
#include "qfilt/errors.hpp"
#include "qfilt/liouvillian.hpp"
#include "qfilt/observables.hpp"
#include "qfilt/steady_state.hpp"

namespace qfilt {

std::vector<double> AxisSpec::values() const {
    std::vector<double> v(count);
    if (count == 1) {
        v[0] = min;
        return v;
    }
    for (int i = 0; i < count; ++i) {
        const double f = static_cast<double>(i) / (count - 1);
        v[i] = log_spaced ? min * std::pow(max / min, f)
                          : min + f * (max - min);
    }
    return v;
}

AxisSpec parse_axis_spec(const std::string& spec) {
    AxisSpec axis;
    std::size_t p1 = spec.find(':');
    std::size_t p2 = spec.find(':', p1 == std::string::npos ? p1 : p1 + 1);
    if (p1 == std::string::npos || p2 == std::string::npos)
        throw Error("axis spec must be min:max:count(log|lin): " + spec);
    std::string tail = spec.substr(p2 + 1);
    if (tail.size() > 3 && tail.substr(tail.size() - 3) == "log")
        axis.log_spaced = true;
    else if (tail.size() > 3 && tail.substr(tail.size() - 3) == "lin")
        axis.log_spaced = false;
    else
        throw Error("axis spec must end in log or lin: " + spec);
    std::size_t used = 0;
    try {
        axis.min = std::stod(spec.substr(0, p1));
        axis.max = std::stod(spec.substr(p1 + 1, p2 - p1 - 1));
        axis.count = std::stoi(tail.substr(0, tail.size() - 3), &used);
    } catch (const std::exception&) {
        throw Error("axis spec has unparsable numbers: " + spec);
    }
    if (used != tail.size() - 3)
        throw Error("axis spec has unparsable count: " + spec);
    if (axis.count < 1) throw Error("axis spec needs count >= 1: " + spec);
    if (axis.count == 1 && axis.min != axis.max)
        throw Error("single-point axis needs min == max: " + spec);
    if (axis.count > 1 && !(axis.min < axis.max))
        throw Error("axis must be strictly increasing: " + spec);
    if (axis.log_spaced && axis.min <= 0)
        throw Error("log axis needs positive endpoints: " + spec);
    return axis;
}

namespace {

SweepRecord evaluate_point(const ModelParams& base, const SystemOperators& ops,
                           double gamma_a, double omega) {
    ModelParams p = base;
    p.gamma_a = gamma_a;
    p.omega_rabi = omega;

    SweepRecord rec;
    rec.gamma_a = gamma_a;
    rec.omega = omega;
    rec.regime = classify_regime(p);
    try {
        rec.g2_eff = g2_eff(p);
        rec.g2_neglect = g2_neglect(p);
    } catch (const Error&) {
        // degenerate filter: leave the closed forms undefined
    }
    try {
        const LiouvillianMatrix L = build_liouvillian(p, ops);
        const DensityMatrix rho = solve_steady(L, p);
        rec.beta = beta_efficiency(rho, p, ops);
        rec.g2_full = g2_full(rho, ops);
    } catch (const Error& e) {
        rec.failure_reason = e.what();
    }
    if (rec.g2_full && rec.g2_eff && *rec.g2_full > 0)
        rec.rel_diff = std::abs(*rec.g2_full - *rec.g2_eff) / *rec.g2_full;
    return rec;
}

} // namespace

std::vector<SweepRecord> run_sweep(const SweepGrid& grid, int workers) {
    const std::vector<double> gas = grid.gamma_a_axis.values();
    const std::vector<double> oms = grid.omega_axis.values();
    const std::size_t total = gas.size() * oms.size();
    std::vector<SweepRecord> records(total);

    if (workers <= 0)
        workers = static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min<int>(workers, static_cast<int>(total)));

    const SystemOperators ops = build_system_operators(grid.base.n_max);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1)) {
            const double ga = gas[i / oms.size()];
            const double om = oms[i % oms.size()];
            records[i] = evaluate_point(grid.base, ops, ga, om);
        }
    };

    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    return records;
}

DiscrepancyReport compare_maps(const std::vector<SweepRecord>& records,
                               const ModelParams& base) {
    const SweepRecord* best = nullptr;
    std::size_t best_idx = 0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (!records[i].rel_diff) continue;
        if (!best || *records[i].rel_diff > *best->rel_diff) {
            best = &records[i];
            best_idx = i;
        }
    }
    if (!best) throw EmptyInput("compare_maps: no record has both g2 values");

    const double Gamma = base.dipole_relaxation();
    DiscrepancyReport rep;
    rep.index = best_idx;
    rep.record = *best;
    rep.strong_coupling =
        4.0 * best->omega > std::abs(2.0 * Gamma - best->gamma_a);
    rep.incoherent = best->omega < 2.0 * Gamma + best->gamma_a;
    return rep;
}

namespace {
void put_opt(std::string& line, const std::optional<double>& v) {
    line += ',';
    if (v) line += fmt::format("{}", *v);
}
} // namespace

void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& records) {
    fmt::print(out, "gamma_a,omega,g2_full,g2_eff,g2_neglect,beta,regime,rel_diff\n");
    for (const auto& r : records) {
        std::string line = fmt::format("{},{}", r.gamma_a, r.omega);
        put_opt(line, r.g2_full);
        put_opt(line, r.g2_eff);
        put_opt(line, r.g2_neglect);
        put_opt(line, r.beta);
        line += ',';
        line += to_string(r.regime);
        put_opt(line, r.rel_diff);
        fmt::print(out, "{}\n", line);
    }
}

} // namespace qfilt
