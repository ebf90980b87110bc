#ifndef QFILT_SWEEP_HPP
#define QFILT_SWEEP_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qfilt/params.hpp"

namespace qfilt {

// One sweep axis, parsed from "min:max:countlog" or "min:max:countlin".
struct AxisSpec {
    double min = 0.0;
    double max = 0.0;
    int count = 0;
    bool log_spaced = true;

    std::vector<double> values() const;
};

// Throws Error on malformed or decreasing specs.
AxisSpec parse_axis_spec(const std::string& spec);

struct SweepGrid {
    AxisSpec gamma_a_axis;
    AxisSpec omega_axis;
    ModelParams base;
};

struct SweepRecord {
    double gamma_a = 0.0;
    double omega = 0.0;
    std::optional<double> g2_full;
    std::string failure_reason;  // set when g2_full is undefined
    std::optional<double> g2_eff;
    std::optional<double> g2_neglect;
    std::optional<double> beta;
    Regime regime = Regime::WeakCoupling;
    std::optional<double> rel_diff;  // |g2_full - g2_eff| / g2_full
};

// One record per grid point, row-major over gamma_a then omega. Per-point
// failures are captured in the record; output order is independent of the
// worker count.
std::vector<SweepRecord> run_sweep(const SweepGrid& grid, int workers = 0);

struct DiscrepancyReport {
    std::size_t index = 0;       // arg-max of rel_diff
    SweepRecord record;
    bool strong_coupling = false;   // 4*Omega > |2*Gamma - gamma_a| there
    bool incoherent = false;        // Omega < 2*Gamma + gamma_a there
};

// Locates the largest full-vs-effective relative difference. Throws
// EmptyInput when no record has both values defined.
DiscrepancyReport compare_maps(const std::vector<SweepRecord>& records,
                               const ModelParams& base);

// Header: gamma_a,omega,g2_full,g2_eff,g2_neglect,beta,regime,rel_diff
// Floats as shortest round-trip decimals, undefined values as empty fields.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& records);

} // namespace qfilt

#endif
