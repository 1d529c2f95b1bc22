// SPDX-License-Identifier: Apache-2.0
//
// Subcommand bodies. Each writes CSV with a header row to `out`; rows come in a
// fixed order and numbers use shortest round-trip text.
#pragma once

#include "fdsa/scenario.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace fdsa {

/// Minimal CSV emitter; cells are never quoted, so text cells must not hold commas.
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}
    void row(const std::vector<std::string>& cells);
    void blank();

private:
    std::ostream& out_;
};

/// Beam selected by the scenario, running an optimizer if the FOI source asks for one.
Beamformer resolve_beamformer(const Scenario& scenario);

enum class Algorithm { Soa, Bcdla };

/// theta_deg, range_m, gain_abs, gain_db, region over the grid, theta-major.
void cmd_pattern(const Scenario& scenario, std::ostream& out);
/// parameter, theta_deg, range_m, sr_bits along the configured trajectory.
void cmd_profile(const Scenario& scenario, std::ostream& out);
/// Per-iteration trace, then a key,value block with the final FOIs and SR.
void cmd_optimize(const Scenario& scenario, Algorithm algorithm, std::ostream& out);
/// delta_f_max_hz, gamma, sop for every bound fraction and threshold.
void cmd_sop(const Scenario& scenario, std::ostream& out);
/// delta_f_max_hz, fab_bandwidth_hz, rbw, decrease_percent per bound fraction.
void cmd_rbw(const Scenario& scenario, std::ostream& out);

} // namespace fdsa
