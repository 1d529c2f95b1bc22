// SPDX-License-Identifier: Apache-2.0
//
// Flat key=value scenario files. Lines are `key = value`; `#` starts a
// comment; later assignments override earlier ones. Lists are comma separated.
// Every key has a default, so an empty file is a valid scenario.
#pragma once

#include "fdsa/array_model.hpp"
#include "fdsa/bcdla_optimizer.hpp"
#include "fdsa/beam_geometry.hpp"
#include "fdsa/secrecy_metrics.hpp"
#include "fdsa/soa_optimizer.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fdsa {

/// Raw assignments, validated against the known key set on insertion.
class ConfigMap {
public:
    /// Throws ConfigError for an unknown key.
    void set(const std::string& key, const std::string& value);
    /// Parses one `key=value` assignment.
    void set_assignment(std::string_view assignment);
    std::optional<std::string> get(const std::string& key) const;
    bool contains(const std::string& key) const { return values_.count(key) != 0; }

private:
    std::map<std::string, std::string> values_;
};

/// Throws ConfigError with the line number on malformed input.
ConfigMap parse_config(std::istream& in);
ConfigMap load_config_file(const std::string& path);

/// Documented keys in dump order.
std::span<const std::string_view> config_keys();

enum class FoiSource { Zero, List, Soa, Bcdla };

std::string_view foi_source_name(FoiSource source);

struct Scenario {
    ArrayGeometry geometry;
    BeamKind beamformer = BeamKind::Frb;
    FoiSource foi_source = FoiSource::Soa;
    std::vector<double> foi_list_hz;
    double max_offset_hz = 0.0;
    double rab_delta_f_hz = 0.0;

    FieldPoint target;
    std::optional<FieldPoint> eve;
    double target_theta_deg = 90.0; // as given, for dumping
    double eve_theta_deg = 0.0;

    double tx_power_dbm = 40.0;
    double bob_noise_dbm = -100.0;
    double eve_noise_dbm = -100.0;
    bool path_loss = true;

    GridSpec grid;
    SearchSettings search;
    SoaConfig soa;
    BcdlaConfig bcdla;
    ProfileSpec profile;

    std::vector<double> sop_gammas;
    std::vector<double> sop_max_offset_fractions;
    double fab_bandwidth_hz = 1e9;
    std::uint64_t seed = 1;

    LinkBudget link() const;
};

/// Applies defaults and checks every module invariant. Throws ConfigError on
/// malformed values and DomainError on physically invalid ones.
Scenario resolve_scenario(const ConfigMap& config);

/// Fully resolved configuration in the same key=value format.
std::string dump_config(const Scenario& scenario);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

} // namespace fdsa
