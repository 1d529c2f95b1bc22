// SPDX-License-Identifier: Apache-2.0
#include "fdsa/scenario.hpp"

#include "fdsa/error.hpp"
#include "fdsa/units.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace fdsa {

namespace {

constexpr std::array<std::string_view, 48> kKeys = {
    "carrier_hz",
    "spacing_m",
    "subarrays",
    "elements_per_subarray",
    "beamformer",
    "foi_source",
    "foi_list_hz",
    "max_offset_hz",
    "rab_delta_f_hz",
    "target_theta_deg",
    "target_range_m",
    "eve_theta_deg",
    "eve_range_m",
    "tx_power_dbm",
    "bob_noise_dbm",
    "eve_noise_dbm",
    "path_loss",
    "grid_theta_min_deg",
    "grid_theta_max_deg",
    "grid_theta_step_deg",
    "grid_range_min_m",
    "grid_range_max_m",
    "grid_range_step_m",
    "search_theta_min_deg",
    "search_theta_max_deg",
    "search_range_min_m",
    "search_range_max_m",
    "search_theta_step_deg",
    "search_range_step_m",
    "search_refine_count",
    "search_candidates",
    "search_safety_grid",
    "soa_population",
    "soa_iterations",
    "soa_u_max",
    "soa_u_min",
    "bcdla_epsilon_hz",
    "bcdla_r_stop",
    "bcdla_rule",
    "bcdla_refine_root",
    "bcdla_initial_foi_hz",
    "profile_trajectory",
    "profile_fixed_range_m",
    "profile_fixed_theta_deg",
    "sop_gammas",
    "sop_max_offset_fractions",
    "fab_bandwidth_hz",
    "seed",
};

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

bool is_known(std::string_view key)
{
    return std::find(kKeys.begin(), kKeys.end(), key) != kKeys.end();
}

double parse_double(const std::string& key, std::string text)
{
    if (!text.empty() && text.front() == '+') {
        text.erase(0, 1);
    }
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
        throw ConfigError("key '" + key + "': expected a finite number, got '" + text + "'");
    }
    return value;
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& text)
{
    std::uint64_t value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc() || ptr != end) {
        throw ConfigError("key '" + key + "': expected a non-negative integer, got '" + text + "'");
    }
    return value;
}

bool parse_bool(const std::string& key, const std::string& text)
{
    if (text == "on" || text == "true" || text == "1" || text == "yes") {
        return true;
    }
    if (text == "off" || text == "false" || text == "0" || text == "no") {
        return false;
    }
    throw ConfigError("key '" + key + "': expected on/off, got '" + text + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& text)
{
    std::vector<double> out;
    if (trim(text).empty()) {
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(parse_double(key, trim(item)));
    }
    return out;
}

std::string join(const std::vector<double>& values)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += format_double(values[i]);
    }
    return out;
}

// Typed lookups with defaults.
class Reader {
public:
    explicit Reader(const ConfigMap& map) : map_(map) {}

    bool has(const std::string& key) const { return map_.contains(key); }
    std::string text(const std::string& key, const std::string& fallback) const
    {
        return map_.get(key).value_or(fallback);
    }
    double number(const std::string& key, double fallback) const
    {
        const auto v = map_.get(key);
        return v ? parse_double(key, *v) : fallback;
    }
    std::uint64_t count(const std::string& key, std::uint64_t fallback) const
    {
        const auto v = map_.get(key);
        return v ? parse_unsigned(key, *v) : fallback;
    }
    bool flag(const std::string& key, bool fallback) const
    {
        const auto v = map_.get(key);
        return v ? parse_bool(key, *v) : fallback;
    }
    std::vector<double> list(const std::string& key, const std::vector<double>& fallback) const
    {
        const auto v = map_.get(key);
        return v ? parse_list(key, *v) : fallback;
    }

private:
    const ConfigMap& map_;
};

BeamKind parse_beam(const std::string& text)
{
    if (text == "fab") {
        return BeamKind::Fab;
    }
    if (text == "rab") {
        return BeamKind::Rab;
    }
    if (text == "frb") {
        return BeamKind::Frb;
    }
    throw ConfigError("key 'beamformer': expected fab, rab or frb, got '" + text + "'");
}

FoiSource parse_source(const std::string& text)
{
    if (text == "zero") {
        return FoiSource::Zero;
    }
    if (text == "list") {
        return FoiSource::List;
    }
    if (text == "soa") {
        return FoiSource::Soa;
    }
    if (text == "bcdla") {
        return FoiSource::Bcdla;
    }
    throw ConfigError("key 'foi_source': expected zero, list, soa or bcdla, got '" + text + "'");
}

Trajectory parse_trajectory(const std::string& text)
{
    if (text == "T12" || text == "t12") {
        return Trajectory::T12;
    }
    if (text == "T13" || text == "t13") {
        return Trajectory::T13;
    }
    if (text == "T14" || text == "t14") {
        return Trajectory::T14;
    }
    throw ConfigError("key 'profile_trajectory': expected T12, T13 or T14, got '" + text + "'");
}

std::string_view trajectory_name(Trajectory t)
{
    switch (t) {
    case Trajectory::T12:
        return "T12";
    case Trajectory::T13:
        return "T13";
    case Trajectory::T14:
        return "T14";
    }
    return "T14";
}

BlockRule parse_rule(const std::string& text)
{
    if (text == "halved") {
        return BlockRule::Halved;
    }
    if (text == "full") {
        return BlockRule::FullGradient;
    }
    throw ConfigError("key 'bcdla_rule': expected halved or full, got '" + text + "'");
}

} // namespace

void ConfigMap::set(const std::string& key, const std::string& value)
{
    if (!is_known(key)) {
        throw ConfigError("unknown configuration key '" + key + "'");
    }
    values_[key] = value;
}

void ConfigMap::set_assignment(std::string_view assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) {
        throw ConfigError("expected key=value, got '" + std::string(assignment) + "'");
    }
    const std::string key = trim(assignment.substr(0, eq));
    if (key.empty()) {
        throw ConfigError("empty key in '" + std::string(assignment) + "'");
    }
    set(key, trim(assignment.substr(eq + 1)));
}

std::optional<std::string> ConfigMap::get(const std::string& key) const
{
    const auto it = values_.find(key);
    if (it == values_.end()) {
        return std::nullopt;
    }
    return it->second;
}

ConfigMap parse_config(std::istream& in)
{
    ConfigMap map;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto hash = line.find('#');
        const std::string body = trim(std::string_view(line).substr(0, hash));
        if (body.empty()) {
            continue;
        }
        try {
            map.set_assignment(body);
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(number) + ": " + e.what());
        }
    }
    return map;
}

ConfigMap load_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    return parse_config(in);
}

std::span<const std::string_view> config_keys()
{
    return kKeys;
}

std::string_view foi_source_name(FoiSource source)
{
    switch (source) {
    case FoiSource::Zero:
        return "zero";
    case FoiSource::List:
        return "list";
    case FoiSource::Soa:
        return "soa";
    case FoiSource::Bcdla:
        return "bcdla";
    }
    return "zero";
}

LinkBudget Scenario::link() const
{
    return LinkBudget{dbm_to_mw(tx_power_dbm), NoiseModel::from_dbm(bob_noise_dbm, eve_noise_dbm),
                      path_loss};
}

Scenario resolve_scenario(const ConfigMap& config)
{
    const Reader r(config);
    Scenario s;

    const double carrier = r.number("carrier_hz", 73e9);
    if (!(carrier > 0.0)) {
        throw DomainError("carrier frequency must be positive");
    }
    const double spacing = r.number("spacing_m", 0.5 * kSpeedOfLight / carrier);
    s.geometry = ArrayGeometry::make(carrier, spacing, r.count("subarrays", 15),
                                     r.count("elements_per_subarray", 11));
    const std::size_t m_count = s.geometry.subarrays;

    s.beamformer = parse_beam(r.text("beamformer", "frb"));
    s.foi_source = parse_source(r.text("foi_source", "soa"));
    s.foi_list_hz = r.list("foi_list_hz", {});
    s.max_offset_hz = r.number("max_offset_hz", 1e-5 * carrier);
    if (!(s.max_offset_hz >= 0.0)) {
        throw DomainError("max_offset_hz must be non-negative");
    }
    if (s.foi_source == FoiSource::List) {
        if (s.foi_list_hz.size() != m_count) {
            throw ConfigError("foi_list_hz has " + std::to_string(s.foi_list_hz.size()) +
                              " entries but subarrays = " + std::to_string(m_count));
        }
        // Bound check.
        (void)FoiVector(s.foi_list_hz, s.max_offset_hz);
    }
    s.rab_delta_f_hz = r.number("rab_delta_f_hz", 0.0);

    s.target_theta_deg = r.number("target_theta_deg", 90.0);
    s.target = FieldPoint::from_degrees(s.target_theta_deg, r.number("target_range_m", 500.0));
    const bool eve_theta = r.has("eve_theta_deg");
    const bool eve_range = r.has("eve_range_m");
    if (eve_theta != eve_range) {
        throw ConfigError("eve_theta_deg and eve_range_m must be given together");
    }
    if (eve_theta) {
        s.eve_theta_deg = r.number("eve_theta_deg", 0.0);
        s.eve = FieldPoint::from_degrees(s.eve_theta_deg, r.number("eve_range_m", 1.0));
    }

    s.tx_power_dbm = r.number("tx_power_dbm", 40.0);
    s.bob_noise_dbm = r.number("bob_noise_dbm", -100.0);
    s.eve_noise_dbm = r.number("eve_noise_dbm", -100.0);
    s.path_loss = r.flag("path_loss", true);

    GridSpec grid = GridSpec::default_for(s.target);
    grid.theta_min_deg = r.number("grid_theta_min_deg", grid.theta_min_deg);
    grid.theta_max_deg = r.number("grid_theta_max_deg", grid.theta_max_deg);
    grid.theta_step_deg = r.number("grid_theta_step_deg", grid.theta_step_deg);
    grid.range_min_m = r.number("grid_range_min_m", grid.range_min_m);
    grid.range_max_m = r.number("grid_range_max_m", grid.range_max_m);
    grid.range_step_m = r.number("grid_range_step_m", grid.range_step_m);
    grid.validate();
    s.grid = grid;

    SearchSettings search = SearchSettings::around(s.target);
    search.theta_min_deg = r.number("search_theta_min_deg", search.theta_min_deg);
    search.theta_max_deg = r.number("search_theta_max_deg", search.theta_max_deg);
    search.range_min_m = r.number("search_range_min_m", search.range_min_m);
    search.range_max_m = r.number("search_range_max_m", search.range_max_m);
    search.safety_theta_step_deg = r.number("search_theta_step_deg", search.safety_theta_step_deg);
    search.safety_range_step_m = r.number("search_range_step_m", search.safety_range_step_m);
    search.refine_count = r.count("search_refine_count", search.refine_count);
    search.use_candidates = r.flag("search_candidates", search.use_candidates);
    search.use_safety_grid = r.flag("search_safety_grid", search.use_safety_grid);
    search.validate();
    if (!search.use_candidates && !search.use_safety_grid) {
        throw ConfigError("search_candidates and search_safety_grid cannot both be off");
    }
    s.search = search;

    s.seed = r.count("seed", 1);

    s.soa.population = r.count("soa_population", 40);
    s.soa.iterations = r.count("soa_iterations", 100);
    s.soa.u_max = r.number("soa_u_max", 0.95);
    s.soa.u_min = r.number("soa_u_min", 0.0111);
    s.soa.seed = s.seed;
    s.soa.bound_hz = s.max_offset_hz;
    s.soa.validate();

    s.bcdla.epsilon_hz = r.number("bcdla_epsilon_hz", 1.0);
    s.bcdla.r_stop = r.count("bcdla_r_stop", 0);
    s.bcdla.rule = parse_rule(r.text("bcdla_rule", "halved"));
    s.bcdla.refine_root = r.flag("bcdla_refine_root", false);
    s.bcdla.seed = s.seed;
    s.bcdla.bound_hz = s.max_offset_hz;
    const auto initial = r.list("bcdla_initial_foi_hz", {});
    if (!initial.empty()) {
        s.bcdla.initial_foi = initial;
        (void)FoiVector(initial, s.max_offset_hz);
    }
    s.bcdla.validate(m_count);

    s.profile.trajectory = parse_trajectory(r.text("profile_trajectory", "T14"));
    s.profile.fixed_range_m = r.number("profile_fixed_range_m", 380.0);
    s.profile.fixed_theta_deg = r.number("profile_fixed_theta_deg", s.target_theta_deg);
    s.profile.locus_delta_f_hz = s.rab_delta_f_hz;
    s.profile.sweep = s.grid;

    s.sop_gammas = r.list("sop_gammas", {0.5, 1.0, 2.0, 4.0, 6.0, 8.0});
    s.sop_max_offset_fractions = r.list("sop_max_offset_fractions", {0.0, 1e-6, 1e-5, 1e-4});
    s.fab_bandwidth_hz = r.number("fab_bandwidth_hz", 1e9);
    return s;
}

std::string dump_config(const Scenario& s)
{
    std::ostringstream out;
    auto put = [&](std::string_view key, const std::string& value) {
        out << key << " = " << value << '\n';
    };
    auto num = [&](std::string_view key, double v) { put(key, format_double(v)); };
    auto cnt = [&](std::string_view key, std::uint64_t v) { put(key, std::to_string(v)); };
    auto flag = [&](std::string_view key, bool v) { put(key, v ? "on" : "off"); };

    num("carrier_hz", s.geometry.carrier_hz);
    num("spacing_m", s.geometry.spacing_m);
    cnt("subarrays", s.geometry.subarrays);
    cnt("elements_per_subarray", s.geometry.elements_per_subarray);
    put("beamformer", std::string(beam_kind_name(s.beamformer)));
    put("foi_source", std::string(foi_source_name(s.foi_source)));
    put("foi_list_hz", join(s.foi_list_hz));
    num("max_offset_hz", s.max_offset_hz);
    num("rab_delta_f_hz", s.rab_delta_f_hz);
    num("target_theta_deg", s.target_theta_deg);
    num("target_range_m", s.target.range_m);
    if (s.eve) {
        num("eve_theta_deg", s.eve_theta_deg);
        num("eve_range_m", s.eve->range_m);
    }
    num("tx_power_dbm", s.tx_power_dbm);
    num("bob_noise_dbm", s.bob_noise_dbm);
    num("eve_noise_dbm", s.eve_noise_dbm);
    flag("path_loss", s.path_loss);
    num("grid_theta_min_deg", s.grid.theta_min_deg);
    num("grid_theta_max_deg", s.grid.theta_max_deg);
    num("grid_theta_step_deg", s.grid.theta_step_deg);
    num("grid_range_min_m", s.grid.range_min_m);
    num("grid_range_max_m", s.grid.range_max_m);
    num("grid_range_step_m", s.grid.range_step_m);
    num("search_theta_min_deg", s.search.theta_min_deg);
    num("search_theta_max_deg", s.search.theta_max_deg);
    num("search_range_min_m", s.search.range_min_m);
    num("search_range_max_m", s.search.range_max_m);
    num("search_theta_step_deg", s.search.safety_theta_step_deg);
    num("search_range_step_m", s.search.safety_range_step_m);
    cnt("search_refine_count", s.search.refine_count);
    flag("search_candidates", s.search.use_candidates);
    flag("search_safety_grid", s.search.use_safety_grid);
    cnt("soa_population", s.soa.population);
    cnt("soa_iterations", s.soa.iterations);
    num("soa_u_max", s.soa.u_max);
    num("soa_u_min", s.soa.u_min);
    num("bcdla_epsilon_hz", s.bcdla.epsilon_hz);
    cnt("bcdla_r_stop", s.bcdla.r_stop);
    put("bcdla_rule", s.bcdla.rule == BlockRule::Halved ? "halved" : "full");
    flag("bcdla_refine_root", s.bcdla.refine_root);
    put("bcdla_initial_foi_hz", s.bcdla.initial_foi ? join(*s.bcdla.initial_foi) : "");
    put("profile_trajectory", std::string(trajectory_name(s.profile.trajectory)));
    num("profile_fixed_range_m", s.profile.fixed_range_m);
    num("profile_fixed_theta_deg", s.profile.fixed_theta_deg);
    put("sop_gammas", join(s.sop_gammas));
    put("sop_max_offset_fractions", join(s.sop_max_offset_fractions));
    num("fab_bandwidth_hz", s.fab_bandwidth_hz);
    cnt("seed", s.seed);
    return out.str();
}

std::string format_double(double value)
{
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), ptr);
}

} // namespace fdsa
