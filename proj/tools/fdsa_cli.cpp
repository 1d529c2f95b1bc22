// SPDX-License-Identifier: Apache-2.0
#include "fdsa/commands.hpp"
#include "fdsa/error.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitDomain = 3;

int fail(int code, const std::string& message)
{
    std::cerr << "ERROR: " << message << '\n';
    return code;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Frequency diverse subarray beamforming: patterns, secrecy rates and FOI optimizers"};
    app.option_defaults()->always_capture_default();

    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_path;
    std::string seed;
    bool dump = false;
    app.add_option("--config", config_path, "Scenario file (key = value lines)");
    app.add_option("--set", overrides, "Override one key, e.g. --set subarrays=11")->take_all();
    app.add_option("--out", out_path, "Write CSV here instead of stdout");
    app.add_option("--seed", seed, "RNG seed (same as --set seed=N)");
    app.add_flag("--dump-config", dump, "Print the fully resolved configuration and exit");

    auto* pattern = app.add_subcommand("pattern", "Beampattern over the grid");
    auto* profile = app.add_subcommand("profile", "SR along an eavesdropper trajectory");
    std::string trajectory;
    profile->add_option("--trajectory", trajectory, "T12, T13 or T14");
    auto* optimize = app.add_subcommand("optimize", "Run an FOI optimizer and print its trace");
    std::string algorithm;
    optimize->add_option("--algorithm", algorithm, "soa or bcdla")->required();
    auto* sop = app.add_subcommand("sop", "Secrecy outage probability per FOI bound and threshold");
    std::string gammas;
    std::string fractions;
    sop->add_option("--gammas", gammas, "Comma separated SR thresholds in bits/s/Hz");
    sop->add_option("--dfmax-fractions", fractions, "Comma separated FOI bounds as fractions of f_c");
    auto* rbw = app.add_subcommand("rbw", "Relative bandwidth per FOI bound");
    std::string fab_bandwidth;
    rbw->add_option("--dfmax-fractions", fractions, "Comma separated FOI bounds as fractions of f_c");
    rbw->add_option("--fab-bandwidth-hz", fab_bandwidth, "Reference FAB bandwidth");
    for (auto* sub : {pattern, profile, optimize, sop, rbw}) {
        sub->fallthrough();
    }
    app.require_subcommand(0, 1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail(kExitConfig, e.what());
    }

    try {
        fdsa::ConfigMap config;
        if (!config_path.empty()) {
            config = fdsa::load_config_file(config_path);
        }
        for (const auto& assignment : overrides) {
            config.set_assignment(assignment);
        }
        if (!seed.empty()) {
            config.set("seed", seed);
        }
        if (!trajectory.empty()) {
            config.set("profile_trajectory", trajectory);
        }
        if (!gammas.empty()) {
            config.set("sop_gammas", gammas);
        }
        if (!fractions.empty()) {
            config.set("sop_max_offset_fractions", fractions);
        }
        if (!fab_bandwidth.empty()) {
            config.set("fab_bandwidth_hz", fab_bandwidth);
        }
        const auto scenario = fdsa::resolve_scenario(config);

        std::ofstream file;
        if (!out_path.empty()) {
            file.open(out_path);
            if (!file) {
                return fail(kExitConfig, "cannot open output file '" + out_path + "'");
            }
        }
        std::ostream& out = out_path.empty() ? std::cout : file;

        if (dump) {
            out << fdsa::dump_config(scenario);
            return 0;
        }
        if (*pattern) {
            fdsa::cmd_pattern(scenario, out);
        } else if (*profile) {
            fdsa::cmd_profile(scenario, out);
        } else if (*optimize) {
            if (algorithm != "soa" && algorithm != "bcdla") {
                return fail(kExitConfig, "--algorithm must be soa or bcdla");
            }
            fdsa::cmd_optimize(scenario,
                               algorithm == "soa" ? fdsa::Algorithm::Soa : fdsa::Algorithm::Bcdla,
                               out);
        } else if (*sop) {
            fdsa::cmd_sop(scenario, out);
        } else if (*rbw) {
            fdsa::cmd_rbw(scenario, out);
        } else {
            return fail(kExitConfig, "a subcommand is required: pattern, profile, optimize, sop, rbw");
        }
        out.flush();
        if (!out) {
            return fail(kExitDomain, "failed writing output");
        }
    } catch (const fdsa::ConfigError& e) {
        return fail(kExitConfig, e.what());
    } catch (const fdsa::DomainError& e) {
        return fail(kExitDomain, e.what());
    } catch (const std::exception& e) {
        return fail(kExitDomain, e.what());
    }
    return 0;
}
