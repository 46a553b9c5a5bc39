#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qswitch/scenario.hpp"
#include "qswitch/verify.hpp"

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitParseError = 2;
constexpr int kExitInvariantViolation = 3;
constexpr int kExitNumericalFailure = 4;

int dispatch(const qswitch::ScenarioConfig& config, const qswitch::RunOptions& options) {
    const bool ok = qswitch::run_scenario(config, options);
    if (!ok) {
        std::cerr << "verification failed; see " << config.output_path() << "\n";
        return kExitVerifyFailed;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum switch with an open control: scenario runner"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output_override;
    unsigned threads = 1;
    std::uint64_t seed = qswitch::kDefaultSeed;

    app.add_option("--output", output_override, "Override the config's output path");
    app.add_option("--threads", threads, "Worker threads for grid sweeps")
        ->check(CLI::Range(1u, 256u));
    app.add_option("--seed", seed, "Seed for randomized verification draws");

    CLI::App* run_cmd = app.add_subcommand("run", "Execute a scenario config file");
    run_cmd->add_option("config", config_path, "Scenario config file")->required();
    run_cmd->fallthrough();

    CLI::App* verify_cmd =
        app.add_subcommand("verify", "Run the self-verification suite (exit 0 iff all bounds met)");
    int channel_pairs = 50;
    verify_cmd->add_option("--pairs", channel_pairs, "Random channel pairs in the oracle grid")
        ->check(CLI::Range(1, 1000));
    verify_cmd->fallthrough();

    CLI::App* list_cmd = app.add_subcommand("list-scenarios", "List available scenario types");
    list_cmd->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitParseError;
    }

    qswitch::RunOptions options;
    if (!output_override.empty()) options.output_override = output_override;
    options.threads = threads;
    options.seed = seed;
    options.log = &std::cerr;

    try {
        if (list_cmd->parsed()) {
            for (const std::string& name : qswitch::scenario_names()) {
                std::cout << name << "\n";
            }
            return 0;
        }
        if (verify_cmd->parsed()) {
            auto config = qswitch::ScenarioConfig::make(
                qswitch::ScenarioType::verify,
                options.output_override.value_or("verify_report.csv"));
            qswitch::RunOptions verify_options = options;
            verify_options.output_override.reset();
            auto full = qswitch::ScenarioConfig::parse_text(
                "[scenario]\ntype = verify\noutput = " + config.output_path().string() +
                    "\n[params]\nchannel_pairs = " + std::to_string(channel_pairs) + "\n",
                "<verify>");
            return dispatch(full, verify_options);
        }
        const auto config = qswitch::ScenarioConfig::parse_file(config_path);
        return dispatch(config, options);
    } catch (const qswitch::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitParseError;
    } catch (const qswitch::InvariantError& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return kExitInvariantViolation;
    } catch (const qswitch::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumericalFailure;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return kExitInvariantViolation;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumericalFailure;
    }
}
