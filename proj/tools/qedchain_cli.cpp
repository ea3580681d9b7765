// qedchain: command-line front end for the runner.

#include "qedchain/runner.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    using namespace qedchain;
    CLI::App app{"Spin-chain / quantized-field dynamics: propagation, operator-identity checks, mean-field closure"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    unsigned workers = 1;
    std::uint64_t seed = 0;
    bool verbose = false;

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"run", "run the task named in the config"},
        {"propagate", "exact Schrodinger propagation"},
        {"verify_eom", "check every equation of motion against the commutator"},
        {"verify_compact", "check the compact vector form of the site equations"},
        {"meanfield", "mean-field (c-number) propagation"},
        {"compare", "exact and mean-field runs side by side"},
        {"sweep", "parameter sweep over the configured axes"},
    };
    std::vector<CLI::App*> subs;
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", config_path, "JSON config file")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", out_dir, "output directory")->capture_default_str();
        sub->add_option("--workers", workers, "concurrent sweep points")->capture_default_str()->check(CLI::PositiveNumber);
        sub->add_option("--seed", seed, "seed for randomized checks (overrides the config)");
        sub->add_flag("--verbose", verbose, "progress messages on stderr");
        subs.push_back(sub);
    }
    CLI11_PARSE(app, argc, argv);

    RunOptions options;
    options.out_dir = out_dir;
    options.workers = workers;
    bool seed_given = false;
    for (CLI::App* sub : subs) {
        if (!sub->parsed()) continue;
        seed_given = sub->get_option("--seed")->count() > 0;
        if (sub->get_name() != "run") options.task = parse_task(sub->get_name());
    }
    if (seed_given) options.seed = seed;
    if (verbose) options.log = [](const std::string& m) { std::cerr << m << "\n"; };

    try {
        const RunConfig config = load_config(config_path);
        const RunReport report = run(config, options);
        for (const auto& c : report.body.at("checks"))
            std::cout << (c.at("pass").get<bool>() ? "PASS " : "FAIL ") << c.at("name").get<std::string>() << "  measured "
                      << c.at("measured").dump() << " " << c.at("comparison").get<std::string>() << " "
                      << c.at("tolerance").dump() << "\n";
        std::cout << "report: " << (options.out_dir / "report.json").string() << "\n";
        return report.passed() ? 0 : 1;
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
