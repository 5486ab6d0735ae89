// focklab: numerical laboratory for Toeplitz products on polyanalytic
// Fock spaces.  One subcommand per experiment; each run writes CSV tables
// and a deterministic report.json under the output directory and exits 0
// exactly when every configured check passes.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "focklab/experiments.hpp"
#include "focklab/parallel.hpp"

namespace {

int env_threads() {
    const char* raw = std::getenv("FOCKLAB_THREADS");
    if (!raw) return 0;
    const int n = std::atoi(raw);
    return n > 0 ? n : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"focklab: Toeplitz products on polyanalytic Fock spaces"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::uint64_t seed = 0;
    double tol = 0.0;
    int threads = env_threads();

    CLI::App* list_cmd = app.add_subcommand("list", "list available experiments");
    for (const auto& name : focklab::experiments::experiment_names()) {
        CLI::App* sub = app.add_subcommand(name, "run the " + name + " experiment");
        sub->add_option("--config", config_path, "JSON config file")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--out", out_dir, "output directory (overrides config)");
        sub->add_option("--seed", seed, "RNG seed (overrides config)");
        sub->add_option("--tol", tol, "quadrature tolerance (overrides config)");
        sub->add_option("--threads", threads,
                        "worker threads (default: FOCKLAB_THREADS or hardware)");
    }

    CLI11_PARSE(app, argc, argv);

    if (list_cmd->parsed()) {
        for (const auto& name : focklab::experiments::experiment_names())
            std::cout << name << "\n";
        return 0;
    }
    const CLI::App* sub = app.get_subcommands().front();
    const std::string requested = sub->get_name();

    focklab::set_thread_count(threads);

    try {
        std::ifstream in(config_path);
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error& err) {
            throw std::invalid_argument(config_path + ": " + err.what());
        }
        // Command-line overrides are folded into the document before
        // validation so the report echoes the effective configuration.
        if (sub->count("--seed")) doc["seed"] = seed;
        if (sub->count("--tol")) doc["tolerances"]["quadrature"] = tol;
        if (!out_dir.empty()) doc["output"] = {{"dir", out_dir}};

        focklab::experiments::ExperimentConfig cfg =
            focklab::experiments::parse_config(doc);
        if (cfg.experiment != requested) {
            std::cerr << "error: config is for experiment '" << cfg.experiment
                      << "' but '" << requested << "' was requested\n";
            return 2;
        }

        const focklab::experiments::RunReport report = focklab::experiments::run(cfg);
        std::cout << "experiment: " << report.experiment << "\n";
        std::cout << "out: " << cfg.out_dir << "\n";
        for (const auto& check : report.checks)
            std::printf("check %-28s value=%-14.6g threshold=%-10.4g (%s) [%s]\n",
                        check.name.c_str(), check.value, check.threshold,
                        check.comparison.c_str(), check.pass ? "PASS" : "FAIL");
        std::printf("result: %s (wall %.2f s, threads %d)\n",
                    report.pass ? "PASS" : "FAIL", report.wall_seconds,
                    focklab::thread_count());
        return report.pass ? 0 : 1;
    } catch (const std::invalid_argument& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 3;
    }
}
