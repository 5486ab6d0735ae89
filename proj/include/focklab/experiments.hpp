#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

// vendored single-header nlohmann/json
#include "json.hpp"

#include "focklab/symbols.hpp"
#include "focklab/types.hpp"

namespace focklab::experiments {

// Deterministic, platform-independent uniform generator: doubles are built
// from the top 53 bits of a mt19937_64 stream so sequences depend only on
// the seed.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    double uniform();                       // [0, 1)
    double uniform(double lo, double hi);   // [lo, hi)
    cplx unit_square();                     // Re, Im in [-1, 1)
    cplx disk(double radius);               // uniform on |z| <= radius

  private:
    std::mt19937_64 eng_;
};

// Random polyanalytic polynomial symbol of order <= max_order (1 to
// max_terms monomials, analytic degree <= max_pow_z, coefficients in the
// unit square); never returns the zero symbol.
symbols::SymbolExpr random_poly_symbol(Rng& rng, int max_order, int max_pow_z,
                                       int max_terms);

struct GridSpec {
    double extent = 2.0;
    double spacing = 0.25;
};

// Square grid over |Re z|, |Im z| <= extent, row-major with Im ascending
// then Re ascending; deterministic point order.
std::vector<cplx> square_grid(const GridSpec& spec);

// count evenly spaced values on [lo, hi].
std::vector<double> ray_values(double lo, double hi, int count);

struct ExperimentConfig {
    std::string experiment;
    std::uint64_t seed = 1;
    std::string out_dir;
    double quadrature_tol = 1e-9;
    double plateau_threshold = 0.02;
    double match_tol = 0.0;
    int m = 1, p = 1, n = 1;
    int D = 40;
    std::vector<int> D_list;
    GridSpec grid;
    std::map<std::string, symbols::SymbolExpr> symbol;  // "f", "g", "h"
    nlohmann::json raw;  // effective config as parsed (echoed into reports)
};

// Parse and validate a config document; unknown keys and malformed values
// raise std::invalid_argument naming the offending field.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::string& path);

struct Check {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    std::string comparison;  // "<", "<=", ">=", "==", "bool"
    bool pass = false;
};

struct RunReport {
    std::string experiment;
    bool pass = false;
    std::vector<Check> checks;
    nlohmann::ordered_json document;  // deterministic report.json content
    std::vector<std::string> tables;  // CSV files written under out_dir
    double wall_seconds = 0.0;        // measured; intentionally not serialized
};

// Execute the experiment named by cfg.experiment, write its CSV tables and
// report.json under cfg.out_dir, and return the report.  The report bytes
// depend only on (config, seed), never on the worker count.
RunReport run(const ExperimentConfig& cfg);

// The list of experiment names run() dispatches on.
const std::vector<std::string>& experiment_names();

}  // namespace focklab::experiments
