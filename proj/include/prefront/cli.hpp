#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "prefront/domain.hpp"

namespace prefront::cli {

/// Everything a frontier run needs. Loadable from a flat key-value config
/// file; command-line flags override loaded values.
struct RunConfig {
    std::string market_path;

    std::string domain_kind = "simplex";     // simplex | ball
    std::size_t domain_n = 0;                // 0: take the market's asset count
    std::size_t grid = 0;                    // lattice resolution N
    std::size_t sample_count = 0;            // random candidates instead of a grid
    std::uint64_t seed = 0;
    std::vector<double> ball_center;         // empty: barycenter
    double ball_radius = 0.0;

    std::string preset;
    std::vector<std::string> objective_lines;   // explicit objectives, textual form
    double epsilon = 1e-9;
    int sd_order = 2;
    int sd_samples = 16;

    std::string frontier_path;
    std::string plot_path;
    unsigned threads = 1;
};

/// Parses `key = value` lines (# comments, blank lines allowed). Keys:
/// market, domain.kind, domain.n, domain.N, domain.samples, domain.seed,
/// domain.center, domain.radius, preset, objective (repeatable), epsilon,
/// sd.ell, sd.samples, output.frontier, output.plot, threads.
RunConfig load_config_file(const std::string& path);

/// Textual objective entry: "KIND[:ARG[:ARG]] DIRECTION [POLICY]", e.g.
/// "mean max", "moment:3 min", "sd:2:0.5 min", "skew2 min error".
ObjectiveSpec parse_objective(const std::string& text);

/// Expands a run configuration into the candidate list it describes.
std::vector<Portfolio> make_candidates(const RunConfig& config, const ScenarioMarket& market);

void run_analyze(const std::string& market_path, const std::vector<double>& weights,
                 std::ostream& out);
void run_relate(const std::string& market_path, const std::vector<std::vector<double>>& pair,
                const RunConfig& config, std::ostream& out);
void run_frontier(const RunConfig& config, std::ostream& out);
void run_chain(const std::string& market_path,
               const std::vector<std::vector<double>>& portfolios, const RunConfig& config,
               std::ostream& out);
void run_sdom(const std::string& market_path, const std::vector<std::vector<double>>& pair,
              int ell, int samples_per_interval, std::ostream& out);
void run_kernel(const std::string& matrix_path, double epsilon, std::ostream& out);
void run_gen(std::size_t assets, std::size_t scenarios, std::uint64_t seed, double lo, double hi,
             const std::string& out_path, std::ostream& out);

/// Maps an escaped exception to the documented process exit code:
/// 2 validation, 3 computation, 4 I/O.
int exit_code_for(const std::exception& e);

} // namespace prefront::cli
