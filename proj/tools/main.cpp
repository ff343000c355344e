#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "prefront/cli.hpp"
#include "prefront/csv.hpp"

namespace {

using prefront::cli::RunConfig;

std::vector<std::vector<double>> parse_weight_args(const std::vector<std::string>& args) {
    std::vector<std::vector<double>> out;
    out.reserve(args.size());
    for (const auto& a : args) out.push_back(prefront::parse_real_list(a));
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized efficient-portfolio toolkit over finite scenario markets"};
    app.require_subcommand(1);

    // analyze
    std::string market_path, weights_arg;
    auto* analyze = app.add_subcommand("analyze", "Return statistics of one portfolio");
    analyze->add_option("--market", market_path, "Scenario CSV")->required();
    analyze->add_option("--weights", weights_arg, "Comma-separated weights")->required();

    // relate
    std::string rel_market, rel_preset, rel_config_path;
    std::vector<std::string> rel_weights;
    std::vector<std::string> rel_objectives;
    double rel_epsilon = 1e-9;
    auto* relate_cmd = app.add_subcommand("relate", "Dominance verdict for a pair of portfolios");
    relate_cmd->add_option("--market", rel_market, "Scenario CSV")->required();
    relate_cmd->add_option("--weights", rel_weights, "Portfolio weights; pass twice")
        ->required()
        ->expected(2);
    relate_cmd->add_option("--preset", rel_preset, "Objective preset (default markowitz)");
    relate_cmd->add_option("--objective", rel_objectives, "Explicit objective entry, repeatable");
    relate_cmd->add_option("--epsilon", rel_epsilon, "Comparison tolerance");

    // frontier
    RunConfig fc;
    std::string frontier_config;
    auto* frontier = app.add_subcommand("frontier", "Maximal set over a discretized domain");
    frontier->add_option("--config", frontier_config, "Key-value config file");
    auto* f_market = frontier->add_option("--market", fc.market_path, "Scenario CSV");
    auto* f_domain = frontier->add_option("--domain", fc.domain_kind, "simplex or ball");
    auto* f_n = frontier->add_option("--n", fc.domain_n, "Domain dimension");
    auto* f_grid = frontier->add_option("--grid", fc.grid, "Lattice resolution N");
    auto* f_samples = frontier->add_option("--samples", fc.sample_count, "Random candidate count");
    auto* f_seed = frontier->add_option("--seed", fc.seed, "Sampling seed");
    auto* f_radius = frontier->add_option("--radius", fc.ball_radius, "Ball radius");
    auto* f_preset = frontier->add_option("--preset", fc.preset, "Objective preset");
    std::vector<std::string> f_objective_lines;
    auto* f_obj = frontier->add_option("--objective", f_objective_lines, "Explicit objective");
    auto* f_eps = frontier->add_option("--epsilon", fc.epsilon, "Comparison tolerance");
    auto* f_ell = frontier->add_option("--ell", fc.sd_order, "Stochastic dominance order");
    auto* f_out = frontier->add_option("--out", fc.frontier_path, "Frontier CSV path");
    auto* f_plot = frontier->add_option("--plot", fc.plot_path, "Plot data TSV path");
    auto* f_threads = frontier->add_option("--threads", fc.threads, "Worker threads");

    // chain
    std::string chain_market, chain_preset;
    std::vector<std::string> chain_weights, chain_objectives;
    double chain_epsilon = 1e-9;
    auto* chain_cmd = app.add_subcommand("chain", "Chain check and extremum report");
    chain_cmd->add_option("--market", chain_market, "Scenario CSV")->required();
    chain_cmd->add_option("--weights", chain_weights, "Portfolio weights; repeatable")
        ->required();
    chain_cmd->add_option("--preset", chain_preset, "Objective preset (default markowitz)");
    chain_cmd->add_option("--objective", chain_objectives, "Explicit objective entry");
    chain_cmd->add_option("--epsilon", chain_epsilon, "Comparison tolerance");

    // sdom
    std::string sd_market;
    std::vector<std::string> sd_weights;
    int sd_ell = 1, sd_samples = 16;
    auto* sdom = app.add_subcommand("sdom", "Stochastic dominance comparison of two portfolios");
    sdom->add_option("--market", sd_market, "Scenario CSV")->required();
    sdom->add_option("--weights", sd_weights, "Portfolio weights; pass twice")
        ->required()
        ->expected(2);
    sdom->add_option("--ell", sd_ell, "Dominance order");
    sdom->add_option("--samples", sd_samples, "Interior samples per interval for ell >= 3");

    // kernel
    std::string kernel_path;
    double kernel_epsilon = 1e-9;
    auto* kernel = app.add_subcommand("kernel", "Certify maximal elements of a kernel matrix");
    kernel->add_option("--matrix", kernel_path, "k x k CSV matrix")->required();
    kernel->add_option("--epsilon", kernel_epsilon, "Comparison tolerance");

    // gen
    std::size_t gen_n = 0, gen_m = 0;
    std::uint64_t gen_seed = 0;
    double gen_lo = -0.1, gen_hi = 0.1;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen", "Generate a synthetic scenario market");
    gen->add_option("--n", gen_n, "Assets")->required();
    gen->add_option("--m", gen_m, "Scenarios")->required();
    gen->add_option("--seed", gen_seed, "RNG seed");
    gen->add_option("--lo", gen_lo, "Lowest return");
    gen->add_option("--hi", gen_hi, "Highest return");
    gen->add_option("--out", gen_out, "Output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (analyze->parsed()) {
            prefront::cli::run_analyze(market_path, prefront::parse_real_list(weights_arg),
                                       std::cout);
        } else if (relate_cmd->parsed()) {
            RunConfig rc;
            rc.preset = rel_preset;
            rc.objective_lines = rel_objectives;
            rc.epsilon = rel_epsilon;
            prefront::cli::run_relate(rel_market, parse_weight_args(rel_weights), rc, std::cout);
        } else if (frontier->parsed()) {
            RunConfig config;
            if (!frontier_config.empty()) config = prefront::cli::load_config_file(frontier_config);
            // Flags passed on the command line override the config file.
            if (f_market->count()) config.market_path = fc.market_path;
            if (f_domain->count()) config.domain_kind = fc.domain_kind;
            if (f_n->count()) config.domain_n = fc.domain_n;
            if (f_grid->count()) config.grid = fc.grid;
            if (f_samples->count()) config.sample_count = fc.sample_count;
            if (f_seed->count()) config.seed = fc.seed;
            if (f_radius->count()) config.ball_radius = fc.ball_radius;
            if (f_preset->count()) config.preset = fc.preset;
            if (f_obj->count()) config.objective_lines = f_objective_lines;
            if (f_eps->count()) config.epsilon = fc.epsilon;
            if (f_ell->count()) config.sd_order = fc.sd_order;
            if (f_out->count()) config.frontier_path = fc.frontier_path;
            if (f_plot->count()) config.plot_path = fc.plot_path;
            if (f_threads->count()) config.threads = fc.threads;
            prefront::cli::run_frontier(config, std::cout);
        } else if (chain_cmd->parsed()) {
            RunConfig rc;
            rc.preset = chain_preset;
            rc.objective_lines = chain_objectives;
            rc.epsilon = chain_epsilon;
            prefront::cli::run_chain(chain_market, parse_weight_args(chain_weights), rc,
                                     std::cout);
        } else if (sdom->parsed()) {
            prefront::cli::run_sdom(sd_market, parse_weight_args(sd_weights), sd_ell, sd_samples,
                                    std::cout);
        } else if (kernel->parsed()) {
            prefront::cli::run_kernel(kernel_path, kernel_epsilon, std::cout);
        } else if (gen->parsed()) {
            prefront::cli::run_gen(gen_n, gen_m, gen_seed, gen_lo, gen_hi, gen_out, std::cout);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return prefront::cli::exit_code_for(e);
    }
    return 0;
}
