#include "prefront/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include "prefront/csv.hpp"

namespace prefront::cli {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_real_or_throw(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ValidationError("cannot parse " + what + " '" + text + "'");
    }
}

long parse_int_or_throw(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        const long v = std::stol(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ValidationError("cannot parse " + what + " '" + text + "'");
    }
}

} // namespace

ObjectiveSpec parse_objective(const std::string& text) {
    std::istringstream in(trim(text));
    std::string kind_token, dir_token, policy_token;
    in >> kind_token >> dir_token >> policy_token;
    if (kind_token.empty() || dir_token.empty()) {
        throw ValidationError("objective entry '" + text + "' needs a kind and a direction");
    }

    std::vector<std::string> parts;
    {
        std::istringstream ks(kind_token);
        std::string part;
        while (std::getline(ks, part, ':')) parts.push_back(part);
    }

    ObjectiveSpec::Direction dir;
    if (dir_token == "max") {
        dir = ObjectiveSpec::Direction::Maximize;
    } else if (dir_token == "min") {
        dir = ObjectiveSpec::Direction::Minimize;
    } else {
        throw ValidationError("objective direction must be 'max' or 'min', got '" + dir_token +
                              "'");
    }
    ObjectiveSpec::DegeneratePolicy policy = ObjectiveSpec::DegeneratePolicy::TreatAsZero;
    if (!policy_token.empty()) {
        if (policy_token == "error") {
            policy = ObjectiveSpec::DegeneratePolicy::Error;
        } else if (policy_token != "zero") {
            throw ValidationError("objective policy must be 'error' or 'zero', got '" +
                                  policy_token + "'");
        }
    }

    const std::string& kind = parts[0];
    auto expect_direction = [&](ObjectiveSpec::Direction required, const char* name) {
        if (dir != required) {
            throw ValidationError(std::string("objective '") + name + "' has a fixed direction");
        }
    };
    if (kind == "mean") {
        expect_direction(ObjectiveSpec::Direction::Maximize, "mean");
        return ObjectiveSpec::expected_return();
    }
    if (kind == "variance") {
        expect_direction(ObjectiveSpec::Direction::Minimize, "variance");
        return ObjectiveSpec::variance();
    }
    if (kind == "moment") {
        if (parts.size() != 2) throw ValidationError("moment objective needs an order, e.g. moment:3");
        return ObjectiveSpec::central_moment(
            static_cast<int>(parse_int_or_throw(parts[1], "moment order")), dir);
    }
    if (kind == "skew2") {
        expect_direction(ObjectiveSpec::Direction::Minimize, "skew2");
        return ObjectiveSpec::skew_squared(policy);
    }
    if (kind == "kurt2") {
        expect_direction(ObjectiveSpec::Direction::Minimize, "kurt2");
        return ObjectiveSpec::kurt_squared(policy);
    }
    if (kind == "sd") {
        if (parts.size() != 3) {
            throw ValidationError("sd objective needs an order and a threshold, e.g. sd:2:0.5");
        }
        expect_direction(ObjectiveSpec::Direction::Minimize, "sd");
        return ObjectiveSpec::sd_curve(static_cast<int>(parse_int_or_throw(parts[1], "sd order")),
                                       parse_real_or_throw(parts[2], "sd threshold"));
    }
    throw ValidationError("unknown objective kind '" + kind + "'");
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");

    RunConfig config;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto comment = line.find('#');
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const std::string where = path + " line " + std::to_string(line_no);
        if (eq == std::string::npos) throw ValidationError(where + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (value.empty()) throw ValidationError(where + ": empty value for '" + key + "'");

        if (key == "market") {
            config.market_path = value;
        } else if (key == "domain.kind") {
            if (value != "simplex" && value != "ball") {
                throw ValidationError(where + ": domain.kind must be simplex or ball");
            }
            config.domain_kind = value;
        } else if (key == "domain.n") {
            config.domain_n = static_cast<std::size_t>(parse_int_or_throw(value, "domain.n"));
        } else if (key == "domain.N") {
            config.grid = static_cast<std::size_t>(parse_int_or_throw(value, "domain.N"));
        } else if (key == "domain.samples") {
            config.sample_count =
                static_cast<std::size_t>(parse_int_or_throw(value, "domain.samples"));
        } else if (key == "domain.seed") {
            config.seed = static_cast<std::uint64_t>(parse_int_or_throw(value, "domain.seed"));
        } else if (key == "domain.center") {
            config.ball_center = parse_real_list(value);
        } else if (key == "domain.radius") {
            config.ball_radius = parse_real_or_throw(value, "domain.radius");
        } else if (key == "preset") {
            config.preset = value;
        } else if (key == "objective") {
            config.objective_lines.push_back(value);
        } else if (key == "epsilon") {
            config.epsilon = parse_real_or_throw(value, "epsilon");
        } else if (key == "sd.ell") {
            config.sd_order = static_cast<int>(parse_int_or_throw(value, "sd.ell"));
        } else if (key == "sd.samples") {
            config.sd_samples = static_cast<int>(parse_int_or_throw(value, "sd.samples"));
        } else if (key == "output.frontier") {
            config.frontier_path = value;
        } else if (key == "output.plot") {
            config.plot_path = value;
        } else if (key == "threads") {
            config.threads = static_cast<unsigned>(parse_int_or_throw(value, "threads"));
        } else {
            throw ValidationError(where + ": unknown key '" + key + "'");
        }
    }
    return config;
}

namespace {

ObjectiveConfig objective_config(const RunConfig& config) {
    if (!config.preset.empty() && !config.objective_lines.empty()) {
        throw ValidationError("use a preset or explicit objectives, not both");
    }
    ObjectiveConfig oc;
    oc.preset = config.preset;
    oc.epsilon = config.epsilon;
    oc.sd_order = config.sd_order;
    oc.sd_samples = config.sd_samples;
    for (const auto& line : config.objective_lines) oc.objectives.push_back(parse_objective(line));
    return oc;
}

Portfolio portfolio_from_weights(std::vector<double> weights) {
    const bool shorts = std::any_of(weights.begin(), weights.end(),
                                    [](double w) { return w < -1e-12; });
    if (!shorts) return Portfolio(std::move(weights));
    // Short positions: validate only the hyperplane constraint by using a
    // ball centered at the point itself.
    BallDomain ball{weights, 1.0};
    return Portfolio(std::move(weights), std::move(ball));
}

} // namespace

std::vector<Portfolio> make_candidates(const RunConfig& config, const ScenarioMarket& market) {
    const std::size_t n = config.domain_n == 0 ? market.asset_count : config.domain_n;
    if (n != market.asset_count) {
        throw ValidationError("domain dimension " + std::to_string(n) +
                              " does not match the market's " +
                              std::to_string(market.asset_count) + " assets");
    }
    if ((config.grid == 0) == (config.sample_count == 0)) {
        throw ValidationError("choose exactly one of a grid resolution or a sample count");
    }

    if (config.domain_kind == "simplex") {
        const DomainSpec spec = DomainSpec::simplex(n);
        if (config.grid > 0) return simplex_grid(n, config.grid);
        return random_sample(spec, config.sample_count, config.seed);
    }
    if (config.domain_kind != "ball") {
        throw ValidationError("domain kind must be simplex or ball");
    }
    std::vector<double> center = config.ball_center;
    if (center.empty()) center.assign(n, 1.0 / static_cast<double>(n));
    if (!(config.ball_radius > 0.0)) throw ValidationError("ball domain needs a positive radius");
    const DomainSpec spec = DomainSpec::ball(std::move(center), config.ball_radius);
    if (config.grid > 0) return ball_grid(spec, config.grid);
    return random_sample(spec, config.sample_count, config.seed);
}

void run_analyze(const std::string& market_path, const std::vector<double>& weights,
                 std::ostream& out) {
    const auto market = read_scenario_csv(market_path);
    const auto x = portfolio_from_weights(weights);
    const auto dist = return_distribution(market, x);

    out << "mean " << format_real(expected_return(market, x)) << "\n";
    out << "variance " << format_real(central_moment(market, x, 2)) << "\n";
    try {
        const double skew = skewness(market, x);
        const double kurt = excess_kurtosis(market, x);
        out << "skewness " << format_real(skew) << "\n";
        out << "excess_kurtosis " << format_real(kurt) << "\n";
    } catch (const DegenerateDistribution&) {
        out << "skewness undefined (zero variance)\n";
        out << "excess_kurtosis undefined (zero variance)\n";
    }
    out << "support mass\n";
    for (std::size_t k = 0; k < dist.size(); ++k) {
        out << format_real(dist.support()[k]) << " " << format_real(dist.masses()[k]) << "\n";
    }
}

namespace {

PreorderInstance bind_pair_preorder(const RunConfig& config, const ScenarioMarket& market,
                                    const std::vector<Portfolio>& pair) {
    ObjectiveConfig oc = objective_config(config);
    if (oc.preset.empty() && oc.objectives.empty()) oc.preset = "markowitz";
    return build_preorder(oc, market, &pair);
}

} // namespace

void run_relate(const std::string& market_path, const std::vector<std::vector<double>>& pair,
                const RunConfig& config, std::ostream& out) {
    if (pair.size() != 2) throw ValidationError("relate needs exactly two portfolios");
    const auto market = read_scenario_csv(market_path);
    const std::vector<Portfolio> xs = {portfolio_from_weights(pair[0]),
                                       portfolio_from_weights(pair[1])};
    const auto preorder = bind_pair_preorder(config, market, xs);
    const auto verdict = relate(preorder, xs[0], xs[1]);
    out << "verdict " << to_string(verdict.relation) << "\n";
    if (verdict.witness) {
        out << "witness " << preorder.objective_label(*verdict.witness) << "\n";
    }
}

namespace {

// Plot columns: the first objective of each family, or the first two
// objectives when only one family is present.
std::vector<std::size_t> plot_columns(const PreorderInstance& preorder) {
    const std::size_t nu = preorder.u_family().size();
    const std::size_t total = preorder.objective_count();
    std::vector<std::size_t> cols;
    if (nu > 0 && nu < total) {
        cols = {0, nu};
    } else if (total >= 2) {
        cols = {0, 1};
    } else {
        cols = {0};
    }
    return cols;
}

} // namespace

void run_frontier(const RunConfig& config, std::ostream& out) {
    if (config.market_path.empty()) throw ValidationError("frontier needs a market file");
    if (config.frontier_path.empty()) throw ValidationError("frontier needs an output path");
    const auto market = read_scenario_csv(config.market_path);
    const auto candidates = make_candidates(config, market);
    const auto preorder = build_preorder(objective_config(config), market, &candidates);
    const auto result = maximal_set(preorder, candidates, config.threads);

    const std::size_t n = market.asset_count;
    std::ofstream csv(config.frontier_path);
    if (!csv) throw IoError("cannot write '" + config.frontier_path + "'");
    csv << "index";
    for (std::size_t i = 0; i < n; ++i) csv << ",w_" << (i + 1);
    for (std::size_t o = 0; o < preorder.objective_count(); ++o) {
        csv << "," << preorder.objective_label(o);
    }
    csv << ",maximal,dominator\n";
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        csv << i;
        for (double w : candidates[i].weights()) csv << "," << format_real(w);
        for (double v : preorder.evaluate(candidates[i])) csv << "," << format_real(v);
        csv << "," << (result.dominator[i] ? 0 : 1) << ",";
        if (result.dominator[i]) {
            csv << *result.dominator[i];
        } else {
            csv << -1;
        }
        csv << "\n";
    }
    if (!csv) throw IoError("write failed for '" + config.frontier_path + "'");
    csv.close();

    if (!config.plot_path.empty()) {
        std::ofstream tsv(config.plot_path);
        if (!tsv) throw IoError("cannot write '" + config.plot_path + "'");
        const auto cols = plot_columns(preorder);
        for (std::size_t c = 0; c < cols.size(); ++c) {
            tsv << (c ? "\t" : "") << preorder.objective_label(cols[c]);
        }
        tsv << "\tmaximal\n";
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            const auto values = preorder.evaluate(candidates[i]);
            for (std::size_t c = 0; c < cols.size(); ++c) {
                tsv << (c ? "\t" : "") << format_real(values[cols[c]]);
            }
            tsv << "\t" << (result.dominator[i] ? 0 : 1) << "\n";
        }
        if (!tsv) throw IoError("write failed for '" + config.plot_path + "'");
    }

    out << "candidates " << candidates.size() << "\n";
    out << "maximal " << result.maximal_indices.size() << "\n";
    out << "wrote " << config.frontier_path << "\n";
    if (!config.plot_path.empty()) out << "wrote " << config.plot_path << "\n";

    // Surface the degeneracy policy when it actually fired.
    const bool has_standardized =
        std::any_of(preorder.v_family().begin(), preorder.v_family().end(), [](const auto& s) {
            return s.kind() == ObjectiveSpec::Kind::SkewSquared ||
                   s.kind() == ObjectiveSpec::Kind::KurtSquared;
        });
    if (has_standardized) {
        const bool any_degenerate = std::any_of(
            candidates.begin(), candidates.end(),
            [&](const Portfolio& c) { return central_moment(market, c, 2) < 1e-12; });
        if (any_degenerate) {
            out << "note: zero-variance candidates contribute 0 to skew2/kurt2\n";
        }
    }
}

void run_chain(const std::string& market_path,
               const std::vector<std::vector<double>>& portfolios, const RunConfig& config,
               std::ostream& out) {
    if (portfolios.empty()) throw ValidationError("chain needs at least one portfolio");
    const auto market = read_scenario_csv(market_path);
    std::vector<Portfolio> chain;
    chain.reserve(portfolios.size());
    for (const auto& w : portfolios) chain.push_back(portfolio_from_weights(w));
    const auto preorder = bind_pair_preorder(config, market, chain);
    const auto report = chain_report(preorder, chain);

    auto print_set = [&](const std::vector<std::size_t>& s) {
        out << "{";
        for (std::size_t i = 0; i < s.size(); ++i) out << (i ? "," : "") << s[i];
        out << "}";
    };
    out << "chain_size " << report.chain.size() << "\n";
    out << "records " << report.records.size() << "\n";
    for (std::size_t r = 0; r < report.records.size(); ++r) {
        const auto& rec = report.records[r];
        out << "record " << r;
        if (rec.u_index) {
            out << " u=" << preorder.objective_label(*rec.u_index)
                << " M=" << format_real(rec.max_value) << " C=";
            print_set(rec.attain_max);
        }
        if (rec.v_index) {
            out << " v=" << preorder.objective_label(preorder.u_family().size() + *rec.v_index)
                << " m=" << format_real(rec.min_value) << " c=";
            print_set(rec.attain_min);
        }
        out << " lemma_i " << (rec.lemma_i ? "true" : "false") << "\n";
    }
    out << "nesting_order";
    for (std::size_t r : report.nesting_order) out << " " << r;
    out << "\n";
    out << "lemma_i " << (report.lemma_i_holds ? "true" : "false") << "\n";
    out << "lemma_ii " << (report.lemma_ii_holds ? "true" : "false") << "\n";
    out << "corollary " << (report.corollary_holds ? "true" : "false") << "\n";

    const auto bound = chain_upper_bound(preorder, chain);
    out << "upper_bound ";
    for (std::size_t i = 0; i < bound.size(); ++i) out << (i ? "," : "") << format_real(bound[i]);
    out << "\n";
}

void run_sdom(const std::string& market_path, const std::vector<std::vector<double>>& pair,
              int ell, int samples_per_interval, std::ostream& out) {
    if (pair.size() != 2) throw ValidationError("sdom needs exactly two portfolios");
    const auto market = read_scenario_csv(market_path);
    const auto dist_x = return_distribution(market, portfolio_from_weights(pair[0]));
    const auto dist_y = return_distribution(market, portfolio_from_weights(pair[1]));
    const auto verdict = sd_compare(dist_x, dist_y, ell, samples_per_interval);
    out << "order " << ell << "\n";
    out << "verdict " << to_string(verdict) << "\n";
}

void run_kernel(const std::string& matrix_path, double epsilon, std::ostream& out) {
    const auto instance = read_kernel_csv(matrix_path);
    const auto result = kernel_maximal_certify(instance, epsilon);
    out << "size " << instance.size() << "\n";
    out << "maximal";
    for (std::size_t m : result.maximal_indices) out << " " << m;
    out << "\n";
    for (std::size_t i = 0; i < result.maximal_indices.size(); ++i) {
        for (const auto& cert : result.certificates[i]) {
            out << "certificate m=" << result.maximal_indices[i] << " p=" << cert.p
                << " max=" << format_real(cert.attained_max)
                << " min=" << format_real(cert.attained_min) << "\n";
        }
    }
}

void run_gen(std::size_t assets, std::size_t scenarios, std::uint64_t seed, double lo, double hi,
             const std::string& out_path, std::ostream& out) {
    if (assets == 0 || scenarios == 0) throw ValidationError("gen needs n >= 1 and m >= 1");
    if (!(lo < hi)) throw ValidationError("gen needs lo < hi");
    std::mt19937_64 rng(seed);
    auto uniform = [&]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

    std::vector<double> probs(scenarios, 1.0 / static_cast<double>(scenarios));
    std::vector<std::vector<double>> returns(assets, std::vector<double>(scenarios));
    for (auto& row : returns) {
        for (double& r : row) r = lo + uniform() * (hi - lo);
    }
    const auto market = build_market(std::move(probs), std::move(returns));
    write_scenario_csv(out_path, market);
    out << "wrote " << out_path << " (n=" << assets << " m=" << scenarios << " seed=" << seed
        << ")\n";
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const IoError*>(&e)) return 4;
    if (dynamic_cast<const ComputationError*>(&e)) return 3;
    if (dynamic_cast<const ValidationError*>(&e)) return 2;
    return 2;
}

} // namespace prefront::cli
