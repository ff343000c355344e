#include "prefront/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace prefront {

std::string format_real(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, sep)) cells.push_back(cell);
    if (!line.empty() && line.back() == sep) cells.emplace_back();
    return cells;
}

double parse_real(const std::string& cell, const std::string& where) {
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
    while (end > begin && (end[-1] == ' ' || end[-1] == '\t' || end[-1] == '\r')) --end;
    double value = 0.0;
    auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc{} || res.ptr != end || begin == end) {
        throw ValidationError(where + ": cannot parse '" + cell + "' as a real number");
    }
    return value;
}

} // namespace

std::vector<double> parse_real_list(const std::string& text) {
    std::vector<double> values;
    for (const auto& cell : split(text, ',')) values.push_back(parse_real(cell, "list"));
    if (values.empty()) throw ValidationError("empty real list");
    return values;
}

ScenarioMarket read_scenario_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw ValidationError(path + ": empty file");
    auto header = split(line, ',');
    if (header.empty() || header[0].substr(0, 4) != "prob") {
        throw ValidationError(path + " line 1: header must start with 'prob'");
    }
    if (header.size() < 2) {
        throw ValidationError(path + " line 1: header needs at least one asset column");
    }
    const std::size_t assets = header.size() - 1;

    std::vector<double> probabilities;
    std::vector<std::vector<double>> returns(assets);
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto cells = split(line, ',');
        const std::string where = path + " line " + std::to_string(line_no);
        if (cells.size() != assets + 1) {
            throw ValidationError(where + ": expected " + std::to_string(assets + 1) +
                                  " columns, found " + std::to_string(cells.size()));
        }
        probabilities.push_back(parse_real(cells[0], where));
        for (std::size_t i = 0; i < assets; ++i) {
            returns[i].push_back(parse_real(cells[i + 1], where));
        }
    }
    if (probabilities.empty()) throw ValidationError(path + ": no scenario rows");
    return build_market(std::move(probabilities), std::move(returns));
}

void write_scenario_csv(const std::string& path, const ScenarioMarket& market) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << "prob";
    for (std::size_t i = 0; i < market.asset_count; ++i) out << ",asset_" << (i + 1);
    out << "\n";
    for (std::size_t j = 0; j < market.scenario_count; ++j) {
        out << format_real(market.probabilities[j]);
        for (std::size_t i = 0; i < market.asset_count; ++i) {
            out << "," << format_real(market.returns[i][j]);
        }
        out << "\n";
    }
    if (!out) throw IoError("write failed for '" + path + "'");
}

KernelInstance read_kernel_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto cells = split(line, ',');
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& cell : cells) {
            row.push_back(parse_real(cell, path + " line " + std::to_string(line_no)));
        }
        rows.push_back(std::move(row));
    }
    return KernelInstance(std::move(rows));
}

} // namespace prefront
