#include "esper/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "esper/catalog.hpp"
#include "esper/errors.hpp"
#include "esper/matrix_mod_p.hpp"

namespace esper::pipeline {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

std::vector<std::uint32_t> parse_ells(const std::string& value) {
    std::set<std::uint32_t> ells;
    for (const std::string& token : split(value, ',')) {
        if (token.empty()) continue;
        const auto dots = token.find("..");
        if (dots != std::string::npos) {
            const auto lo = std::stoul(token.substr(0, dots));
            const auto hi = std::stoul(token.substr(dots + 2));
            if (lo > hi) throw config_error("empty ell range: " + token);
            for (std::uint32_t p = lo; p <= hi; ++p) {
                if (algebra::is_prime(p)) ells.insert(p);
            }
        } else {
            const auto p = std::stoul(token);
            if (!algebra::is_prime(p)) throw config_error("ell = " + token + " is not prime");
            ells.insert(static_cast<std::uint32_t>(p));
        }
    }
    return {ells.begin(), ells.end()};
}

std::vector<double> parse_grid(const std::string& value) {
    std::vector<double> grid;
    const auto colons = split(value, ':');
    if (colons.size() == 3) {
        const double start = std::stod(colons[0]);
        const double step = std::stod(colons[1]);
        const double end = std::stod(colons[2]);
        if (step <= 0) throw config_error("A_grid step must be positive");
        for (double a = start; a <= end + 1e-12; a += step) grid.push_back(a);
        return grid;
    }
    for (const std::string& token : split(value, ',')) {
        if (!token.empty()) grid.push_back(std::stod(token));
    }
    return grid;
}

bool parse_bool(const std::string& value, const std::string& key) {
    if (value == "true" || value == "on" || value == "1") return true;
    if (value == "false" || value == "off" || value == "0") return false;
    throw config_error("expected a boolean for " + key + ", got '" + value + "'");
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    cfg.a_grid = {0, 0.5, 1, 1.5, 2, 2.5, 3, 3.5, 4, 4.5, 5, 5.5, 6};

    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw config_error("malformed section at line " + std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw config_error("expected key = value at line " + std::to_string(lineno));
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const std::string qualified = section + "." + key;

        try {
            if (qualified == "family.id") cfg.family_id = value;
            else if (qualified == "family.catalog") cfg.catalog = value;
            else if (qualified == "family.ell") cfg.ells = parse_ells(value);
            else if (qualified == "family.genus_param") cfg.genus_param = std::stoul(value);
            else if (qualified == "family.action") cfg.action = value;
            else if (qualified == "family.basepoint") cfg.basepoint = value;
            else if (qualified == "solver.tol") cfg.tol = std::stod(value);
            else if (qualified == "solver.max_iter") cfg.max_iter = std::stoi(value);
            else if (qualified == "solver.dense_threshold") cfg.dense_threshold = std::stoul(value);
            else if (qualified == "solver.cap") cfg.cap = std::stoull(value);
            else if (qualified == "metrics.diameter") cfg.diameter = parse_bool(value, key);
            else if (qualified == "metrics.predicates") cfg.predicates = parse_bool(value, key);
            else if (qualified == "metrics.predicate_max_n") cfg.predicate_max_n = std::stoull(value);
            else if (qualified == "metrics.genus") cfg.genus_mode = value;
            else if (qualified == "metrics.interlacing") cfg.interlacing_mode = value;
            else if (qualified == "chain.c_B") cfg.burger_constant = std::stod(value);
            else if (qualified == "chain.A_grid") cfg.a_grid = parse_grid(value);
            else if (qualified == "output.record") cfg.record_path = value;
            else if (qualified == "output.cache_dir") cfg.cache_dir = value;
            else throw config_error("unknown key '" + qualified + "'");
        } catch (const config_error&) {
            throw;
        } catch (const std::exception& e) {
            throw config_error("bad value for " + qualified + " at line " + std::to_string(lineno) +
                               ": " + e.what());
        }
    }
    if (cfg.family_id.empty()) cfg.family_id = cfg.catalog + "-" + cfg.action;
    return cfg;
}

ExperimentConfig parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot read config file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

void ExperimentConfig::validate() const {
    const auto kinds = algebra::catalog_kinds();
    if (std::find(kinds.begin(), kinds.end(), catalog) == kinds.end()) {
        throw config_error("unknown catalog '" + catalog + "'");
    }
    if (catalog == "custom") {
        throw config_error("the custom catalog is library-only; configs need a named catalog");
    }
    if (ells.empty()) throw config_error("ell list is empty");
    for (std::uint32_t l : ells) {
        if (!algebra::is_prime(l)) throw config_error("ell = " + std::to_string(l) + " is not prime");
    }
    static const std::set<std::string> actions = {"cayley", "projective-line", "nonzero-vectors",
                                                  "diagonal-quotient"};
    if (!actions.count(action)) throw config_error("unknown action '" + action + "'");
    if (tol <= 0) throw config_error("tol must be positive");
    if (max_iter < 1) throw config_error("max_iter must be positive");
    if (dense_threshold < 2) throw config_error("dense_threshold must be at least 2");
    if (cap < 1) throw config_error("cap must be at least 1");
    if (genus_param < 1) throw config_error("genus_param must be at least 1");
    if (burger_constant <= 0) throw config_error("c_B must be positive");
    if (a_grid.empty()) throw config_error("A_grid is empty");
    for (std::size_t i = 0; i < a_grid.size(); ++i) {
        if (a_grid[i] < 0) throw config_error("A_grid values must be nonnegative");
        if (i > 0 && a_grid[i] <= a_grid[i - 1]) throw config_error("A_grid must increase strictly");
    }
    static const std::set<std::string> modes = {"auto", "true", "false"};
    if (!modes.count(genus_mode)) throw config_error("genus must be auto, true or false");
    if (!modes.count(interlacing_mode)) {
        throw config_error("interlacing must be auto, true or false");
    }
}

std::string ExperimentConfig::settings_signature() const {
    std::ostringstream os;
    os.precision(17);
    os << "tol=" << tol << ";max_iter=" << max_iter << ";dense=" << dense_threshold
       << ";cap=" << cap << ";diameter=" << diameter << ";predicates=" << predicates
       << ";predicate_max_n=" << predicate_max_n << ";genus=" << genus_mode
       << ";interlacing=" << interlacing_mode << ";basepoint=" << basepoint;
    return os.str();
}

}  // namespace esper::pipeline
