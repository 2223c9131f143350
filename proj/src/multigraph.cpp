#include "esper/multigraph.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "esper/errors.hpp"

namespace esper::graphs {

using algebra::GeneratorSet;

std::vector<std::pair<std::uint32_t, std::uint32_t>> RegularMultigraph::merged_adjacency(
    std::uint32_t v) const {
    std::vector<std::uint32_t> row(rotation.begin() + static_cast<std::size_t>(v) * degree,
                                   rotation.begin() + static_cast<std::size_t>(v + 1) * degree);
    std::sort(row.begin(), row.end());
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    for (std::size_t i = 0; i < row.size();) {
        std::size_t j = i;
        while (j < row.size() && row[j] == row[i]) ++j;
        out.emplace_back(row[i], static_cast<std::uint32_t>(j - i));
        i = j;
    }
    return out;
}

RegularMultigraph schreier_graph(const GeneratorSet& gens, const GroupAction& action,
                                 const Point& basepoint, std::size_t cap) {
    action.validate_generators(gens);
    const Point start = action.canonicalize(gens, basepoint);

    RegularMultigraph g;
    g.degree = static_cast<std::uint32_t>(gens.size());
    g.action_desc = action.describe();
    g.catalog_id = gens.label;
    g.ell = gens.modulus();
    g.gens_signature = gens.signature();

    std::unordered_map<Point, std::uint32_t, PointHash> index;
    g.labels.push_back(start);
    index.emplace(start, 0);

    for (std::size_t head = 0; head < g.labels.size(); ++head) {
        for (const auto& s : gens.generators) {
            Point y = action.apply(s, g.labels[head]);
            auto it = index.find(y);
            std::uint32_t target;
            if (it != index.end()) {
                target = it->second;
            } else {
                if (g.labels.size() + 1 > cap) throw cap_exceeded(g.labels.size() + 1, cap);
                target = static_cast<std::uint32_t>(g.labels.size());
                index.emplace(y, target);
                g.labels.push_back(std::move(y));
            }
            g.rotation.push_back(target);
        }
    }

    g.n = static_cast<std::uint32_t>(g.labels.size());
    g.connected = true;  // single orbit by construction
    g.vertex_transitive = action.kind() == ActionKind::left_translation;
    return g;
}

RegularMultigraph schreier_graph(const GeneratorSet& gens, const GroupAction& action,
                                 std::size_t cap) {
    return schreier_graph(gens, action, action.default_basepoint(gens), cap);
}

RegularMultigraph cayley_graph(const GeneratorSet& gens, std::size_t cap) {
    RegularMultigraph g = schreier_graph(gens, GroupAction::left_translation(), cap);
    g.action_desc = "cayley";
    return g;
}

void laplacian_apply(const RegularMultigraph& g, const double* in, double* out) {
    const double r = static_cast<double>(g.degree);
    for (std::uint32_t v = 0; v < g.n; ++v) {
        double acc = r * in[v];
        const std::size_t base = static_cast<std::size_t>(v) * g.degree;
        for (std::uint32_t j = 0; j < g.degree; ++j) acc -= in[g.rotation[base + j]];
        out[v] = acc;
    }
}

std::vector<double> laplacian_apply(const RegularMultigraph& g, const std::vector<double>& v) {
    if (v.size() != g.n) {
        throw std::invalid_argument("vector length " + std::to_string(v.size()) +
                                    " does not match vertex count " + std::to_string(g.n));
    }
    std::vector<double> out(g.n);
    laplacian_apply(g, v.data(), out.data());
    return out;
}

std::string export_edge_list(const RegularMultigraph& g) {
    std::ostringstream os;
    os << "esper-graph v1\n";
    os << "n=" << g.n << " r=" << g.degree << " action=" << g.action_desc
       << " catalog=" << g.catalog_id << " ell=" << g.ell << "\n";
    for (std::uint32_t u = 0; u < g.n; ++u) {
        for (const auto& [v, mult] : g.merged_adjacency(u)) {
            if (v >= u) os << u << " " << v << " " << mult << "\n";
        }
    }
    return os.str();
}

std::uint64_t content_hash(std::string_view text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace esper::graphs
