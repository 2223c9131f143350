#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "esper/action.hpp"
#include "esper/generator_set.hpp"

namespace esper::graphs {

/**
 * r-regular multigraph built from a generator action. Adjacency is stored as
 * an n x r rotation table: entry (v, j) is the image of vertex v under
 * generator j. Each generator contributes exactly one incidence per vertex,
 * so the degree is always |S|; a generator fixing v contributes a loop, which
 * adds 1 to the diagonal adjacency entry. The symmetry of the generator set
 * makes the implied adjacency matrix symmetric.
 *
 * Immutable after construction; concurrent reads are safe.
 */
struct RegularMultigraph {
    std::uint32_t n = 0;
    std::uint32_t degree = 0;
    std::vector<std::uint32_t> rotation;  // n * degree vertex ids
    std::vector<Point> labels;            // canonical orbit points in BFS order
    bool connected = false;
    bool vertex_transitive = false;
    std::string action_desc;
    std::string catalog_id;
    std::uint32_t ell = 0;
    std::string gens_signature;

    std::uint32_t neighbor(std::uint32_t v, std::uint32_t j) const {
        return rotation[static_cast<std::size_t>(v) * degree + j];
    }

    /// Neighbors of v merged with multiplicities, sorted by vertex id.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> merged_adjacency(std::uint32_t v) const;
};

/// Cayley graph: vertices are the group elements in BFS order, one edge
/// x -> sx per generator s.
RegularMultigraph cayley_graph(const algebra::GeneratorSet& gens,
                               std::size_t cap = algebra::GroupTable::kDefaultCap);

/// Schreier graph on the orbit of basepoint, vertices in BFS discovery order.
RegularMultigraph schreier_graph(const algebra::GeneratorSet& gens, const GroupAction& action,
                                 const Point& basepoint,
                                 std::size_t cap = algebra::GroupTable::kDefaultCap);

/// Schreier graph from the action's default basepoint.
RegularMultigraph schreier_graph(const algebra::GeneratorSet& gens, const GroupAction& action,
                                 std::size_t cap = algebra::GroupTable::kDefaultCap);

/// y = (r I - A) x. Row sums of the Laplacian are exactly zero.
void laplacian_apply(const RegularMultigraph& g, const double* in, double* out);
std::vector<double> laplacian_apply(const RegularMultigraph& g, const std::vector<double>& v);

/// Text export: header (n, r, action, catalog, ell) plus one "u v mult" line
/// per undirected edge with u <= v. Stable across runs; used for cache keys.
std::string export_edge_list(const RegularMultigraph& g);

/// FNV-1a 64-bit content hash.
std::uint64_t content_hash(std::string_view text);

}  // namespace esper::graphs
