#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <memory>

#include "esper/catalog.hpp"
#include "esper/errors.hpp"
#include "esper/multigraph.hpp"
#include "test_helpers.hpp"

using namespace esper::algebra;
using namespace esper::graphs;

namespace {

GeneratorSet catalog(const std::string& kind, std::uint32_t ell) {
    CatalogParams p;
    p.ell = ell;
    return catalog_generators(kind, p);
}

// adjacency as an explicit symmetric count map, for structural checks
std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> edge_counts(
    const RegularMultigraph& g) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> counts;
    for (std::uint32_t v = 0; v < g.n; ++v) {
        for (std::uint32_t j = 0; j < g.degree; ++j) ++counts[{v, g.neighbor(v, j)}];
    }
    return counts;
}

void check_adjacency_symmetric(const RegularMultigraph& g) {
    const auto counts = edge_counts(g);
    for (const auto& [edge, mult] : counts) {
        const auto mirror = counts.find({edge.second, edge.first});
        REQUIRE(mirror != counts.end());
        CHECK(mirror->second == mult);
    }
}

void check_laplacian_row_sums_zero(const RegularMultigraph& g) {
    const std::vector<double> ones(g.n, 1.0);
    for (double v : laplacian_apply(g, ones)) CHECK(v == 0.0);
}

}  // namespace

TEST_CASE("cayley graph of a cyclic matrix group is a cycle") {
    const std::uint32_t ell = 11;
    const auto gens = symmetrize({MatrixModP(2, ell, {1, 1, 0, 1})});
    const auto g = cayley_graph(gens);
    REQUIRE(g.n == ell);
    REQUIRE(g.degree == 2);
    CHECK(g.connected);
    CHECK(g.vertex_transitive);
    for (std::uint32_t v = 0; v < g.n; ++v) {
        const auto adj = g.merged_adjacency(v);
        CHECK(adj.size() == 2);  // two distinct neighbors, no loops
        for (const auto& [w, mult] : adj) {
            CHECK(mult == 1);
            CHECK(w != v);
        }
    }
    check_adjacency_symmetric(g);
    check_laplacian_row_sums_zero(g);
}

TEST_CASE("cayley graph of SL2(F_3) with elementary generators") {
    const auto g = cayley_graph(catalog("sl2-elementary", 3));
    CHECK(g.n == 24);
    CHECK(g.degree == 4);
    CHECK(g.connected);
    check_adjacency_symmetric(g);
    check_laplacian_row_sums_zero(g);
}

TEST_CASE("cayley graph of the trivial group is a single loop") {
    const auto g = cayley_graph(symmetrize({MatrixModP::identity(2, 5)}));
    REQUIRE(g.n == 1);
    REQUIRE(g.degree == 1);
    CHECK(g.neighbor(0, 0) == 0);
    check_laplacian_row_sums_zero(g);
}

TEST_CASE("cayley graph agrees with the schreier graph of left translation") {
    const auto gens = catalog("sl2-elementary", 5);
    const auto cayley = cayley_graph(gens);
    const auto schreier = schreier_graph(gens, GroupAction::left_translation());
    REQUIRE(cayley.n == schreier.n);
    REQUIRE(cayley.degree == schreier.degree);
    CHECK(cayley.rotation == schreier.rotation);
    CHECK(cayley.labels == schreier.labels);
}

TEST_CASE("cayley vertex order matches the group table order") {
    const auto gens = catalog("gamma2-legendre", 5);
    const auto g = cayley_graph(gens);
    const auto table = GroupTable::enumerate(gens);
    REQUIRE(g.n == table.size());
    for (std::uint32_t v = 0; v < g.n; ++v) {
        CHECK(g.labels[v] == Point(table.element(v).entries().begin(),
                                   table.element(v).entries().end()));
    }
}

TEST_CASE("schreier graph on the projective line") {
    for (std::uint32_t ell : {5u, 7u, 11u}) {
        const auto g = schreier_graph(catalog("sl2-elementary", ell),
                                      GroupAction::projective_line());
        CHECK(g.n == ell + 1);
        CHECK(g.connected);
        // point-stabilizer cosets: at least half of ell^g - 1 vertices (g = 1)
        CHECK(2 * g.n >= ell - 1);
        check_adjacency_symmetric(g);
        check_laplacian_row_sums_zero(g);
    }
}

TEST_CASE("schreier graph on nonzero vectors") {
    for (std::uint32_t ell : {5u, 7u}) {
        const auto g = schreier_graph(catalog("sl2-elementary", ell),
                                      GroupAction::nonzero_vectors());
        CHECK(g.n == ell * ell - 1);
        check_adjacency_symmetric(g);
        check_laplacian_row_sums_zero(g);
    }
}

TEST_CASE("schreier graph on the diagonal quotient has group size") {
    const auto gens = catalog("product-sl2-diagonal-test", 5);
    const auto g = schreier_graph(gens, GroupAction::diagonal_quotient());
    CHECK(g.n == 120);
    CHECK(g.degree == 8);
    check_adjacency_symmetric(g);
    check_laplacian_row_sums_zero(g);
}

TEST_CASE("orbits of groups generated by order-ell elements are not small") {
    // a nontrivial orbit of such a group has at least ell points
    for (std::uint32_t ell : {5u, 7u, 11u}) {
        for (const char* kind : {"sl2-elementary", "gamma2-legendre"}) {
            const auto gens = catalog(kind, ell);
            for (auto action : {GroupAction::projective_line(), GroupAction::nonzero_vectors()}) {
                const auto g = schreier_graph(gens, action);
                CHECK(g.n >= ell);
            }
        }
    }
}

TEST_CASE("schreier graph on cosets of a subgroup") {
    const auto gens = catalog("sl2-elementary", 5);
    // subgroup generated by the upper transvection: order 5, so 24 cosets
    auto sub = std::make_shared<GroupTable>(
        GroupTable::enumerate(symmetrize({MatrixModP(2, 5, {1, 1, 0, 1})})));
    REQUIRE(sub->size() == 5);
    const auto g = schreier_graph(gens, GroupAction::coset_by_subgroup(sub));
    CHECK(g.n == 24);
    check_adjacency_symmetric(g);
    check_laplacian_row_sums_zero(g);
}

TEST_CASE("schreier basepoint validation") {
    const auto gens = catalog("sl2-elementary", 5);
    CHECK_THROWS_AS(schreier_graph(gens, GroupAction::nonzero_vectors(), Point{0, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(schreier_graph(gens, GroupAction::projective_line(), Point{0, 0, 0}),
                    std::invalid_argument);
    // unnormalized projective basepoint is canonicalized, not rejected
    const auto g = schreier_graph(gens, GroupAction::projective_line(), Point{3, 1});
    CHECK(g.n == 6);
}

TEST_CASE("schreier orbit cap") {
    const auto gens = catalog("sl2-elementary", 11);
    CHECK_THROWS_AS(schreier_graph(gens, GroupAction::nonzero_vectors(), 50), esper::cap_exceeded);
}

TEST_CASE("diagonal quotient rejects non-block generators") {
    const auto gens = catalog("sl2-elementary", 5);  // 2x2, not block 4x4
    CHECK_THROWS_AS(schreier_graph(gens, GroupAction::diagonal_quotient()),
                    std::invalid_argument);
}

TEST_CASE("laplacian_apply closed forms") {
    const auto c4 = testutil::make_cycle(4);
    const std::vector<double> alternating{1, -1, 1, -1};
    const auto image = laplacian_apply(c4, alternating);
    for (std::uint32_t i = 0; i < 4; ++i) CHECK(image[i] == doctest::Approx(4.0 * alternating[i]));

    const auto loop = cayley_graph(symmetrize({MatrixModP::identity(2, 5)}));
    CHECK(laplacian_apply(loop, {3.25})[0] == 0.0);

    CHECK_THROWS_AS(laplacian_apply(c4, std::vector<double>{1, 2}), std::invalid_argument);
}

TEST_CASE("export is stable and hash-keyed") {
    const auto gens = catalog("sl2-elementary", 3);
    const auto g1 = cayley_graph(gens);
    const auto g2 = cayley_graph(gens);
    const auto e1 = export_edge_list(g1);
    CHECK(e1 == export_edge_list(g2));
    CHECK(content_hash(e1) == content_hash(export_edge_list(g2)));
    CHECK(e1.find("esper-graph v1") == 0);
    CHECK(e1.find("n=24 r=4 action=cayley catalog=sl2-elementary ell=3") != std::string::npos);
    // hash is order-sensitive
    CHECK(content_hash("a b") != content_hash("b a"));
}
