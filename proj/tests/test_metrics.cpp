#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "esper/catalog.hpp"
#include "esper/errors.hpp"
#include "esper/metrics.hpp"
#include "esper/spectral.hpp"
#include "test_helpers.hpp"

using namespace esper;
using namespace esper::algebra;
using namespace esper::graphs;
using namespace esper::metrics;

namespace {

GeneratorSet catalog(const std::string& kind, std::uint32_t ell) {
    CatalogParams p;
    p.ell = ell;
    return catalog_generators(kind, p);
}

FamilyRecord synthetic_family(const std::vector<std::size_t>& sizes,
                              double (*lambda)(std::size_t)) {
    FamilyRecord fam;
    fam.family_id = "synthetic";
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        FamilyMember m;
        m.index = double(i);
        m.n = sizes[i];
        m.lambda1 = lambda(sizes[i]);
        fam.members.push_back(m);
    }
    return fam;
}

}  // namespace

TEST_CASE("diameter of cycles is floor(n/2) up to n = 10000") {
    CHECK(diameter(testutil::make_cycle(7)).lower == 3);
    for (std::uint32_t n = 3; n <= 10000; ++n) {
        const auto d = diameter(testutil::make_cycle(n));
        REQUIRE(d.exact);
        REQUIRE(d.lower == n / 2);
    }
}

TEST_CASE("diameter of complete graphs is 1") {
    for (std::uint32_t n : {4u, 9u, 20u}) {
        const auto g = cayley_graph(testutil::complete_graph_generators(n));
        CHECK(diameter(g).lower == 1);
    }
}

TEST_CASE("transitive single-source diameter agrees with all-sources BFS") {
    auto g = cayley_graph(catalog("sl2-elementary", 5));
    const auto fast = diameter(g);
    CHECK(fast.method == "single-source-transitive");
    auto general = g;
    general.vertex_transitive = false;  // force the exhaustive route
    const auto slow = diameter(general);
    CHECK(slow.method == "all-sources");
    CHECK(fast.exact);
    CHECK(slow.exact);
    CHECK(fast.lower == slow.lower);
}

TEST_CASE("diameter brackets on large non-transitive graphs") {
    auto g = testutil::make_cycle(2000);
    g.vertex_transitive = false;
    const auto bracket = diameter(g, 1000);  // force sampling with a low guard
    CHECK(bracket.method == "sampled-bracket");
    CHECK(bracket.lower <= 1000);
    CHECK(bracket.upper >= 1000);
    CHECK(bracket.has_upper);
}

TEST_CASE("diameter rejects disconnected graphs") {
    RegularMultigraph g;
    g.n = 2;
    g.degree = 1;
    g.rotation = {0, 1};  // two loops, no edge between them
    g.labels = {{0}, {1}};
    CHECK_THROWS_AS(diameter(g), disconnected_graph);
}

TEST_CASE("dsc closed forms") {
    // C_6: lambda1 = 1, r = 2, diam = 3
    DiameterResult d6{3, 3, true, true, "test"};
    const auto c6 = dsc_check(1.0, 2, d6);
    CHECK(c6.bound == doctest::Approx(1.0 / 18.0));
    CHECK(c6.pass);

    // K_5 as a Cayley graph: lambda1 = 5, r = 4, diam = 1
    DiameterResult d1{1, 1, true, true, "test"};
    const auto k5 = dsc_check(5.0, 4, d1);
    CHECK(k5.bound == doctest::Approx(0.25));
    CHECK(k5.pass);
}

TEST_CASE("dsc needs an upper bound") {
    DiameterResult lower_only{10, 0, false, false, "test"};
    CHECK_THROWS_AS(dsc_check(1.0, 2, lower_only), std::invalid_argument);
    // inexact bracket with a certified upper bound is fine
    DiameterResult bracket{10, 24, false, true, "test"};
    CHECK(dsc_check(1.0, 2, bracket).pass);
}

TEST_CASE("dsc holds on assorted built graphs") {
    std::vector<RegularMultigraph> suite;
    suite.push_back(cayley_graph(catalog("sl2-elementary", 7)));
    suite.push_back(cayley_graph(catalog("gamma2-legendre", 11)));
    suite.push_back(schreier_graph(catalog("sl2-elementary", 13), GroupAction::projective_line()));
    for (const auto& g : suite) {
        const auto report = spectral::lambda1_dense(g);
        const auto d = diameter(g);
        const auto dsc = dsc_check(report.lambda1, g.degree, d);
        CAPTURE(g.action_desc);
        CHECK(dsc.pass);
    }
}

TEST_CASE("interlacing of quotient spectra") {
    const auto gens = catalog("sl2-elementary", 5);
    const auto parent = cayley_graph(gens);
    const auto parent_lambda = spectral::lambda1_dense(parent).lambda1;

    const auto quotient = schreier_graph(gens, GroupAction::projective_line());
    const auto quotient_lambda = spectral::lambda1_dense(quotient).lambda1;
    CHECK(interlacing_check(parent, parent_lambda, quotient, quotient_lambda));

    // identity quotient: equality passes
    CHECK(interlacing_check(parent, parent_lambda, parent, parent_lambda));

    const auto gens7 = catalog("sl2-elementary", 7);
    const auto parent7 = cayley_graph(gens7);
    const auto vectors7 = schreier_graph(gens7, GroupAction::nonzero_vectors());
    CHECK(parent7.n == 336);
    CHECK(vectors7.n == 48);
    CHECK(interlacing_check(parent7, spectral::lambda1_dense(parent7).lambda1, vectors7,
                            spectral::lambda1_dense(vectors7).lambda1));
}

TEST_CASE("interlacing rejects mismatched generator sets") {
    const auto parent = cayley_graph(catalog("sl2-elementary", 5));
    const auto quotient = schreier_graph(catalog("gamma2-legendre", 5),
                                         GroupAction::projective_line());
    CHECK_THROWS_AS(interlacing_check(parent, 0.5, quotient, 0.5), std::invalid_argument);
}

TEST_CASE("esperantist fit: constant family is an expander fit") {
    const auto fam = synthetic_family({10, 100, 1000, 10000}, [](std::size_t) { return 0.3; });
    const auto fit = esperantist_fit(fam);
    CHECK(fit.exponent == 0.0);
    CHECK(fit.constant == doctest::Approx(0.3));
    CHECK(fit.trend_ok);
    CHECK(fit.expander_row.nondecreasing);
}

TEST_CASE("esperantist fit: synthetic 1/log family picks exponent 1") {
    const auto fam = synthetic_family({8, 64, 512, 4096, 32768},
                                      [](std::size_t n) { return 1.0 / std::log(2.0 * n); });
    const auto fit = esperantist_fit(fam);
    CHECK(fit.exponent == 1.0);
    CHECK(std::abs(fit.constant - 1.0) < 1e-12);
    CHECK(fit.trend_ok);
    for (double w : fit.witnesses) CHECK(w == doctest::Approx(1.0));
    CHECK_FALSE(fit.expander_row.nondecreasing);
}

TEST_CASE("esperantist fit: vanishing gap with expander-only grid reports a dying constant") {
    const auto fam = synthetic_family({8, 64, 512, 4096},
                                      [](std::size_t n) { return 1.0 / double(n); });
    const auto fit = esperantist_fit(fam, {0.0});
    CHECK_FALSE(fit.trend_ok);
    CHECK(fit.constant == doctest::Approx(1.0 / 4096.0));
}

TEST_CASE("esperantist fit rejections") {
    const auto small = synthetic_family({8, 64}, [](std::size_t) { return 0.5; });
    CHECK_THROWS_AS(esperantist_fit(small), std::invalid_argument);

    auto bad = synthetic_family({8, 64, 512}, [](std::size_t) { return 0.5; });
    bad.members[1].lambda1 = 0.0;
    CHECK_THROWS_AS(esperantist_fit(bad), std::invalid_argument);

    auto shrinking = synthetic_family({8, 64, 512}, [](std::size_t) { return 0.5; });
    shrinking.members[2].n = 8;
    CHECK_THROWS_AS(esperantist_fit(shrinking), std::invalid_argument);
}

TEST_CASE("kelner ratios of the planar cycle family stay bounded") {
    FamilyRecord fam;
    fam.family_id = "cycles";
    for (std::uint32_t n : {8u, 16u, 32u, 64u, 128u}) {
        FamilyMember m;
        m.index = n;
        m.n = n;
        m.lambda1 = 2.0 - 2.0 * std::cos(2.0 * std::numbers::pi / n);
        m.genus = 0;
        fam.members.push_back(m);
    }
    const auto report = kelner_ratio(fam, 10.0);
    for (double r : report.ratios) CHECK(r <= 4.0 * std::numbers::pi * std::numbers::pi);
    CHECK(report.trend_ok);
}

TEST_CASE("kelner single member reports without a trend check") {
    FamilyRecord fam;
    FamilyMember m;
    m.index = 1;
    m.n = 100;
    m.lambda1 = 0.5;
    m.genus = 4;
    fam.members.push_back(m);
    const auto report = kelner_ratio(fam);
    CHECK(report.ratios.size() == 1);
    CHECK(report.ratios[0] == doctest::Approx(0.5 * 100 / 4.0));
    CHECK(report.trend_ok);
    CHECK(report.bounded_ok);
}

TEST_CASE("kelner requires genus everywhere") {
    auto fam = synthetic_family({8, 64, 512}, [](std::size_t) { return 0.5; });
    fam.members[0].genus = 1;
    CHECK_THROWS_AS(kelner_ratio(fam), std::invalid_argument);
}
