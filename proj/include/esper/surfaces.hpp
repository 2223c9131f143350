#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace esper::surfaces {

/**
 * Permutation of {0..n-1}. Composition is right-to-left: (a * b)(x) = a(b(x)),
 * so in a product written left to right the rightmost factor acts first. The
 * surface-group relation below depends on this convention.
 */
class Permutation {
public:
    explicit Permutation(std::vector<std::uint32_t> images);
    static Permutation identity(std::uint32_t n);

    std::uint32_t size() const noexcept { return static_cast<std::uint32_t>(map_.size()); }
    std::uint32_t operator()(std::uint32_t x) const { return map_[x]; }
    Permutation operator*(const Permutation& rhs) const;  // apply rhs first
    Permutation inverse() const;
    bool is_identity() const noexcept;
    bool operator==(const Permutation& rhs) const noexcept { return map_ == rhs.map_; }

    std::uint32_t cycle_count() const;

private:
    std::vector<std::uint32_t> map_;
};

/**
 * Degree-n cover of a base surface of genus g0 with p punctures, described by
 * its permutation monodromy: one permutation per puncture, and a pair per
 * handle when g0 > 0. The surface-group relation
 *   [a_1,b_1]...[a_g0,b_g0] * s_1 * ... * s_p = identity
 * must hold (rightmost factor first), and the permutation group must act
 * transitively (connected cover).
 */
struct CoverDescriptor {
    std::uint32_t base_genus = 0;
    std::uint32_t punctures = 0;
    std::uint32_t degree = 0;
    std::vector<Permutation> puncture_monodromy;
    std::vector<std::pair<Permutation, Permutation>> handle_monodromy;
};

struct GenusResult {
    std::int64_t genus = 0;
    std::int64_t chi_open = 0;     // Euler characteristic of the punctured cover
    std::int64_t chi_compact = 0;  // after filling in the points over punctures
};

/// chi_open = degree * (2 - 2 g0 - p); chi_compact = chi_open plus one point
/// per monodromy cycle over each puncture; genus = (2 - chi_compact) / 2.
GenusResult genus_from_monodromy(const CoverDescriptor& cd);

/// Gauss-Bonnet: area = -2 pi chi for a finite-type hyperbolic surface.
/// Requires chi < 0.
double hyperbolic_area(std::int64_t chi);

struct LiYauResult {
    double bound = 0;
    bool lambda_above_quarter = false;  // advisory; the bound is still evaluated
};

/// gonality >= lambda1 * area / (8 pi).
LiYauResult liyau_bound(double lambda1_surface, double area);

/// n and the fitted (c', A) for the size-based gonality bound.
struct FitInputs {
    std::size_t n = 0;
    double constant = 0;
    double exponent = 0;
};

/**
 * Audited bound chain from a graph spectral gap to a gonality lower bound.
 * The comparison constant relating the graph gap to the surface gap is an
 * assumption supplied by the caller, never computed; certificates say so.
 * Every derived value replays along an independent association order.
 */
struct GonalityCertificate {
    // inputs
    double lambda1_graph = 0;
    double comparison_constant = 0;  // c_B
    std::int64_t genus = 0;
    std::optional<FitInputs> fit;

    // derived
    double lambda1_surface = 0;      // comparison_constant * lambda1_graph
    double area = 0;                 // -2 pi chi(compact) = 4 pi (genus - 1), genus >= 2
    double gonality_lower = 0;       // 2 * lambda1_surface * (genus - 1)
    double quantitative_lower = 0;   // c' n / (log 2n)^(2A), when fit inputs are present
    bool vacuous = false;            // genus <= 1
    std::string assumption_note;
    std::vector<std::string> audit;

    /// Recompute the chain along a different association order; returns the
    /// largest relative deviation from the stored values.
    double replay() const;
};

GonalityCertificate gonality_chain(double lambda1_graph, double comparison_constant,
                                   std::int64_t genus,
                                   std::optional<FitInputs> fit = std::nullopt);

/// c' * n / (log 2n)^(2A), natural log.
double quantitative_gonality(std::size_t n, double c_prime, double a_exponent);

}  // namespace esper::surfaces
