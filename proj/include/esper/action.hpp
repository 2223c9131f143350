#pragma once

#include <memory>
#include <string>
#include <vector>

#include "esper/generator_set.hpp"
#include "esper/group_table.hpp"

namespace esper::graphs {

/// Orbit point in canonical encoding. The shape depends on the action:
/// matrix entries (row-major) for translation-like actions, residue vectors
/// for the linear ones, normalized representatives for projective points.
using Point = std::vector<std::uint32_t>;

enum class ActionKind {
    left_translation,   // Cayley: points are group elements
    projective_line,    // lines in F_l^m, first nonzero coordinate normalized to 1
    nonzero_vectors,    // F_l^m minus the origin
    coset_by_subgroup,  // left cosets xH, canonical representative = lex-min of xH
    diagonal_quotient,  // generators diag(a, b) act on k x k matrices by X -> a X b^-1
};

/**
 * A permutation action of the generator matrices on a finite point set.
 * Points are enumerable by orbit BFS; every generator acts bijectively.
 */
class GroupAction {
public:
    static GroupAction left_translation();
    static GroupAction projective_line();
    static GroupAction nonzero_vectors();
    static GroupAction coset_by_subgroup(std::shared_ptr<const algebra::GroupTable> subgroup);
    static GroupAction diagonal_quotient();

    ActionKind kind() const noexcept { return kind_; }
    std::string describe() const;

    /// Shape and structure checks for a generator set under this action.
    void validate_generators(const algebra::GeneratorSet& gens) const;

    Point default_basepoint(const algebra::GeneratorSet& gens) const;

    /// Validate a raw point and bring it to canonical form.
    /// Throws std::invalid_argument for points outside the domain.
    Point canonicalize(const algebra::GeneratorSet& gens, const Point& raw) const;

    Point apply(const algebra::MatrixModP& g, const Point& x) const;

private:
    explicit GroupAction(ActionKind k) : kind_(k) {}

    ActionKind kind_;
    std::shared_ptr<const algebra::GroupTable> subgroup_;
};

struct PointHash {
    std::size_t operator()(const Point& p) const noexcept;
};

}  // namespace esper::graphs
