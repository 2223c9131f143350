#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "esper/generator_set.hpp"
#include "esper/group_table.hpp"

namespace esper::algebra {

struct CatalogParams {
    std::uint32_t ell = 0;
    std::uint32_t genus = 1;         // g for sp2g-level2-transvections
    std::vector<MatrixModP> custom;  // kind == "custom"
    // Optional override for product-sl2-diagonal-test; each pair (a, b) is
    // embedded as the block-diagonal 2g x 2g matrix diag(a, b).
    std::vector<std::pair<MatrixModP, MatrixModP>> pairs;
    bool verify_closure = true;
    std::size_t cap = GroupTable::kDefaultCap;
};

/**
 * Named generator catalogs. All results are symmetrized with deterministic
 * ordering (primitive generators first, then missing inverses).
 *
 *   sl2-elementary             the two elementary transvections of SL2(F_l)
 *   gamma2-legendre            [[1,2],[0,1]] and [[1,0],[2,1]] mod odd l;
 *                              the closure is checked to be all of SL2(F_l)
 *                              when verify_closure is set
 *   sp2g-level2-transvections  squares of the 2g transvections along the
 *                              standard chain of symplectic vectors, reduced
 *                              mod odd l; coincides with gamma2-legendre for
 *                              g = 1 after symmetrization
 *   product-sl2-diagonal-test  block-diagonal pairs generating SL2 x SL2
 *   custom                     caller-supplied matrices
 */
GeneratorSet catalog_generators(const std::string& kind, const CatalogParams& params);

/// Ordered primitive (pre-symmetrization) generators for kinds that define a
/// puncture monodromy on a base sphere with one puncture per generator plus
/// one closing puncture; nullopt for kinds without one.
std::optional<std::vector<MatrixModP>> catalog_monodromy_generators(const std::string& kind,
                                                                    const CatalogParams& params);

std::vector<std::string> catalog_kinds();

}  // namespace esper::algebra
