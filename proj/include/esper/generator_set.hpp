#pragma once

#include <string>
#include <vector>

#include "esper/matrix_mod_p.hpp"

namespace esper::algebra {

/// Symmetric generating set: closed under inverse, deduplicated, all invertible.
struct GeneratorSet {
    std::vector<MatrixModP> generators;
    std::string label = "custom";

    std::size_t size() const noexcept { return generators.size(); }
    std::uint32_t dim() const;
    std::uint32_t modulus() const;

    /// Canonical text form of the set (label, shape, entries). Two sets with
    /// equal signatures act identically; used for provenance checks.
    std::string signature() const;
};

/// Deduplicate the inputs (keeping first occurrence), then append each missing
/// inverse in input order. Rejects singular matrices (naming the offending
/// index) and mixed dimensions or moduli.
GeneratorSet symmetrize(const std::vector<MatrixModP>& gens, const std::string& label = "custom");

}  // namespace esper::algebra
