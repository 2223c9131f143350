#pragma once

#include "esper/group_table.hpp"

namespace esper::algebra {

/// True iff the subgroup generated by all commutators equals the whole group.
/// Computed as the normal closure of the generator commutators; the trivial
/// group is perfect.
bool is_perfect(const GroupTable& g);

/// Subgroup generated by all elements of exact order ell (the unipotent
/// elements when ell >= dim - 1). Requires ell == modulus and ell >= dim - 1.
/// Returns the trivial group when no order-ell elements exist.
GroupTable plus_subgroup(const GroupTable& g, std::uint32_t ell);

/// True iff the index [g : plus_subgroup(g)] is not divisible by ell.
bool quotient_index_prime_to_ell(const GroupTable& g, std::uint32_t ell);

}  // namespace esper::algebra
