#include "esper/predicates.hpp"

#include <stdexcept>
#include <unordered_set>
#include <vector>

namespace esper::algebra {

namespace {

// Subgroup generated by the given element indices: BFS from the identity under
// left multiplication. Monoid closure equals subgroup closure in a finite group.
std::unordered_set<std::uint32_t> subgroup_closure(const GroupTable& g,
                                                   const std::vector<std::uint32_t>& gen_idx) {
    std::unordered_set<std::uint32_t> members;
    std::vector<std::uint32_t> order;
    members.insert(0);
    order.push_back(0);
    for (std::size_t head = 0; head < order.size(); ++head) {
        const std::uint32_t x = order[head];
        for (std::uint32_t k : gen_idx) {
            const std::uint32_t y = g.mul(k, x);
            if (members.insert(y).second) order.push_back(y);
        }
    }
    return members;
}

}  // namespace

bool is_perfect(const GroupTable& g) {
    if (g.size() <= 1) return true;

    const auto& gens = g.generators().generators;
    std::vector<std::uint32_t> gen_idx;
    std::vector<std::uint32_t> gen_inv;
    gen_idx.reserve(gens.size());
    for (const MatrixModP& s : gens) {
        gen_idx.push_back(g.index_of(s));
        gen_inv.push_back(g.index_of(s.inverse()));
    }

    // seed with commutators of the generators
    std::vector<std::uint32_t> kgens;
    std::unordered_set<std::uint32_t> kset;
    for (std::size_t i = 0; i < gen_idx.size(); ++i) {
        for (std::size_t j = 0; j < gen_idx.size(); ++j) {
            const std::uint32_t c =
                g.mul(g.mul(gen_inv[i], gen_inv[j]), g.mul(gen_idx[i], gen_idx[j]));
            if (c != 0 && kset.insert(c).second) kgens.push_back(c);
        }
    }
    if (kgens.empty()) return false;  // abelian on generators, nontrivial group

    // normal closure: close, then conjugate members by group generators until stable
    while (true) {
        auto members = subgroup_closure(g, kgens);
        if (members.size() == g.size()) return true;
        bool grew = false;
        for (std::uint32_t h : members) {
            for (std::size_t i = 0; i < gen_idx.size(); ++i) {
                const std::uint32_t c = g.mul(g.mul(gen_idx[i], h), gen_inv[i]);
                if (!members.count(c) && kset.insert(c).second) {
                    kgens.push_back(c);
                    grew = true;
                }
            }
        }
        if (!grew) return members.size() == g.size();
    }
}

GroupTable plus_subgroup(const GroupTable& g, std::uint32_t ell) {
    if (ell != g.modulus()) {
        throw std::invalid_argument("ell (" + std::to_string(ell) + ") must equal the modulus (" +
                                    std::to_string(g.modulus()) + ")");
    }
    if (ell + 1 < g.dim()) {
        throw std::invalid_argument(
            "ell = " + std::to_string(ell) + " < dim - 1 = " + std::to_string(g.dim() - 1) +
            "; order-ell elements need not be unipotent below that bound");
    }

    std::vector<MatrixModP> order_ell;
    for (std::uint32_t i = 0; i < g.size(); ++i) {
        if (g.element(i).has_exact_order(ell)) order_ell.push_back(g.element(i));
    }
    if (order_ell.empty()) {
        std::vector<MatrixModP> id{MatrixModP::identity(g.dim(), g.modulus())};
        return GroupTable::enumerate(symmetrize(id, "order-ell-elements"), 1);
    }
    return GroupTable::enumerate(symmetrize(order_ell, "order-ell-elements"), g.size());
}

bool quotient_index_prime_to_ell(const GroupTable& g, std::uint32_t ell) {
    const GroupTable plus = plus_subgroup(g, ell);
    if (g.size() % plus.size() != 0) {
        throw std::logic_error("plus subgroup order does not divide group order");
    }
    const std::size_t index = g.size() / plus.size();
    return index % ell != 0;
}

}  // namespace esper::algebra
