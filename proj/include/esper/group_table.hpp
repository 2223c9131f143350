#pragma once

#include <unordered_map>
#include <vector>

#include "esper/generator_set.hpp"

namespace esper::algebra {

/**
 * Finite matrix group as an indexed element table. Elements are listed in BFS
 * discovery order under left multiplication by the generators (generator
 * order fixed), identity at index 0. The ordering is part of the contract:
 * graph vertex numbering and cached spectra depend on it.
 *
 * Immutable after construction; concurrent reads are safe.
 */
class GroupTable {
public:
    static constexpr std::size_t kDefaultCap = 2000000;

    /// BFS closure of the generators. Throws cap_exceeded (with the partial
    /// count) if the closure grows past cap.
    static GroupTable enumerate(const GeneratorSet& gens, std::size_t cap = kDefaultCap);

    std::size_t size() const noexcept { return elements_.size(); }
    const MatrixModP& element(std::uint32_t i) const { return elements_[i]; }
    bool contains(const MatrixModP& m) const { return index_.count(m) != 0; }
    std::uint32_t index_of(const MatrixModP& m) const;  // throws std::out_of_range
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t inverse_of(std::uint32_t i) const;

    const GeneratorSet& generators() const noexcept { return gens_; }
    std::uint32_t dim() const { return gens_.dim(); }
    std::uint32_t modulus() const { return gens_.modulus(); }

private:
    explicit GroupTable(GeneratorSet gens) : gens_(std::move(gens)) {}

    std::vector<MatrixModP> elements_;
    std::unordered_map<MatrixModP, std::uint32_t, MatrixHash> index_;
    GeneratorSet gens_;
};

}  // namespace esper::algebra
