#include "esper/group_table.hpp"

#include <stdexcept>

#include "esper/errors.hpp"

namespace esper::algebra {

GroupTable GroupTable::enumerate(const GeneratorSet& gens, std::size_t cap) {
    if (gens.generators.empty()) throw std::invalid_argument("cannot enumerate with no generators");
    if (cap < 1) throw std::invalid_argument("cap must be at least 1");

    GroupTable table(gens);
    const MatrixModP id = MatrixModP::identity(gens.dim(), gens.modulus());
    table.elements_.push_back(id);
    table.index_.emplace(id, 0);

    for (std::size_t head = 0; head < table.elements_.size(); ++head) {
        // elements_ grows during the loop; index by position, not iterator
        for (const MatrixModP& g : gens.generators) {
            MatrixModP next = g * table.elements_[head];
            if (table.index_.count(next)) continue;
            if (table.elements_.size() + 1 > cap) {
                throw cap_exceeded(table.elements_.size() + 1, cap);
            }
            table.index_.emplace(next, static_cast<std::uint32_t>(table.elements_.size()));
            table.elements_.push_back(std::move(next));
        }
    }
    return table;
}

std::uint32_t GroupTable::index_of(const MatrixModP& m) const {
    auto it = index_.find(m);
    if (it == index_.end()) throw std::out_of_range("matrix not in group table: " + m.to_string());
    return it->second;
}

std::uint32_t GroupTable::mul(std::uint32_t a, std::uint32_t b) const {
    return index_of(elements_[a] * elements_[b]);
}

std::uint32_t GroupTable::inverse_of(std::uint32_t i) const {
    return index_of(elements_[i].inverse());
}

}  // namespace esper::algebra
