#include "esper/generator_set.hpp"

#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace esper::algebra {

std::uint32_t GeneratorSet::dim() const {
    if (generators.empty()) throw std::logic_error("empty generator set has no dimension");
    return generators.front().dim();
}

std::uint32_t GeneratorSet::modulus() const {
    if (generators.empty()) throw std::logic_error("empty generator set has no modulus");
    return generators.front().modulus();
}

std::string GeneratorSet::signature() const {
    std::ostringstream os;
    os << "gens:" << label << ";d=" << (generators.empty() ? 0 : dim())
       << ";l=" << (generators.empty() ? 0 : modulus());
    for (const MatrixModP& g : generators) {
        os << ";";
        const auto& e = g.entries();
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (i) os << ",";
            os << e[i];
        }
    }
    return os.str();
}

GeneratorSet symmetrize(const std::vector<MatrixModP>& gens, const std::string& label) {
    if (gens.empty()) throw std::invalid_argument("generator list is empty");
    const std::uint32_t d = gens.front().dim();
    const std::uint32_t l = gens.front().modulus();
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (gens[i].dim() != d || gens[i].modulus() != l) {
            throw std::invalid_argument("generator " + std::to_string(i) +
                                        " has mixed dimension or modulus");
        }
        if (!gens[i].invertible()) {
            throw std::invalid_argument("generator " + std::to_string(i) + " is singular: " +
                                        gens[i].to_string());
        }
    }

    GeneratorSet out;
    out.label = label;
    std::unordered_set<MatrixModP, MatrixHash> seen;
    for (const MatrixModP& g : gens) {
        if (seen.insert(g).second) out.generators.push_back(g);
    }
    const std::size_t base = out.generators.size();
    for (std::size_t i = 0; i < base; ++i) {
        MatrixModP inv = out.generators[i].inverse();
        if (seen.insert(inv).second) out.generators.push_back(std::move(inv));
    }
    return out;
}

}  // namespace esper::algebra
