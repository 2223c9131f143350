#include "esper/action.hpp"

#include <stdexcept>

namespace esper::graphs {

using algebra::GeneratorSet;
using algebra::GroupTable;
using algebra::MatrixModP;

GroupAction GroupAction::left_translation() { return GroupAction(ActionKind::left_translation); }
GroupAction GroupAction::projective_line() { return GroupAction(ActionKind::projective_line); }
GroupAction GroupAction::nonzero_vectors() { return GroupAction(ActionKind::nonzero_vectors); }
GroupAction GroupAction::diagonal_quotient() { return GroupAction(ActionKind::diagonal_quotient); }

GroupAction GroupAction::coset_by_subgroup(std::shared_ptr<const GroupTable> subgroup) {
    if (!subgroup || subgroup->size() == 0) {
        throw std::invalid_argument("coset action needs a nonempty subgroup table");
    }
    GroupAction a(ActionKind::coset_by_subgroup);
    a.subgroup_ = std::move(subgroup);
    return a;
}

std::string GroupAction::describe() const {
    switch (kind_) {
        case ActionKind::left_translation: return "left-translation";
        case ActionKind::projective_line: return "projective-line";
        case ActionKind::nonzero_vectors: return "nonzero-vectors";
        case ActionKind::coset_by_subgroup: return "coset-by-subgroup";
        case ActionKind::diagonal_quotient: return "diagonal-quotient";
    }
    return "?";
}

namespace {

MatrixModP from_point(const Point& p, std::uint32_t dim, std::uint32_t mod) {
    MatrixModP m(dim, mod);
    for (std::uint32_t r = 0; r < dim; ++r) {
        for (std::uint32_t c = 0; c < dim; ++c) m.set(r, c, p[r * dim + c]);
    }
    return m;
}

Point to_point(const MatrixModP& m) {
    return Point(m.entries().begin(), m.entries().end());
}

Point matvec(const MatrixModP& g, const Point& x) {
    const std::uint32_t d = g.dim();
    const std::uint64_t mod = g.modulus();
    Point y(d, 0);
    for (std::uint32_t i = 0; i < d; ++i) {
        std::uint64_t acc = 0;
        for (std::uint32_t j = 0; j < d; ++j) acc += std::uint64_t(g.at(i, j)) * x[j];
        y[i] = static_cast<std::uint32_t>(acc % mod);
    }
    return y;
}

std::uint32_t modular_inverse(std::uint32_t a, std::uint32_t mod) {
    std::uint64_t result = 1, base = a % mod, e = mod - 2;
    while (e > 0) {
        if (e & 1) result = result * base % mod;
        base = base * base % mod;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(result);
}

// scale so the first nonzero coordinate is 1
Point normalize_projective(Point v, std::uint32_t mod) {
    for (std::uint32_t k = 0; k < v.size(); ++k) {
        if (v[k] != 0) {
            if (v[k] != 1) {
                const std::uint64_t inv = modular_inverse(v[k], mod);
                for (auto& c : v) c = static_cast<std::uint32_t>(c * inv % mod);
            }
            return v;
        }
    }
    throw std::invalid_argument("zero vector is not a projective point");
}

bool is_zero(const Point& v) {
    for (std::uint32_t c : v) {
        if (c != 0) return false;
    }
    return true;
}

Point coset_canonical(const MatrixModP& x, const GroupTable& subgroup) {
    MatrixModP best = x * subgroup.element(0);
    for (std::uint32_t i = 1; i < subgroup.size(); ++i) {
        MatrixModP cand = x * subgroup.element(i);
        if (cand.lex_less(best)) best = std::move(cand);
    }
    return to_point(best);
}

void split_blocks(const MatrixModP& g, MatrixModP& a, MatrixModP& b) {
    const std::uint32_t k = g.dim() / 2;
    for (std::uint32_t r = 0; r < k; ++r) {
        for (std::uint32_t c = 0; c < k; ++c) {
            a.set(r, c, g.at(r, c));
            b.set(r, c, g.at(k + r, k + c));
        }
    }
}

}  // namespace

void GroupAction::validate_generators(const GeneratorSet& gens) const {
    if (gens.generators.empty()) throw std::invalid_argument("empty generator set");
    switch (kind_) {
        case ActionKind::diagonal_quotient: {
            const std::uint32_t d = gens.dim();
            if (d % 2 != 0) {
                throw std::invalid_argument("diagonal-quotient needs even-dimensional generators");
            }
            const std::uint32_t k = d / 2;
            for (const MatrixModP& g : gens.generators) {
                for (std::uint32_t r = 0; r < k; ++r) {
                    for (std::uint32_t c = 0; c < k; ++c) {
                        if (g.at(r, k + c) != 0 || g.at(k + r, c) != 0) {
                            throw std::invalid_argument(
                                "diagonal-quotient generators must be block-diagonal: " + g.to_string());
                        }
                    }
                }
            }
            break;
        }
        case ActionKind::coset_by_subgroup: {
            if (subgroup_->dim() != gens.dim() || subgroup_->modulus() != gens.modulus()) {
                throw std::invalid_argument("subgroup shape does not match the generators");
            }
            break;
        }
        default:
            break;
    }
}

Point GroupAction::default_basepoint(const GeneratorSet& gens) const {
    const std::uint32_t d = gens.dim();
    const std::uint32_t l = gens.modulus();
    switch (kind_) {
        case ActionKind::left_translation:
            return to_point(MatrixModP::identity(d, l));
        case ActionKind::projective_line:
        case ActionKind::nonzero_vectors: {
            Point p(d, 0);
            p[0] = 1;
            return p;
        }
        case ActionKind::coset_by_subgroup:
            return coset_canonical(MatrixModP::identity(d, l), *subgroup_);
        case ActionKind::diagonal_quotient:
            return to_point(MatrixModP::identity(d / 2, l));
    }
    throw std::logic_error("unreachable");
}

Point GroupAction::canonicalize(const GeneratorSet& gens, const Point& raw) const {
    const std::uint32_t d = gens.dim();
    const std::uint32_t l = gens.modulus();
    for (std::uint32_t c : raw) {
        if (c >= l) throw std::invalid_argument("point entry not reduced mod " + std::to_string(l));
    }
    switch (kind_) {
        case ActionKind::left_translation: {
            if (raw.size() != std::size_t(d) * d) throw std::invalid_argument("point shape mismatch");
            if (!from_point(raw, d, l).invertible()) {
                throw std::invalid_argument("basepoint matrix is singular");
            }
            return raw;
        }
        case ActionKind::projective_line: {
            if (raw.size() != d) throw std::invalid_argument("point shape mismatch");
            return normalize_projective(raw, l);
        }
        case ActionKind::nonzero_vectors: {
            if (raw.size() != d) throw std::invalid_argument("point shape mismatch");
            if (is_zero(raw)) throw std::invalid_argument("zero vector is outside the domain");
            return raw;
        }
        case ActionKind::coset_by_subgroup: {
            if (raw.size() != std::size_t(d) * d) throw std::invalid_argument("point shape mismatch");
            MatrixModP x = from_point(raw, d, l);
            if (!x.invertible()) throw std::invalid_argument("coset representative is singular");
            return coset_canonical(x, *subgroup_);
        }
        case ActionKind::diagonal_quotient: {
            const std::uint32_t k = d / 2;
            if (raw.size() != std::size_t(k) * k) throw std::invalid_argument("point shape mismatch");
            if (!from_point(raw, k, l).invertible()) {
                throw std::invalid_argument("diagonal-quotient point is singular");
            }
            return raw;
        }
    }
    throw std::logic_error("unreachable");
}

Point GroupAction::apply(const MatrixModP& g, const Point& x) const {
    switch (kind_) {
        case ActionKind::left_translation:
            return to_point(g * from_point(x, g.dim(), g.modulus()));
        case ActionKind::projective_line:
            return normalize_projective(matvec(g, x), g.modulus());
        case ActionKind::nonzero_vectors:
            return matvec(g, x);
        case ActionKind::coset_by_subgroup:
            return coset_canonical(g * from_point(x, g.dim(), g.modulus()), *subgroup_);
        case ActionKind::diagonal_quotient: {
            const std::uint32_t k = g.dim() / 2;
            MatrixModP a(k, g.modulus());
            MatrixModP b(k, g.modulus());
            split_blocks(g, a, b);
            return to_point(a * from_point(x, k, g.modulus()) * b.inverse());
        }
    }
    throw std::logic_error("unreachable");
}

std::size_t PointHash::operator()(const Point& p) const noexcept {
    std::uint64_t h = 14695981039346656037ull;
    for (std::uint32_t v : p) {
        for (int b = 0; b < 4; ++b) {
            h ^= (v >> (8 * b)) & 0xff;
            h *= 1099511628211ull;
        }
    }
    return static_cast<std::size_t>(h);
}

}  // namespace esper::graphs
