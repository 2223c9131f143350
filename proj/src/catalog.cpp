#include "esper/catalog.hpp"

#include <stdexcept>

namespace esper::algebra {

namespace {

void require_prime(std::uint32_t ell) {
    if (!is_prime(ell)) throw std::invalid_argument("ell = " + std::to_string(ell) + " is not prime");
}

void require_odd_prime(std::uint32_t ell, const std::string& kind) {
    require_prime(ell);
    if (ell == 2) {
        throw std::invalid_argument(kind + " is degenerate mod 2: level-2 matrices reduce to the identity");
    }
}

MatrixModP sl2(std::uint32_t ell, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    return MatrixModP(2, ell, {a, b, c, d});
}

// Transvection x -> x + <x,v> v for the standard symplectic form on F^(2g)
// with basis ordered (e1, f1, e2, f2, ...): matrix I + v (J v)^T.
MatrixModP symplectic_transvection(const std::vector<std::int64_t>& v, std::uint32_t g,
                                   std::uint32_t ell) {
    const std::uint32_t n = 2 * g;
    std::vector<std::int64_t> jv(n, 0);
    for (std::uint32_t i = 0; i < g; ++i) {
        jv[2 * i] = v[2 * i + 1];
        jv[2 * i + 1] = -v[2 * i];
    }
    MatrixModP t = MatrixModP::identity(n, ell);
    for (std::uint32_t r = 0; r < n; ++r) {
        for (std::uint32_t c = 0; c < n; ++c) {
            t.set(r, c, static_cast<std::int64_t>(t.at(r, c)) + v[r] * jv[c]);
        }
    }
    return t;
}

// Chain of symplectic vectors v1..v2g with <v_i, v_{i+1}> nonzero and all
// other pairings zero: e1, f1, e1+e2, f2, e2+e3, f3, ...
std::vector<std::vector<std::int64_t>> chain_vectors(std::uint32_t g) {
    const std::uint32_t n = 2 * g;
    std::vector<std::vector<std::int64_t>> out;
    auto unit = [n](std::uint32_t k) {
        std::vector<std::int64_t> v(n, 0);
        v[k] = 1;
        return v;
    };
    out.push_back(unit(0));  // e1
    out.push_back(unit(1));  // f1
    for (std::uint32_t i = 1; i < g; ++i) {
        std::vector<std::int64_t> v(n, 0);
        v[2 * (i - 1)] = 1;  // e_i
        v[2 * i] = 1;        // e_{i+1}
        out.push_back(v);
        out.push_back(unit(2 * i + 1));  // f_{i+1}
    }
    return out;
}

MatrixModP block_diagonal(const MatrixModP& a, const MatrixModP& b) {
    const std::uint32_t d = a.dim();
    MatrixModP out(2 * d, a.modulus());
    for (std::uint32_t r = 0; r < d; ++r) {
        for (std::uint32_t c = 0; c < d; ++c) {
            out.set(r, c, a.at(r, c));
            out.set(d + r, d + c, b.at(r, c));
        }
    }
    return out;
}

std::vector<MatrixModP> primitive_generators(const std::string& kind, const CatalogParams& p) {
    if (kind == "sl2-elementary") {
        require_prime(p.ell);
        return {sl2(p.ell, 1, 1, 0, 1), sl2(p.ell, 1, 0, 1, 1)};
    }
    if (kind == "gamma2-legendre") {
        require_odd_prime(p.ell, kind);
        return {sl2(p.ell, 1, 2, 0, 1), sl2(p.ell, 1, 0, 2, 1)};
    }
    if (kind == "sp2g-level2-transvections") {
        require_odd_prime(p.ell, kind);
        if (p.genus < 1) throw std::invalid_argument("sp2g catalog needs genus >= 1");
        std::vector<MatrixModP> out;
        for (const auto& v : chain_vectors(p.genus)) {
            MatrixModP t = symplectic_transvection(v, p.genus, p.ell);
            out.push_back(t * t);
        }
        return out;
    }
    if (kind == "product-sl2-diagonal-test") {
        require_prime(p.ell);
        std::vector<MatrixModP> out;
        if (!p.pairs.empty()) {
            for (const auto& [a, b] : p.pairs) out.push_back(block_diagonal(a, b));
            return out;
        }
        const MatrixModP up = sl2(p.ell, 1, 1, 0, 1);
        const MatrixModP lo = sl2(p.ell, 1, 0, 1, 1);
        const MatrixModP id = MatrixModP::identity(2, p.ell);
        out.push_back(block_diagonal(up, id));
        out.push_back(block_diagonal(lo, id));
        out.push_back(block_diagonal(id, up));
        out.push_back(block_diagonal(id, lo));
        return out;
    }
    if (kind == "custom") {
        if (p.custom.empty()) throw std::invalid_argument("custom catalog needs at least one matrix");
        return p.custom;
    }
    throw std::invalid_argument("unknown catalog kind: " + kind);
}

}  // namespace

GeneratorSet catalog_generators(const std::string& kind, const CatalogParams& params) {
    GeneratorSet gens = symmetrize(primitive_generators(kind, params), kind);
    if (kind == "gamma2-legendre" && params.verify_closure) {
        // strong approximation is verified, not assumed
        const GroupTable table = GroupTable::enumerate(gens, params.cap);
        const std::uint64_t l = params.ell;
        const std::uint64_t expected = l * (l * l - 1);
        if (table.size() != expected) {
            throw std::logic_error("gamma2-legendre closure mod " + std::to_string(params.ell) +
                                   " has size " + std::to_string(table.size()) + ", expected " +
                                   std::to_string(expected));
        }
    }
    return gens;
}

std::optional<std::vector<MatrixModP>> catalog_monodromy_generators(const std::string& kind,
                                                                    const CatalogParams& params) {
    if (kind == "sl2-elementary" || kind == "gamma2-legendre" ||
        kind == "sp2g-level2-transvections") {
        return primitive_generators(kind, params);
    }
    return std::nullopt;
}

std::vector<std::string> catalog_kinds() {
    return {"sl2-elementary", "gamma2-legendre", "sp2g-level2-transvections",
            "product-sl2-diagonal-test", "custom"};
}

}  // namespace esper::algebra
