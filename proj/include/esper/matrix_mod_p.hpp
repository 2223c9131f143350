#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace esper::algebra {

bool is_prime(std::uint64_t n);

/**
 * Square matrix over the prime field F_l. Entries are stored row-major and
 * kept reduced to [0, l). Equality and hashing use the reduced entry tuple,
 * so element tables and graph vertex numbering do not depend on how a matrix
 * was produced.
 */
class MatrixModP {
public:
    MatrixModP(std::uint32_t dim, std::uint32_t modulus);
    MatrixModP(std::uint32_t dim, std::uint32_t modulus, const std::vector<std::int64_t>& entries);
    static MatrixModP identity(std::uint32_t dim, std::uint32_t modulus);

    std::uint32_t dim() const noexcept { return dim_; }
    std::uint32_t modulus() const noexcept { return mod_; }
    std::uint32_t at(std::uint32_t row, std::uint32_t col) const { return e_[row * dim_ + col]; }
    void set(std::uint32_t row, std::uint32_t col, std::int64_t value);
    const std::vector<std::uint32_t>& entries() const noexcept { return e_; }

    MatrixModP operator*(const MatrixModP& rhs) const;
    bool operator==(const MatrixModP& rhs) const noexcept;
    bool operator!=(const MatrixModP& rhs) const noexcept { return !(*this == rhs); }

    /// Entry-tuple lexicographic order; used for canonical coset representatives.
    bool lex_less(const MatrixModP& rhs) const noexcept;

    std::uint32_t det() const;
    bool invertible() const { return det() != 0; }
    MatrixModP inverse() const;  // throws std::domain_error if singular
    MatrixModP pow(std::uint64_t e) const;
    bool is_identity() const noexcept;

    /// Exact order ell for prime ell: g != I and g^ell == I.
    bool has_exact_order(std::uint32_t ell) const;

    std::string to_string() const;

private:
    std::uint32_t dim_;
    std::uint32_t mod_;
    std::vector<std::uint32_t> e_;
};

struct MatrixHash {
    std::size_t operator()(const MatrixModP& m) const noexcept;
};

}  // namespace esper::algebra
