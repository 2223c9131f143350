#include "esper/matrix_mod_p.hpp"

#include <sstream>
#include <stdexcept>

namespace esper::algebra {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

namespace {

std::uint32_t reduce(std::int64_t v, std::uint32_t mod) {
    std::int64_t r = v % static_cast<std::int64_t>(mod);
    if (r < 0) r += mod;
    return static_cast<std::uint32_t>(r);
}

void check_shape(std::uint32_t dim, std::uint32_t modulus) {
    if (dim == 0) throw std::invalid_argument("matrix dimension must be positive");
    if (!is_prime(modulus)) {
        throw std::invalid_argument("modulus " + std::to_string(modulus) + " is not prime");
    }
}

}  // namespace

MatrixModP::MatrixModP(std::uint32_t dim, std::uint32_t modulus)
    : dim_(dim), mod_(modulus), e_(static_cast<std::size_t>(dim) * dim, 0) {
    check_shape(dim, modulus);
}

MatrixModP::MatrixModP(std::uint32_t dim, std::uint32_t modulus, const std::vector<std::int64_t>& entries)
    : dim_(dim), mod_(modulus) {
    check_shape(dim, modulus);
    if (entries.size() != static_cast<std::size_t>(dim) * dim) {
        throw std::invalid_argument("expected " + std::to_string(dim * dim) + " entries, got " +
                                    std::to_string(entries.size()));
    }
    e_.reserve(entries.size());
    for (std::int64_t v : entries) e_.push_back(reduce(v, modulus));
}

MatrixModP MatrixModP::identity(std::uint32_t dim, std::uint32_t modulus) {
    MatrixModP m(dim, modulus);
    for (std::uint32_t i = 0; i < dim; ++i) m.e_[i * dim + i] = 1;
    return m;
}

void MatrixModP::set(std::uint32_t row, std::uint32_t col, std::int64_t value) {
    e_[row * dim_ + col] = reduce(value, mod_);
}

MatrixModP MatrixModP::operator*(const MatrixModP& rhs) const {
    if (dim_ != rhs.dim_ || mod_ != rhs.mod_) {
        throw std::invalid_argument("matrix shape/modulus mismatch in product");
    }
    MatrixModP out(dim_, mod_);
    for (std::uint32_t i = 0; i < dim_; ++i) {
        for (std::uint32_t j = 0; j < dim_; ++j) {
            std::uint64_t acc = 0;
            for (std::uint32_t k = 0; k < dim_; ++k) {
                acc += static_cast<std::uint64_t>(e_[i * dim_ + k]) * rhs.e_[k * dim_ + j];
            }
            out.e_[i * dim_ + j] = static_cast<std::uint32_t>(acc % mod_);
        }
    }
    return out;
}

bool MatrixModP::operator==(const MatrixModP& rhs) const noexcept {
    return dim_ == rhs.dim_ && mod_ == rhs.mod_ && e_ == rhs.e_;
}

bool MatrixModP::lex_less(const MatrixModP& rhs) const noexcept {
    return e_ < rhs.e_;
}

namespace {

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
    std::uint64_t result = 1 % mod;
    base %= mod;
    while (exp > 0) {
        if (exp & 1) result = result * base % mod;
        base = base * base % mod;
        exp >>= 1;
    }
    return result;
}

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t mod) {
    // Fermat: a^(p-2) mod p for prime p.
    return static_cast<std::uint32_t>(mod_pow(a, mod - 2, mod));
}

}  // namespace

std::uint32_t MatrixModP::det() const {
    // Gaussian elimination over F_l.
    std::vector<std::uint32_t> a = e_;
    const std::uint64_t p = mod_;
    std::uint64_t det = 1;
    for (std::uint32_t col = 0; col < dim_; ++col) {
        std::uint32_t pivot = dim_;
        for (std::uint32_t r = col; r < dim_; ++r) {
            if (a[r * dim_ + col] != 0) { pivot = r; break; }
        }
        if (pivot == dim_) return 0;
        if (pivot != col) {
            for (std::uint32_t j = 0; j < dim_; ++j) std::swap(a[pivot * dim_ + j], a[col * dim_ + j]);
            det = p - det;  // row swap flips sign
            if (det == p) det = 0;
        }
        const std::uint64_t pv = a[col * dim_ + col];
        det = det * pv % p;
        const std::uint64_t pv_inv = mod_inverse(static_cast<std::uint32_t>(pv), mod_);
        for (std::uint32_t r = col + 1; r < dim_; ++r) {
            const std::uint64_t factor = a[r * dim_ + col] * pv_inv % p;
            if (factor == 0) continue;
            for (std::uint32_t j = col; j < dim_; ++j) {
                std::uint64_t v = a[r * dim_ + j] + (p - factor * a[col * dim_ + j] % p);
                a[r * dim_ + j] = static_cast<std::uint32_t>(v % p);
            }
        }
    }
    return static_cast<std::uint32_t>(det % p);
}

MatrixModP MatrixModP::inverse() const {
    // Gauss-Jordan on [A | I].
    const std::uint64_t p = mod_;
    std::vector<std::uint32_t> a = e_;
    MatrixModP inv = identity(dim_, mod_);
    std::vector<std::uint32_t>& b = inv.e_;
    for (std::uint32_t col = 0; col < dim_; ++col) {
        std::uint32_t pivot = dim_;
        for (std::uint32_t r = col; r < dim_; ++r) {
            if (a[r * dim_ + col] != 0) { pivot = r; break; }
        }
        if (pivot == dim_) throw std::domain_error("matrix is singular mod " + std::to_string(mod_));
        if (pivot != col) {
            for (std::uint32_t j = 0; j < dim_; ++j) {
                std::swap(a[pivot * dim_ + j], a[col * dim_ + j]);
                std::swap(b[pivot * dim_ + j], b[col * dim_ + j]);
            }
        }
        const std::uint64_t pv_inv = mod_inverse(a[col * dim_ + col], mod_);
        for (std::uint32_t j = 0; j < dim_; ++j) {
            a[col * dim_ + j] = static_cast<std::uint32_t>(a[col * dim_ + j] * pv_inv % p);
            b[col * dim_ + j] = static_cast<std::uint32_t>(b[col * dim_ + j] * pv_inv % p);
        }
        for (std::uint32_t r = 0; r < dim_; ++r) {
            if (r == col) continue;
            const std::uint64_t factor = a[r * dim_ + col];
            if (factor == 0) continue;
            for (std::uint32_t j = 0; j < dim_; ++j) {
                std::uint64_t va = a[r * dim_ + j] + (p - factor * a[col * dim_ + j] % p);
                std::uint64_t vb = b[r * dim_ + j] + (p - factor * b[col * dim_ + j] % p);
                a[r * dim_ + j] = static_cast<std::uint32_t>(va % p);
                b[r * dim_ + j] = static_cast<std::uint32_t>(vb % p);
            }
        }
    }
    return inv;
}

MatrixModP MatrixModP::pow(std::uint64_t e) const {
    MatrixModP result = identity(dim_, mod_);
    MatrixModP base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

bool MatrixModP::is_identity() const noexcept {
    for (std::uint32_t i = 0; i < dim_; ++i) {
        for (std::uint32_t j = 0; j < dim_; ++j) {
            if (e_[i * dim_ + j] != (i == j ? 1u : 0u)) return false;
        }
    }
    return true;
}

bool MatrixModP::has_exact_order(std::uint32_t ell) const {
    if (is_identity()) return false;
    return pow(ell).is_identity();
}

std::string MatrixModP::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::uint32_t i = 0; i < dim_; ++i) {
        os << (i ? ",[" : "[");
        for (std::uint32_t j = 0; j < dim_; ++j) {
            if (j) os << ",";
            os << e_[i * dim_ + j];
        }
        os << "]";
    }
    os << "] mod " << mod_;
    return os.str();
}

std::size_t MatrixHash::operator()(const MatrixModP& m) const noexcept {
    // FNV-1a over shape plus entries.
    std::uint64_t h = 14695981039346656037ull;
    auto mix = [&h](std::uint64_t v) {
        for (int b = 0; b < 8; ++b) {
            h ^= (v >> (8 * b)) & 0xff;
            h *= 1099511628211ull;
        }
    };
    mix(m.dim());
    mix(m.modulus());
    for (std::uint32_t v : m.entries()) mix(v);
    return static_cast<std::size_t>(h);
}

}  // namespace esper::algebra
