#include "esper/surfaces.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace esper::surfaces {

Permutation::Permutation(std::vector<std::uint32_t> images) : map_(std::move(images)) {
    std::vector<char> seen(map_.size(), 0);
    for (std::uint32_t v : map_) {
        if (v >= map_.size() || seen[v]) throw std::invalid_argument("not a permutation");
        seen[v] = 1;
    }
}

Permutation Permutation::identity(std::uint32_t n) {
    std::vector<std::uint32_t> m(n);
    for (std::uint32_t i = 0; i < n; ++i) m[i] = i;
    return Permutation(std::move(m));
}

Permutation Permutation::operator*(const Permutation& rhs) const {
    if (size() != rhs.size()) throw std::invalid_argument("permutation size mismatch");
    std::vector<std::uint32_t> m(size());
    for (std::uint32_t i = 0; i < size(); ++i) m[i] = map_[rhs.map_[i]];
    return Permutation(std::move(m));
}

Permutation Permutation::inverse() const {
    std::vector<std::uint32_t> m(size());
    for (std::uint32_t i = 0; i < size(); ++i) m[map_[i]] = i;
    return Permutation(std::move(m));
}

bool Permutation::is_identity() const noexcept {
    for (std::uint32_t i = 0; i < size(); ++i) {
        if (map_[i] != i) return false;
    }
    return true;
}

std::uint32_t Permutation::cycle_count() const {
    std::vector<char> seen(size(), 0);
    std::uint32_t cycles = 0;
    for (std::uint32_t i = 0; i < size(); ++i) {
        if (seen[i]) continue;
        ++cycles;
        for (std::uint32_t j = i; !seen[j]; j = map_[j]) seen[j] = 1;
    }
    return cycles;
}

namespace {

bool transitive(const CoverDescriptor& cd) {
    if (cd.degree == 0) return false;
    std::vector<char> seen(cd.degree, 0);
    std::vector<std::uint32_t> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const std::uint32_t x = stack.back();
        stack.pop_back();
        auto visit = [&](std::uint32_t y) {
            if (!seen[y]) {
                seen[y] = 1;
                ++reached;
                stack.push_back(y);
            }
        };
        for (const auto& s : cd.puncture_monodromy) {
            visit(s(x));
            visit(s.inverse()(x));
        }
        for (const auto& [a, b] : cd.handle_monodromy) {
            visit(a(x));
            visit(a.inverse()(x));
            visit(b(x));
            visit(b.inverse()(x));
        }
    }
    return reached == cd.degree;
}

}  // namespace

GenusResult genus_from_monodromy(const CoverDescriptor& cd) {
    if (cd.degree == 0) throw std::invalid_argument("cover degree must be positive");
    const std::int64_t base_chi =
        2 - 2 * static_cast<std::int64_t>(cd.base_genus) - static_cast<std::int64_t>(cd.punctures);
    if (base_chi >= 0) {
        throw std::invalid_argument("base surface must be hyperbolic (2 - 2g0 - p < 0)");
    }
    if (cd.puncture_monodromy.size() != cd.punctures) {
        throw std::invalid_argument("need one monodromy permutation per puncture");
    }
    if (cd.handle_monodromy.size() != cd.base_genus) {
        throw std::invalid_argument("need one monodromy pair per handle");
    }
    for (const auto& s : cd.puncture_monodromy) {
        if (s.size() != cd.degree) throw std::invalid_argument("permutation degree mismatch");
    }
    for (const auto& [a, b] : cd.handle_monodromy) {
        if (a.size() != cd.degree || b.size() != cd.degree) {
            throw std::invalid_argument("permutation degree mismatch");
        }
    }

    // surface-group relation, rightmost factor first
    Permutation rel = Permutation::identity(cd.degree);
    for (const auto& [a, b] : cd.handle_monodromy) {
        rel = rel * (a * b * a.inverse() * b.inverse());
    }
    for (const auto& s : cd.puncture_monodromy) rel = rel * s;
    if (!rel.is_identity()) {
        throw std::invalid_argument("monodromy violates the surface-group relation");
    }
    if (!transitive(cd)) {
        throw std::invalid_argument("monodromy is not transitive: the cover is disconnected");
    }

    GenusResult out;
    out.chi_open = static_cast<std::int64_t>(cd.degree) * base_chi;
    out.chi_compact = out.chi_open;
    for (const auto& s : cd.puncture_monodromy) out.chi_compact += s.cycle_count();
    if ((2 - out.chi_compact) % 2 != 0) {
        throw std::logic_error("chi of the compactified cover has odd parity");
    }
    out.genus = (2 - out.chi_compact) / 2;
    if (out.genus < 0) throw std::logic_error("negative genus from monodromy data");
    return out;
}

double hyperbolic_area(std::int64_t chi) {
    if (chi >= 0) {
        throw std::invalid_argument("chi = " + std::to_string(chi) + " is not hyperbolic");
    }
    return -2.0 * std::numbers::pi * static_cast<double>(chi);
}

LiYauResult liyau_bound(double lambda1_surface, double area) {
    if (lambda1_surface <= 0 || area <= 0) {
        throw std::invalid_argument("liyau_bound needs positive lambda1 and area");
    }
    LiYauResult out;
    out.lambda_above_quarter = lambda1_surface > 0.25;
    out.bound = lambda1_surface * area / (8.0 * std::numbers::pi);
    return out;
}

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

GonalityCertificate gonality_chain(double lambda1_graph, double comparison_constant,
                                   std::int64_t genus, std::optional<FitInputs> fit) {
    if (comparison_constant <= 0) {
        throw std::invalid_argument("comparison constant must be positive");
    }
    if (lambda1_graph <= 0) throw std::invalid_argument("lambda1 must be positive");

    GonalityCertificate cert;
    cert.lambda1_graph = lambda1_graph;
    cert.comparison_constant = comparison_constant;
    cert.genus = genus;
    cert.fit = fit;
    cert.assumption_note =
        "comparison constant c_B = " + fmt(comparison_constant) +
        " is an assumption relating the graph gap to the surface gap; it is not computed";

    cert.lambda1_surface = comparison_constant * lambda1_graph;
    cert.audit.push_back("lambda1_surface = c_B * lambda1_graph = " + fmt(comparison_constant) +
                         " * " + fmt(lambda1_graph) + " = " + fmt(cert.lambda1_surface));

    if (genus <= 1) {
        cert.vacuous = true;
        cert.area = 0;
        cert.gonality_lower = 0;
        cert.audit.push_back("genus <= 1: the genus-based bound is vacuous (0)");
    } else {
        const auto gm1 = static_cast<double>(genus - 1);
        cert.area = 4.0 * std::numbers::pi * gm1;
        cert.audit.push_back("area = 4 * pi * (genus - 1) = " + fmt(cert.area));
        cert.gonality_lower = 2.0 * cert.lambda1_surface * gm1;
        cert.audit.push_back("gonality_lower = 2 * lambda1_surface * (genus - 1) = 2 * " +
                             fmt(cert.lambda1_surface) + " * " + fmt(gm1) + " = " +
                             fmt(cert.gonality_lower));
    }

    if (fit) {
        cert.quantitative_lower = quantitative_gonality(fit->n, fit->constant, fit->exponent);
        cert.audit.push_back("quantitative_lower = c' * n / (log 2n)^(2A) = " +
                             fmt(cert.quantitative_lower) + " with c' = " + fmt(fit->constant) +
                             ", A = " + fmt(fit->exponent) + ", n = " + std::to_string(fit->n));
    }
    return cert;
}

double GonalityCertificate::replay() const {
    double worst = 0.0;
    auto compare = [&worst](double replayed, double stored) {
        const double scale = std::max({std::abs(replayed), std::abs(stored), 1e-300});
        worst = std::max(worst, std::abs(replayed - stored) / scale);
    };

    compare(lambda1_graph * comparison_constant, lambda1_surface);
    if (genus > 1) {
        const auto gm1 = static_cast<double>(genus - 1);
        compare((2.0 * gm1) * (comparison_constant * lambda1_graph), gonality_lower);
        compare((4.0 * std::numbers::pi) * gm1, area);
    } else {
        compare(0.0, gonality_lower);
    }
    if (fit) {
        const double log_log = std::log(std::log(2.0 * static_cast<double>(fit->n)));
        const double replayed =
            std::exp(std::log(fit->constant) + std::log(static_cast<double>(fit->n)) -
                     2.0 * fit->exponent * log_log);
        compare(replayed, quantitative_lower);
    }
    return worst;
}

double quantitative_gonality(std::size_t n, double c_prime, double a_exponent) {
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    if (c_prime <= 0) throw std::invalid_argument("c' must be positive");
    if (a_exponent < 0) throw std::invalid_argument("A must be nonnegative");
    return c_prime * static_cast<double>(n) /
           std::pow(std::log(2.0 * static_cast<double>(n)), 2.0 * a_exponent);
}

}  // namespace esper::surfaces
