#pragma once

#include <optional>
#include <string>
#include <vector>

#include "esper/multigraph.hpp"

namespace esper::metrics {

struct DiameterResult {
    std::uint32_t lower = 0;
    std::uint32_t upper = 0;
    bool exact = false;
    bool has_upper = true;  // sampled lower-only brackets carry no usable upper bound
    std::string method;     // "single-source-transitive" | "all-sources" | "sampled-bracket"
};

/// Exact diameter where affordable: one BFS for vertex-transitive graphs,
/// all-sources BFS up to exact_guard vertices. Larger graphs get a certified
/// bracket: max sampled eccentricity <= diam <= 2 * min sampled eccentricity.
DiameterResult diameter(const graphs::RegularMultigraph& g, std::size_t exact_guard = 100000);

struct DscResult {
    double bound = 0;  // 1 / (r * diam^2)
    bool pass = false;
};

/// lambda1 >= 1 / (|S| diam^2). The bound shrinks as diam grows, so only an
/// exact diameter or a certified upper bound is accepted.
DscResult dsc_check(double lambda1, std::uint32_t degree, const DiameterResult& diam,
                    double tol = 1e-9);

/// Quotient spectra sit inside the parent spectrum, so
/// lambda1(quotient) >= lambda1(parent). Both graphs must come from the same
/// generator set.
bool interlacing_check(const graphs::RegularMultigraph& parent, double parent_lambda1,
                       const graphs::RegularMultigraph& quotient, double quotient_lambda1,
                       double tol = 1e-8);

struct FamilyMember {
    double index = 0;  // ell, or a running index
    std::size_t n = 0;
    double lambda1 = 0;
    std::optional<std::uint32_t> diameter;
    std::optional<std::int64_t> genus;
};

struct FamilyRecord {
    std::string family_id;
    std::vector<FamilyMember> members;  // n strictly increasing

    void validate() const;  // throws std::invalid_argument
};

/**
 * Fit of lambda1(i) >= c / (log 2n_i)^A over a fixed grid of exponents A.
 * For each A the constant is c(A) = min_i lambda1(i) * (log 2n_i)^A, and the
 * chosen A is the smallest grid value whose witness sequence is non-decreasing
 * in i. The choice is a diagnosis, not a proof: the bound is asymptotic and a
 * finite family cannot certify it. The A = 0 row (expander diagnosis) is
 * always reported. Natural logarithm throughout.
 */
struct EsperantistFit {
    struct Row {
        double exponent = 0;
        double constant = 0;
        bool nondecreasing = false;
    };

    double exponent = 0;            // chosen A
    double constant = 0;            // c(A)
    bool trend_ok = false;          // false when no grid row is non-decreasing
    std::vector<double> witnesses;  // per member, at the chosen A
    std::vector<Row> rows;          // the full grid
    Row expander_row;               // A = 0

    static constexpr const char* kLogBase = "natural";
};

std::vector<double> default_a_grid();  // 0, 0.5, ..., 6
EsperantistFit esperantist_fit(const FamilyRecord& fam,
                               const std::vector<double>& a_grid = default_a_grid());

/// Per-member ratios lambda1 * n / max(genus, 1). The family check requires
/// max/min <= slack and that the last ratio does not exceed the running
/// maximum of the first half by more than the slack.
struct KelnerReport {
    std::vector<double> ratios;
    double max_ratio = 0;
    double min_ratio = 0;
    bool bounded_ok = true;
    bool trend_ok = true;
    double slack = 0;
};

KelnerReport kelner_ratio(const FamilyRecord& fam, double slack = 10.0);

}  // namespace esper::metrics
