#include "esper/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "esper/errors.hpp"
#include "esper/spectral.hpp"

namespace esper::metrics {

using graphs::RegularMultigraph;

namespace {

// eccentricity of source by BFS; returns UINT32_MAX if the graph is disconnected
std::uint32_t eccentricity(const RegularMultigraph& g, std::uint32_t source,
                           std::vector<std::uint32_t>& dist, std::vector<std::uint32_t>& queue) {
    constexpr std::uint32_t unseen = std::numeric_limits<std::uint32_t>::max();
    dist.assign(g.n, unseen);
    queue.clear();
    dist[source] = 0;
    queue.push_back(source);
    std::uint32_t ecc = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::uint32_t v = queue[head];
        for (std::uint32_t j = 0; j < g.degree; ++j) {
            const std::uint32_t w = g.neighbor(v, j);
            if (dist[w] == unseen) {
                dist[w] = dist[v] + 1;
                ecc = std::max(ecc, dist[w]);
                queue.push_back(w);
            }
        }
    }
    if (queue.size() != g.n) return unseen;
    return ecc;
}

}  // namespace

DiameterResult diameter(const RegularMultigraph& g, std::size_t exact_guard) {
    if (g.n == 0) throw std::invalid_argument("empty graph");
    auto [connected, components] = spectral::connectivity(g);
    if (!connected) throw disconnected_graph(components);

    std::vector<std::uint32_t> dist;
    std::vector<std::uint32_t> queue;
    DiameterResult result;

    if (g.vertex_transitive) {
        const std::uint32_t ecc = eccentricity(g, 0, dist, queue);
        result.lower = result.upper = ecc;
        result.exact = true;
        result.method = "single-source-transitive";
        return result;
    }
    if (g.n <= exact_guard) {
        std::uint32_t diam = 0;
        for (std::uint32_t v = 0; v < g.n; ++v) {
            diam = std::max(diam, eccentricity(g, v, dist, queue));
        }
        result.lower = result.upper = diam;
        result.exact = true;
        result.method = "all-sources";
        return result;
    }

    // sampled bracket: max ecc <= diam <= 2 min ecc, plus a double sweep
    std::uint32_t max_ecc = 0;
    std::uint32_t min_ecc = std::numeric_limits<std::uint32_t>::max();
    std::uint32_t far_vertex = 0;
    const std::uint32_t samples = 16;
    for (std::uint32_t s = 0; s < samples; ++s) {
        const auto source = static_cast<std::uint32_t>(
            (static_cast<std::uint64_t>(s) * g.n) / samples);
        const std::uint32_t ecc = eccentricity(g, source, dist, queue);
        if (ecc > max_ecc) {
            max_ecc = ecc;
            far_vertex = static_cast<std::uint32_t>(
                std::max_element(dist.begin(), dist.end()) - dist.begin());
        }
        min_ecc = std::min(min_ecc, ecc);
    }
    const std::uint32_t sweep = eccentricity(g, far_vertex, dist, queue);
    max_ecc = std::max(max_ecc, sweep);
    min_ecc = std::min(min_ecc, sweep);

    result.lower = max_ecc;
    result.upper = 2 * min_ecc;
    result.exact = result.lower == result.upper;
    result.method = "sampled-bracket";
    return result;
}

DscResult dsc_check(double lambda1, std::uint32_t degree, const DiameterResult& diam, double tol) {
    if (!diam.exact && !diam.has_upper) {
        throw std::invalid_argument(
            "dsc_check needs an exact diameter or a certified upper bound; "
            "a lower bound alone cannot validate the inequality");
    }
    const std::uint32_t d = diam.exact ? diam.lower : diam.upper;
    if (d == 0 || degree == 0) throw std::invalid_argument("degenerate inputs to dsc_check");
    DscResult out;
    out.bound = 1.0 / (static_cast<double>(degree) * d * d);
    out.pass = lambda1 + tol >= out.bound;
    return out;
}

bool interlacing_check(const RegularMultigraph& parent, double parent_lambda1,
                       const RegularMultigraph& quotient, double quotient_lambda1, double tol) {
    if (parent.gens_signature != quotient.gens_signature) {
        throw std::invalid_argument("interlacing_check: the graphs were built from different "
                                    "generator sets");
    }
    return quotient_lambda1 >= parent_lambda1 - tol;
}

void FamilyRecord::validate() const {
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (members[i].lambda1 <= 0) {
            throw std::invalid_argument("family member " + std::to_string(i) +
                                        " has nonpositive lambda1");
        }
        if (i > 0 && members[i].n <= members[i - 1].n) {
            throw std::invalid_argument("family sizes must increase strictly");
        }
    }
}

std::vector<double> default_a_grid() {
    std::vector<double> grid;
    for (int i = 0; i <= 12; ++i) grid.push_back(0.5 * i);
    return grid;
}

EsperantistFit esperantist_fit(const FamilyRecord& fam, const std::vector<double>& a_grid) {
    if (fam.members.size() < 3) throw std::invalid_argument("esperantist_fit needs >= 3 members");
    fam.validate();
    if (a_grid.empty()) throw std::invalid_argument("empty exponent grid");

    auto witnesses_for = [&fam](double a) {
        std::vector<double> w;
        w.reserve(fam.members.size());
        for (const auto& m : fam.members) {
            w.push_back(m.lambda1 * std::pow(std::log(2.0 * static_cast<double>(m.n)), a));
        }
        return w;
    };
    auto nondecreasing = [](const std::vector<double>& w) {
        for (std::size_t i = 1; i < w.size(); ++i) {
            if (w[i] < w[i - 1] * (1.0 - 1e-9)) return false;
        }
        return true;
    };
    auto row_for = [&](double a) {
        const auto w = witnesses_for(a);
        EsperantistFit::Row row;
        row.exponent = a;
        row.constant = *std::min_element(w.begin(), w.end());
        row.nondecreasing = nondecreasing(w);
        return row;
    };

    EsperantistFit fit;
    fit.expander_row = row_for(0.0);
    std::optional<std::size_t> chosen;
    for (std::size_t i = 0; i < a_grid.size(); ++i) {
        fit.rows.push_back(row_for(a_grid[i]));
        if (!chosen && fit.rows.back().nondecreasing) chosen = i;
    }
    const std::size_t pick = chosen.value_or(a_grid.size() - 1);
    fit.exponent = fit.rows[pick].exponent;
    fit.constant = fit.rows[pick].constant;
    fit.trend_ok = chosen.has_value();
    fit.witnesses = witnesses_for(fit.exponent);
    return fit;
}

KelnerReport kelner_ratio(const FamilyRecord& fam, double slack) {
    if (fam.members.empty()) throw std::invalid_argument("empty family");
    KelnerReport report;
    report.slack = slack;
    for (const auto& m : fam.members) {
        if (!m.genus) throw std::invalid_argument("kelner_ratio needs a genus for every member");
        const double denom = static_cast<double>(std::max<std::int64_t>(*m.genus, 1));
        report.ratios.push_back(m.lambda1 * static_cast<double>(m.n) / denom);
    }
    report.max_ratio = *std::max_element(report.ratios.begin(), report.ratios.end());
    report.min_ratio = *std::min_element(report.ratios.begin(), report.ratios.end());
    if (report.ratios.size() >= 2) {
        report.bounded_ok = report.max_ratio <= slack * report.min_ratio;
        const std::size_t half = (report.ratios.size() + 1) / 2;
        const double early_max =
            *std::max_element(report.ratios.begin(), report.ratios.begin() + half);
        report.trend_ok = report.ratios.back() <= slack * early_max;
    }
    return report;
}

}  // namespace esper::metrics
