#include "esper/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "esper/catalog.hpp"
#include "esper/errors.hpp"
#include "esper/metrics.hpp"
#include "esper/multigraph.hpp"
#include "esper/predicates.hpp"
#include "esper/spectral.hpp"
#include "esper/surfaces.hpp"

namespace esper::pipeline {

namespace {

using algebra::CatalogParams;
using algebra::GeneratorSet;
using algebra::GroupTable;
using graphs::GroupAction;
using graphs::Point;
using graphs::RegularMultigraph;

std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

GroupAction action_from_name(const std::string& name) {
    if (name == "cayley") return GroupAction::left_translation();
    if (name == "projective-line") return GroupAction::projective_line();
    if (name == "nonzero-vectors") return GroupAction::nonzero_vectors();
    if (name == "diagonal-quotient") return GroupAction::diagonal_quotient();
    throw config_error("unknown action '" + name + "'");
}

Point parse_basepoint(const std::string& rule, const GeneratorSet& gens, const GroupAction& action) {
    if (rule == "default") return action.default_basepoint(gens);
    Point raw;
    std::stringstream ss(rule);
    std::string token;
    while (std::getline(ss, token, ',')) raw.push_back(std::stoul(token));
    return action.canonicalize(gens, raw);
}

surfaces::Permutation matrix_permutation(
    const RegularMultigraph& graph, const GroupAction& action, const algebra::MatrixModP& m,
    const std::unordered_map<Point, std::uint32_t, graphs::PointHash>& vertex_of) {
    std::vector<std::uint32_t> images(graph.n);
    for (std::uint32_t v = 0; v < graph.n; ++v) {
        images[v] = vertex_of.at(action.apply(m, graph.labels[v]));
    }
    return surfaces::Permutation(std::move(images));
}

json spectral_json(const spectral::SpectralReport& report) {
    return json{{"value", report.lambda1},
                {"method", report.method},
                {"residual", report.residual},
                {"iterations", report.iterations},
                {"tolerance", report.tolerance},
                {"loop_convention", spectral::SpectralReport::kLoopConvention}};
}

struct MemberOutput {
    json body;
    bool cached = false;
    bool failed = false;
};

MemberOutput compute_member(const ExperimentConfig& cfg, std::uint32_t ell,
                            const std::filesystem::path& cache_dir) {
    MemberOutput out;
    json& member = out.body;
    member["ell"] = ell;
    try {
        CatalogParams params;
        params.ell = ell;
        params.genus = cfg.genus_param;
        params.cap = cfg.cap;
        const GeneratorSet gens = algebra::catalog_generators(cfg.catalog, params);
        const GroupAction action = action_from_name(cfg.action);

        RegularMultigraph graph;
        if (cfg.action == "cayley") {
            graph = graphs::cayley_graph(gens, cfg.cap);
        } else {
            graph = graphs::schreier_graph(gens, action, parse_basepoint(cfg.basepoint, gens, action),
                                           cfg.cap);
        }

        const std::string exported = graphs::export_edge_list(graph);
        const std::string key =
            hex64(graphs::content_hash(exported + "|" + cfg.settings_signature()));
        member["cache_key"] = key;

        const std::filesystem::path cache_file = cache_dir / (key + ".json");
        if (std::filesystem::exists(cache_file)) {
            std::ifstream in(cache_file);
            json stored = json::parse(in, nullptr, false);
            if (!stored.is_discarded() && stored.value("schema_version", -1) == kSchemaVersion &&
                stored.value("cache_key", "") == key) {
                out.body = stored["member"];
                out.cached = true;
                return out;
            }
        }

        member["n"] = graph.n;
        member["r"] = graph.degree;
        member["action"] = graph.action_desc;
        member["catalog"] = graph.catalog_id;

        auto [connected, components] = spectral::connectivity(graph);
        member["connected"] = connected;
        member["components"] = components;

        const spectral::SpectralReport report =
            graph.n <= cfg.dense_threshold
                ? spectral::lambda1_dense(graph, cfg.dense_threshold)
                : spectral::lambda1_iterative(graph, cfg.tol, cfg.max_iter);
        member["lambda1"] = spectral_json(report);

        std::optional<metrics::DiameterResult> diam;
        if (cfg.diameter) {
            diam = metrics::diameter(graph);
            member["diameter"] = json{{"lower", diam->lower},
                                      {"upper", diam->upper},
                                      {"exact", diam->exact},
                                      {"method", diam->method}};
            const auto dsc = metrics::dsc_check(report.lambda1, graph.degree, *diam);
            member["dsc"] = json{{"bound", dsc.bound}, {"pass", dsc.pass}};
        }

        if (cfg.predicates) {
            try {
                const GroupTable table =
                    GroupTable::enumerate(gens, std::min(cfg.cap, cfg.predicate_max_n));
                const GroupTable plus = algebra::plus_subgroup(table, ell);
                member["predicates"] =
                    json{{"group_order", table.size()},
                         {"perfect", algebra::is_perfect(table)},
                         {"order_ell_generated", plus.size() == table.size()},
                         {"index_prime_to_ell", algebra::quotient_index_prime_to_ell(table, ell)}};
            } catch (const cap_exceeded&) {
                member["predicates"] = json{{"skipped", "group larger than predicate_max_n"}};
            }
        }

        if (cfg.genus_mode != "false") {
            const auto monodromy = algebra::catalog_monodromy_generators(cfg.catalog, params);
            if (monodromy) {
                std::unordered_map<Point, std::uint32_t, graphs::PointHash> vertex_of;
                vertex_of.reserve(graph.n);
                for (std::uint32_t v = 0; v < graph.n; ++v) vertex_of.emplace(graph.labels[v], v);

                std::vector<surfaces::Permutation> sigma;
                for (const auto& m : *monodromy) {
                    sigma.push_back(matrix_permutation(graph, action, m, vertex_of));
                }
                surfaces::Permutation product = surfaces::Permutation::identity(graph.n);
                for (const auto& s : sigma) product = product * s;
                sigma.push_back(product.inverse());

                surfaces::CoverDescriptor cd;
                cd.base_genus = 0;
                cd.punctures = static_cast<std::uint32_t>(sigma.size());
                cd.degree = graph.n;
                cd.puncture_monodromy = std::move(sigma);
                const auto genus = surfaces::genus_from_monodromy(cd);
                member["genus"] = json{{"genus", genus.genus},
                                       {"chi_open", genus.chi_open},
                                       {"chi_compact", genus.chi_compact}};
            } else if (cfg.genus_mode == "true") {
                throw config_error("genus = true but catalog '" + cfg.catalog +
                                   "' defines no puncture monodromy");
            }
        }

        if (cfg.interlacing_mode != "false" && cfg.action != "cayley") {
            try {
                const RegularMultigraph parent = graphs::cayley_graph(gens, cfg.cap);
                if (parent.n <= cfg.dense_threshold) {
                    const auto parent_report = spectral::lambda1_dense(parent, cfg.dense_threshold);
                    const bool pass = metrics::interlacing_check(parent, parent_report.lambda1,
                                                                 graph, report.lambda1);
                    member["interlacing"] = json{{"pass", pass},
                                                 {"parent_n", parent.n},
                                                 {"parent_lambda1", parent_report.lambda1}};
                } else if (cfg.interlacing_mode == "true") {
                    const auto parent_report =
                        spectral::lambda1_iterative(parent, cfg.tol, cfg.max_iter);
                    const bool pass = metrics::interlacing_check(parent, parent_report.lambda1,
                                                                 graph, report.lambda1);
                    member["interlacing"] = json{{"pass", pass},
                                                 {"parent_n", parent.n},
                                                 {"parent_lambda1", parent_report.lambda1}};
                } else {
                    member["interlacing"] = json{{"skipped", "parent above dense threshold"}};
                }
            } catch (const cap_exceeded&) {
                member["interlacing"] = json{{"skipped", "parent group exceeds cap"}};
            }
        }

        std::filesystem::create_directories(cache_dir);
        std::ofstream cache_out(cache_file);
        cache_out << json{{"schema_version", kSchemaVersion}, {"cache_key", key}, {"member", member}}
                         .dump(2);
    } catch (const config_error&) {
        throw;
    } catch (const std::exception& e) {
        member["error"] = e.what();
        out.failed = true;
    }
    return out;
}

json config_echo(const ExperimentConfig& cfg) {
    json family{{"id", cfg.family_id},  {"catalog", cfg.catalog}, {"ell", cfg.ells},
                {"genus_param", cfg.genus_param}, {"action", cfg.action},
                {"basepoint", cfg.basepoint}};
    json solver{{"tol", cfg.tol},
                {"max_iter", cfg.max_iter},
                {"dense_threshold", cfg.dense_threshold},
                {"cap", cfg.cap}};
    json metrics_cfg{{"diameter", cfg.diameter},
                     {"predicates", cfg.predicates},
                     {"predicate_max_n", cfg.predicate_max_n},
                     {"genus", cfg.genus_mode},
                     {"interlacing", cfg.interlacing_mode}};
    json chain{{"c_B", cfg.burger_constant}, {"A_grid", cfg.a_grid}, {"log", "natural"}};
    return json{{"family", family}, {"solver", solver}, {"metrics", metrics_cfg}, {"chain", chain}};
}

json family_section(const ExperimentConfig& cfg, const json& members) {
    json family;
    family["id"] = cfg.family_id;

    metrics::FamilyRecord fam;
    fam.family_id = cfg.family_id;
    for (const auto& m : members) {
        if (m.contains("error") || !m.contains("lambda1")) continue;
        metrics::FamilyMember member;
        member.index = m["ell"].get<double>();
        member.n = m["n"].get<std::size_t>();
        member.lambda1 = m["lambda1"]["value"].get<double>();
        if (m.contains("diameter") && m["diameter"]["exact"].get<bool>()) {
            member.diameter = m["diameter"]["lower"].get<std::uint32_t>();
        }
        if (m.contains("genus")) member.genus = m["genus"]["genus"].get<std::int64_t>();
        fam.members.push_back(member);
    }

    std::optional<metrics::EsperantistFit> fit;
    if (fam.members.size() >= 3) {
        fit = metrics::esperantist_fit(fam, cfg.a_grid);
        json rows = json::array();
        for (const auto& row : fit->rows) {
            rows.push_back(json{{"exponent", row.exponent},
                                {"constant", row.constant},
                                {"nondecreasing", row.nondecreasing}});
        }
        family["fit"] = json{{"exponent", fit->exponent},
                             {"constant", fit->constant},
                             {"trend_ok", fit->trend_ok},
                             {"log", metrics::EsperantistFit::kLogBase},
                             {"witnesses", fit->witnesses},
                             {"rows", rows},
                             {"expander_row",
                              json{{"exponent", fit->expander_row.exponent},
                                   {"constant", fit->expander_row.constant},
                                   {"nondecreasing", fit->expander_row.nondecreasing}}}};
    } else {
        family["fit"] = json{{"skipped", "needs at least 3 members"}};
    }

    const bool all_genus = !fam.members.empty() &&
                           std::all_of(fam.members.begin(), fam.members.end(),
                                       [](const auto& m) { return m.genus.has_value(); });
    if (all_genus) {
        const auto kelner = metrics::kelner_ratio(fam);
        family["kelner"] = json{{"ratios", kelner.ratios},
                                {"max_ratio", kelner.max_ratio},
                                {"min_ratio", kelner.min_ratio},
                                {"bounded_ok", kelner.bounded_ok},
                                {"trend_ok", kelner.trend_ok},
                                {"slack", kelner.slack}};

        json certs = json::array();
        for (const auto& m : fam.members) {
            std::optional<surfaces::FitInputs> fit_inputs;
            if (fit) fit_inputs = surfaces::FitInputs{m.n, fit->constant, fit->exponent};
            const auto cert = surfaces::gonality_chain(m.lambda1, cfg.burger_constant,
                                                       m.genus.value(), fit_inputs);
            json cert_json{{"ell", m.index},
                           {"lambda1_graph", cert.lambda1_graph},
                           {"c_B", cert.comparison_constant},
                           {"genus", cert.genus},
                           {"lambda1_surface", cert.lambda1_surface},
                           {"area", cert.area},
                           {"gonality_lower", cert.gonality_lower},
                           {"vacuous", cert.vacuous},
                           {"replay_deviation", cert.replay()},
                           {"assumption", cert.assumption_note},
                           {"audit", cert.audit}};
            if (cert.fit) cert_json["quantitative_lower"] = cert.quantitative_lower;
            certs.push_back(cert_json);
        }
        family["certificates"] = certs;
    }

    // genus growth diagnostic: genus * (log 2n)^A / n with the fitted A stays
    // bounded away from zero on a healthy family
    if (all_genus && fit) {
        json values = json::array();
        double lowest = std::numeric_limits<double>::infinity();
        for (const auto& m : fam.members) {
            const double v = static_cast<double>(*m.genus) *
                             std::pow(std::log(2.0 * static_cast<double>(m.n)), fit->exponent) /
                             static_cast<double>(m.n);
            values.push_back(v);
            lowest = std::min(lowest, v);
        }
        family["genus_growth"] =
            json{{"exponent", fit->exponent}, {"values", values}, {"min", lowest}};
    }

    // diameter growth diagnostics: diam / (log n)^p for p = 1, 2, 3
    json curves;
    for (int p = 1; p <= 3; ++p) {
        json values = json::array();
        for (const auto& m : fam.members) {
            if (!m.diameter) continue;
            values.push_back(static_cast<double>(*m.diameter) /
                             std::pow(std::log(static_cast<double>(m.n)), p));
        }
        curves["p" + std::to_string(p)] = values;
    }
    family["diameter_curves"] = curves;
    return family;
}

}  // namespace

std::filesystem::path resolve_cache_dir(const ExperimentConfig& cfg) {
    if (const char* env = std::getenv("ESPER_CACHE_DIR"); env && *env) {
        return std::filesystem::path(env);
    }
    return std::filesystem::path(cfg.cache_dir);
}

RunResult run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const std::filesystem::path cache_dir = resolve_cache_dir(cfg);
    std::filesystem::create_directories(cache_dir);

    const auto t0 = std::chrono::steady_clock::now();
    json members = json::array();
    json member_ms;
    int cache_hits = 0;
    int failed = 0;

    for (std::uint32_t ell : cfg.ells) {
        const auto m0 = std::chrono::steady_clock::now();
        MemberOutput out = compute_member(cfg, ell, cache_dir);
        const auto m1 = std::chrono::steady_clock::now();
        if (out.cached) ++cache_hits;
        if (out.failed) ++failed;
        members.push_back(out.body);
        member_ms[std::to_string(ell)] =
            std::chrono::duration<double, std::milli>(m1 - m0).count();
    }

    json body;
    body["config"] = config_echo(cfg);
    body["members"] = members;
    body["family"] = family_section(cfg, members);

    const auto t1 = std::chrono::steady_clock::now();
    json run{{"member_ms", member_ms},
             {"cache_hits", cache_hits},
             {"failed_members", failed},
             {"total_ms", std::chrono::duration<double, std::milli>(t1 - t0).count()}};

    RunResult result;
    result.record = json{{"schema_version", kSchemaVersion},
                         {"artifact_version", kArtifactVersion},
                         {"body", body},
                         {"run", run}};
    result.failed_members = failed;
    return result;
}

ReportFormat parse_format(const std::string& name) {
    if (name == "tabular") return ReportFormat::tabular;
    if (name == "structured") return ReportFormat::structured;
    if (name == "plotdata") return ReportFormat::plotdata;
    throw config_error("unknown report format '" + name + "'");
}

namespace {

std::string tabular_report(const json& record) {
    std::ostringstream os;
    os.precision(17);
    os << "# esper-record schema=" << record.value("schema_version", 0) << "\n";
    os << "ell,n,r,lambda1,residual,diam,perfect,order_ell_gen,genus,dsc_pass,interlace_pass\n";
    for (const auto& m : record["body"]["members"]) {
        if (m.contains("error")) continue;
        os << m["ell"].get<std::uint64_t>() << "," << m["n"].get<std::uint64_t>() << ","
           << m["r"].get<std::uint64_t>() << "," << m["lambda1"]["value"].get<double>() << ","
           << m["lambda1"]["residual"].get<double>() << ",";
        if (m.contains("diameter") && m["diameter"]["exact"].get<bool>()) {
            os << m["diameter"]["lower"].get<std::uint64_t>();
        }
        os << ",";
        if (m.contains("predicates") && m["predicates"].contains("perfect")) {
            os << (m["predicates"]["perfect"].get<bool>() ? "true" : "false") << ","
               << (m["predicates"]["order_ell_generated"].get<bool>() ? "true" : "false") << ",";
        } else {
            os << ",,";
        }
        if (m.contains("genus")) os << m["genus"]["genus"].get<std::int64_t>();
        os << ",";
        if (m.contains("dsc")) os << (m["dsc"]["pass"].get<bool>() ? "true" : "false");
        os << ",";
        if (m.contains("interlacing") && m["interlacing"].contains("pass")) {
            os << (m["interlacing"]["pass"].get<bool>() ? "true" : "false");
        }
        os << "\n";
    }
    return os.str();
}

std::string plotdata_report(const json& record) {
    std::ostringstream os;
    os.precision(17);
    const json& family = record["body"]["family"];
    const bool has_fit = family.contains("fit") && family["fit"].contains("exponent");
    os << "# esper-plotdata schema=" << record.value("schema_version", 0) << " log=natural";
    if (has_fit) {
        os << " fit_exponent=" << family["fit"]["exponent"].get<double>()
           << " fit_constant=" << family["fit"]["constant"].get<double>();
    }
    os << "\n# columns: x=log(2n) y=log(lambda1)" << (has_fit ? " yref=log(c)-A*log(x)" : "")
       << "\n";
    for (const auto& m : record["body"]["members"]) {
        if (m.contains("error") || !m.contains("lambda1")) continue;
        const double x = std::log(2.0 * m["n"].get<double>());
        const double y = std::log(m["lambda1"]["value"].get<double>());
        os << x << " " << y;
        if (has_fit) {
            const double a = family["fit"]["exponent"].get<double>();
            const double c = family["fit"]["constant"].get<double>();
            os << " " << std::log(c) - a * std::log(x);
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace

std::string render_report(const json& record, ReportFormat fmt) {
    switch (fmt) {
        case ReportFormat::tabular: return tabular_report(record);
        case ReportFormat::structured: return record.dump(2) + "\n";
        case ReportFormat::plotdata: return plotdata_report(record);
    }
    throw std::logic_error("unreachable");
}

void write_report(const json& record, ReportFormat fmt, const std::filesystem::path& out) {
    if (!out.parent_path().empty()) std::filesystem::create_directories(out.parent_path());
    std::ofstream file(out);
    if (!file) throw std::runtime_error("cannot write " + out.string());
    file << render_report(record, fmt);
}

CacheGcStats cache_gc(const std::filesystem::path& dir, bool all) {
    CacheGcStats stats;
    if (!std::filesystem::exists(dir)) return stats;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.path().extension() != ".json") continue;
        ++stats.scanned;
        bool remove = all;
        if (!remove) {
            std::ifstream in(entry.path());
            json stored = json::parse(in, nullptr, false);
            remove = stored.is_discarded() || stored.value("schema_version", -1) != kSchemaVersion;
        }
        if (remove) {
            std::filesystem::remove(entry.path());
            ++stats.removed;
        }
    }
    return stats;
}

}  // namespace esper::pipeline
