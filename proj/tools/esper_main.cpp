// esper command line: family sweeps over congruence quotients, spectral gap
// metrics, and the genus/gonality bound chain.
//
//   esper run <config> [--record out.json]
//   esper check <config>
//   esper report <record.json> --format tabular|structured|plotdata [--out file]
//   esper cache gc [--dir path] [--all]
//
// Exit codes: 0 success, 1 config error, 2 partial member failures, 3 internal.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "esper/errors.hpp"
#include "esper/pipeline.hpp"

namespace {

int run_command(const std::string& config_path, const std::string& record_override) {
    auto cfg = esper::pipeline::parse_config_file(config_path);
    cfg.validate();
    if (!record_override.empty()) cfg.record_path = record_override;

    const auto result = esper::pipeline::run_experiment(cfg);
    const std::string text = result.record.dump(2) + "\n";
    if (!cfg.record_path.empty()) {
        std::filesystem::path out(cfg.record_path);
        if (!out.parent_path().empty()) std::filesystem::create_directories(out.parent_path());
        std::ofstream file(out);
        if (!file) throw std::runtime_error("cannot write " + cfg.record_path);
        file << text;
        std::cout << "record written to " << cfg.record_path << "\n";
    } else {
        std::cout << text;
    }

    const auto& run = result.record["run"];
    std::cout << "members: " << result.record["body"]["members"].size()
              << ", cache hits: " << run["cache_hits"] << ", failed: " << run["failed_members"]
              << ", total: " << run["total_ms"].get<double>() << " ms\n";
    return result.failed_members > 0 ? 2 : 0;
}

int check_command(const std::string& config_path) {
    const auto cfg = esper::pipeline::parse_config_file(config_path);
    cfg.validate();
    std::cout << "config ok: family '" << cfg.family_id << "', catalog " << cfg.catalog
              << ", action " << cfg.action << ", " << cfg.ells.size() << " member(s):";
    for (auto l : cfg.ells) std::cout << " " << l;
    std::cout << "\ncache dir: " << esper::pipeline::resolve_cache_dir(cfg).string() << "\n";
    return 0;
}

int report_command(const std::string& record_path, const std::string& format,
                   const std::string& out) {
    std::ifstream in(record_path);
    if (!in) throw esper::config_error("cannot read record file " + record_path);
    const auto record = esper::pipeline::json::parse(in);
    const auto fmt = esper::pipeline::parse_format(format);
    if (out.empty()) {
        std::cout << esper::pipeline::render_report(record, fmt);
    } else {
        esper::pipeline::write_report(record, fmt, out);
        std::cout << "report written to " << out << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cayley/Schreier spectral gap sweeps with genus and gonality bound chains"};
    app.require_subcommand(1);

    std::string config_path;
    std::string record_override;
    auto* run = app.add_subcommand("run", "run an experiment config");
    run->add_option("config", config_path, "config file")->required();
    run->add_option("--record", record_override, "override the record output path");

    std::string check_path;
    auto* check = app.add_subcommand("check", "validate a config without running it");
    check->add_option("config", check_path, "config file")->required();

    std::string record_path, format = "tabular", report_out;
    auto* report = app.add_subcommand("report", "render a stored result record");
    report->add_option("record", record_path, "record JSON file")->required();
    report->add_option("--format", format, "tabular | structured | plotdata");
    report->add_option("--out", report_out, "output file (stdout when omitted)");

    std::string cache_dir = ".esper-cache";
    bool cache_all = false;
    auto* cache = app.add_subcommand("cache", "cache maintenance");
    auto* gc = cache->add_subcommand("gc", "drop stale cache entries");
    auto* dir_opt = gc->add_option("--dir", cache_dir, "cache directory");
    gc->add_flag("--all", cache_all, "remove every entry, not just stale ones");
    cache->require_subcommand(1);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return run_command(config_path, record_override);
        if (check->parsed()) return check_command(check_path);
        if (report->parsed()) return report_command(record_path, format, report_out);
        if (cache->parsed()) {
            if (const char* env = std::getenv("ESPER_CACHE_DIR");
                env && *env && dir_opt->count() == 0) {
                cache_dir = env;
            }
            const auto stats = esper::pipeline::cache_gc(cache_dir, cache_all);
            std::cout << "cache gc: scanned " << stats.scanned << ", removed " << stats.removed
                      << "\n";
            return 0;
        }
    } catch (const esper::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 3;
}
