#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace esper::pipeline {

/**
 * Declarative description of a family sweep. Parsed from a flat INI-style
 * file with [family], [solver], [metrics], [chain] and [output] sections;
 * keys are listed next to the fields below. Unknown keys are rejected.
 */
struct ExperimentConfig {
    // [family]
    std::string family_id;                // id (optional; defaults to catalog-action)
    std::string catalog;                  // catalog
    std::vector<std::uint32_t> ells;      // ell = "3..31" (primes in range) or "3,5,7"
    std::uint32_t genus_param = 1;        // genus_param (g for sp2g kinds)
    std::string action = "cayley";        // action = cayley | projective-line |
                                          //          nonzero-vectors | diagonal-quotient
    std::string basepoint = "default";    // basepoint = default | comma-separated residues

    // [solver]
    double tol = 1e-9;                    // tol
    int max_iter = 50000;                 // max_iter
    std::uint32_t dense_threshold = 3000; // dense_threshold
    std::size_t cap = 2000000;            // cap

    // [metrics]
    bool diameter = true;                 // diameter
    bool predicates = true;               // predicates
    std::size_t predicate_max_n = 4000;   // predicate_max_n (group size guard)
    std::string genus_mode = "auto";      // genus = auto | true | false
    std::string interlacing_mode = "auto";// interlacing = auto | true | false

    // [chain]  (log base fixed to natural)
    double burger_constant = 1.0;         // c_B
    std::vector<double> a_grid;           // A_grid = "0:0.5:6" or comma list

    // [output]
    std::string record_path;              // record
    std::string cache_dir = ".esper-cache"; // cache_dir (ESPER_CACHE_DIR overrides)

    void validate() const;  // throws config_error

    /// Canonical string of every setting that affects per-member metric
    /// values; part of the member cache key.
    std::string settings_signature() const;
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::filesystem::path& path);

}  // namespace esper::pipeline
