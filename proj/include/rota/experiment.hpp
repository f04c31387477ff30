#pragma once

// Monte-Carlo sweep over family sizes: sample a family per trial, attempt a
// decomposition, and emit a fixed-schema CSV plus a JSON summary.  Output
// bytes depend only on the config, never on scheduling.

#include <cstdint>
#include <string>
#include <vector>

#include "rota/decompose.hpp"
#include "rota/serial.hpp"
#include "rota/tspec.hpp"

namespace rota {

struct ExperimentConfig {
    FieldSpec field = FieldSpec::prime(2);
    // Template for the per-n set: the kind and entries are kept, the
    // dimension (vertex count for graphic) is replaced by each n.
    TSpec tspec = TSpec::full_space(1);
    std::vector<std::uint32_t> ns;
    std::uint32_t trials = 100;
    DecomposeMode mode = DecomposeMode::Full;
    std::uint32_t retries = 3;
    std::uint64_t seed = 0;
    // 0 = success columns only, 1 = + degree stats, 2 = + bad-pair scan.
    int diag_level = 1;
    // Wall-time column; off by default because it breaks byte-reproducibility.
    bool include_timing = false;
    std::uint32_t bad_L = 2; // level-2 scan: max |H|
    std::uint32_t bad_K = 2; // level-2 scan: max truncation depth
    std::uint64_t rejection_budget = 10'000;
};

struct TrialRecord {
    std::uint32_t n = 0;
    std::uint32_t trial = 0;
    std::uint64_t seed = 0; // derived from (master seed, n, trial)
    bool success_first = false;
    bool success_final = false;
    std::uint32_t retries_used = 0;
    std::uint32_t min_deg_left = 0;
    std::uint32_t min_deg_right = 0;
    double density = 0.0;
    std::uint32_t failure_deficiency = 0; // |deficient set| when matching failed
    std::uint64_t ms = 0;
    bool fault = false;            // sampler/decomposer fault; summary only
    std::uint64_t bad_pairs = 0;   // summary only (diag level 2)
    bool bad_scan_complete = true; // summary only
};

struct ExperimentResult {
    std::vector<TrialRecord> records; // sorted by (n, trial)
    std::string csv;                  // schema-tagged, v1
    Json summary;
};

// The substituted dimension must be valid for the template kind; explicit
// sets cannot be resized.
TSpec tspec_with_n(const TSpec& base, std::uint32_t n);

// 95% Wilson score interval for `successes` out of `n`; contains the raw
// proportion for every n >= 1.
std::pair<double, double> wilson95(std::uint32_t successes, std::uint32_t n);

std::uint64_t derived_trial_seed(std::uint64_t master, std::uint32_t n, std::uint32_t trial);

// Worker count: ROTA_WORKERS when set (>= 1), else available parallelism.
unsigned worker_count();

ExperimentResult run_experiment(const ExperimentConfig& cfg);

struct AuditReport {
    std::uint64_t rows = 0;
    std::uint64_t successes_verified = 0;
    std::vector<std::string> mismatches; // empty iff the artifact is faithful
    bool ok() const { return mismatches.empty(); }
};

// Post-hoc audit: parse the emitted CSV, re-run every row from its recorded
// seed, verify each claimed success's decomposition, and compare the row's
// fields against the recomputation.
AuditReport audit_csv(const ExperimentConfig& cfg, const std::string& csv_text);

} // namespace rota
