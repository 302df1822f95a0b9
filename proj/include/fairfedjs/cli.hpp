// Subcommand implementations behind the fairfedjs tool.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fairfedjs/domain.hpp"
#include "fairfedjs/io.hpp"

namespace fairfedjs::cli {

/// Exit status for unreadable or invalid inputs.
constexpr int kExitInputError = 2;

/// Environment variable consulted for the output directory when --out is absent.
inline constexpr const char* kOutDirEnv = "FAIRFEDJS_OUT_DIR";

struct ExperimentManifest {
    std::string config_path;
    std::string output_dir;
    std::vector<std::uint64_t> seeds;
    std::vector<SchedulerKind> schedulers;
    bool write_snapshots = false;
};

/// --out wins, then the environment variable, then "out".
std::string resolve_output_dir(const std::optional<std::string>& flag);

/// Fills empty seed/scheduler lists from the config.
ExperimentManifest complete_manifest(ExperimentManifest manifest, const SimConfig& config);

/// Writes ledger_<sched>_<seed>.jsonl per cell and summary.csv.
int cmd_run(const ExperimentManifest& manifest, std::ostream& out, std::ostream& err);

/// Runs every scheduler on shared seeds and writes comparison.csv next to the
/// run outputs. Defaults to all five schedulers.
int cmd_compare(ExperimentManifest manifest, std::ostream& out, std::ostream& err);

/// Reports the index of every job in a snapshot and how one job's rank moves
/// under a hypothetical payment.
int cmd_whatif(const std::string& snapshot_path, JobId job, double payment, std::ostream& out, std::ostream& err);

/// Prints violations; 0 when the config is valid.
int cmd_validate(const std::string& config_path, std::ostream& out, std::ostream& err);

struct WhatIfReport {
    std::vector<double> jsi;       // by job id
    std::vector<int> rank;         // 1-based position in the ascending order, by job id
    double new_jsi = 0.0;
    int new_rank = 0;
};

/// Throws std::out_of_range for an unknown job id.
WhatIfReport what_if(const StateSnapshot& snapshot, JobId job, double payment);

struct ComparisonRow {
    SchedulerKind scheduler;
    double mean_sf = 0.0;
    std::optional<double> mean_convergence_round;  // over seeds that converged
    int converged_runs = 0;
    double mean_final_accuracy = 0.0;
};

std::string comparison_csv(const std::vector<ComparisonRow>& rows);

}  // namespace fairfedjs::cli
