// JSON and CSV serialisation for configs, ledgers, summaries and snapshots.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "fairfedjs/domain.hpp"
#include "fairfedjs/economics.hpp"
#include "fairfedjs/metrics.hpp"
#include "fairfedjs/simulator.hpp"

namespace fairfedjs {

using json = nlohmann::json;

/// Parses a config document. Unknown keys and type mismatches throw ConfigError.
/// Fields left out keep their SimConfig defaults.
SimConfig config_from_json(const json& doc);
json config_to_json(const SimConfig& config);
SimConfig load_config(const std::string& path);

/// Experiment grid used throughout the evaluation: two data types, three jobs
/// per type with ten clients each, 50 clients split 20/20/10, 150 rounds.
SimConfig reference_config();

json ledger_to_json(const RoundLedger& ledger);
RoundLedger ledger_from_json(const json& doc);

/// Writes one compact JSON object per line.
void write_ledgers(std::ostream& out, const std::vector<RoundLedger>& ledgers);

/// Shortest round-trip decimal form.
std::string format_double(double x);

std::string summary_csv_header(std::size_t num_jobs);
std::string summary_csv_row(SchedulerKind kind, std::uint64_t seed, const RunSummary& summary);

/// What the index needs to rank jobs at the start of the next round.
struct JobSnapshot {
    JobId job_id = 0;
    DataTypeId data_type;
    int demand = 1;
    double payment = 0.0;
    double queue = 0.0;
};

struct StateSnapshot {
    int round = 0;
    double sigma = 1.0;
    std::vector<JobSnapshot> jobs;
    std::vector<TypeAggregates> aggregates;
};

StateSnapshot make_snapshot(const SimState& state, const SimConfig& config);
json snapshot_to_json(const StateSnapshot& snap);
StateSnapshot snapshot_from_json(const json& doc);

}  // namespace fairfedjs
