// Shared value types for the multi-job scheduling simulator.

#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace fairfedjs {

/// Index m of a dataset type, in [0, M).
struct DataTypeId {
    int value = 0;

    constexpr DataTypeId() = default;
    constexpr explicit DataTypeId(int v) : value(v) {}
    constexpr auto operator<=>(const DataTypeId&) const = default;
};

using ClientId = int;
using JobId = int;

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// One dataset a client owns, plus the bookkeeping the mechanism keeps for it.
///
/// `quality` has no counterpart in the scheduling mechanism. It only drives the
/// synthetic training oracle (probability that an update from this holding
/// improves the global model).
struct DatasetHolding {
    double cost = 1.0;
    double quality = 1.0;
    std::uint64_t rep_success = 0;
    std::uint64_t rep_failure = 0;
    std::map<JobId, std::uint64_t> selection_counts;

    std::uint64_t selections_for(JobId job) const {
        auto it = selection_counts.find(job);
        return it == selection_counts.end() ? 0 : it->second;
    }

    bool operator==(const DatasetHolding&) const = default;
};

struct ClientProfile {
    ClientId client_id = 0;
    std::map<DataTypeId, DatasetHolding> datasets;

    bool holds(DataTypeId m) const { return datasets.contains(m); }

    const DatasetHolding& holding(DataTypeId m) const { return datasets.at(m); }
    DatasetHolding& holding(DataTypeId m) { return datasets.at(m); }

    bool operator==(const ClientProfile&) const = default;
};

struct OracleParams {
    double acc_cap = 0.9;
    double gain_rate = 0.1;
    double noise_std = 0.0;
    double noniid_penalty = 0.0;
    double initial_accuracy = 0.1;

    bool operator==(const OracleParams&) const = default;
};

struct JobSpec {
    JobId job_id = 0;
    DataTypeId data_type;
    int demand = 1;
    // Drawn from the configured lattice when absent.
    std::optional<double> initial_payment;
    // Falls back to SimConfig::oracle when absent.
    std::optional<OracleParams> oracle;

    bool operator==(const JobSpec&) const = default;
};

struct JobState {
    double payment = 0.0;
    double payment_prev = 0.0;
    double utility = 0.0;
    double utility_prev = 0.0;
    // Sign of the most recent nonzero price move; the first move probes upward.
    int price_direction = +1;
    double accuracy = 0.0;
    int rounds_completed = 0;

    bool operator==(const JobState&) const = default;
};

/// Virtual queues. `per_type[m]` is Q_m, `per_job[k]` is the share Q_{k,m} of job k
/// on its own data type.
struct QueueState {
    std::vector<double> per_type;
    std::vector<double> per_job;

    bool operator==(const QueueState&) const = default;
};

enum class SchedulerKind { FairFedJS, Random, ALT, UB, MJFL };
enum class DataRegime { IID, NonIID };
enum class JsiQueueMode { PerJob, PerType };
enum class PriceTieRule { Freeze, ContinueLastDirection };

std::string to_string(SchedulerKind kind);
SchedulerKind parse_scheduler(const std::string& name);
std::string to_string(DataRegime regime);
DataRegime parse_data_regime(const std::string& name);
std::string to_string(JsiQueueMode mode);
JsiQueueMode parse_jsi_queue_mode(const std::string& name);
std::string to_string(PriceTieRule rule);
PriceTieRule parse_price_tie_rule(const std::string& name);

/// A block of identical-shape clients: `count` clients each holding every type in `types`.
struct PopulationGroup {
    int count = 0;
    std::vector<int> types;

    bool operator==(const PopulationGroup&) const = default;
};

struct Range {
    double lo = 0.0;
    double hi = 0.0;

    bool operator==(const Range&) const = default;
};

struct PaymentLattice {
    double min = 10.0;
    double max = 30.0;
    double step = 2.0;

    bool operator==(const PaymentLattice&) const = default;
};

struct SimConfig {
    int num_clients = 0;
    int num_types = 1;
    std::vector<JobSpec> jobs;
    int rounds = 1;
    double sigma = 1.0;
    double beta = 0.5;
    double delta = 2.0;
    double payment_min = 2.0;
    double payment_max = 100.0;
    SchedulerKind scheduler = SchedulerKind::FairFedJS;
    OracleParams oracle;
    DataRegime data_regime = DataRegime::IID;
    std::uint64_t seed = 0;

    std::vector<PopulationGroup> population;
    Range cost_range{1.0, 3.0};
    Range quality_range{0.5, 1.0};
    PaymentLattice initial_payment_lattice;
    JsiQueueMode jsi_queue_mode = JsiQueueMode::PerJob;
    PriceTieRule price_tie_rule = PriceTieRule::Freeze;
    double convergence_epsilon = 0.005;
    int convergence_window = 10;

    const OracleParams& oracle_for(const JobSpec& job) const {
        return job.oracle ? *job.oracle : oracle;
    }

    bool operator==(const SimConfig&) const = default;
};

/// Immutable record of one executed round. Per-job vectors are indexed by job id,
/// per-type vectors by data type id.
struct RoundLedger {
    int round = 0;
    std::vector<JobId> schedule;
    std::vector<double> jsi_values;  // empty unless the FairFedJS ordering ran
    std::vector<std::vector<ClientId>> assignments;
    std::vector<int> supply;
    std::vector<double> payments;
    std::vector<double> utilities;
    double revenue = 0.0;
    double system_utility = 0.0;
    QueueState queues_after;
    std::vector<double> accuracies;

    bool operator==(const RoundLedger&) const = default;
};

/// Returns every invariant violation in `config`; empty when valid.
std::vector<std::string> validate_config(const SimConfig& config);

/// Builds the client population and draws any missing initial payments.
///
/// Throws ConfigError when the population groups do not describe exactly
/// `num_clients` clients.
std::vector<ClientProfile> build_population(const SimConfig& config, std::mt19937_64& rng);

/// Uniform draw from the initial payment lattice {min, min+step, ..., max}.
double draw_initial_payment(const PaymentLattice& lattice, std::mt19937_64& rng);

/// Initial payment per job: the configured value, or a lattice draw from `rng`
/// in job order.
std::vector<double> initial_payments(const SimConfig& config, std::mt19937_64& rng);

/// Clients holding type m, in ascending id order.
std::vector<ClientId> holders_of(const std::vector<ClientProfile>& clients, DataTypeId m);

}  // namespace fairfedjs
