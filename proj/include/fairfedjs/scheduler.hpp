// Virtual queues, the job scheduling index, and job orderings.

#pragma once

#include <random>
#include <span>
#include <vector>

#include "fairfedjs/domain.hpp"
#include "fairfedjs/economics.hpp"

namespace fairfedjs {

struct ScheduleDecision {
    std::vector<JobId> ordered_jobs;
    std::vector<double> jsi;  // indexed by job id; FairFedJS only

    bool operator==(const ScheduleDecision&) const = default;
};

/// max(0, Q + demand - supply).
constexpr double queue_update(double queue, double demand, double supply) {
    const double next = queue + demand - supply;
    return next > 0.0 ? next : 0.0;
}

/// Advances every type queue with its aggregated demand and supply, and every
/// per-job share with that job's own demand and supply.
///
/// `supplies[k]` is the number of clients assigned to job k this round.
QueueState update_all_queues(const QueueState& queues, std::span<const JobSpec> jobs, std::span<const int> supplies);

/// Per-type demand sum_k n_{k,m}.
std::vector<double> type_demand(std::span<const JobSpec> jobs, int num_types);

/// Per-type supply sum_k a_{k,m}.
std::vector<double> type_supply(std::span<const JobSpec> jobs, std::span<const int> supplies, int num_types);

/// Job scheduling index: -Q_k - sigma*p_k/n_k + sigma*c_m/r_m.
inline double jsi(double queue, double payment, int demand, const TypeAggregates& agg, double sigma) {
    return -queue - sigma * payment / static_cast<double>(demand) + sigma * agg.cost_per_reliability();
}

/// Everything the orderings read about one job at the start of a round.
struct JobView {
    JobId job_id = 0;
    DataTypeId data_type;
    int demand = 1;
    double payment = 0.0;
    double queue = 0.0;  // the queue term fed to the index (per-job share or type queue)
};

/// Sorts jobs by ascending index; equal indices keep ascending job id.
ScheduleDecision order_fairfedjs(std::span<const JobView> jobs, std::span<const TypeAggregates> aggregates,
                                 double sigma);

/// Inputs the baselines may consult.
struct BaselineContext {
    std::span<const JobView> jobs;
    // Order and per-job utilities of the previous round; empty at round 0.
    std::span<const JobId> previous_order;
    std::span<const double> previous_utilities;
    // Reputation scores of every client on each type, for the MJ-FL surrogate.
    const std::vector<ClientProfile>* clients = nullptr;
};

/// Random: uniform permutation. ALT: reverse of the previous order. UB: ascending
/// previous utility. MJFL: descending sum of the n_k highest reputations of the
/// job's type. ALT and UB fall back to id order at round 0.
///
/// Throws std::invalid_argument for FairFedJS, which has its own ordering.
ScheduleDecision order_baseline(SchedulerKind kind, const BaselineContext& ctx, std::mt19937_64& rng);

/// 0.5 * sum_m Q_m^2.
double lyapunov_value(std::span<const double> queues);

/// 0.5 * mu_max^2 + 0.5 * a_max^2.
constexpr double drift_bound_theta(double max_demand, double max_supply) {
    return 0.5 * max_demand * max_demand + 0.5 * max_supply * max_supply;
}

}  // namespace fairfedjs
