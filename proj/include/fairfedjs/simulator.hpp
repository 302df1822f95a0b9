// Round loop: pricing, ordering, selection, training, bookkeeping.

#pragma once

#include <vector>

#include "fairfedjs/domain.hpp"
#include "fairfedjs/oracle.hpp"

namespace fairfedjs {

struct SimState {
    int round = 0;
    std::vector<ClientProfile> clients;
    std::vector<JobState> jobs;
    QueueState queues;
    std::vector<JobId> previous_order;  // empty before round 0

    bool operator==(const SimState&) const = default;
};

/// Seeded state at round 0. Throws ConfigError listing violations for an invalid config.
SimState initial_state(const SimConfig& config);

struct RoundResult {
    SimState next;
    RoundLedger ledger;
};

/// Runs one round on `state`. The scheduler comes from `config.scheduler`.
RoundResult run_round(const SimState& state, const SimConfig& config, const TrainingOracle& oracle);
RoundResult run_round(const SimState& state, const SimConfig& config);

/// All T ledgers. `final_state`, when given, receives the state after the last round.
std::vector<RoundLedger> run_simulation(const SimConfig& config, const TrainingOracle& oracle,
                                        SimState* final_state = nullptr);
std::vector<RoundLedger> run_simulation(const SimConfig& config, SimState* final_state = nullptr);

/// The queue term each job feeds to the index under the configured mode.
double jsi_queue_term(const SimState& state, const SimConfig& config, JobId job);

}  // namespace fairfedjs
