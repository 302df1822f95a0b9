// Per-job client selection by reputation minus weighted data fairness.

#pragma once

#include <span>
#include <vector>

#include "fairfedjs/domain.hpp"

namespace fairfedjs {

constexpr double selection_score(double reputation, double fairness, double beta) {
    return reputation - beta * fairness;
}

struct Candidate {
    ClientId client_id = 0;
    double gamma = 0.0;
};

struct SelectionResult {
    std::vector<ClientId> chosen;      // descending gamma, ties by ascending id
    std::vector<Candidate> gamma;      // every scored candidate, ascending id

    bool operator==(const SelectionResult&) const = default;
};

/// Picks the min(demand, |candidates|) highest-gamma candidates.
SelectionResult select_top(std::span<const Candidate> candidates, int demand);

/// Scores every available holder of the job's type from the population snapshot
/// and picks the best. `available[i]` is false for clients already assigned this
/// round.
SelectionResult select_for_job(const JobSpec& job, const std::vector<ClientProfile>& clients,
                               const std::vector<bool>& available, double beta);

/// Serves jobs in `order`, each picking from whoever is still unassigned.
/// Returns chosen clients indexed by job id.
std::vector<std::vector<ClientId>> select_in_order(std::span<const JobId> order, std::span<const JobSpec> jobs,
                                                   const std::vector<ClientProfile>& clients, double beta);

}  // namespace fairfedjs
