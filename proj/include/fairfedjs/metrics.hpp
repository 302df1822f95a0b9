// Scheduling fairness, convergence detection and per-run summaries.

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "fairfedjs/domain.hpp"

namespace fairfedjs {

/// sqrt( sum_t sum_m (Q_m(t) - mean_m Q(t))^2 / T ). `queues[t][m]` is Q_m at
/// round t+1. Divides by T only, not by M*T.
double scheduling_fairness(std::span<const std::vector<double>> queues);

/// First 1-based round t at which, for the `window` rounds t..t+window-1, every
/// job's accuracy stays strictly within `epsilon` of its running maximum up to the
/// previous round. `accuracy[t][k]` is job k after round t+1. The window must fit
/// inside the series. Returns nullopt when no such round exists.
std::optional<int> convergence_round(std::span<const std::vector<double>> accuracy, double epsilon, int window);

struct RunSummary {
    double sf = 0.0;
    std::optional<int> convergence_round;
    std::vector<double> final_accuracy;
    double mean_system_utility = 0.0;
    double mean_revenue = 0.0;
};

/// Throws std::invalid_argument for an empty ledger list.
RunSummary summarize(std::span<const RoundLedger> ledgers, double epsilon, int window);

}  // namespace fairfedjs
