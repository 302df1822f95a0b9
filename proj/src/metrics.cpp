#include "fairfedjs/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fairfedjs {

double scheduling_fairness(std::span<const std::vector<double>> queues) {
    if (queues.empty()) return 0.0;
    double total = 0.0;
    for (const auto& row : queues) {
        if (row.empty()) continue;
        double mean = 0.0;
        for (double q : row) mean += q;
        mean /= static_cast<double>(row.size());
        for (double q : row) total += (q - mean) * (q - mean);
    }
    return std::sqrt(total / static_cast<double>(queues.size()));
}

std::optional<int> convergence_round(std::span<const std::vector<double>> accuracy, double epsilon, int window) {
    const int rounds = static_cast<int>(accuracy.size());
    if (rounds == 0 || window < 1) return std::nullopt;
    const std::size_t jobs = accuracy.front().size();

    // stable[s]: every job at round s is within epsilon of its running max over rounds < s.
    std::vector<bool> stable(static_cast<std::size_t>(rounds), true);
    std::vector<double> running_max(accuracy.front());
    for (int s = 1; s < rounds; ++s) {
        for (std::size_t k = 0; k < jobs; ++k) {
            const double a = accuracy[static_cast<std::size_t>(s)][k];
            if (std::abs(a - running_max[k]) >= epsilon) stable[static_cast<std::size_t>(s)] = false;
            running_max[k] = std::max(running_max[k], a);
        }
    }

    int run = 0;
    for (int s = rounds - 1; s >= 0; --s) {
        run = stable[static_cast<std::size_t>(s)] ? run + 1 : 0;
        stable[static_cast<std::size_t>(s)] = run >= window;
    }
    for (int s = 0; s < rounds; ++s)
        if (stable[static_cast<std::size_t>(s)]) return s + 1;
    return std::nullopt;
}

RunSummary summarize(std::span<const RoundLedger> ledgers, double epsilon, int window) {
    if (ledgers.empty()) throw std::invalid_argument("summarize: empty ledger list");

    std::vector<std::vector<double>> queues;
    std::vector<std::vector<double>> accuracy;
    queues.reserve(ledgers.size());
    accuracy.reserve(ledgers.size());

    RunSummary s;
    for (const auto& l : ledgers) {
        queues.push_back(l.queues_after.per_type);
        accuracy.push_back(l.accuracies);
        s.mean_system_utility += l.system_utility;
        s.mean_revenue += l.revenue;
    }
    const auto n = static_cast<double>(ledgers.size());
    s.mean_system_utility /= n;
    s.mean_revenue /= n;
    s.sf = scheduling_fairness(queues);
    s.convergence_round = convergence_round(accuracy, epsilon, window);
    s.final_accuracy = ledgers.back().accuracies;
    return s;
}

}  // namespace fairfedjs
