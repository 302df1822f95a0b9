#include "fairfedjs/reputation.hpp"

#include <numeric>

namespace fairfedjs {

DatasetHolding update_reputation(DatasetHolding holding, bool improved) {
    if (improved)
        ++holding.rep_success;
    else
        ++holding.rep_failure;
    return holding;
}

DatasetHolding record_selection(DatasetHolding holding, JobId job) {
    ++holding.selection_counts[job];
    return holding;
}

double data_fairness(std::span<const std::uint64_t> counts, std::size_t index) {
    if (counts.empty()) throw DomainError("data_fairness: no clients hold the data type");
    if (index >= counts.size()) throw DomainError("data_fairness: client index out of range");
    const double sum = std::accumulate(counts.begin(), counts.end(), 0.0,
                                       [](double acc, std::uint64_t s) { return acc + static_cast<double>(s); });
    return static_cast<double>(counts[index]) - sum / static_cast<double>(counts.size());
}

double data_fairness(const std::vector<ClientProfile>& clients, ClientId client, JobId job, DataTypeId m) {
    std::vector<std::uint64_t> counts;
    std::size_t index = 0;
    bool found = false;
    for (const auto& c : clients) {
        if (!c.holds(m)) continue;
        if (c.client_id == client) {
            index = counts.size();
            found = true;
        }
        counts.push_back(c.holding(m).selections_for(job));
    }
    if (counts.empty()) throw DomainError("data_fairness: no clients hold the data type");
    if (!found) throw DomainError("data_fairness: client does not hold the data type");
    return data_fairness(counts, index);
}

}  // namespace fairfedjs
