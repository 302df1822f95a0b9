#include "fairfedjs/selection.hpp"

#include <algorithm>

#include "fairfedjs/reputation.hpp"

namespace fairfedjs {

SelectionResult select_top(std::span<const Candidate> candidates, int demand) {
    SelectionResult r;
    r.gamma.assign(candidates.begin(), candidates.end());
    std::sort(r.gamma.begin(), r.gamma.end(),
              [](const Candidate& a, const Candidate& b) { return a.client_id < b.client_id; });

    std::vector<Candidate> ranked = r.gamma;
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const Candidate& a, const Candidate& b) { return a.gamma > b.gamma; });
    const auto take = std::min(ranked.size(), static_cast<std::size_t>(std::max(demand, 0)));
    r.chosen.reserve(take);
    for (std::size_t i = 0; i < take; ++i) r.chosen.push_back(ranked[i].client_id);
    return r;
}

SelectionResult select_for_job(const JobSpec& job, const std::vector<ClientProfile>& clients,
                               const std::vector<bool>& available, double beta) {
    const DataTypeId m = job.data_type;

    // Mean selection count is taken over all of N_m, not just the available part.
    double total = 0.0;
    int holders = 0;
    for (const auto& c : clients) {
        if (!c.holds(m)) continue;
        total += static_cast<double>(c.holding(m).selections_for(job.job_id));
        ++holders;
    }
    const double mean = holders > 0 ? total / holders : 0.0;

    std::vector<Candidate> pool;
    for (const auto& c : clients) {
        if (!c.holds(m) || !available[static_cast<std::size_t>(c.client_id)]) continue;
        const auto& h = c.holding(m);
        const double fairness = static_cast<double>(h.selections_for(job.job_id)) - mean;
        pool.push_back({c.client_id, selection_score(reputation_score(h), fairness, beta)});
    }
    return select_top(pool, job.demand);
}

std::vector<std::vector<ClientId>> select_in_order(std::span<const JobId> order, std::span<const JobSpec> jobs,
                                                   const std::vector<ClientProfile>& clients, double beta) {
    std::vector<bool> available(clients.size(), true);
    std::vector<std::vector<ClientId>> assigned(jobs.size());
    for (JobId k : order) {
        const auto& job = jobs[static_cast<std::size_t>(k)];
        auto result = select_for_job(job, clients, available, beta);
        for (ClientId c : result.chosen) available[static_cast<std::size_t>(c)] = false;
        assigned[static_cast<std::size_t>(k)] = std::move(result.chosen);
    }
    return assigned;
}

}  // namespace fairfedjs
