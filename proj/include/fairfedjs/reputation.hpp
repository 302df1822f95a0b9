// Beta reputation per (client, data type) and mean-centred data fairness per
// (client, job, data type).

#pragma once

#include <cstdint>
#include <span>

#include "fairfedjs/domain.hpp"

namespace fairfedjs {

/// Expected value of Beta(a+1, b+1). Always in the open interval (0, 1).
constexpr double reputation_score(std::uint64_t successes, std::uint64_t failures) {
    return (static_cast<double>(successes) + 1.0) / (static_cast<double>(successes + failures) + 2.0);
}

inline double reputation_score(const DatasetHolding& h) { return reputation_score(h.rep_success, h.rep_failure); }

/// Success counter bumps when the client's update improved the job's model,
/// failure counter otherwise.
DatasetHolding update_reputation(DatasetHolding holding, bool improved);

DatasetHolding record_selection(DatasetHolding holding, JobId job);

/// s_i minus the mean selection count over every holder of the type.
///
/// `counts` are the selection counts of all clients in N_m for one job and
/// `index` picks the queried client. Throws DomainError when `counts` is empty.
double data_fairness(std::span<const std::uint64_t> counts, std::size_t index);

/// Same quantity looked up from the population: client `client` on job `job`
/// for type `m`. Throws DomainError if the client does not hold `m`.
double data_fairness(const std::vector<ClientProfile>& clients, ClientId client, JobId job, DataTypeId m);

}  // namespace fairfedjs
