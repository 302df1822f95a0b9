#include "fairfedjs/scheduler.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "fairfedjs/reputation.hpp"

namespace fairfedjs {

namespace {

std::vector<JobId> id_order(std::span<const JobView> jobs) {
    std::vector<JobId> ids;
    ids.reserve(jobs.size());
    for (const auto& j : jobs) ids.push_back(j.job_id);
    std::sort(ids.begin(), ids.end());
    return ids;
}

// Stable sort of ids by key with ascending-id tie break. `key` is indexed by job id.
std::vector<JobId> order_by_key(std::span<const JobView> jobs, const std::vector<double>& key, bool ascending) {
    auto ids = id_order(jobs);
    std::stable_sort(ids.begin(), ids.end(), [&](JobId a, JobId b) {
        const double ka = key[static_cast<std::size_t>(a)];
        const double kb = key[static_cast<std::size_t>(b)];
        return ascending ? ka < kb : ka > kb;
    });
    return ids;
}

std::size_t key_size(std::span<const JobView> jobs) {
    JobId max_id = -1;
    for (const auto& j : jobs) max_id = std::max(max_id, j.job_id);
    return static_cast<std::size_t>(max_id + 1);
}

double top_reputation_sum(const std::vector<ClientProfile>& clients, DataTypeId m, int n) {
    std::vector<double> scores;
    for (const auto& c : clients)
        if (c.holds(m)) scores.push_back(reputation_score(c.holding(m)));
    const auto take = std::min<std::size_t>(scores.size(), static_cast<std::size_t>(n));
    std::partial_sort(scores.begin(), scores.begin() + static_cast<std::ptrdiff_t>(take), scores.end(),
                      std::greater<>());
    return std::accumulate(scores.begin(), scores.begin() + static_cast<std::ptrdiff_t>(take), 0.0);
}

}  // namespace

std::vector<double> type_demand(std::span<const JobSpec> jobs, int num_types) {
    std::vector<double> mu(static_cast<std::size_t>(num_types), 0.0);
    for (const auto& j : jobs) mu[static_cast<std::size_t>(j.data_type.value)] += j.demand;
    return mu;
}

std::vector<double> type_supply(std::span<const JobSpec> jobs, std::span<const int> supplies, int num_types) {
    std::vector<double> a(static_cast<std::size_t>(num_types), 0.0);
    for (const auto& j : jobs)
        a[static_cast<std::size_t>(j.data_type.value)] += supplies[static_cast<std::size_t>(j.job_id)];
    return a;
}

QueueState update_all_queues(const QueueState& queues, std::span<const JobSpec> jobs, std::span<const int> supplies) {
    const int num_types = static_cast<int>(queues.per_type.size());
    const auto mu = type_demand(jobs, num_types);
    const auto a = type_supply(jobs, supplies, num_types);

    QueueState next = queues;
    for (std::size_t m = 0; m < next.per_type.size(); ++m)
        next.per_type[m] = queue_update(queues.per_type[m], mu[m], a[m]);
    for (const auto& j : jobs) {
        const auto k = static_cast<std::size_t>(j.job_id);
        next.per_job[k] = queue_update(queues.per_job[k], j.demand, supplies[k]);
    }
    return next;
}

ScheduleDecision order_fairfedjs(std::span<const JobView> jobs, std::span<const TypeAggregates> aggregates,
                                 double sigma) {
    ScheduleDecision d;
    d.jsi.assign(key_size(jobs), 0.0);
    for (const auto& j : jobs)
        d.jsi[static_cast<std::size_t>(j.job_id)] =
            jsi(j.queue, j.payment, j.demand, aggregates[static_cast<std::size_t>(j.data_type.value)], sigma);
    d.ordered_jobs = order_by_key(jobs, d.jsi, /*ascending=*/true);
    return d;
}

ScheduleDecision order_baseline(SchedulerKind kind, const BaselineContext& ctx, std::mt19937_64& rng) {
    ScheduleDecision d;
    switch (kind) {
        case SchedulerKind::Random: {
            d.ordered_jobs = id_order(ctx.jobs);
            std::shuffle(d.ordered_jobs.begin(), d.ordered_jobs.end(), rng);
            break;
        }
        case SchedulerKind::ALT: {
            if (ctx.previous_order.empty()) {
                d.ordered_jobs = id_order(ctx.jobs);
            } else {
                d.ordered_jobs.assign(ctx.previous_order.rbegin(), ctx.previous_order.rend());
            }
            break;
        }
        case SchedulerKind::UB: {
            if (ctx.previous_utilities.empty()) {
                d.ordered_jobs = id_order(ctx.jobs);
            } else {
                std::vector<double> key(ctx.previous_utilities.begin(), ctx.previous_utilities.end());
                d.ordered_jobs = order_by_key(ctx.jobs, key, /*ascending=*/true);
            }
            break;
        }
        case SchedulerKind::MJFL: {
            if (ctx.clients == nullptr) throw std::invalid_argument("order_baseline: MJFL needs client reputations");
            std::vector<double> key(key_size(ctx.jobs), 0.0);
            for (const auto& j : ctx.jobs)
                key[static_cast<std::size_t>(j.job_id)] = top_reputation_sum(*ctx.clients, j.data_type, j.demand);
            d.ordered_jobs = order_by_key(ctx.jobs, key, /*ascending=*/false);
            break;
        }
        case SchedulerKind::FairFedJS:
            throw std::invalid_argument("order_baseline: fairfedjs is not a baseline");
    }
    return d;
}

double lyapunov_value(std::span<const double> queues) {
    double sum = 0.0;
    for (double q : queues) sum += q * q;
    return 0.5 * sum;
}

}  // namespace fairfedjs
