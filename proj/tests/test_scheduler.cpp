#include <doctest.h>

#include <random>

#include "fairfedjs/reputation.hpp"
#include "fairfedjs/scheduler.hpp"
#include "oracles.hpp"

using namespace fairfedjs;

namespace {

std::vector<JobSpec> specs(const std::vector<int>& types, const std::vector<int>& demands) {
    std::vector<JobSpec> out;
    for (std::size_t k = 0; k < types.size(); ++k) {
        JobSpec j;
        j.job_id = static_cast<JobId>(k);
        j.data_type = DataTypeId{types[k]};
        j.demand = demands[k];
        out.push_back(j);
    }
    return out;
}

QueueState zero_queues(int types, std::size_t jobs) {
    return {std::vector<double>(static_cast<std::size_t>(types), 0.0), std::vector<double>(jobs, 0.0)};
}

std::vector<JobView> views_with_jsi_inputs(const std::vector<double>& queues) {
    std::vector<JobView> v;
    for (std::size_t k = 0; k < queues.size(); ++k)
        v.push_back({static_cast<JobId>(k), DataTypeId{0}, 10, 20.0, queues[k]});
    return v;
}

}  // namespace

TEST_CASE("queue_update") {
    CHECK(queue_update(2, 30, 25) == 7);
    CHECK(queue_update(0, 30, 30) == 0);
    CHECK(queue_update(1, 0, 5) == 0);
}

TEST_CASE("update_all_queues") {
    SUBCASE("shortfall on one of two same-type jobs") {
        const auto jobs = specs({0, 0}, {10, 10});
        const std::vector<int> supply{10, 5};
        const auto next = update_all_queues(zero_queues(1, 2), jobs, supply);
        CHECK(next.per_type == std::vector<double>{5.0});
        CHECK(next.per_job == std::vector<double>{0.0, 5.0});
    }
    SUBCASE("steady state") {
        const auto jobs = specs({0, 1, 1}, {10, 4, 6});
        const std::vector<int> supply{10, 4, 6};
        const auto next = update_all_queues(zero_queues(2, 3), jobs, supply);
        CHECK(next.per_type == std::vector<double>{0.0, 0.0});
        CHECK(next.per_job == std::vector<double>{0.0, 0.0, 0.0});
    }
    SUBCASE("clamp asymmetry: per-job shares exceed the type queue") {
        // Job 0 is over-supplied, so its share clamps at zero while the type queue
        // nets the surplus against job 1's shortfall.
        testing::QueueTrace trace{1, {0, 0}, {10, 10}, {{12, 5}}};
        const auto expected = testing::brute_force_replay(trace);
        const auto jobs = specs({0, 0}, {10, 10});
        const auto next = update_all_queues(zero_queues(1, 2), jobs, trace.supplies[0]);
        CHECK(next.per_type == expected.per_type[0]);
        CHECK(next.per_job == expected.per_job[0]);
        CHECK(next.per_type == std::vector<double>{3.0});
        CHECK(next.per_job == std::vector<double>{0.0, 5.0});
    }
}

TEST_CASE("jsi") {
    const TypeAggregates agg{2.0, 0.5};
    CHECK(jsi(5, 20, 10, agg, 1.0) == -3.0);
    CHECK(jsi(5, 20, 10, agg, 0.0) == -5.0);
    CHECK(jsi(5, 30, 10, agg, 1.0) == -4.0);
}

TEST_CASE("order_fairfedjs") {
    const std::vector<TypeAggregates> agg{{2.0, 0.5}};

    SUBCASE("ascending index") {
        // sigma = 0 makes the index -Q, so these queues give {j0:-3, j1:-4, j2:0}.
        const auto d = order_fairfedjs(views_with_jsi_inputs({3, 4, 0}), agg, 0.0);
        CHECK(d.jsi == std::vector<double>{-3, -4, 0});
        CHECK(d.ordered_jobs == std::vector<JobId>{1, 0, 2});
    }
    SUBCASE("ties keep id order") {
        const auto d = order_fairfedjs(views_with_jsi_inputs({2, 2, 2, 2}), agg, 1.0);
        CHECK(d.ordered_jobs == std::vector<JobId>{0, 1, 2, 3});
    }
    SUBCASE("single job") {
        CHECK(order_fairfedjs(views_with_jsi_inputs({7}), agg, 1.0).ordered_jobs == std::vector<JobId>{0});
    }
}

TEST_CASE("order_baseline") {
    const auto views = views_with_jsi_inputs({0, 0, 0});
    std::mt19937_64 rng(1);

    SUBCASE("ALT reverses the previous order") {
        const std::vector<JobId> prev{2, 0, 1};
        BaselineContext ctx{views, prev, {}, nullptr};
        CHECK(order_baseline(SchedulerKind::ALT, ctx, rng).ordered_jobs == std::vector<JobId>{1, 0, 2});
    }
    SUBCASE("ALT and UB start in id order") {
        BaselineContext ctx{views, {}, {}, nullptr};
        CHECK(order_baseline(SchedulerKind::ALT, ctx, rng).ordered_jobs == std::vector<JobId>{0, 1, 2});
        CHECK(order_baseline(SchedulerKind::UB, ctx, rng).ordered_jobs == std::vector<JobId>{0, 1, 2});
    }
    SUBCASE("UB serves the lowest previous utility first") {
        const auto two = views_with_jsi_inputs({0, 0});
        const std::vector<double> utilities{5.0, -2.0};
        BaselineContext ctx{two, {}, utilities, nullptr};
        CHECK(order_baseline(SchedulerKind::UB, ctx, rng).ordered_jobs == std::vector<JobId>{1, 0});
    }
    SUBCASE("Random is reproducible from the generator state") {
        const auto many = views_with_jsi_inputs(std::vector<double>(8, 0.0));
        BaselineContext ctx{many, {}, {}, nullptr};
        std::mt19937_64 a(99), b(99);
        const auto first = order_baseline(SchedulerKind::Random, ctx, a).ordered_jobs;
        CHECK(first == order_baseline(SchedulerKind::Random, ctx, b).ordered_jobs);
        auto sorted = first;
        std::sort(sorted.begin(), sorted.end());
        CHECK(sorted == std::vector<JobId>{0, 1, 2, 3, 4, 5, 6, 7});
    }
    SUBCASE("MJFL ranks by the best reputations available for each type") {
        std::vector<ClientProfile> clients(4);
        for (int i = 0; i < 4; ++i) clients[static_cast<std::size_t>(i)].client_id = i;
        auto& h0 = clients[0].datasets[DataTypeId{0}];
        h0.rep_success = 8;
        clients[1].datasets[DataTypeId{0}];
        auto& h2 = clients[2].datasets[DataTypeId{1}];
        h2.rep_success = 1;
        auto& h3 = clients[3].datasets[DataTypeId{1}];
        h3.rep_success = 1;

        std::vector<JobView> jobs{{0, DataTypeId{0}, 1, 10.0, 0.0},
                                  {1, DataTypeId{1}, 1, 10.0, 0.0},
                                  {2, DataTypeId{1}, 2, 10.0, 0.0}};
        // top-1 of type 0 = 0.9, top-1 of type 1 = 2/3, top-2 of type 1 = 4/3
        BaselineContext ctx{jobs, {}, {}, &clients};
        CHECK(order_baseline(SchedulerKind::MJFL, ctx, rng).ordered_jobs == std::vector<JobId>{2, 0, 1});
    }
    SUBCASE("FairFedJS is not a baseline") {
        BaselineContext ctx{views, {}, {}, nullptr};
        CHECK_THROWS_AS(order_baseline(SchedulerKind::FairFedJS, ctx, rng), std::invalid_argument);
    }
}

TEST_CASE("lyapunov_value and drift_bound_theta") {
    CHECK(lyapunov_value(std::vector<double>{3, 4}) == 12.5);
    CHECK(lyapunov_value(std::vector<double>{0, 0, 0}) == 0.0);
    CHECK(lyapunov_value(std::vector<double>{1}) == 0.5);
    CHECK(drift_bound_theta(30, 30) == 900.0);
    CHECK(drift_bound_theta(0, 0) == 0.0);
}

TEST_CASE("property: queues replay the recurrence exactly and never go negative") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 50; ++trial) {
        const auto trace = testing::random_trace(rng, 200, 4);
        const auto expected = testing::brute_force_replay(trace);
        const auto jobs = specs(trace.job_type, trace.job_demand);
        auto q = zero_queues(trace.num_types, jobs.size());
        for (std::size_t t = 0; t < trace.supplies.size(); ++t) {
            q = update_all_queues(q, jobs, trace.supplies[t]);
            REQUIRE(q.per_type == expected.per_type[t]);
            REQUIRE(q.per_job == expected.per_job[t]);
            for (double v : q.per_type) CHECK(v >= 0.0);
        }
    }
}

TEST_CASE("property: shares sum to the type queue unless a clamp fired") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        auto trace = testing::random_trace(rng, 100, 3);
        for (auto& row : trace.supplies)
            for (std::size_t k = 0; k < row.size(); ++k) row[k] = std::min(row[k], trace.job_demand[k]);
        const auto jobs = specs(trace.job_type, trace.job_demand);
        auto q = zero_queues(trace.num_types, jobs.size());
        for (const auto& row : trace.supplies) {
            q = update_all_queues(q, jobs, row);
            std::vector<double> sums(static_cast<std::size_t>(trace.num_types), 0.0);
            for (const auto& j : jobs) sums[static_cast<std::size_t>(j.data_type.value)] += q.per_job[static_cast<std::size_t>(j.job_id)];
            CHECK(sums == q.per_type);
        }
    }
}

TEST_CASE("property: index monotonicity") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const double q = 50.0 * u(rng);
        const double p = 2.0 + 98.0 * u(rng);
        const int n = static_cast<int>(rng() % 20) + 1;
        const double sigma = 0.01 + 5.0 * u(rng);
        const TypeAggregates agg{1.0 + 2.0 * u(rng), 0.01 + 0.98 * u(rng)};
        const double base = jsi(q, p, n, agg, sigma);
        CHECK(jsi(q, p + 1.0, n, agg, sigma) < base);
        CHECK(jsi(q + 1.0, p, n, agg, sigma) < base);
        CHECK(jsi(q, p, n, {agg.avg_cost * 1.5, agg.avg_reliability}, sigma) > base);
    }
}

TEST_CASE("property: shifting every index by a constant keeps the order") {
    std::mt19937_64 rng(21);
    const std::vector<TypeAggregates> agg{{2.0, 0.5}};
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> queues(rng() % 8 + 1);
        for (auto& q : queues) q = static_cast<double>(rng() % 6);
        const double shift = static_cast<double>(rng() % 100);
        auto shifted = queues;
        for (auto& q : shifted) q += shift;
        CHECK(order_fairfedjs(views_with_jsi_inputs(queues), agg, 1.0).ordered_jobs ==
              order_fairfedjs(views_with_jsi_inputs(shifted), agg, 1.0).ordered_jobs);
    }
}
