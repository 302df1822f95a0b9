#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "fairfedjs/reputation.hpp"
#include "fairfedjs/selection.hpp"
#include "oracles.hpp"

using namespace fairfedjs;

namespace {

JobSpec job(JobId id, int type, int demand) {
    JobSpec j;
    j.job_id = id;
    j.data_type = DataTypeId{type};
    j.demand = demand;
    return j;
}

// Random population where every client holds type 0 and some also hold type 1.
std::vector<ClientProfile> random_clients(std::mt19937_64& rng, int n, int jobs) {
    std::vector<ClientProfile> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        auto& c = out[static_cast<std::size_t>(i)];
        c.client_id = i;
        for (int m = 0; m < 2; ++m) {
            if (m == 1 && rng() % 2) continue;
            DatasetHolding h;
            h.rep_success = rng() % 20;
            h.rep_failure = rng() % 20;
            for (int k = 0; k < jobs; ++k) h.selection_counts[k] = rng() % 6;
            c.datasets.emplace(DataTypeId{m}, h);
        }
    }
    return out;
}

double gamma_sum(const SelectionResult& r) {
    double s = 0.0;
    for (ClientId c : r.chosen)
        for (const auto& cand : r.gamma)
            if (cand.client_id == c) s += cand.gamma;
    return s;
}

}  // namespace

TEST_CASE("selection_score") {
    CHECK(selection_score(0.8, 0.2, 0.5) == doctest::Approx(0.7));
    CHECK(selection_score(0.8, -1.0, 0.5) == doctest::Approx(1.3));
    CHECK(selection_score(0.8, 3.0, 0.0) == 0.8);
}

TEST_CASE("select_top") {
    SUBCASE("highest gamma first") {
        const std::vector<Candidate> pool{{0, 0.7}, {1, 0.9}, {2, 0.5}};
        CHECK(select_top(pool, 2).chosen == std::vector<ClientId>{1, 0});
    }
    SUBCASE("short supply returns everyone") {
        const std::vector<Candidate> pool{{4, 0.1}};
        CHECK(select_top(pool, 10).chosen == std::vector<ClientId>{4});
    }
    SUBCASE("ties by ascending id") {
        const std::vector<Candidate> pool{{3, 0.5}, {0, 0.5}, {1, 0.5}};
        CHECK(select_top(pool, 2).chosen == std::vector<ClientId>{0, 1});
    }
}

TEST_CASE("select_for_job uses the whole type population for the fairness mean") {
    std::vector<ClientProfile> clients(3);
    for (int i = 0; i < 3; ++i) clients[static_cast<std::size_t>(i)].client_id = i;
    clients[0].datasets[DataTypeId{0}].selection_counts[0] = 4;
    clients[1].datasets[DataTypeId{0}].selection_counts[0] = 2;
    clients[2].datasets[DataTypeId{0}];

    const std::vector<bool> available{false, true, true};
    const auto r = select_for_job(job(0, 0, 1), clients, available, 1.0);
    REQUIRE(r.gamma.size() == 2);
    // mean over all three holders is 2
    CHECK(r.gamma[0].gamma == doctest::Approx(0.5));
    CHECK(r.gamma[1].gamma == doctest::Approx(2.5));
    CHECK(r.chosen == std::vector<ClientId>{2});
}

TEST_CASE("select_in_order never hands a client to two jobs") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 200; ++trial) {
        const auto clients = random_clients(rng, 12, 4);
        std::vector<JobSpec> jobs{job(0, 0, 3), job(1, 1, 4), job(2, 0, 5), job(3, 1, 2)};
        std::vector<JobId> order{0, 1, 2, 3};
        std::shuffle(order.begin(), order.end(), rng);
        const auto assigned = select_in_order(order, jobs, clients, 0.5);
        std::set<ClientId> seen;
        for (std::size_t k = 0; k < jobs.size(); ++k) {
            CHECK(assigned[k].size() <= static_cast<std::size_t>(jobs[k].demand));
            for (ClientId c : assigned[k]) {
                CHECK(seen.insert(c).second);
                CHECK(clients[static_cast<std::size_t>(c)].holds(jobs[k].data_type));
            }
        }
    }
}

TEST_CASE("property: with beta = 0 selection is the reputation top-k") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 200; ++trial) {
        auto clients = random_clients(rng, 15, 1);
        const int demand = static_cast<int>(rng() % 8) + 1;
        const auto r = select_for_job(job(0, 0, demand), clients, std::vector<bool>(clients.size(), true), 0.0);

        std::vector<std::pair<double, ClientId>> ranked;
        for (const auto& c : clients) ranked.push_back({-reputation_score(c.holding(DataTypeId{0})), c.client_id});
        std::sort(ranked.begin(), ranked.end());
        std::vector<ClientId> expect;
        for (int i = 0; i < std::min<int>(demand, static_cast<int>(ranked.size())); ++i)
            expect.push_back(ranked[static_cast<std::size_t>(i)].second);
        CHECK(r.chosen == expect);
    }
}

TEST_CASE("property: the greedy pick is gamma-optimal and priority never hurts") {
    // Two jobs share a pool of at most six clients. Going first must give a job a
    // gamma sum at least as large as going second, and going first must reach the
    // brute-force optimum over the full pool.
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = static_cast<int>(rng() % 6) + 1;
        auto clients = random_clients(rng, n, 2);
        for (auto& c : clients)
            if (!c.holds(DataTypeId{1})) c.datasets[DataTypeId{1}].selection_counts[1] = rng() % 4;

        const std::vector<JobSpec> jobs{job(0, 0, static_cast<int>(rng() % 4) + 1),
                                        job(1, 1, static_cast<int>(rng() % 4) + 1)};

        const std::vector<bool> everyone(clients.size(), true);
        const auto first = select_for_job(jobs[0], clients, everyone, 0.5);

        auto taken = everyone;
        for (ClientId c : select_for_job(jobs[1], clients, everyone, 0.5).chosen)
            taken[static_cast<std::size_t>(c)] = false;
        const auto second = select_for_job(jobs[0], clients, taken, 0.5);

        std::vector<double> gammas;
        for (const auto& cand : first.gamma) gammas.push_back(cand.gamma);
        const int take = std::min<int>(jobs[0].demand, static_cast<int>(gammas.size()));
        CHECK(gamma_sum(first) == doctest::Approx(testing::best_subset_sum(gammas, take)));
        CHECK(first.chosen.size() >= second.chosen.size());
        if (first.chosen.size() == second.chosen.size()) CHECK(gamma_sum(first) >= gamma_sum(second) - 1e-12);
    }
}
