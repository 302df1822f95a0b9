#include <doctest.h>

#include <cmath>
#include <random>

#include "fairfedjs/metrics.hpp"
#include "fairfedjs/oracle.hpp"

using namespace fairfedjs;

namespace {

using Series = std::vector<std::vector<double>>;

// Literal scan: the smallest t whose next `window` rounds all stay within eps of
// the running max before them.
std::optional<int> scan_convergence(const Series& acc, double eps, int window) {
    const int T = static_cast<int>(acc.size());
    for (int t = 0; t + window <= T; ++t) {
        bool ok = true;
        for (int s = t; s < t + window && ok; ++s) {
            if (s == 0) continue;
            for (std::size_t k = 0; k < acc[0].size() && ok; ++k) {
                double m = acc[0][k];
                for (int r = 1; r < s; ++r) m = std::max(m, acc[static_cast<std::size_t>(r)][k]);
                if (std::abs(acc[static_cast<std::size_t>(s)][k] - m) >= eps) ok = false;
            }
        }
        if (ok) return t + 1;
    }
    return std::nullopt;
}

RoundLedger ledger(std::vector<double> queues, std::vector<double> acc, double utility, double revenue) {
    RoundLedger l;
    l.queues_after.per_type = std::move(queues);
    l.accuracies = std::move(acc);
    l.system_utility = utility;
    l.revenue = revenue;
    return l;
}

}  // namespace

TEST_CASE("scheduling_fairness") {
    CHECK(scheduling_fairness(Series{{5, 5}, {3, 3}}) == 0.0);
    // one round, deviations +-1
    CHECK(scheduling_fairness(Series{{2, 0}}) == doctest::Approx(std::sqrt(2.0)));
    // (1+1 + 0) / 2
    CHECK(scheduling_fairness(Series{{2, 0}, {4, 4}}) == doctest::Approx(1.0));
}

TEST_CASE("convergence_round") {
    SUBCASE("flat series converges at round one") {
        CHECK(convergence_round(Series(20, {0.5, 0.4}), 0.005, 10) == 1);
    }
    SUBCASE("steady growth never converges") {
        Series s;
        for (int t = 0; t < 50; ++t) s.push_back({0.01 * t});
        CHECK_FALSE(convergence_round(s, 0.005, 10).has_value());
    }
    SUBCASE("window must fit") {
        CHECK_FALSE(convergence_round(Series(5, {0.5}), 0.005, 10).has_value());
        CHECK(convergence_round(Series(10, {0.5}), 0.005, 10) == 1);
    }
    SUBCASE("a late jump resets the window") {
        Series s(40, {0.5});
        for (int t = 15; t < 40; ++t) s[static_cast<std::size_t>(t)] = {0.6};
        CHECK(convergence_round(s, 0.005, 20) == 17);
        CHECK(convergence_round(s, 0.005, 20) == scan_convergence(s, 0.005, 20));
    }
    SUBCASE("saturating oracle: first round whose gain drops below epsilon") {
        OracleParams p;
        p.acc_cap = 0.9;
        p.gain_rate = 0.1;
        const std::vector<AssignedClient> cs{{0, 0.8}, {1, 0.8}};
        Series s;
        double acc = 0.1;
        for (int t = 0; t < 400; ++t) {
            acc = oracle_train(acc, cs, p, DataRegime::IID, {0, t, 0}).new_accuracy;
            s.push_back({acc});
        }
        // gains shrink geometrically, so the first sub-epsilon gain starts the window
        int first = -1;
        for (int t = 1; t < 400 && first < 0; ++t)
            if (s[static_cast<std::size_t>(t)][0] - s[static_cast<std::size_t>(t - 1)][0] < 0.005) first = t + 1;
        CHECK(convergence_round(s, 0.005, 10) == first);
        CHECK(convergence_round(s, 0.005, 10) == scan_convergence(s, 0.005, 10));
    }
}

TEST_CASE("summarize") {
    const std::vector<RoundLedger> ls{ledger({2, 0}, {0.5}, 4.0, 10.0), ledger({4, 4}, {0.5}, -2.0, 20.0)};
    const auto s = summarize(ls, 0.005, 1);
    CHECK(s.sf == doctest::Approx(1.0));
    CHECK(s.mean_system_utility == 1.0);
    CHECK(s.mean_revenue == 15.0);
    CHECK(s.final_accuracy == std::vector<double>{0.5});
    CHECK(s.convergence_round == 1);

    CHECK_THROWS_AS(summarize(std::span<const RoundLedger>{}, 0.005, 10), std::invalid_argument);
}

TEST_CASE("property: convergence matches a literal scan") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> step(-0.004, 0.01);
    for (int trial = 0; trial < 300; ++trial) {
        const int T = static_cast<int>(rng() % 40) + 1;
        const std::size_t jobs = rng() % 3 + 1;
        Series s(static_cast<std::size_t>(T), std::vector<double>(jobs));
        for (std::size_t k = 0; k < jobs; ++k) {
            double a = 0.3;
            for (int t = 0; t < T; ++t) {
                a += step(rng) * (t > 20 ? 0.3 : 1.0);
                s[static_cast<std::size_t>(t)][k] = a;
            }
        }
        const int window = static_cast<int>(rng() % 6) + 1;
        CHECK(convergence_round(s, 0.005, window) == scan_convergence(s, 0.005, window));
    }
}

TEST_CASE("property: SF is non-negative and ignores a common shift") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> q(0.0, 40.0);
    for (int trial = 0; trial < 300; ++trial) {
        Series s(rng() % 20 + 1, std::vector<double>(rng() % 4 + 1));
        for (auto& row : s)
            for (auto& v : row) v = q(rng);
        const double shift = q(rng);
        Series moved = s;
        for (auto& row : moved)
            for (auto& v : row) v += shift;
        const double sf = scheduling_fairness(s);
        CHECK(sf >= 0.0);
        CHECK(scheduling_fairness(moved) == doctest::Approx(sf).epsilon(1e-9));
    }
}
