// Cost, revenue and utility accounting, and derivative-follower pricing.

#pragma once

#include <span>
#include <vector>

#include "fairfedjs/domain.hpp"

namespace fairfedjs {

/// Mean cost and mean reputation over every client holding one data type.
struct TypeAggregates {
    double avg_cost = 0.0;
    double avg_reliability = 0.5;

    double cost_per_reliability() const { return avg_cost / avg_reliability; }

    bool operator==(const TypeAggregates&) const = default;
};

/// Throws DomainError when nobody holds `m`.
TypeAggregates type_aggregates(const std::vector<ClientProfile>& clients, DataTypeId m);

/// Aggregates for every type in [0, num_types). Types without holders get a
/// neutral entry (cost 0, reliability 0.5) since no job can draw on them.
std::vector<TypeAggregates> all_type_aggregates(const std::vector<ClientProfile>& clients, int num_types);

/// Cost of mobilising `supply` clients of one type for a single-type job.
inline double job_cost(const TypeAggregates& agg, int supply) {
    return agg.cost_per_reliability() * static_cast<double>(supply);
}

inline double job_revenue(int supply, int demand, double payment) {
    return static_cast<double>(supply) / static_cast<double>(demand) * payment;
}

inline double job_utility(int supply, int demand, double payment, double cost) {
    return job_revenue(supply, demand, payment) - cost;
}

/// Per-job inputs to the system-level sums.
struct JobAccount {
    int supply = 0;
    int demand = 1;
    double payment = 0.0;
    double cost = 0.0;
};

/// f(t): sum over jobs of (a_k / n_k) p_k.
double system_revenue(std::span<const JobAccount> jobs);

/// System utility: sum over jobs of (a_k / n_k) p_k - c_k.
double system_utility(std::span<const JobAccount> jobs);

struct PaymentBounds {
    double min = 2.0;
    double max = 100.0;
};

struct PriceStep {
    double payment = 0.0;
    // Direction of the move actually taken, or the carried direction when the
    // price held still.
    int direction = +1;
};

/// One derivative-follower step.
///
/// Compares round t against round t-1: s1 = sign(utility change), s2 = sign(price
/// change). A zero price change falls back to `last_direction`. The price moves
/// by `step` in direction s1*s2; a utility tie either freezes the price or keeps
/// `last_direction`, per `tie_rule`. A move that would leave `bounds` is not taken,
/// so prices stay on the lattice p(0) + step*Z.
PriceStep df_price_update(double payment, double payment_prev, double utility, double utility_prev, double step,
                          PaymentBounds bounds, PriceTieRule tie_rule = PriceTieRule::Freeze,
                          int last_direction = +1);

}  // namespace fairfedjs
