#include "fairfedjs/economics.hpp"

#include "fairfedjs/reputation.hpp"

namespace fairfedjs {

namespace {

int sign(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

TypeAggregates type_aggregates(const std::vector<ClientProfile>& clients, DataTypeId m) {
    double cost = 0.0;
    double rep = 0.0;
    int n = 0;
    for (const auto& c : clients) {
        if (!c.holds(m)) continue;
        const auto& h = c.holding(m);
        cost += h.cost;
        rep += reputation_score(h);
        ++n;
    }
    if (n == 0) throw DomainError("type_aggregates: no clients hold data type " + std::to_string(m.value));
    return {cost / n, rep / n};
}

std::vector<TypeAggregates> all_type_aggregates(const std::vector<ClientProfile>& clients, int num_types) {
    std::vector<TypeAggregates> out;
    out.reserve(static_cast<std::size_t>(num_types));
    for (int m = 0; m < num_types; ++m) {
        DataTypeId id{m};
        bool held = false;
        for (const auto& c : clients) held = held || c.holds(id);
        out.push_back(held ? type_aggregates(clients, id) : TypeAggregates{0.0, 0.5});
    }
    return out;
}

double system_revenue(std::span<const JobAccount> jobs) {
    double f = 0.0;
    for (const auto& j : jobs) f += job_revenue(j.supply, j.demand, j.payment);
    return f;
}

double system_utility(std::span<const JobAccount> jobs) {
    double u = 0.0;
    for (const auto& j : jobs) u += job_utility(j.supply, j.demand, j.payment, j.cost);
    return u;
}

PriceStep df_price_update(double payment, double payment_prev, double utility, double utility_prev, double step,
                          PaymentBounds bounds, PriceTieRule tie_rule, int last_direction) {
    const int s1 = sign(utility - utility_prev);
    int s2 = sign(payment - payment_prev);
    if (s2 == 0) s2 = last_direction >= 0 ? +1 : -1;

    int move = s1 * s2;
    if (move == 0) {
        if (tie_rule == PriceTieRule::Freeze) return {payment, s2};
        move = s2;
    }

    const double next = payment + step * move;
    if (next > bounds.max || next < bounds.min) return {payment, move};
    return {next, move};
}

}  // namespace fairfedjs
