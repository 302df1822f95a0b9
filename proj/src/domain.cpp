#include "fairfedjs/domain.hpp"

#include <array>
#include <cmath>
#include <set>

namespace fairfedjs {

namespace {

template <typename Enum, std::size_t N>
struct NameTable {
    std::array<std::pair<Enum, const char*>, N> entries;

    std::string name(Enum e) const {
        for (const auto& [value, text] : entries)
            if (value == e) return text;
        return "unknown";
    }

    Enum parse(const std::string& s, const char* what) const {
        for (const auto& [value, text] : entries)
            if (s == text) return value;
        throw ConfigError(std::string("unknown ") + what + " '" + s + "'");
    }
};

constexpr NameTable<SchedulerKind, 5> kSchedulers{{{
    {SchedulerKind::FairFedJS, "fairfedjs"},
    {SchedulerKind::Random, "random"},
    {SchedulerKind::ALT, "alt"},
    {SchedulerKind::UB, "ub"},
    {SchedulerKind::MJFL, "mjfl"},
}}};

constexpr NameTable<DataRegime, 2> kRegimes{{{
    {DataRegime::IID, "iid"},
    {DataRegime::NonIID, "noniid"},
}}};

constexpr NameTable<JsiQueueMode, 2> kQueueModes{{{
    {JsiQueueMode::PerJob, "per_job"},
    {JsiQueueMode::PerType, "per_type"},
}}};

constexpr NameTable<PriceTieRule, 2> kTieRules{{{
    {PriceTieRule::Freeze, "freeze"},
    {PriceTieRule::ContinueLastDirection, "continue"},
}}};

bool in_unit_interval(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

std::string to_string(SchedulerKind kind) { return kSchedulers.name(kind); }
SchedulerKind parse_scheduler(const std::string& name) { return kSchedulers.parse(name, "scheduler"); }
std::string to_string(DataRegime regime) { return kRegimes.name(regime); }
DataRegime parse_data_regime(const std::string& name) { return kRegimes.parse(name, "data regime"); }
std::string to_string(JsiQueueMode mode) { return kQueueModes.name(mode); }
JsiQueueMode parse_jsi_queue_mode(const std::string& name) { return kQueueModes.parse(name, "jsi queue mode"); }
std::string to_string(PriceTieRule rule) { return kTieRules.name(rule); }
PriceTieRule parse_price_tie_rule(const std::string& name) { return kTieRules.parse(name, "price tie rule"); }

std::vector<std::string> validate_config(const SimConfig& c) {
    std::vector<std::string> out;
    auto check = [&out](bool ok, std::string msg) {
        if (!ok) out.push_back(std::move(msg));
    };

    check(c.rounds >= 1, "rounds must be ≥ 1");
    check(c.num_types >= 1, "num_types must be ≥ 1");
    check(c.num_clients >= 1, "num_clients must be ≥ 1");
    check(!c.jobs.empty(), "at least one job is required");
    check(c.sigma >= 0.0, "sigma must be ≥ 0");
    check(c.beta >= 0.0, "beta must be ≥ 0");
    check(c.delta > 0.0, "delta must be > 0");
    check(c.payment_min <= c.payment_max, "payment_bounds must satisfy min ≤ max");
    check(c.payment_min > 0.0, "payment_bounds min must be > 0");

    const auto& o = c.oracle;
    check(o.acc_cap > 0.0 && o.acc_cap <= 1.0, "oracle.acc_cap must be in (0, 1]");
    check(o.gain_rate > 0.0, "oracle.gain_rate must be > 0");
    check(o.noise_std >= 0.0, "oracle.noise_std must be ≥ 0");
    check(o.noniid_penalty >= 0.0 && o.noniid_penalty < 1.0, "oracle.noniid_penalty must be in [0, 1)");
    check(o.initial_accuracy >= 0.0 && o.initial_accuracy <= o.acc_cap,
          "oracle.initial_accuracy must be in [0, acc_cap]");

    check(c.cost_range.lo > 0.0 && c.cost_range.lo <= c.cost_range.hi,
          "cost_range must satisfy 0 < lo ≤ hi");
    check(in_unit_interval(c.quality_range.lo) && in_unit_interval(c.quality_range.hi) &&
              c.quality_range.lo <= c.quality_range.hi,
          "quality_range must satisfy 0 ≤ lo ≤ hi ≤ 1");
    check(c.convergence_epsilon > 0.0, "convergence_epsilon must be > 0");
    check(c.convergence_window >= 1, "convergence_window must be ≥ 1");

    const auto& lat = c.initial_payment_lattice;
    check(lat.step > 0.0 && lat.min <= lat.max, "initial_payment_lattice must satisfy step > 0 and min ≤ max");
    bool any_drawn = false;

    for (std::size_t idx = 0; idx < c.jobs.size(); ++idx) {
        const auto& j = c.jobs[idx];
        const std::string tag = "job " + std::to_string(j.job_id) + ": ";
        check(j.job_id == static_cast<int>(idx), tag + "job_id must equal its position in the job list");
        check(j.demand >= 1, "demand must be ≥ 1");
        check(j.data_type.value >= 0 && j.data_type.value < c.num_types,
              tag + "data_type must be in [0, num_types)");
        if (j.initial_payment) {
            check(*j.initial_payment >= c.payment_min && *j.initial_payment <= c.payment_max,
                  tag + "initial_payment must lie within payment_bounds");
        } else {
            any_drawn = true;
        }
        if (j.oracle) {
            check(j.oracle->acc_cap > 0.0 && j.oracle->acc_cap <= 1.0, tag + "oracle.acc_cap must be in (0, 1]");
            check(j.oracle->gain_rate > 0.0, tag + "oracle.gain_rate must be > 0");
            check(j.oracle->noise_std >= 0.0, tag + "oracle.noise_std must be ≥ 0");
            check(j.oracle->noniid_penalty >= 0.0 && j.oracle->noniid_penalty < 1.0,
                  tag + "oracle.noniid_penalty must be in [0, 1)");
            check(j.oracle->initial_accuracy >= 0.0 && j.oracle->initial_accuracy <= j.oracle->acc_cap,
                  tag + "oracle.initial_accuracy must be in [0, acc_cap]");
        }
    }
    if (any_drawn) {
        check(lat.min >= c.payment_min && lat.max <= c.payment_max,
              "initial_payment_lattice must lie within payment_bounds");
    }

    int total = 0;
    std::set<int> covered;
    for (const auto& g : c.population) {
        check(g.count >= 0, "population group count must be ≥ 0");
        check(!g.types.empty(), "population group must hold at least one data type");
        std::set<int> uniq(g.types.begin(), g.types.end());
        check(uniq.size() == g.types.size(), "population group data types must be unique");
        for (int m : g.types) {
            check(m >= 0 && m < c.num_types, "population group data type must be in [0, num_types)");
            if (g.count > 0) covered.insert(m);
        }
        total += g.count;
    }
    check(total == c.num_clients, "population group counts must sum to num_clients");
    for (const auto& j : c.jobs) {
        if (!covered.contains(j.data_type.value)) {
            check(false, "job " + std::to_string(j.job_id) + ": no client holds its data type");
        }
    }
    return out;
}

double draw_initial_payment(const PaymentLattice& lattice, std::mt19937_64& rng) {
    const auto steps = static_cast<long>(std::floor((lattice.max - lattice.min) / lattice.step + 1e-9));
    std::uniform_int_distribution<long> pick(0, steps);
    return lattice.min + lattice.step * static_cast<double>(pick(rng));
}

std::vector<double> initial_payments(const SimConfig& config, std::mt19937_64& rng) {
    std::vector<double> out;
    out.reserve(config.jobs.size());
    for (const auto& j : config.jobs)
        out.push_back(j.initial_payment ? *j.initial_payment : draw_initial_payment(config.initial_payment_lattice, rng));
    return out;
}

std::vector<ClientProfile> build_population(const SimConfig& config, std::mt19937_64& rng) {
    int total = 0;
    for (const auto& g : config.population) total += g.count;
    if (total != config.num_clients)
        throw ConfigError("population groups describe " + std::to_string(total) + " clients but num_clients is " +
                          std::to_string(config.num_clients));

    std::uniform_real_distribution<double> cost(config.cost_range.lo, config.cost_range.hi);
    std::uniform_real_distribution<double> quality(config.quality_range.lo, config.quality_range.hi);

    std::vector<ClientProfile> clients;
    clients.reserve(static_cast<std::size_t>(total));
    for (const auto& g : config.population) {
        for (int n = 0; n < g.count; ++n) {
            ClientProfile c;
            c.client_id = static_cast<ClientId>(clients.size());
            for (int m : g.types) {
                DatasetHolding h;
                h.cost = cost(rng);
                h.quality = quality(rng);
                c.datasets.emplace(DataTypeId{m}, std::move(h));
            }
            clients.push_back(std::move(c));
        }
    }
    return clients;
}

std::vector<ClientId> holders_of(const std::vector<ClientProfile>& clients, DataTypeId m) {
    std::vector<ClientId> out;
    for (const auto& c : clients)
        if (c.holds(m)) out.push_back(c.client_id);
    return out;
}

}  // namespace fairfedjs
