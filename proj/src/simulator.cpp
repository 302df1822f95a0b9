#include "fairfedjs/simulator.hpp"

#include <sstream>

#include "fairfedjs/economics.hpp"
#include "fairfedjs/reputation.hpp"
#include "fairfedjs/rng.hpp"
#include "fairfedjs/scheduler.hpp"
#include "fairfedjs/selection.hpp"

namespace fairfedjs {

namespace {

void reprice(JobState& job, const SimConfig& config) {
    // Two completed rounds are needed before both signs are defined.
    double next = job.payment;
    if (job.rounds_completed >= 2) {
        const auto step = df_price_update(job.payment, job.payment_prev, job.utility, job.utility_prev, config.delta,
                                          {config.payment_min, config.payment_max}, config.price_tie_rule,
                                          job.price_direction);
        next = step.payment;
        job.price_direction = step.direction;
    }
    job.payment_prev = job.payment;
    job.payment = next;
}

}  // namespace

SimState initial_state(const SimConfig& config) {
    if (auto violations = validate_config(config); !violations.empty()) {
        std::ostringstream msg;
        msg << "invalid configuration:";
        for (const auto& v : violations) msg << "\n  - " << v;
        throw ConfigError(msg.str());
    }

    auto rng = substream(config.seed, Stream::Population);
    SimState s;
    s.clients = build_population(config, rng);
    const auto payments = initial_payments(config, rng);

    s.jobs.reserve(config.jobs.size());
    for (std::size_t k = 0; k < config.jobs.size(); ++k) {
        JobState j;
        j.payment = payments[k];
        j.payment_prev = payments[k];
        j.accuracy = config.oracle_for(config.jobs[k]).initial_accuracy;
        s.jobs.push_back(j);
    }
    s.queues.per_type.assign(static_cast<std::size_t>(config.num_types), 0.0);
    s.queues.per_job.assign(config.jobs.size(), 0.0);
    return s;
}

double jsi_queue_term(const SimState& state, const SimConfig& config, JobId job) {
    const auto k = static_cast<std::size_t>(job);
    if (config.jsi_queue_mode == JsiQueueMode::PerType)
        return state.queues.per_type[static_cast<std::size_t>(config.jobs[k].data_type.value)];
    return state.queues.per_job[k];
}

RoundResult run_round(const SimState& state, const SimConfig& config, const TrainingOracle& oracle) {
    RoundResult r{state, {}};
    SimState& next = r.next;
    RoundLedger& ledger = r.ledger;
    const std::size_t num_jobs = config.jobs.size();

    for (auto& j : next.jobs) reprice(j, config);

    const auto aggregates = all_type_aggregates(state.clients, config.num_types);

    std::vector<JobView> views;
    views.reserve(num_jobs);
    for (const auto& spec : config.jobs) {
        views.push_back({spec.job_id, spec.data_type, spec.demand,
                         next.jobs[static_cast<std::size_t>(spec.job_id)].payment,
                         jsi_queue_term(state, config, spec.job_id)});
    }

    ScheduleDecision decision;
    if (config.scheduler == SchedulerKind::FairFedJS) {
        decision = order_fairfedjs(views, aggregates, config.sigma);
    } else {
        std::vector<double> prev_utilities;
        if (state.round > 0)
            for (const auto& j : state.jobs) prev_utilities.push_back(j.utility);
        auto rng = substream(config.seed, Stream::Schedule, {static_cast<std::uint64_t>(state.round)});
        BaselineContext ctx{views, state.previous_order, prev_utilities, &state.clients};
        decision = order_baseline(config.scheduler, ctx, rng);
    }

    // Selection reads the start-of-round reputation and fairness snapshot.
    const auto assignments = select_in_order(decision.ordered_jobs, config.jobs, state.clients, config.beta);

    std::vector<int> supply(num_jobs, 0);
    std::vector<JobAccount> accounts(num_jobs);
    ledger.payments.resize(num_jobs);
    ledger.utilities.resize(num_jobs);
    ledger.accuracies.resize(num_jobs);

    for (const auto& spec : config.jobs) {
        const auto k = static_cast<std::size_t>(spec.job_id);
        const auto& chosen = assignments[k];
        supply[k] = static_cast<int>(chosen.size());

        std::vector<AssignedClient> trained;
        trained.reserve(chosen.size());
        for (ClientId c : chosen)
            trained.push_back({c, state.clients[static_cast<std::size_t>(c)].holding(spec.data_type).quality});

        const OracleDraws draws{config.seed, state.round, spec.job_id};
        const auto outcome =
            oracle.train(state.jobs[k].accuracy, trained, config.oracle_for(spec), config.data_regime, draws);

        for (ClientId c : chosen) {
            auto& holding = next.clients[static_cast<std::size_t>(c)].holding(spec.data_type);
            auto it = outcome.per_client_improved.find(c);
            const bool improved = it != outcome.per_client_improved.end() && it->second;
            holding = record_selection(update_reputation(std::move(holding), improved), spec.job_id);
        }

        auto& job = next.jobs[k];
        const double cost = job_cost(aggregates[static_cast<std::size_t>(spec.data_type.value)], supply[k]);
        accounts[k] = {supply[k], spec.demand, job.payment, cost};
        job.utility_prev = job.utility;
        job.utility = job_utility(supply[k], spec.demand, job.payment, cost);
        job.accuracy = outcome.new_accuracy;
        ++job.rounds_completed;

        ledger.payments[k] = job.payment;
        ledger.utilities[k] = job.utility;
        ledger.accuracies[k] = job.accuracy;
    }

    next.queues = update_all_queues(state.queues, config.jobs, supply);
    next.previous_order = decision.ordered_jobs;
    next.round = state.round + 1;

    ledger.round = state.round;
    ledger.schedule = decision.ordered_jobs;
    ledger.jsi_values = decision.jsi;
    ledger.assignments = assignments;
    ledger.supply = supply;
    ledger.revenue = system_revenue(accounts);
    ledger.system_utility = system_utility(accounts);
    ledger.queues_after = next.queues;
    return r;
}

RoundResult run_round(const SimState& state, const SimConfig& config) {
    return run_round(state, config, SyntheticOracle{});
}

std::vector<RoundLedger> run_simulation(const SimConfig& config, const TrainingOracle& oracle,
                                        SimState* final_state) {
    SimState state = initial_state(config);
    std::vector<RoundLedger> ledgers;
    ledgers.reserve(static_cast<std::size_t>(config.rounds));
    for (int t = 0; t < config.rounds; ++t) {
        auto result = run_round(state, config, oracle);
        state = std::move(result.next);
        ledgers.push_back(std::move(result.ledger));
    }
    if (final_state) *final_state = std::move(state);
    return ledgers;
}

std::vector<RoundLedger> run_simulation(const SimConfig& config, SimState* final_state) {
    return run_simulation(config, SyntheticOracle{}, final_state);
}

}  // namespace fairfedjs
