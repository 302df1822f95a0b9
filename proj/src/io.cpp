#include "fairfedjs/io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "fairfedjs/scheduler.hpp"

namespace fairfedjs {

namespace {

// Reads fields from one JSON object and rejects keys nobody asked for.
class ObjectReader {
public:
    ObjectReader(const json& obj, std::string where) : obj_(obj), where_(std::move(where)) {
        if (!obj_.is_object()) throw ConfigError(where_ + ": expected an object");
    }

    template <typename T>
    void get(const char* key, T& out) {
        seen_.insert(key);
        auto it = obj_.find(key);
        if (it == obj_.end()) return;
        try {
            out = it->template get<T>();
        } catch (const json::exception& e) {
            throw ConfigError(where_ + "." + key + ": " + e.what());
        }
    }

    const json* child(const char* key) {
        seen_.insert(key);
        auto it = obj_.find(key);
        return it == obj_.end() ? nullptr : &*it;
    }

    void finish() const {
        for (auto it = obj_.begin(); it != obj_.end(); ++it)
            if (!seen_.contains(it.key())) throw ConfigError(where_ + ": unknown key '" + it.key() + "'");
    }

private:
    const json& obj_;
    std::string where_;
    std::set<std::string> seen_;
};

OracleParams oracle_from_json(const json& doc, const std::string& where, OracleParams base) {
    ObjectReader r(doc, where);
    r.get("acc_cap", base.acc_cap);
    r.get("gain_rate", base.gain_rate);
    r.get("noise_std", base.noise_std);
    r.get("noniid_penalty", base.noniid_penalty);
    r.get("initial_accuracy", base.initial_accuracy);
    r.finish();
    return base;
}

json oracle_to_json(const OracleParams& o) {
    return {{"acc_cap", o.acc_cap},
            {"gain_rate", o.gain_rate},
            {"noise_std", o.noise_std},
            {"noniid_penalty", o.noniid_penalty},
            {"initial_accuracy", o.initial_accuracy}};
}

Range range_from_json(const json& doc, const std::string& where) {
    if (!doc.is_array() || doc.size() != 2 || !doc[0].is_number() || !doc[1].is_number())
        throw ConfigError(where + ": expected [lo, hi]");
    return {doc[0].get<double>(), doc[1].get<double>()};
}

template <typename Enum>
Enum enum_field(ObjectReader& r, const char* key, Enum current, Enum (*parse)(const std::string&),
                std::string (*name)(Enum)) {
    std::string text = name(current);
    r.get(key, text);
    return parse(text);
}

}  // namespace

SimConfig config_from_json(const json& doc) {
    SimConfig c;
    ObjectReader r(doc, "config");
    r.get("num_clients", c.num_clients);
    r.get("num_types", c.num_types);
    r.get("rounds", c.rounds);
    r.get("sigma", c.sigma);
    r.get("beta", c.beta);
    r.get("delta", c.delta);
    r.get("seed", c.seed);
    r.get("convergence_epsilon", c.convergence_epsilon);
    r.get("convergence_window", c.convergence_window);

    c.scheduler = enum_field(r, "scheduler", c.scheduler, &parse_scheduler, &to_string);
    c.data_regime = enum_field(r, "data_regime", c.data_regime, &parse_data_regime, &to_string);
    c.jsi_queue_mode = enum_field(r, "jsi_queue_mode", c.jsi_queue_mode, &parse_jsi_queue_mode, &to_string);
    c.price_tie_rule = enum_field(r, "price_tie_rule", c.price_tie_rule, &parse_price_tie_rule, &to_string);

    if (const json* b = r.child("payment_bounds")) {
        const auto range = range_from_json(*b, "config.payment_bounds");
        c.payment_min = range.lo;
        c.payment_max = range.hi;
    }
    if (const json* v = r.child("cost_range")) c.cost_range = range_from_json(*v, "config.cost_range");
    if (const json* v = r.child("quality_range")) c.quality_range = range_from_json(*v, "config.quality_range");
    if (const json* v = r.child("oracle")) c.oracle = oracle_from_json(*v, "config.oracle", c.oracle);

    if (const json* v = r.child("initial_payment_lattice")) {
        ObjectReader lr(*v, "config.initial_payment_lattice");
        lr.get("min", c.initial_payment_lattice.min);
        lr.get("max", c.initial_payment_lattice.max);
        lr.get("step", c.initial_payment_lattice.step);
        lr.finish();
    }

    if (const json* v = r.child("population")) {
        if (!v->is_array()) throw ConfigError("config.population: expected an array");
        for (std::size_t i = 0; i < v->size(); ++i) {
            ObjectReader gr((*v)[i], "config.population[" + std::to_string(i) + "]");
            PopulationGroup g;
            gr.get("count", g.count);
            gr.get("types", g.types);
            gr.finish();
            c.population.push_back(std::move(g));
        }
    }

    if (const json* v = r.child("jobs")) {
        if (!v->is_array()) throw ConfigError("config.jobs: expected an array");
        for (std::size_t i = 0; i < v->size(); ++i) {
            const std::string where = "config.jobs[" + std::to_string(i) + "]";
            ObjectReader jr((*v)[i], where);
            JobSpec j;
            j.job_id = static_cast<JobId>(i);
            int type = 0;
            jr.get("job_id", j.job_id);
            jr.get("data_type", type);
            j.data_type = DataTypeId{type};
            jr.get("demand", j.demand);
            if (const json* p = jr.child("initial_payment"); p && !p->is_null()) {
                if (!p->is_number()) throw ConfigError(where + ".initial_payment: expected a number");
                j.initial_payment = p->get<double>();
            }
            if (const json* o = jr.child("oracle"); o && !o->is_null())
                j.oracle = oracle_from_json(*o, where + ".oracle", c.oracle);
            jr.finish();
            c.jobs.push_back(std::move(j));
        }
    }
    r.finish();
    return c;
}

json config_to_json(const SimConfig& c) {
    json jobs = json::array();
    for (const auto& j : c.jobs) {
        json e = {{"job_id", j.job_id}, {"data_type", j.data_type.value}, {"demand", j.demand}};
        if (j.initial_payment) e["initial_payment"] = *j.initial_payment;
        if (j.oracle) e["oracle"] = oracle_to_json(*j.oracle);
        jobs.push_back(std::move(e));
    }
    json population = json::array();
    for (const auto& g : c.population) population.push_back({{"count", g.count}, {"types", g.types}});

    return {
        {"num_clients", c.num_clients},
        {"num_types", c.num_types},
        {"jobs", jobs},
        {"rounds", c.rounds},
        {"sigma", c.sigma},
        {"beta", c.beta},
        {"delta", c.delta},
        {"payment_bounds", {c.payment_min, c.payment_max}},
        {"scheduler", to_string(c.scheduler)},
        {"oracle", oracle_to_json(c.oracle)},
        {"data_regime", to_string(c.data_regime)},
        {"seed", c.seed},
        {"population", population},
        {"cost_range", {c.cost_range.lo, c.cost_range.hi}},
        {"quality_range", {c.quality_range.lo, c.quality_range.hi}},
        {"initial_payment_lattice",
         {{"min", c.initial_payment_lattice.min},
          {"max", c.initial_payment_lattice.max},
          {"step", c.initial_payment_lattice.step}}},
        {"jsi_queue_mode", to_string(c.jsi_queue_mode)},
        {"price_tie_rule", to_string(c.price_tie_rule)},
        {"convergence_epsilon", c.convergence_epsilon},
        {"convergence_window", c.convergence_window},
    };
}

SimConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("cannot parse config file '" + path + "': " + e.what());
    }
    return config_from_json(doc);
}

SimConfig reference_config() {
    SimConfig c;
    c.num_clients = 50;
    c.num_types = 2;
    c.rounds = 150;
    c.sigma = 1.0;
    c.beta = 0.5;
    c.delta = 2.0;
    c.payment_min = 2.0;
    c.payment_max = 100.0;
    c.population = {{20, {0}}, {20, {1}}, {10, {0, 1}}};
    c.cost_range = {1.0, 3.0};
    c.quality_range = {0.5, 1.0};
    c.initial_payment_lattice = {10.0, 30.0, 2.0};
    c.oracle = {0.85, 0.08, 0.001, 0.2, 0.1};

    // Three model families per data type; type 0 is the easier dataset.
    const OracleParams families[2][3] = {
        {{0.84, 0.10, 0.001, 0.2, 0.1}, {0.89, 0.07, 0.001, 0.2, 0.1}, {0.91, 0.05, 0.001, 0.2, 0.1}},
        {{0.45, 0.08, 0.001, 0.25, 0.1}, {0.58, 0.06, 0.001, 0.25, 0.1}, {0.66, 0.04, 0.001, 0.25, 0.1}},
    };
    for (int m = 0; m < 2; ++m) {
        for (int f = 0; f < 3; ++f) {
            JobSpec j;
            j.job_id = m * 3 + f;
            j.data_type = DataTypeId{m};
            j.demand = 10;
            j.oracle = families[m][f];
            c.jobs.push_back(j);
        }
    }
    return c;
}

std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

json ledger_to_json(const RoundLedger& l) {
    return {
        {"round", l.round},
        {"schedule", l.schedule},
        {"jsi_values", l.jsi_values},
        {"assignments", l.assignments},
        {"supply", l.supply},
        {"payments", l.payments},
        {"utilities", l.utilities},
        {"revenue", l.revenue},
        {"system_utility", l.system_utility},
        {"queues_after", {{"per_type", l.queues_after.per_type}, {"per_job", l.queues_after.per_job}}},
        {"accuracies", l.accuracies},
    };
}

RoundLedger ledger_from_json(const json& doc) {
    RoundLedger l;
    try {
        l.round = doc.at("round").get<int>();
        l.schedule = doc.at("schedule").get<std::vector<JobId>>();
        l.jsi_values = doc.at("jsi_values").get<std::vector<double>>();
        l.assignments = doc.at("assignments").get<std::vector<std::vector<ClientId>>>();
        l.supply = doc.at("supply").get<std::vector<int>>();
        l.payments = doc.at("payments").get<std::vector<double>>();
        l.utilities = doc.at("utilities").get<std::vector<double>>();
        l.revenue = doc.at("revenue").get<double>();
        l.system_utility = doc.at("system_utility").get<double>();
        l.queues_after.per_type = doc.at("queues_after").at("per_type").get<std::vector<double>>();
        l.queues_after.per_job = doc.at("queues_after").at("per_job").get<std::vector<double>>();
        l.accuracies = doc.at("accuracies").get<std::vector<double>>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed ledger record: ") + e.what());
    }
    return l;
}

void write_ledgers(std::ostream& out, const std::vector<RoundLedger>& ledgers) {
    for (const auto& l : ledgers) out << ledger_to_json(l).dump() << '\n';
}

std::string summary_csv_header(std::size_t num_jobs) {
    std::string h = "scheduler,seed,sf,convergence_round";
    for (std::size_t k = 0; k < num_jobs; ++k) h += ",final_acc_job" + std::to_string(k);
    h += ",mean_system_utility,mean_revenue";
    return h;
}

std::string summary_csv_row(SchedulerKind kind, std::uint64_t seed, const RunSummary& s) {
    std::ostringstream row;
    row << to_string(kind) << ',' << seed << ',' << format_double(s.sf) << ',';
    if (s.convergence_round) row << *s.convergence_round;
    for (double a : s.final_accuracy) row << ',' << format_double(a);
    row << ',' << format_double(s.mean_system_utility) << ',' << format_double(s.mean_revenue);
    return row.str();
}

StateSnapshot make_snapshot(const SimState& state, const SimConfig& config) {
    StateSnapshot snap;
    snap.round = state.round;
    snap.sigma = config.sigma;
    snap.aggregates = all_type_aggregates(state.clients, config.num_types);
    for (const auto& spec : config.jobs) {
        snap.jobs.push_back({spec.job_id, spec.data_type, spec.demand,
                             state.jobs[static_cast<std::size_t>(spec.job_id)].payment,
                             jsi_queue_term(state, config, spec.job_id)});
    }
    return snap;
}

json snapshot_to_json(const StateSnapshot& snap) {
    json jobs = json::array();
    for (const auto& j : snap.jobs)
        jobs.push_back({{"job_id", j.job_id},
                        {"data_type", j.data_type.value},
                        {"demand", j.demand},
                        {"payment", j.payment},
                        {"queue", j.queue}});
    json types = json::array();
    for (const auto& a : snap.aggregates)
        types.push_back({{"avg_cost", a.avg_cost}, {"avg_reliability", a.avg_reliability}});
    return {{"round", snap.round}, {"sigma", snap.sigma}, {"jobs", jobs}, {"types", types}};
}

StateSnapshot snapshot_from_json(const json& doc) {
    StateSnapshot snap;
    ObjectReader r(doc, "snapshot");
    r.get("round", snap.round);
    r.get("sigma", snap.sigma);
    const json* types = r.child("types");
    const json* jobs = r.child("jobs");
    r.finish();
    if (!types || !types->is_array()) throw ConfigError("snapshot.types: expected an array");
    if (!jobs || !jobs->is_array()) throw ConfigError("snapshot.jobs: expected an array");

    for (std::size_t m = 0; m < types->size(); ++m) {
        ObjectReader tr((*types)[m], "snapshot.types[" + std::to_string(m) + "]");
        TypeAggregates a;
        tr.get("avg_cost", a.avg_cost);
        tr.get("avg_reliability", a.avg_reliability);
        tr.finish();
        if (!(a.avg_reliability > 0.0)) throw ConfigError("snapshot: avg_reliability must be > 0");
        snap.aggregates.push_back(a);
    }
    for (std::size_t k = 0; k < jobs->size(); ++k) {
        ObjectReader jr((*jobs)[k], "snapshot.jobs[" + std::to_string(k) + "]");
        JobSnapshot j;
        int type = 0;
        jr.get("job_id", j.job_id);
        jr.get("data_type", type);
        jr.get("demand", j.demand);
        jr.get("payment", j.payment);
        jr.get("queue", j.queue);
        jr.finish();
        j.data_type = DataTypeId{type};
        if (type < 0 || static_cast<std::size_t>(type) >= snap.aggregates.size())
            throw ConfigError("snapshot: job data_type has no aggregates");
        if (j.demand < 1) throw ConfigError("snapshot: demand must be ≥ 1");
        snap.jobs.push_back(j);
    }
    return snap;
}

}  // namespace fairfedjs
