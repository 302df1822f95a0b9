#include "fairfedjs/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "fairfedjs/metrics.hpp"
#include "fairfedjs/scheduler.hpp"
#include "fairfedjs/simulator.hpp"

namespace fairfedjs::cli {

namespace fs = std::filesystem;

namespace {

struct CellResult {
    SchedulerKind scheduler;
    std::uint64_t seed;
    RunSummary summary;
};

std::string ledger_name(SchedulerKind kind, std::uint64_t seed) {
    return "ledger_" + to_string(kind) + "_" + std::to_string(seed) + ".jsonl";
}

std::string snapshot_name(SchedulerKind kind, std::uint64_t seed) {
    return "state_" + to_string(kind) + "_" + std::to_string(seed) + ".json";
}

// Loads and validates the config; prints the reason and returns nullopt on failure.
std::optional<SimConfig> load_valid_config(const std::string& path, std::ostream& err) {
    SimConfig config;
    try {
        config = load_config(path);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return std::nullopt;
    }
    if (auto violations = validate_config(config); !violations.empty()) {
        err << "error: invalid configuration '" << path << "':\n";
        for (const auto& v : violations) err << "  - " << v << '\n';
        return std::nullopt;
    }
    return config;
}

// Runs every (scheduler, seed) cell in manifest order and writes per-cell files
// plus summary.csv. Returns nullopt after reporting an error.
std::optional<std::vector<CellResult>> run_cells(const ExperimentManifest& requested, std::ostream& out,
                                                 std::ostream& err) {
    auto config = load_valid_config(requested.config_path, err);
    if (!config) return std::nullopt;
    const auto manifest = complete_manifest(requested, *config);

    std::error_code ec;
    fs::create_directories(manifest.output_dir, ec);
    if (ec) {
        err << "error: cannot create output directory '" << manifest.output_dir << "': " << ec.message() << '\n';
        return std::nullopt;
    }
    const fs::path dir(manifest.output_dir);

    std::ofstream summary(dir / "summary.csv", std::ios::trunc);
    if (!summary) {
        err << "error: cannot write " << (dir / "summary.csv").string() << '\n';
        return std::nullopt;
    }
    summary << summary_csv_header(config->jobs.size()) << '\n';

    std::vector<CellResult> results;
    for (SchedulerKind kind : manifest.schedulers) {
        for (std::uint64_t seed : manifest.seeds) {
            SimConfig cell = *config;
            cell.scheduler = kind;
            cell.seed = seed;

            SimState final_state;
            const auto ledgers = run_simulation(cell, &final_state);
            const auto s = summarize(ledgers, cell.convergence_epsilon, cell.convergence_window);

            std::ofstream ledger_file(dir / ledger_name(kind, seed), std::ios::trunc);
            if (!ledger_file) {
                err << "error: cannot write " << (dir / ledger_name(kind, seed)).string() << '\n';
                return std::nullopt;
            }
            write_ledgers(ledger_file, ledgers);

            if (manifest.write_snapshots) {
                std::ofstream snap(dir / snapshot_name(kind, seed), std::ios::trunc);
                snap << snapshot_to_json(make_snapshot(final_state, cell)).dump(2) << '\n';
            }

            summary << summary_csv_row(kind, seed, s) << '\n';
            out << to_string(kind) << " seed=" << seed << " sf=" << format_double(s.sf) << '\n';
            results.push_back({kind, seed, s});
        }
    }
    return results;
}

}  // namespace

std::string resolve_output_dir(const std::optional<std::string>& flag) {
    if (flag && !flag->empty()) return *flag;
    if (const char* env = std::getenv(kOutDirEnv); env && *env) return env;
    return "out";
}

ExperimentManifest complete_manifest(ExperimentManifest manifest, const SimConfig& config) {
    if (manifest.seeds.empty()) manifest.seeds.push_back(config.seed);
    if (manifest.schedulers.empty()) manifest.schedulers.push_back(config.scheduler);
    return manifest;
}

int cmd_run(const ExperimentManifest& manifest, std::ostream& out, std::ostream& err) {
    return run_cells(manifest, out, err) ? 0 : kExitInputError;
}

std::string comparison_csv(const std::vector<ComparisonRow>& rows) {
    std::ostringstream csv;
    csv << "scheduler,mean_sf,mean_convergence_round,converged_runs,mean_final_accuracy\n";
    for (const auto& r : rows) {
        csv << to_string(r.scheduler) << ',' << format_double(r.mean_sf) << ',';
        if (r.mean_convergence_round) csv << format_double(*r.mean_convergence_round);
        csv << ',' << r.converged_runs << ',' << format_double(r.mean_final_accuracy) << '\n';
    }
    return csv.str();
}

int cmd_compare(ExperimentManifest manifest, std::ostream& out, std::ostream& err) {
    if (manifest.schedulers.empty())
        manifest.schedulers = {SchedulerKind::FairFedJS, SchedulerKind::Random, SchedulerKind::ALT,
                               SchedulerKind::UB, SchedulerKind::MJFL};
    auto results = run_cells(manifest, out, err);
    if (!results) return kExitInputError;

    std::vector<ComparisonRow> rows;
    for (SchedulerKind kind : manifest.schedulers) {
        ComparisonRow row;
        row.scheduler = kind;
        int runs = 0;
        double conv_sum = 0.0;
        std::size_t acc_count = 0;
        for (const auto& cell : *results) {
            if (cell.scheduler != kind) continue;
            ++runs;
            row.mean_sf += cell.summary.sf;
            if (cell.summary.convergence_round) {
                conv_sum += *cell.summary.convergence_round;
                ++row.converged_runs;
            }
            for (double a : cell.summary.final_accuracy) {
                row.mean_final_accuracy += a;
                ++acc_count;
            }
        }
        if (runs > 0) row.mean_sf /= runs;
        if (acc_count > 0) row.mean_final_accuracy /= static_cast<double>(acc_count);
        if (row.converged_runs > 0) row.mean_convergence_round = conv_sum / row.converged_runs;
        rows.push_back(row);
    }

    const fs::path path = fs::path(manifest.output_dir) / "comparison.csv";
    std::ofstream csv(path, std::ios::trunc);
    if (!csv) {
        err << "error: cannot write " << path.string() << '\n';
        return kExitInputError;
    }
    csv << comparison_csv(rows);
    out << comparison_csv(rows);
    return 0;
}

WhatIfReport what_if(const StateSnapshot& snapshot, JobId job, double payment) {
    std::vector<JobView> views;
    const JobView* target = nullptr;
    for (const auto& j : snapshot.jobs) views.push_back({j.job_id, j.data_type, j.demand, j.payment, j.queue});
    for (const auto& v : views)
        if (v.job_id == job) target = &v;
    if (target == nullptr) throw std::out_of_range("unknown job id " + std::to_string(job));

    auto rank_of = [](const ScheduleDecision& d, std::size_t slots) {
        std::vector<int> rank(slots, 0);
        for (std::size_t pos = 0; pos < d.ordered_jobs.size(); ++pos)
            rank[static_cast<std::size_t>(d.ordered_jobs[pos])] = static_cast<int>(pos) + 1;
        return rank;
    };

    const auto before = order_fairfedjs(views, snapshot.aggregates, snapshot.sigma);
    WhatIfReport report;
    report.jsi = before.jsi;
    report.rank = rank_of(before, before.jsi.size());

    for (auto& v : views)
        if (v.job_id == job) v.payment = payment;
    const auto after = order_fairfedjs(views, snapshot.aggregates, snapshot.sigma);
    report.new_jsi = after.jsi[static_cast<std::size_t>(job)];
    report.new_rank = rank_of(after, after.jsi.size())[static_cast<std::size_t>(job)];
    return report;
}

int cmd_whatif(const std::string& snapshot_path, JobId job, double payment, std::ostream& out, std::ostream& err) {
    StateSnapshot snap;
    try {
        std::ifstream in(snapshot_path);
        if (!in) throw ConfigError("cannot read snapshot '" + snapshot_path + "'");
        json doc;
        try {
            doc = json::parse(in);
        } catch (const json::parse_error& e) {
            throw ConfigError("cannot parse snapshot '" + snapshot_path + "': " + e.what());
        }
        snap = snapshot_from_json(doc);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }

    WhatIfReport report;
    try {
        report = what_if(snap, job, payment);
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }

    double current_payment = 0.0;
    for (const auto& j : snap.jobs)
        if (j.job_id == job) current_payment = j.payment;

    out << "round " << snap.round << ", sigma " << format_double(snap.sigma) << '\n';
    out << "job  rank  payment  jsi\n";
    for (const auto& j : snap.jobs) {
        const auto k = static_cast<std::size_t>(j.job_id);
        out << std::setw(3) << j.job_id << "  " << std::setw(4) << report.rank[k] << "  " << std::setw(7)
            << format_double(j.payment) << "  " << format_double(report.jsi[k]) << '\n';
    }
    const auto k = static_cast<std::size_t>(job);
    out << "job " << job << ": payment " << format_double(current_payment) << " -> " << format_double(payment)
        << ", jsi " << format_double(report.jsi[k]) << " -> " << format_double(report.new_jsi) << ", rank "
        << report.rank[k] << " -> " << report.new_rank << '\n';
    return 0;
}

int cmd_validate(const std::string& config_path, std::ostream& out, std::ostream& err) {
    SimConfig config;
    try {
        config = load_config(config_path);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    const auto violations = validate_config(config);
    for (const auto& v : violations) out << v << '\n';
    if (violations.empty()) out << "ok\n";
    return violations.empty() ? 0 : kExitInputError;
}

}  // namespace fairfedjs::cli
