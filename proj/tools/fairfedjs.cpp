#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fairfedjs/cli.hpp"
#include "fairfedjs/io.hpp"

using namespace fairfedjs;

namespace {

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
    // "1,2,3" or "0-9"
    std::vector<std::uint64_t> seeds;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        if (auto dash = item.find('-'); dash != std::string::npos && dash > 0) {
            const auto lo = std::stoull(item.substr(0, dash));
            const auto hi = std::stoull(item.substr(dash + 1));
            if (hi < lo) throw ConfigError("bad seed range '" + item + "'");
            for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
        } else {
            seeds.push_back(std::stoull(item));
        }
    }
    return seeds;
}

std::vector<SchedulerKind> parse_schedulers(const std::string& text) {
    if (text == "all")
        return {SchedulerKind::FairFedJS, SchedulerKind::Random, SchedulerKind::ALT, SchedulerKind::UB,
                SchedulerKind::MJFL};
    std::vector<SchedulerKind> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(parse_scheduler(item));
    return out;
}

struct GridFlags {
    std::string config;
    std::optional<std::string> out;
    std::string seeds;
    std::string schedulers;
    bool snapshots = false;
};

void add_grid_flags(CLI::App* cmd, GridFlags& f) {
    cmd->add_option("--config", f.config, "Experiment config (JSON)")->required();
    cmd->add_option("--out", f.out, std::string("Output directory (default: $") + cli::kOutDirEnv + " or ./out)");
    cmd->add_option("--seeds", f.seeds, "Comma-separated seeds or ranges, e.g. 0-9");
    cmd->add_option("--schedulers", f.schedulers, "Comma-separated: fairfedjs,random,alt,ub,mjfl or 'all'");
    cmd->add_flag("--snapshots", f.snapshots, "Also write the final state of every run for 'whatif'");
}

cli::ExperimentManifest to_manifest(const GridFlags& f) {
    cli::ExperimentManifest m;
    m.config_path = f.config;
    m.output_dir = cli::resolve_output_dir(f.out);
    m.seeds = parse_seeds(f.seeds);
    m.schedulers = parse_schedulers(f.schedulers);
    m.write_snapshots = f.snapshots;
    return m;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-job federated learning scheduling simulator"};
    app.require_subcommand(1);

    GridFlags run_flags;
    auto* run = app.add_subcommand("run", "Run every (scheduler, seed) cell and write ledgers plus summary.csv");
    add_grid_flags(run, run_flags);

    GridFlags cmp_flags;
    auto* compare = app.add_subcommand("compare", "Run all schedulers on shared seeds and write comparison.csv");
    add_grid_flags(compare, cmp_flags);

    std::string snapshot;
    int job = 0;
    double payment = 0.0;
    auto* whatif = app.add_subcommand("whatif", "Show how a payment change would move a job in the schedule");
    whatif->add_option("--snapshot", snapshot, "State snapshot written by 'run --snapshots'")->required();
    whatif->add_option("--job", job, "Job id")->required();
    whatif->add_option("--payment", payment, "Hypothetical payment")->required();

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "Check a config and list every violation");
    validate->add_option("--config", validate_path, "Experiment config (JSON)")->required();

    auto* reference = app.add_subcommand("reference-config", "Print the reference experiment config");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cli::kExitInputError;
    }

    try {
        if (*run) return cli::cmd_run(to_manifest(run_flags), std::cout, std::cerr);
        if (*compare) return cli::cmd_compare(to_manifest(cmp_flags), std::cout, std::cerr);
        if (*whatif) return cli::cmd_whatif(snapshot, job, payment, std::cout, std::cerr);
        if (*validate) return cli::cmd_validate(validate_path, std::cout, std::cerr);
        if (*reference) {
            std::cout << config_to_json(reference_config()).dump(2) << '\n';
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::kExitInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::kExitInputError;
    }
    return 0;
}
