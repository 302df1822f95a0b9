// Synthetic stand-in for federated training of one job for one round.

#pragma once

#include <cstdint>
#include <map>
#include <span>

#include "fairfedjs/domain.hpp"

namespace fairfedjs {

struct TrainingOutcome {
    double new_accuracy = 0.0;
    std::map<ClientId, bool> per_client_improved;
};

struct AssignedClient {
    ClientId client_id = 0;
    double quality = 0.0;  // raw holding quality; the regime is applied inside
};

/// Randomness for one (round, job) cell. Draws are keyed, so a client's
/// improvement flag and the job's noise do not depend on who else trained.
struct OracleDraws {
    std::uint64_t root_seed = 0;
    int round = 0;
    JobId job = 0;

    double noise(double stddev) const;
    double improvement_uniform(ClientId client) const;
};

double effective_quality(double quality, const OracleParams& params, DataRegime regime);

/// acc' = clamp(acc + g*(cap - acc)*mean_quality + noise, 0, cap); each client
/// improved with probability equal to its effective quality.
TrainingOutcome oracle_train(double accuracy, std::span<const AssignedClient> clients, const OracleParams& params,
                             DataRegime regime, const OracleDraws& draws);

/// Pluggable trainer used by the simulator.
class TrainingOracle {
public:
    virtual ~TrainingOracle() = default;
    virtual TrainingOutcome train(double accuracy, std::span<const AssignedClient> clients,
                                  const OracleParams& params, DataRegime regime, const OracleDraws& draws) const = 0;
};

class SyntheticOracle final : public TrainingOracle {
public:
    TrainingOutcome train(double accuracy, std::span<const AssignedClient> clients, const OracleParams& params,
                          DataRegime regime, const OracleDraws& draws) const override {
        return oracle_train(accuracy, clients, params, regime, draws);
    }
};

}  // namespace fairfedjs
