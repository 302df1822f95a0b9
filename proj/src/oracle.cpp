#include "fairfedjs/oracle.hpp"

#include <algorithm>
#include <random>

#include "fairfedjs/rng.hpp"

namespace fairfedjs {

double OracleDraws::noise(double stddev) const {
    if (stddev <= 0.0) return 0.0;
    auto eng = substream(root_seed, Stream::OracleNoise,
                         {static_cast<std::uint64_t>(round), static_cast<std::uint64_t>(job)});
    std::normal_distribution<double> dist(0.0, stddev);
    return dist(eng);
}

double OracleDraws::improvement_uniform(ClientId client) const {
    return keyed_uniform(root_seed, Stream::OracleImprovement,
                         {static_cast<std::uint64_t>(round), static_cast<std::uint64_t>(job),
                          static_cast<std::uint64_t>(client)});
}

double effective_quality(double quality, const OracleParams& params, DataRegime regime) {
    return regime == DataRegime::NonIID ? quality * (1.0 - params.noniid_penalty) : quality;
}

TrainingOutcome oracle_train(double accuracy, std::span<const AssignedClient> clients, const OracleParams& params,
                             DataRegime regime, const OracleDraws& draws) {
    TrainingOutcome out;
    double quality_sum = 0.0;
    for (const auto& c : clients) {
        const double q = effective_quality(c.quality, params, regime);
        quality_sum += q;
        out.per_client_improved[c.client_id] = draws.improvement_uniform(c.client_id) < q;
    }
    const double mean_quality = clients.empty() ? 0.0 : quality_sum / static_cast<double>(clients.size());
    const double next =
        accuracy + params.gain_rate * (params.acc_cap - accuracy) * mean_quality + draws.noise(params.noise_std);
    out.new_accuracy = std::clamp(next, 0.0, params.acc_cap);
    return out;
}

}  // namespace fairfedjs
