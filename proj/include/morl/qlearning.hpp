#pragma once

#include <cstdint>
#include <map>

#include "morl/policy.hpp"
#include "morl/utility.hpp"

namespace morl {

class RewardModel;

/// Which reward signal drives training.
///  - TrueRewards: condition on and score with true rewards.
///  - FullProxy: condition on and score with model-predicted rewards.
///  - AsymmetricProxy: condition on model-predicted rewards, score episodes
///    with the true return (available at training time only).
enum class TrainingMode { TrueRewards, FullProxy, AsymmetricProxy };

std::string to_string(TrainingMode mode);
TrainingMode parse_training_mode(const std::string& text);

ObservationKind observation_kind(TrainingMode mode);

struct TrainConfig {
    std::size_t episodes = 50'000;
    double alpha = 0.1;
    double epsilon_start = 1.0;
    double epsilon_end = 0.01;
    std::size_t epsilon_decay_episodes = 0;  // 0 means decay over all episodes
    std::uint64_t seed = 1;
    TrainingMode mode = TrainingMode::TrueRewards;
    std::size_t curve_every = 100;  // greedy-policy evaluation interval, in episodes
    double grid = kDefaultGrid;

    void check() const;

    /// Linear decay from epsilon_start to epsilon_end, constant afterwards.
    double epsilon_at(std::size_t episode) const;
};

struct QEntry {
    std::vector<double> q;
    std::vector<std::size_t> visits;

    friend bool operator==(const QEntry&, const QEntry&) = default;
};

struct QTable {
    double grid = kDefaultGrid;
    std::map<ObservationKey, QEntry> entries;

    friend bool operator==(const QTable&, const QTable&) = default;
};

struct CurvePoint {
    std::size_t episode = 0;
    double greedy_value = 0.0;
    double epsilon = 0.0;
};

/// Tabular epsilon-greedy Q-learning over augmented observations for ESR.
///
/// Intermediate steps carry no scalar reward; the only payoff is the utility
/// of the final accumulated return, so Q(o, a) estimates the expected utility
/// at episode end. Holds references to its inputs, which must outlive it.
class QLearner {
public:
    QLearner(const Momdp& momdp, const UtilityFunction& u, TrainingMode mode, const RewardModel* model,
             double alpha, std::uint64_t seed, double grid = kDefaultGrid);

    /// Runs one episode; episode k always draws from stream k of the seed.
    void run_episode(double epsilon);

    /// Greedy policy over the table; ties go to the lowest action index and
    /// unseen observations fall back to action 0.
    Policy greedy_policy() const;

    const QTable& table() const { return table_; }
    std::size_t episodes_run() const { return episode_; }

private:
    QEntry& entry(const ObservationKey& key, StateId s);

    const Momdp& momdp_;
    const UtilityFunction& u_;
    TrainingMode mode_;
    const RewardModel* model_;
    double alpha_;
    std::uint64_t seed_;
    QTable table_;
    std::size_t episode_ = 0;
};

struct TrainResult {
    QTable table;
    Policy policy;
    std::vector<CurvePoint> curve;
};

/// Trains from scratch per `config`. The learning curve records the exact ESR
/// of the greedy policy every `curve_every` episodes, evaluated under the
/// regime matching the training mode.
TrainResult train_q(const Momdp& momdp, const UtilityFunction& u, const TrainConfig& config,
                    const RewardModel* model = nullptr);

}  // namespace morl
