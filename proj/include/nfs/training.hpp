#pragma once

#include "nfs/dataset.hpp"
#include "nfs/rulebase.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace nfs {

struct TrainConfig {
    SystemKind kind = SystemKind::Tsk;
    std::size_t n_rules = 4;
    std::size_t epochs = 100;
    double learning_rate = 0.01;
    std::uint64_t seed = 1;

    /// Throws std::invalid_argument for n_rules == 0 or a non-positive learning rate.
    void validate() const;
};

struct TrainReport {
    std::vector<double> rmse_per_epoch;  // [0] is the RMSE of the initial rule base
    RuleBase final_rulebase;
};

struct FuzzyClusters {
    std::vector<std::vector<double>> centers;  // n_clusters x width
    std::vector<std::vector<double>> spreads;  // fuzzy-weighted per-attribute standard deviation
    std::size_t iterations = 0;
};

/// Fuzzy c-means on the input columns with fuzzifier 2. Centres start at
/// distinct rows drawn with `seed`; iteration stops after 100 rounds or when
/// no centre moves more than 1e-6. Spreads are floored at 1e-3 * column stddev.
FuzzyClusters fuzzy_c_means(const Dataset& d, std::size_t n_clusters, std::uint64_t seed);

/// One rule per cluster: Gaussian premise clause per attribute, consequences
/// at the output mean (MA triangle of half-width 0.25 * stddev; TSK/ANNBFIS zero
/// weights, ANNBFIS width = output stddev).
RuleBase initialize(const Dataset& d, const TrainConfig& cfg);

enum class StepTarget { Premises, Consequences, Both };

/// One batch gradient-descent step on the training MSE. Gaussian spreads are
/// floored at 1e-6 and one-tailed slopes keep |s| >= 1e-6. Consequence steps
/// only apply to MA rule bases (they move each triangle rigidly).
RuleBase gradient_step(const RuleBase& rb, const Dataset& d, double learning_rate,
                       StepTarget target = StepTarget::Premises);

/// `epochs` premise-only gradient steps.
RuleBase train_premises_gradient(const RuleBase& rb, const Dataset& d, std::size_t epochs,
                                 double learning_rate);

struct LeastSquaresResult {
    RuleBase rulebase;
    bool rank_deficient = false;  // a ridge-regularized solution was used
};

/// Jointly solves all TSK / ANNBFIS consequence weights for fixed premises.
LeastSquaresResult solve_consequences_ls(const RuleBase& rb, const Dataset& d);

double rmse(const RuleBase& rb, const Dataset& d);

TrainReport train(const Dataset& d, const TrainConfig& cfg);

}  // namespace nfs
