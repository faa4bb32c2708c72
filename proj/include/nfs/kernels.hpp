#pragma once

// Per-sample batch kernels used by training and evaluation.
//
// Each kernel comes twice: `serial::` is the plain reference loop, `parallel::`
// distributes samples over OpenMP threads. The parallel versions write
// per-sample results into a buffer and reduce it in sample order, so both
// produce bitwise identical results for any thread count.

#include "nfs/dataset.hpp"
#include "nfs/rulebase.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace nfs {

/// Flat indexing of the trainable parameters of a rule base: the two
/// parameters of every premise clause (rule-major, clause order), followed
/// for MA rule bases by one centroid position per rule.
struct ParameterLayout {
    std::vector<std::size_t> rule_offset;  // index of the first clause parameter of each rule
    std::size_t premise_count = 0;
    std::size_t centroid_offset = 0;
    std::size_t total = 0;

    static ParameterLayout of(const RuleBase& rb);

    std::size_t clause_param(std::size_t rule, std::size_t clause, std::size_t p) const {
        return rule_offset[rule] + 2 * clause + p;
    }
};

struct LossGradient {
    double mse = 0.0;
    std::vector<double> gradient;  // d(MSE)/d(theta), laid out by ParameterLayout
};

/// Rule-normalized firing strengths for one input; uniform 1/R when every rule
/// fires at zero (matching the inference fallback).
void normalized_firing(const RuleBase& rb, std::span<const double> x, std::span<double> out);

namespace serial {

std::vector<double> predict(const RuleBase& rb, const Dataset& d);
double mse(const RuleBase& rb, const Dataset& d);

/// MSE and its gradient. Every premise descriptor must be differentiable
/// (UnsupportedOperation otherwise).
LossGradient mse_gradient(const RuleBase& rb, const Dataset& d);

/// Row-major n_rows x (n_rules * (width + 1)) matrix; row i holds
/// g_r(x_i) * [x_i, 1] for each rule r.
std::vector<double> consequence_design(const RuleBase& rb, const Dataset& d);

}  // namespace serial

namespace parallel {

std::vector<double> predict(const RuleBase& rb, const Dataset& d);
double mse(const RuleBase& rb, const Dataset& d);
LossGradient mse_gradient(const RuleBase& rb, const Dataset& d);
std::vector<double> consequence_design(const RuleBase& rb, const Dataset& d);

/// Threads used by the parallel kernels (OpenMP max threads).
int thread_count();

}  // namespace parallel

}  // namespace nfs
