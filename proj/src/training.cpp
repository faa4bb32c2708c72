#include "nfs/training.hpp"

#include "nfs/kernels.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace nfs {

namespace {

constexpr double kFuzzifier = 2.0;
constexpr std::size_t kFcmMaxIterations = 100;
constexpr double kFcmTolerance = 1e-6;
constexpr double kSigmaFloor = 1e-6;
constexpr double kSlopeFloor = 1e-6;
constexpr double kRidge = 1e-9;
// MA triangle half-width relative to the output stddev; the crisp output ignores it.
constexpr double kMamdaniHalfWidth = 0.25;

// 53 random mantissa bits; independent of the standard library's distributions.
double uniform01(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

double squared_distance(std::span<const double> x, const std::vector<double>& c) {
    double s = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) s += (x[j] - c[j]) * (x[j] - c[j]);
    return s;
}

// u_ci for fuzzifier 2 from squared distances; points on a centre share it.
void update_memberships(const std::vector<double>& dist, std::size_t n_clusters, std::size_t i, std::size_t n,
                        std::vector<double>& u) {
    std::size_t zeros = 0;
    for (std::size_t c = 0; c < n_clusters; ++c)
        if (dist[c] == 0.0) ++zeros;
    for (std::size_t c = 0; c < n_clusters; ++c) {
        if (zeros > 0) {
            u[c * n + i] = dist[c] == 0.0 ? 1.0 / static_cast<double>(zeros) : 0.0;
            continue;
        }
        double sum = 0.0;
        for (std::size_t k = 0; k < n_clusters; ++k) sum += std::pow(dist[c] / dist[k], 1.0 / (kFuzzifier - 1.0));
        u[c * n + i] = 1.0 / sum;
    }
}

std::vector<std::vector<double>> weighted_centers(const Dataset& d, const std::vector<double>& u,
                                                  std::size_t n_clusters) {
    const std::size_t n = d.size();
    std::vector<std::vector<double>> centers(n_clusters, std::vector<double>(d.width(), 0.0));
    for (std::size_t c = 0; c < n_clusters; ++c) {
        double wsum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double w = std::pow(u[c * n + i], kFuzzifier);
            wsum += w;
            for (std::size_t j = 0; j < d.width(); ++j) centers[c][j] += w * d.at(i, j);
        }
        for (double& v : centers[c]) v /= wsum;
    }
    return centers;
}

MembershipFunction stepped(const MembershipFunction& f, double g0, double g1, double lr) {
    auto p = f.parameters();
    p[0] -= lr * g0;
    p[1] -= lr * g1;
    if (f.kind() == MembershipKind::Gaussian) {
        p[1] = std::max(p[1], kSigmaFloor);
    } else if (std::abs(p[1]) < kSlopeFloor) {
        p[1] = std::copysign(kSlopeFloor, f.parameters()[1]);
    }
    return MembershipFunction::from_parameters(f.kind(), p);
}

}  // namespace

void TrainConfig::validate() const {
    if (n_rules == 0) throw std::invalid_argument("n_rules must be at least 1");
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate))
        throw std::invalid_argument("learning_rate must be positive");
}

FuzzyClusters fuzzy_c_means(const Dataset& d, std::size_t n_clusters, std::uint64_t seed) {
    const std::size_t n = d.size();
    if (n_clusters == 0) throw std::invalid_argument("fuzzy c-means needs at least one cluster");
    if (n_clusters > n)
        throw std::invalid_argument("cannot form " + std::to_string(n_clusters) + " clusters from " +
                                    std::to_string(n) + " rows");

    const auto stats = compute_stats(d);
    if (std::all_of(stats.inputs.begin(), stats.inputs.end(), [](const AttributeStats& s) { return s.stddev == 0.0; }))
        throw std::invalid_argument("all input rows are identical; clustering is degenerate");

    // Seed centres at distinct random rows (partial Fisher-Yates).
    std::mt19937_64 gen(seed);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    FuzzyClusters out;
    for (std::size_t c = 0; c < n_clusters; ++c) {
        const auto pick = c + static_cast<std::size_t>(uniform01(gen) * static_cast<double>(n - c));
        std::swap(order[c], order[std::min(pick, n - 1)]);
        const auto row = d.row(order[c]);
        out.centers.emplace_back(row.begin(), row.end());
    }

    std::vector<double> u(n_clusters * n);
    std::vector<double> dist(n_clusters);
    for (out.iterations = 0; out.iterations < kFcmMaxIterations; ++out.iterations) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t c = 0; c < n_clusters; ++c) dist[c] = squared_distance(d.row(i), out.centers[c]);
            update_memberships(dist, n_clusters, i, n, u);
        }
        auto next = weighted_centers(d, u, n_clusters);
        double shift = 0.0;
        for (std::size_t c = 0; c < n_clusters; ++c) shift = std::max(shift, std::sqrt(squared_distance(next[c], out.centers[c])));
        out.centers = std::move(next);
        if (shift < kFcmTolerance) {
            ++out.iterations;
            break;
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < n_clusters; ++c) dist[c] = squared_distance(d.row(i), out.centers[c]);
        update_memberships(dist, n_clusters, i, n, u);
    }
    out.spreads.assign(n_clusters, std::vector<double>(d.width(), 0.0));
    for (std::size_t c = 0; c < n_clusters; ++c) {
        double wsum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double w = std::pow(u[c * n + i], kFuzzifier);
            wsum += w;
            for (std::size_t j = 0; j < d.width(); ++j) {
                const double diff = d.at(i, j) - out.centers[c][j];
                out.spreads[c][j] += w * diff * diff;
            }
        }
        for (std::size_t j = 0; j < d.width(); ++j) {
            const double floor = std::max(1e-3 * stats.inputs[j].stddev, kSigmaFloor);
            out.spreads[c][j] = std::max(std::sqrt(out.spreads[c][j] / wsum), floor);
        }
    }
    return out;
}

RuleBase initialize(const Dataset& d, const TrainConfig& cfg) {
    cfg.validate();
    const auto clusters = fuzzy_c_means(d, cfg.n_rules, cfg.seed);
    const auto out = column_stats(d.outputs());

    std::vector<Rule> rules;
    for (std::size_t c = 0; c < cfg.n_rules; ++c) {
        Premise premise;
        for (std::size_t j = 0; j < d.width(); ++j)
            premise.clauses.push_back({j, MembershipFunction::gaussian(clusters.centers[c][j], clusters.spreads[c][j])});

        Consequence consequence;
        switch (cfg.kind) {
            case SystemKind::Mamdani:
                consequence = MamdaniConsequence{
                    {out.mean - kMamdaniHalfWidth * out.stddev, out.mean, out.mean + kMamdaniHalfWidth * out.stddev}};
                break;
            case SystemKind::Tsk:
                consequence = TskConsequence{std::vector<double>(d.width(), 0.0), out.mean};
                break;
            case SystemKind::Annbfis:
                consequence = AnnbfisConsequence{std::max(out.stddev, kSigmaFloor),
                                                 std::vector<double>(d.width(), 0.0), out.mean};
                break;
        }
        rules.push_back({std::move(premise), std::move(consequence)});
    }
    return RuleBase(cfg.kind, d.attribute_names(), d.output_name(), std::move(rules));
}

RuleBase gradient_step(const RuleBase& rb, const Dataset& d, double learning_rate, StepTarget target) {
    if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate))
        throw std::invalid_argument("learning rate must be non-negative");
    if (learning_rate == 0.0) return rb;

    const auto layout = ParameterLayout::of(rb);
    const auto g = parallel::mse_gradient(rb, d).gradient;
    const bool premises = target != StepTarget::Consequences;
    const bool consequences = target != StepTarget::Premises && rb.kind() == SystemKind::Mamdani;

    auto rules = rb.rules();
    for (std::size_t r = 0; r < rules.size(); ++r) {
        if (premises) {
            auto& clauses = rules[r].premise.clauses;
            for (std::size_t k = 0; k < clauses.size(); ++k)
                clauses[k].descriptor = stepped(clauses[k].descriptor, g[layout.clause_param(r, k, 0)],
                                                g[layout.clause_param(r, k, 1)], learning_rate);
        }
        if (consequences) {
            auto& tri = std::get<MamdaniConsequence>(rules[r].consequence).triangle;
            const double shift = -learning_rate * g[layout.centroid_offset + r];
            tri = {tri.a + shift, tri.b + shift, tri.c + shift};
        }
    }
    return rb.with_rules(std::move(rules));
}

RuleBase train_premises_gradient(const RuleBase& rb, const Dataset& d, std::size_t epochs, double learning_rate) {
    RuleBase current = rb;
    for (std::size_t e = 0; e < epochs; ++e) current = gradient_step(current, d, learning_rate, StepTarget::Premises);
    return current;
}

LeastSquaresResult solve_consequences_ls(const RuleBase& rb, const Dataset& d) {
    if (rb.kind() == SystemKind::Mamdani)
        throw std::invalid_argument("least-squares consequences apply to TSK and ANNBFIS rule bases only");

    using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const std::size_t stride = d.width() + 1;
    const auto cols = static_cast<Eigen::Index>(rb.rules().size() * stride);
    const auto rows = static_cast<Eigen::Index>(d.size());
    auto design = parallel::consequence_design(rb, d);
    const Eigen::Map<const RowMatrix> a(design.data(), rows, cols);
    const Eigen::Map<const Eigen::VectorXd> y(d.outputs().data(), rows);

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    Eigen::VectorXd theta;
    const bool deficient = qr.rank() < cols;
    if (deficient) {
        Eigen::MatrixXd normal = a.transpose() * a;
        normal.diagonal().array() += kRidge;
        theta = normal.ldlt().solve(a.transpose() * y);
    } else {
        theta = qr.solve(y);
    }

    auto rules = rb.rules();
    for (std::size_t r = 0; r < rules.size(); ++r) {
        std::vector<double> weights(d.width());
        for (std::size_t j = 0; j < d.width(); ++j) weights[j] = theta(static_cast<Eigen::Index>(r * stride + j));
        const double constant = theta(static_cast<Eigen::Index>(r * stride + d.width()));
        if (auto* tsk = std::get_if<TskConsequence>(&rules[r].consequence)) {
            tsk->weights = std::move(weights);
            tsk->constant = constant;
        } else {
            auto& ann = std::get<AnnbfisConsequence>(rules[r].consequence);
            ann.weights = std::move(weights);
            ann.constant = constant;
        }
    }
    return {rb.with_rules(std::move(rules)), deficient};
}

double rmse(const RuleBase& rb, const Dataset& d) { return std::sqrt(parallel::mse(rb, d)); }

TrainReport train(const Dataset& d, const TrainConfig& cfg) {
    cfg.validate();
    RuleBase rb = initialize(d, cfg);
    std::vector<double> history{rmse(rb, d)};
    for (std::size_t e = 0; e < cfg.epochs; ++e) {
        if (rb.kind() == SystemKind::Mamdani) {
            rb = gradient_step(rb, d, cfg.learning_rate, StepTarget::Consequences);
        } else {
            rb = solve_consequences_ls(rb, d).rulebase;
        }
        rb = gradient_step(rb, d, cfg.learning_rate, StepTarget::Premises);
        history.push_back(rmse(rb, d));
    }
    return {std::move(history), std::move(rb)};
}

}  // namespace nfs
