#include "nfs/kernels.hpp"

#include "nfs/errors.hpp"

#include <omp.h>

#include <algorithm>

#include <stdexcept>
#include <string>

namespace nfs {

ParameterLayout ParameterLayout::of(const RuleBase& rb) {
    ParameterLayout layout;
    std::size_t offset = 0;
    for (const auto& rule : rb.rules()) {
        layout.rule_offset.push_back(offset);
        offset += 2 * rule.premise.clauses.size();
    }
    layout.premise_count = offset;
    layout.centroid_offset = offset;
    if (rb.kind() == SystemKind::Mamdani) offset += rb.rules().size();
    layout.total = offset;
    return layout;
}

void normalized_firing(const RuleBase& rb, std::span<const double> x, std::span<double> out) {
    const auto& rules = rb.rules();
    double total = 0.0;
    for (std::size_t r = 0; r < rules.size(); ++r) {
        out[r] = firing_strength(rules[r].premise, x);
        total += out[r];
    }
    if (total > 0.0) {
        for (std::size_t r = 0; r < rules.size(); ++r) out[r] /= total;
    } else {
        for (std::size_t r = 0; r < rules.size(); ++r) out[r] = 1.0 / static_cast<double>(rules.size());
    }
}

namespace {

double predict_one(const RuleBase& rb, std::span<const double> x) { return infer(rb, x).value; }

void require_compatible(const RuleBase& rb, const Dataset& d) {
    if (rb.input_width() != d.width())
        throw std::invalid_argument("rule base expects " + std::to_string(rb.input_width()) +
                                    " inputs but the dataset has " + std::to_string(d.width()));
}

void require_differentiable(const RuleBase& rb) {
    for (std::size_t r = 0; r < rb.rules().size(); ++r)
        for (const auto& clause : rb.rules()[r].premise.clauses)
            if (!is_differentiable(clause.descriptor.kind()))
                throw UnsupportedOperation("rule " + std::to_string(r + 1) + ": " +
                                           std::string(kind_name(clause.descriptor.kind())) +
                                           " premise descriptors cannot be trained by gradient");
}

struct Scratch {
    std::vector<double> mu;
    std::vector<ParamGradient> dmu;
    std::vector<double> firing;
    std::vector<double> outputs;
};

// Writes e * dy/dtheta for one sample into `row` and returns the error e = y - t.
double gradient_row(const RuleBase& rb, const ParameterLayout& layout, std::span<const double> x, double target,
                    std::span<double> row, Scratch& s) {
    const auto& rules = rb.rules();
    const std::size_t n_rules = rules.size();
    s.firing.resize(n_rules);
    s.outputs.resize(n_rules);
    s.mu.resize(layout.premise_count / 2);
    s.dmu.resize(layout.premise_count / 2);

    double total = 0.0;
    for (std::size_t r = 0; r < n_rules; ++r) {
        const auto& clauses = rules[r].premise.clauses;
        const std::size_t base = layout.rule_offset[r] / 2;
        double f = 1.0;
        for (std::size_t k = 0; k < clauses.size(); ++k) {
            const double xv = x[clauses[k].attribute];
            s.mu[base + k] = evaluate(clauses[k].descriptor, xv);
            s.dmu[base + k] = gradient(clauses[k].descriptor, xv);
            f *= s.mu[base + k];
        }
        s.firing[r] = f;
        s.outputs[r] = rule_output(rules[r].consequence, x);
        total += f;
    }

    std::fill(row.begin(), row.end(), 0.0);
    if (!(total > 0.0)) {
        double y = 0.0;
        for (double o : s.outputs) y += o;
        y /= static_cast<double>(n_rules);
        const double e = y - target;
        if (rb.kind() == SystemKind::Mamdani)
            for (std::size_t r = 0; r < n_rules; ++r) row[layout.centroid_offset + r] = e / static_cast<double>(n_rules);
        return e;
    }

    double y = 0.0;
    for (std::size_t r = 0; r < n_rules; ++r) y += s.firing[r] * s.outputs[r];
    y /= total;
    const double e = y - target;

    for (std::size_t r = 0; r < n_rules; ++r) {
        const auto& clauses = rules[r].premise.clauses;
        const std::size_t base = layout.rule_offset[r] / 2;
        const double dy_df = (s.outputs[r] - y) / total;
        for (std::size_t k = 0; k < clauses.size(); ++k) {
            double others = 1.0;
            for (std::size_t j = 0; j < clauses.size(); ++j)
                if (j != k) others *= s.mu[base + j];
            const double scale = e * dy_df * others;
            row[layout.clause_param(r, k, 0)] = scale * s.dmu[base + k][0];
            row[layout.clause_param(r, k, 1)] = scale * s.dmu[base + k][1];
        }
        if (rb.kind() == SystemKind::Mamdani) row[layout.centroid_offset + r] = e * s.firing[r] / total;
    }
    return e;
}

void design_row(const RuleBase& rb, std::span<const double> x, std::span<double> firing, std::span<double> row) {
    normalized_firing(rb, x, firing);
    const std::size_t stride = x.size() + 1;
    for (std::size_t r = 0; r < firing.size(); ++r) {
        for (std::size_t j = 0; j < x.size(); ++j) row[r * stride + j] = firing[r] * x[j];
        row[r * stride + x.size()] = firing[r];
    }
}

double finish_mse(double sum_sq, const Dataset& d) { return sum_sq / static_cast<double>(d.size()); }

void finish_gradient(LossGradient& g, const Dataset& d) {
    const double scale = 2.0 / static_cast<double>(d.size());
    for (double& v : g.gradient) v *= scale;
}

}  // namespace

namespace serial {

std::vector<double> predict(const RuleBase& rb, const Dataset& d) {
    require_compatible(rb, d);
    std::vector<double> y(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) y[i] = predict_one(rb, d.row(i));
    return y;
}

double mse(const RuleBase& rb, const Dataset& d) {
    require_compatible(rb, d);
    double sum = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double e = predict_one(rb, d.row(i)) - d.outputs()[i];
        sum += e * e;
    }
    return finish_mse(sum, d);
}

LossGradient mse_gradient(const RuleBase& rb, const Dataset& d) {
    require_compatible(rb, d);
    require_differentiable(rb);
    const auto layout = ParameterLayout::of(rb);
    LossGradient g;
    g.gradient.assign(layout.total, 0.0);
    std::vector<double> row(layout.total);
    Scratch scratch;
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double e = gradient_row(rb, layout, d.row(i), d.outputs()[i], row, scratch);
        sum_sq += e * e;
        for (std::size_t p = 0; p < layout.total; ++p) g.gradient[p] += row[p];
    }
    g.mse = finish_mse(sum_sq, d);
    finish_gradient(g, d);
    return g;
}

std::vector<double> consequence_design(const RuleBase& rb, const Dataset& d) {
    require_compatible(rb, d);
    const std::size_t cols = rb.rules().size() * (d.width() + 1);
    std::vector<double> a(d.size() * cols);
    std::vector<double> firing(rb.rules().size());
    for (std::size_t i = 0; i < d.size(); ++i)
        design_row(rb, d.row(i), firing, std::span<double>(a).subspan(i * cols, cols));
    return a;
}

}  // namespace serial

namespace parallel {

int thread_count() { return omp_get_max_threads(); }

std::vector<double> predict(const RuleBase& rb, const Dataset& d) {
    const auto n = static_cast<std::ptrdiff_t>(d.size());
    require_compatible(rb, d);
    std::vector<double> y(d.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) y[i] = predict_one(rb, d.row(i));
    return y;
}

double mse(const RuleBase& rb, const Dataset& d) {
    const auto y = predict(rb, d);
    double sum = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double e = y[i] - d.outputs()[i];
        sum += e * e;
    }
    return finish_mse(sum, d);
}

LossGradient mse_gradient(const RuleBase& rb, const Dataset& d) {
    require_compatible(rb, d);
    require_differentiable(rb);
    const auto layout = ParameterLayout::of(rb);
    const std::size_t width = layout.total;
    const auto n = static_cast<std::ptrdiff_t>(d.size());
    std::vector<double> rows(d.size() * width);
    std::vector<double> errors(d.size());

#pragma omp parallel
    {
        Scratch scratch;
#pragma omp for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            const auto ui = static_cast<std::size_t>(i);
            errors[ui] = gradient_row(rb, layout, d.row(ui), d.outputs()[ui],
                                      std::span<double>(rows).subspan(ui * width, width), scratch);
        }
    }

    LossGradient g;
    g.gradient.assign(width, 0.0);
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        sum_sq += errors[i] * errors[i];
        for (std::size_t p = 0; p < width; ++p) g.gradient[p] += rows[i * width + p];
    }
    g.mse = finish_mse(sum_sq, d);
    finish_gradient(g, d);
    return g;
}

std::vector<double> consequence_design(const RuleBase& rb, const Dataset& d) {
    require_compatible(rb, d);
    const std::size_t cols = rb.rules().size() * (d.width() + 1);
    const auto n = static_cast<std::ptrdiff_t>(d.size());
    std::vector<double> a(d.size() * cols);
#pragma omp parallel
    {
        std::vector<double> firing(rb.rules().size());
#pragma omp for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            const auto ui = static_cast<std::size_t>(i);
            design_row(rb, d.row(ui), firing, std::span<double>(a).subspan(ui * cols, cols));
        }
    }
    return a;
}

}  // namespace parallel

}  // namespace nfs
