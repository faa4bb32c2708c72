#include "nfs/rulebase.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace nfs {

std::string_view system_kind_name(SystemKind kind) {
    switch (kind) {
        case SystemKind::Mamdani: return "MA";
        case SystemKind::Tsk: return "TSK";
        case SystemKind::Annbfis: return "ANNBFIS";
    }
    return "?";
}

std::optional<SystemKind> parse_system_kind(std::string_view name) {
    std::string upper(name);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
    for (SystemKind k : {SystemKind::Mamdani, SystemKind::Tsk, SystemKind::Annbfis})
        if (system_kind_name(k) == upper) return k;
    return std::nullopt;
}

namespace {

std::string rule_prefix(std::size_t r) { return "rule " + std::to_string(r + 1) + ": "; }

void validate_rule(const Rule& rule, std::size_t r, SystemKind kind, std::size_t width) {
    std::vector<bool> seen(width, false);
    for (const auto& clause : rule.premise.clauses) {
        if (clause.attribute >= width)
            throw std::invalid_argument(rule_prefix(r) + "premise attribute index " +
                                        std::to_string(clause.attribute) + " out of range");
        if (seen[clause.attribute])
            throw std::invalid_argument(rule_prefix(r) + "attribute " + std::to_string(clause.attribute) +
                                        " appears twice in the premise");
        seen[clause.attribute] = true;
    }

    const auto check_weights = [&](const std::vector<double>& w, double constant) {
        if (w.size() != width)
            throw std::invalid_argument(rule_prefix(r) + "expected " + std::to_string(width) +
                                        " consequence weights, got " + std::to_string(w.size()));
        if (!std::all_of(w.begin(), w.end(), [](double v) { return std::isfinite(v); }) ||
            !std::isfinite(constant))
            throw std::invalid_argument(rule_prefix(r) + "consequence parameters must be finite");
    };

    switch (kind) {
        case SystemKind::Mamdani: {
            const auto* ma = std::get_if<MamdaniConsequence>(&rule.consequence);
            if (!ma) throw std::invalid_argument(rule_prefix(r) + "MA rule base needs triangle consequences");
            MembershipFunction check(ma->triangle);  // validates a <= b <= c
            break;
        }
        case SystemKind::Tsk: {
            const auto* tsk = std::get_if<TskConsequence>(&rule.consequence);
            if (!tsk) throw std::invalid_argument(rule_prefix(r) + "TSK rule base needs linear consequences");
            check_weights(tsk->weights, tsk->constant);
            break;
        }
        case SystemKind::Annbfis: {
            const auto* ann = std::get_if<AnnbfisConsequence>(&rule.consequence);
            if (!ann)
                throw std::invalid_argument(rule_prefix(r) + "ANNBFIS rule base needs moving-triangle consequences");
            check_weights(ann->weights, ann->constant);
            if (!(ann->width > 0.0) || !std::isfinite(ann->width))
                throw std::invalid_argument(rule_prefix(r) + "consequence width must be positive");
            break;
        }
    }
}

double linear(const std::vector<double>& w, double constant, std::span<const double> x) {
    double y = constant;
    for (std::size_t j = 0; j < w.size(); ++j) y += w[j] * x[j];
    return y;
}

InferenceResult infer_checked(const RuleBase& rb, std::span<const double> x, SystemKind expected) {
    if (rb.kind() != expected)
        throw std::invalid_argument(std::string("rule base is ") + std::string(system_kind_name(rb.kind())) +
                                    ", not " + std::string(system_kind_name(expected)));
    return infer(rb, x);
}

}  // namespace

RuleBase::RuleBase(SystemKind kind, std::vector<std::string> input_names, std::string output_name,
                   std::vector<Rule> rules)
    : kind_(kind),
      input_names_(std::move(input_names)),
      output_name_(std::move(output_name)),
      rules_(std::move(rules)) {
    if (rules_.empty()) throw std::invalid_argument("rule base needs at least one rule");
    if (input_names_.empty()) throw std::invalid_argument("rule base needs at least one input");
    for (std::size_t r = 0; r < rules_.size(); ++r) validate_rule(rules_[r], r, kind_, input_width());
}

RuleBase RuleBase::with_rules(std::vector<Rule> rules) const {
    return RuleBase(kind_, input_names_, output_name_, std::move(rules));
}

double firing_strength(const Premise& p, std::span<const double> x) {
    double w = 1.0;
    for (const auto& clause : p.clauses) w *= evaluate(clause.descriptor, x[clause.attribute]);
    return w;
}

double rule_output(const Consequence& c, std::span<const double> x) {
    if (const auto* ma = std::get_if<MamdaniConsequence>(&c))
        return (ma->triangle.a + ma->triangle.b + ma->triangle.c) / 3.0;
    if (const auto* tsk = std::get_if<TskConsequence>(&c)) return linear(tsk->weights, tsk->constant, x);
    const auto& ann = std::get<AnnbfisConsequence>(c);
    return linear(ann.weights, ann.constant, x);
}

InferenceResult weighted_mean(std::span<const double> weights, std::span<const double> outputs) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t r = 0; r < weights.size(); ++r) {
        num += weights[r] * outputs[r];
        den += weights[r];
    }
    if (den > 0.0) return {num / den, false};

    double sum = 0.0;
    for (double o : outputs) sum += o;
    return {sum / static_cast<double>(outputs.size()), true};
}

InferenceResult infer(const RuleBase& rb, std::span<const double> x) {
    if (x.size() != rb.input_width())
        throw std::invalid_argument("input vector has " + std::to_string(x.size()) + " components, expected " +
                                    std::to_string(rb.input_width()));
    const auto& rules = rb.rules();
    std::vector<double> weights(rules.size());
    std::vector<double> outputs(rules.size());
    for (std::size_t r = 0; r < rules.size(); ++r) {
        weights[r] = firing_strength(rules[r].premise, x);
        outputs[r] = rule_output(rules[r].consequence, x);
    }
    return weighted_mean(weights, outputs);
}

InferenceResult infer_ma(const RuleBase& rb, std::span<const double> x) {
    return infer_checked(rb, x, SystemKind::Mamdani);
}

InferenceResult infer_tsk(const RuleBase& rb, std::span<const double> x) {
    return infer_checked(rb, x, SystemKind::Tsk);
}

// The isosceles apex is also the centroid abscissa, so the defuzzified output
// reduces to the firing-weighted apex mean.
InferenceResult infer_annbfis(const RuleBase& rb, std::span<const double> x) {
    return infer_checked(rb, x, SystemKind::Annbfis);
}

}  // namespace nfs
