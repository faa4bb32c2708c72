#pragma once

#include "nfs/membership.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace nfs {

enum class SystemKind { Mamdani, Tsk, Annbfis };

/// "MA", "TSK", "ANNBFIS".
std::string_view system_kind_name(SystemKind kind);
/// Case-insensitive inverse of system_kind_name.
std::optional<SystemKind> parse_system_kind(std::string_view name);

struct Clause {
    std::size_t attribute;
    MembershipFunction descriptor;

    friend bool operator==(const Clause&, const Clause&) = default;
};

struct Premise {
    std::vector<Clause> clauses;

    friend bool operator==(const Premise&, const Premise&) = default;
};

struct MamdaniConsequence {
    Triangular triangle;

    friend bool operator==(const MamdaniConsequence& l, const MamdaniConsequence& r) {
        return l.triangle.a == r.triangle.a && l.triangle.b == r.triangle.b && l.triangle.c == r.triangle.c;
    }
};

/// Moving singleton located at weights . x + constant.
struct TskConsequence {
    std::vector<double> weights;
    double constant = 0.0;

    friend bool operator==(const TskConsequence&, const TskConsequence&) = default;
};

/// Moving isosceles triangle with apex at weights . x + constant.
struct AnnbfisConsequence {
    double width = 1.0;
    std::vector<double> weights;
    double constant = 0.0;

    friend bool operator==(const AnnbfisConsequence&, const AnnbfisConsequence&) = default;
};

using Consequence = std::variant<MamdaniConsequence, TskConsequence, AnnbfisConsequence>;

struct Rule {
    Premise premise;
    Consequence consequence;

    friend bool operator==(const Rule&, const Rule&) = default;
};

/// A validated rule base. All rules carry the consequence variant of `kind`,
/// weight vectors match the input width, and premise attribute indices are
/// unique per rule and in range. Violations throw std::invalid_argument.
class RuleBase {
public:
    RuleBase(SystemKind kind, std::vector<std::string> input_names, std::string output_name,
             std::vector<Rule> rules);

    SystemKind kind() const noexcept { return kind_; }
    std::size_t input_width() const noexcept { return input_names_.size(); }
    const std::vector<std::string>& input_names() const noexcept { return input_names_; }
    const std::string& output_name() const noexcept { return output_name_; }
    const std::vector<Rule>& rules() const noexcept { return rules_; }

    /// Same kind and names, new rules (revalidated).
    RuleBase with_rules(std::vector<Rule> rules) const;

    friend bool operator==(const RuleBase&, const RuleBase&) = default;

private:
    SystemKind kind_;
    std::vector<std::string> input_names_;
    std::string output_name_;
    std::vector<Rule> rules_;
};

struct InferenceResult {
    double value = 0.0;
    /// Every firing strength was zero; value is the unweighted mean of the rule outputs.
    bool fallback = false;
};

/// Product t-norm over the clauses; 1 for an empty premise.
double firing_strength(const Premise& p, std::span<const double> x);

/// Crisp location a rule proposes at x: triangle centroid (MA), or the
/// linear location of the moving singleton / triangle apex (TSK, ANNBFIS).
double rule_output(const Consequence& c, std::span<const double> x);

/// sum(w_r o_r) / sum(w_r), or the unweighted mean of o_r when all w_r are zero.
InferenceResult weighted_mean(std::span<const double> weights, std::span<const double> outputs);

InferenceResult infer(const RuleBase& rb, std::span<const double> x);
InferenceResult infer_ma(const RuleBase& rb, std::span<const double> x);
InferenceResult infer_tsk(const RuleBase& rb, std::span<const double> x);
InferenceResult infer_annbfis(const RuleBase& rb, std::span<const double> x);

}  // namespace nfs
