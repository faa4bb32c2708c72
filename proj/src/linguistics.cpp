#include "nfs/linguistics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nfs {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr std::array<std::string_view, 7> kLocationWords{"micro", "tiny",  "small", "medium",
                                                         "large", "huge", "giant"};
constexpr std::array<std::string_view, 5> kFuzzinessWords{"strictly", "distinctly", "moderately", "mildly",
                                                          "loosely"};
constexpr std::array<std::string_view, 5> kSlopeWords{"hardly", "mildly", "moderately", "distinctly",
                                                      "stepwise"};

// Lower bounds of hardly, mildly, moderately, distinctly; anything below is stepwise.
constexpr std::array<double, 4> kSlopeBounds{10.0, 4.0, 1.0, 0.4};
constexpr std::array<double, 4> kTanhSlopeBounds{5.0, 2.0, 0.5, 0.2};

// Absorbs rounding noise when a value sits exactly on a label boundary.
constexpr double kBoundaryTolerance = 1e-9;

constexpr double kOutputSpreadEpsilon = 1e-12;
constexpr int kMiddleLabel = kLocationLabelCount / 2;

template <class Label, std::size_t N>
std::optional<Label> parse_word(const std::array<std::string_view, N>& words, std::string_view word) {
    for (std::size_t i = 0; i < N; ++i)
        if (words[i] == word) return static_cast<Label>(i);
    return std::nullopt;
}

SlopeFamily slope_family(MembershipKind kind) {
    switch (kind) {
        case MembershipKind::Semitriangular: return SlopeFamily::Semitriangular;
        case MembershipKind::Arctangent: return SlopeFamily::Arctangent;
        case MembershipKind::HyperbolicTangent: return SlopeFamily::HyperbolicTangent;
        default: return SlopeFamily::Sigmoidal;
    }
}

Relation relation_of(TailDirection tail) {
    switch (tail) {
        case TailDirection::IncreasingOneTailed: return Relation::IsGreaterThan;
        case TailDirection::DecreasingOneTailed: return Relation::IsLessThan;
        default: return Relation::Is;
    }
}

DescriptorDescription two_tailed(const std::string& attribute, double location, double spread,
                                 const AttributeStats& stats, const LabelOptions& opts) {
    const auto loc = location_label_gaussian(location, stats, opts);
    const auto fuzz = fuzziness_label_gaussian(spread, stats);
    return {attribute, fuzz.label, Relation::Is, loc.label, TailDirection::TwoTailed,
            loc.degenerate || fuzz.degenerate};
}

DescriptorDescription one_tailed(const std::string& attribute, double crosspoint, double slope, SlopeFamily family,
                                 TailDirection tail, const AttributeStats& stats, const LabelOptions& opts) {
    const auto loc = location_label_onetailed(crosspoint, stats, opts);
    const auto sl = slope_label(slope, stats, family);
    return {attribute, sl.label, relation_of(tail), loc.label, tail, loc.degenerate || sl.degenerate};
}

std::string modifier_word(const Modifier& m) {
    return std::visit(Overloaded{
                          [](FuzzinessLabel l) { return std::string(to_string(l)); },
                          [](SlopeLabel l) { return std::string(to_string(l)); },
                          [](Exactly) { return std::string("exactly"); },
                      },
                      m);
}

std::string modifier_type(const Modifier& m) {
    return std::visit(Overloaded{
                          [](FuzzinessLabel) { return std::string("fuzziness"); },
                          [](SlopeLabel) { return std::string("slope"); },
                          [](Exactly) { return std::string("exactly"); },
                      },
                      m);
}

std::string_view tail_name(TailDirection t) {
    switch (t) {
        case TailDirection::TwoTailed: return "two-tailed";
        case TailDirection::IncreasingOneTailed: return "increasing";
        case TailDirection::DecreasingOneTailed: return "decreasing";
        case TailDirection::Crisp: return "crisp";
    }
    return "?";
}

std::string importance_phrase(const AttributeImportance& a) {
    std::string s = a.attribute + " has " + std::string(to_string(a.importance.magnitude));
    if (a.importance.sign != ImportanceSign::None) s += " " + std::string(to_string(a.importance.sign));
    return s + " importance";
}

std::string constant_phrase(const LinearConsequenceDescription& c) {
    return "constant term is " + std::string(to_string(c.constant_location));
}

nlohmann::json descriptor_json(const DescriptorDescription& d) {
    return {{"attribute", d.attribute},
            {"modifier", modifier_word(d.modifier)},
            {"modifier_type", modifier_type(d.modifier)},
            {"relation", std::string(to_string(d.relation))},
            {"location", std::string(to_string(d.location))},
            {"tail", std::string(tail_name(d.tail))},
            {"degenerate", d.degenerate}};
}

}  // namespace

std::string_view to_string(LocationLabel l) { return kLocationWords[static_cast<std::size_t>(l)]; }
std::string_view to_string(FuzzinessLabel l) { return kFuzzinessWords[static_cast<std::size_t>(l)]; }
std::string_view to_string(SlopeLabel l) { return kSlopeWords[static_cast<std::size_t>(l)]; }

std::string_view to_string(Relation r) {
    switch (r) {
        case Relation::Is: return "is";
        case Relation::IsLessThan: return "less than";
        case Relation::IsGreaterThan: return "greater than";
    }
    return "?";
}

std::string_view to_string(ImportanceMagnitude m) {
    switch (m) {
        case ImportanceMagnitude::Negligible: return "negligible";
        case ImportanceMagnitude::Low: return "low";
        case ImportanceMagnitude::Medium: return "medium";
        case ImportanceMagnitude::High: return "high";
    }
    return "?";
}

std::string_view to_string(ImportanceSign s) {
    switch (s) {
        case ImportanceSign::None: return "";
        case ImportanceSign::Positive: return "positive";
        case ImportanceSign::Negative: return "negative";
    }
    return "?";
}

std::optional<LocationLabel> parse_location(std::string_view w) { return parse_word<LocationLabel>(kLocationWords, w); }
std::optional<FuzzinessLabel> parse_fuzziness(std::string_view w) {
    return parse_word<FuzzinessLabel>(kFuzzinessWords, w);
}
std::optional<SlopeLabel> parse_slope(std::string_view w) { return parse_word<SlopeLabel>(kSlopeWords, w); }

LocationLabel location_from_index(double l) {
    if (std::isnan(l)) return LocationLabel::Medium;
    const double idx = std::floor(l + kBoundaryTolerance);
    return static_cast<LocationLabel>(static_cast<int>(std::clamp(idx, 0.0, double(kLocationLabelCount - 1))));
}

Labeled<LocationLabel> location_label_gaussian(double m, const AttributeStats& stats, const LabelOptions& opts) {
    if (!(stats.stddev > 0.0)) return {LocationLabel::Medium, true};
    const double offset = opts.literal_orientation ? stats.mean - m : m - stats.mean;
    return {location_from_index(2.0 * offset / stats.stddev + kMiddleLabel), false};
}

Labeled<LocationLabel> location_label_onetailed(double c, const AttributeStats& stats, const LabelOptions& opts) {
    double divisor = std::abs(stats.mean);
    bool degenerate = false;
    if (divisor == 0.0) {
        if (!(stats.stddev > 0.0)) return {LocationLabel::Medium, true};
        divisor = stats.stddev;
        degenerate = true;
    }
    const double offset = opts.literal_orientation ? stats.mean - c : c - stats.mean;
    return {location_from_index(offset / divisor + kMiddleLabel), degenerate};
}

FuzzinessLabel fuzziness_from_ratio(double ratio) {
    if (ratio < 0.5) return FuzzinessLabel::Strictly;
    if (ratio < 1.0) return FuzzinessLabel::Distinctly;
    if (ratio < 2.0) return FuzzinessLabel::Moderately;
    if (ratio < 5.0) return FuzzinessLabel::Mildly;
    return FuzzinessLabel::Loosely;
}

Labeled<FuzzinessLabel> fuzziness_label_gaussian(double sigma, const AttributeStats& stats) {
    if (!(stats.stddev > 0.0)) return {FuzzinessLabel::Strictly, true};
    return {fuzziness_from_ratio(sigma / stats.stddev), false};
}

SlopeLabel slope_from_magnitude(double magnitude, SlopeFamily family) {
    const auto& bounds = family == SlopeFamily::HyperbolicTangent ? kTanhSlopeBounds : kSlopeBounds;
    for (std::size_t i = 0; i < bounds.size(); ++i)
        if (magnitude >= bounds[i]) return static_cast<SlopeLabel>(i);
    return SlopeLabel::Stepwise;
}

Labeled<SlopeLabel> slope_label(double s, const AttributeStats& stats, SlopeFamily family) {
    if (!(stats.stddev > 0.0)) return {SlopeLabel::Stepwise, true};
    return {slope_from_magnitude(std::abs(s * stats.stddev), family), false};
}

double location_triangular(const Triangular& t) { return (t.a + t.b + t.c) / 3.0; }
double location_trapezoidal(const Trapezoidal& t) { return (t.a + t.b + t.c + t.d) / 4.0; }

DescriptorDescription describe_singleton(double a, const std::string& attribute, const AttributeStats& stats,
                                         const LabelOptions& opts) {
    const auto loc = location_label_gaussian(a, stats, opts);
    return {attribute, Exactly{}, Relation::Is, loc.label, TailDirection::Crisp, loc.degenerate};
}

DescriptorDescription describe_descriptor(const MembershipFunction& f, const std::string& attribute,
                                          const AttributeStats& stats, const LabelOptions& opts) {
    const auto tail = tail_direction(f);
    const auto family = slope_family(f.kind());
    return std::visit(
        Overloaded{
            [&](const Triangular& t) {
                return two_tailed(attribute, location_triangular(t), (t.c - t.a) / 2.0, stats, opts);
            },
            [&](const Trapezoidal& t) {
                return two_tailed(attribute, location_trapezoidal(t), (t.d - t.a) / 2.0, stats, opts);
            },
            [&](const Gaussian& g) { return two_tailed(attribute, g.m, g.sigma, stats, opts); },
            [&](const Singleton& s) { return describe_singleton(s.a, attribute, stats, opts); },
            [&](const Semitriangular& s) {
                return one_tailed(attribute, (s.a + s.b) / 2.0, 1.0 / (s.b - s.a), family, tail, stats, opts);
            },
            [&](const auto& s) { return one_tailed(attribute, s.c, s.s, family, tail, stats, opts); },
        },
        f.shape());
}

Importance tsk_importance(double weight, const AttributeStats& attr, const AttributeStats& output) {
    if (weight == 0.0) return {ImportanceMagnitude::Negligible, ImportanceSign::None};
    const double nu = std::abs(weight) * attr.stddev / std::max(output.stddev, kOutputSpreadEpsilon);
    const auto sign = weight > 0.0 ? ImportanceSign::Positive : ImportanceSign::Negative;
    if (nu < 0.05) return {ImportanceMagnitude::Negligible, sign};
    if (nu < 0.5) return {ImportanceMagnitude::Low, sign};
    if (nu < 2.0) return {ImportanceMagnitude::Medium, sign};
    return {ImportanceMagnitude::High, sign};
}

LinguisticDescription describe_rulebase(const RuleBase& rb, const DatasetStats& stats, const LabelOptions& opts) {
    const auto& names = rb.input_names();
    std::vector<const AttributeStats*> input_stats;
    for (const auto& name : names) input_stats.push_back(&stats[name]);
    const AttributeStats& out = stats[rb.output_name()];

    LinguisticDescription description{rb.kind(), {}};
    for (const auto& rule : rb.rules()) {
        RuleDescription rd;
        for (const auto& clause : rule.premise.clauses)
            rd.premise.push_back(
                describe_descriptor(clause.descriptor, names[clause.attribute], *input_stats[clause.attribute], opts));

        rd.consequence = std::visit(
            Overloaded{
                [&](const MamdaniConsequence& ma) -> ConsequenceDescription {
                    return describe_descriptor(MembershipFunction(ma.triangle), rb.output_name(), out, opts);
                },
                [&](const auto& linear) -> ConsequenceDescription {
                    LinearConsequenceDescription lc;
                    for (std::size_t j = 0; j < names.size(); ++j)
                        lc.importances.push_back({names[j], tsk_importance(linear.weights[j], *input_stats[j], out)});
                    const auto loc = location_label_gaussian(linear.constant, out, opts);
                    lc.constant_location = loc.label;
                    lc.degenerate = loc.degenerate;
                    return lc;
                },
            },
            rule.consequence);
        description.rules.push_back(std::move(rd));
    }
    return description;
}

std::string render_descriptor(const DescriptorDescription& d) {
    std::string s = d.attribute + " is " + modifier_word(d.modifier) + " ";
    if (d.relation != Relation::Is) s += std::string(to_string(d.relation)) + " ";
    return s + std::string(to_string(d.location));
}

std::string render_rule(const RuleDescription& rule, std::size_t number) {
    std::string s = "RULE " + std::to_string(number) + "\n";
    for (std::size_t k = 0; k < rule.premise.size(); ++k)
        s += (k == 0 ? "IF     " : "   AND ") + render_descriptor(rule.premise[k]) + " \n";

    std::visit(Overloaded{
                   [&](const DescriptorDescription& d) { s += "THEN " + render_descriptor(d) + ".\n"; },
                   [&](const LinearConsequenceDescription& c) {
                       bool first = true;
                       for (const auto& imp : c.importances) {
                           s += (first ? "THEN   " : "   AND ") + importance_phrase(imp) + " \n";
                           first = false;
                       }
                       s += (first ? "THEN   " : "   AND ") + constant_phrase(c) + ".\n";
                   },
               },
               rule.consequence);
    return s;
}

std::string render_text(const LinguisticDescription& description) {
    std::string s;
    for (std::size_t r = 0; r < description.rules.size(); ++r) {
        if (r > 0) s += "\n";
        s += render_rule(description.rules[r], r + 1);
    }
    return s;
}

std::string render_rule_inline(const RuleDescription& rule) {
    std::string s;
    for (std::size_t k = 0; k < rule.premise.size(); ++k)
        s += (k == 0 ? "IF " : " AND ") + render_descriptor(rule.premise[k]);
    s += s.empty() ? "THEN " : " THEN ";
    std::visit(Overloaded{
                   [&](const DescriptorDescription& d) { s += render_descriptor(d); },
                   [&](const LinearConsequenceDescription& c) {
                       for (const auto& imp : c.importances) s += importance_phrase(imp) + " AND ";
                       s += constant_phrase(c);
                   },
               },
               rule.consequence);
    return s + ".";
}

nlohmann::json to_json(const LinguisticDescription& description) {
    nlohmann::json rules = nlohmann::json::array();
    for (const auto& rule : description.rules) {
        nlohmann::json premise = nlohmann::json::array();
        for (const auto& d : rule.premise) premise.push_back(descriptor_json(d));
        nlohmann::json consequence = std::visit(
            Overloaded{
                [](const DescriptorDescription& d) { return descriptor_json(d); },
                [](const LinearConsequenceDescription& c) {
                    nlohmann::json imps = nlohmann::json::array();
                    for (const auto& imp : c.importances)
                        imps.push_back({{"attribute", imp.attribute},
                                        {"magnitude", std::string(to_string(imp.importance.magnitude))},
                                        {"sign", std::string(to_string(imp.importance.sign))}});
                    return nlohmann::json{{"importances", imps},
                                          {"constant_location", std::string(to_string(c.constant_location))},
                                          {"degenerate", c.degenerate}};
                },
            },
            rule.consequence);
        rules.push_back({{"premise", premise}, {"consequence", consequence}, {"text", render_rule_inline(rule)}});
    }
    return {{"kind", std::string(system_kind_name(description.kind))}, {"rules", rules}};
}

}  // namespace nfs
