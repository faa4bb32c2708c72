#pragma once

// Verbalization of fuzzy rule bases.
//
// Every descriptor is placed on a seven-word location scale (micro ... giant)
// relative to the mean and standard deviation of its attribute. Two-tailed
// descriptors (Gaussian, triangular, trapezoidal) additionally get a fuzziness
// adverb (strictly ... loosely); one-tailed descriptors (sigmoidal,
// semitriangular, arctangent, hyperbolic tangent) get a slope adverb
// (hardly ... stepwise) and a "less than" / "greater than" relation;
// singletons are "exactly". TSK and ANNBFIS consequences are rendered as
// per-input importance plus the location of the constant term.

#include "nfs/dataset.hpp"
#include "nfs/membership.hpp"
#include "nfs/rulebase.hpp"

#include <json.hpp>

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace nfs {

enum class LocationLabel { Micro, Tiny, Small, Medium, Large, Huge, Giant };
enum class FuzzinessLabel { Strictly, Distinctly, Moderately, Mildly, Loosely };
enum class SlopeLabel { Hardly, Mildly, Moderately, Distinctly, Stepwise };
enum class SlopeFamily { Sigmoidal, Semitriangular, Arctangent, HyperbolicTangent };
enum class Relation { Is, IsLessThan, IsGreaterThan };
enum class ImportanceMagnitude { Negligible, Low, Medium, High };
enum class ImportanceSign { None, Positive, Negative };

inline constexpr int kLocationLabelCount = 7;

std::string_view to_string(LocationLabel l);
std::string_view to_string(FuzzinessLabel l);
std::string_view to_string(SlopeLabel l);
std::string_view to_string(Relation r);
std::string_view to_string(ImportanceMagnitude m);
std::string_view to_string(ImportanceSign s);

std::optional<LocationLabel> parse_location(std::string_view word);
std::optional<FuzzinessLabel> parse_fuzziness(std::string_view word);
std::optional<SlopeLabel> parse_slope(std::string_view word);

struct LabelOptions {
    /// Use the location formulas with (mean - value) instead of (value - mean),
    /// which orders the scale from giant down to micro.
    bool literal_orientation = false;
};

/// A label plus a flag raised when the statistics were degenerate (zero
/// spread, zero mean) and a fallback label was chosen.
template <class Label>
struct Labeled {
    Label label;
    bool degenerate = false;

    friend bool operator==(const Labeled&, const Labeled&) = default;
};

/// Maps a real-valued position on the seven-label scale to a label:
/// truncation toward minus infinity, clamped to [micro, giant].
LocationLabel location_from_index(double l);

/// l = 2 (m - mean) / stddev + 3.
Labeled<LocationLabel> location_label_gaussian(double m, const AttributeStats& stats,
                                               const LabelOptions& opts = {});

/// l = (c - mean) / |mean| + 3; divides by stddev when mean is zero (flagged).
Labeled<LocationLabel> location_label_onetailed(double c, const AttributeStats& stats,
                                                const LabelOptions& opts = {});

/// Fuzziness bins over a spread ratio: [0, 0.5) strictly, [0.5, 1) distinctly,
/// [1, 2) moderately, [2, 5) mildly, [5, inf) loosely.
FuzzinessLabel fuzziness_from_ratio(double ratio);

/// ratio = sigma / stddev.
Labeled<FuzzinessLabel> fuzziness_label_gaussian(double sigma, const AttributeStats& stats);

/// Slope bins over l_s = |s * stddev|; the hyperbolic tangent uses its own
/// (lower) thresholds.
SlopeLabel slope_from_magnitude(double magnitude, SlopeFamily family);
Labeled<SlopeLabel> slope_label(double s, const AttributeStats& stats, SlopeFamily family);

double location_triangular(const Triangular& t);
double location_trapezoidal(const Trapezoidal& t);

struct Exactly {
    friend bool operator==(Exactly, Exactly) { return true; }
};
using Modifier = std::variant<FuzzinessLabel, SlopeLabel, Exactly>;

struct DescriptorDescription {
    std::string attribute;
    Modifier modifier;
    Relation relation = Relation::Is;
    LocationLabel location = LocationLabel::Medium;
    TailDirection tail = TailDirection::TwoTailed;
    bool degenerate = false;

    friend bool operator==(const DescriptorDescription&, const DescriptorDescription&) = default;
};

DescriptorDescription describe_descriptor(const MembershipFunction& f, const std::string& attribute,
                                          const AttributeStats& stats, const LabelOptions& opts = {});
DescriptorDescription describe_singleton(double a, const std::string& attribute, const AttributeStats& stats,
                                         const LabelOptions& opts = {});

struct Importance {
    ImportanceMagnitude magnitude = ImportanceMagnitude::Negligible;
    ImportanceSign sign = ImportanceSign::None;

    friend bool operator==(const Importance&, const Importance&) = default;
};

/// nu = |weight| * stddev_attr / max(stddev_output, eps); bins [0, 0.05)
/// negligible, [0.05, 0.5) low, [0.5, 2) medium, [2, inf) high. The sign is
/// None only for a zero weight.
Importance tsk_importance(double weight, const AttributeStats& attr, const AttributeStats& output);

struct AttributeImportance {
    std::string attribute;
    Importance importance;

    friend bool operator==(const AttributeImportance&, const AttributeImportance&) = default;
};

struct LinearConsequenceDescription {
    std::vector<AttributeImportance> importances;
    LocationLabel constant_location = LocationLabel::Medium;
    bool degenerate = false;

    friend bool operator==(const LinearConsequenceDescription&, const LinearConsequenceDescription&) = default;
};

using ConsequenceDescription = std::variant<DescriptorDescription, LinearConsequenceDescription>;

struct RuleDescription {
    std::vector<DescriptorDescription> premise;
    ConsequenceDescription consequence;

    friend bool operator==(const RuleDescription&, const RuleDescription&) = default;
};

struct LinguisticDescription {
    SystemKind kind = SystemKind::Mamdani;
    std::vector<RuleDescription> rules;

    friend bool operator==(const LinguisticDescription&, const LinguisticDescription&) = default;
};

/// Looks up statistics by attribute name; throws std::out_of_range when an
/// input or the output has none.
LinguisticDescription describe_rulebase(const RuleBase& rb, const DatasetStats& stats,
                                        const LabelOptions& opts = {});

/// "input 1 is loosely tiny", "input 1 is mildly less than medium", ...
std::string render_descriptor(const DescriptorDescription& d);

/// Listing layout:
///   RULE 1
///   IF     input 1 is loosely tiny
///      AND input 2 is loosely tiny
///   THEN output is strictly giant.
/// Premise and importance lines end in a space before the newline, as in the
/// golden listings. Rules are separated by one blank line.
std::string render_rule(const RuleDescription& rule, std::size_t number);
std::string render_text(const LinguisticDescription& description);

/// Single-sentence form: "IF input 1 is loosely tiny AND ... THEN output is strictly giant."
std::string render_rule_inline(const RuleDescription& rule);

nlohmann::json to_json(const LinguisticDescription& description);

}  // namespace nfs
