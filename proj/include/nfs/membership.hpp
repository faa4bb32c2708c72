#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace nfs {

// Shape parameters. Field names follow the conventional symbols of each family.
struct Triangular {
    double a;  // support min
    double b;  // core
    double c;  // support max
};

struct Trapezoidal {
    double a;  // support min
    double b;  // core min
    double c;  // core max
    double d;  // support max
};

struct Gaussian {
    double m;
    double sigma;
};

struct Singleton {
    double a;
};

/// Ramp from membership 1 at `a` to membership 0 at `b`; flat outside.
struct Semitriangular {
    double a;
    double b;
};

struct Sigmoidal {
    double c;  // crosspoint
    double s;  // slope
};

struct Arctangent {
    double c;
    double s;
};

struct HyperbolicTangent {
    double c;
    double s;
};

using MembershipShape = std::variant<Triangular, Trapezoidal, Gaussian, Singleton, Semitriangular,
                                     Sigmoidal, Arctangent, HyperbolicTangent>;

enum class MembershipKind {
    Triangular,
    Trapezoidal,
    Gaussian,
    Singleton,
    Semitriangular,
    Sigmoidal,
    Arctangent,
    HyperbolicTangent,
};

inline constexpr std::array<MembershipKind, 8> kAllMembershipKinds{
    MembershipKind::Triangular,     MembershipKind::Trapezoidal, MembershipKind::Gaussian,
    MembershipKind::Singleton,      MembershipKind::Semitriangular, MembershipKind::Sigmoidal,
    MembershipKind::Arctangent,     MembershipKind::HyperbolicTangent,
};

enum class TailDirection { TwoTailed, IncreasingOneTailed, DecreasingOneTailed, Crisp };

/// Serialized name ("triangular", "gaussian", "arctan", "tanh", ...).
std::string_view kind_name(MembershipKind kind);
std::optional<MembershipKind> parse_kind_name(std::string_view name);

/// Parameter names in the order used by `parameters()` and `gradient()`.
std::span<const std::string_view> parameter_names(MembershipKind kind);

/// Partial derivatives with respect to the two parameters of a differentiable
/// family, in `parameter_names` order: (m, sigma) or (c, s).
using ParamGradient = std::array<double, 2>;

/// An immutable, validated fuzzy set. Construction rejects parameters that
/// violate the family's invariants (std::invalid_argument).
class MembershipFunction {
public:
    explicit MembershipFunction(MembershipShape shape);

    static MembershipFunction triangular(double a, double b, double c);
    static MembershipFunction trapezoidal(double a, double b, double c, double d);
    static MembershipFunction gaussian(double m, double sigma);
    static MembershipFunction singleton(double a);
    static MembershipFunction semitriangular(double a, double b);
    static MembershipFunction sigmoidal(double c, double s);
    static MembershipFunction arctangent(double c, double s);
    static MembershipFunction hyperbolic_tangent(double c, double s);

    /// Builds a function of `kind` from parameters in `parameter_names` order.
    static MembershipFunction from_parameters(MembershipKind kind, std::span<const double> params);

    const MembershipShape& shape() const noexcept { return shape_; }
    MembershipKind kind() const noexcept;
    std::vector<double> parameters() const;

    double operator()(double x) const;

    friend bool operator==(const MembershipFunction& lhs, const MembershipFunction& rhs);

private:
    MembershipShape shape_;
};

/// Membership degree in [0, 1]. Degenerate ramps of triangles and trapezoids
/// (a == b or c == d) are steps that include the coincident point.
double evaluate(const MembershipFunction& f, double x);

bool is_differentiable(MembershipKind kind);

/// Analytic partials of the membership degree at `x` with respect to the
/// parameters. Throws UnsupportedOperation for piecewise-linear and crisp sets.
ParamGradient gradient(const MembershipFunction& f, double x);

TailDirection tail_direction(const MembershipFunction& f);

}  // namespace nfs
