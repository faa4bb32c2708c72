#include "nfs/membership.hpp"

#include "nfs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nfs {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

bool all_finite(std::initializer_list<double> values) {
    return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

void validate(const MembershipShape& shape) {
    std::visit(
        Overloaded{
            [](const Triangular& t) {
                require(all_finite({t.a, t.b, t.c}), "triangular: parameters must be finite");
                require(t.a <= t.b && t.b <= t.c, "triangular: requires a <= b <= c");
            },
            [](const Trapezoidal& t) {
                require(all_finite({t.a, t.b, t.c, t.d}), "trapezoidal: parameters must be finite");
                require(t.a <= t.b && t.b <= t.c && t.c <= t.d,
                        "trapezoidal: requires a <= b <= c <= d");
            },
            [](const Gaussian& g) {
                require(all_finite({g.m, g.sigma}), "gaussian: parameters must be finite");
                require(g.sigma > 0.0, "gaussian: sigma must be positive");
            },
            [](const Singleton& s) { require(std::isfinite(s.a), "singleton: parameter must be finite"); },
            [](const Semitriangular& s) {
                require(all_finite({s.a, s.b}), "semitriangular: parameters must be finite");
                require(s.a != s.b, "semitriangular: a and b must differ");
            },
            [](const Sigmoidal& s) {
                require(all_finite({s.c, s.s}), "sigmoidal: parameters must be finite");
                require(s.s != 0.0, "sigmoidal: slope must be non-zero");
            },
            [](const Arctangent& s) {
                require(all_finite({s.c, s.s}), "arctan: parameters must be finite");
                require(s.s != 0.0, "arctan: slope must be non-zero");
            },
            [](const HyperbolicTangent& s) {
                require(all_finite({s.c, s.s}), "tanh: parameters must be finite");
                require(s.s != 0.0, "tanh: slope must be non-zero");
            },
        },
        shape);
}

// Rising edge (x - lo) / (hi - lo); a zero-width edge is a step at lo.
double rising(double x, double lo, double hi) {
    if (lo == hi) return x >= lo ? 1.0 : 0.0;
    return (x - lo) / (hi - lo);
}

// Falling edge (hi - x) / (hi - lo); a zero-width edge is a step at hi.
double falling(double x, double lo, double hi) {
    if (lo == hi) return x <= hi ? 1.0 : 0.0;
    return (hi - x) / (hi - lo);
}

constexpr std::string_view kNames[] = {"triangular",     "trapezoidal", "gaussian", "singleton",
                                       "semitriangular", "sigmoidal",   "arctan",   "tanh"};

constexpr std::string_view kTriangularParams[] = {"a", "b", "c"};
constexpr std::string_view kTrapezoidalParams[] = {"a", "b", "c", "d"};
constexpr std::string_view kGaussianParams[] = {"m", "sigma"};
constexpr std::string_view kSingletonParams[] = {"a"};
constexpr std::string_view kSemitriangularParams[] = {"a", "b"};
constexpr std::string_view kSlopeParams[] = {"c", "s"};

}  // namespace

std::string_view kind_name(MembershipKind kind) { return kNames[static_cast<std::size_t>(kind)]; }

std::optional<MembershipKind> parse_kind_name(std::string_view name) {
    for (MembershipKind kind : kAllMembershipKinds)
        if (kind_name(kind) == name) return kind;
    return std::nullopt;
}

std::span<const std::string_view> parameter_names(MembershipKind kind) {
    switch (kind) {
        case MembershipKind::Triangular: return kTriangularParams;
        case MembershipKind::Trapezoidal: return kTrapezoidalParams;
        case MembershipKind::Gaussian: return kGaussianParams;
        case MembershipKind::Singleton: return kSingletonParams;
        case MembershipKind::Semitriangular: return kSemitriangularParams;
        case MembershipKind::Sigmoidal:
        case MembershipKind::Arctangent:
        case MembershipKind::HyperbolicTangent: return kSlopeParams;
    }
    return {};
}

MembershipFunction::MembershipFunction(MembershipShape shape) : shape_(shape) { validate(shape_); }

MembershipFunction MembershipFunction::triangular(double a, double b, double c) {
    return MembershipFunction(Triangular{a, b, c});
}
MembershipFunction MembershipFunction::trapezoidal(double a, double b, double c, double d) {
    return MembershipFunction(Trapezoidal{a, b, c, d});
}
MembershipFunction MembershipFunction::gaussian(double m, double sigma) {
    return MembershipFunction(Gaussian{m, sigma});
}
MembershipFunction MembershipFunction::singleton(double a) { return MembershipFunction(Singleton{a}); }
MembershipFunction MembershipFunction::semitriangular(double a, double b) {
    return MembershipFunction(Semitriangular{a, b});
}
MembershipFunction MembershipFunction::sigmoidal(double c, double s) {
    return MembershipFunction(Sigmoidal{c, s});
}
MembershipFunction MembershipFunction::arctangent(double c, double s) {
    return MembershipFunction(Arctangent{c, s});
}
MembershipFunction MembershipFunction::hyperbolic_tangent(double c, double s) {
    return MembershipFunction(HyperbolicTangent{c, s});
}

MembershipFunction MembershipFunction::from_parameters(MembershipKind kind, std::span<const double> p) {
    if (p.size() != parameter_names(kind).size())
        throw std::invalid_argument(std::string(kind_name(kind)) + ": expected " +
                                    std::to_string(parameter_names(kind).size()) + " parameters");
    switch (kind) {
        case MembershipKind::Triangular: return triangular(p[0], p[1], p[2]);
        case MembershipKind::Trapezoidal: return trapezoidal(p[0], p[1], p[2], p[3]);
        case MembershipKind::Gaussian: return gaussian(p[0], p[1]);
        case MembershipKind::Singleton: return singleton(p[0]);
        case MembershipKind::Semitriangular: return semitriangular(p[0], p[1]);
        case MembershipKind::Sigmoidal: return sigmoidal(p[0], p[1]);
        case MembershipKind::Arctangent: return arctangent(p[0], p[1]);
        case MembershipKind::HyperbolicTangent: return hyperbolic_tangent(p[0], p[1]);
    }
    throw std::invalid_argument("unknown membership kind");
}

MembershipKind MembershipFunction::kind() const noexcept {
    return static_cast<MembershipKind>(shape_.index());
}

std::vector<double> MembershipFunction::parameters() const {
    return std::visit(Overloaded{
                          [](const Triangular& t) { return std::vector<double>{t.a, t.b, t.c}; },
                          [](const Trapezoidal& t) { return std::vector<double>{t.a, t.b, t.c, t.d}; },
                          [](const Gaussian& g) { return std::vector<double>{g.m, g.sigma}; },
                          [](const Singleton& s) { return std::vector<double>{s.a}; },
                          [](const Semitriangular& s) { return std::vector<double>{s.a, s.b}; },
                          [](const auto& s) { return std::vector<double>{s.c, s.s}; },
                      },
                      shape_);
}

double MembershipFunction::operator()(double x) const { return evaluate(*this, x); }

bool operator==(const MembershipFunction& lhs, const MembershipFunction& rhs) {
    return lhs.kind() == rhs.kind() && lhs.parameters() == rhs.parameters();
}

double evaluate(const MembershipFunction& f, double x) {
    return std::visit(
        Overloaded{
            [x](const Triangular& t) {
                return std::max(std::min(rising(x, t.a, t.b), falling(x, t.b, t.c)), 0.0);
            },
            [x](const Trapezoidal& t) {
                return std::max(std::min({rising(x, t.a, t.b), 1.0, falling(x, t.c, t.d)}), 0.0);
            },
            [x](const Gaussian& g) {
                const double d = x - g.m;
                return std::exp(-(d * d) / (2.0 * g.sigma * g.sigma));
            },
            [x](const Singleton& s) { return x == s.a ? 1.0 : 0.0; },
            [x](const Semitriangular& s) {
                return std::max(std::min(1.0, (s.b - x) / (s.b - s.a)), 0.0);
            },
            [x](const Sigmoidal& s) { return 1.0 / (1.0 + std::exp(-s.s * (x - s.c))); },
            [x](const Arctangent& s) {
                return 0.5 + std::atan(s.s * (x - s.c)) / std::numbers::pi;
            },
            [x](const HyperbolicTangent& s) { return 0.5 + 0.5 * std::tanh(s.s * (x - s.c)); },
        },
        f.shape());
}

bool is_differentiable(MembershipKind kind) {
    switch (kind) {
        case MembershipKind::Gaussian:
        case MembershipKind::Sigmoidal:
        case MembershipKind::Arctangent:
        case MembershipKind::HyperbolicTangent: return true;
        default: return false;
    }
}

ParamGradient gradient(const MembershipFunction& f, double x) {
    // One-tailed families are g(z) with z = s (x - c): dz/dc = -s, dz/ds = x - c.
    auto chain = [x](double c, double s, double dmu_dz) {
        return ParamGradient{-s * dmu_dz, (x - c) * dmu_dz};
    };
    return std::visit(
        Overloaded{
            [x](const Gaussian& g) {
                const double d = x - g.m;
                const double s2 = g.sigma * g.sigma;
                const double mu = std::exp(-(d * d) / (2.0 * s2));
                return ParamGradient{mu * d / s2, mu * d * d / (s2 * g.sigma)};
            },
            [x, &chain](const Sigmoidal& s) {
                const double mu = 1.0 / (1.0 + std::exp(-s.s * (x - s.c)));
                return chain(s.c, s.s, mu * (1.0 - mu));
            },
            [x, &chain](const Arctangent& s) {
                const double z = s.s * (x - s.c);
                return chain(s.c, s.s, 1.0 / (std::numbers::pi * (1.0 + z * z)));
            },
            [x, &chain](const HyperbolicTangent& s) {
                const double t = std::tanh(s.s * (x - s.c));
                return chain(s.c, s.s, 0.5 * (1.0 - t * t));
            },
            [&f](const auto&) -> ParamGradient {
                throw UnsupportedOperation(std::string("gradient is not defined for ") +
                                           std::string(kind_name(f.kind())) + " membership functions");
            },
        },
        f.shape());
}

TailDirection tail_direction(const MembershipFunction& f) {
    auto by_slope = [](double s) {
        return s > 0.0 ? TailDirection::IncreasingOneTailed : TailDirection::DecreasingOneTailed;
    };
    return std::visit(Overloaded{
                          [](const Triangular&) { return TailDirection::TwoTailed; },
                          [](const Trapezoidal&) { return TailDirection::TwoTailed; },
                          [](const Gaussian&) { return TailDirection::TwoTailed; },
                          [](const Singleton&) { return TailDirection::Crisp; },
                          [](const Semitriangular& s) {
                              return s.a > s.b ? TailDirection::IncreasingOneTailed
                                               : TailDirection::DecreasingOneTailed;
                          },
                          [&by_slope](const Sigmoidal& s) { return by_slope(s.s); },
                          [&by_slope](const Arctangent& s) { return by_slope(s.s); },
                          [&by_slope](const HyperbolicTangent& s) { return by_slope(s.s); },
                      },
                      f.shape());
}

}  // namespace nfs
