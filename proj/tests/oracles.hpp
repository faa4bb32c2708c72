#pragma once

// Independent reference computations for the test suites. Nothing here calls
// into the library's numeric code paths: membership formulas are coded
// piecewise (the library uses max/min compositions), the sigmoid goes through
// tanh, least squares goes through hand-written normal equations.

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

namespace oracle {

inline double triangular(double x, double a, double b, double c) {
    if (x < a || x > c) return 0.0;
    if (x == b) return 1.0;
    if (x < b) return (x - a) / (b - a);
    return (c - x) / (c - b);
}

inline double trapezoidal(double x, double a, double b, double c, double d) {
    if (x < a || x > d) return 0.0;
    if (x >= b && x <= c) return 1.0;
    if (x < b) return (x - a) / (b - a);
    return (d - x) / (d - c);
}

inline double gaussian(double x, double m, double sigma) {
    const double z = (x - m) / sigma;
    return std::exp(-0.5 * z * z);
}

inline double singleton(double x, double a) { return x == a ? 1.0 : 0.0; }

inline double semitriangular(double x, double a, double b) {
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);
    const double t = (x - lo) / (hi - lo);  // 0 at lo, 1 at hi
    const double up = x <= lo ? 0.0 : (x >= hi ? 1.0 : t);
    return a > b ? up : 1.0 - up;
}

inline double sigmoidal(double x, double c, double s) { return 0.5 * (1.0 + std::tanh(0.5 * s * (x - c))); }

inline double arctangent(double x, double c, double s) {
    return 0.5 + std::atan2(s * (x - c), 1.0) / std::numbers::pi;
}

inline double hyperbolic_tangent(double x, double c, double s) { return 1.0 / (1.0 + std::exp(-2.0 * s * (x - c))); }

/// Central finite difference of f at x with step h.
inline double central_difference(const std::function<double(double)>& f, double x, double h = 1e-6) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Relative error with an absolute floor for values near zero.
inline double relative_error(double a, double b, double floor = 1e-6) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
}

/// Least squares via normal equations and Cholesky; `a` is row-major rows x cols.
inline std::vector<double> least_squares(const std::vector<double>& a, const std::vector<double>& y,
                                         std::size_t rows, std::size_t cols) {
    std::vector<double> n(cols * cols, 0.0);
    std::vector<double> rhs(cols, 0.0);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t p = 0; p < cols; ++p) {
            rhs[p] += a[i * cols + p] * y[i];
            for (std::size_t q = 0; q < cols; ++q) n[p * cols + q] += a[i * cols + p] * a[i * cols + q];
        }
    // In-place Cholesky, lower triangle.
    for (std::size_t j = 0; j < cols; ++j) {
        double d = n[j * cols + j];
        for (std::size_t k = 0; k < j; ++k) d -= n[j * cols + k] * n[j * cols + k];
        if (!(d > 0.0)) throw std::runtime_error("normal matrix not positive definite");
        n[j * cols + j] = std::sqrt(d);
        for (std::size_t i = j + 1; i < cols; ++i) {
            double v = n[i * cols + j];
            for (std::size_t k = 0; k < j; ++k) v -= n[i * cols + k] * n[j * cols + k];
            n[i * cols + j] = v / n[j * cols + j];
        }
    }
    std::vector<double> z(cols);
    for (std::size_t i = 0; i < cols; ++i) {
        double v = rhs[i];
        for (std::size_t k = 0; k < i; ++k) v -= n[i * cols + k] * z[k];
        z[i] = v / n[i * cols + i];
    }
    std::vector<double> x(cols);
    for (std::size_t i = cols; i-- > 0;) {
        double v = z[i];
        for (std::size_t k = i + 1; k < cols; ++k) v -= n[k * cols + i] * x[k];
        x[i] = v / n[i * cols + i];
    }
    return x;
}

class Random {
public:
    explicit Random(std::uint64_t seed) : gen_(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
    double sign() { return integer(0, 1) == 0 ? -1.0 : 1.0; }

private:
    std::mt19937_64 gen_;
};

}  // namespace oracle
