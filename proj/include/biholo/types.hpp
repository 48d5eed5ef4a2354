#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace biholo {

using cplx = std::complex<double>;
using Mat2 = std::array<std::array<cplx, 2>, 2>;

inline constexpr double kCoeffUnderflow = 1e-300;

/// Point of C^1 or C^2. One-variable work uses dim()==1 throughout.
class Point {
public:
    Point() = default;
    explicit Point(cplx z) : c_{z, 0.0}, n_(1) {}
    Point(cplx z1, cplx z2) : c_{z1, z2}, n_(2) {}

    int dim() const { return n_; }
    cplx operator[](int i) const { return c_[static_cast<size_t>(i)]; }
    cplx& operator[](int i) { return c_[static_cast<size_t>(i)]; }

    double norm2() const {
        double s = 0;
        for (int i = 0; i < n_; ++i) s += std::norm(c_[static_cast<size_t>(i)]);
        return s;
    }
    double norm() const { return std::sqrt(norm2()); }

    friend Point operator+(const Point& a, const Point& b) {
        Point r = a;
        for (int i = 0; i < a.n_; ++i) r[i] += b[i];
        return r;
    }
    friend Point operator-(const Point& a, const Point& b) {
        Point r = a;
        for (int i = 0; i < a.n_; ++i) r[i] -= b[i];
        return r;
    }
    friend Point operator*(cplx s, const Point& a) {
        Point r = a;
        for (int i = 0; i < a.n_; ++i) r[i] *= s;
        return r;
    }
    friend double dist(const Point& a, const Point& b) { return (a - b).norm(); }
    /// Hermitian inner product <a,b> = sum a_i conj(b_i).
    friend cplx hdot(const Point& a, const Point& b) {
        cplx s = 0;
        for (int i = 0; i < a.n_; ++i) s += a[i] * std::conj(b[i]);
        return s;
    }

private:
    std::array<cplx, 2> c_{};
    int n_ = 1;
};

// Error taxonomy. Usage errors are invalid calls; domain errors are points
// outside an evaluation/definition region; the rest are named after the
// obstruction they report.
struct usage_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct eval_domain_error : std::domain_error {
    using std::domain_error::domain_error;
};
struct unsupported_composition_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct unit_obstruction_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct recovery_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct construction_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct stencil_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct gram_singular_error : std::runtime_error {
    double condition_number;
    explicit gram_singular_error(const std::string& what, double cond)
        : std::runtime_error(what), condition_number(cond) {}
};

}  // namespace biholo
