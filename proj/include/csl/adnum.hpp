#pragma once

// Second-order truncated Taylor arithmetic for complex-valued functions of a
// few real chart variables, and central differences for everything of
// higher order.

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "csl/errors.hpp"

namespace csl {

/// Value, gradient and Hessian of a complex function of `d` real variables.
///
/// The Hessian is stored as its packed upper triangle, so it is symmetric by
/// construction.
template <typename Scalar>
class Jet2Scalar {
public:
    using Complex = std::complex<Scalar>;
    using Vector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
    using Matrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

    Jet2Scalar() = default;

    Jet2Scalar(Complex value, int chart_dim)
        : value_(value),
          grad_(Vector::Zero(chart_dim)),
          hess_(Vector::Zero(packed_size(chart_dim))) {
        if (chart_dim < 1) throw std::invalid_argument("jet chart dimension must be >= 1");
    }

    int chart_dim() const { return static_cast<int>(grad_.size()); }
    const Complex& value() const { return value_; }
    const Vector& grad() const { return grad_; }
    Complex grad(int a) const { return grad_(a); }
    Complex hess(int a, int b) const { return hess_(packed_index(a, b)); }

    Matrix hessian() const {
        const int d = chart_dim();
        Matrix h(d, d);
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) h(a, b) = hess(a, b);
        return h;
    }

    // Raw mutators used by the arithmetic below; they keep the packed layout.
    Complex& value() { return value_; }
    Complex& grad(int a) { return grad_(a); }
    Complex& hess_entry(int a, int b) { return hess_(packed_index(a, b)); }

    static Eigen::Index packed_size(int d) { return static_cast<Eigen::Index>(d) * (d + 1) / 2; }

private:
    Eigen::Index packed_index(int a, int b) const {
        if (a > b) std::swap(a, b);
        const int d = chart_dim();
        // row-major upper triangle: rows before `a` hold d, d-1, ..., entries
        return static_cast<Eigen::Index>(a) * d - static_cast<Eigen::Index>(a) * (a - 1) / 2 + (b - a);
    }

    Complex value_{};
    Vector grad_;
    Vector hess_;
};

namespace detail {
template <typename Scalar>
void require_same_dim(const Jet2Scalar<Scalar>& x, const Jet2Scalar<Scalar>& y) {
    if (x.chart_dim() != y.chart_dim())
        throw DimensionMismatch("jet chart dimensions differ: " + std::to_string(x.chart_dim()) +
                                " vs " + std::to_string(y.chart_dim()));
}
}  // namespace detail

template <typename Scalar>
Jet2Scalar<Scalar> jet_const(std::complex<Scalar> c, int d) {
    return Jet2Scalar<Scalar>(c, d);
}

/// Seed of chart variable `a` with value `x`.
template <typename Scalar>
Jet2Scalar<Scalar> jet_var(int a, Scalar x, int d) {
    if (a < 0 || a >= d)
        throw std::out_of_range("jet variable index " + std::to_string(a) + " outside [0, " +
                                std::to_string(d) + ")");
    Jet2Scalar<Scalar> j(std::complex<Scalar>(x, 0), d);
    j.grad(a) = std::complex<Scalar>(1, 0);
    return j;
}

template <typename Scalar>
Jet2Scalar<Scalar> operator+(const Jet2Scalar<Scalar>& x, const Jet2Scalar<Scalar>& y) {
    detail::require_same_dim(x, y);
    const int d = x.chart_dim();
    Jet2Scalar<Scalar> r(x.value() + y.value(), d);
    for (int a = 0; a < d; ++a) {
        r.grad(a) = x.grad(a) + y.grad(a);
        for (int b = a; b < d; ++b) r.hess_entry(a, b) = x.hess(a, b) + y.hess(a, b);
    }
    return r;
}

template <typename Scalar>
Jet2Scalar<Scalar> operator*(std::complex<Scalar> c, const Jet2Scalar<Scalar>& x) {
    const int d = x.chart_dim();
    Jet2Scalar<Scalar> r(c * x.value(), d);
    for (int a = 0; a < d; ++a) {
        r.grad(a) = c * x.grad(a);
        for (int b = a; b < d; ++b) r.hess_entry(a, b) = c * x.hess(a, b);
    }
    return r;
}

template <typename Scalar>
Jet2Scalar<Scalar> operator*(Scalar c, const Jet2Scalar<Scalar>& x) {
    return std::complex<Scalar>(c, 0) * x;
}

template <typename Scalar>
Jet2Scalar<Scalar> operator-(const Jet2Scalar<Scalar>& x) {
    return Scalar(-1) * x;
}

template <typename Scalar>
Jet2Scalar<Scalar> operator-(const Jet2Scalar<Scalar>& x, const Jet2Scalar<Scalar>& y) {
    return x + (-y);
}

/// Leibniz rule truncated at second order.
template <typename Scalar>
Jet2Scalar<Scalar> operator*(const Jet2Scalar<Scalar>& x, const Jet2Scalar<Scalar>& y) {
    detail::require_same_dim(x, y);
    const int d = x.chart_dim();
    Jet2Scalar<Scalar> r(x.value() * y.value(), d);
    for (int a = 0; a < d; ++a) {
        r.grad(a) = x.grad(a) * y.value() + x.value() * y.grad(a);
        for (int b = a; b < d; ++b)
            r.hess_entry(a, b) = x.hess(a, b) * y.value() + x.value() * y.hess(a, b) +
                                 x.grad(a) * y.grad(b) + x.grad(b) * y.grad(a);
    }
    return r;
}

/// exp(i * phase). For the affine phases used by the immersion families
/// the result is exact: grad = i∇L·w, hess = (i∇L)(i∇L)ᵀ·w.
template <typename Scalar>
Jet2Scalar<Scalar> expi(const Jet2Scalar<Scalar>& phase) {
    using C = std::complex<Scalar>;
    const C i(0, 1);
    const int d = phase.chart_dim();
    const C w = std::exp(i * phase.value());
    Jet2Scalar<Scalar> r(w, d);
    for (int a = 0; a < d; ++a) {
        const C ga = i * phase.grad(a);
        r.grad(a) = ga * w;
        for (int b = a; b < d; ++b) {
            const C gb = i * phase.grad(b);
            r.hess_entry(a, b) = (i * phase.hess(a, b) + ga * gb) * w;
        }
    }
    return r;
}

template <typename Scalar>
Jet2Scalar<Scalar> cos(const Jet2Scalar<Scalar>& x) {
    return Scalar(0.5) * (expi(x) + expi(-x));
}

template <typename Scalar>
Jet2Scalar<Scalar> sin(const Jet2Scalar<Scalar>& x) {
    return std::complex<Scalar>(0, Scalar(-0.5)) * (expi(x) - expi(-x));
}

/// 2-jet of a map into C^m: one scalar jet per ambient component.
template <typename Scalar>
class Jet2 {
public:
    using Complex = std::complex<Scalar>;
    using Vector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
    using Matrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

    explicit Jet2(std::vector<Jet2Scalar<Scalar>> components) : components_(std::move(components)) {
        if (components_.empty()) throw std::invalid_argument("jet needs at least one component");
        for (const auto& c : components_) detail::require_same_dim(c, components_.front());
    }

    int chart_dim() const { return components_.front().chart_dim(); }
    int ambient_dim() const { return static_cast<int>(components_.size()); }
    const Jet2Scalar<Scalar>& operator[](int alpha) const { return components_[alpha]; }

    Vector value() const {
        Vector v(ambient_dim());
        for (int al = 0; al < ambient_dim(); ++al) v(al) = components_[al].value();
        return v;
    }

    Vector partial(int a) const {
        Vector v(ambient_dim());
        for (int al = 0; al < ambient_dim(); ++al) v(al) = components_[al].grad(a);
        return v;
    }

    Vector second(int a, int b) const {
        Vector v(ambient_dim());
        for (int al = 0; al < ambient_dim(); ++al) v(al) = components_[al].hess(a, b);
        return v;
    }

    /// Ambient-by-chart matrix whose columns are the coordinate tangents.
    Matrix tangents() const {
        Matrix t(ambient_dim(), chart_dim());
        for (int a = 0; a < chart_dim(); ++a) t.col(a) = partial(a);
        return t;
    }

    /// | |F|² - 1 | at the evaluation point.
    Scalar sphere_defect() const { return std::abs(value().squaredNorm() - Scalar(1)); }

private:
    std::vector<Jet2Scalar<Scalar>> components_;
};

using Jet2Scalard = Jet2Scalar<double>;
using Jet2d = Jet2<double>;

/// Central difference of a vector-valued field along chart axis `a`.
template <typename Field, typename Point>
Eigen::VectorXd fd_partial(const Field& field, const Point& point, int a, double h = 1e-4) {
    if (!(h > 0)) throw std::invalid_argument("finite-difference step must be positive");
    Eigen::VectorXd plus = point;
    Eigen::VectorXd minus = point;
    plus(a) += h;
    minus(a) -= h;
    const Eigen::VectorXd fp = field(plus);
    const Eigen::VectorXd fm = field(minus);
    return (fp - fm) / (2 * h);
}

}  // namespace csl
