#pragma once

// Small dense cubic tensors over an n-dimensional real frame: a general
// n×n×n array and a fully symmetric one stored by its independent entries.

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "csl/errors.hpp"

namespace csl {

template <typename Scalar>
class Tensor3 {
public:
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

    Tensor3() = default;
    explicit Tensor3(int n) : n_(n), data_(Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(n * n * n)) {}

    int dim() const { return n_; }
    Scalar& operator()(int i, int j, int k) { return data_((i * n_ + j) * n_ + k); }
    Scalar operator()(int i, int j, int k) const { return data_((i * n_ + j) * n_ + k); }

    /// Slice matrix (T_{ijk})_{jk} for fixed i.
    Matrix slice(int i) const {
        Matrix m(n_, n_);
        for (int j = 0; j < n_; ++j)
            for (int k = 0; k < n_; ++k) m(j, k) = (*this)(i, j, k);
        return m;
    }

    Scalar squared_norm() const { return data_.squaredNorm(); }
    Scalar max_abs() const { return n_ == 0 ? Scalar(0) : data_.cwiseAbs().maxCoeff(); }

private:
    int n_ = 0;
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> data_;
};

/// Fully symmetric 3-tensor holding its n(n+1)(n+2)/6 independent entries.
template <typename Scalar>
class SymTensor3 {
public:
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    SymTensor3() = default;
    explicit SymTensor3(int n) : n_(n), data_(Vector::Zero(packed_size(n))) {}

    static Eigen::Index packed_size(int n) { return static_cast<Eigen::Index>(n) * (n + 1) * (n + 2) / 6; }

    int dim() const { return n_; }
    const Vector& packed() const { return data_; }

    Scalar operator()(int i, int j, int k) const { return data_(index(i, j, k)); }
    Scalar& at(int i, int j, int k) { return data_(index(i, j, k)); }

    Matrix slice(int i) const {
        Matrix m(n_, n_);
        for (int j = 0; j < n_; ++j)
            for (int k = 0; k < n_; ++k) m(j, k) = (*this)(i, j, k);
        return m;
    }

    Tensor3<Scalar> dense() const {
        Tensor3<Scalar> t(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                for (int k = 0; k < n_; ++k) t(i, j, k) = (*this)(i, j, k);
        return t;
    }

private:
    Eigen::Index index(int i, int j, int k) const {
        std::array<int, 3> s{i, j, k};
        std::sort(s.begin(), s.end());
        // count sorted triples lexicographically before (s0, s1, s2)
        Eigen::Index idx = 0;
        for (int a = 0; a < s[0]; ++a) idx += static_cast<Eigen::Index>(n_ - a) * (n_ - a + 1) / 2;
        for (int b = s[0]; b < s[1]; ++b) idx += n_ - b;
        return idx + (s[2] - s[1]);
    }

    int n_ = 0;
    Vector data_;
};

/// Average over the six index permutations.
template <typename Scalar>
SymTensor3<Scalar> symmetrized(const Tensor3<Scalar>& t) {
    const int n = t.dim();
    SymTensor3<Scalar> s(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int k = j; k < n; ++k)
                s.at(i, j, k) = (t(i, j, k) + t(i, k, j) + t(j, i, k) + t(j, k, i) + t(k, i, j) +
                                 t(k, j, i)) /
                                Scalar(6);
    return s;
}

/// max over entries and index permutations of |T_{ijk} - T_{π(ijk)}|.
template <typename Scalar>
Scalar max_asymmetry(const Tensor3<Scalar>& t) {
    const int n = t.dim();
    Scalar worst = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const Scalar v = t(i, j, k);
                for (Scalar w : {t(i, k, j), t(j, i, k), t(j, k, i), t(k, i, j), t(k, j, i)})
                    worst = std::max(worst, std::abs(v - w));
            }
    return worst;
}

/// Σ over all n³ index triples of the squared entries.
template <typename Scalar>
Scalar squared_norm(const SymTensor3<Scalar>& s) {
    const int n = s.dim();
    Scalar acc = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) acc += s(i, j, k) * s(i, j, k);
    return acc;
}

/// Trace covector v_k = Σ_i T_{iik}.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> trace_form(const SymTensor3<Scalar>& s) {
    const int n = s.dim();
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> v = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(n);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) v(k) += s(i, i, k);
    return v;
}

/// The pure-trace tensor (v_i δ_jk + v_j δ_ki + v_k δ_ij) / (n + 2).
template <typename Scalar>
SymTensor3<Scalar> trace_part(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& v) {
    const int n = static_cast<int>(v.size());
    SymTensor3<Scalar> s(n);
    const Scalar c = Scalar(1) / Scalar(n + 2);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int k = j; k < n; ++k) {
                Scalar x = 0;
                if (j == k) x += v(i);
                if (k == i) x += v(j);
                if (i == j) x += v(k);
                s.at(i, j, k) = c * x;
            }
    return s;
}

template <typename Scalar>
SymTensor3<Scalar> operator+(const SymTensor3<Scalar>& a, const SymTensor3<Scalar>& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("tensor dimensions differ");
    SymTensor3<Scalar> r(a.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = i; j < a.dim(); ++j)
            for (int k = j; k < a.dim(); ++k) r.at(i, j, k) = a(i, j, k) + b(i, j, k);
    return r;
}

template <typename Scalar>
SymTensor3<Scalar> operator-(const SymTensor3<Scalar>& a, const SymTensor3<Scalar>& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("tensor dimensions differ");
    SymTensor3<Scalar> r(a.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = i; j < a.dim(); ++j)
            for (int k = j; k < a.dim(); ++k) r.at(i, j, k) = a(i, j, k) - b(i, j, k);
    return r;
}

/// Traceless part: s minus trace_part(trace_form(s)).
template <typename Scalar>
SymTensor3<Scalar> traceless_part(const SymTensor3<Scalar>& s) {
    return s - trace_part<Scalar>(trace_form(s));
}

/// Components in the basis given by the columns of the orthogonal matrix q:
/// r_{ijk} = Σ q_{ai} q_{bj} q_{ck} s_{abc}.
template <typename Scalar, typename Derived>
SymTensor3<Scalar> rotated(const SymTensor3<Scalar>& s, const Eigen::MatrixBase<Derived>& q) {
    const int n = s.dim();
    if (q.rows() != n || q.cols() != n) throw DimensionMismatch("rotation shape does not match tensor");
    // contract one slot at a time on a dense copy
    Tensor3<Scalar> a = s.dense(), b(n);
    for (int i = 0; i < n; ++i)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                Scalar acc = 0;
                for (int x = 0; x < n; ++x) acc += q(x, i) * a(x, y, z);
                b(i, y, z) = acc;
            }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int z = 0; z < n; ++z) {
                Scalar acc = 0;
                for (int y = 0; y < n; ++y) acc += q(y, j) * b(i, y, z);
                a(i, j, z) = acc;
            }
    Tensor3<Scalar> c(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                Scalar acc = 0;
                for (int z = 0; z < n; ++z) acc += q(z, k) * a(i, j, z);
                c(i, j, k) = acc;
            }
    return symmetrized(c);
}

using Tensor3d = Tensor3<double>;
using SymTensor3d = SymTensor3<double>;

}  // namespace csl
