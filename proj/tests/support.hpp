#pragma once

// Shared helpers for the test binaries: seeded random tensors and
// brute-force reference evaluations written independently of the library.

#include <cmath>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "csl/geom.hpp"
#include "csl/tensor.hpp"

namespace csl::testing {

inline SymTensor3d random_sym(int n, std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> g(0.0, scale);
    SymTensor3d s(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int k = j; k < n; ++k) s.at(i, j, k) = g(rng);
    return s;
}

inline SymTensor3d random_traceless(int n, std::mt19937_64& rng, double scale = 1.0) {
    return traceless_part(random_sym(n, rng, scale));
}

inline Eigen::MatrixXd random_rotation(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = g(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
    return qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
}

// Σ_{ijk} σ_ijk² over every index triple.
inline double brute_norm2(const SymTensor3d& s) {
    const int n = s.dim();
    double acc = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) acc += s(i, j, k) * s(i, j, k);
    return acc;
}

// Right-hand side of Simons' identity written as literal nested sums.
inline Tensor3d brute_simons(const SymTensor3d& s, const Eigen::VectorXd& mu, const Tensor3d& hess_mu) {
    const int n = s.dim();
    Tensor3d r(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double v = hess_mu(i, j, k);
                v -= mu(i) * (j == k ? 1.0 : 0.0);
                v -= mu(j) * (i == k ? 1.0 : 0.0);
                for (int t = 0; t < n; ++t)
                    for (int q = 0; q < n; ++q) v += s(i, j, t) * s(t, k, q) * mu(q);
                v += (n + 1) * s(i, j, k);
                for (int l = 0; l < n; ++l)
                    for (int q = 0; q < n; ++q)
                        for (int t = 0; t < n; ++t) {
                            v += 2.0 * s(i, q, l) * s(j, l, t) * s(k, t, q);
                            v -= s(t, l, i) * s(t, l, q) * s(j, k, q);
                            v -= s(t, l, j) * s(t, l, q) * s(i, k, q);
                            v -= s(t, l, k) * s(t, l, q) * s(i, j, q);
                        }
                r(i, j, k) = v;
            }
    return r;
}

// Σ_ij |A_i A_j - A_j A_i|² + Σ_ij (tr A_i A_j)² with (A_i)_jk = σ_ijk, by index sums.
inline double brute_cdk_lhs(const SymTensor3d& s) {
    const int n = s.dim();
    double comm = 0, gram = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double ip = 0;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    double c = 0;
                    for (int m = 0; m < n; ++m) c += s(i, a, m) * s(j, m, b) - s(j, a, m) * s(i, m, b);
                    comm += c * c;
                    ip += s(i, a, b) * s(j, a, b);
                }
            gram += ip * ip;
        }
    return comm + gram;
}

// σ with σ_111 = l1, σ_1jj = l2 (j ≥ 2), zero otherwise.
inline SymTensor3d two_eigenvalue_sigma(int n, double l1, double l2) {
    SymTensor3d s(n);
    s.at(0, 0, 0) = l1;
    for (int j = 1; j < n; ++j) s.at(0, j, j) = l2;
    return s;
}

inline double max_abs_diff(const Tensor3d& a, const Tensor3d& b) {
    double w = 0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            for (int k = 0; k < a.dim(); ++k) w = std::max(w, std::abs(a(i, j, k) - b(i, j, k)));
    return w;
}

}  // namespace csl::testing
