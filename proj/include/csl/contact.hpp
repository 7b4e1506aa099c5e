#pragma once

// Standard contact structure of the unit sphere S^{2n+1} ⊂ C^{n+1}.
//
// C^{n+1} is identified with R^{2n+2}; the metric is the real inner product
// Re Σ u_α conj(v_α) and J is multiplication by i. The contact form is taken
// without the customary factor 1/2 so that the Reeb field i·x is a unit
// vector with α(R) = 1. Kernels, and hence Legendrian conditions, do not
// depend on the scaling.

#include <complex>

#include <Eigen/Dense>

#include "csl/adnum.hpp"
#include "csl/family.hpp"

namespace csl {

using AmbientVector = Eigen::VectorXcd;

inline constexpr double kSphereTol = 1e-10;

/// Real inner product of C^{n+1} = R^{2n+2}.
inline double real_inner(const AmbientVector& u, const AmbientVector& v) {
    return u.dot(v).real();
}

/// J v = i·v, computed componentwise as (re, im) -> (-im, re) so that
/// J² = -1 holds exactly.
inline AmbientVector apply_j(const AmbientVector& v) {
    AmbientVector r(v.size());
    for (Eigen::Index k = 0; k < v.size(); ++k) r(k) = {-v(k).imag(), v(k).real()};
    return r;
}

double contact_alpha(const AmbientVector& x, const AmbientVector& v, double tol = kSphereTol);

AmbientVector reeb(const AmbientVector& x, double tol = kSphereTol);

/// Largest modulus among Σ_α F^α_a conj(F^α) and
/// Σ_α (F^α_a conj(F^α_b) - F^α_b conj(F^α_a)) over chart indices a < b.
double legendrian_residual(const Jet2d& jet);

/// max_a |α(F, ∂_a F)|.
double contact_pullback_residual(const Jet2d& jet);

/// u ↦ (cos u, sin u · e^{iu}) ⊂ S^3: a closed curve that is not Legendrian,
/// kept as a negative control.
ImmersionFamily non_legendrian_curve();

}  // namespace csl
