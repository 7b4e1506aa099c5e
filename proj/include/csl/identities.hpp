#pragma once

// Residual checks for the identities satisfied by CSL submanifolds, plus
// the algebraic inequalities behind the pinching results.

#include <utility>

#include <Eigen/Dense>

#include "csl/family.hpp"
#include "csl/geom.hpp"
#include "csl/tensor.hpp"

namespace csl {

/// Mean curvature below this norm counts as zero.
inline constexpr double kMeanCurvatureMin = 1e-8;

struct EqualityCaseFit {
    double lambda1 = 0;
    double lambda2 = 0;
    double structural_residual = 0;
    double relation_residual = 0;
    bool valid = false;
};

double codazzi_symmetry_residual(const Tensor3d& sigma_raw);

/// Coordinate components η_a = μ(∂_a) = Re<H, i·∂_a F> of the mean curvature form.
Eigen::VectorXd mean_curvature_form(const ImmersionFamily& family, const Eigen::VectorXd& u);

/// max_{a<b} |∂_a η_b - ∂_b η_a| by central differences.
double dmu_residual(const ImmersionFamily& family, const Eigen::VectorXd& u, double h = 1e-4);

/// |g^{ab}(∂_a η_b - Γ^c_ab η_c)|, the codifferential of μ up to sign, with
/// Christoffel symbols from central differences of the induced metric.
double csl_residual(const ImmersionFamily& family, const Eigen::VectorXd& u, double h = 1e-4);

/// Right-hand side of Simons' identity for Δσ_ijk, given σ, μ and the
/// second covariant derivatives hess_mu(i, j, k) = μ_{i,jk}.
Tensor3d simons_rhs(const FundamentalData& fund, const Tensor3d& hess_mu, int n);

/// Ricci term of the Bochner formula for JH: Ric(JH, JH).
double bochner_quantity(const FundamentalData& fund);

/// Orthonormal basis whose first column is ±μ/|μ| (sign making the first
/// nonzero component of μ positive), completed by a Householder reflection.
Eigen::MatrixXd householder_basis(const Eigen::VectorXd& direction);

/// Orthonormal basis with first column exactly μ/|μ| (the JH direction, in
/// which the first component of μ equals |H|).
Eigen::MatrixXd jh_adapted_basis(const Eigen::VectorXd& mu);

EqualityCaseFit equality_case_fit(const FundamentalData& fund);

/// 3σ̂_111 - 2|H| in the JH-adapted frame of a surface.
double surface_f(const FundamentalData& fund);

/// |1 + σ̂_111 σ̂_122 - σ̂_122²| for a surface, in the frame where ê_1 is the
/// critical direction of X ↦ σ(X,X,X) nearest to JH (so σ̂_112 = 0).
double b2_relation_residual(const FundamentalData& fund);

/// Unit angle θ of the critical direction used by b2_relation_residual.
double cubic_critical_angle(const SymTensor3d& sigma, const Eigen::VectorXd& mu);

struct CdkBound {
    double lhs = 0;  // Σ_ij |[A_i, A_j]|² + Σ_ij <A_i, A_j>²
    double rhs = 0;  // (3/2) |σ|⁴
};
CdkBound cdk_matrix_bound(const SymTensor3d& sigma);
CdkBound cdk_matrix_bound(const FundamentalData& fund);

/// |σ̊|² - (n+2)/(n-1) σ̊_111², for a traceless tensor expressed in the frame
/// of interest (index 0 is the distinguished direction).
double traceless_chain_gap(const SymTensor3d& sigma0);

/// Lower bound for Ric(JH, JH)/|H|² from the traceless norm and |H|:
/// n-1 - (n-2)/(n+2)·sqrt((n-1)/(n+2)·|σ̊|²)·|H| + 2(n-1)/(n+2)²·|H|² - n/(n+2)·|σ̊|².
double ricci_lower_bound(int n, double sigma0_norm2, double h_norm);

}  // namespace csl
