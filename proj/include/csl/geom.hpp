#pragma once

// Frames and fundamental forms of Legendrian immersions into S^{2n+1}.

#include <optional>

#include <Eigen/Dense>

#include "csl/adnum.hpp"
#include "csl/contact.hpp"
#include "csl/tensor.hpp"

namespace csl {

/// Threshold on the determinant of the scale-normalized metric
/// D^{-1/2} g D^{-1/2} (D = diag g) below which a chart point is rejected.
inline constexpr double kDegeneracyTol = 1e-12;
/// Floor on individual coordinate speeds |∂_a F|².
inline constexpr double kSpeedFloor = 1e-24;

struct FrameData {
    Eigen::MatrixXd metric;        // g_ab = Re<∂_a F, ∂_b F>
    Eigen::MatrixXd frame_coeffs;  // column i holds e_i^a, i.e. E_i = Σ_a e_i^a ∂_a F
    Eigen::MatrixXcd tangents;     // column i is E_i
    Eigen::MatrixXcd normals;      // column i is ν_i = i·E_i
    AmbientVector position;
    AmbientVector reeb;            // i·F

    int dim() const { return static_cast<int>(metric.rows()); }
};

struct FundamentalData {
    int n = 0;
    SymTensor3d sigma;      // σ_ijk = <B(E_i, E_j), J E_k>, symmetrized
    Tensor3d sigma_raw;     // before symmetrization
    Eigen::VectorXd mu;     // μ_k = Σ_i σ_iik
    SymTensor3d sigma0;     // traceless part
    double normB2 = 0;      // |σ|²
    double normH2 = 0;      // |μ|²
    Eigen::MatrixXd ricci;  // Gauss equation, frame components
    std::optional<double> gauss_curv;  // n = 2 only
};

Eigen::MatrixXd induced_metric(const Jet2d& jet);

/// Modified Gram–Schmidt on ∂_1F, ..., ∂_nF in chart order.
/// Throws DegenerateMetric at chart singularities.
FrameData build_frame(const Jet2d& jet);

/// Unsymmetrized σ_ijk = Σ_ab e_i^a e_j^b Re<∂_a∂_b F, i·E_k>.
Tensor3d sigma_raw(const Jet2d& jet, const FrameData& frame);

/// max_ij |<B(E_i, E_j), i·F>|: the Reeb component of the second fundamental form.
double reeb_component_residual(const Jet2d& jet, const FrameData& frame);

/// Assembles every algebraic invariant from σ. Exposed separately so that
/// hand-built tensors can be analysed the same way as computed ones.
FundamentalData fundamental_data_from_sigma(const SymTensor3d& sigma);

FundamentalData fundamental_forms(const Jet2d& jet, const FrameData& frame);

/// Ric_ij = (n-1)δ_ij + Σ_k σ_ijk μ_k - Σ_kl σ_ikl σ_jkl.
Eigen::MatrixXd ricci_from_sigma(const SymTensor3d& sigma, const Eigen::VectorXd& mu);

/// κ = (2 + |H|² - |B|²) / 2. Surfaces only.
double gauss_curvature(const FundamentalData& fund);

/// Ric(JH, JH) = μᵀ Ric μ.
double ric_jh(const FundamentalData& fund);

/// Mean curvature vector H = Σ_k μ_k ν_k as an ambient vector.
AmbientVector mean_curvature_vector(const FundamentalData& fund, const FrameData& frame);

/// Frame orthonormality and normal-bundle checks at one point.
struct FrameResiduals {
    double orthonormality = 0;  // max |Re<E_i, E_j> - δ_ij|
    double normal_tangent = 0;  // max |Re<ν_i, E_j>|
    double normal_position = 0; // max |Re<ν_i, F>|
};
FrameResiduals frame_residuals(const FrameData& frame);

}  // namespace csl
