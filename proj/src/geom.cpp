#include "csl/geom.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace csl {

Eigen::MatrixXd induced_metric(const Jet2d& jet) {
    const Eigen::MatrixXcd t = jet.tangents();
    return (t.adjoint() * t).real();
}

FrameData build_frame(const Jet2d& jet) {
    const int n = jet.chart_dim();
    FrameData fr;
    fr.metric = induced_metric(jet);
    fr.position = jet.value();

    // Reject chart singularities by the scale-free determinant so that thin
    // but honest directions (products of sines in high-dimensional angular
    // charts) are still accepted.
    Eigen::VectorXd scale(n);
    for (int a = 0; a < n; ++a) {
        const double gaa = fr.metric(a, a);
        if (!(gaa >= kSpeedFloor))
            throw DegenerateMetric("coordinate tangent " + std::to_string(a) + " vanishes (|dF|^2 = " +
                                   std::to_string(gaa) + ")");
        scale(a) = 1.0 / std::sqrt(gaa);
    }
    const double normalized_det = (scale.asDiagonal() * fr.metric * scale.asDiagonal()).determinant();
    if (!(normalized_det >= kDegeneracyTol))
        throw DegenerateMetric("induced metric is degenerate (normalized det = " + std::to_string(normalized_det) + ")");

    const Eigen::MatrixXcd dF = jet.tangents();
    fr.tangents.resize(dF.rows(), n);
    fr.frame_coeffs = Eigen::MatrixXd::Zero(n, n);
    for (int a = 0; a < n; ++a) {
        Eigen::VectorXcd w = dF.col(a);
        Eigen::VectorXd c = Eigen::VectorXd::Unit(n, a);
        for (int i = 0; i < a; ++i) {
            const double p = real_inner(fr.tangents.col(i), w);
            w -= p * fr.tangents.col(i);
            c -= p * fr.frame_coeffs.col(i);
        }
        const double len = w.norm();
        fr.tangents.col(a) = w / len;
        fr.frame_coeffs.col(a) = c / len;
    }
    fr.normals.resize(dF.rows(), n);
    for (int i = 0; i < n; ++i) fr.normals.col(i) = apply_j(fr.tangents.col(i));
    fr.reeb = apply_j(fr.position);
    return fr;
}

namespace {

// Frame components of the ambient second derivative: X_ij = Σ_ab e_i^a e_j^b ∂_a∂_b F.
std::vector<Eigen::VectorXcd> frame_second_derivatives(const Jet2d& jet, const FrameData& frame) {
    const int n = jet.chart_dim();
    std::vector<Eigen::VectorXcd> coord(n * n);
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) coord[a * n + b] = coord[b * n + a] = jet.second(a, b);

    std::vector<Eigen::VectorXcd> out(n * n, Eigen::VectorXcd::Zero(jet.ambient_dim()));
    const Eigen::MatrixXd& e = frame.frame_coeffs;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    const double w = e(a, i) * e(b, j);
                    if (w != 0.0) out[i * n + j] += w * coord[a * n + b];
                }
    return out;
}

}  // namespace

Tensor3d sigma_raw(const Jet2d& jet, const FrameData& frame) {
    const int n = jet.chart_dim();
    const auto x = frame_second_derivatives(jet, frame);
    Tensor3d s(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) s(i, j, k) = real_inner(x[i * n + j], frame.normals.col(k));
    return s;
}

double reeb_component_residual(const Jet2d& jet, const FrameData& frame) {
    const int n = jet.chart_dim();
    const auto x = frame_second_derivatives(jet, frame);
    double worst = 0;
    for (int i = 0; i < n * n; ++i) worst = std::max(worst, std::abs(real_inner(x[i], frame.reeb)));
    return worst;
}

Eigen::MatrixXd ricci_from_sigma(const SymTensor3d& sigma, const Eigen::VectorXd& mu) {
    const int n = sigma.dim();
    Eigen::MatrixXd ric = (n - 1) * Eigen::MatrixXd::Identity(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double acc = 0;
            for (int k = 0; k < n; ++k) {
                acc += sigma(i, j, k) * mu(k);
                for (int l = 0; l < n; ++l) acc -= sigma(i, k, l) * sigma(j, k, l);
            }
            ric(i, j) += acc;
        }
    return ric;
}

FundamentalData fundamental_data_from_sigma(const SymTensor3d& sigma) {
    FundamentalData f;
    f.n = sigma.dim();
    f.sigma = sigma;
    f.sigma_raw = sigma.dense();
    f.mu = trace_form(sigma);
    f.sigma0 = traceless_part(sigma);
    f.normB2 = squared_norm(sigma);
    f.normH2 = f.mu.squaredNorm();
    f.ricci = ricci_from_sigma(sigma, f.mu);
    if (f.n == 2) f.gauss_curv = 0.5 * (2.0 + f.normH2 - f.normB2);
    return f;
}

FundamentalData fundamental_forms(const Jet2d& jet, const FrameData& frame) {
    if (frame.dim() != jet.chart_dim()) throw DimensionMismatch("frame and jet dimensions differ");
    Tensor3d raw = sigma_raw(jet, frame);
    FundamentalData f = fundamental_data_from_sigma(symmetrized(raw));
    f.sigma_raw = std::move(raw);
    return f;
}

double gauss_curvature(const FundamentalData& fund) {
    if (fund.n != 2) throw WrongDimension("Gauss curvature needs n = 2, got n = " + std::to_string(fund.n));
    return 0.5 * (2.0 + fund.normH2 - fund.normB2);
}

double ric_jh(const FundamentalData& fund) { return fund.mu.dot(fund.ricci * fund.mu); }

AmbientVector mean_curvature_vector(const FundamentalData& fund, const FrameData& frame) {
    return frame.normals * fund.mu.cast<std::complex<double>>();
}

FrameResiduals frame_residuals(const FrameData& frame) {
    const int n = frame.dim();
    FrameResiduals r;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double g = real_inner(frame.tangents.col(i), frame.tangents.col(j));
            r.orthonormality = std::max(r.orthonormality, std::abs(g - (i == j ? 1.0 : 0.0)));
            r.normal_tangent =
                std::max(r.normal_tangent, std::abs(real_inner(frame.normals.col(i), frame.tangents.col(j))));
        }
        r.normal_position = std::max(r.normal_position, std::abs(real_inner(frame.normals.col(i), frame.position)));
    }
    return r;
}

}  // namespace csl
