#include "csl/identities.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace csl {

double codazzi_symmetry_residual(const Tensor3d& sigma_raw) { return max_asymmetry(sigma_raw); }

namespace {

struct PointGeometry {
    Eigen::VectorXd eta;     // mean curvature form, coordinate components
    Eigen::MatrixXd metric;  // induced metric
};

PointGeometry point_geometry(const ImmersionFamily& family, const Eigen::VectorXd& u) {
    const Jet2d jet = family.jet(u);
    const FrameData frame = build_frame(jet);
    const FundamentalData fund = fundamental_forms(jet, frame);
    const AmbientVector h = mean_curvature_vector(fund, frame);
    const int n = family.dim();
    PointGeometry pg;
    pg.eta.resize(n);
    for (int a = 0; a < n; ++a) pg.eta(a) = real_inner(h, apply_j(jet.partial(a)));
    pg.metric = frame.metric;
    return pg;
}

// [η, vec(g)] stacked, so one stencil serves both the form and the metric.
Eigen::VectorXd stacked_field(const ImmersionFamily& family, const Eigen::VectorXd& u) {
    const PointGeometry pg = point_geometry(family, u);
    const int n = family.dim();
    Eigen::VectorXd out(n + n * n);
    out.head(n) = pg.eta;
    out.tail(n * n) = Eigen::Map<const Eigen::VectorXd>(pg.metric.data(), n * n);
    return out;
}

}  // namespace

Eigen::VectorXd mean_curvature_form(const ImmersionFamily& family, const Eigen::VectorXd& u) {
    return point_geometry(family, u).eta;
}

double dmu_residual(const ImmersionFamily& family, const Eigen::VectorXd& u, double h) {
    const int n = family.dim();
    auto field = [&](const Eigen::VectorXd& p) { return mean_curvature_form(family, p); };
    Eigen::MatrixXd d(n, n);  // d(a, b) = ∂_a η_b
    for (int a = 0; a < n; ++a) d.row(a) = fd_partial(field, u, a, h).transpose();
    double worst = 0;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) worst = std::max(worst, std::abs(d(a, b) - d(b, a)));
    return worst;
}

double csl_residual(const ImmersionFamily& family, const Eigen::VectorXd& u, double h) {
    const int n = family.dim();
    const PointGeometry center = point_geometry(family, u);
    auto field = [&](const Eigen::VectorXd& p) { return stacked_field(family, p); };

    Eigen::MatrixXd d_eta(n, n);               // (a, b) -> ∂_a η_b
    std::vector<Eigen::MatrixXd> d_metric(n);  // c -> ∂_c g
    for (int a = 0; a < n; ++a) {
        const Eigen::VectorXd der = fd_partial(field, u, a, h);
        d_eta.row(a) = der.head(n).transpose();
        d_metric[a] = Eigen::Map<const Eigen::MatrixXd>(der.tail(n * n).data(), n, n);
    }

    const Eigen::MatrixXd ginv = center.metric.inverse();
    double div = 0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            double conn = 0;  // Σ_c Γ^c_ab η_c
            for (int c = 0; c < n; ++c) {
                double gamma = 0;
                for (int e = 0; e < n; ++e)
                    gamma += ginv(c, e) * (d_metric[a](b, e) + d_metric[b](a, e) - d_metric[e](a, b));
                conn += 0.5 * gamma * center.eta(c);
            }
            div += ginv(a, b) * (d_eta(a, b) - conn);
        }
    return std::abs(div);
}

Tensor3d simons_rhs(const FundamentalData& fund, const Tensor3d& hess_mu, int n) {
    if (fund.n != n || hess_mu.dim() != n || fund.mu.size() != n)
        throw DimensionMismatch("simons_rhs: shapes do not match n = " + std::to_string(n));
    const SymTensor3d& s = fund.sigma;
    const Eigen::VectorXd& mu = fund.mu;

    std::vector<Eigen::MatrixXd> a(n);
    for (int i = 0; i < n; ++i) a[i] = s.slice(i);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);  // Σ_s μ_s A_s
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);  // Σ_t A_t²
    for (int t = 0; t < n; ++t) {
        m += mu(t) * a[t];
        p += a[t] * a[t];
    }
    // (P σ)_{i|jk} = Σ_s P_is σ_sjk
    std::vector<Eigen::MatrixXd> ps(n, Eigen::MatrixXd::Zero(n, n));
    for (int i = 0; i < n; ++i)
        for (int t = 0; t < n; ++t) ps[i] += p(i, t) * a[t];

    Tensor3d r(n);
    for (int i = 0; i < n; ++i) {
        const Eigen::MatrixXd am = a[i] * m;
        for (int j = 0; j < n; ++j) {
            const Eigen::MatrixXd aij = a[i] * a[j];
            for (int k = 0; k < n; ++k) {
                double v = hess_mu(i, j, k);
                if (j == k) v -= mu(i);
                if (i == k) v -= mu(j);
                v += am(j, k);
                v += (n + 1) * s(i, j, k);
                v += 2.0 * (aij * a[k]).trace();
                v -= ps[i](j, k) + ps[j](i, k) + ps[k](i, j);
                r(i, j, k) = v;
            }
        }
    }
    return r;
}

double bochner_quantity(const FundamentalData& fund) { return ric_jh(fund); }

namespace {

Eigen::MatrixXd reflection_to(const Eigen::VectorXd& v) {
    const int n = static_cast<int>(v.size());
    Eigen::VectorXd w = Eigen::VectorXd::Unit(n, 0) - v;
    const double w2 = w.squaredNorm();
    if (w2 < 1e-30) return Eigen::MatrixXd::Identity(n, n);
    return Eigen::MatrixXd::Identity(n, n) - (2.0 / w2) * w * w.transpose();
}

}  // namespace

Eigen::MatrixXd householder_basis(const Eigen::VectorXd& direction) {
    const double len = direction.norm();
    if (!(len > 0)) return Eigen::MatrixXd::Identity(direction.size(), direction.size());
    Eigen::VectorXd v = direction / len;
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        if (std::abs(v(k)) > 1e-12) {
            if (v(k) < 0) v = -v;
            break;
        }
    }
    return reflection_to(v);
}

Eigen::MatrixXd jh_adapted_basis(const Eigen::VectorXd& mu) {
    const double len = mu.norm();
    if (!(len > 0)) return Eigen::MatrixXd::Identity(mu.size(), mu.size());
    return reflection_to(mu / len);
}

EqualityCaseFit equality_case_fit(const FundamentalData& fund) {
    EqualityCaseFit fit;
    const int n = fund.n;
    if (!(std::sqrt(fund.normH2) > kMeanCurvatureMin)) return fit;
    fit.valid = true;

    const SymTensor3d s = rotated(fund.sigma, householder_basis(fund.mu));
    fit.lambda1 = s(0, 0, 0);
    double sum = 0;
    for (int j = 1; j < n; ++j) sum += s(0, j, j);
    fit.lambda2 = n > 1 ? sum / (n - 1) : 0.0;

    double worst = 0;
    for (int j = 1; j < n; ++j) {
        worst = std::max(worst, std::abs(s(0, 0, j)));
        worst = std::max(worst, std::abs(s(0, j, j) - fit.lambda2));
        for (int k = j + 1; k < n; ++k) worst = std::max(worst, std::abs(s(0, j, k)));
    }
    for (int i = 1; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int k = j; k < n; ++k) worst = std::max(worst, std::abs(s(i, j, k)));
    fit.structural_residual = worst;
    fit.relation_residual = std::abs(1.0 + fit.lambda1 * fit.lambda2 - fit.lambda2 * fit.lambda2);
    return fit;
}

namespace {

void require_nonminimal_surface(const FundamentalData& fund, const char* what) {
    if (fund.n != 2) throw WrongDimension(std::string(what) + " needs n = 2, got n = " + std::to_string(fund.n));
    if (!(std::sqrt(fund.normH2) > kMeanCurvatureMin))
        throw ZeroMeanCurvature(std::string(what) + " needs nonzero mean curvature");
}

Eigen::Matrix2d rotation(double theta) {
    Eigen::Matrix2d q;
    q << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
    return q;
}

// σ(ê1, ê1, ê2) for ê1 = (cos θ, sin θ), ê2 = (-sin θ, cos θ).
double mixed_component(const SymTensor3d& s, double theta) {
    const double c = std::cos(theta), sn = std::sin(theta);
    const double e1[2] = {c, sn}, e2[2] = {-sn, c};
    double acc = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) acc += s(i, j, k) * e1[i] * e1[j] * e2[k];
    return acc;
}

}  // namespace

double surface_f(const FundamentalData& fund) {
    require_nonminimal_surface(fund, "surface_f");
    const SymTensor3d s = rotated(fund.sigma, jh_adapted_basis(fund.mu));
    return 3.0 * s(0, 0, 0) - 2.0 * std::sqrt(fund.normH2);
}

double cubic_critical_angle(const SymTensor3d& sigma, const Eigen::VectorXd& mu) {
    if (sigma.dim() != 2) throw WrongDimension("cubic_critical_angle needs n = 2");
    constexpr int kSamples = 720;
    const double step = 2 * M_PI / kSamples;
    const double mu_len = mu.norm();

    std::vector<double> roots;
    for (int k = 0; k < kSamples; ++k) {
        double lo = k * step, hi = lo + step;
        double glo = mixed_component(sigma, lo), ghi = mixed_component(sigma, hi);
        if (glo == 0.0) {
            roots.push_back(lo);
            continue;
        }
        if ((glo < 0) == (ghi < 0)) continue;
        for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double gm = mixed_component(sigma, mid);
            if ((gm < 0) == (glo < 0)) {
                lo = mid;
                glo = gm;
            } else {
                hi = mid;
            }
        }
        roots.push_back(0.5 * (lo + hi));
    }
    if (roots.empty()) return mu_len > 0 ? std::atan2(mu(1), mu(0)) : 0.0;

    double best = roots.front(), best_score = -1e300;
    for (double th : roots) {
        double score;
        if (mu_len > 0) {
            score = (std::cos(th) * mu(0) + std::sin(th) * mu(1)) / mu_len;
        } else {
            const double c = std::cos(th), sn = std::sin(th);
            score = sigma(0, 0, 0) * c * c * c + 3 * sigma(0, 0, 1) * c * c * sn + 3 * sigma(0, 1, 1) * c * sn * sn +
                    sigma(1, 1, 1) * sn * sn * sn;
        }
        if (score > best_score) {
            best_score = score;
            best = th;
        }
    }
    return best;
}

double b2_relation_residual(const FundamentalData& fund) {
    require_nonminimal_surface(fund, "b2_relation_residual");
    const double theta = cubic_critical_angle(fund.sigma, fund.mu);
    const SymTensor3d s = rotated(fund.sigma, rotation(theta));
    const double s111 = s(0, 0, 0), s122 = s(0, 1, 1);
    return std::abs(1.0 + s111 * s122 - s122 * s122);
}

CdkBound cdk_matrix_bound(const SymTensor3d& sigma) {
    const int n = sigma.dim();
    std::vector<Eigen::MatrixXd> a(n);
    double norm2 = 0;
    for (int i = 0; i < n; ++i) {
        a[i] = sigma.slice(i);
        norm2 += a[i].squaredNorm();
    }
    CdkBound b;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            b.lhs += (a[i] * a[j] - a[j] * a[i]).squaredNorm();
            const double ip = (a[i].array() * a[j].array()).sum();
            b.lhs += ip * ip;
        }
    b.rhs = 1.5 * norm2 * norm2;
    return b;
}

CdkBound cdk_matrix_bound(const FundamentalData& fund) { return cdk_matrix_bound(fund.sigma); }

double traceless_chain_gap(const SymTensor3d& sigma0) {
    const int n = sigma0.dim();
    if (n < 2) throw WrongDimension("traceless_chain_gap needs n >= 2");
    const double s111 = sigma0(0, 0, 0);
    return squared_norm(sigma0) - double(n + 2) / double(n - 1) * s111 * s111;
}

double ricci_lower_bound(int n, double sigma0_norm2, double h_norm) {
    const double nn = n;
    return nn - 1 - (nn - 2) / (nn + 2) * std::sqrt((nn - 1) / (nn + 2) * sigma0_norm2) * h_norm +
           2 * (nn - 1) / ((nn + 2) * (nn + 2)) * h_norm * h_norm - nn / (nn + 2) * sigma0_norm2;
}

}  // namespace csl
