#include "csl/contact.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace csl {

namespace {

void require_on_sphere(const AmbientVector& x, double tol) {
    const double defect = std::abs(x.norm() - 1.0);
    if (!(defect < tol)) throw OffSphere("point is off the unit sphere by " + std::to_string(defect));
}

}  // namespace

double contact_alpha(const AmbientVector& x, const AmbientVector& v, double tol) {
    require_on_sphere(x, tol);
    if (x.size() != v.size()) throw DimensionMismatch("contact_alpha: vector sizes differ");
    return real_inner(v, apply_j(x));
}

AmbientVector reeb(const AmbientVector& x, double tol) {
    require_on_sphere(x, tol);
    return apply_j(x);
}

double legendrian_residual(const Jet2d& jet) {
    const int d = jet.chart_dim();
    const Eigen::VectorXcd f = jet.value();
    const Eigen::MatrixXcd t = jet.tangents();
    double worst = 0;
    for (int a = 0; a < d; ++a) {
        // Σ_α F^α_a conj(F^α)
        worst = std::max(worst, std::abs(f.dot(t.col(a))));
        for (int b = a + 1; b < d; ++b) {
            const std::complex<double> ab = t.col(b).dot(t.col(a));
            const std::complex<double> ba = t.col(a).dot(t.col(b));
            worst = std::max(worst, std::abs(ab - ba));
        }
    }
    return worst;
}

double contact_pullback_residual(const Jet2d& jet) {
    const Eigen::VectorXcd f = jet.value();
    double worst = 0;
    for (int a = 0; a < jet.chart_dim(); ++a) worst = std::max(worst, std::abs(contact_alpha(f, jet.partial(a))));
    return worst;
}

ImmersionFamily non_legendrian_curve() {
    auto eval = [](const Eigen::VectorXd& u) {
        const auto x = jet_var<double>(0, u(0), 1);
        return Jet2d({cos(x), sin(x) * expi(x)});
    };
    return ImmersionFamily("non_legendrian_curve", 1, {}, {ChartAxis{0, 2 * M_PI, true}}, eval);
}

}  // namespace csl
