#include "csl/family.hpp"

#include <random>
#include <stdexcept>

namespace csl {

ImmersionFamily::ImmersionFamily(std::string name, int n, std::map<std::string, double> params,
                                 std::vector<ChartAxis> axes, Evaluator eval)
    : name_(std::move(name)), n_(n), params_(std::move(params)), axes_(std::move(axes)), eval_(std::move(eval)) {
    if (n_ < 1) throw std::invalid_argument("immersion dimension must be >= 1");
    if (static_cast<int>(axes_.size()) != n_) throw DimensionMismatch("chart axes do not match dimension");
}

Jet2d ImmersionFamily::jet(const Eigen::VectorXd& u) const {
    if (u.size() != n_) throw DimensionMismatch("chart point has wrong dimension");
    Jet2d j = eval_(u);
    if (j.chart_dim() != n_ || j.ambient_dim() != n_ + 1)
        throw DimensionMismatch("family evaluator returned a jet of the wrong shape");
    return j;
}

namespace {

double axis_sample(const ChartAxis& ax, int k, int per_axis) {
    if (ax.periodic) return ax.lo + (ax.hi - ax.lo) * k / per_axis;
    return ax.lo + (ax.hi - ax.lo) * k / (per_axis - 1);
}

// 53 random mantissa bits; portable across standard libraries.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

std::vector<Eigen::VectorXd> chart_grid(const ImmersionFamily& family, int per_axis, std::size_t max_points,
                                        std::uint64_t seed) {
    if (per_axis < 2) throw std::invalid_argument("grid needs at least 2 samples per axis");
    const int n = family.dim();
    const auto& axes = family.axes();

    double total = 1;
    for (int a = 0; a < n; ++a) total *= per_axis;

    std::vector<Eigen::VectorXd> pts;
    if (total <= static_cast<double>(max_points)) {
        const auto count = static_cast<std::size_t>(total);
        pts.reserve(count);
        std::vector<int> idx(n, 0);
        for (std::size_t p = 0; p < count; ++p) {
            Eigen::VectorXd u(n);
            for (int a = 0; a < n; ++a) u(a) = axis_sample(axes[a], idx[a], per_axis);
            pts.push_back(u);
            for (int a = n - 1; a >= 0; --a) {
                if (++idx[a] < per_axis) break;
                idx[a] = 0;
            }
        }
        return pts;
    }

    std::mt19937_64 rng(seed);
    pts.reserve(max_points);
    for (std::size_t p = 0; p < max_points; ++p) {
        Eigen::VectorXd u(n);
        for (int a = 0; a < n; ++a)
            u(a) = axis_sample(axes[a], static_cast<int>(rng() % static_cast<std::uint64_t>(per_axis)), per_axis);
        pts.push_back(u);
    }
    return pts;
}

std::vector<Eigen::VectorXd> random_chart_points(const ImmersionFamily& family, std::size_t count,
                                                 std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Eigen::VectorXd> pts;
    pts.reserve(count);
    for (std::size_t p = 0; p < count; ++p) {
        Eigen::VectorXd u(family.dim());
        for (int a = 0; a < family.dim(); ++a) {
            const auto& ax = family.axes()[a];
            u(a) = ax.lo + (ax.hi - ax.lo) * unit_uniform(rng);
        }
        pts.push_back(u);
    }
    return pts;
}

}  // namespace csl
