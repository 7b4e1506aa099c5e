#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "csl/adnum.hpp"

namespace csl {

/// Sampling range of one chart coordinate.
struct ChartAxis {
    double lo = 0;
    double hi = 1;
    bool periodic = false;  // periodic axes sample [lo, hi), others [lo, hi]
};

/// A named parametrized map from an n-dimensional chart into C^{n+1} that
/// evaluates exact 2-jets. Immutable; copies share nothing mutable.
class ImmersionFamily {
public:
    using Evaluator = std::function<Jet2d(const Eigen::VectorXd&)>;

    ImmersionFamily(std::string name, int n, std::map<std::string, double> params,
                    std::vector<ChartAxis> axes, Evaluator eval);

    const std::string& name() const { return name_; }
    int dim() const { return n_; }
    int ambient_dim() const { return n_ + 1; }
    const std::map<std::string, double>& params() const { return params_; }
    const std::vector<ChartAxis>& axes() const { return axes_; }

    Jet2d jet(const Eigen::VectorXd& u) const;

private:
    std::string name_;
    int n_;
    std::map<std::string, double> params_;
    std::vector<ChartAxis> axes_;
    Evaluator eval_;
};

/// Chart sample points: the full `per_axis`^n lattice when it has at most
/// `max_points` points, otherwise `max_points` lattice points drawn with a
/// seeded generator. Order is deterministic.
std::vector<Eigen::VectorXd> chart_grid(const ImmersionFamily& family, int per_axis,
                                        std::size_t max_points = 4096, std::uint64_t seed = 0);

/// Uniformly random chart points inside the sampling box.
std::vector<Eigen::VectorXd> random_chart_points(const ImmersionFamily& family, std::size_t count,
                                                 std::uint64_t seed);

}  // namespace csl
