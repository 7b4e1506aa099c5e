#include "csl/pinch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace csl {

namespace {

void require_dim(int n, int min_n, const char* what) {
    if (n < min_n)
        throw WrongDimension(std::string(what) + " needs n >= " + std::to_string(min_n) + ", got n = " +
                             std::to_string(n));
}

}  // namespace

double threshold_basic(int n, double h2) {
    require_dim(n, 2, "threshold_basic");
    const double nn = n;
    return (nn - 1) * (nn + 2) / nn + (nn * nn + 3 * nn - 2) / (2 * nn * nn) * h2 -
           (nn - 1) * (nn - 2) * std::sqrt(h2) * std::sqrt(4 * nn + h2) / (2 * nn * nn);
}

double threshold_eps(int n, double h2, double eps) {
    require_dim(n, 2, "threshold_eps");
    if (!(eps > 0)) throw NonpositiveEpsilon("threshold_eps needs eps > 0");
    const double nn = n;
    return (nn - 1) * (nn + 2) / nn - (nn - 1) * (nn - 2) * eps / nn +
           ((nn * nn + 3 * nn - 2) / (2 * nn * nn) - (nn - 1) * (nn - 2) * (eps + 1 / eps) / (4 * nn * nn)) * h2;
}

// 4(n-1)/n + (3n-2)/n²·h2, evaluated as the eps = 1 member of the relaxed family
// so that the two agree exactly.
double threshold_main(int n, double h2) {
    require_dim(n, 3, "threshold_main");
    return threshold_eps(n, h2, 1.0);
}

double threshold_main1(int n, double h2) {
    require_dim(n, 3, "threshold_main1");
    const double nn = n;
    return 2 * (nn + 1) / 3 - (nn - 17) / (3 * (nn + 3)) * h2;
}

double threshold_main3(int n) {
    require_dim(n, 3, "threshold_main3");
    const double nn = n;
    if (n <= 16) return 2 * (nn + 1) / 3;
    return 2 * (std::sqrt(3 * nn - 2) - 1);
}

double threshold_tg(int n, double h2) {
    require_dim(n, 3, "threshold_tg");
    return 2 + 3.0 / (n + 1) * h2;
}

double optimal_eps(int n, double h2) { return std::sqrt(h2 / (4.0 * n + h2)); }

ReferenceConstants reference_constants(int n, int p) {
    require_dim(n, 2, "reference_constants");
    if (p < 1) throw std::invalid_argument("codimension must be >= 1");
    return {n / (2.0 - 1.0 / p), 2.0 * n / 3.0};
}

const ThresholdEntry& GapReport::entry(const std::string& name) const {
    for (const auto& e : entries)
        if (e.name == name) return e;
    throw std::out_of_range("no threshold entry named " + name);
}

std::vector<std::string> threshold_names(int n) {
    if (n < 2) return {};
    if (n == 2) return {"basic"};
    return {"basic", "main", "main1", "main3", "tg"};
}

double threshold_by_name(const std::string& name, int n, double h2) {
    if (name == "basic") return threshold_basic(n, h2);
    if (name == "main") return threshold_main(n, h2);
    if (name == "main1") return threshold_main1(n, h2);
    if (name == "main3") return threshold_main3(n);
    if (name == "tg") return threshold_tg(n, h2);
    throw std::invalid_argument("unknown threshold " + name);
}

GapReport classify(const std::vector<FundamentalData>& samples, int n, double eq_tol) {
    if (samples.empty()) throw EmptySampleSet("classify needs at least one sample");
    if (!(eq_tol > 0)) throw std::invalid_argument("eq_tol must be positive");
    require_dim(n, 2, "classify");

    GapReport rep;
    rep.n = n;
    rep.samples = samples.size();
    rep.inf_H2 = std::numeric_limits<double>::infinity();
    const auto names = threshold_names(n);
    for (const auto& name : names) rep.entries.push_back({name, std::numeric_limits<double>::infinity(), false});

    for (const auto& s : samples) {
        if (s.n != n) throw DimensionMismatch("sample dimension differs from classify dimension");
        rep.sup_B2 = std::max(rep.sup_B2, s.normB2);
        rep.sup_H2 = std::max(rep.sup_H2, s.normH2);
        rep.inf_H2 = std::min(rep.inf_H2, s.normH2);
        for (auto& e : rep.entries) {
            const double margin = threshold_by_name(e.name, n, s.normH2) - s.normB2;
            e.pointwise_margin_min = std::min(e.pointwise_margin_min, margin);
            if (e.name == "basic" && std::abs(margin) < eq_tol) ++rep.equality_points;
        }
    }
    for (auto& e : rep.entries) e.hypothesis_holds = e.pointwise_margin_min >= -eq_tol;
    return rep;
}

}  // namespace csl
