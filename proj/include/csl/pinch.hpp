#pragma once

// Pinching thresholds for |B|² in terms of n and |H|², and a pointwise
// classifier of sampled immersions against them.

#include <string>
#include <vector>

#include "csl/geom.hpp"

namespace csl {

inline constexpr double kEqualityTol = 1e-7;

/// (n-1)(n+2)/n + (n²+3n-2)/(2n²)·h2 - (n-1)(n-2)·|H|·sqrt(4n+h2)/(2n²).
double threshold_basic(int n, double h2);

/// Young-relaxed version of threshold_basic, one member per eps > 0.
double threshold_eps(int n, double h2, double eps);

/// 4(n-1)/n + (3n-2)/n²·h2.
double threshold_main(int n, double h2);

/// 2(n+1)/3 - (n-17)/(3(n+3))·h2.
double threshold_main1(int n, double h2);

/// 2(n+1)/3 for n ≤ 16, 2(sqrt(3n-2) - 1) for n ≥ 17.
double threshold_main3(int n);

/// 2 + 3/(n+1)·h2.
double threshold_tg(int n, double h2);

/// Young-optimal eps* = sqrt(h2/(4n+h2)), at which threshold_eps meets threshold_basic.
double optimal_eps(int n, double h2);

struct ReferenceConstants {
    double simons = 0;  // n/(2 - 1/p)
    double lili = 0;    // 2n/3
};
ReferenceConstants reference_constants(int n, int p);

struct ThresholdEntry {
    std::string name;
    double pointwise_margin_min = 0;  // min over samples of threshold - |B|²
    bool hypothesis_holds = false;
};

struct GapReport {
    int n = 0;
    std::size_t samples = 0;
    double sup_B2 = 0;
    double inf_H2 = 0;
    double sup_H2 = 0;
    std::vector<ThresholdEntry> entries;
    std::size_t equality_points = 0;

    const ThresholdEntry& entry(const std::string& name) const;
};

/// Thresholds that apply in dimension n, in report order.
std::vector<std::string> threshold_names(int n);

/// Threshold value by name ("basic", "main", "main1", "main3", "tg").
double threshold_by_name(const std::string& name, int n, double h2);

GapReport classify(const std::vector<FundamentalData>& samples, int n, double eq_tol = kEqualityTol);

}  // namespace csl
