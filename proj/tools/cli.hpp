#pragma once

// Command-line front end: verify, scan and thresholds subcommands.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "csl/zoo.hpp"

namespace csl::cli {

struct RunConfig {
    FamilySpec family;
    int grid = 16;
    std::size_t max_points = 4096;
    double fd_step = 1e-4;
    double tol_ad = 1e-8;
    double tol_fd = 1e-5;
    double eq_tol = 1e-7;
    std::uint64_t seed = 0;
    std::string output_path;  // empty: standard output
    std::string format = "json";
};

/// Throws std::invalid_argument on grid < 2 or nonpositive tolerances.
void check_config(const RunConfig& cfg);

/// Parses "1.5", "-0.25", "sqrt(6)/3", "2*sqrt(0.5)".
double parse_scalar(const std::string& text);

/// Parses "r1=0.6,r2=0.8".
std::map<std::string, double> parse_params(const std::string& text);

/// Fills a missing partner of r1/r2 or r3/r4 with the positive root of
/// r_a² + r_b² = 1.
FamilySpec with_derived_params(FamilySpec spec);

struct SweepSpec {
    std::string name;
    double lo = 0;
    double hi = 0;
    int count = 0;
};
/// Parses "name=lo:hi:count"; throws std::invalid_argument on malformed input or count < 2.
SweepSpec parse_sweep(const std::string& text);

/// Rounds to 9 significant digits so that serialized reports are stable.
double round9(double x);

struct VerifyResult {
    nlohmann::ordered_json report;
    bool passed = false;
    std::vector<std::string> failed_checks;
};

VerifyResult run_verify(const RunConfig& cfg);

/// CSV text of a parameter sweep (header plus one row per value).
std::string run_scan(const RunConfig& cfg, const SweepSpec& sweep);

/// Table of every threshold for (n, |H|²).
std::string run_thresholds(int n, double h2, int codim);

/// Full CLI entry point; returns the process exit status
/// (0 success, 1 check failure, 2 invalid usage or parameters).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace csl::cli
