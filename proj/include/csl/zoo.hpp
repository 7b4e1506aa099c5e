#pragma once

// Built-in Legendrian immersion families with closed-form invariants.

#include <map>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "csl/family.hpp"
#include "csl/tensor.hpp"

namespace csl {

enum class FamilyKind { totally_geodesic, calabi_torus, calabi_product, clifford_torus };

std::string to_string(FamilyKind kind);
/// Accepts both "calabi_torus" and "calabi-torus" spellings.
FamilyKind parse_family_kind(const std::string& name);

struct FamilySpec {
    FamilyKind kind = FamilyKind::totally_geodesic;
    int n = 2;
    std::map<std::string, double> params;
};

/// Throws InvalidParams naming the violated constraint.
void validate(const FamilySpec& spec);

ImmersionFamily totally_geodesic(int n);
ImmersionFamily calabi_torus(double r1, double r2, double r3, double r4);
ImmersionFamily calabi_product(int n, double r1, double r2);
ImmersionFamily clifford_torus(int n);
ImmersionFamily make_family(const FamilySpec& spec);

/// Closed-form invariants, σ expressed in the Gram–Schmidt frame of the
/// chart (which is the appendix frame up to the sign of r1 on base directions).
struct OracleData {
    std::optional<SymTensor3d> sigma_expected;
    Eigen::VectorXd H_frame;
    double normB2 = 0;
    double normH2 = 0;
    bool minimal = false;
    bool equality_basic = false;
};

OracleData oracle(const FamilySpec& spec);

}  // namespace csl
