#include "csl/zoo.hpp"

#include <cmath>
#include <sstream>

#include "csl/errors.hpp"
#include "csl/pinch.hpp"

namespace csl {

namespace {

using J = Jet2Scalard;
using C = std::complex<double>;

constexpr double kParamNormTol = 1e-12;
constexpr double kParamMin = 1e-6;
constexpr double kPolarMargin = 0.1;
constexpr double kMinimalTol = 1e-9;

// Real unit sphere S^m in angular coordinates θ_0..θ_{m-1}:
// P_1(θ) = (cos θ, sin θ), P_m(θ) = (sin θ_0 · P_{m-1}(θ_1, ...), cos θ_0).
std::vector<J> sphere_point(const std::vector<J>& theta, std::size_t first) {
    const std::size_t m = theta.size() - first;
    if (m == 1) return {cos(theta[first]), sin(theta[first])};
    std::vector<J> rest = sphere_point(theta, first + 1);
    const J s = sin(theta[first]);
    std::vector<J> out;
    out.reserve(rest.size() + 1);
    for (const auto& r : rest) out.push_back(s * r);
    out.push_back(cos(theta[first]));
    return out;
}

std::vector<ChartAxis> sphere_axes(int m) {
    std::vector<ChartAxis> axes;
    for (int k = 0; k + 1 < m; ++k) axes.push_back({kPolarMargin, M_PI - kPolarMargin, false});
    axes.push_back({0.0, 2 * M_PI, true});
    return axes;
}

std::vector<J> seeds(const Eigen::VectorXd& u, int first, int count) {
    std::vector<J> v;
    for (int a = first; a < first + count; ++a) v.push_back(jet_var<double>(a, u(a), static_cast<int>(u.size())));
    return v;
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

void require_unit_pair(double a, double b, const char* na, const char* nb) {
    const double defect = a * a + b * b - 1.0;
    if (!(std::abs(defect) <= kParamNormTol))
        throw InvalidParams(std::string("constraint ") + na + "^2 + " + nb + "^2 = 1 violated (" + na + "=" + fmt(a) +
                            ", " + nb + "=" + fmt(b) + ", residual " + fmt(defect) + ")");
}

void require_nonzero(double a, const char* na) {
    if (!(std::abs(a) >= kParamMin))
        throw InvalidParams(std::string("constraint |") + na + "| >= 1e-6 violated (" + na + "=" + fmt(a) + ")");
}

double param(const FamilySpec& spec, const std::string& key) {
    auto it = spec.params.find(key);
    if (it == spec.params.end()) throw InvalidParams("missing parameter " + key + " for " + to_string(spec.kind));
    if (!std::isfinite(it->second)) throw InvalidParams("parameter " + key + " is not finite");
    return it->second;
}

void reject_unknown(const FamilySpec& spec, std::initializer_list<const char*> allowed) {
    for (const auto& [k, v] : spec.params) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || k == a;
        if (!ok) throw InvalidParams("unknown parameter " + k + " for " + to_string(spec.kind));
    }
}

double sign_of(double x) { return x < 0 ? -1.0 : 1.0; }

}  // namespace

std::string to_string(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::totally_geodesic: return "totally_geodesic";
        case FamilyKind::calabi_torus: return "calabi_torus";
        case FamilyKind::calabi_product: return "calabi_product";
        case FamilyKind::clifford_torus: return "clifford_torus";
    }
    return "unknown";
}

FamilyKind parse_family_kind(const std::string& name) {
    std::string s = name;
    for (auto& c : s)
        if (c == '-') c = '_';
    if (s == "totally_geodesic") return FamilyKind::totally_geodesic;
    if (s == "calabi_torus") return FamilyKind::calabi_torus;
    if (s == "calabi_product") return FamilyKind::calabi_product;
    if (s == "clifford_torus") return FamilyKind::clifford_torus;
    throw InvalidParams("unknown family kind '" + name + "'");
}

void validate(const FamilySpec& spec) {
    switch (spec.kind) {
        case FamilyKind::totally_geodesic:
        case FamilyKind::clifford_torus:
            if (spec.n < 1) throw InvalidParams("constraint n >= 1 violated");
            reject_unknown(spec, {});
            return;
        case FamilyKind::calabi_torus: {
            if (spec.n != 2) throw InvalidParams("constraint n = 2 violated for calabi_torus");
            reject_unknown(spec, {"r1", "r2", "r3", "r4"});
            const double r1 = param(spec, "r1"), r2 = param(spec, "r2");
            const double r3 = param(spec, "r3"), r4 = param(spec, "r4");
            require_unit_pair(r1, r2, "r1", "r2");
            require_unit_pair(r3, r4, "r3", "r4");
            require_nonzero(r1, "r1");
            require_nonzero(r2, "r2");
            require_nonzero(r3, "r3");
            require_nonzero(r4, "r4");
            return;
        }
        case FamilyKind::calabi_product: {
            if (spec.n < 2) throw InvalidParams("constraint n >= 2 violated for calabi_product");
            reject_unknown(spec, {"r1", "r2"});
            const double r1 = param(spec, "r1"), r2 = param(spec, "r2");
            require_unit_pair(r1, r2, "r1", "r2");
            require_nonzero(r1, "r1");
            require_nonzero(r2, "r2");
            return;
        }
    }
}

ImmersionFamily totally_geodesic(int n) {
    if (n < 1) throw InvalidParams("constraint n >= 1 violated");
    auto eval = [](const Eigen::VectorXd& u) {
        const auto theta = seeds(u, 0, static_cast<int>(u.size()));
        return Jet2d(sphere_point(theta, 0));
    };
    return ImmersionFamily("totally_geodesic", n, {}, sphere_axes(n), eval);
}

ImmersionFamily calabi_torus(double r1, double r2, double r3, double r4) {
    validate({FamilyKind::calabi_torus, 2, {{"r1", r1}, {"r2", r2}, {"r3", r3}, {"r4", r4}}});
    auto eval = [=](const Eigen::VectorXd& u) {
        const J t = jet_var<double>(0, u(0), 2);
        const J s = jet_var<double>(1, u(1), 2);
        const J phi1 = expi((r2 / r1) * t + (r4 / r3) * s);
        const J phi2 = expi((r2 / r1) * t - (r3 / r4) * s);
        const J phi3 = expi((-r1 / r2) * t);
        return Jet2d({(r1 * r3) * phi1, (r1 * r4) * phi2, r2 * phi3});
    };
    std::vector<ChartAxis> axes{{0.0, 2 * M_PI, true}, {0.0, 2 * M_PI, true}};
    return ImmersionFamily("calabi_torus", 2, {{"r1", r1}, {"r2", r2}, {"r3", r3}, {"r4", r4}}, axes, eval);
}

ImmersionFamily calabi_product(int n, double r1, double r2) {
    validate({FamilyKind::calabi_product, n, {{"r1", r1}, {"r2", r2}}});
    auto eval = [=](const Eigen::VectorXd& u) {
        const J t = jet_var<double>(0, u(0), n);
        const J g1 = r1 * expi((r2 / r1) * t);
        const J g2 = r2 * expi((-r1 / r2) * t);
        const auto base = sphere_point(seeds(u, 1, n - 1), 0);
        std::vector<J> comps;
        comps.reserve(n + 1);
        for (const auto& b : base) comps.push_back(g1 * b);
        comps.push_back(g2);
        return Jet2d(std::move(comps));
    };
    std::vector<ChartAxis> axes{{0.0, 2 * M_PI, true}};
    for (const auto& ax : sphere_axes(n - 1)) axes.push_back(ax);
    return ImmersionFamily("calabi_product", n, {{"r1", r1}, {"r2", r2}}, axes, eval);
}

ImmersionFamily clifford_torus(int n) {
    if (n < 1) throw InvalidParams("constraint n >= 1 violated");
    auto eval = [n](const Eigen::VectorXd& u) {
        const double c = 1.0 / std::sqrt(n + 1.0);
        const auto theta = seeds(u, 0, n);
        std::vector<J> comps;
        J total = jet_const<double>(0.0, n);
        for (const auto& th : theta) {
            comps.push_back(c * expi(th));
            total = total + th;
        }
        comps.push_back(c * expi(-total));
        return Jet2d(std::move(comps));
    };
    return ImmersionFamily("clifford_torus", n, {}, std::vector<ChartAxis>(n, {0.0, 2 * M_PI, true}), eval);
}

ImmersionFamily make_family(const FamilySpec& spec) {
    validate(spec);
    switch (spec.kind) {
        case FamilyKind::totally_geodesic: return totally_geodesic(spec.n);
        case FamilyKind::calabi_torus:
            return calabi_torus(param(spec, "r1"), param(spec, "r2"), param(spec, "r3"), param(spec, "r4"));
        case FamilyKind::calabi_product: return calabi_product(spec.n, param(spec, "r1"), param(spec, "r2"));
        case FamilyKind::clifford_torus: return clifford_torus(spec.n);
    }
    throw InvalidParams("unknown family kind");
}

OracleData oracle(const FamilySpec& spec) {
    validate(spec);
    const int n = spec.n;
    OracleData o;
    switch (spec.kind) {
        case FamilyKind::totally_geodesic:
            o.sigma_expected = SymTensor3d(n);
            o.H_frame = Eigen::VectorXd::Zero(n);
            o.minimal = true;
            o.equality_basic = false;
            break;
        case FamilyKind::calabi_torus: {
            const double r1 = param(spec, "r1"), r2 = param(spec, "r2");
            const double r3 = param(spec, "r3"), r4 = param(spec, "r4");
            // Appendix frame E_2 = (1/r1)∂_s F; the Gram–Schmidt frame uses 1/|r1|.
            const double flip = sign_of(r1);
            const double a = r2 / r1 - r1 / r2;
            const double b = r2 / r1;
            const double c = (r4 / r3 - r3 / r4) / r1;
            SymTensor3d s(2);
            s.at(0, 0, 0) = a;
            s.at(0, 1, 1) = b;
            s.at(1, 1, 1) = flip * c;
            o.sigma_expected = s;
            o.H_frame = Eigen::Vector2d(2 * r2 / r1 - r1 / r2, flip * c);
            o.normB2 = a * a + 3 * b * b + c * c;
            o.normH2 = o.H_frame.squaredNorm();
            o.minimal = std::abs(2 * r2 / r1 - r1 / r2) < kMinimalTol && std::abs(r4 / r3 - r3 / r4) < kMinimalTol;
            // κ = 0 makes |B|² = 2 + |H|², the n = 2 basic threshold.
            o.equality_basic = true;
            break;
        }
        case FamilyKind::calabi_product: {
            const double r1 = param(spec, "r1"), r2 = param(spec, "r2");
            const double l1 = r2 / r1 - r1 / r2;
            const double l2 = r2 / r1;
            SymTensor3d s(n);
            s.at(0, 0, 0) = l1;
            for (int j = 1; j < n; ++j) s.at(0, j, j) = l2;
            o.sigma_expected = s;
            o.H_frame = Eigen::VectorXd::Zero(n);
            o.H_frame(0) = n * r2 / r1 - r1 / r2;
            o.normB2 = l1 * l1 + 3.0 * (n - 1) * l2 * l2;
            o.normH2 = o.H_frame(0) * o.H_frame(0);
            const double r_star = std::sqrt(n / (n + 1.0));
            o.minimal = std::abs(std::abs(r1) - r_star) < kMinimalTol;
            o.equality_basic = std::abs(r1) <= r_star + kParamNormTol;
            break;
        }
        case FamilyKind::clifford_torus:
            if (n >= 3) throw NoOracle("no closed form for clifford_torus with n >= 3");
            o.H_frame = Eigen::VectorXd::Zero(n);
            o.minimal = true;
            if (n == 1) {
                o.sigma_expected = SymTensor3d(1);  // a great circle
            } else {
                o.normB2 = 2.0;
                o.equality_basic = true;
            }
            break;
    }
    return o;
}

}  // namespace csl
