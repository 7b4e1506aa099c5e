#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "csl/errors.hpp"
#include "csl/geom.hpp"
#include "csl/zoo.hpp"
#include "support.hpp"

using namespace csl;
using namespace csl::testing;

namespace {

FundamentalData fund_at(const ImmersionFamily& fam, const Eigen::VectorXd& u) {
    const Jet2d jet = fam.jet(u);
    return fundamental_forms(jet, build_frame(jet));
}

}  // namespace

TEST_CASE("induced metrics of the zoo charts", "[geom]") {
    const auto torus = calabi_torus(0.6, 0.8, 0.6, 0.8);
    for (const auto& u : random_chart_points(torus, 50, 4)) {
        const Eigen::MatrixXd g = induced_metric(torus.jet(u));
        CHECK((g - Eigen::Vector2d(1, 0.36).asDiagonal().toDenseMatrix()).cwiseAbs().maxCoeff() < 1e-14);
    }

    const auto s2 = totally_geodesic(2);
    for (const auto& u : random_chart_points(s2, 50, 5)) {
        const Eigen::MatrixXd g = induced_metric(s2.jet(u));
        const double sn = std::sin(u(0));
        CHECK(std::abs(g(0, 0) - 1) < 1e-14);
        CHECK(std::abs(g(1, 1) - sn * sn) < 1e-14);
        CHECK(std::abs(g(0, 1)) < 1e-14);
    }

    const auto prod = calabi_product(3, 0.8, 0.6);
    for (const auto& u : random_chart_points(prod, 50, 6)) {
        const Eigen::MatrixXd g = induced_metric(prod.jet(u));
        const double sn = std::sin(u(1));
        Eigen::Matrix3d expected = Eigen::Matrix3d::Zero();
        expected(0, 0) = 1;
        expected(1, 1) = 0.64;
        expected(2, 2) = 0.64 * sn * sn;
        CHECK((g - expected).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("Gram-Schmidt frames", "[geom]") {
    const auto torus = calabi_torus(0.6, 0.8, 0.6, 0.8);
    const Jet2d jet = torus.jet(Eigen::Vector2d(0.4, 1.3));
    const FrameData fr = build_frame(jet);
    CHECK((fr.tangents.col(0) - jet.partial(0)).norm() < 1e-15);
    CHECK((fr.tangents.col(1) - jet.partial(1) / 0.6).norm() < 1e-14);

    const auto s3 = totally_geodesic(3);
    const double th = 1.1, ph = 0.9;
    const FrameData f3 = build_frame(s3.jet(Eigen::Vector3d(M_PI / 2, th, ph)));
    Eigen::Matrix3d expected = Eigen::Matrix3d::Zero();
    expected(0, 0) = 1;
    expected(1, 1) = 1.0;
    expected(2, 2) = 1.0 / std::sin(th);
    CHECK((f3.frame_coeffs - expected).cwiseAbs().maxCoeff() < 1e-13);

    const FrameResiduals r = frame_residuals(f3);
    CHECK(r.orthonormality < 1e-14);
    CHECK(r.normal_tangent < 1e-14);
    CHECK(r.normal_position < 1e-14);
}

TEST_CASE("chart poles are rejected", "[geom][errors]") {
    const auto s2 = totally_geodesic(2);
    CHECK_THROWS_AS(build_frame(s2.jet(Eigen::Vector2d(0.0, 0.3))), DegenerateMetric);
    CHECK_THROWS_AS(build_frame(s2.jet(Eigen::Vector2d(M_PI, 0.3))), DegenerateMetric);
    // far from the pole the chart is fine even in high dimension
    const auto prod = calabi_product(8, 0.3, std::sqrt(0.91));
    Eigen::VectorXd u = Eigen::VectorXd::Constant(8, 0.1);
    CHECK_NOTHROW(build_frame(prod.jet(u)));
}

TEST_CASE("second fundamental form of the Calabi torus", "[geom]") {
    const auto torus = calabi_torus(0.6, 0.8, 0.6, 0.8);
    // closed forms r2/r1 - r1/r2, r2/r1, (r4/r3 - r3/r4)/r1
    const double s111 = 0.8 / 0.6 - 0.6 / 0.8;
    const double s122 = 0.8 / 0.6;
    const double s222 = (0.8 / 0.6 - 0.6 / 0.8) / 0.6;
    for (const auto& u : random_chart_points(torus, 40, 8)) {
        const FundamentalData f = fund_at(torus, u);
        CHECK(std::abs(f.sigma(0, 0, 0) - s111) < 1e-10);
        CHECK(std::abs(f.sigma(0, 1, 1) - s122) < 1e-10);
        CHECK(std::abs(f.sigma(0, 0, 1)) < 1e-10);
        CHECK(std::abs(f.sigma(1, 1, 1) - s222) < 1e-10);
        CHECK(std::abs(*f.gauss_curv) < 1e-10);
        CHECK(std::abs(gauss_curvature(f)) < 1e-10);
    }
    CHECK(s111 == Catch::Approx(0.583333333).epsilon(1e-8));
    CHECK(s222 == Catch::Approx(0.972222222).epsilon(1e-8));
}

TEST_CASE("Calabi product invariants", "[geom]") {
    const auto prod = calabi_product(3, 0.8, 0.6);
    for (const auto& u : random_chart_points(prod, 40, 9)) {
        const FundamentalData f = fund_at(prod, u);
        CHECK(std::abs(f.normB2 - 3.715278) < 1e-6);
        CHECK(std::abs(f.normH2 - 0.840278) < 1e-6);
        CHECK(std::abs(ric_jh(f)) < 1e-8);
    }
}

TEST_CASE("totally geodesic spheres", "[geom]") {
    for (int n = 1; n <= 5; ++n) {
        const auto tg = totally_geodesic(n);
        for (const auto& u : random_chart_points(tg, 20, 10 + n)) {
            const FundamentalData f = fund_at(tg, u);
            CHECK(f.normB2 < 1e-20);
            CHECK((f.ricci - (n - 1) * Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12);
            CHECK(std::abs(ric_jh(f)) < 1e-20);
            if (n == 2) CHECK(std::abs(gauss_curvature(f) - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("Gauss curvature of the flat minimal torus", "[geom]") {
    const auto torus = calabi_torus(std::sqrt(6.0) / 3, std::sqrt(3.0) / 3, std::sqrt(0.5), std::sqrt(0.5));
    const FundamentalData f = fund_at(torus, Eigen::Vector2d(0.2, 2.0));
    CHECK(std::abs(f.normB2 - 2.0) < 1e-10);
    CHECK(f.normH2 < 1e-12);
    CHECK(std::abs(gauss_curvature(f)) < 1e-10);

    const FundamentalData f3 = fund_at(calabi_product(3, 0.8, 0.6), Eigen::Vector3d(0.1, 1.0, 2.0));
    CHECK_THROWS_AS(gauss_curvature(f3), WrongDimension);
}

TEST_CASE("Ric(JH, JH) on the Calabi torus", "[geom]") {
    const auto torus = calabi_torus(0.6, 0.8, 0.6, 0.8);
    for (const auto& u : random_chart_points(torus, 20, 13)) {
        const FundamentalData f = fund_at(torus, u);
        CHECK(std::abs(ric_jh(f)) < 1e-8);
        // on a surface Ric = K·Id
        CHECK((f.ricci - *f.gauss_curv * Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("frame invariants on every zoo family", "[geom][property]") {
    std::vector<FamilySpec> specs{
        {FamilyKind::totally_geodesic, 3, {}},
        {FamilyKind::calabi_torus, 2, {{"r1", -0.6}, {"r2", 0.8}, {"r3", 0.3}, {"r4", -std::sqrt(0.91)}}},
        {FamilyKind::calabi_product, 4, {{"r1", 0.5}, {"r2", std::sqrt(0.75)}}},
        {FamilyKind::clifford_torus, 3, {}},
    };
    for (const auto& spec : specs) {
        const auto fam = make_family(spec);
        const int n = spec.n;
        for (const auto& u : chart_grid(fam, 5)) {
            const Jet2d jet = fam.jet(u);
            const FrameData fr = build_frame(jet);
            const FrameResiduals r = frame_residuals(fr);
            CHECK(r.orthonormality < 1e-10);
            CHECK(r.normal_tangent < 1e-10);
            CHECK(r.normal_position < 1e-10);
            CHECK(reeb_component_residual(jet, fr) < 1e-10);
            const FundamentalData f = fundamental_forms(jet, fr);
            CHECK(max_asymmetry(f.sigma_raw) < 1e-10 * std::max(1.0, f.normB2));
            CHECK(std::abs(f.normB2 - squared_norm(f.sigma0) - 3.0 / (n + 2) * f.normH2) <
                  1e-10 * std::max(1.0, f.normB2));
            CHECK((f.ricci - f.ricci.transpose()).cwiseAbs().maxCoeff() < 1e-10);
            // the mean curvature vector is normal
            const AmbientVector h = mean_curvature_vector(f, fr);
            for (int i = 0; i < n; ++i) CHECK(std::abs(real_inner(h, fr.tangents.col(i))) < 1e-10);
        }
    }
}

TEST_CASE("Ricci tensor from the Gauss equation", "[geom][property]") {
    std::mt19937_64 rng(14);
    for (int n = 2; n <= 5; ++n)
        for (int trial = 0; trial < 20; ++trial) {
            const SymTensor3d s = random_sym(n, rng);
            const FundamentalData f = fundamental_data_from_sigma(s);
            // scalar curvature n(n-1) + |H|² - |B|²
            CHECK(std::abs(f.ricci.trace() - (n * (n - 1) + f.normH2 - f.normB2)) < 1e-10);
            // frame change acts by conjugation
            const Eigen::MatrixXd q = random_rotation(n, rng);
            const FundamentalData g = fundamental_data_from_sigma(rotated(s, q));
            CHECK((g.ricci - q.transpose() * f.ricci * q).cwiseAbs().maxCoeff() < 1e-10);
            CHECK(std::abs(ric_jh(g) - ric_jh(f)) < 1e-9 * std::max(1.0, std::abs(ric_jh(f))));
        }
}
