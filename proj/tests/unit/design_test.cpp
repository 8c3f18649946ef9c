#include <gtest/gtest.h>

#include <cmath>

#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "thedra/builders.hpp"
#include "thedra/design.hpp"
#include "thedra/error.hpp"

using namespace thedra;
using thedra::testing::Rng;

namespace {

DesignData simple_design() {
    // eta_1 = theta_1 = pi/6, F = (0, 1, 2), profile bent at j = 1.
    DesignData d;
    d.phi = {kPi / 3};
    d.psi = {kPi / 6};
    d.f0 = {1.0, 1.0};
    d.g0 = {3.0};
    d.z = {0.0, 1.0, 1.5};
    return d;
}

template <typename F>
Error capture(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e;
    }
    ADD_FAILURE() << "expected thedra::Error";
    return Error(ErrorCode::InvalidArgument, "none");
}

}  // namespace

TEST(ValidateDesign, AcceptsSimpleDesign) { EXPECT_NO_THROW(validate_design(simple_design())); }

TEST(ValidateDesign, RejectsEtaAtRightAngle) {
    DesignData d = simple_design();
    d.psi[0] = kPi / 2;
    const Error e = capture([&] { validate_design(d); });
    EXPECT_EQ(e.code(), ErrorCode::AngleOutOfRange);
    EXPECT_EQ(e.field(), "psi[0]");
}

TEST(ValidateDesign, RejectsThetaAtRightAngle) {
    DesignData d = simple_design();
    d.phi[0] = d.psi[0] - kPi / 2;
    const Error e = capture([&] { validate_design(d); });
    EXPECT_EQ(e.code(), ErrorCode::AngleOutOfRange);
    EXPECT_EQ(e.field(), "phi[0]");
}

TEST(ValidateDesign, RejectsRepeatedHeight) {
    DesignData d = simple_design();
    d.z = {0.0, 1.0, 1.0};
    const Error e = capture([&] { validate_design(d); });
    EXPECT_EQ(e.code(), ErrorCode::DegenerateHeights);
    EXPECT_EQ(e.field(), "z[2]");
}

TEST(ValidateDesign, RejectsZeroG) {
    DesignData d = simple_design();
    d.g0[0] = 0.0;
    EXPECT_EQ(capture([&] { validate_design(d); }).code(), ErrorCode::ZeroLength);
}

TEST(ValidateDesign, RejectsShapeAndNonzeroBaseHeight) {
    DesignData d = simple_design();
    d.z.pop_back();
    EXPECT_EQ(capture([&] { validate_design(d); }).field(), "z");
    d = simple_design();
    d.z[0] = 0.5;
    EXPECT_EQ(capture([&] { validate_design(d); }).field(), "z[0]");
    d = simple_design();
    d.f0[1] = std::nan("");
    EXPECT_EQ(capture([&] { validate_design(d); }).field(), "f0[1]");
}

TEST(Derive, CumulativeFactors) {
    DesignData d;
    d.phi = {0.5, 0.2};
    d.psi = {0.3, 0.4};
    d.f0 = {1.0, 2.0};
    d.g0 = {1.0, 1.0};
    d.z = {0.0, 1.0, 3.0};
    const DerivedQuantities q = derive(d);
    EXPECT_DOUBLE_EQ(q.eta[0], 0.3);
    EXPECT_DOUBLE_EQ(q.theta[0], 0.2);
    EXPECT_NEAR(q.eta[1], -0.1, 1e-15);
    EXPECT_NEAR(q.theta[1], -0.2, 1e-15);
    EXPECT_NEAR(q.C[1], std::cos(0.3) / std::cos(0.2), 1e-15);
    EXPECT_NEAR(q.C[2], std::cos(0.3) / std::cos(0.2) * std::cos(0.1) / std::cos(0.2), 1e-15);
    EXPECT_EQ(q.F, (std::vector<double>{0.0, 1.0, 3.0}));
}

TEST(BuildTNet, MatchesWalkedConstruction) {
    Rng rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const DesignData d = thedra::testing::random_design(rng);
        const TNet net = build_tnet(d);
        const Grid<Vec2> walked = thedra::testing::walk_tnet(d);
        const double scale = bbox_diagonal(walked);
        for (std::size_t i = 0; i <= d.m(); ++i)
            for (std::size_t j = 0; j <= d.n(); ++j)
                ASSERT_LE((net.points(i, j) - walked(i, j)).norm(), 1e-12 * scale) << "trial " << trial;
    }
}

TEST(BuildTNet, SignedLengthsFollowClosedForm) {
    Rng rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const DesignData d = thedra::testing::random_design(rng);
        const DerivedQuantities q = derive(d);
        const SignedLengths s = recover_signed_lengths(build_tnet(d));
        for (std::size_t i = 0; i <= d.m(); ++i) {
            for (std::size_t j = 1; j <= d.n(); ++j) EXPECT_NEAR(s.f(i, j), q.C[i] * d.f0[j - 1], 1e-12);
        }
        for (std::size_t i = 1; i <= d.m(); ++i) {
            for (std::size_t j = 0; j <= d.n(); ++j) {
                const double expected =
                    d.g0[i - 1] + q.F[j] * (q.C[i] * std::sin(q.theta[i - 1]) + q.C[i - 1] * std::sin(q.eta[i - 1]));
                EXPECT_NEAR(s.g(i, j), expected, 1e-11);
            }
        }
    }
}

TEST(BuildTNet, RejectsSignChange) {
    DesignData d = simple_design();
    // g_1j = g_10 + F_j (sin(pi/6) + sin(pi/6)) = g_10 + F_j vanishes at F = 1.
    d.g0 = {-1.0};
    EXPECT_EQ(capture([&] { build_tnet(d); }).code(), ErrorCode::SignConsistency);
}

TEST(BuildTNet, RejectsCollinearProfile) {
    DesignData d = simple_design();
    d.z = {0.0, 1.0, 2.0};
    EXPECT_EQ(capture([&] { build_tnet(d); }).code(), ErrorCode::CollinearPolygon);
}

TEST(BuildTNet, SingleStepProfileIsAllowed) {
    DesignData d = simple_design();
    d.f0 = {1.0};
    d.z = {0.0, 1.0};
    EXPECT_NO_THROW(build_tnet(d));
}

TEST(GroundView, RecoversDesignAfterRigidMotion) {
    Rng rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        const DesignData d = thedra::testing::random_design(rng);
        THedron s = build_thedron(d);
        const double angle = rng.uniform(-3.0, 3.0);
        const Eigen::Matrix3d R = Eigen::AngleAxisd(angle, Vec3::UnitZ()).toRotationMatrix();
        const Vec3 shift(rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5));
        for (auto& p : s.points) p = R * p + shift;
        const DesignData r = recover_design(s);
        // recover_design orients L_0 to a nonnegative x component, which
        // may reverse it relative to the original frame; compare surfaces.
        const THedron rebuilt = build_thedron(r);
        const THedron original = build_thedron(d);
        const auto lengths_a = recover_signed_lengths(build_tnet(d));
        const auto lengths_b = recover_signed_lengths(build_tnet(r));
        double worst = 0.0;
        for (std::size_t i = 0; i <= d.m(); ++i)
            for (std::size_t j = 0; j <= d.n(); ++j) {
                worst = std::max(worst, std::abs(std::abs(lengths_a.f(i, j)) - std::abs(lengths_b.f(i, j))));
                worst = std::max(worst, std::abs(std::abs(lengths_a.g(i, j)) - std::abs(lengths_b.g(i, j))));
            }
        EXPECT_LE(worst, 1e-10) << "trial " << trial;
        EXPECT_EQ(rebuilt.m(), original.m());
        for (std::size_t j = 0; j <= d.n(); ++j) EXPECT_NEAR(r.z[j], d.z[j], 1e-12);
    }
}

TEST(GroundView, RecoversNormalFormExactly) {
    Rng rng(14);
    for (int trial = 0; trial < 20; ++trial) {
        const DesignData d = thedra::testing::random_design(rng);
        // Force the orientation recover_design picks: F_far > 0 along +x.
        const DesignData r = recover_design(build_thedron(d));
        const DerivedQuantities q = derive(d);
        const bool reversed = *std::max_element(q.F.begin(), q.F.end(), [](double a, double b) {
                                  return std::abs(a) < std::abs(b);
                              }) < 0;
        if (reversed) continue;
        for (std::size_t i = 0; i < d.m(); ++i) {
            EXPECT_NEAR(r.phi[i], d.phi[i], 1e-11);
            EXPECT_NEAR(r.psi[i], d.psi[i], 1e-11);
            EXPECT_NEAR(r.g0[i], d.g0[i], 1e-11);
        }
        for (std::size_t j = 0; j < d.n(); ++j) EXPECT_NEAR(r.f0[j], d.f0[j], 1e-12);
    }
}

TEST(GroundView, RejectsTiltedRows) {
    THedron s = build_thedron(simple_design());
    s.points(1, 1).z() += 0.1;
    EXPECT_EQ(capture([&] { ground_view(s); }).code(), ErrorCode::NonHorizontalRows);
}

TEST(PolygonCollinear, FewerThanThreePointsNeverCollinear) {
    const std::vector<double> s{0.0, 1.0}, z{0.0, 1.0};
    EXPECT_FALSE(polygon_is_collinear(s, z));
    const std::vector<double> s3{0.0, 1.0, 2.0}, z3{0.0, 1.0, 2.0};
    EXPECT_TRUE(polygon_is_collinear(s3, z3));
}
