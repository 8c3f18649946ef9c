#include <gtest/gtest.h>

#include <cmath>

#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "thedra/builders.hpp"
#include "thedra/error.hpp"
#include "thedra/kinematics.hpp"
#include "thedra/metrology.hpp"

using namespace thedra;
using thedra::testing::Rng;

namespace {

// m = 1, eta = theta = pi/6, F = (1, 2) measured from the axis, z = (0, 1).
RevolutionData unit_revolution() { return {{kPi / 3}, {1.0, 2.0}, {0.0, 1.0}}; }

DesignData unit_revolution_design() { return revolution_to_axial(unit_revolution()).design; }

bool deform_succeeds(const DesignData& d, double t) {
    try {
        deform(d, t);
        return true;
    } catch (const Error&) {
        return false;
    }
}

double bisect_boundary(const DesignData& d, double inside, double outside) {
    for (int k = 0; k < 200; ++k) {
        const double mid = 0.5 * (inside + outside);
        (deform_succeeds(d, mid) ? inside : outside) = mid;
    }
    return inside;
}

}  // namespace

TEST(ParameterRange, RevolutionExample) {
    const DesignData d = unit_revolution_design();
    const ParameterRange r = parameter_range(d);
    EXPECT_NEAR(r.t_min, -0.75, 1e-15);
    EXPECT_NEAR(r.t_max, 1.0, 1e-15);
    EXPECT_EQ(r.lower_reason, BlockingReason::ProfileFlattening);
    EXPECT_EQ(r.upper_reason, BlockingReason::TrajectoryFlattening);
    EXPECT_EQ(r.upper_index, 1u);
    EXPECT_NEAR(bisect_boundary(d, 0.0, -10.0), -0.75, 1e-11);
    EXPECT_NEAR(bisect_boundary(d, 0.0, 10.0), 1.0, 1e-11);
}

TEST(ParameterRange, VerticalProfileIsUnbounded) {
    DesignData d;
    d.phi = {0.4};
    d.psi = {0.1};
    d.f0 = {0.0};
    d.g0 = {1.0};
    d.z = {0.0, 1.0};
    const ParameterRange r = parameter_range(d);
    EXPECT_EQ(r.upper_reason, BlockingReason::Unbounded);
    EXPECT_TRUE(std::isinf(r.t_max));
    EXPECT_NO_THROW(deform(d, 1e6));
}

TEST(ParameterRange, RadicandsPositiveInsideAndVanishAtEnds) {
    Rng rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        const DesignData d = thedra::testing::random_design(rng);
        const DerivedQuantities q = derive(d);
        const ParameterRange r = parameter_range(d);
        ASSERT_LT(r.t_min, 0.0);
        ASSERT_GT(r.t_max, 0.0);
        auto min_radicand = [&](double t) {
            double lowest = INFINITY;
            for (std::size_t i = 1; i <= d.m(); ++i) {
                lowest = std::min(lowest, std::pow(q.C[i - 1] * std::cos(q.eta[i - 1]), 2) + t);
                lowest = std::min(lowest, std::pow(q.C[i] * std::cos(q.theta[i - 1]), 2) + t);
            }
            for (std::size_t j = 1; j <= d.n(); ++j)
                lowest = std::min(lowest, std::pow(d.z[j] - d.z[j - 1], 2) - t * d.f0[j - 1] * d.f0[j - 1]);
            return lowest;
        };
        for (double s : {0.01, 0.3, 0.7, 0.99}) {
            EXPECT_GT(min_radicand(r.t_min * s), 0.0);
            EXPECT_GT(min_radicand(r.t_max * s), 0.0);
        }
        EXPECT_NEAR(min_radicand(r.t_min), 0.0, 1e-12);
        EXPECT_NEAR(min_radicand(r.t_max), 0.0, 1e-12 * std::max(1.0, r.t_max));
    }
}

TEST(Deform, RevolutionExampleAtThreeQuarters) {
    const DesignData d = unit_revolution_design();
    const DeformationState s = deformation_state(d, 0.75);
    EXPECT_NEAR(s.z_t[1], 0.5, 1e-15);
    EXPECT_NEAR(std::sin(s.eta_t[0]), 0.5 / std::sqrt(1.75), 1e-15);
    EXPECT_NEAR(s.Ct[1] * s.Ct[1], 1.75, 1e-15);
    const THedron r = deform_revolution(unit_revolution(), 0.75);
    for (std::size_t i = 0; i <= 1; ++i)
        for (std::size_t j = 0; j <= 1; ++j) EXPECT_NEAR(r(i, j).head<2>().norm(), std::sqrt(1.75) * (j + 1.0), 1e-14);
    EXPECT_TRUE(check_isometric(build_revolution(unit_revolution()), r, 1e-13).pass);
}

TEST(Deform, IdentityAtZero) {
    Rng rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        const DesignData d = thedra::testing::random_design(rng);
        const THedron a = deform(d, 0.0);
        const THedron b = build_thedron(d);
        EXPECT_LE(thedra::testing::max_distance(a.points, b.points), 1e-12 * bbox_diagonal(b.points));
    }
}

TEST(Deform, FacesStayCongruent) {
    Rng rng(43);
    for (int trial = 0; trial < 20; ++trial) {
        const DesignData d = thedra::testing::random_design(rng);
        const THedron base = deform(d, 0.0);
        const ParameterRange r = parameter_range(d);
        for (double t : thedra::testing::sample_range(rng, r.t_min, r.t_max, 10)) {
            const THedron s = deform(d, t);
            const IsometryReport rep = check_isometric(base, s, 1e-9);
            EXPECT_TRUE(rep.pass) << "t = " << t << " residual " << rep.max_edge_residual;
            EXPECT_LE(planarity(s), 1e-9);
        }
    }
}

TEST(Deform, ClosedEndpointsAreAdmitted) {
    Rng rng(44);
    for (int trial = 0; trial < 10; ++trial) {
        const DesignData d = thedra::testing::random_design(rng);
        const ParameterRange r = parameter_range(d);
        const THedron base = build_thedron(d);
        const THedron lo = deform(d, r.t_min);
        const THedron hi = deform(d, r.t_max);
        EXPECT_TRUE(check_isometric(base, lo, 1e-7).pass);
        EXPECT_TRUE(check_isometric(base, hi, 1e-7).pass);
        const std::size_t j = r.upper_index;
        EXPECT_NEAR(hi(0, j).z(), hi(0, j - 1).z(), 1e-12);
    }
}

TEST(Deform, IsNotARigidMotion) {
    Rng rng(45);
    for (int trial = 0; trial < 20; ++trial) {
        const DesignData d = thedra::testing::random_design(rng);
        const ParameterRange r = parameter_range(d);
        const double t = 0.5 * r.t_max;
        const double change = dihedral_angles(deform(d, t)).max_abs_difference(dihedral_angles(deform(d, 0.0)));
        EXPECT_GT(change, 1e-6);
    }
}

TEST(Deform, HeightStepsKeepTheirSign) {
    Rng rng(46);
    for (int trial = 0; trial < 20; ++trial) {
        const DesignData d = thedra::testing::random_design(rng);
        const ParameterRange r = parameter_range(d);
        for (double t : thedra::testing::sample_range(rng, r.t_min, 0.999 * r.t_max, 5)) {
            const DeformationState s = deformation_state(d, t);
            for (std::size_t j = 1; j <= d.n(); ++j)
                EXPECT_EQ(s.z_t[j] - s.z_t[j - 1] > 0, d.z[j] - d.z[j - 1] > 0);
            for (std::size_t i = 0; i <= d.m(); ++i) EXPECT_NEAR(s.Ct[i] * s.Ct[i], std::pow(s.Ct[i] / s.k[i], 2) + t, 1e-12);
        }
    }
}

TEST(Deform, OutOfRangeNamesTheConstraint) {
    const DesignData d = unit_revolution_design();
    try {
        deform(d, 1.5);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::OutOfRange);
        EXPECT_NE(std::string(e.what()).find("TrajectoryFlattening"), std::string::npos);
    }
    try {
        deform(d, -0.9);
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("ProfileFlattening"), std::string::npos);
    }
}

TEST(Translational, UnitExampleRange) {
    const TranslationalData t{{0, 1}, {0, 1}, {0, 1}, {0, 1}};
    const ParameterRange r = translational_range(t);
    EXPECT_NEAR(r.t_min, -0.5 * std::log(2.0), 1e-15);
    EXPECT_NEAR(r.t_max, 0.5 * std::log(2.0), 1e-15);
    const THedron top = deform_translational(t, r.t_max);
    EXPECT_NEAR(top(0, 1).z(), 0.0, 1e-15);
    // Upper end solves 2 - e^{2t} = 0.
    EXPECT_NEAR(2.0 - std::exp(2 * r.t_max), 0.0, 1e-15);
}

TEST(Translational, AgreesWithGeneralDeformationUnderBridge) {
    Rng rng(47);
    for (int trial = 0; trial < 10; ++trial) {
        const TranslationalData t = thedra::testing::random_translational(rng, rng.index(1, 6), rng.index(1, 6));
        const DesignData d = translational_design(t);
        const ParameterRange rt = translational_range(t);
        const ParameterRange rg = parameter_range(d);
        EXPECT_NEAR(general_from_translational(rt.t_min), rg.t_min, 1e-12);
        EXPECT_NEAR(general_from_translational(rt.t_max), rg.t_max, 1e-12 * std::max(1.0, rg.t_max));
        for (double te : thedra::testing::sample_range(rng, rt.t_min, rt.t_max, 10)) {
            const THedron a = deform_translational(t, te);
            const THedron b = deform(d, general_from_translational(te));
            EXPECT_LE(thedra::testing::max_distance_relative_to_origin(a.points, b.points), 1e-9);
        }
    }
}

TEST(Miura, FlatParameters) {
    const MiuraFlatParameters f = miura_flat_parameters(1, 1, 1, 1);
    EXPECT_NEAR(f.t_plus, std::log(std::sqrt(2.0)), 1e-15);
    EXPECT_NEAR(f.t_minus, -std::log(std::sqrt(2.0)), 1e-15);
    EXPECT_EQ(miura_flat_parameters(1, 1, 1, 0).t_plus, 0.0);
    EXPECT_GT(miura_flat_parameters(1, 1, 1, 1e6).t_plus, miura_flat_parameters(1, 1, 1, 1e3).t_plus);
}

TEST(Miura, ClosedFormsAtUpperFlatState) {
    const MiuraParameters p{1, 1, 1, 1, 4, 4};
    const double tp = miura_flat_parameters(1, 1, 1, 1).t_plus;
    const MiuraParameters q = miura_parameters_at(p, tp);
    EXPECT_NEAR(q.a, std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(q.b, std::sqrt(1.5), 1e-15);
    EXPECT_NEAR(q.c, 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(q.d, 0.0, 1e-12);
    const THedron s = deform_miura(p, tp);
    for (const Vec3& v : s.points) EXPECT_NEAR(v.z(), 0.0, 1e-12);
    EXPECT_TRUE(check_isometric(build_miura(p), s, 1e-12).pass);
}

TEST(Miura, GeneralRangeEndpointsMapToFlatStates) {
    const MiuraParameters p{1.3, 0.7, 0.9, 1.1, 3, 3};
    const ParameterRange r = parameter_range(translational_design(miura_data(p)));
    const MiuraFlatParameters f = miura_flat_parameters(p.a, p.b, p.c, p.d);
    EXPECT_NEAR(translational_from_general(r.t_min), f.t_minus, 1e-12);
    EXPECT_NEAR(translational_from_general(r.t_max), f.t_plus, 1e-12);
}

TEST(Molding, SingleStripExample) {
    // eta = pi/6, t = 3: sin eta(3) = 0.5 / 2, profile scale sqrt(1 + 3) = 2.
    DesignData d;
    d.phi = {kPi / 3};
    d.psi = {kPi / 6};
    d.f0 = {1.0};
    d.g0 = {1.0};
    d.z = {0.0, 3.0};
    const THedron s = deform_molding(d, 3.0);
    EXPECT_NEAR(s(0, 1).head<2>().norm(), 2.0, 1e-15);
    const double phi1 = std::atan2(s(1, 1).y() - s(1, 0).y(), s(1, 1).x() - s(1, 0).x());
    EXPECT_NEAR(std::sin(phi1 / 2), 0.25, 1e-14);
    EXPECT_NEAR(std::sin(deformation_state(d, 3.0).eta_t[0]), 0.25, 1e-15);
}

TEST(Specialization, MoldingAxialRevolutionAgreeWithGeneral) {
    Rng rng(48);
    for (int trial = 0; trial < 10; ++trial) {
        const DesignData md = thedra::testing::random_molding(rng, rng.index(1, 6), rng.index(2, 6));
        const ParameterRange mr = parameter_range(md);
        const AxialDesign ad = thedra::testing::random_axial(rng, rng.index(2, 6), rng.index(2, 6));
        const ParameterRange ar = parameter_range(ad.design);
        const RevolutionData rd = thedra::testing::random_revolution(rng, rng.index(1, 6), rng.index(2, 6));
        const ParameterRange rr = parameter_range(revolution_to_axial(rd).design);
        for (int k = 0; k < 5; ++k) {
            const double tm = rng.uniform(mr.t_min, mr.t_max);
            EXPECT_LE(thedra::testing::max_distance(deform_molding(md, tm).points, deform(md, tm).points), 1e-12);
            const double ta = rng.uniform(ar.t_min, ar.t_max);
            EXPECT_LE(thedra::testing::max_distance_relative_to_origin(deform_axial(ad, ta).points,
                                                                       deform(ad.design, ta).points),
                      1e-12);
            const double tr = rng.uniform(rr.t_min, rr.t_max);
            EXPECT_LE(thedra::testing::max_distance_relative_to_origin(
                          deform_revolution(rd, tr).points, deform(revolution_to_axial(rd).design, tr).points),
                      1e-12);
        }
    }
}

TEST(ParallelAxial, SatisfiesCriterionAndStaysParallel) {
    Rng rng(49);
    for (int trial = 0; trial < 10; ++trial) {
        const DesignData d = thedra::testing::random_design(rng);
        const DesignData p = parallel_axial(d);
        EXPECT_LE(axial_residual(p), 1e-12);
        EXPECT_EQ(classify_design(p), SurfaceClass::axial);
        EXPECT_EQ(p.phi, d.phi);
        EXPECT_EQ(p.f0, d.f0);
        const ParameterRange r = parameter_range(d);
        const ParameterRange rp = parameter_range(p);
        EXPECT_EQ(r.t_min, rp.t_min);
        EXPECT_EQ(r.t_max, rp.t_max);
        for (double t : thedra::testing::sample_range(rng, r.t_min, r.t_max, 10))
            EXPECT_TRUE(is_parallel(deform(d, t), deform(p, t), 1e-9)) << "t = " << t;
    }
}

TEST(ParallelAxial, AxialInputKeepsItsG) {
    Rng rng(50);
    const AxialDesign a = thedra::testing::random_axial(rng, 4, 3);
    const DesignData p = parallel_axial(a.design);
    for (std::size_t i = 0; i < p.m(); ++i) EXPECT_NEAR(p.g0[i], a.design.g0[i], 1e-12 * std::abs(a.design.g0[i]));
}

TEST(IsParallel, TranslatedCopyAndDeformation) {
    Rng rng(51);
    const DesignData d = thedra::testing::random_design(rng, 3, 3);
    const THedron s = build_thedron(d);
    THedron moved = s;
    for (auto& v : moved.points) v += Vec3(1, 2, 3);
    EXPECT_TRUE(is_parallel(s, moved, 1e-14));
    EXPECT_FALSE(is_parallel(s, deform(d, 0.3 * parameter_range(d).t_max), 1e-9));
    EXPECT_THROW(is_parallel(s, build_miura({1, 1, 1, 1, 2, 2})), Error);
}
