#include <gtest/gtest.h>

#include <cmath>

#include "thedra/error.hpp"
#include "thedra/smooth/deformation.hpp"

using namespace thedra;
using namespace thedra::smooth;

namespace {

const Interval kUnit{0.0, 1.0};
const Interval kHalf{0.0, 0.5};

// x = u^2, y = u, f = v^2, z = v on [0, 0.5]^2.
TranslationalSurface translational_paraboloid() {
    return {ScalarFunction::polynomial({0, 0, 1}, kHalf), ScalarFunction::polynomial({0, 1}, kHalf),
            ScalarFunction::polynomial({0, 0, 1}, kHalf), ScalarFunction::polynomial({0, 1}, kHalf)};
}

// A quarter of the paraboloid of revolution z = r^2 with r in [0.1, 1].
AxialSurface paraboloid_wedge() {
    const Interval V{0.1, 1.0};
    return {ScalarFunction::constant(1.0, kUnit), ScalarFunction::polynomial({0, 1}, kUnit),
            ScalarFunction::polynomial({0, 1}, V), ScalarFunction::polynomial({0, 0, 1}, V)};
}

// General surface: phi = u, eta = 0.2 + 0.3 sin u, c from the compatibility
// condition, g = 1 + 0.2 u, f = v, z = 0.8 v + 0.3 v^2.
SmoothSpec general_surface() {
    auto phi = ScalarFunction::polynomial({0, 1}, kUnit);
    auto eta = ScalarFunction::sine(0.3, 1.0, 0.0, 0.2, kUnit);
    auto c = reconstruct_c(phi, eta, 1.0);
    auto psi = ScalarFunction::callable([phi, eta](double u) { return phi(u) - eta(u); }, kUnit,
                                        [phi, eta](double u) { return phi.derivative(u) - eta.derivative(u); });
    return SmoothSpec(ScalarFunction::polynomial({1, 0.2}, kUnit), psi, c, phi, ScalarFunction::polynomial({0, 1}, kUnit),
                      ScalarFunction::polynomial({0, 0.8, 0.3}, kUnit));
}

MoldingSurface molding_surface() {
    return MoldingSurface(ScalarFunction::constant(1.0, kUnit), ScalarFunction::polynomial({0, 1}, kUnit),
                          ScalarFunction::polynomial({0, 1}, kUnit), ScalarFunction::polynomial({0, 0.5, 0.5}, kUnit));
}

RevolutionSurface revolution_surface() {
    const Interval V{0.5, 1.5};
    return {ScalarFunction::polynomial({0, 1.2}, kUnit), ScalarFunction::polynomial({0, 1}, V),
            ScalarFunction::callable([](double v) { return v + 0.3 * std::sin(2 * v); }, V,
                                     [](double v) { return 1 + 0.6 * std::cos(2 * v); })};
}

double max_metric_change(const Surface& a, const Surface& b, std::size_t k = 20) {
    double worst = 0.0;
    for (double u : linspace(u_domain(a), k)) {
        for (double v : linspace(v_domain(a), k)) {
            const FundamentalForm p = first_fundamental_form(a, u, v);
            const FundamentalForm q = first_fundamental_form(b, u, v);
            const double scale = std::max({1.0, p.E, p.G});
            worst = std::max({worst, std::abs(p.E - q.E) / scale, std::abs(p.F - q.F) / scale,
                              std::abs(p.G - q.G) / scale});
        }
    }
    return worst;
}

// Partials against central differences of the evaluated surface.
double max_partials_error(const Surface& s, std::size_t k = 7) {
    const Interval U = u_domain(s), V = v_domain(s);
    const double hu = U.width() * 1e-4, hv = V.width() * 1e-4;
    double worst = 0.0;
    for (double u : linspace({U.lo + hu, U.hi - hu}, k)) {
        for (double v : linspace({V.lo + hv, V.hi - hv}, k)) {
            const Partials p = partials(s, u, v);
            const Vec3 su = (evaluate(s, u + hu, v) - evaluate(s, u - hu, v)) / (2 * hu);
            const Vec3 sv = (evaluate(s, u, v + hv) - evaluate(s, u, v - hv)) / (2 * hv);
            worst = std::max({worst, (su - p.su).norm(), (sv - p.sv).norm()});
        }
    }
    return worst;
}

double max_relative_displacement(const Surface& a, const Surface& b, std::size_t k = 9) {
    const Vec3 a0 = evaluate(a, u_domain(a).lo, v_domain(a).lo);
    const Vec3 b0 = evaluate(b, u_domain(b).lo, v_domain(b).lo);
    double worst = 0.0;
    for (double u : linspace(u_domain(a), k))
        for (double v : linspace(v_domain(a), k))
            worst = std::max(worst, ((evaluate(a, u, v) - a0) - (evaluate(b, u, v) - b0)).norm());
    return worst;
}

}  // namespace

// ---- functions --------------------------------------------------------------------

TEST(ScalarFunction, ClosedForms) {
    auto p = ScalarFunction::polynomial({1, -2, 3}, kUnit);
    EXPECT_DOUBLE_EQ(p(0.5), 1 - 1 + 0.75);
    EXPECT_DOUBLE_EQ(p.derivative(0.5), -2 + 3);
    auto s = ScalarFunction::sine(2.0, 3.0, 0.5, 1.0, kUnit);
    EXPECT_NEAR(s(0.2), 2 * std::sin(0.6 + 0.5) + 1, 1e-15);
    EXPECT_NEAR(s.derivative(0.2), 6 * std::cos(0.6 + 0.5), 1e-15);
    auto e = ScalarFunction::exponential(2.0, -1.5, 0.25, kUnit);
    EXPECT_NEAR(e(0.7), 2 * std::exp(-1.05) + 0.25, 1e-15);
    EXPECT_NEAR(e.derivative(0.7), -3 * std::exp(-1.05), 1e-15);
    EXPECT_TRUE(p.serializable());
    EXPECT_EQ(s.kind(), "sine");
}

TEST(ScalarFunction, OutsideTheDomainIsAnError) {
    auto p = ScalarFunction::polynomial({0, 1}, kUnit);
    try {
        p(1.5);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::OutOfDomain);
    }
    EXPECT_NO_THROW(p(1.0 + 1e-14));
}

TEST(ScalarFunction, SampledInterpolatesSmoothData) {
    std::vector<double> values;
    for (double x : linspace(kUnit, 129)) values.push_back(std::sin(3 * x));
    auto s = ScalarFunction::sampled(values, kUnit);
    for (double x : linspace(kUnit, 37)) {
        EXPECT_NEAR(s(x), std::sin(3 * x), 1e-7);
        EXPECT_NEAR(s.derivative(x), 3 * std::cos(3 * x), 1e-4);
    }
    EXPECT_THROW(ScalarFunction::sampled(std::vector<double>(8, 1.0), kUnit), Error);
}

TEST(ScalarFunction, CallableDifferentiatesNumerically) {
    auto f = ScalarFunction::callable([](double x) { return std::exp(x) * std::sin(2 * x); }, kUnit);
    for (double x : linspace(kUnit, 21))
        EXPECT_NEAR(f.derivative(x), std::exp(x) * (std::sin(2 * x) + 2 * std::cos(2 * x)), 1e-8) << x;
    EXPECT_FALSE(f.serializable());
    EXPECT_TRUE(f.resampled(257).serializable());
}

TEST(ScalarFunction, IntegralMatchesAntiderivative) {
    auto f = ScalarFunction::integral([](double x) { return std::cos(x); }, {0.0, 3.0}, 2.0);
    for (double x : linspace({0.0, 3.0}, 31)) EXPECT_NEAR(f(x), 2.0 + std::sin(x), 1e-10);
    EXPECT_DOUBLE_EQ(f.derivative(1.0), std::cos(1.0));
    EXPECT_NEAR(integrate([](double x) { return std::sin(x); }, 0.0, kPi), 2.0, 1e-12);
    EXPECT_EQ(integrate([](double) { return 0.0; }, 0.0, 1.0), 0.0);
    EXPECT_NEAR(integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0), 2.0 / 3.0, 1e-10);
}

// ---- surfaces ---------------------------------------------------------------------

TEST(SmoothSurface, TranslationalParaboloidFundamentalForm) {
    const Surface s = translational_paraboloid();
    const FundamentalForm I = first_fundamental_form(s, 0.5, 0.5);
    EXPECT_DOUBLE_EQ(I.E, 2.0);
    EXPECT_DOUBLE_EQ(I.F, 1.0);
    EXPECT_DOUBLE_EQ(I.G, 2.0);
    EXPECT_TRUE(evaluate(s, 0.5, 0.5).isApprox(Vec3(0.5, 0.5, 0.5)));
    try {
        evaluate(s, 0.6, 0.1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::OutOfDomain);
    }
}

TEST(SmoothSurface, PartialsMatchFiniteDifferences) {
    for (const Surface& s : {Surface(translational_paraboloid()), Surface(paraboloid_wedge()), Surface(molding_surface()),
                             Surface(revolution_surface()), Surface(general_surface())}) {
        EXPECT_LT(max_partials_error(s), 1e-6) << class_name(s);
    }
}

TEST(SmoothSurface, ToSpecPreservesTheSurface) {
    for (const Surface& s : {Surface(translational_paraboloid()), Surface(paraboloid_wedge()), Surface(molding_surface()),
                             Surface(revolution_surface())}) {
        const SmoothSpec spec = to_spec(s);
        EXPECT_LT(max_relative_displacement(s, spec), 1e-9) << class_name(s);
        EXPECT_TRUE(check_spec(spec).empty()) << class_name(s) << ": " << check_spec(spec).front().message;
    }
}

TEST(SmoothSurface, GeneralExampleIsValid) {
    const SmoothSpec s = general_surface();
    EXPECT_TRUE(check_spec(s).empty());
    EXPECT_LT(compatibility_residual(s), 1e-9);
}

TEST(SmoothSurface, ReconstructedRadius) {
    auto phi = ScalarFunction::polynomial({0, 1}, kUnit);
    auto eta = ScalarFunction::constant(kPi / 4, kUnit);
    auto c = reconstruct_c(phi, eta, 2.0);
    for (double u : linspace(kUnit, 11)) EXPECT_NEAR(c(u), 2.0 * std::exp(u), 1e-10);
}

TEST(SmoothSurface, ValidationReportsEachCondition) {
    const SmoothSpec base = general_surface();
    auto issue_conditions = [](const SmoothSpec& s) {
        std::vector<int> out;
        for (const SpecIssue& i : check_spec(s)) out.push_back(i.condition);
        return out;
    };
    const auto has = [](const std::vector<int>& v, int c) { return std::find(v.begin(), v.end(), c) != v.end(); };

    SmoothSpec offset(base.g, base.psi, base.c, base.phi, ScalarFunction::polynomial({0.1, 1}, kUnit), base.z);
    EXPECT_TRUE(has(issue_conditions(offset), 1));

    SmoothSpec flat(base.g, base.psi, base.c, base.phi, base.f, ScalarFunction::polynomial({0, 2}, kUnit));
    EXPECT_TRUE(has(issue_conditions(flat), 2));

    SmoothSpec straight(base.g, ScalarFunction::constant(0.0, kUnit), ScalarFunction::constant(1.0, kUnit),
                        ScalarFunction::constant(0.1, kUnit), base.f, base.z);
    EXPECT_TRUE(has(issue_conditions(straight), 4));

    SmoothSpec steep(base.g, ScalarFunction::polynomial({-2, 1}, kUnit), ScalarFunction::constant(1.0, kUnit),
                     base.phi, base.f, base.z);
    EXPECT_TRUE(has(issue_conditions(steep), 5));

    SmoothSpec drift(base.g, base.psi, ScalarFunction::constant(1.0, kUnit), base.phi, base.f, base.z);
    EXPECT_TRUE(has(issue_conditions(drift), 6));
    try {
        validate_spec(drift);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::CompatibilityDrift);
        EXPECT_EQ(e.field(), "c");
    }

    SmoothSpec singular(ScalarFunction::polynomial({-0.5, 1}, kUnit), base.psi, base.c, base.phi, base.f, base.z);
    EXPECT_TRUE(has(issue_conditions(singular), 7));
}

TEST(SmoothSurface, SampledTranslationalGridIsPlanar) {
    EXPECT_LT(sample_to_grid(translational_paraboloid(), 12, 9).planarity, 1e-12);
    EXPECT_LT(sample_to_grid(paraboloid_wedge(), 12, 9).planarity, 1e-12);
    EXPECT_LT(sample_to_grid(revolution_surface(), 12, 9).planarity, 1e-12);
}

TEST(SmoothSurface, SampledGeneralGridApproachesPlanarAtLeastQuadratically) {
    const SmoothSpec s = general_surface();
    const double p8 = sample_to_grid(s, 8, 8).planarity;
    const double p16 = sample_to_grid(s, 16, 16).planarity;
    const double p32 = sample_to_grid(s, 32, 32).planarity;
    EXPECT_GT(p8, 1e-8);
    EXPECT_GT(p8 / p16, 3.5);
    EXPECT_GT(p16 / p32, 3.5);
}

// ---- ranges -----------------------------------------------------------------------

TEST(SmoothRange, ParaboloidWedge) {
    const SmoothRange r = smooth_range(paraboloid_wedge());
    EXPECT_NEAR(r.t_min, -1.0, 1e-12);
    EXPECT_TRUE(r.lower_open);
    EXPECT_NEAR(r.t_max, 0.04, 1e-12);
    EXPECT_EQ(r.upper_reason, BlockingReason::TrajectoryFlattening);
    EXPECT_NEAR(r.upper_at, 0.1, 1e-12);
    EXPECT_FALSE(r.contains(-1.0));
    EXPECT_TRUE(r.contains(0.04));
    EXPECT_FALSE(r.contains(0.05));
}

TEST(SmoothRange, TranslationalParaboloid) {
    const SmoothRange r = smooth_range(translational_paraboloid());
    EXPECT_NEAR(r.t_max, 0.5 * std::log(2.0), 1e-12);
    EXPECT_NEAR(r.t_min, -0.5 * std::log(2.0), 1e-12);
    EXPECT_EQ(r.upper_reason, BlockingReason::ProfileFlattening);
    EXPECT_EQ(r.lower_reason, BlockingReason::TrajectoryFlattening);
}

TEST(SmoothRange, MoldingIsUnboundedAbove) {
    const SmoothRange r = smooth_range(molding_surface());
    EXPECT_EQ(r.upper_reason, BlockingReason::Unbounded);
    EXPECT_TRUE(std::isinf(r.t_max));
    // z' = 0.5 + v, f' = 1: min z'^2/f'^2 = 0.25.
    EXPECT_NEAR(r.t_min, -0.5 * std::log1p(0.25), 1e-12);
}

TEST(SmoothRange, OneSidedWhenHeightTurns) {
    const AxialSurface s{ScalarFunction::constant(1.0, kUnit), ScalarFunction::polynomial({0, 1}, kUnit),
                         ScalarFunction::polynomial({1, 1}, kUnit), ScalarFunction::polynomial({0.25, -1, 1}, kUnit)};
    const SmoothRange r = smooth_range(s);
    EXPECT_EQ(r.t_max, 0.0);
    EXPECT_TRUE(r.one_sided());
    try {
        deform_axial_surface(s, 0.1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::RadicandNegative);
        EXPECT_NE(std::string(e.what()).find("v = 0.5"), std::string::npos) << e.what();
    }
    try {
        deform_axial_surface(s, -0.1, Sidedness::two_sided);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::OneSidedOnly);
    }
    const SmoothDeformation d = deform_surface(s, -0.2);
    ASSERT_EQ(d.creases.size(), 1u);
    EXPECT_EQ(d.creases[0].direction, 'v');
    EXPECT_NEAR(d.creases[0].parameter, 0.5, 1e-12);
    EXPECT_LT(max_metric_change(s, d.surface), 1e-8);
}

// ---- deformations -----------------------------------------------------------------

TEST(SmoothDeformation, IdentityAtZero) {
    for (const Surface& s : {Surface(translational_paraboloid()), Surface(paraboloid_wedge()), Surface(molding_surface()),
                             Surface(revolution_surface()), Surface(general_surface())}) {
        EXPECT_LT(max_relative_displacement(s, deform_surface(s, 0.0).surface), 1e-9) << class_name(s);
    }
}

TEST(SmoothDeformation, MetricIsPreserved) {
    for (const Surface& s : {Surface(translational_paraboloid()), Surface(paraboloid_wedge()), Surface(molding_surface()),
                             Surface(revolution_surface()), Surface(general_surface())}) {
        const SmoothRange r = smooth_range(s);
        const double lo = std::isfinite(r.t_min) ? r.t_min : -1.0;
        const double hi = std::isfinite(r.t_max) ? r.t_max : 1.0;
        for (double t : {lo + 0.02 * (hi - lo), 0.5 * lo, 0.5 * hi, hi}) {
            const Surface d = deform_surface(s, t).surface;
            EXPECT_LT(max_metric_change(s, d), 1e-8) << class_name(s) << " t=" << t;
            if (t != 0.0 && std::abs(t) > 1e-3) EXPECT_GT(max_relative_displacement(s, d), 1e-4) << class_name(s);
        }
        EXPECT_LT(max_partials_error(deform_surface(s, 0.5 * hi).surface), 1e-6) << class_name(s);
    }
}

TEST(SmoothDeformation, MoldingExample) {
    const MoldingSurface d = deform_molding_surface(molding_surface(), std::log(2.0));
    for (double u : linspace(kUnit, 11)) EXPECT_NEAR(d.psi(u), 2 * u, 1e-14);
    EXPECT_NEAR(d.f(1.0), 0.5, 1e-15);
}

TEST(SmoothDeformation, GeneralSpecializesToEachClass) {
    const double te = 0.2;
    const double ta = std::expm1(-2 * te);  // 1 + t_additive = e^(-2 t_exponential)
    const TranslationalSurface tr = translational_paraboloid();
    EXPECT_LT(max_relative_displacement(deform_translational_surface(tr, te), deform_general_surface(to_spec(tr), ta)), 1e-9);
    const MoldingSurface mo = molding_surface();
    EXPECT_LT(max_relative_displacement(deform_molding_surface(mo, te), deform_general_surface(to_spec(mo), ta)), 1e-9);
    const AxialSurface ax = paraboloid_wedge();
    EXPECT_LT(max_relative_displacement(deform_axial_surface(ax, -0.3), deform_general_surface(to_spec(ax), -0.3)), 1e-9);
    const RevolutionSurface rev = revolution_surface();
    EXPECT_LT(max_relative_displacement(deform_revolution_surface(rev, 0.1), deform_general_surface(to_spec(rev), 0.1)),
              1e-9);
}

TEST(SmoothDeformation, OutsideTheRangeIsRejected) {
    try {
        deform_surface(paraboloid_wedge(), -1.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::RadicandNegative);
        EXPECT_EQ(e.field(), "t");
    }
    EXPECT_THROW(deform_surface(translational_paraboloid(), 0.4), Error);
}

TEST(SmoothDeformation, NonMonotonePhiIsRejected) {
    const AxialSurface s{ScalarFunction::constant(1.0, kUnit), ScalarFunction::polynomial({0, -1, 1}, kUnit),
                         ScalarFunction::polynomial({0.5, 1}, kUnit), ScalarFunction::polynomial({0, 1}, kUnit)};
    try {
        deform_axial_surface(s, 0.1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
        EXPECT_EQ(e.field(), "phi");
    }
}

// ---- parallel partners --------------------------------------------------------------

TEST(SmoothPartner, TangentPlanesStayParallel) {
    const SmoothSpec s = general_surface();
    const SmoothSpec p = smooth_parallel_partner(s, ScalarFunction::polynomial({2, -0.5}, kUnit), 0.7);
    EXPECT_TRUE(check_spec(p).empty());
    EXPECT_LT(max_tangent_plane_angle(s, p), 1e-12);
    for (double t : {-0.3, 0.2, 0.5}) {
        EXPECT_LT(max_tangent_plane_angle(deform_general_surface(s, t), deform_general_surface(p, t)), 1e-8) << t;
    }
}

TEST(SmoothPartner, AxialPartner) {
    const SmoothSpec s = general_surface();
    const SmoothSpec p = smooth_axial_partner(s, 1.3);
    EXPECT_LT(max_tangent_plane_angle(s, p), 1e-12);
    EXPECT_LT(max_tangent_plane_angle(deform_general_surface(s, 0.3), deform_general_surface(p, 0.3)), 1e-8);
    // gamma' = xi': the trajectory runs along the profile direction curve.
    for (double u : linspace(kUnit, 5)) {
        const Vec3 su = p.partials(u, 0.0).su;
        EXPECT_LT((Vec2(su.x(), su.y()) - s.xi_derivative(u)).norm(), 1e-12);
    }
}

TEST(SmoothPartner, CurveInput) {
    const MoldingSurface m = molding_surface();
    const SmoothSpec s = to_spec(m);
    // psi = u: the circle of radius 2 has normal angle u.
    auto x = ScalarFunction::sine(-2.0, 1.0, kPi / 2, 0.0, kUnit);  // -2 cos u
    auto y = ScalarFunction::sine(-2.0, 1.0, 0.0, 0.0, kUnit);      // -2 sin u
    const SmoothSpec p = smooth_parallel_partner(s, x, y);
    EXPECT_LT(max_tangent_plane_angle(s, p), 1e-12);
    auto line = ScalarFunction::polynomial({0, 1}, kUnit);
    try {
        smooth_parallel_partner(s, line, line);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NonParallelInput);
    }
}

TEST(SmoothSurface, ParaboloidWedgeSpotValues) {
    const AxialSurface s = paraboloid_wedge();
    EXPECT_TRUE(s.evaluate(0.0, 1.0).isApprox(Vec3(1.0, 0.0, 1.0), 1e-15));
    for (double u : linspace(kUnit, 5))
        for (double v : linspace({0.1, 1.0}, 5)) EXPECT_NEAR(first_fundamental_form(s, u, v).F, 0.0, 1e-15);
}

TEST(SmoothDeformation, ParaboloidWedgeHeightAtMinusHalf) {
    const AxialSurface d = deform_axial_surface(paraboloid_wedge(), -0.5);
    // z^t(v) = z(0.1) + integral of sqrt(4 w^2 + 0.5) from 0.1; closed-form antiderivative.
    auto antiderivative = [](double w) {
        const double r = std::sqrt(4 * w * w + 0.5);
        return 0.5 * w * r + 0.125 * std::log(2 * w + r);
    };
    for (double v : linspace({0.1, 1.0}, 10))
        EXPECT_NEAR(d.z(v), 0.01 + antiderivative(v) - antiderivative(0.1), 1e-12) << v;
    for (double u : linspace(kUnit, 5)) EXPECT_NEAR(d.c(u), std::sqrt(0.5), 1e-15);
}
