#include "thedra/builders.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "thedra/error.hpp"
#include "thedra/metrology.hpp"

namespace thedra {

namespace {

constexpr double kPlanarityTolerance = 1e-9;

std::string indexed(const char* name, std::size_t k) {
    return std::string(name) + "[" + std::to_string(k) + "]";
}

void require_finite(const std::vector<double>& v, const char* name) {
    for (std::size_t k = 0; k < v.size(); ++k)
        if (!std::isfinite(v[k])) throw Error(ErrorCode::InvalidArgument, indexed(name, k) + " is not finite", indexed(name, k));
}

void check_heights(std::span<const double> z) {
    for (std::size_t j = 1; j < z.size(); ++j) {
        if (z[j] == z[j - 1]) {
            throw Error(ErrorCode::DegenerateHeights,
                        "z_" + std::to_string(j - 1) + " and z_" + std::to_string(j) + " coincide", indexed("z", j));
        }
    }
}

}  // namespace

THedron lift(const TNet& net, std::span<const double> z) {
    const std::size_t m = net.m();
    const std::size_t n = net.n();
    if (z.size() != n + 1) throw Error(ErrorCode::ShapeMismatch, "z must have n + 1 entries", "z");
    if (z[0] != 0.0) throw Error(ErrorCode::InvalidArgument, "z[0] must be 0", "z[0]");
    check_heights(z);
    THedron out;
    out.points = Grid<Vec3>(m + 1, n + 1);
    std::vector<double> s(n + 1);
    for (std::size_t i = 0; i <= m; ++i) {
        const Line2& line = net.lines[i];
        for (std::size_t j = 0; j <= n; ++j) {
            const Vec2& p = net.points(i, j);
            out.points(i, j) = Vec3(p.x(), p.y(), z[j]);
            s[j] = (p - net.points(i, 0)).dot(line.direction);
        }
        if (polygon_is_collinear(s, z)) {
            throw Error(ErrorCode::CollinearProfile, "profile polygon " + std::to_string(i) + " is contained in a line");
        }
    }
    return out;
}

THedron build_thedron(const DesignData& design) {
    const TNet net = build_tnet(design);
    return lift(net, design.z);
}

void validate_thedron(const THedron& surface) {
    TNet net;
    try {
        net = ground_view(surface);
        validate_tnet(net);
    } catch (const Error& e) {
        throw Error(ErrorCode::NotATHedron, std::string(e.what()));
    }
    const double p = planarity(surface);
    if (p > kPlanarityTolerance) {
        throw Error(ErrorCode::NotATHedron, "faces are not planar (relative deviation " + std::to_string(p) + ")");
    }
}

DesignData recover_design(const THedron& surface) {
    validate_thedron(surface);
    const std::size_t m = surface.m();
    const std::size_t n = surface.n();
    TNet raw = ground_view(surface);
    const Vec2 origin = raw.points(0, 0);
    const Vec2 d0 = raw.lines[0].direction;
    // Rotation taking d0 to +x.
    auto to_normal = [&](const Vec2& p) { return Vec2(p.dot(d0), cross2(d0, p)); };
    TNet net;
    net.points = Grid<Vec2>(m + 1, n + 1);
    net.lines.resize(m + 1);
    for (std::size_t i = 0; i <= m; ++i) {
        for (std::size_t j = 0; j <= n; ++j) net.points(i, j) = to_normal(raw.points(i, j) - origin);
        net.lines[i] = {to_normal(raw.lines[i].point - origin), to_normal(raw.lines[i].direction).normalized()};
    }
    net.lines[0].direction = Vec2(1.0, 0.0);

    const std::vector<Vec2> normals = base_normals(net);
    DesignData d;
    d.phi.resize(m);
    d.psi.resize(m);
    d.g0.resize(m);
    d.f0.resize(n);
    d.z.resize(n + 1);
    double phi_prev = 0.0;
    for (std::size_t i = 1; i <= m; ++i) {
        const Vec2& M = normals[i - 1];
        const double eta = signed_angle(net.lines[i - 1].direction, M);
        const double theta = signed_angle(M, net.lines[i].direction);
        if (!(std::abs(theta) < kPi / 2)) {
            throw Error(ErrorCode::NotATHedron, "profile line " + std::to_string(i) + " is oriented against its strip");
        }
        d.psi[i - 1] = phi_prev + eta;
        d.phi[i - 1] = d.psi[i - 1] + theta;
        d.g0[i - 1] = (net.points(i, 0) - net.points(i - 1, 0)).dot(rot90(M));
        phi_prev = d.phi[i - 1];
    }
    for (std::size_t j = 1; j <= n; ++j) d.f0[j - 1] = net.points(0, j).x() - net.points(0, j - 1).x();
    for (std::size_t j = 0; j <= n; ++j) d.z[j] = surface(0, j).z() - surface(0, 0).z();
    return d;
}

// ---- translational ----------------------------------------------------------

void validate_translational(const TranslationalData& t) {
    if (t.y.size() < 2) throw Error(ErrorCode::InvalidArgument, "m must be positive", "y");
    if (t.z.size() < 2) throw Error(ErrorCode::InvalidArgument, "n must be positive", "z");
    if (t.x_row.size() != t.y.size()) throw Error(ErrorCode::ShapeMismatch, "x_row must have m + 1 entries", "x_row");
    if (t.x_col.size() != t.z.size()) throw Error(ErrorCode::ShapeMismatch, "x_col must have n + 1 entries", "x_col");
    require_finite(t.x_row, "x_row");
    require_finite(t.x_col, "x_col");
    require_finite(t.y, "y");
    require_finite(t.z, "z");
    if (t.x_row[0] != t.x_col[0]) {
        throw Error(ErrorCode::InvalidArgument, "x_row[0] and x_col[0] both denote x_00 and must agree", "x_col[0]");
    }
    for (std::size_t i = 1; i < t.y.size(); ++i) {
        if (t.y[i] == t.y[i - 1]) {
            throw Error(ErrorCode::CoincidentPlanes,
                        "profile planes y_" + std::to_string(i - 1) + " and y_" + std::to_string(i) + " coincide",
                        indexed("y", i));
        }
    }
    check_heights(t.z);
    if (polygon_is_collinear(t.x_col, t.z)) {
        throw Error(ErrorCode::CollinearProfile, "the profile polygon (x_0j, z_j) is contained in a line", "z");
    }
    if (polygon_is_collinear(t.x_row, t.y)) {
        throw Error(ErrorCode::CollinearPolygon, "the trajectory polygon (x_i0, y_i) is contained in a line", "y");
    }
}

THedron build_translational(const TranslationalData& t) {
    validate_translational(t);
    THedron out;
    out.tag = SurfaceClass::translational;
    out.points = Grid<Vec3>(t.m() + 1, t.n() + 1);
    for (std::size_t i = 0; i <= t.m(); ++i)
        for (std::size_t j = 0; j <= t.n(); ++j)
            out.points(i, j) = Vec3(t.x_row[i] + t.x_col[j] - t.x_col[0], t.y[i], t.z[j]);
    return out;
}

DesignData translational_design(const TranslationalData& t) {
    validate_translational(t);
    DesignData d;
    const std::size_t m = t.m();
    const std::size_t n = t.n();
    d.phi.assign(m, 0.0);
    d.psi.resize(m);
    d.g0.resize(m);
    for (std::size_t i = 1; i <= m; ++i) {
        const double dx = t.x_row[i] - t.x_row[i - 1];
        const double dy = t.y[i] - t.y[i - 1];
        const double sign = dy > 0 ? 1.0 : -1.0;
        const double g = sign * std::hypot(dx, dy);
        d.g0[i - 1] = g;
        d.psi[i - 1] = std::atan2(-dx / g, dy / g);
    }
    d.f0.resize(n);
    d.z.resize(n + 1);
    for (std::size_t j = 1; j <= n; ++j) d.f0[j - 1] = t.x_col[j] - t.x_col[j - 1];
    for (std::size_t j = 0; j <= n; ++j) d.z[j] = t.z[j] - t.z[0];
    return d;
}

// ---- molding ---------------------------------------------------------------

bool is_molding(const DesignData& design, double tol) {
    const DerivedQuantities q = derive(design);
    for (std::size_t i = 0; i < design.m(); ++i)
        if (std::abs(q.theta[i] - q.eta[i]) > tol) return false;
    return true;
}

THedron build_molding(const DesignData& design) {
    const DerivedQuantities q = derive(design);
    for (std::size_t i = 0; i < design.m(); ++i) {
        if (std::abs(q.theta[i] - q.eta[i]) > kAngleTolerance) {
            throw Error(ErrorCode::NotMolding, "psi_" + std::to_string(i + 1) + " is not the mean of phi_" +
                                                   std::to_string(i) + " and phi_" + std::to_string(i + 1),
                        indexed("psi", i));
        }
    }
    validate_tnet(build_tnet_unchecked(design));
    if (polygon_is_collinear(q.F, design.z)) {
        throw Error(ErrorCode::CollinearProfile, "the profile polygon (F_j, z_j) is contained in a line", "z");
    }
    const std::size_t m = design.m();
    const std::size_t n = design.n();
    THedron out;
    out.tag = SurfaceClass::molding;
    out.points = Grid<Vec3>(m + 1, n + 1);
    Vec2 base = Vec2::Zero();
    for (std::size_t i = 0; i <= m; ++i) {
        if (i > 0) base += design.g0[i - 1] * rot90(unit_direction(0.5 * (design.phi_at(i - 1) + design.phi_at(i))));
        const Vec2 dir = unit_direction(design.phi_at(i));
        for (std::size_t j = 0; j <= n; ++j) {
            const Vec2 p = base + q.F[j] * dir;
            out.points(i, j) = Vec3(p.x(), p.y(), design.z[j]);
        }
    }
    return out;
}

// ---- axial / revolution ----------------------------------------------------

std::vector<double> axial_g_sequence(const DesignData& design, double g10) {
    const DerivedQuantities q = derive(design);
    const double s1 = std::sin(q.eta[0] + q.theta[0]);
    if (std::abs(s1) <= 1e-12) {
        throw Error(ErrorCode::ConsecutiveParallelPlanes, "profile planes 0 and 1 are parallel", "phi[0]");
    }
    std::vector<double> g(design.m());
    g[0] = g10;
    for (std::size_t i = 2; i <= design.m(); ++i) {
        const double si = std::sin(q.eta[i - 1] + q.theta[i - 1]);
        if (std::abs(si) <= 1e-12) {
            throw Error(ErrorCode::ConsecutiveParallelPlanes,
                        "profile planes " + std::to_string(i - 1) + " and " + std::to_string(i) + " are parallel",
                        indexed("phi", i - 1));
        }
        g[i - 1] = g10 * si * std::cos(q.theta[0]) * q.C[i] / (s1 * std::cos(q.eta[i - 1]));
    }
    return g;
}

double axial_residual(const DesignData& design) {
    const DerivedQuantities q = derive(design);
    const double s1 = std::sin(q.eta[0] + q.theta[0]);
    if (std::abs(s1) <= 1e-12) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    const double g10 = design.g0[0];
    for (std::size_t i = 2; i <= design.m(); ++i) {
        const double si = std::sin(q.eta[i - 1] + q.theta[i - 1]);
        const double expected = g10 * si * std::cos(q.theta[0]) * q.C[i] / (s1 * std::cos(q.eta[i - 1]));
        const double g = design.g0[i - 1];
        const double scale = std::max(std::abs(g), std::abs(expected));
        worst = std::max(worst, std::abs(g - expected) / scale);
    }
    return worst;
}

AxialDesign make_axial(std::vector<double> phi, std::vector<double> psi, double f00, std::vector<double> f0,
                       std::vector<double> z) {
    if (!std::isfinite(f00) || f00 == 0.0) {
        throw Error(ErrorCode::AxisDegenerate, "f00 must be a nonzero distance from the axis", "f00");
    }
    AxialDesign out;
    out.f00 = f00;
    out.design.phi = std::move(phi);
    out.design.psi = std::move(psi);
    out.design.f0 = std::move(f0);
    out.design.z = std::move(z);
    out.design.g0.assign(out.design.phi.size(), 1.0);
    const DerivedQuantities q = derive(out.design);
    const double g10 = f00 * std::sin(q.eta[0] + q.theta[0]) / std::cos(q.theta[0]);
    out.design.g0 = axial_g_sequence(out.design, g10);
    if (g10 == 0.0) throw Error(ErrorCode::ConsecutiveParallelPlanes, "profile planes 0 and 1 are parallel", "phi[0]");
    return out;
}

THedron build_axial(const AxialDesign& axial) {
    const DesignData& d = axial.design;
    if (!std::isfinite(axial.f00) || axial.f00 == 0.0) {
        throw Error(ErrorCode::AxisDegenerate, "f00 must be a nonzero distance from the axis", "f00");
    }
    const DerivedQuantities q = derive(d);
    const double g10 = axial.f00 * std::sin(q.eta[0] + q.theta[0]) / std::cos(q.theta[0]);
    const std::vector<double> g = axial_g_sequence(d, g10);
    for (std::size_t i = 0; i < d.m(); ++i) {
        if (std::abs(g[i] - d.g0[i]) > 1e-9 * std::max(std::abs(g[i]), std::abs(d.g0[i]))) {
            throw Error(ErrorCode::InvalidArgument, "g0 is inconsistent with an axis at distance f00", indexed("g0", i));
        }
    }
    validate_tnet(build_tnet_unchecked(d));
    const std::size_t m = d.m();
    const std::size_t n = d.n();
    THedron out;
    out.tag = SurfaceClass::axial;
    out.points = Grid<Vec3>(m + 1, n + 1);
    for (std::size_t i = 0; i <= m; ++i) {
        const Vec2 dir = unit_direction(d.phi_at(i));
        for (std::size_t j = 0; j <= n; ++j) {
            const double r = q.C[i] * (axial.f00 + q.F[j]);
            out.points(i, j) = Vec3(r * dir.x(), r * dir.y(), d.z[j]);
        }
    }
    std::vector<double> s(n + 1);
    for (std::size_t i = 0; i <= m; ++i) {
        for (std::size_t j = 0; j <= n; ++j) s[j] = q.C[i] * q.F[j];
        if (polygon_is_collinear(s, d.z)) {
            throw Error(ErrorCode::CollinearProfile, "profile polygon " + std::to_string(i) + " is contained in a line");
        }
    }
    return out;
}

void validate_revolution(const RevolutionData& r) {
    if (r.phi.empty()) throw Error(ErrorCode::InvalidArgument, "m must be positive", "phi");
    if (r.F.size() < 2) throw Error(ErrorCode::InvalidArgument, "n must be positive", "F");
    if (r.z.size() != r.F.size()) throw Error(ErrorCode::ShapeMismatch, "z must have n + 1 entries", "z");
    require_finite(r.phi, "phi");
    require_finite(r.F, "F");
    require_finite(r.z, "z");
    if (r.z[0] != 0.0) throw Error(ErrorCode::InvalidArgument, "z[0] must be 0", "z[0]");
    for (std::size_t j = 0; j < r.F.size(); ++j) {
        if (r.F[j] == 0.0 || (r.F[j] > 0) != (r.F[0] > 0)) {
            throw Error(ErrorCode::ZeroRadius, "the profile reaches the axis at j = " + std::to_string(j), indexed("F", j));
        }
    }
    double prev = 0.0;
    for (std::size_t i = 0; i < r.phi.size(); ++i) {
        const double step = r.phi[i] - prev;
        if (!(std::abs(step) < kPi) || step == 0.0) {
            throw Error(ErrorCode::AngleOutOfRange, "consecutive meridian planes must differ by less than pi",
                        indexed("phi", i));
        }
        prev = r.phi[i];
    }
    check_heights(r.z);
}

AxialDesign revolution_to_axial(const RevolutionData& r) {
    validate_revolution(r);
    std::vector<double> psi(r.m());
    double prev = 0.0;
    for (std::size_t i = 0; i < r.m(); ++i) {
        psi[i] = 0.5 * (prev + r.phi[i]);
        prev = r.phi[i];
    }
    std::vector<double> f0(r.n());
    for (std::size_t j = 1; j <= r.n(); ++j) f0[j - 1] = r.F[j] - r.F[j - 1];
    return make_axial(r.phi, std::move(psi), r.F[0], std::move(f0), r.z);
}

THedron build_revolution(const RevolutionData& r) {
    const AxialDesign axial = revolution_to_axial(r);
    THedron out;
    out.tag = SurfaceClass::revolution;
    out.points = Grid<Vec3>(r.m() + 1, r.n() + 1);
    for (std::size_t i = 0; i <= r.m(); ++i) {
        const double phi = i == 0 ? 0.0 : r.phi[i - 1];
        for (std::size_t j = 0; j <= r.n(); ++j)
            out.points(i, j) = Vec3(r.F[j] * std::cos(phi), r.F[j] * std::sin(phi), r.z[j]);
    }
    std::vector<double> s(r.n() + 1);
    for (std::size_t j = 0; j <= r.n(); ++j) s[j] = r.F[j];
    if (polygon_is_collinear(s, r.z)) {
        throw Error(ErrorCode::CollinearProfile, "the meridian polygon (F_j, z_j) is contained in a line", "F");
    }
    validate_tnet(build_tnet_unchecked(axial.design));
    return out;
}

// ---- Miura-ori --------------------------------------------------------------

TranslationalData miura_data(const MiuraParameters& p) {
    if (!(p.a > 0)) throw Error(ErrorCode::InvalidArgument, "a must be positive", "a");
    if (!(p.b > 0)) throw Error(ErrorCode::InvalidArgument, "b must be positive", "b");
    if (!(p.c > 0)) throw Error(ErrorCode::InvalidArgument, "c must be positive", "c");
    if (!(p.d >= 0) || !std::isfinite(p.d)) throw Error(ErrorCode::InvalidArgument, "d must be nonnegative", "d");
    if (p.m == 0 || p.n == 0) throw Error(ErrorCode::InvalidArgument, "m and n must be positive", p.m == 0 ? "m" : "n");
    TranslationalData t;
    t.x_row.resize(p.m + 1);
    t.y.resize(p.m + 1);
    t.x_col.resize(p.n + 1);
    t.z.resize(p.n + 1);
    for (std::size_t i = 0; i <= p.m; ++i) {
        t.x_row[i] = i % 2 == 0 ? 0.0 : p.c;
        t.y[i] = static_cast<double>(i) * p.b;
    }
    for (std::size_t j = 0; j <= p.n; ++j) {
        t.x_col[j] = static_cast<double>(j) * p.a;
        t.z[j] = j % 2 == 0 ? 0.0 : p.d;
    }
    return t;
}

THedron build_miura(const MiuraParameters& p) {
    const TranslationalData t = miura_data(p);
    THedron out;
    out.tag = SurfaceClass::miura;
    out.points = Grid<Vec3>(p.m + 1, p.n + 1);
    for (std::size_t i = 0; i <= p.m; ++i)
        for (std::size_t j = 0; j <= p.n; ++j) out.points(i, j) = Vec3(t.x_row[i] + t.x_col[j], t.y[i], t.z[j]);
    return out;
}

// ---- classification --------------------------------------------------------

SurfaceClass classify_design(const DesignData& design, double tol) {
    const DerivedQuantities q = derive(design);
    bool translational = true;
    for (double phi : design.phi) translational = translational && std::abs(std::sin(phi)) <= tol && std::cos(phi) > 0;
    if (translational) return SurfaceClass::translational;
    bool molding = true;
    for (std::size_t i = 0; i < design.m(); ++i) molding = molding && std::abs(q.theta[i] - q.eta[i]) <= tol;
    const bool axial = axial_residual(design) <= tol;
    if (axial && molding) return SurfaceClass::revolution;
    if (axial) return SurfaceClass::axial;
    if (molding) return SurfaceClass::molding;
    return SurfaceClass::general;
}

SurfaceClass classify(const THedron& surface, double tol) {
    DesignData design;
    try {
        design = recover_design(surface);
        return classify_design(design, tol);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::NotATHedron) throw;
        throw Error(ErrorCode::NotATHedron, std::string(e.what()));
    }
}

}  // namespace thedra
