#include "thedra/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "thedra/error.hpp"

namespace thedra {

namespace {

double endpoint_slack(double t) { return 1e-12 * std::max(1.0, std::abs(t)); }

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void require_in_range(const ParameterRange& r, double t) {
    if (!std::isfinite(t)) throw Error(ErrorCode::OutOfRange, "t must be finite", "t");
    if (t < r.t_min - endpoint_slack(r.t_min)) {
        throw Error(ErrorCode::OutOfRange,
                    "t = " + format_double(t) + " is below t_min = " + format_double(r.t_min) + " (" +
                        std::string(to_string(r.lower_reason)) + " at i = " + std::to_string(r.lower_index) + ")",
                    "t");
    }
    if (t > r.t_max + endpoint_slack(r.t_max)) {
        throw Error(ErrorCode::OutOfRange,
                    "t = " + format_double(t) + " is above t_max = " + format_double(r.t_max) + " (" +
                        std::string(to_string(r.upper_reason)) + " at j = " + std::to_string(r.upper_index) + ")",
                    "t");
    }
}

// a - b, with differences at rounding level of the operands set to zero so
// that flat states come out exactly flat.
double radicand(double a, double b) {
    const double r = a - b;
    return std::abs(r) <= 1e-14 * std::max(std::abs(a), std::abs(b)) ? 0.0 : r;
}

double signed_sqrt_step(double delta, double radicand) {
    const double root = std::sqrt(std::max(0.0, radicand));
    return delta > 0 ? root : -root;
}

// Heights after deformation: (Delta z)^2 - t (Delta F)^2 under the root.
std::vector<double> deformed_heights(const std::vector<double>& z, const std::vector<double>& dF, double t) {
    std::vector<double> out(z.size());
    out[0] = z[0];
    for (std::size_t j = 1; j < z.size(); ++j) {
        const double dz = z[j] - z[j - 1];
        out[j] = out[j - 1] + signed_sqrt_step(dz, radicand(dz * dz, t * dF[j - 1] * dF[j - 1]));
    }
    return out;
}

double clamped_asin(double x) { return std::asin(std::clamp(x, -1.0, 1.0)); }

}  // namespace

std::string_view to_string(BlockingReason reason) {
    switch (reason) {
        case BlockingReason::ProfileFlattening: return "ProfileFlattening";
        case BlockingReason::TrajectoryFlattening: return "TrajectoryFlattening";
        case BlockingReason::Unbounded: return "Unbounded";
    }
    return "Unbounded";
}

bool ParameterRange::contains(double t) const {
    return std::isfinite(t) && t >= t_min - endpoint_slack(t_min) && t <= t_max + endpoint_slack(t_max);
}

ParameterRange parameter_range(const DesignData& design) {
    const DerivedQuantities q = derive(design);
    ParameterRange r;
    for (std::size_t i = 1; i <= design.m(); ++i) {
        const double ce = q.C[i - 1] * std::cos(q.eta[i - 1]);
        const double ct = q.C[i] * std::cos(q.theta[i - 1]);
        const double bound = std::max(-ce * ce, -ct * ct);
        if (r.lower_reason == BlockingReason::Unbounded || bound > r.t_min) {
            r.t_min = bound;
            r.lower_reason = BlockingReason::ProfileFlattening;
            r.lower_index = i;
        }
    }
    for (std::size_t j = 1; j <= design.n(); ++j) {
        const double df = design.f0[j - 1];
        if (df == 0.0) continue;
        const double ratio = (design.z[j] - design.z[j - 1]) / df;
        const double bound = ratio * ratio;
        if (bound < r.t_max) {
            r.t_max = bound;
            r.upper_reason = BlockingReason::TrajectoryFlattening;
            r.upper_index = j;
        }
    }
    return r;
}

DeformationState deformation_state(const DesignData& design, double t) {
    const DerivedQuantities q = derive(design);
    require_in_range(parameter_range(design), t);
    const std::size_t m = design.m();
    DeformationState s;
    s.t = t;
    s.Ct.resize(m + 1);
    s.k.resize(m + 1);
    for (std::size_t i = 0; i <= m; ++i) {
        s.Ct[i] = std::sqrt(q.C[i] * q.C[i] + t);
        s.k[i] = s.Ct[i] / q.C[i];
    }
    s.eta_t.resize(m);
    s.theta_t.resize(m);
    s.psi_t.resize(m);
    s.phi_t.assign(m + 1, 0.0);
    for (std::size_t i = 1; i <= m; ++i) {
        const double eta = q.eta[i - 1];
        const double theta = q.theta[i - 1];
        const double ce = q.C[i - 1] * std::cos(eta);
        const double ct = q.C[i] * std::cos(theta);
        // sin eta(t) = C_{i-1} sin eta / C_{i-1}(t); the cosine is sqrt(C^2 cos^2 + t) / C(t).
        s.eta_t[i - 1] = std::atan2(q.C[i - 1] * std::sin(eta), std::sqrt(std::max(0.0, radicand(ce * ce, -t))));
        s.theta_t[i - 1] = std::atan2(q.C[i] * std::sin(theta), std::sqrt(std::max(0.0, radicand(ct * ct, -t))));
        s.psi_t[i - 1] = s.phi_t[i - 1] + s.eta_t[i - 1];
        s.phi_t[i] = s.psi_t[i - 1] + s.theta_t[i - 1];
    }
    s.z_t = deformed_heights(design.z, design.f0, t);
    return s;
}

THedron deform(const DesignData& design, double t) {
    const DeformationState s = deformation_state(design, t);
    const DerivedQuantities q = derive(design);
    const std::size_t m = design.m();
    const std::size_t n = design.n();
    THedron out;
    out.points = Grid<Vec3>(m + 1, n + 1);
    Vec2 base = Vec2::Zero();
    for (std::size_t i = 0; i <= m; ++i) {
        if (i > 0) base += design.g0[i - 1] * rot90(unit_direction(s.psi_t[i - 1]));
        const Vec2 dir = unit_direction(s.phi_t[i]);
        for (std::size_t j = 0; j <= n; ++j) {
            const Vec2 p = base + s.Ct[i] * q.F[j] * dir;
            out.points(i, j) = Vec3(p.x(), p.y(), s.z_t[j]);
        }
    }
    return out;
}

// ---- translational ----------------------------------------------------------

double general_from_translational(double t_translational) { return std::expm1(2.0 * t_translational); }

double translational_from_general(double t_general) { return 0.5 * std::log1p(t_general); }

ParameterRange translational_range(const TranslationalData& data) {
    validate_translational(data);
    ParameterRange r;
    for (std::size_t i = 1; i <= data.m(); ++i) {
        const double dx = data.x_row[i] - data.x_row[i - 1];
        if (dx == 0.0) continue;
        const double dy = data.y[i] - data.y[i - 1];
        const double bound = -0.5 * std::log1p((dy * dy) / (dx * dx));
        if (bound > r.t_min) {
            r.t_min = bound;
            r.lower_reason = BlockingReason::ProfileFlattening;
            r.lower_index = i;
        }
    }
    for (std::size_t j = 1; j <= data.n(); ++j) {
        const double dx = data.x_col[j] - data.x_col[j - 1];
        if (dx == 0.0) continue;
        const double dz = data.z[j] - data.z[j - 1];
        const double bound = 0.5 * std::log1p((dz * dz) / (dx * dx));
        if (bound < r.t_max) {
            r.t_max = bound;
            r.upper_reason = BlockingReason::TrajectoryFlattening;
            r.upper_index = j;
        }
    }
    return r;
}

TranslationalData deform_translational_data(const TranslationalData& data, double t) {
    require_in_range(translational_range(data), t);
    const double shrink = std::exp(-t);
    const double grow = std::exp(t);
    const double row_factor = -std::expm1(-2.0 * t);  // 1 - e^-2t
    const double col_factor = -std::expm1(2.0 * t);   // 1 - e^2t
    TranslationalData out = data;
    for (std::size_t i = 1; i <= data.m(); ++i) {
        const double dx = data.x_row[i] - data.x_row[i - 1];
        const double dy = data.y[i] - data.y[i - 1];
        out.x_row[i] = data.x_row[0] + shrink * (data.x_row[i] - data.x_row[0]);
        out.y[i] = out.y[i - 1] + signed_sqrt_step(dy, radicand(dy * dy, -row_factor * dx * dx));
    }
    for (std::size_t j = 1; j <= data.n(); ++j) {
        const double dx = data.x_col[j] - data.x_col[j - 1];
        const double dz = data.z[j] - data.z[j - 1];
        out.x_col[j] = data.x_col[0] + grow * (data.x_col[j] - data.x_col[0]);
        out.z[j] = out.z[j - 1] + signed_sqrt_step(dz, radicand(dz * dz, -col_factor * dx * dx));
    }
    return out;
}

THedron deform_translational(const TranslationalData& data, double t) {
    const TranslationalData d = deform_translational_data(data, t);
    THedron out;
    out.tag = SurfaceClass::translational;
    out.points = Grid<Vec3>(d.m() + 1, d.n() + 1);
    for (std::size_t i = 0; i <= d.m(); ++i)
        for (std::size_t j = 0; j <= d.n(); ++j)
            out.points(i, j) = Vec3(d.x_row[i] + d.x_col[j] - d.x_col[0], d.y[i], d.z[j]);
    return out;
}

// ---- Miura-ori ---------------------------------------------------------------

MiuraFlatParameters miura_flat_parameters(double a, double b, double c, double d) {
    if (!(a > 0) || !(b > 0) || !(c > 0) || !(d >= 0)) {
        throw Error(ErrorCode::InvalidArgument, "Miura parameters must be positive (d nonnegative)");
    }
    return {std::log(c / std::hypot(b, c)), std::log(std::hypot(a, d) / a)};
}

MiuraParameters miura_parameters_at(const MiuraParameters& p, double t) {
    const MiuraFlatParameters flat = miura_flat_parameters(p.a, p.b, p.c, p.d);
    ParameterRange r;
    r.t_min = flat.t_minus;
    r.t_max = flat.t_plus;
    r.lower_reason = BlockingReason::ProfileFlattening;
    r.upper_reason = BlockingReason::TrajectoryFlattening;
    r.lower_index = r.upper_index = 1;
    require_in_range(r, t);
    MiuraParameters out = p;
    out.a = std::exp(t) * p.a;
    out.b = std::sqrt(std::max(0.0, radicand(p.b * p.b, std::expm1(-2.0 * t) * p.c * p.c)));
    out.c = std::exp(-t) * p.c;
    out.d = std::sqrt(std::max(0.0, radicand(p.d * p.d, std::expm1(2.0 * t) * p.a * p.a)));
    return out;
}

THedron deform_miura(const MiuraParameters& p, double t) {
    THedron out = deform_translational(miura_data(p), t);
    out.tag = SurfaceClass::miura;
    return out;
}

// ---- molding, axial, revolution --------------------------------------------

THedron deform_molding(const DesignData& design, double t) {
    const DerivedQuantities q = derive(design);
    for (std::size_t i = 0; i < design.m(); ++i) {
        if (std::abs(q.theta[i] - q.eta[i]) > kAngleTolerance) {
            throw Error(ErrorCode::NotMolding, "psi_" + std::to_string(i + 1) + " is not the mean of phi_" +
                                                   std::to_string(i) + " and phi_" + std::to_string(i + 1),
                        "psi[" + std::to_string(i) + "]");
        }
    }
    require_in_range(parameter_range(design), t);
    const std::size_t m = design.m();
    const std::size_t n = design.n();
    const double scale = std::sqrt(1.0 + t);
    const std::vector<double> z = deformed_heights(design.z, design.f0, t);
    THedron out;
    out.tag = SurfaceClass::molding;
    out.points = Grid<Vec3>(m + 1, n + 1);
    Vec2 base = Vec2::Zero();
    double phi = 0.0;
    for (std::size_t i = 0; i <= m; ++i) {
        if (i > 0) {
            const double eta = clamped_asin(std::sin(q.eta[i - 1]) / scale);
            base += design.g0[i - 1] * rot90(unit_direction(phi + eta));
            phi += 2.0 * eta;
        }
        const Vec2 dir = unit_direction(phi);
        for (std::size_t j = 0; j <= n; ++j) {
            const Vec2 p = base + scale * q.F[j] * dir;
            out.points(i, j) = Vec3(p.x(), p.y(), z[j]);
        }
    }
    return out;
}

THedron deform_axial(const AxialDesign& axial, double t) {
    build_axial(axial);  // validates the axial data
    const DesignData& d = axial.design;
    const DerivedQuantities q = derive(d);
    require_in_range(parameter_range(d), t);
    const std::size_t m = d.m();
    const std::size_t n = d.n();
    const std::vector<double> z = deformed_heights(d.z, d.f0, t);
    THedron out;
    out.tag = SurfaceClass::axial;
    out.points = Grid<Vec3>(m + 1, n + 1);
    double phi = 0.0;
    for (std::size_t i = 0; i <= m; ++i) {
        const double Ct = std::sqrt(q.C[i] * q.C[i] + t);
        if (i > 0) {
            const double Cprev = std::sqrt(q.C[i - 1] * q.C[i - 1] + t);
            phi += clamped_asin(q.C[i - 1] * std::sin(q.eta[i - 1]) / Cprev) +
                   clamped_asin(q.C[i] * std::sin(q.theta[i - 1]) / Ct);
        }
        for (std::size_t j = 0; j <= n; ++j) {
            const double r = Ct * (axial.f00 + q.F[j]);
            out.points(i, j) = Vec3(r * std::cos(phi), r * std::sin(phi), z[j]);
        }
    }
    return out;
}

THedron deform_revolution(const RevolutionData& data, double t) {
    const AxialDesign axial = revolution_to_axial(data);
    require_in_range(parameter_range(axial.design), t);
    std::vector<double> dF(data.n());
    for (std::size_t j = 1; j <= data.n(); ++j) dF[j - 1] = data.F[j] - data.F[j - 1];
    const std::vector<double> z = deformed_heights(data.z, dF, t);
    const double scale = std::sqrt(1.0 + t);
    THedron out;
    out.tag = SurfaceClass::revolution;
    out.points = Grid<Vec3>(data.m() + 1, data.n() + 1);
    double phi = 0.0;
    double phi_prev = 0.0;
    for (std::size_t i = 0; i <= data.m(); ++i) {
        if (i > 0) {
            const double eta = 0.5 * (data.phi[i - 1] - phi_prev);
            phi += 2.0 * clamped_asin(std::sin(eta) / scale);
            phi_prev = data.phi[i - 1];
        }
        for (std::size_t j = 0; j <= data.n(); ++j) {
            const double r = scale * data.F[j];
            out.points(i, j) = Vec3(r * std::cos(phi), r * std::sin(phi), z[j]);
        }
    }
    return out;
}

// ---- parallel pairs -----------------------------------------------------------

DesignData parallel_axial(const DesignData& design) {
    DesignData out = design;
    out.g0 = axial_g_sequence(design, design.g0[0]);
    return out;
}

double max_edge_angle(const THedron& a, const THedron& b) {
    if (!a.points.same_shape(b.points)) throw Error(ErrorCode::ShapeMismatch, "surfaces differ in grid shape");
    double worst = 0.0;
    auto visit = [&](const Vec3& u, const Vec3& v) {
        if (u.norm() == 0.0 || v.norm() == 0.0) return;
        worst = std::max(worst, std::atan2(u.cross(v).norm(), std::abs(u.dot(v))));
    };
    const Grid<Vec3>& p = a.points;
    const Grid<Vec3>& q = b.points;
    for (std::size_t i = 0; i < p.rows(); ++i) {
        for (std::size_t j = 0; j < p.cols(); ++j) {
            if (j > 0) visit(p(i, j) - p(i, j - 1), q(i, j) - q(i, j - 1));
            if (i > 0) visit(p(i, j) - p(i - 1, j), q(i, j) - q(i - 1, j));
        }
    }
    return worst;
}

bool is_parallel(const THedron& a, const THedron& b, double tol) { return max_edge_angle(a, b) <= tol; }

}  // namespace thedra
