#include "thedra/smooth/deformation.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "thedra/error.hpp"

namespace thedra::smooth {

namespace {

constexpr std::size_t kScanSamples = 1025;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Minimum {
    double value = kInf;
    double at = 0.0;
};

// Global minimum by a dense scan refined with Brent's method around the best
// sample.
template <typename F>
Minimum minimize(const Interval& domain, F&& f) {
    const std::vector<double> xs = linspace(domain, kScanSamples);
    Minimum best;
    std::size_t best_k = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const double v = f(xs[k]);
        if (v < best.value) {
            best = {v, xs[k]};
            best_k = k;
        }
    }
    if (!std::isfinite(best.value)) return best;
    const double lo = xs[best_k == 0 ? 0 : best_k - 1];
    const double hi = xs[std::min(best_k + 1, xs.size() - 1)];
    const auto refined = boost::math::tools::brent_find_minima([&](double x) { return f(x); }, lo, hi, 52);
    if (refined.second < best.value) best = {refined.second, refined.first};
    return best;
}

double ratio_squared(double num, double den) {
    if (den == 0.0) return kInf;
    const double r = num / den;
    return r * r;
}

double sgn(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }

std::string format(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void require_parameter(const SmoothRange& r, double t, Sidedness sidedness) {
    if (!std::isfinite(t)) throw Error(ErrorCode::InvalidArgument, "t must be finite", "t");
    if (sidedness == Sidedness::two_sided && r.one_sided()) {
        throw Error(ErrorCode::OneSidedOnly,
                    "the deformation only exists for t in [" + format(r.t_min) + ", " + format(r.t_max) + "]", "t");
    }
    if (r.contains(t)) return;
    const bool below = t < r.t_max;
    const double at = below ? r.lower_at : r.upper_at;
    const BlockingReason reason = below ? r.lower_reason : r.upper_reason;
    throw Error(ErrorCode::RadicandNegative,
                "t = " + format(t) + " outside [" + format(r.t_min) + ", " + format(r.t_max) + "]: radicand negative near " +
                    (reason == BlockingReason::TrajectoryFlattening ? "v = " : "u = ") + format(at) + " (" +
                    std::string(to_string(reason)) + ")",
                "t");
}

void require_monotone_phi(const ScalarFunction& phi) {
    bool positive = false, negative = false;
    for (double u : linspace(phi.domain(), 257)) {
        const double d = phi.derivative(u);
        positive = positive || d > 1e-12;
        negative = negative || d < -1e-12;
    }
    if (positive && negative) throw Error(ErrorCode::InvalidArgument, "phi' changes sign", "phi");
}

// z^t = z(v0) + integral of sign(z') sqrt(z'^2 - t f'^2).
ScalarFunction deformed_height(const ScalarFunction& f, const ScalarFunction& z, double t) {
    return ScalarFunction::integral(
        [f, z, t](double v) {
            const double dz = z.derivative(v);
            const double df = f.derivative(v);
            return sgn(dz) * std::sqrt(std::max(0.0, dz * dz - t * df * df));
        },
        z.domain(), z(z.domain().lo));
}

// Lower bound -min c^2 cos^2 eta and upper bound min z'^2 / f'^2.
template <typename CosSquared>
SmoothRange additive_range(const Interval& U, CosSquared&& c2cos2, const ScalarFunction& f, const ScalarFunction& z) {
    SmoothRange r;
    const Minimum lower = minimize(U, c2cos2);
    r.t_min = -lower.value;
    r.lower_at = lower.at;
    r.lower_reason = BlockingReason::ProfileFlattening;
    r.lower_open = true;
    const Minimum upper = minimize(f.domain(), [&](double v) { return ratio_squared(z.derivative(v), f.derivative(v)); });
    if (std::isfinite(upper.value)) {
        r.t_max = upper.value;
        r.upper_at = upper.at;
        r.upper_reason = BlockingReason::TrajectoryFlattening;
    }
    return r;
}

}  // namespace

bool SmoothRange::contains(double t) const {
    const double lo_slack = 1e-12 * std::max(1.0, std::abs(t_min));
    const double hi_slack = 1e-12 * std::max(1.0, std::abs(t_max));
    const bool above_lower = lower_open ? t > t_min : t >= t_min - lo_slack;
    return std::isfinite(t) && above_lower && t <= t_max + hi_slack;
}

SmoothRange smooth_range(const Surface& surface) {
    return std::visit(
        [](const auto& s) -> SmoothRange {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, TranslationalSurface>) {
                SmoothRange r;
                // y'^2 + (1 - e^2t) x'^2 >= 0 and z'^2 + (1 - e^-2t) f'^2 >= 0.
                const Minimum up =
                    minimize(s.x.domain(), [&](double u) { return ratio_squared(s.y.derivative(u), s.x.derivative(u)); });
                if (std::isfinite(up.value)) {
                    r.t_max = 0.5 * std::log1p(up.value);
                    r.upper_at = up.at;
                    r.upper_reason = BlockingReason::ProfileFlattening;
                }
                const Minimum down =
                    minimize(s.f.domain(), [&](double v) { return ratio_squared(s.z.derivative(v), s.f.derivative(v)); });
                if (std::isfinite(down.value)) {
                    r.t_min = -0.5 * std::log1p(down.value);
                    r.lower_at = down.at;
                    r.lower_reason = BlockingReason::TrajectoryFlattening;
                }
                return r;
            } else if constexpr (std::is_same_v<T, MoldingSurface>) {
                SmoothRange r;
                const Minimum down =
                    minimize(s.f.domain(), [&](double v) { return ratio_squared(s.z.derivative(v), s.f.derivative(v)); });
                if (std::isfinite(down.value)) {
                    r.t_min = -0.5 * std::log1p(down.value);
                    r.lower_at = down.at;
                    r.lower_reason = BlockingReason::TrajectoryFlattening;
                }
                return r;
            } else if constexpr (std::is_same_v<T, AxialSurface>) {
                return additive_range(
                    s.c.domain(),
                    [&](double u) {
                        const double c = s.c(u), dc = s.c.derivative(u), dphi = s.phi.derivative(u);
                        const double den = c * c * dphi * dphi + dc * dc;
                        return den == 0.0 ? c * c : c * c * c * c * dphi * dphi / den;
                    },
                    s.f, s.z);
            } else if constexpr (std::is_same_v<T, RevolutionSurface>) {
                return additive_range(s.phi.domain(), [](double) { return 1.0; }, s.f, s.z);
            } else {
                return additive_range(
                    s.g.domain(),
                    [&](double u) {
                        const double c = s.c(u) * std::cos(s.eta(u));
                        return c * c;
                    },
                    s.f, s.z);
            }
        },
        surface);
}

namespace {

template <typename F>
void sign_changes(const Interval& domain, F&& derivative, char direction, std::vector<Crease>& out) {
    const std::vector<double> xs = linspace(domain, 513);
    double prev = derivative(xs[0]);
    for (std::size_t k = 1; k < xs.size(); ++k) {
        const double cur = derivative(xs[k]);
        if ((prev > 0 && cur < 0) || (prev < 0 && cur > 0)) {
            double a = xs[k - 1], b = xs[k];
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (a + b);
                ((derivative(mid) > 0) == (prev > 0) ? a : b) = mid;
            }
            out.push_back({direction, 0.5 * (a + b)});
        }
        if (cur != 0.0) prev = cur;
    }
}

}  // namespace

std::vector<Crease> crease_lines(const Surface& surface) {
    std::vector<Crease> out;
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, TranslationalSurface>)
                sign_changes(s.y.domain(), [&](double u) { return s.y.derivative(u); }, 'u', out);
            sign_changes(s.z.domain(), [&](double v) { return s.z.derivative(v); }, 'v', out);
        },
        surface);
    return out;
}

TranslationalSurface deform_translational_surface(const TranslationalSurface& s, double t, Sidedness sidedness) {
    require_parameter(smooth_range(s), t, sidedness);
    const double grow = std::exp(t);
    const double shrink = std::exp(-t);
    const double row = -std::expm1(2.0 * t);   // 1 - e^2t
    const double col = -std::expm1(-2.0 * t);  // 1 - e^-2t
    const ScalarFunction x = s.x, y = s.y, f = s.f, z = s.z;
    TranslationalSurface out;
    out.x = ScalarFunction::callable([x, grow](double u) { return grow * x(u); }, x.domain(),
                                     [x, grow](double u) { return grow * x.derivative(u); });
    out.f = ScalarFunction::callable([f, shrink](double v) { return shrink * f(v); }, f.domain(),
                                     [f, shrink](double v) { return shrink * f.derivative(v); });
    out.y = ScalarFunction::integral(
        [x, y, row](double u) {
            const double dx = x.derivative(u), dy = y.derivative(u);
            return sgn(dy) * std::sqrt(std::max(0.0, dy * dy + row * dx * dx));
        },
        y.domain(), y(y.domain().lo));
    out.z = ScalarFunction::integral(
        [f, z, col](double v) {
            const double df = f.derivative(v), dz = z.derivative(v);
            return sgn(dz) * std::sqrt(std::max(0.0, dz * dz + col * df * df));
        },
        z.domain(), z(z.domain().lo));
    return out;
}

MoldingSurface deform_molding_surface(const MoldingSurface& s, double t, Sidedness sidedness) {
    require_parameter(smooth_range(s), t, sidedness);
    const double grow = std::exp(t);
    const double shrink = std::exp(-t);
    const double col = -std::expm1(-2.0 * t);
    const ScalarFunction psi = s.psi, f = s.f, z = s.z;
    const double psi0 = psi(psi.domain().lo);
    auto psi_t = ScalarFunction::callable([psi, psi0, grow](double u) { return psi0 + grow * (psi(u) - psi0); },
                                          psi.domain(), [psi, grow](double u) { return grow * psi.derivative(u); });
    auto f_t = ScalarFunction::callable([f, shrink](double v) { return shrink * f(v); }, f.domain(),
                                        [f, shrink](double v) { return shrink * f.derivative(v); });
    auto z_t = ScalarFunction::integral(
        [f, z, col](double v) {
            const double df = f.derivative(v), dz = z.derivative(v);
            return sgn(dz) * std::sqrt(std::max(0.0, dz * dz + col * df * df));
        },
        z.domain(), z(z.domain().lo));
    return MoldingSurface(s.g, psi_t, f_t, z_t);
}

namespace {

// c^t = sqrt(c^2 + t) and phi^t with integrand
// sign(phi') sqrt(c^4 phi'^2 + t (c^2 phi'^2 + c'^2)) / (c^2 + t).
std::pair<ScalarFunction, ScalarFunction> deformed_profile_frame(const ScalarFunction& c, const ScalarFunction& phi,
                                                                 double t) {
    auto c_t = ScalarFunction::callable([c, t](double u) { return std::sqrt(c(u) * c(u) + t); }, c.domain(),
                                        [c, t](double u) { return c(u) * c.derivative(u) / std::sqrt(c(u) * c(u) + t); });
    auto phi_t = ScalarFunction::integral(
        [c, phi, t](double u) {
            const double cv = c(u), dc = c.derivative(u), dphi = phi.derivative(u);
            const double c2 = cv * cv;
            return sgn(dphi) * std::sqrt(std::max(0.0, c2 * c2 * dphi * dphi + t * (c2 * dphi * dphi + dc * dc))) /
                   (c2 + t);
        },
        phi.domain(), phi(phi.domain().lo));
    return {c_t, phi_t};
}

}  // namespace

AxialSurface deform_axial_surface(const AxialSurface& s, double t, Sidedness sidedness) {
    require_parameter(smooth_range(s), t, sidedness);
    require_monotone_phi(s.phi);
    auto [c_t, phi_t] = deformed_profile_frame(s.c, s.phi, t);
    return AxialSurface{c_t, phi_t, s.f, deformed_height(s.f, s.z, t)};
}

RevolutionSurface deform_revolution_surface(const RevolutionSurface& s, double t, Sidedness sidedness) {
    require_parameter(smooth_range(s), t, sidedness);
    const double scale = std::sqrt(1.0 + t);
    const ScalarFunction phi = s.phi, f = s.f;
    const double phi0 = phi(phi.domain().lo);
    auto phi_t = ScalarFunction::callable([phi, phi0, scale](double u) { return phi0 + (phi(u) - phi0) / scale; },
                                          phi.domain(), [phi, scale](double u) { return phi.derivative(u) / scale; });
    auto f_t = ScalarFunction::callable([f, scale](double v) { return scale * f(v); }, f.domain(),
                                        [f, scale](double v) { return scale * f.derivative(v); });
    return RevolutionSurface{phi_t, f_t, deformed_height(s.f, s.z, t)};
}

SmoothSpec deform_general_surface(const SmoothSpec& s, double t, Sidedness sidedness) {
    require_parameter(smooth_range(s), t, sidedness);
    require_monotone_phi(s.phi);
    auto [c_t, phi_t] = deformed_profile_frame(s.c, s.phi, t);
    const ScalarFunction c = s.c, phi = s.phi, psi = s.psi;
    const ScalarFunction phi_tt = phi_t;
    auto psi_t = ScalarFunction::callable(
        [c, phi, psi, phi_tt, t](double u) {
            const double eta = phi(u) - psi(u);
            const double cv = c(u);
            const double eta_t = std::atan2(cv * std::sin(eta), std::sqrt(std::max(0.0, cv * cv * std::cos(eta) * std::cos(eta) + t)));
            return phi_tt(u) - eta_t;
        },
        psi.domain());
    SmoothSpec out(s.g, psi_t, c_t, phi_t, s.f, deformed_height(s.f, s.z, t));
    const double drift = compatibility_residual(out, 65);
    if (drift > 1e-6) {
        throw Error(ErrorCode::CompatibilityDrift,
                    "deformed data violate c' cos eta = c phi' sin eta by " + format(drift), "c");
    }
    return out;
}

SmoothDeformation deform_surface(const Surface& surface, double t, Sidedness sidedness) {
    SmoothDeformation out{std::visit(
                              [&](const auto& s) -> Surface {
                                  using T = std::decay_t<decltype(s)>;
                                  if constexpr (std::is_same_v<T, TranslationalSurface>)
                                      return deform_translational_surface(s, t, sidedness);
                                  else if constexpr (std::is_same_v<T, MoldingSurface>)
                                      return deform_molding_surface(s, t, sidedness);
                                  else if constexpr (std::is_same_v<T, AxialSurface>)
                                      return deform_axial_surface(s, t, sidedness);
                                  else if constexpr (std::is_same_v<T, RevolutionSurface>)
                                      return deform_revolution_surface(s, t, sidedness);
                                  else
                                      return deform_general_surface(s, t, sidedness);
                              },
                              surface),
                          t,
                          {}};
    if (t != 0.0) out.creases = crease_lines(surface);
    return out;
}

// ---- parallel partners ---------------------------------------------------------

SmoothSpec smooth_parallel_partner(const SmoothSpec& s, const ScalarFunction& g_new, double mu) {
    if (!(g_new.domain() == s.g.domain()))
        throw Error(ErrorCode::NonParallelInput, "the new trajectory must share the parameter domain", "g");
    if (!(mu != 0.0) || !std::isfinite(mu)) throw Error(ErrorCode::InvalidArgument, "mu must be nonzero", "mu");
    for (double u : linspace(s.g.domain(), 257))
        if (g_new(u) == 0.0) throw Error(ErrorCode::NonParallelInput, "the new trajectory is singular at u = " + format(u), "g");
    const ScalarFunction f = s.f, z = s.z;
    auto f_new = ScalarFunction::callable([f, mu](double v) { return mu * f(v); }, f.domain(),
                                          [f, mu](double v) { return mu * f.derivative(v); });
    auto z_new = ScalarFunction::callable([z, mu](double v) { return mu * z(v); }, z.domain(),
                                          [z, mu](double v) { return mu * z.derivative(v); });
    return SmoothSpec(g_new, s.psi, s.c, s.phi, f_new, z_new);
}

SmoothSpec smooth_parallel_partner(const SmoothSpec& s, const ScalarFunction& x, const ScalarFunction& y, double mu) {
    if (!(x.domain() == s.g.domain()) || !(y.domain() == s.g.domain()))
        throw Error(ErrorCode::NonParallelInput, "the new trajectory must share the parameter domain", "gamma");
    const ScalarFunction psi = s.psi;
    for (double u : linspace(s.g.domain(), 257)) {
        const Vec2 tangent(x.derivative(u), y.derivative(u));
        const Vec2 along(std::cos(psi(u)), std::sin(psi(u)));
        if (std::abs(tangent.dot(along)) > 1e-8 * std::max(tangent.norm(), 1e-300)) {
            throw Error(ErrorCode::NonParallelInput, "the new trajectory is not parallel to gamma at u = " + format(u),
                        "gamma");
        }
    }
    auto g_new = ScalarFunction::callable(
        [x, y, psi](double u) { return -x.derivative(u) * std::sin(psi(u)) + y.derivative(u) * std::cos(psi(u)); },
        s.g.domain());
    return smooth_parallel_partner(s, g_new, mu);
}

SmoothSpec smooth_axial_partner(const SmoothSpec& s, double mu) {
    const SmoothSpec copy = s;
    for (double u : linspace(s.g.domain(), 257))
        if (s.phi.derivative(u) == 0.0)
            throw Error(ErrorCode::NonParallelInput, "phi' vanishes at u = " + format(u) + "; no axial partner", "phi");
    const ScalarFunction c = s.c, phi = s.phi, psi = s.psi;
    auto g_new = ScalarFunction::callable(
        [c, phi, psi](double u) { return c(u) * phi.derivative(u) / std::cos(phi(u) - psi(u)); }, s.g.domain());
    return smooth_parallel_partner(copy, g_new, mu);
}

double max_tangent_plane_angle(const Surface& a, const Surface& b, std::size_t k) {
    double worst = 0.0;
    for (double u : linspace(u_domain(a), k)) {
        for (double v : linspace(v_domain(a), k)) {
            const Partials pa = partials(a, u, v);
            const Partials pb = partials(b, u, v);
            const Vec3 na = pa.su.cross(pa.sv);
            const Vec3 nb = pb.su.cross(pb.sv);
            worst = std::max(worst, std::atan2(na.cross(nb).norm(), std::abs(na.dot(nb))));
        }
    }
    return worst;
}

}  // namespace thedra::smooth
