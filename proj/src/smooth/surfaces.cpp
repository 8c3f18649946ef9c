#include "thedra/smooth/surfaces.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "thedra/error.hpp"
#include "thedra/metrology.hpp"

namespace thedra::smooth {

namespace {

constexpr std::size_t kCheckSamples = 257;

void require_shared_domain(const ScalarFunction& a, const ScalarFunction& b, const char* name) {
    if (!a || !b) throw Error(ErrorCode::InvalidArgument, std::string("missing function next to ") + name, name);
    if (!(a.domain() == b.domain()))
        throw Error(ErrorCode::InvalidArgument, std::string(name) + " must share the parameter domain", name);
}

Vec2 direction(double angle) { return {std::cos(angle), std::sin(angle)}; }
Vec2 normal_direction(double angle) { return {-std::sin(angle), std::cos(angle)}; }

template <typename F>
bool constant_sign(const Interval& domain, F&& value, double& sign) {
    bool positive = false, negative = false;
    double largest = 0.0;
    for (double x : linspace(domain, kCheckSamples)) {
        const double v = value(x);
        positive = positive || v > 0;
        negative = negative || v < 0;
        if (std::abs(v) > std::abs(largest)) largest = v;
    }
    sign = largest >= 0 ? 1.0 : -1.0;
    return !(positive && negative);
}

ScalarFunction shifted(const ScalarFunction& f, double offset) {
    return ScalarFunction::callable([f, offset](double x) { return f(x) - offset; }, f.domain(),
                                    [f](double x) { return f.derivative(x); });
}

}  // namespace

FundamentalForm fundamental_form(const Partials& p) {
    return {p.su.squaredNorm(), p.su.dot(p.sv), p.sv.squaredNorm()};
}

// ---- translational ----------------------------------------------------------

Vec3 TranslationalSurface::evaluate(double u, double v) const { return {x(u) + f(v), y(u), z(v)}; }

Partials TranslationalSurface::partials(double u, double v) const {
    return {Vec3(x.derivative(u), y.derivative(u), 0.0), Vec3(f.derivative(v), 0.0, z.derivative(v))};
}

// ---- molding ---------------------------------------------------------------

MoldingSurface::MoldingSurface(ScalarFunction g_, ScalarFunction psi_, ScalarFunction f_, ScalarFunction z_)
    : g(std::move(g_)), psi(std::move(psi_)), f(std::move(f_)), z(std::move(z_)) {
    require_shared_domain(g, psi, "psi");
    require_shared_domain(f, z, "z");
    const ScalarFunction gg = g, pp = psi;
    gamma_x_ = ScalarFunction::integral([gg, pp](double u) { return -gg(u) * std::sin(pp(u)); }, g.domain());
    gamma_y_ = ScalarFunction::integral([gg, pp](double u) { return gg(u) * std::cos(pp(u)); }, g.domain());
}

Vec2 MoldingSurface::gamma(double u) const { return {gamma_x_(u), gamma_y_(u)}; }

Vec3 MoldingSurface::evaluate(double u, double v) const {
    const Vec2 p = gamma(u) + f(v) * direction(psi(u));
    return {p.x(), p.y(), z(v)};
}

Partials MoldingSurface::partials(double u, double v) const {
    const double a = psi(u);
    const Vec2 su = (g(u) + f(v) * psi.derivative(u)) * normal_direction(a);
    const Vec2 sv = f.derivative(v) * direction(a);
    return {Vec3(su.x(), su.y(), 0.0), Vec3(sv.x(), sv.y(), z.derivative(v))};
}

// ---- axial / revolution ----------------------------------------------------

Vec3 AxialSurface::evaluate(double u, double v) const {
    const Vec2 p = f(v) * c(u) * direction(phi(u));
    return {p.x(), p.y(), z(v)};
}

Partials AxialSurface::partials(double u, double v) const {
    const double a = phi(u);
    const double r = c(u);
    const Vec2 su = f(v) * (c.derivative(u) * direction(a) + r * phi.derivative(u) * normal_direction(a));
    const Vec2 sv = f.derivative(v) * r * direction(a);
    return {Vec3(su.x(), su.y(), 0.0), Vec3(sv.x(), sv.y(), z.derivative(v))};
}

Vec3 RevolutionSurface::evaluate(double u, double v) const {
    const Vec2 p = f(v) * direction(phi(u));
    return {p.x(), p.y(), z(v)};
}

Partials RevolutionSurface::partials(double u, double v) const {
    const double a = phi(u);
    const Vec2 su = f(v) * phi.derivative(u) * normal_direction(a);
    const Vec2 sv = f.derivative(v) * direction(a);
    return {Vec3(su.x(), su.y(), 0.0), Vec3(sv.x(), sv.y(), z.derivative(v))};
}

// ---- general ------------------------------------------------------------------

SmoothSpec::SmoothSpec(ScalarFunction g_, ScalarFunction psi_, ScalarFunction c_, ScalarFunction phi_,
                       ScalarFunction f_, ScalarFunction z_)
    : g(std::move(g_)), psi(std::move(psi_)), c(std::move(c_)), phi(std::move(phi_)), f(std::move(f_)), z(std::move(z_)) {
    require_shared_domain(g, psi, "psi");
    require_shared_domain(g, c, "c");
    require_shared_domain(g, phi, "phi");
    require_shared_domain(f, z, "z");
    const ScalarFunction gg = g, pp = psi;
    gamma_x_ = ScalarFunction::integral([gg, pp](double u) { return -gg(u) * std::sin(pp(u)); }, g.domain());
    gamma_y_ = ScalarFunction::integral([gg, pp](double u) { return gg(u) * std::cos(pp(u)); }, g.domain());
}

Vec2 SmoothSpec::gamma(double u) const { return {gamma_x_(u), gamma_y_(u)}; }

Vec2 SmoothSpec::xi(double u) const { return c(u) * direction(phi(u)); }

Vec2 SmoothSpec::xi_derivative(double u) const {
    const double a = phi(u);
    return c.derivative(u) * direction(a) + c(u) * phi.derivative(u) * normal_direction(a);
}

double SmoothSpec::lambda(double u) const { return xi_derivative(u).dot(normal_direction(psi(u))) / g(u); }

Vec3 SmoothSpec::evaluate(double u, double v) const {
    const Vec2 p = gamma(u) + f(v) * xi(u);
    return {p.x(), p.y(), z(v)};
}

Partials SmoothSpec::partials(double u, double v) const {
    const Vec2 su = g(u) * normal_direction(psi(u)) + f(v) * xi_derivative(u);
    const Vec2 sv = f.derivative(v) * xi(u);
    return {Vec3(su.x(), su.y(), 0.0), Vec3(sv.x(), sv.y(), z.derivative(v))};
}

// ---- variant helpers --------------------------------------------------------

std::string_view class_name(const Surface& s) {
    static constexpr std::string_view names[] = {"translational", "molding", "axial", "revolution", "general"};
    return names[s.index()];
}

Interval u_domain(const Surface& s) {
    return std::visit(
        [](const auto& x) -> Interval {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, TranslationalSurface>) return x.x.domain();
            else if constexpr (std::is_same_v<T, MoldingSurface>) return x.g.domain();
            else if constexpr (std::is_same_v<T, AxialSurface>) return x.c.domain();
            else if constexpr (std::is_same_v<T, RevolutionSurface>) return x.phi.domain();
            else return x.g.domain();
        },
        s);
}

Interval v_domain(const Surface& s) {
    return std::visit([](const auto& x) { return x.f.domain(); }, s);
}

Vec3 evaluate(const Surface& s, double u, double v) {
    return std::visit([&](const auto& x) { return x.evaluate(u, v); }, s);
}

Partials partials(const Surface& s, double u, double v) {
    return std::visit([&](const auto& x) { return x.partials(u, v); }, s);
}

FundamentalForm first_fundamental_form(const Surface& s, double u, double v) {
    return fundamental_form(partials(s, u, v));
}

// ---- conversions --------------------------------------------------------------

SmoothSpec to_spec(const TranslationalSurface& s) {
    const Interval U = s.x.domain();
    const ScalarFunction x = s.x, y = s.y;
    double sign = 1.0;
    constant_sign(U, [&](double u) { return y.derivative(u); }, sign);
    auto g = ScalarFunction::callable([x, y, sign](double u) { return sign * std::hypot(x.derivative(u), y.derivative(u)); }, U);
    auto psi = ScalarFunction::callable(
        [x, y, sign](double u) { return std::atan2(-sign * x.derivative(u), sign * y.derivative(u)); }, U);
    const Interval V = s.f.domain();
    return SmoothSpec(g, psi, ScalarFunction::constant(1.0, U), ScalarFunction::constant(0.0, U),
                      shifted(s.f, s.f(V.lo)), shifted(s.z, s.z(V.lo)));
}

namespace {

SmoothSpec axial_like_to_spec(const ScalarFunction& c, const ScalarFunction& phi, const ScalarFunction& f,
                              const ScalarFunction& z) {
    const Interval U = c.domain();
    double sign = 1.0;
    if (!constant_sign(U, [&](double u) { return phi.derivative(u); }, sign))
        throw Error(ErrorCode::InvalidArgument, "phi' changes sign", "phi");
    for (double u : linspace(U, kCheckSamples))
        if (phi.derivative(u) == 0.0) throw Error(ErrorCode::InvalidArgument, "phi' vanishes", "phi");
    const Interval V = f.domain();
    const double f0 = f(V.lo);
    if (f0 == 0.0) throw Error(ErrorCode::AxisDegenerate, "the initial trajectory lies on the axis", "f");
    auto eta = [c, phi](double u) { return std::atan(c.derivative(u) / (c(u) * phi.derivative(u))); };
    auto psi = ScalarFunction::callable([phi, eta](double u) { return phi(u) - eta(u); }, U);
    auto g = ScalarFunction::callable(
        [c, phi, eta, f0](double u) { return f0 * c(u) * phi.derivative(u) / std::cos(eta(u)); }, U);
    return SmoothSpec(g, psi, c, phi, shifted(f, f0), shifted(z, z(V.lo)));
}

}  // namespace

SmoothSpec to_spec(const AxialSurface& s) { return axial_like_to_spec(s.c, s.phi, s.f, s.z); }

SmoothSpec to_spec(const Surface& s) {
    return std::visit(
        [](const auto& x) -> SmoothSpec {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, TranslationalSurface>) {
                return to_spec(x);
            } else if constexpr (std::is_same_v<T, MoldingSurface>) {
                const Interval V = x.f.domain();
                const double f0 = x.f(V.lo);
                const ScalarFunction g = x.g, psi = x.psi;
                auto g_offset = ScalarFunction::callable([g, psi, f0](double u) { return g(u) + f0 * psi.derivative(u); },
                                                         g.domain());
                return SmoothSpec(g_offset, psi, ScalarFunction::constant(1.0, g.domain()), psi, shifted(x.f, f0),
                                  shifted(x.z, x.z(V.lo)));
            } else if constexpr (std::is_same_v<T, AxialSurface>) {
                return to_spec(x);
            } else if constexpr (std::is_same_v<T, RevolutionSurface>) {
                return axial_like_to_spec(ScalarFunction::constant(1.0, x.phi.domain()), x.phi, x.f, x.z);
            } else {
                return x;
            }
        },
        s);
}

// ---- validation ---------------------------------------------------------------

double compatibility_residual(const SmoothSpec& s, std::size_t samples) {
    double worst = 0.0;
    for (double u : linspace(s.g.domain(), samples)) {
        const double eta = s.eta(u);
        const double dc = s.c.derivative(u);
        const double cphi = s.c(u) * s.phi.derivative(u);
        const double scale = std::max({std::abs(dc), std::abs(cphi), 1e-300});
        worst = std::max(worst, std::abs(dc * std::cos(eta) - cphi * std::sin(eta)) / scale);
    }
    return worst;
}

std::vector<SpecIssue> check_spec(const SmoothSpec& s) {
    std::vector<SpecIssue> issues;
    const Interval U = s.g.domain();
    const Interval V = s.f.domain();
    const std::vector<double> us = linspace(U, kCheckSamples);
    const std::vector<double> vs = linspace(V, kCheckSamples);

    double f_scale = 0.0;
    for (double v : vs) f_scale = std::max(f_scale, std::abs(s.f(v)));
    if (std::abs(s.f(V.lo)) > 1e-12 * std::max(1.0, f_scale))
        issues.push_back({1, V.lo, "f(v0) must be 0"});

    // Windows of one eighth of the domain, shifted by a sixteenth.
    const std::size_t window = (kCheckSamples - 1) / 8;
    const std::size_t stride = window / 2;
    for (std::size_t start = 0; start + window < kCheckSamples; start += stride) {
        Eigen::MatrixXd A(window + 1, 3);
        for (std::size_t k = 0; k <= window; ++k) {
            const double v = vs[start + k];
            A(k, 0) = s.f(v);
            A(k, 1) = s.z(v);
            A(k, 2) = 1.0;
        }
        for (int col = 0; col < 3; ++col) {
            const double norm = A.col(col).norm();
            if (norm > 0) A.col(col) /= norm;
        }
        const double gram = (A.transpose() * A).determinant();
        if (!(gram > 1e-10)) {
            issues.push_back({2, vs[start], "f and z are affinely dependent near v = " + std::to_string(vs[start])});
            break;
        }
    }

    for (double v : vs) {
        if (s.f.derivative(v) == 0.0 && s.z.derivative(v) == 0.0) {
            issues.push_back({3, v, "(f', z') vanishes at v = " + std::to_string(v)});
            break;
        }
    }

    for (std::size_t start = 0; start + window < kCheckSamples; start += stride) {
        double largest = 0.0;
        for (std::size_t k = 0; k <= window; ++k) largest = std::max(largest, std::abs(s.psi.derivative(us[start + k])));
        if (!(largest > 1e-10)) {
            issues.push_back({4, us[start], "gamma is straight near u = " + std::to_string(us[start])});
            break;
        }
    }

    for (double u : us) {
        if (!(std::abs(s.eta(u)) < kPi / 2)) {
            issues.push_back({5, u, "|eta| >= pi/2 at u = " + std::to_string(u)});
            break;
        }
    }

    const double drift = compatibility_residual(s, kCheckSamples);
    if (drift > 1e-8) issues.push_back({6, 0.0, "c' cos eta - c phi' sin eta deviates by " + std::to_string(drift)});

    for (double u : us) {
        const double lambda = s.lambda(u);
        bool singular = false;
        for (double v : vs) {
            if (std::abs(1.0 + s.f(v) * lambda) <= 1e-10) {
                issues.push_back({7, u, "sigma_u vanishes at u = " + std::to_string(u) + ", v = " + std::to_string(v)});
                singular = true;
                break;
            }
        }
        if (singular) break;
    }
    for (double u : us) {
        if (s.g(u) == 0.0) {
            issues.push_back({7, u, "g vanishes at u = " + std::to_string(u)});
            break;
        }
    }
    return issues;
}

void validate_spec(const SmoothSpec& s) {
    const std::vector<SpecIssue> issues = check_spec(s);
    if (issues.empty()) return;
    const SpecIssue& first = issues.front();
    static constexpr const char* fields[] = {"", "f", "z", "z", "psi", "phi", "c", "g"};
    throw Error(first.condition == 6 ? ErrorCode::CompatibilityDrift : ErrorCode::InvalidArgument, first.message,
                fields[first.condition]);
}

ScalarFunction reconstruct_c(const ScalarFunction& phi, const ScalarFunction& eta, double c0) {
    const ScalarFunction log_ratio = ScalarFunction::integral(
        [phi, eta](double u) { return phi.derivative(u) * std::tan(eta(u)); }, phi.domain());
    return ScalarFunction::callable([log_ratio, c0](double u) { return c0 * std::exp(log_ratio(u)); }, phi.domain(),
                                    [log_ratio, c0](double u) { return c0 * std::exp(log_ratio(u)) * log_ratio.derivative(u); });
}

SampledGrid sample_to_grid(const Surface& s, std::size_t m, std::size_t n) {
    if (m == 0 || n == 0) throw Error(ErrorCode::InvalidArgument, "grid needs at least one quad", m == 0 ? "m" : "n");
    const std::vector<double> us = linspace(u_domain(s), m + 1);
    const std::vector<double> vs = linspace(v_domain(s), n + 1);
    SampledGrid out;
    out.points = Grid<Vec3>(m + 1, n + 1);
    for (std::size_t i = 0; i <= m; ++i)
        for (std::size_t j = 0; j <= n; ++j) out.points(i, j) = evaluate(s, us[i], vs[j]);
    out.planarity = planarity(out.points);
    return out;
}

}  // namespace thedra::smooth
