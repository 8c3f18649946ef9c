#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "thedra/geometry.hpp"
#include "thedra/smooth/function.hpp"

namespace thedra::smooth {

struct Partials {
    Vec3 su;
    Vec3 sv;
};

struct FundamentalForm {
    double E = 0.0;
    double F = 0.0;
    double G = 0.0;
};

FundamentalForm fundamental_form(const Partials& p);

// sigma(u, v) = (x(u) + f(v), y(u), z(v)).
struct TranslationalSurface {
    ScalarFunction x, y;  // on U
    ScalarFunction f, z;  // on V

    Vec3 evaluate(double u, double v) const;
    Partials partials(double u, double v) const;
};

// sigma(u, v) = (gamma(u) + f(v) (cos psi, sin psi), z(v)) with
// gamma' = g (-sin psi, cos psi), gamma(u0) = 0.
class MoldingSurface {
public:
    MoldingSurface(ScalarFunction g, ScalarFunction psi, ScalarFunction f, ScalarFunction z);

    ScalarFunction g, psi, f, z;

    Vec2 gamma(double u) const;
    Vec3 evaluate(double u, double v) const;
    Partials partials(double u, double v) const;

private:
    ScalarFunction gamma_x_, gamma_y_;
};

// Axis through the origin: sigma(u, v) = (f(v) c(u) (cos phi, sin phi), z(v)).
struct AxialSurface {
    ScalarFunction c, phi;  // on U
    ScalarFunction f, z;    // on V

    Vec3 evaluate(double u, double v) const;
    Partials partials(double u, double v) const;
};

// sigma(u, v) = (f(v) (cos phi, sin phi), z(v)).
struct RevolutionSurface {
    ScalarFunction phi;   // on U
    ScalarFunction f, z;  // on V

    Vec3 evaluate(double u, double v) const;
    Partials partials(double u, double v) const;
};

// General T-surface sigma(u, v) = (gamma(u) + f(v) xi(u), z(v)) with
// gamma' = g (-sin psi, cos psi), gamma(u0) = 0 and xi = c (cos phi, sin phi).
// eta = phi - psi.
class SmoothSpec {
public:
    SmoothSpec(ScalarFunction g, ScalarFunction psi, ScalarFunction c, ScalarFunction phi, ScalarFunction f,
               ScalarFunction z);

    ScalarFunction g, psi, c, phi, f, z;

    double eta(double u) const { return phi(u) - psi(u); }
    Vec2 gamma(double u) const;
    Vec2 xi(double u) const;
    Vec2 xi_derivative(double u) const;
    // xi' = lambda gamma'.
    double lambda(double u) const;
    Vec3 evaluate(double u, double v) const;
    Partials partials(double u, double v) const;

private:
    ScalarFunction gamma_x_, gamma_y_;
};

using Surface = std::variant<TranslationalSurface, MoldingSurface, AxialSurface, RevolutionSurface, SmoothSpec>;

std::string_view class_name(const Surface& s);
Interval u_domain(const Surface& s);
Interval v_domain(const Surface& s);

// Throws Error(OutOfDomain) outside U x V.
Vec3 evaluate(const Surface& s, double u, double v);
Partials partials(const Surface& s, double u, double v);
FundamentalForm first_fundamental_form(const Surface& s, double u, double v);

// The same surface as a general spec, up to a translation that moves
// sigma(u0, v0) to the origin.
SmoothSpec to_spec(const Surface& s);

// Axial surfaces require phi' != 0 (eta is recovered from c'/(c phi')).
SmoothSpec to_spec(const AxialSurface& s);
SmoothSpec to_spec(const TranslationalSurface& s);

// ---- validation ---------------------------------------------------------------

struct SpecIssue {
    int condition = 0;  // 1..6 for the six defining conditions, 7 for regularity
    double location = 0.0;
    std::string message;
};

// Checks the defining conditions on 257 samples per parameter; affine
// independence of (f, z) and curvature of gamma are tested on every window of
// a domain eighth.
std::vector<SpecIssue> check_spec(const SmoothSpec& spec);
void validate_spec(const SmoothSpec& spec);

// Largest |c' cos eta - c phi' sin eta| / max(|c'|, |c phi'|, 1e-300) over the samples.
double compatibility_residual(const SmoothSpec& spec, std::size_t samples = 257);

// c(u) = c0 exp(integral of phi' tan eta).
ScalarFunction reconstruct_c(const ScalarFunction& phi, const ScalarFunction& eta, double c0);

// ---- grids ------------------------------------------------------------------------

struct SampledGrid {
    Grid<Vec3> points;  // (m+1) x (n+1), row i at u_i
    double planarity = 0.0;
};

SampledGrid sample_to_grid(const Surface& s, std::size_t m, std::size_t n);

}  // namespace thedra::smooth
