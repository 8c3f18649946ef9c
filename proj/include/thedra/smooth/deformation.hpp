#pragma once

#include <limits>
#include <vector>

#include "thedra/kinematics.hpp"
#include "thedra/smooth/surfaces.hpp"

namespace thedra::smooth {

// Parameter conventions: translational and molding surfaces use the
// exponential parameter (x -> e^t x, f -> e^-t f); axial, revolution and
// general surfaces the additive one (c -> sqrt(c^2 + t)). For |xi(u0)| = 1
// the two are related by 1 + t_additive = e^(-2 t_exponential).
struct SmoothRange {
    double t_min = -std::numeric_limits<double>::infinity();
    double t_max = std::numeric_limits<double>::infinity();
    BlockingReason lower_reason = BlockingReason::Unbounded;
    BlockingReason upper_reason = BlockingReason::Unbounded;
    double lower_at = 0.0;  // parameter (u or v) where the blocking radicand vanishes
    double upper_at = 0.0;
    // The lower end is open when the limiting radicand is c^2 + t itself.
    bool lower_open = false;

    bool contains(double t) const;
    bool one_sided() const { return t_min == 0.0 || t_max == 0.0; }
};

enum class Sidedness { any, two_sided };

struct Crease {
    char direction = 'v';  // 'u': along a u = const curve, 'v': along v = const
    double parameter = 0.0;
};

SmoothRange smooth_range(const Surface& s);

// Places where the deformation turns a smooth surface into a creased one: sign
// changes of y' (translational, u) and of z' (v).
std::vector<Crease> crease_lines(const Surface& s);

TranslationalSurface deform_translational_surface(const TranslationalSurface& s, double t,
                                                  Sidedness sidedness = Sidedness::any);
MoldingSurface deform_molding_surface(const MoldingSurface& s, double t, Sidedness sidedness = Sidedness::any);
AxialSurface deform_axial_surface(const AxialSurface& s, double t, Sidedness sidedness = Sidedness::any);
RevolutionSurface deform_revolution_surface(const RevolutionSurface& s, double t,
                                            Sidedness sidedness = Sidedness::any);
SmoothSpec deform_general_surface(const SmoothSpec& s, double t, Sidedness sidedness = Sidedness::any);

struct SmoothDeformation {
    Surface surface;
    double t = 0.0;
    std::vector<Crease> creases;
};

SmoothDeformation deform_surface(const Surface& s, double t, Sidedness sidedness = Sidedness::any);

// ---- parallel partners ---------------------------------------------------------

// Partner with trajectory speed g_new along the same normal directions psi and
// the profile scaled by mu.
SmoothSpec smooth_parallel_partner(const SmoothSpec& s, const ScalarFunction& g_new, double mu = 1.0);
// Partner along an explicit trajectory curve (x(u), y(u)); throws
// Error(NonParallelInput) when its tangent is not parallel to gamma'.
SmoothSpec smooth_parallel_partner(const SmoothSpec& s, const ScalarFunction& x, const ScalarFunction& y,
                                   double mu = 1.0);
// gamma' = xi: the parallel axial surface. Requires phi' != 0.
SmoothSpec smooth_axial_partner(const SmoothSpec& s, double mu = 1.0);

// Largest angle between the tangent planes of a and b over a k x k sample.
double max_tangent_plane_angle(const Surface& a, const Surface& b, std::size_t k = 10);

}  // namespace thedra::smooth
