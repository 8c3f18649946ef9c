#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <span>

#include "thedra/grid.hpp"

namespace thedra {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

inline constexpr double kPi = 3.14159265358979323846;

inline Vec2 unit_direction(double angle) { return {std::cos(angle), std::sin(angle)}; }

// Counter-clockwise rotation by pi/2.
inline Vec2 rot90(const Vec2& v) { return {-v.y(), v.x()}; }

inline double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

// Signed angle from a to b in (-pi, pi].
inline double signed_angle(const Vec2& a, const Vec2& b) {
    return std::atan2(cross2(a, b), a.dot(b));
}

double bbox_diagonal(std::span<const Vec2> points);
double bbox_diagonal(std::span<const Vec3> points);

inline double bbox_diagonal(const Grid<Vec3>& points) {
    return bbox_diagonal(std::span<const Vec3>(points.data()));
}
inline double bbox_diagonal(const Grid<Vec2>& points) {
    return bbox_diagonal(std::span<const Vec2>(points.data()));
}

// Area of the largest triangle spanned by any three of the points. Zero iff
// the points are collinear.
double largest_triangle_area(std::span<const Vec2> points);
double largest_triangle_area(std::span<const Vec3> points);

}  // namespace thedra
