#pragma once

#include <string_view>

#include "thedra/geometry.hpp"
#include "thedra/grid.hpp"

namespace thedra {

enum class SurfaceClass { general, translational, molding, axial, revolution, miura };

std::string_view to_string(SurfaceClass tag);
SurfaceClass surface_class_from_string(std::string_view name);

// Quad-surface with (m+1) x (n+1) vertices sigma_ij. Row i is the profile
// polygon sigma_i., column j the trajectory polygon sigma_.j.
struct THedron {
    Grid<Vec3> points;
    SurfaceClass tag = SurfaceClass::general;

    std::size_t m() const noexcept { return points.rows() - 1; }
    std::size_t n() const noexcept { return points.cols() - 1; }
    const Vec3& operator()(std::size_t i, std::size_t j) const { return points(i, j); }
};

}  // namespace thedra
