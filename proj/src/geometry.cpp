#include "thedra/geometry.hpp"
#include "thedra/error.hpp"
#include "thedra/thedron.hpp"

#include <algorithm>
#include <limits>

namespace thedra {

namespace {

template <typename V>
double diagonal_of(std::span<const V> points) {
    if (points.empty()) return 0.0;
    V lo = points.front();
    V hi = points.front();
    for (const auto& p : points) {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }
    return (hi - lo).norm();
}

}  // namespace

double bbox_diagonal(std::span<const Vec2> points) { return diagonal_of(points); }
double bbox_diagonal(std::span<const Vec3> points) { return diagonal_of(points); }

double largest_triangle_area(std::span<const Vec2> points) {
    double best = 0.0;
    const std::size_t k = points.size();
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b)
            for (std::size_t c = b + 1; c < k; ++c)
                best = std::max(best, 0.5 * std::abs(cross2(points[b] - points[a], points[c] - points[a])));
    return best;
}

double largest_triangle_area(std::span<const Vec3> points) {
    double best = 0.0;
    const std::size_t k = points.size();
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b)
            for (std::size_t c = b + 1; c < k; ++c)
                best = std::max(best, 0.5 * (points[b] - points[a]).cross(points[c] - points[a]).norm());
    return best;
}

std::string_view to_string(SurfaceClass tag) {
    switch (tag) {
        case SurfaceClass::general: return "general";
        case SurfaceClass::translational: return "translational";
        case SurfaceClass::molding: return "molding";
        case SurfaceClass::axial: return "axial";
        case SurfaceClass::revolution: return "revolution";
        case SurfaceClass::miura: return "miura";
    }
    return "general";
}

SurfaceClass surface_class_from_string(std::string_view name) {
    for (auto tag : {SurfaceClass::general, SurfaceClass::translational, SurfaceClass::molding,
                     SurfaceClass::axial, SurfaceClass::revolution, SurfaceClass::miura}) {
        if (to_string(tag) == name) return tag;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown surface class '" + std::string(name) + "'");
}

}  // namespace thedra
