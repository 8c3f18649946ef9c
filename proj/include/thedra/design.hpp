#pragma once

#include <cstddef>
#include <vector>

#include "thedra/geometry.hpp"
#include "thedra/grid.hpp"
#include "thedra/thedron.hpp"

namespace thedra {

// Tolerances shared by the discrete modules.
inline constexpr double kAngleTolerance = 1e-10;       // radians
inline constexpr double kRelativeLengthTolerance = 1e-10;  // times bbox diagonal
inline constexpr double kCollinearAreaTolerance = 1e-10;   // times diagonal^2

// Generating data of a T-hedron in normal form: sigma_00 at the origin, L_0
// along +x, trajectory planes horizontal. phi_0 = 0 is implicit.
struct DesignData {
    std::vector<double> phi;  // phi_1..phi_m
    std::vector<double> psi;  // psi_1..psi_m
    std::vector<double> f0;   // f_01..f_0n, signed lengths along L_0
    std::vector<double> g0;   // g_10..g_m0, signed lengths along JM_i
    std::vector<double> z;    // z_0..z_n, z_0 = 0

    std::size_t m() const noexcept { return phi.size(); }
    std::size_t n() const noexcept { return f0.size(); }

    double phi_at(std::size_t i) const { return i == 0 ? 0.0 : phi[i - 1]; }

    bool operator==(const DesignData&) const = default;
};

struct DerivedQuantities {
    std::vector<double> eta;    // eta_1..eta_m
    std::vector<double> theta;  // theta_1..theta_m
    std::vector<double> c;      // c_1..c_m
    std::vector<double> C;      // C_0..C_m, C_0 = 1
    std::vector<double> F;      // F_0..F_n, F_0 = 0
};

struct Line2 {
    Vec2 point;
    Vec2 direction;  // unit
};

// Ground view of a T-hedron: (m+1) x (n+1) points, row i on profile line L_i.
struct TNet {
    Grid<Vec2> points;
    std::vector<Line2> lines;  // L_0..L_m

    std::size_t m() const noexcept { return points.rows() - 1; }
    std::size_t n() const noexcept { return points.cols() - 1; }
};

struct SignedLengths {
    Grid<double> f;  // f(i, j) for j >= 1; column 0 is zero
    Grid<double> g;  // g(i, j) for i >= 1; row 0 is zero
};

// Checks the pointwise invariants of the data (array sizes, open angle
// intervals, nonzero g, distinct consecutive heights, z_0 = 0) and throws
// Error with the offending field otherwise.
void validate_design(const DesignData& design);

DerivedQuantities derive(const DesignData& design);

TNet build_tnet(const DesignData& design);

// Builds the net without the sign-consistency and collinearity checks. The
// deformation code uses this on designs that were validated at t = 0.
TNet build_tnet_unchecked(const DesignData& design);

SignedLengths recover_signed_lengths(const TNet& net);

// Unit normal directions M_1..M_m of the trapezoid bases, oriented so that the
// angles to L_{i-1} and L_i lie in (-pi/2, pi/2).
std::vector<Vec2> base_normals(const TNet& net);

// Checks the T-net conditions: collinear rows, trapezoids with parallel bases,
// distinct consecutive lines, sign-consistent g along each strip and
// non-collinear trajectory polygons.
void validate_tnet(const TNet& net);

// Orthogonal projection to the base trajectory plane. Rows j must be
// horizontal; the profile lines are fitted from the projected rows.
TNet ground_view(const THedron& surface);

// True when the planar polygon (s_j, z_j) lies on a line. Polygons with fewer
// than three vertices are never reported collinear.
bool polygon_is_collinear(std::span<const double> s, std::span<const double> z);

}  // namespace thedra
