#pragma once

#include <cstddef>
#include <utility>

#include <Eigen/Core>

#include "thedra/thedron.hpp"

namespace thedra {

// Largest distance of a face vertex from the plane through the other three
// (the triple spanning the largest triangle), relative to the bbox diagonal.
double planarity(const THedron& surface);
double planarity(const Grid<Vec3>& points);

struct IsometryReport {
    double max_edge_residual = 0.0;
    double max_diagonal_residual = 0.0;
    std::pair<std::size_t, std::size_t> worst_face{0, 0};  // (i, j) of face sigma_{i-1,j-1} .. sigma_ij
    bool pass = true;
};

// Compares the four edge lengths and two diagonals of every pair of
// corresponding faces; residuals are relative to the lengths of `a`.
IsometryReport check_isometric(const THedron& a, const THedron& b, double tol = 1e-9);
IsometryReport check_isometric(const Grid<Vec3>& a, const Grid<Vec3>& b, double tol = 1e-9);

// Unsigned dihedral angles in [0, pi] at interior edges; pi means flat.
struct DihedralAngles {
    // Edge sigma_{i,j-1} sigma_ij shared by faces (i, j) and (i+1, j):
    // entry (i-1, j-1) for i = 1..m-1, j = 1..n.
    Grid<double> profile_edges;
    // Edge sigma_{i-1,j} sigma_ij shared by faces (i, j) and (i, j+1):
    // entry (i-1, j-1) for i = 1..m, j = 1..n-1.
    Grid<double> trajectory_edges;

    double max_abs_difference(const DihedralAngles& other) const;
};

DihedralAngles dihedral_angles(const THedron& surface);

struct Alignment {
    Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();  // may have det -1 when reflected
    Vec3 translation = Vec3::Zero();
    double max_deviation = 0.0;  // absolute
    bool reflected = false;
};

// Least-squares rigid alignment of a onto b (orthogonal polar factor of the
// cross-covariance).
Alignment rigid_alignment(const Grid<Vec3>& a, const Grid<Vec3>& b, bool allow_reflection);

// True iff a rigid motion (optionally with reflection) maps a onto b with max
// vertex deviation <= tol * bbox diagonal of a.
bool check_congruent(const THedron& a, const THedron& b, double tol = 1e-9, bool allow_reflection = true);

}  // namespace thedra
