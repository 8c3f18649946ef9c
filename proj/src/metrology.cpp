#include "thedra/metrology.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "thedra/error.hpp"

namespace thedra {

namespace {

void require_same_shape(const Grid<Vec3>& a, const Grid<Vec3>& b) {
    if (!a.same_shape(b)) {
        throw Error(ErrorCode::ShapeMismatch, std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " vs " +
                                                  std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
}

std::array<Vec3, 4> face(const Grid<Vec3>& p, std::size_t i, std::size_t j) {
    return {p(i - 1, j - 1), p(i, j - 1), p(i, j), p(i - 1, j)};
}

// Relative to the length in the reference surface.
double relative_residual(double la, double lb) {
    if (la == 0.0) return lb == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return std::abs(la - lb) / la;
}

// Component of (a - p) orthogonal to the unit vector e.
Vec3 perpendicular(const Vec3& a, const Vec3& p, const Vec3& e) {
    const Vec3 v = a - p;
    return v - v.dot(e) * e;
}

double angle_at_edge(const Vec3& p, const Vec3& q, const Vec3& a1, const Vec3& a2, const Vec3& b1,
                     const Vec3& b2) {
    Vec3 e = q - p;
    if (e.norm() == 0.0) throw Error(ErrorCode::DegenerateFace, "interior edge of zero length");
    e.normalize();
    const Vec3 pa1 = perpendicular(a1, p, e), pa2 = perpendicular(a2, p, e);
    const Vec3 pb1 = perpendicular(b1, p, e), pb2 = perpendicular(b2, p, e);
    const Vec3& a = pa1.squaredNorm() >= pa2.squaredNorm() ? pa1 : pa2;
    const Vec3& b = pb1.squaredNorm() >= pb2.squaredNorm() ? pb1 : pb2;
    if (a.norm() == 0.0 || b.norm() == 0.0) throw Error(ErrorCode::DegenerateFace, "face of zero area");
    return std::atan2(a.cross(b).norm(), a.dot(b));
}

}  // namespace

double planarity(const Grid<Vec3>& p) {
    double worst = 0.0;
    for (std::size_t i = 1; i < p.rows(); ++i) {
        for (std::size_t j = 1; j < p.cols(); ++j) {
            const auto q = face(p, i, j);
            double best_area = 0.0;
            std::size_t skip = 0;
            Vec3 normal = Vec3::Zero();
            for (std::size_t k = 0; k < 4; ++k) {
                const Vec3& a = q[(k + 1) % 4];
                const Vec3& b = q[(k + 2) % 4];
                const Vec3& c = q[(k + 3) % 4];
                const Vec3 n = (b - a).cross(c - a);
                if (n.norm() > best_area) {
                    best_area = n.norm();
                    normal = n;
                    skip = k;
                }
            }
            if (best_area == 0.0) continue;
            normal /= best_area;
            worst = std::max(worst, std::abs((q[skip] - q[(skip + 1) % 4]).dot(normal)));
        }
    }
    const double diag = bbox_diagonal(p);
    return diag == 0.0 ? 0.0 : worst / diag;
}

double planarity(const THedron& surface) { return planarity(surface.points); }

IsometryReport check_isometric(const Grid<Vec3>& a, const Grid<Vec3>& b, double tol) {
    require_same_shape(a, b);
    IsometryReport report;
    for (std::size_t i = 1; i < a.rows(); ++i) {
        for (std::size_t j = 1; j < a.cols(); ++j) {
            const auto fa = face(a, i, j);
            const auto fb = face(b, i, j);
            double edge = 0.0;
            for (std::size_t k = 0; k < 4; ++k) {
                const std::size_t l = (k + 1) % 4;
                edge = std::max(edge, relative_residual((fa[l] - fa[k]).norm(), (fb[l] - fb[k]).norm()));
            }
            const double diagonal =
                std::max(relative_residual((fa[2] - fa[0]).norm(), (fb[2] - fb[0]).norm()),
                         relative_residual((fa[3] - fa[1]).norm(), (fb[3] - fb[1]).norm()));
            if (std::max(edge, diagonal) > std::max(report.max_edge_residual, report.max_diagonal_residual))
                report.worst_face = {i, j};
            report.max_edge_residual = std::max(report.max_edge_residual, edge);
            report.max_diagonal_residual = std::max(report.max_diagonal_residual, diagonal);
        }
    }
    report.pass = report.max_edge_residual <= tol && report.max_diagonal_residual <= tol;
    return report;
}

IsometryReport check_isometric(const THedron& a, const THedron& b, double tol) {
    return check_isometric(a.points, b.points, tol);
}

double DihedralAngles::max_abs_difference(const DihedralAngles& other) const {
    if (!profile_edges.same_shape(other.profile_edges) || !trajectory_edges.same_shape(other.trajectory_edges))
        throw Error(ErrorCode::ShapeMismatch, "dihedral angle grids differ in shape");
    double worst = 0.0;
    for (std::size_t k = 0; k < profile_edges.size(); ++k)
        worst = std::max(worst, std::abs(profile_edges.data()[k] - other.profile_edges.data()[k]));
    for (std::size_t k = 0; k < trajectory_edges.size(); ++k)
        worst = std::max(worst, std::abs(trajectory_edges.data()[k] - other.trajectory_edges.data()[k]));
    return worst;
}

DihedralAngles dihedral_angles(const THedron& s) {
    const std::size_t m = s.m();
    const std::size_t n = s.n();
    const Grid<Vec3>& p = s.points;
    DihedralAngles out;
    out.profile_edges = Grid<double>(m > 0 ? m - 1 : 0, n);
    out.trajectory_edges = Grid<double>(m, n > 0 ? n - 1 : 0);
    for (std::size_t i = 1; i + 1 <= m; ++i)
        for (std::size_t j = 1; j <= n; ++j)
            out.profile_edges(i - 1, j - 1) =
                angle_at_edge(p(i, j - 1), p(i, j), p(i - 1, j - 1), p(i - 1, j), p(i + 1, j - 1), p(i + 1, j));
    for (std::size_t i = 1; i <= m; ++i)
        for (std::size_t j = 1; j + 1 <= n; ++j)
            out.trajectory_edges(i - 1, j - 1) =
                angle_at_edge(p(i - 1, j), p(i, j), p(i - 1, j - 1), p(i, j - 1), p(i - 1, j + 1), p(i, j + 1));
    return out;
}

Alignment rigid_alignment(const Grid<Vec3>& a, const Grid<Vec3>& b, bool allow_reflection) {
    require_same_shape(a, b);
    const double count = static_cast<double>(a.size());
    Vec3 ca = Vec3::Zero(), cb = Vec3::Zero();
    for (std::size_t k = 0; k < a.size(); ++k) {
        ca += a.data()[k];
        cb += b.data()[k];
    }
    ca /= count;
    cb /= count;
    Eigen::Matrix3d H = Eigen::Matrix3d::Zero();
    for (std::size_t k = 0; k < a.size(); ++k) H += (a.data()[k] - ca) * (b.data()[k] - cb).transpose();
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(H, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::Matrix3d R = svd.matrixV() * svd.matrixU().transpose();
    if (!allow_reflection && R.determinant() < 0) {
        Eigen::Matrix3d D = Eigen::Matrix3d::Identity();
        D(2, 2) = -1.0;
        R = svd.matrixV() * D * svd.matrixU().transpose();
    }
    Alignment out;
    out.rotation = R;
    out.translation = cb - R * ca;
    out.reflected = R.determinant() < 0;
    for (std::size_t k = 0; k < a.size(); ++k)
        out.max_deviation = std::max(out.max_deviation, (R * a.data()[k] + out.translation - b.data()[k]).norm());
    return out;
}

bool check_congruent(const THedron& a, const THedron& b, double tol, bool allow_reflection) {
    require_same_shape(a.points, b.points);
    const double scale = bbox_diagonal(a.points);
    const Alignment proper = rigid_alignment(a.points, b.points, false);
    if (proper.max_deviation <= tol * scale) return true;
    if (!allow_reflection) return false;
    return rigid_alignment(a.points, b.points, true).max_deviation <= tol * scale;
}

}  // namespace thedra
