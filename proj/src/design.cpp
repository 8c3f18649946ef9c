#include "thedra/design.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "thedra/error.hpp"

namespace thedra {

namespace {

std::string indexed(const char* name, std::size_t k) {
    return std::string(name) + "[" + std::to_string(k) + "]";
}

void require_size(const std::vector<double>& v, std::size_t expected, const char* name) {
    if (v.size() != expected) {
        throw Error(ErrorCode::InvalidArgument,
                    std::string(name) + " has " + std::to_string(v.size()) + " entries, expected " +
                        std::to_string(expected),
                    name);
    }
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (!std::isfinite(v[k]))
            throw Error(ErrorCode::InvalidArgument, indexed(name, k) + " is not finite", indexed(name, k));
    }
}

bool parallel_within(const Vec2& a, const Vec2& b, double angle_tol, double length_tol) {
    return std::abs(cross2(a, b)) <= angle_tol * a.norm() * b.norm() + length_tol * std::max(a.norm(), b.norm());
}

// Profile line directions fitted to the rows of a planar grid. L_0 is
// oriented to have a nonnegative x component; every other L_i is oriented
// so that signed lengths along it share the sign of those along L_0.
std::vector<Line2> fit_lines(const Grid<Vec2>& points) {
    const std::size_t rows = points.rows();
    const std::size_t cols = points.cols();
    std::size_t far = 1;
    double far_len = -1.0;
    for (std::size_t j = 1; j < cols; ++j) {
        double len = (points(0, j) - points(0, 0)).norm();
        if (len > far_len) {
            far_len = len;
            far = j;
        }
    }
    std::vector<Line2> lines(rows);
    Vec2 d0 = points(0, far) - points(0, 0);
    if (d0.norm() == 0.0) throw Error(ErrorCode::OffLine, "profile polygon 0 spans no line");
    d0.normalize();
    if (d0.x() < 0.0 || (d0.x() == 0.0 && d0.y() < 0.0)) d0 = -d0;
    const double reference_sign = (points(0, far) - points(0, 0)).dot(d0) >= 0.0 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < rows; ++i) {
        Vec2 d = points(i, far) - points(i, 0);
        if (d.norm() == 0.0) {
            throw Error(ErrorCode::OffLine, "profile polygon " + std::to_string(i) + " spans no line");
        }
        d = reference_sign * d.normalized();
        lines[i] = {points(i, 0), d};
    }
    return lines;
}

}  // namespace

bool polygon_is_collinear(std::span<const double> s, std::span<const double> z) {
    if (s.size() < 3) return false;
    std::vector<Vec2> pts;
    pts.reserve(s.size());
    for (std::size_t j = 0; j < s.size(); ++j) pts.emplace_back(s[j], z[j]);
    const double diag = bbox_diagonal(std::span<const Vec2>(pts));
    return largest_triangle_area(pts) <= kCollinearAreaTolerance * diag * diag;
}

void validate_design(const DesignData& d) {
    const std::size_t m = d.m();
    const std::size_t n = d.n();
    if (m == 0) throw Error(ErrorCode::InvalidArgument, "m must be positive", "phi");
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "n must be positive", "f0");
    require_size(d.phi, m, "phi");
    require_size(d.psi, m, "psi");
    require_size(d.g0, m, "g0");
    require_size(d.f0, n, "f0");
    require_size(d.z, n + 1, "z");
    if (d.z[0] != 0.0) throw Error(ErrorCode::InvalidArgument, "z[0] must be 0", "z[0]");

    const double half_pi = kPi / 2;
    for (std::size_t i = 1; i <= m; ++i) {
        const double eta = d.psi[i - 1] - d.phi_at(i - 1);
        const double theta = d.phi[i - 1] - d.psi[i - 1];
        if (!(std::abs(eta) < half_pi)) {
            throw Error(ErrorCode::AngleOutOfRange,
                        "|eta_" + std::to_string(i) + "| >= pi/2 (eta = psi_i - phi_{i-1} = " + std::to_string(eta) + ")",
                        indexed("psi", i - 1));
        }
        if (!(std::abs(theta) < half_pi)) {
            throw Error(ErrorCode::AngleOutOfRange,
                        "|theta_" + std::to_string(i) + "| >= pi/2 (theta = phi_i - psi_i = " + std::to_string(theta) + ")",
                        indexed("phi", i - 1));
        }
        if (d.g0[i - 1] == 0.0) {
            throw Error(ErrorCode::ZeroLength, "g_" + std::to_string(i) + "0 must be nonzero", indexed("g0", i - 1));
        }
    }
    for (std::size_t j = 1; j <= n; ++j) {
        if (d.z[j] == d.z[j - 1]) {
            throw Error(ErrorCode::DegenerateHeights,
                        "z_" + std::to_string(j - 1) + " and z_" + std::to_string(j) + " coincide", indexed("z", j));
        }
    }
}

DerivedQuantities derive(const DesignData& d) {
    validate_design(d);
    const std::size_t m = d.m();
    const std::size_t n = d.n();
    DerivedQuantities q;
    q.eta.resize(m);
    q.theta.resize(m);
    q.c.resize(m);
    q.C.assign(m + 1, 1.0);
    for (std::size_t i = 1; i <= m; ++i) {
        q.eta[i - 1] = d.psi[i - 1] - d.phi_at(i - 1);
        q.theta[i - 1] = d.phi[i - 1] - d.psi[i - 1];
        q.c[i - 1] = std::cos(q.eta[i - 1]) / std::cos(q.theta[i - 1]);
        q.C[i] = q.C[i - 1] * q.c[i - 1];
    }
    q.F.assign(n + 1, 0.0);
    for (std::size_t j = 1; j <= n; ++j) q.F[j] = q.F[j - 1] + d.f0[j - 1];
    return q;
}

TNet build_tnet_unchecked(const DesignData& d) {
    const DerivedQuantities q = derive(d);
    const std::size_t m = d.m();
    const std::size_t n = d.n();
    TNet net;
    net.points = Grid<Vec2>(m + 1, n + 1);
    net.lines.resize(m + 1);
    Vec2 base = Vec2::Zero();
    for (std::size_t i = 0; i <= m; ++i) {
        if (i > 0) base += d.g0[i - 1] * rot90(unit_direction(d.psi[i - 1]));
        const Vec2 dir = unit_direction(d.phi_at(i));
        for (std::size_t j = 0; j <= n; ++j) net.points(i, j) = base + q.C[i] * q.F[j] * dir;
        net.lines[i] = {base, dir};
    }
    return net;
}

TNet build_tnet(const DesignData& d) {
    TNet net = build_tnet_unchecked(d);
    validate_tnet(net);
    const DerivedQuantities q = derive(d);
    if (polygon_is_collinear(q.F, d.z)) {
        throw Error(ErrorCode::CollinearPolygon, "the profile polygon (F_j, z_j) is contained in a line", "z");
    }
    return net;
}

std::vector<Vec2> base_normals(const TNet& net) {
    const std::size_t m = net.m();
    std::vector<Vec2> normals(m);
    for (std::size_t i = 1; i <= m; ++i) {
        Vec2 longest = Vec2::Zero();
        for (std::size_t j = 0; j <= net.n(); ++j) {
            Vec2 b = net.points(i, j) - net.points(i - 1, j);
            if (b.squaredNorm() > longest.squaredNorm()) longest = b;
        }
        if (longest.squaredNorm() == 0.0) {
            throw Error(ErrorCode::ZeroLength, "profile strip " + std::to_string(i) + " has no nondegenerate base");
        }
        Vec2 normal(longest.y(), -longest.x());
        normal.normalize();
        if (normal.dot(net.lines[i - 1].direction) < 0.0) normal = -normal;
        normals[i - 1] = normal;
    }
    return normals;
}

SignedLengths recover_signed_lengths(const TNet& net) {
    const std::size_t m = net.m();
    const std::size_t n = net.n();
    if (net.lines.size() != m + 1) throw Error(ErrorCode::ShapeMismatch, "one profile line per row is required");
    const double tol = kRelativeLengthTolerance * std::max(bbox_diagonal(net.points), 1e-300);
    for (std::size_t i = 0; i <= m; ++i) {
        const Line2& line = net.lines[i];
        for (std::size_t j = 0; j <= n; ++j) {
            if (std::abs(cross2(line.direction, net.points(i, j) - line.point)) > tol) {
                throw Error(ErrorCode::OffLine, "point (" + std::to_string(i) + ", " + std::to_string(j) +
                                                    ") is off its profile line");
            }
        }
    }
    SignedLengths out{Grid<double>(m + 1, n + 1, 0.0), Grid<double>(m + 1, n + 1, 0.0)};
    for (std::size_t i = 0; i <= m; ++i)
        for (std::size_t j = 1; j <= n; ++j)
            out.f(i, j) = (net.points(i, j) - net.points(i, j - 1)).dot(net.lines[i].direction);
    const std::vector<Vec2> normals = base_normals(net);
    for (std::size_t i = 1; i <= m; ++i) {
        const Vec2 jm = rot90(normals[i - 1]);
        for (std::size_t j = 0; j <= n; ++j) out.g(i, j) = (net.points(i, j) - net.points(i - 1, j)).dot(jm);
    }
    return out;
}

void validate_tnet(const TNet& net) {
    const std::size_t m = net.m();
    const std::size_t n = net.n();
    const double diag = std::max(bbox_diagonal(net.points), 1e-300);
    const double tol = kRelativeLengthTolerance * diag;

    const SignedLengths lengths = recover_signed_lengths(net);  // checks line membership

    for (std::size_t i = 1; i <= m; ++i) {
        const Line2& a = net.lines[i - 1];
        const Line2& b = net.lines[i];
        if (parallel_within(a.direction, b.direction, kAngleTolerance, 0.0) &&
            std::abs(cross2(a.direction, b.point - a.point)) <= tol) {
            throw Error(ErrorCode::NotATHedron, "profile lines L_" + std::to_string(i - 1) + " and L_" +
                                                    std::to_string(i) + " coincide");
        }
        Vec2 reference = Vec2::Zero();
        for (std::size_t j = 0; j <= n; ++j) {
            Vec2 bj = net.points(i, j) - net.points(i - 1, j);
            if (bj.squaredNorm() > reference.squaredNorm()) reference = bj;
        }
        for (std::size_t j = 0; j <= n; ++j) {
            Vec2 bj = net.points(i, j) - net.points(i - 1, j);
            if (!parallel_within(reference, bj, kAngleTolerance, tol)) {
                throw Error(ErrorCode::NotATHedron, "bases of strip " + std::to_string(i) + " are not parallel at j = " +
                                                        std::to_string(j));
            }
        }
        const double sign0 = lengths.g(i, 0);
        for (std::size_t j = 0; j <= n; ++j) {
            const double g = lengths.g(i, j);
            if (std::abs(g) <= tol || (g > 0) != (sign0 > 0)) {
                throw Error(ErrorCode::SignConsistency, "signed lengths g_" + std::to_string(i) + "j change sign at j = " +
                                                            std::to_string(j));
            }
        }
    }
    if (m >= 2) {
        std::vector<Vec2> column(m + 1);
        for (std::size_t j = 0; j <= n; ++j) {
            for (std::size_t i = 0; i <= m; ++i) column[i] = net.points(i, j);
            if (largest_triangle_area(column) <= kCollinearAreaTolerance * diag * diag) {
                throw Error(ErrorCode::CollinearPolygon,
                            "trajectory polygon " + std::to_string(j) + " is contained in a line");
            }
        }
    }
}

TNet ground_view(const THedron& surface) {
    const std::size_t rows = surface.points.rows();
    const std::size_t cols = surface.points.cols();
    if (rows < 2 || cols < 2) throw Error(ErrorCode::ShapeMismatch, "a T-hedron needs at least 2 x 2 vertices");
    const double tol = kRelativeLengthTolerance * std::max(bbox_diagonal(surface.points), 1e-300);
    TNet net;
    net.points = Grid<Vec2>(rows, cols);
    for (std::size_t j = 0; j < cols; ++j) {
        const double z = surface(0, j).z();
        for (std::size_t i = 0; i < rows; ++i) {
            if (std::abs(surface(i, j).z() - z) > tol) {
                throw Error(ErrorCode::NonHorizontalRows,
                            "trajectory polygon " + std::to_string(j) + " is not horizontal");
            }
            net.points(i, j) = surface(i, j).head<2>();
        }
    }
    net.lines = fit_lines(net.points);
    return net;
}

}  // namespace thedra
