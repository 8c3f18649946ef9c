#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "thedra/design.hpp"
#include "thedra/thedron.hpp"

namespace thedra {

// sigma_ij = (tau_ij, z_j).
THedron lift(const TNet& net, std::span<const double> z);

THedron build_thedron(const DesignData& design);

// Checks planarity of faces, horizontal trajectory rows and vertical profile
// planes; throws Error(NotATHedron) on failure.
void validate_thedron(const THedron& surface);

// Recovers generating data from a T-hedron after moving sigma_00 to the
// origin and L_0 onto the +x axis.
DesignData recover_design(const THedron& surface);

// ---- translational ----------------------------------------------------------

// Generators of a translational T-hedron sigma_ij = (x_i0 + x_0j, y_i, z_j).
struct TranslationalData {
    std::vector<double> x_row;  // x_00..x_m0
    std::vector<double> x_col;  // x_00..x_0n
    std::vector<double> y;      // y_0..y_m
    std::vector<double> z;      // z_0..z_n

    std::size_t m() const noexcept { return y.size() - 1; }
    std::size_t n() const noexcept { return z.size() - 1; }
};

void validate_translational(const TranslationalData& data);
THedron build_translational(const TranslationalData& data);

// The same surface in (phi, psi, f, g, z) form: phi_i = 0, x_0j = F_j,
// x_i0 = -sum g sin psi, y_i = sum g cos psi.
DesignData translational_design(const TranslationalData& data);

// ---- molding ---------------------------------------------------------------

// Requires theta_i = eta_i, i.e. psi_i = (phi_{i-1} + phi_i) / 2.
THedron build_molding(const DesignData& design);
bool is_molding(const DesignData& design, double tol = 1e-9);

// ---- axial / revolution ----------------------------------------------------

// An axial design together with the signed distance f00 from the axis to
// tau_00 along L_0. The g0 of `design` are implied by phi, psi and f00.
struct AxialDesign {
    DesignData design;
    double f00 = 0.0;
};

AxialDesign make_axial(std::vector<double> phi, std::vector<double> psi, double f00, std::vector<double> f0,
                       std::vector<double> z);

// Largest relative deviation of g0 from the axiality criterion
// g_i0 / g_10 = sin(eta_i + theta_i) cos(theta_1) C_i / (sin(eta_1 + theta_1) cos(eta_i)).
double axial_residual(const DesignData& design);

// g_10..g_m0 that make the design axial, given g_10.
std::vector<double> axial_g_sequence(const DesignData& design, double g10);

// Axis at the origin: sigma_ij = (C_i F_j cos phi_i, C_i F_j sin phi_i, z_j)
// with F_j = f00 + f_01 + ... + f_0j.
THedron build_axial(const AxialDesign& axial);

struct RevolutionData {
    std::vector<double> phi;  // phi_1..phi_m, phi_0 = 0
    std::vector<double> F;    // F_0..F_n, distances from the axis
    std::vector<double> z;    // z_0..z_n

    std::size_t m() const noexcept { return phi.size(); }
    std::size_t n() const noexcept { return F.size() - 1; }
};

void validate_revolution(const RevolutionData& data);
AxialDesign revolution_to_axial(const RevolutionData& data);
THedron build_revolution(const RevolutionData& data);

// ---- Miura-ori --------------------------------------------------------------

struct MiuraParameters {
    double a = 1, b = 1, c = 1, d = 1;
    std::size_t m = 2, n = 2;
};

TranslationalData miura_data(const MiuraParameters& p);
THedron build_miura(const MiuraParameters& p);

// ---- classification --------------------------------------------------------

SurfaceClass classify(const THedron& surface, double tol = 1e-8);
SurfaceClass classify_design(const DesignData& design, double tol = 1e-8);

}  // namespace thedra
