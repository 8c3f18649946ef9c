#pragma once

#include <cstddef>
#include <limits>
#include <string_view>
#include <utility>
#include <vector>

#include "thedra/builders.hpp"
#include "thedra/design.hpp"
#include "thedra/thedron.hpp"

namespace thedra {

enum class BlockingReason { ProfileFlattening, TrajectoryFlattening, Unbounded };

std::string_view to_string(BlockingReason reason);

// Admissible deformation parameters. `lower_index` is the strip i (1-based)
// whose radicand vanishes at t_min, `upper_index` the step j (1-based) whose
// radicand vanishes at t_max; 0 when unbounded.
struct ParameterRange {
    double t_min = -std::numeric_limits<double>::infinity();
    double t_max = std::numeric_limits<double>::infinity();
    BlockingReason lower_reason = BlockingReason::Unbounded;
    BlockingReason upper_reason = BlockingReason::Unbounded;
    std::size_t lower_index = 0;
    std::size_t upper_index = 0;

    bool contains(double t) const;
    bool bounded() const { return lower_reason != BlockingReason::Unbounded && upper_reason != BlockingReason::Unbounded; }
};

// Additive parametrization: C_i(t) = sqrt(C_i^2 + t).
struct DeformationState {
    double t = 0.0;
    std::vector<double> Ct;       // C_0(t)..C_m(t)
    std::vector<double> eta_t;    // eta_1(t)..eta_m(t)
    std::vector<double> theta_t;  // theta_1(t)..theta_m(t)
    std::vector<double> phi_t;    // phi_0(t)..phi_m(t), phi_0(t) = 0
    std::vector<double> psi_t;    // psi_1(t)..psi_m(t)
    std::vector<double> z_t;      // z_0(t)..z_n(t)
    std::vector<double> k;        // C_i(t) / C_i, i = 0..m
};

ParameterRange parameter_range(const DesignData& design);

// Throws Error(OutOfRange) naming the violated constraint when t is outside
// the closed range. Endpoint radicands are clamped at 0.
DeformationState deformation_state(const DesignData& design, double t);

THedron deform(const DesignData& design, double t);

// ---- translational (exponential parametrization) ---------------------------

// x_i0 -> e^-t x_i0, x_0j -> e^t x_0j (relative to x_00), y and z so that all
// faces stay congruent.
TranslationalData deform_translational_data(const TranslationalData& data, double t);
THedron deform_translational(const TranslationalData& data, double t);
ParameterRange translational_range(const TranslationalData& data);

// sqrt(1 + t_general) = e^t_translational.
double general_from_translational(double t_translational);
double translational_from_general(double t_general);

// ---- Miura-ori ---------------------------------------------------------------

struct MiuraFlatParameters {
    double t_minus = 0.0;
    double t_plus = 0.0;
};

MiuraFlatParameters miura_flat_parameters(double a, double b, double c, double d);

// a(t) = e^t a, b(t) = sqrt(b^2 + (1 - e^-2t) c^2), c(t) = e^-t c,
// d(t) = sqrt(d^2 + (1 - e^2t) a^2).
MiuraParameters miura_parameters_at(const MiuraParameters& p, double t);
THedron deform_miura(const MiuraParameters& p, double t);

// ---- molding, axial, revolution --------------------------------------------

THedron deform_molding(const DesignData& design, double t);
THedron deform_axial(const AxialDesign& axial, double t);
THedron deform_revolution(const RevolutionData& data, double t);

// ---- parallel pairs -----------------------------------------------------------

// Keeps phi, psi, f0, z and g_10; replaces g_20..g_m0 so that the result is
// axial.
DesignData parallel_axial(const DesignData& design);

// Every pair of corresponding edges parallel within tol radians (unoriented);
// edges of zero length are skipped.
bool is_parallel(const THedron& a, const THedron& b, double tol = 1e-9);
double max_edge_angle(const THedron& a, const THedron& b);

}  // namespace thedra
