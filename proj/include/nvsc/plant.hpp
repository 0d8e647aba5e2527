#pragma once

#include <functional>
#include <optional>

#include "nvsc/numeric.hpp"

namespace nvsc {

// Vehicle-level constants (drag, rolling resistance, grade, spacing data).
struct VehicleParams {
    double drag_coeff = 0.0;      // C_d
    double frontal_area = 0.0;    // S, m^2
    double rolling_coeff = 0.0;   // f_r
    double grade_angle = 0.0;     // rad
    double min_gap = 0.0;         // d_m, m
    double headway = 0.0;         // sigma_h, s (reported only, see analysis)
    double standstill_gap = 0.0;  // d_0, m
};

// How the scalar input enters the last state channel of the CAV model.
//   force:    B_n = 1/(m*tau)  (u is a drivetrain force)
//   per_mass: B_n = 1/tau      (u is a commanded acceleration)
enum class InputScaling { force, per_mass };

struct AgentParams {
    int index = 1;
    // Generic chain model; ignored when tau is set (CAV form).
    double a = 0.0;
    double b = 1.0;
    std::optional<double> tau;  // drivetrain time constant, s
    double mass = 1.0;          // kg
    InputScaling scaling = InputScaling::force;

    // Assumed bound constants.
    double omega_star = 1.0;    // |w_i(t)| bound
    double eta_star = 1.0;      // weight-norm bound
    double eps_star = 1.0;      // weight-error bound
    double sigma_d_star = 1.0;  // virtual-disturbance bound
    double u_d_star = 1.0;      // observer residual bound

    VehicleParams vehicle;
};

struct SystemMatrices {
    Mat A;   // n x n companion form
    Vec B;   // input column
    Vec Bf;  // nonlinearity column (last entry 1)
    Vec Bw;  // disturbance column (last entry 1)
    Mat C;   // identity
};

// Known command-generator exosystem. f0 may use time to follow a profile.
struct LeaderModel {
    Mat A0;
    Vec Bf0;
    std::function<double(const Vec&, double)> f0;
    double eps0 = 0.0;  // bound on |f0(X0(k)) - f0(X0(t))| over a hold
};

struct DisturbanceProfile {
    enum class Kind { zero, sinusoid, filtered_noise };
    Kind kind = Kind::sinusoid;
    double amplitude_frac = 0.8;  // of omega_star
    std::uint64_t seed = 0;
};

// Companion-form matrices for one agent. Dimension n >= 2; the CAV case
// (tau set) is the n = 3 longitudinal model.
SystemMatrices build_matrices(const AgentParams& p, int n);

// Longitudinal resistance terms on the acceleration channel:
//   f = -(1/m) * (0.5*rho_air*Cd*S*v^2) - g*(f_r*cos(theta) + sin(theta))
// with rho_air = 1.225 kg/m^3, g = 9.81 m/s^2.
double true_nonlinearity(const AgentParams& p, const Vec& x);

Vec follower_derivative(const AgentParams& p, const SystemMatrices& m, const Vec& x,
                        double u, double w);

Vec leader_derivative(const LeaderModel& l, const Vec& x0, double t);

}  // namespace nvsc
