#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nvsc/controller.hpp"

namespace nvsc {

// Attack windows live on the control packet grid: an attack blocks whole
// packets, and integer tick arithmetic keeps the Assumption-1/2 checks exact.
struct DosInterval {
    std::int64_t start_tick = 0;
    std::int64_t end_tick = 0;  // half-open [start, end)
};

struct DosSchedule {
    double grid_step = 0.01;  // s per packet tick
    std::int64_t horizon_ticks = 0;
    double n0 = 1.0;     // initial attack budget (Eq 12)
    double tau_d = 1.0;  // inter-attack dwell, s (Eq 12)
    int t_energy = 2;    // T >= 1 (Eq 13)
    std::uint64_t seed = 0;
    std::map<int, std::vector<DosInterval>> intervals;  // per target agent

    bool blocks(int agent, std::int64_t tick) const;
};

struct DosGenParams {
    double n0 = 1.0;
    double tau_d = 1.0;
    int t_energy = 2;
    std::uint64_t seed = 0;
    std::vector<int> targets{1};
    double min_duration = 0.2;  // s
    double max_duration = 1.0;  // s
    double max_extra_gap = 2.0; // s of random idle beyond the constraints
    std::optional<double> target_duty;  // request check against 1/T
    int min_attacks = 0;        // generation fails if unplaceable
};

struct ScheduleViolation {
    std::string bound;  // "frequency" | "energy" | "structure"
    int agent = 0;
    double window_tau = 0.0;
    double window_t = 0.0;
    std::string detail;
};

struct InfeasibleSchedule : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Random rectangular wave with variable duty cycle whose every checked
// window satisfies Assumptions 1-2. Frequency (Eq 12) holds on arbitrary
// windows; energy (Eq 13) on prefix windows [0, t) - the only reading under
// which a nonempty schedule is feasible for T > 1 (a window equal to one
// attack interval gives |Xi| = len > len/T otherwise).
DosSchedule generate_schedule(const DosGenParams& p, double horizon, double grid_step);

// Checks both bounds on all interval endpoints plus `probes` random windows
// per agent. Empty result means the schedule is admissible.
std::vector<ScheduleViolation> validate_schedule(const DosSchedule& s, int probes);

// Eq (44): Delta_max = (1/||A||) ln(1 + gamma ||A||); the ||A|| -> 0 limit
// is gamma itself.
double max_tolerable_interval(double a_norm, double gamma_1i);

// Eq (46) with every matrix/vector summand collapsed by norm.
double delta_1k(const HeldControl& snap, const SystemMatrices& m, const Mat& P,
                const ControllerGains& g, double omega_star, double sigma_d_star,
                double eps_star, double eps0, int degree);

struct Gamma1 {
    double value = 0.0;
    bool degenerate = false;  // delta was zero; value is the +inf sentinel
};

// Eq (53): gamma_1i = zeta / (delta * ||P sum_j a_ij B B^T P||).
Gamma1 gamma_1i(double zeta_1i, double delta, const Mat& P, const Mat& g_sum);

struct Lemma1Config {
    double zeta_1i = 2e5;
    double a[5] = {1.0, 1.0, 1.0, 1.0, 1.0};
};

// Eq (54) margin: gamma - (zeta + ||P K_u|| + a1 + a2 + a3 + a5).
// Positive means the displayed inequality holds; reported, never asserted.
double eq54_margin(const Lemma1Config& c, double gamma, const Mat& P, const Mat& k_u);

}  // namespace nvsc
