#pragma once

#include <string>
#include <vector>

#include "nvsc/engine.hpp"

namespace nvsc {

struct BoundReport {
    std::string claim;  // thm1 | thm2 | thm3 | thm4 | lemma1
    bool applicable = true;
    bool satisfied = false;
    double worst_margin = 0.0;  // min over samples of bound - value
    double worst_time = 0.0;
};

struct LyapunovSeries {
    std::vector<double> t, v, vo;
};

// Recomputed quadratic forms from the trace error columns (auditable from
// the CSV alone, independently of the engine's recorded V/Vo).
LyapunovSeries lyapunov_series(const SimTrace& trace, const Mat& P, int agent);

// d_oi = 2 (sigma_d* + 2 eta*) (1 + xi) atanh(1/xi).
double d_oi_constant(double sigma_d_star, double eta_star, double xi);

// V_o(t) <= (1 + slack) * (V_o(0) e^{-psi t} + d_oi / psi) per agent; not
// applicable when the trace contains attack intervals.
BoundReport check_observer_envelope(const SimTrace& trace, const std::vector<Mat>& P,
                                    double psi, const std::vector<double>& d_oi,
                                    double slack = 0.05);

struct Lemma1IntervalReport {
    int agent = 0;
    double t_k = 0.0, t_start = 0.0, t_end = 0.0, duration = 0.0;
    double gate = 0.0;   // max tolerable interval for this snapshot
    bool within_gate = false;
    double delta = 0.0;  // delta_1k
    double gamma = 0.0;  // gamma_1i
    double bound = 0.0;  // gamma * delta
    double sup_deviation = 0.0;
    bool satisfied = true;  // only meaningful within the gate
};

struct Lemma1Report {
    BoundReport summary;
    std::vector<Lemma1IntervalReport> intervals;
    double eq54_margin = 0.0;  // reported, not asserted (negative for Table-2 gains)
};

// Per attack interval: delta_1k from the snapshot row at t_k, gamma_1i from
// Eq (53), gate from Eq (44), and the measured sup ||E(t) - E(k)||.
Lemma1Report check_lemma1(const ScenarioConfig& cfg, const SimTrace& trace,
                          const DosSchedule& schedule, const std::vector<Mat>& P,
                          const std::vector<SystemMatrices>& matrices);

struct CollisionReport {
    bool ok = true;
    double first_crossing_t = -1.0;
    int crossing_front = -1;  // index of the leading vehicle of the offending pair
    double min_spacing = 0.0;
    double min_spacing_t = 0.0;
    int min_spacing_front = -1;
    bool below_min_gap = false;  // min spacing under the Table-1 d_m of the trailing car
};

CollisionReport collision_check(const SimTrace& trace, const std::vector<AgentParams>& agents);

struct ConvergenceReport {
    BoundReport summary;  // thm2 property form
    std::vector<double> end_abs_e1, end_abs_e2, end_abs_e3;      // per agent
    std::vector<double> first_quarter_vel_mean, last_quarter_vel_mean;
    std::vector<double> first_quarter_acc_mean, last_quarter_acc_mean;
};

// Property form of the asymptotic claim: end-of-horizon error below the
// threshold and decreasing quarter means on the velocity/acceleration
// channels.
ConvergenceReport check_convergence(const SimTrace& trace, double pos_threshold,
                                    double tail_window);

struct RunMetrics {
    std::vector<double> max_abs_e1, max_abs_e2, max_abs_e3;  // per agent
    std::vector<double> sup_e_norm;                          // per agent
    std::vector<double> sup_v;                               // per agent
    bool finite = true;
};

RunMetrics run_metrics(const SimTrace& trace);

struct HimZimReport {
    RunMetrics him, zim;
    CollisionReport him_collision, zim_collision;
    bool him_max_pos_not_worse = true;  // logged direction, not asserted
};

// Paired runs of the identical scenario under hold-input and zero-input
// actuation.
HimZimReport compare_him_zim(const ScenarioConfig& cfg);

struct NeuronSweepRow {
    int count = 0;
    // max over followers of |e_l| at the final sample
    double e1 = 0.0, e2 = 0.0, e3 = 0.0;
};

// One full run per neuron count; rows in input order. Honors NVSC_THREADS.
std::vector<NeuronSweepRow> neuron_sweep(const ScenarioConfig& cfg,
                                         const std::vector<int>& counts);

struct Theorem4Report {
    bool applicable = false;  // q_bar positive and schedule nonempty
    double chi0 = 0.0;        // ||K_eta||
    double nu0 = 0.0;         // d_i = ||K_eta||^2 eps*^2
    double chi1 = 0.0;        // q_bar from Theorem 3 (may be <= 0)
    double rho_star = 0.0;
    double log_bound = 0.0;   // natural log of the Eq-75 residual bound
    double bound = 0.0;       // may overflow to +inf; log_bound stays finite
    double sup_v = 0.0;       // trace sup of V_i for the attacked agent
};

Theorem4Report theorem4_report(const ScenarioConfig& cfg, const SimTrace& trace,
                               const DosSchedule& schedule, const std::vector<Mat>& P,
                               const std::vector<SystemMatrices>& matrices);

// Realized packet log re-checked against Assumptions 1-2.
bool realized_energy_ok(const DosSchedule& schedule);

}  // namespace nvsc
