#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nvsc/controller.hpp"
#include "nvsc/dos.hpp"
#include "nvsc/riccati.hpp"
#include "nvsc/topology.hpp"

namespace nvsc {

// Piecewise-linear velocity profile over (t, v) breakpoints; continuous by
// construction, acceleration is the segment slope.
struct LeaderProfile {
    std::vector<std::pair<double, double>> points;  // strictly increasing t

    std::pair<double, double> sample(double t) const;  // (velocity, acceleration)
    std::vector<std::string> validate() const;
};

struct ScenarioConfig {
    std::string name = "scenario";
    std::vector<AgentParams> agents;  // follower 1..N in order
    Topology topology;
    LeaderProfile profile;

    double leader_tau = 0.1;
    double leader_kv = 25.0;  // profile-following exosystem gains
    double leader_ka = 10.0;
    double leader_eps0 = 30.0;

    ControllerGains gains;  // includes D_0

    int neurons = 25;
    double center_lo = -30.0, center_hi = 30.0;
    double k_eta = 1000.0;
    double k_eta_star = 1000.0;
    bool literal_activations = false;

    double k_o = 1000.0;
    double xi = 2.0;
    double psi = 1000.0;

    double dt_integration = 1e-3;
    double packet_period = 0.01;
    double horizon = 25.0;
    double detection_window_factor = 1.5;
    InputMechanism mechanism = InputMechanism::hold;
    std::uint64_t seed = 0;
    int record_stride = 1;

    enum class ObserverIntegration { implicit_euler, rk4 };
    ObserverIntegration observer_integration = ObserverIntegration::implicit_euler;

    DisturbanceProfile disturbance;
    double initial_position_offset = 0.5;
    Vec xhat_offset;  // injected observer IC offset; empty disables

    Lemma1Config lemma1;
    std::optional<DosGenParams> dos_gen;
    std::optional<DosSchedule> dos_schedule;
};

// Column store, one row per recorded tick per node (leader = agent 0).
struct SimTrace {
    int n_followers = 0;
    double packet_period = 0.0;
    int record_stride = 1;
    std::vector<double> t;
    std::vector<int> agent;
    std::vector<double> x1, x2, x3;
    std::vector<double> xh1, xh2, xh3;
    std::vector<double> e1, e2, e3;
    std::vector<double> u;
    std::vector<int> eps;
    std::vector<double> v_lyap, vo_lyap;
    std::vector<double> eta_norm;
    std::vector<double> ud1, ud2, ud3;
    std::vector<int> held;

    std::size_t rows() const { return t.size(); }
};

struct AttackSnapshot {
    int agent = 0;
    HeldControl held;
    double detect_t = 0.0;
    double release_t = 0.0;
};

struct RunResult {
    SimTrace trace;
    DosSchedule schedule;  // realized packet-block log (empty when no attack)
    std::vector<Mat> P;    // per follower
    std::vector<SystemMatrices> matrices;
    std::vector<AttackSnapshot> snapshots;
    std::vector<std::string> warnings;
};

struct ConfigError : std::runtime_error {
    std::vector<std::string> violations;
    explicit ConfigError(std::vector<std::string> v)
        : std::runtime_error(v.empty() ? "invalid config" : v.front()),
          violations(std::move(v)) {}
};

struct NumericalBlowup : std::runtime_error {
    double t;
    int agent;
    NumericalBlowup(double t_, int agent_, const std::string& what_)
        : std::runtime_error(what_), t(t_), agent(agent_) {}
};

// Classical fixed-step RK4 with preallocated stage storage.
class RungeKutta4 {
  public:
    explicit RungeKutta4(Eigen::Index dim) : k1_(dim), k2_(dim), k3_(dim), k4_(dim), w_(dim) {}

    template <class F>
    void step(F&& f, double t, Vec& x, double dt) {
        f(t, x, k1_);
        w_ = x + (0.5 * dt) * k1_;
        f(t + 0.5 * dt, w_, k2_);
        w_ = x + (0.5 * dt) * k2_;
        f(t + 0.5 * dt, w_, k3_);
        w_ = x + dt * k3_;
        f(t + dt, w_, k4_);
        x += (dt / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
    }

  private:
    Vec k1_, k2_, k3_, k4_, w_;
};

// One-shot convenience used by tests and small callers.
template <class F>
Vec rk4_step(F&& f, double t, const Vec& x, double dt) {
    Vec out = x;
    RungeKutta4 rk(x.size());
    rk.step(std::forward<F>(f), t, out, dt);
    return out;
}

std::vector<std::string> validate_config(const ScenarioConfig& cfg);

// Deterministic sampled-control simulation: per packet tick, deliver
// packets unless blocked, run detection, compute the switched control, and
// integrate plant/observer/weights to the next tick.
RunResult run_scenario(const ScenarioConfig& cfg);

// Leader kinematic profile sampled through the scenario's profile table.
std::pair<double, double> leader_profile(const ScenarioConfig& cfg, double t);

LeaderModel make_leader_model(const ScenarioConfig& cfg);

}  // namespace nvsc
