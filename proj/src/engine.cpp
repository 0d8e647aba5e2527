#include "nvsc/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace nvsc {

std::pair<double, double> LeaderProfile::sample(double t) const {
    if (points.empty()) return {0.0, 0.0};
    if (t <= points.front().first) return {points.front().second, 0.0};
    for (std::size_t s = 0; s + 1 < points.size(); ++s) {
        const auto [t0, v0] = points[s];
        const auto [t1, v1] = points[s + 1];
        if (t < t1) {
            const double slope = (v1 - v0) / (t1 - t0);
            return {v0 + slope * (t - t0), slope};
        }
    }
    return {points.back().second, 0.0};
}

std::vector<std::string> LeaderProfile::validate() const {
    std::vector<std::string> v;
    for (std::size_t s = 0; s + 1 < points.size(); ++s)
        if (!(points[s].first < points[s + 1].first))
            v.push_back("profile: breakpoint times must be strictly increasing");
    for (const auto& [t, vel] : points)
        if (!std::isfinite(t) || !std::isfinite(vel))
            v.push_back("profile: non-finite breakpoint");
    return v;
}

std::pair<double, double> leader_profile(const ScenarioConfig& cfg, double t) {
    return cfg.profile.sample(t);
}

LeaderModel make_leader_model(const ScenarioConfig& cfg) {
    LeaderModel l;
    const int n = 3;
    l.A0 = Mat::Zero(n, n);
    l.A0(0, 1) = 1.0;
    l.A0(1, 2) = 1.0;
    l.A0(2, 2) = -1.0 / cfg.leader_tau;
    l.Bf0 = Vec::Zero(n);
    l.Bf0(n - 1) = 1.0;
    l.eps0 = cfg.leader_eps0;
    const LeaderProfile profile = cfg.profile;
    const double tau = cfg.leader_tau, kv = cfg.leader_kv, ka = cfg.leader_ka;
    l.f0 = [profile, tau, kv, ka](const Vec& x, double t) {
        const auto [vr, ar] = profile.sample(t);
        return x(2) / tau + kv * (vr - x(1)) + ka * (ar - x(2));
    };
    return l;
}

std::vector<std::string> validate_config(const ScenarioConfig& cfg) {
    std::vector<std::string> v;
    const int N = static_cast<int>(cfg.agents.size());
    if (N < 1) v.push_back("config: need at least one follower");
    if (cfg.horizon <= 0.0) v.push_back("config: horizon must be positive");
    if (cfg.dt_integration <= 0.0 || cfg.packet_period <= 0.0)
        v.push_back("config: dt_integration and packet_period must be positive");
    else {
        const double ratio = cfg.packet_period / cfg.dt_integration;
        if (std::abs(ratio - std::llround(ratio)) > 1e-9 * ratio)
            v.push_back("config: dt_integration must divide packet_period");
    }
    if (cfg.record_stride < 1) v.push_back("config: record_stride must be >= 1");
    if (cfg.topology.n_followers != N)
        v.push_back("config: topology size does not match the agent list");
    for (const auto& msg : validate(cfg.topology)) v.push_back("topology: " + msg);
    for (const auto& msg : cfg.profile.validate()) v.push_back(msg);
    if (cfg.gains.d0.size() != 3) v.push_back("config: D_0 must have 3 entries");
    if (cfg.psi <= 0.0) v.push_back("config: psi must be positive");
    if (cfg.xi <= 1.0) v.push_back("observer: xi must exceed 1");
    if (cfg.k_o <= 0.0) v.push_back("observer: K_o must be positive");
    if (cfg.neurons < 1) v.push_back("estimator: need at least one neuron");

    for (int i = 0; i < N; ++i) {
        const auto& p = cfg.agents[i];
        const std::string tag = "agent " + std::to_string(p.index);
        if (p.index != i + 1)
            v.push_back("config: agents must be listed as followers 1..N in order");
        if (p.tau && *p.tau <= 0.0) v.push_back(tag + ": tau <= 0");
        if (p.mass <= 0.0) v.push_back(tag + ": mass <= 0");
        for (auto [val, name] :
             {std::pair<double, const char*>{p.omega_star, "omega_star"},
              {p.eta_star, "eta_star"},
              {p.eps_star, "eps_star"},
              {p.sigma_d_star, "sigma_d_star"},
              {p.u_d_star, "u_d_star"}})
            if (val <= 0.0) v.push_back(tag + ": " + name + " must be positive");
        SystemMatrices m;
        try {
            m = build_matrices(p, 3);
        } catch (const std::exception& e) {
            v.push_back(std::string("agent matrices: ") + e.what());
            continue;
        }
        for (const auto& msg : validate_gains(cfg.gains, m, p.omega_star, p.u_d_star))
            v.push_back(tag + ": " + msg);
        if (cfg.xi > 1.0 && p.sigma_d_star > 0.0 && p.eta_star > 0.0) {
            ObserverState obs{Vec::Zero(3), Vec::Constant(3, cfg.k_o), cfg.xi};
            const auto rep = check_gain_condition(obs, p.sigma_d_star, p.eta_star);
            if (!rep.ok)
                v.push_back(tag + ": observer gain condition (Ko vs xi*(sigma*+2*eta*)) "
                                  "violated, margin " + std::to_string(rep.margin));
        }
    }
    return v;
}

namespace {

using Eigen::Matrix3d;
using Eigen::Vector3d;

struct AgentRt {
    AgentParams p;
    SystemMatrices m;
    Mat P;
    Matrix3d P3;
    double a33 = 0.0;  // companion-form corner of A
    double b3 = 0.0;   // input column last entry
    std::vector<int> nbrs;
    int degree = 0;
    NeuralConfig ncfg;
    ControllerState cs;
    HeldControl last_good;
    Vector3d c0 = Vector3d::Zero();  // tick-held observer forcing
    Mat rate;                        // tick-held adaptation rate
    double applied_u = 0.0;
    Vec uhat_now;
    Vec e_now, eo_now;
    double drag_over_m = 0.0;
    double f_static = 0.0;  // rolling + grade resistance (velocity-independent)
    double w_noise = 0.0;
    std::mt19937_64 noise_rng;
    std::vector<Vec> nbr_err;
    bool fresh = true;
};

}  // namespace

RunResult run_scenario(const ScenarioConfig& cfg) {
    {
        auto violations = validate_config(cfg);
        if (!violations.empty()) throw ConfigError(std::move(violations));
    }

    const int N = static_cast<int>(cfg.agents.size());
    const int n = 3;
    const double h = cfg.packet_period;
    const double dt = cfg.dt_integration;
    const auto sub = static_cast<std::int64_t>(std::llround(h / dt));
    const auto ticks = static_cast<std::int64_t>(std::llround(cfg.horizon / h));

    RunResult out;
    {
        NeuralConfig probe = make_neural_config(cfg.neurons, n, cfg.center_lo, cfg.center_hi,
                                                cfg.k_eta, cfg.literal_activations);
        probe.k_eta_star = cfg.k_eta_star;
        if (const auto msg = check_k_eta_bound(probe); !msg.empty()) out.warnings.push_back(msg);
    }

    DosSchedule sched;
    sched.grid_step = h;
    sched.horizon_ticks = ticks;
    if (cfg.dos_schedule) {
        sched = *cfg.dos_schedule;
        sched.grid_step = h;
        if (sched.horizon_ticks == 0) sched.horizon_ticks = ticks;
        if (auto viol = validate_schedule(sched, 128); !viol.empty())
            throw ConfigError({"dos schedule: " + viol.front().bound + " bound violated (" +
                               viol.front().detail + ")"});
    } else if (cfg.dos_gen) {
        sched = generate_schedule(*cfg.dos_gen, cfg.horizon, h);
    }
    out.schedule = sched;

    const LeaderModel leader = make_leader_model(cfg);
    const double tau0 = cfg.leader_tau, kv = cfg.leader_kv, ka = cfg.leader_ka;
    const LeaderProfile& profile = cfg.profile;
    const auto [v0_init, a0_init] = profile.sample(0.0);
    Vector3d x0(0.0, v0_init, a0_init);

    std::vector<AgentRt> ag(N);
    for (int i = 0; i < N; ++i) {
        AgentRt& a = ag[i];
        a.p = cfg.agents[i];
        a.m = build_matrices(a.p, n);
        a.a33 = a.m.A(n - 1, n - 1);
        a.b3 = a.m.B(n - 1);
        a.nbrs = neighbors(cfg.topology, i + 1);
        a.degree = static_cast<int>(a.nbrs.size());
        RiccatiProblem prob{a.m.A, static_cast<double>(a.degree) * (a.m.B * a.m.B.transpose()),
                            cfg.psi};
        a.P = solve_are(prob).P;
        a.P3 = a.P;
        a.ncfg = make_neural_config(cfg.neurons, n, cfg.center_lo, cfg.center_hi, cfg.k_eta,
                                    cfg.literal_activations);
        a.ncfg.k_eta_star = cfg.k_eta_star;
        a.cs.P = a.P;
        a.cs.neural = make_neural_state(a.ncfg);
        Vec xi0 = Vec(x0) + static_cast<double>(a.p.index) * cfg.gains.d0;
        xi0(0) += cfg.initial_position_offset;
        a.cs.observer = ObserverState{xi0, Vec::Constant(n, cfg.k_o), cfg.xi};
        if (cfg.xhat_offset.size() == n) a.cs.observer.x_hat += cfg.xhat_offset;
        a.cs.last_packet_time = 0.0;
        a.rate = Mat::Zero(n, cfg.neurons);
        a.uhat_now = Vec::Zero(n);
        a.e_now = Vec::Zero(n);
        a.eo_now = Vec::Zero(n);
        a.drag_over_m =
            0.5 * 1.225 * a.p.vehicle.drag_coeff * a.p.vehicle.frontal_area / a.p.mass;
        a.f_static = 9.81 * (a.p.vehicle.rolling_coeff * std::cos(a.p.vehicle.grade_angle) +
                             std::sin(a.p.vehicle.grade_angle));
        a.noise_rng.seed(cfg.seed ^ (0x5bd1e9955bd1e995ULL + a.p.index));
        a.nbr_err.assign(a.nbrs.size(), Vec::Zero(n));
        out.matrices.push_back(a.m);
        out.P.push_back(a.P);
    }

    std::vector<Vector3d> X(N);
    for (int i = 0; i < N; ++i) {
        Vec xi0 = Vec(x0) + static_cast<double>(ag[i].p.index) * cfg.gains.d0;
        xi0(0) += cfg.initial_position_offset;
        X[i] = xi0;
    }

    SimTrace& tr = out.trace;
    tr.n_followers = N;
    tr.packet_period = h;
    tr.record_stride = cfg.record_stride;
    const std::size_t approx_rows =
        static_cast<std::size_t>(ticks / cfg.record_stride + 2) * (N + 1);
    for (auto* col : {&tr.t, &tr.x1, &tr.x2, &tr.x3, &tr.xh1, &tr.xh2, &tr.xh3, &tr.e1,
                      &tr.e2, &tr.e3, &tr.u, &tr.v_lyap, &tr.vo_lyap, &tr.eta_norm, &tr.ud1,
                      &tr.ud2, &tr.ud3})
        col->reserve(approx_rows);
    tr.agent.reserve(approx_rows);
    tr.eps.reserve(approx_rows);
    tr.held.reserve(approx_rows);

    const auto record = [&](double t) {
        tr.t.push_back(t);
        tr.agent.push_back(0);
        tr.x1.push_back(x0(0));
        tr.x2.push_back(x0(1));
        tr.x3.push_back(x0(2));
        tr.xh1.push_back(x0(0));
        tr.xh2.push_back(x0(1));
        tr.xh3.push_back(x0(2));
        tr.e1.push_back(0.0);
        tr.e2.push_back(0.0);
        tr.e3.push_back(0.0);
        tr.u.push_back(0.0);
        tr.eps.push_back(0);
        tr.v_lyap.push_back(0.0);
        tr.vo_lyap.push_back(0.0);
        tr.eta_norm.push_back(0.0);
        tr.ud1.push_back(0.0);
        tr.ud2.push_back(0.0);
        tr.ud3.push_back(0.0);
        tr.held.push_back(0);
        for (int i = 0; i < N; ++i) {
            const AgentRt& a = ag[i];
            const Vec& xh = a.cs.observer.x_hat;
            tr.t.push_back(t);
            tr.agent.push_back(a.p.index);
            tr.x1.push_back(X[i](0));
            tr.x2.push_back(X[i](1));
            tr.x3.push_back(X[i](2));
            tr.xh1.push_back(xh(0));
            tr.xh2.push_back(xh(1));
            tr.xh3.push_back(xh(2));
            tr.e1.push_back(a.e_now(0));
            tr.e2.push_back(a.e_now(1));
            tr.e3.push_back(a.e_now(2));
            tr.u.push_back(a.applied_u);
            tr.eps.push_back(a.cs.attack_flag);
            tr.v_lyap.push_back(a.e_now.dot(a.P * a.e_now));
            tr.vo_lyap.push_back(a.eo_now.dot(a.P * a.eo_now));
            tr.eta_norm.push_back(a.cs.neural.eta_hat.norm());
            tr.ud1.push_back(a.uhat_now(0));
            tr.ud2.push_back(a.uhat_now(1));
            tr.ud3.push_back(a.uhat_now(2));
            tr.held.push_back(a.fresh ? 0 : 1);
        }
    };

    const int m_neurons = cfg.neurons;
    const Eigen::Index weights_per = static_cast<Eigen::Index>(n) * m_neurons;
    const Eigen::Index off_x = n;
    const Eigen::Index off_eta = n + static_cast<Eigen::Index>(N) * n;
    const Eigen::Index bundle_dim = off_eta + static_cast<Eigen::Index>(N) * weights_per;
    const bool obs_in_bundle =
        cfg.observer_integration == ScenarioConfig::ObserverIntegration::rk4;
    const Eigen::Index off_obs = bundle_dim;
    const Eigen::Index full_dim = obs_in_bundle ? bundle_dim + N * n : bundle_dim;

    Vec bundle(full_dim);
    RungeKutta4 rk(full_dim);
    const double k_o = cfg.k_o;
    const Vec k_o_diag = Vec::Constant(n, k_o);
    const bool sinusoid = cfg.disturbance.kind == DisturbanceProfile::Kind::sinusoid;
    const bool noise = cfg.disturbance.kind == DisturbanceProfile::Kind::filtered_noise;
    const double amp_frac = cfg.disturbance.amplitude_frac;

    // Hot path: everything the integrator touches is index arithmetic on the
    // flat bundle; no dynamic-size Eigen temporaries.
    const auto derivative = [&](double t, const Vec& x, Vec& d) {
        const auto [vr, ar] = profile.sample(t);
        d(0) = x(1);
        d(1) = x(2);
        d(2) = -x(2) / tau0 + (x(2) / tau0 + kv * (vr - x(1)) + ka * (ar - x(2)));
        for (int i = 0; i < N; ++i) {
            const AgentRt& a = ag[i];
            const Eigen::Index o = off_x + i * n;
            const double v = x(o + 1), acc = x(o + 2);
            double w = 0.0;
            if (sinusoid)
                w = std::clamp(amp_frac * a.p.omega_star * std::sin(0.5 * t + a.p.index),
                               -a.p.omega_star, a.p.omega_star);
            else if (noise)
                w = a.w_noise;
            d(o) = v;
            d(o + 1) = acc;
            d(o + 2) = a.a33 * acc + a.b3 * a.applied_u - (a.drag_over_m * v * v + a.f_static) + w;
            d.segment(off_eta + i * weights_per, weights_per) =
                Eigen::Map<const Vec>(a.rate.data(), weights_per);
            if (obs_in_bundle) {
                const Eigen::Index q = off_obs + i * n;
                if (!a.fresh) {
                    d.segment(q, n).setZero();
                } else {
                    const Vector3d xi(x(o), x(o + 1), x(o + 2));
                    const Vector3d xh(x(q), x(q + 1), x(q + 2));
                    const Vector3d z = a.P3 * (xi - xh);
                    d(q) = xh(1) + a.c0(0) + k_o * std::tanh(z(0));
                    d(q + 1) = xh(2) + a.c0(1) + k_o * std::tanh(z(1));
                    d(q + 2) = a.a33 * xh(2) + a.c0(2) + k_o * std::tanh(z(2));
                }
            }
        }
    };

    std::vector<Vec> e_all(N, Vec::Zero(n));

    const auto controller_pass = [&](double t, bool boot) {
        const Vec x0v = Vec(x0);
        for (int i = 0; i < N; ++i)
            e_all[i] = error_vector(Vec(X[i]), x0v, ag[i].p.index, cfg.gains.d0);
        const double f0_val = leader.f0(x0v, t);
        for (int i = 0; i < N; ++i) {
            AgentRt& a = ag[i];
            if (!a.fresh && !boot) continue;
            a.e_now = e_all[i];
            a.eo_now = Vec(X[i]) - a.cs.observer.x_hat;
            a.uhat_now = virtual_disturbance(k_o_diag, a.P, a.eo_now);
            const Mat phi_x = activations(a.ncfg, Vec(X[i]));
            const double fhat = estimate(a.cs.neural, phi_x);
            const Mat phi_xh = activations(a.ncfg, a.cs.observer.x_hat);
            const double fhat_obs = estimate(a.cs.neural, phi_xh);
            const Vec u_bar =
                exogenous_control(fhat, f0_val, cfg.gains.k_u, a.P, a.e_now, a.m.A, leader.A0,
                                  x0v, a.p.index, cfg.gains.d0, a.m.Bf, leader.Bf0);
            for (std::size_t j = 0; j < a.nbrs.size(); ++j)
                a.nbr_err[j] = (a.nbrs[j] == 0) ? Vec::Zero(n) : e_all[a.nbrs[j] - 1];
            const double u_live = control_nominal(a.m, a.P, cfg.gains, a.e_now, a.nbr_err,
                                                  a.nbrs.size(), u_bar, a.uhat_now);
            const ConsensusSums s = consensus_core(a.P, cfg.gains, a.e_now, a.nbr_err);
            Vec c0 = -0.5 * a.m.B * a.m.B.dot(a.P * (s.v1 + s.v2));
            c0 += a.m.B * a.m.B.dot(a.uhat_now);
            c0 += u_bar;
            c0 += a.m.Bf * fhat_obs;
            a.c0 = Vector3d(c0);
            a.rate = adapt_rate(a.ncfg, a.cs.neural, phi_x, a.e_now, a.P, a.m.Bf);

            a.last_good.t_k = t;
            a.last_good.u_ia_k = u_live;
            a.last_good.u_bar_k = u_bar;
            a.last_good.u_hat_d_k = a.uhat_now;
            a.last_good.e_i_k = a.e_now;
            a.last_good.e_o_k = a.eo_now;
            a.last_good.eta_hat_k = a.cs.neural.eta_hat;
            a.last_good.e_j_norms_k.clear();
            for (const auto& ej : a.nbr_err) a.last_good.e_j_norms_k.push_back(ej.norm());

            if (a.fresh)
                a.applied_u = u_live;
            else if (boot)  // attacked before any delivery: hold the boot value
                a.applied_u = (cfg.mechanism == InputMechanism::hold) ? u_live : 0.0;
        }
        for (int i = 0; i < N; ++i) {
            AgentRt& a = ag[i];
            a.e_now = e_all[i];
            a.eo_now = Vec(X[i]) - a.cs.observer.x_hat;
            if (a.fresh) continue;
            if (cfg.mechanism == InputMechanism::zero) a.applied_u = 0.0;
            a.rate.setZero();
        }
    };

    const auto check_finite = [&](double t) {
        if (!x0.allFinite()) throw NumericalBlowup(t, 0, "leader state is not finite");
        for (int i = 0; i < N; ++i) {
            if (!X[i].allFinite())
                throw NumericalBlowup(t, ag[i].p.index,
                                      "follower plant state is not finite");
            if (!ag[i].cs.observer.x_hat.allFinite())
                throw NumericalBlowup(t, ag[i].p.index, "observer state is not finite");
            if (!ag[i].cs.neural.eta_hat.allFinite())
                throw NumericalBlowup(t, ag[i].p.index, "neural weights are not finite");
        }
    };

    for (std::int64_t k = 0; k < ticks; ++k) {
        const double t = static_cast<double>(k) * h;
        for (int i = 0; i < N; ++i) ag[i].fresh = !sched.blocks(ag[i].p.index, k);

        if (noise)
            for (int i = 0; i < N; ++i) {
                AgentRt& a = ag[i];
                const double raw = uniform_in(a.noise_rng, -1.0, 1.0);
                a.w_noise =
                    std::clamp(0.95 * a.w_noise + 0.15 * raw * amp_frac * a.p.omega_star,
                               -a.p.omega_star, a.p.omega_star);
            }

        controller_pass(t, /*boot=*/k == 0);

        for (int i = 0; i < N; ++i) {
            AgentRt& a = ag[i];
            const int eps = detect_dos(a.cs, t, h, a.fresh, cfg.detection_window_factor);
            if (eps == 1 && a.cs.attack_flag == 0) {
                a.cs.attack_flag = 0;  // capture_hold flips it
                capture_hold(a.cs, a.last_good);
                out.snapshots.push_back({a.p.index, a.last_good, t, -1.0});
            } else if (eps == 0 && a.cs.attack_flag == 1) {
                release_hold(a.cs);
                for (auto it = out.snapshots.rbegin(); it != out.snapshots.rend(); ++it)
                    if (it->agent == a.p.index && it->release_t < 0.0) {
                        it->release_t = t;
                        break;
                    }
            } else {
                a.cs.attack_flag = eps;
            }
        }

        if (k % cfg.record_stride == 0) record(t);
        check_finite(t);

        bundle.segment(0, n) = x0;
        for (int i = 0; i < N; ++i) {
            bundle.segment(off_x + i * n, n) = X[i];
            bundle.segment(off_eta + i * weights_per, weights_per) =
                Eigen::Map<const Vec>(ag[i].cs.neural.eta_hat.data(), weights_per);
            if (obs_in_bundle) bundle.segment(off_obs + i * n, n) = ag[i].cs.observer.x_hat;
        }

        for (std::int64_t s = 0; s < sub; ++s) {
            const double ts = t + static_cast<double>(s) * dt;
            rk.step(derivative, ts, bundle, dt);

            if (!obs_in_bundle) {
                // Backward-Euler relaxation of the stiff observer correction
                // against the freshly advanced plant state; preserves the
                // tanh boundary-layer equilibrium at any dt.
                for (int i = 0; i < N; ++i) {
                    AgentRt& a = ag[i];
                    if (!a.fresh) continue;
                    const Eigen::Index o = off_x + i * n;
                    const Vector3d xi(bundle(o), bundle(o + 1), bundle(o + 2));
                    Vector3d xh(a.cs.observer.x_hat(0), a.cs.observer.x_hat(1),
                                a.cs.observer.x_hat(2));
                    Vector3d xh_new = xh;
                    Matrix3d A3 = Matrix3d::Zero();
                    A3(0, 1) = 1.0;
                    A3(1, 2) = 1.0;
                    A3(2, 2) = a.a33;
                    for (int it = 0; it < 50; ++it) {
                        const Vector3d z = a.P3 * (xi - xh_new);
                        const Vector3d tz(std::tanh(z(0)), std::tanh(z(1)), std::tanh(z(2)));
                        const Vector3d F = xh_new - xh -
                                           dt * (A3 * xh_new + a.c0 + k_o * tz);
                        Matrix3d J = Matrix3d::Identity() - dt * A3;
                        J.row(0) += dt * k_o * sech2(z(0)) * a.P3.row(0);
                        J.row(1) += dt * k_o * sech2(z(1)) * a.P3.row(1);
                        J.row(2) += dt * k_o * sech2(z(2)) * a.P3.row(2);
                        const Vector3d dx = J.partialPivLu().solve(-F);
                        xh_new += dx;
                        if (dx.cwiseAbs().maxCoeff() <
                            1e-12 * (1.0 + xh_new.cwiseAbs().maxCoeff()))
                            break;
                    }
                    a.cs.observer.x_hat = xh_new;
                }
            }
        }

        x0 = bundle.segment(0, n);
        for (int i = 0; i < N; ++i) {
            X[i] = bundle.segment(off_x + i * n, n);
            ag[i].cs.neural.eta_hat = Eigen::Map<const Mat>(
                bundle.data() + off_eta + i * weights_per, n, m_neurons);
            if (obs_in_bundle) ag[i].cs.observer.x_hat = bundle.segment(off_obs + i * n, n);
        }
    }

    const double t_end = static_cast<double>(ticks) * h;
    {
        const Vec x0v = Vec(x0);
        for (int i = 0; i < N; ++i) {
            ag[i].e_now = error_vector(Vec(X[i]), x0v, ag[i].p.index, cfg.gains.d0);
            ag[i].eo_now = Vec(X[i]) - ag[i].cs.observer.x_hat;
        }
    }
    check_finite(t_end);
    record(t_end);
    return out;
}

}  // namespace nvsc
