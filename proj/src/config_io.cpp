#include "nvsc/config_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace nvsc {

namespace {

using nlohmann::json;
using ordered = nlohmann::ordered_json;
constexpr double kPi = 3.14159265358979323846;

Vec vec_from_json(const json& j) {
    Vec v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
    return v;
}

Mat ku_from_json(const json& j, int n) {
    if (j.is_number()) return j.get<double>() * Mat::Identity(n, n);
    Mat m(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) m(r, c) = j.at(r).at(c).get<double>();
    return m;
}

// Shortest round-trip formatting keeps traces byte-stable across runs.
void append_double(std::string& out, double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, res.ptr);
}

json double_or_string(double v) {
    if (std::isfinite(v)) return v;
    return v > 0 ? "inf" : "-inf";
}

}  // namespace

ScenarioConfig config_from_json(const json& j) {
    ScenarioConfig cfg;
    cfg.name = j.value("name", "scenario");
    cfg.seed = j.value("seed", 0ULL);

    const InputScaling scaling =
        j.value("input_scaling", std::string("force")) == "per_mass" ? InputScaling::per_mass
                                                                     : InputScaling::force;
    for (const auto& ja : j.at("agents")) {
        AgentParams p;
        p.index = ja.at("index").get<int>();
        p.scaling = scaling;
        if (ja.contains("tau")) p.tau = ja.at("tau").get<double>();
        if (ja.contains("a")) p.a = ja.at("a").get<double>();
        if (ja.contains("b")) p.b = ja.at("b").get<double>();
        p.mass = ja.value("mass", 1.0);
        if (ja.contains("vehicle")) {
            const auto& jv = ja.at("vehicle");
            p.vehicle.drag_coeff = jv.value("Cd", 0.0);
            p.vehicle.frontal_area = jv.value("S", 0.0);
            p.vehicle.rolling_coeff = jv.value("fr", 0.0);
            p.vehicle.grade_angle = jv.value("grade_deg", 0.0) * kPi / 180.0;
            p.vehicle.min_gap = jv.value("dm", 0.0);
            p.vehicle.headway = jv.value("sigma_h", 0.0);
            p.vehicle.standstill_gap = jv.value("d0", 0.0);
        }
        if (ja.contains("bounds")) {
            const auto& jb = ja.at("bounds");
            p.omega_star = jb.value("omega_star", 1.0);
            p.eta_star = jb.value("eta_star", 1.0);
            p.eps_star = jb.value("eps_star", 1.0);
            p.sigma_d_star = jb.value("sigma_d_star", 1.0);
            p.u_d_star = jb.value("u_d_star", 1.0);
        }
        cfg.agents.push_back(std::move(p));
    }
    const int N = static_cast<int>(cfg.agents.size());

    const auto& jt = j.at("topology");
    if (jt.at("type") == "lpf") {
        cfg.topology = build_lpf(N);
    } else {
        const auto& adj = jt.at("adjacency");
        cfg.topology.n_followers = static_cast<int>(adj.size()) - 1;
        cfg.topology.adjacency =
            Eigen::MatrixXi::Zero(cfg.topology.size(), cfg.topology.size());
        for (int r = 0; r < cfg.topology.size(); ++r)
            for (int c = 0; c < cfg.topology.size(); ++c)
                cfg.topology.adjacency(r, c) = adj.at(r).at(c).get<int>();
    }

    const auto& jl = j.at("leader");
    cfg.leader_tau = jl.value("tau", 0.1);
    cfg.leader_kv = jl.value("kv", 25.0);
    cfg.leader_ka = jl.value("ka", 10.0);
    cfg.leader_eps0 = jl.value("eps0", 30.0);
    for (const auto& pt : jl.at("profile"))
        cfg.profile.points.emplace_back(pt.at(0).get<double>(), pt.at(1).get<double>());

    cfg.gains.d0 = vec_from_json(j.at("offsets"));

    const auto& jg = j.at("gains");
    cfg.gains.k_c_diag = vec_from_json(jg.at("K_C"));
    cfg.gains.k_u = ku_from_json(jg.at("K_u"), 3);
    cfg.gains.rho = jg.value("rho", 2.0);
    cfg.gains.eps_reg_diag = vec_from_json(jg.at("eps_reg"));

    if (j.contains("estimator")) {
        const auto& je = j.at("estimator");
        cfg.neurons = je.value("neurons", 25);
        cfg.center_lo = je.value("center_lo", -30.0);
        cfg.center_hi = je.value("center_hi", 30.0);
        cfg.k_eta = je.value("K_eta", 1000.0);
        cfg.k_eta_star = je.value("K_eta_star", 1000.0);
        cfg.literal_activations = je.value("literal_activations", false);
    }
    if (j.contains("observer")) {
        const auto& jo = j.at("observer");
        cfg.k_o = jo.value("K_o", 1000.0);
        cfg.xi = jo.value("xi", 2.0);
        cfg.observer_integration =
            jo.value("integration", std::string("implicit")) == "rk4"
                ? ScenarioConfig::ObserverIntegration::rk4
                : ScenarioConfig::ObserverIntegration::implicit_euler;
    }
    cfg.psi = j.value("psi", 1000.0);

    const auto& jn = j.at("engine");
    cfg.dt_integration = jn.value("dt_integration", 1e-3);
    cfg.packet_period = jn.value("packet_period", 0.01);
    cfg.horizon = jn.value("horizon", 25.0);
    cfg.record_stride = jn.value("record_stride", 1);
    cfg.detection_window_factor = jn.value("detection_window_factor", 1.5);
    cfg.mechanism = jn.value("mechanism", std::string("hold")) == "zero"
                        ? InputMechanism::zero
                        : InputMechanism::hold;

    if (j.contains("disturbance")) {
        const auto& jd = j.at("disturbance");
        const std::string kind = jd.value("kind", "sinusoid");
        cfg.disturbance.kind = kind == "zero" ? DisturbanceProfile::Kind::zero
                               : kind == "filtered_noise"
                                   ? DisturbanceProfile::Kind::filtered_noise
                                   : DisturbanceProfile::Kind::sinusoid;
        cfg.disturbance.amplitude_frac = jd.value("amplitude_frac", 0.8);
        cfg.disturbance.seed = jd.value("seed", 0ULL);
    }
    cfg.initial_position_offset = j.value("initial_position_offset", 0.5);
    if (j.contains("xhat_offset")) cfg.xhat_offset = vec_from_json(j.at("xhat_offset"));

    if (j.contains("lemma1")) {
        const auto& jl1 = j.at("lemma1");
        cfg.lemma1.zeta_1i = jl1.value("zeta_1i", 2e5);
        if (jl1.contains("a"))
            for (int i = 0; i < 5; ++i) cfg.lemma1.a[i] = jl1.at("a").at(i).get<double>();
    }

    if (j.contains("dos")) {
        const auto& jd = j.at("dos");
        DosGenParams p;
        p.n0 = jd.value("n0", 1.0);
        p.tau_d = jd.value("tau_d", 1.0);
        p.t_energy = jd.value("T", 2);
        p.seed = jd.value("seed", 0ULL);
        if (jd.contains("targets")) p.targets = jd.at("targets").get<std::vector<int>>();
        p.min_duration = jd.value("min_duration", 0.2);
        p.max_duration = jd.value("max_duration", 1.0);
        p.max_extra_gap = jd.value("max_extra_gap", 2.0);
        p.min_attacks = jd.value("min_attacks", 0);
        if (jd.contains("target_duty")) p.target_duty = jd.at("target_duty").get<double>();
        cfg.dos_gen = p;
    }
    if (j.contains("dos_schedule"))
        cfg.dos_schedule = schedule_from_json(j.at("dos_schedule"),
                                              cfg.packet_period);
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config: " + path.string());
    json j;
    in >> j;
    return config_from_json(j);
}

ordered schedule_to_json(const DosSchedule& s) {
    ordered j;
    j["grid_step"] = s.grid_step;
    j["horizon"] = static_cast<double>(s.horizon_ticks) * s.grid_step;
    j["n0"] = s.n0;
    j["tau_d"] = s.tau_d;
    j["T"] = s.t_energy;
    j["seed"] = s.seed;
    ordered iv;
    for (const auto& [agent, list] : s.intervals) {
        ordered arr = ordered::array();
        for (const auto& w : list)
            arr.push_back({static_cast<double>(w.start_tick) * s.grid_step,
                           static_cast<double>(w.end_tick) * s.grid_step});
        iv[std::to_string(agent)] = std::move(arr);
    }
    j["intervals"] = std::move(iv);
    return j;
}

DosSchedule schedule_from_json(const json& j, double grid_step) {
    DosSchedule s;
    s.grid_step = j.value("grid_step", grid_step);
    if (s.grid_step <= 0.0) s.grid_step = grid_step;
    s.n0 = j.value("n0", 1.0);
    s.tau_d = j.value("tau_d", 1.0);
    s.t_energy = j.value("T", 2);
    s.seed = j.value("seed", 0ULL);
    if (j.contains("horizon"))
        s.horizon_ticks =
            static_cast<std::int64_t>(std::llround(j.at("horizon").get<double>() / s.grid_step));
    for (const auto& [key, arr] : j.at("intervals").items()) {
        std::vector<DosInterval> list;
        for (const auto& w : arr) {
            DosInterval iv;
            iv.start_tick =
                static_cast<std::int64_t>(std::llround(w.at(0).get<double>() / s.grid_step));
            iv.end_tick =
                static_cast<std::int64_t>(std::llround(w.at(1).get<double>() / s.grid_step));
            list.push_back(iv);
        }
        s.intervals[std::stoi(key)] = std::move(list);
    }
    return s;
}

void write_trace_csv(const SimTrace& trace, const std::filesystem::path& path) {
    std::string out;
    out.reserve(trace.rows() * 96 + 128);
    out += "t,agent,x1,x2,x3,xhat1,xhat2,xhat3,e1,e2,e3,u,eps,V,Vo,eta_norm,ud1,ud2,ud3,held\n";
    for (std::size_t r = 0; r < trace.rows(); ++r) {
        append_double(out, trace.t[r]);
        out += ',';
        out += std::to_string(trace.agent[r]);
        for (const auto* col : {&trace.x1, &trace.x2, &trace.x3, &trace.xh1, &trace.xh2,
                                &trace.xh3, &trace.e1, &trace.e2, &trace.e3, &trace.u}) {
            out += ',';
            append_double(out, (*col)[r]);
        }
        out += ',';
        out += std::to_string(trace.eps[r]);
        for (const auto* col : {&trace.v_lyap, &trace.vo_lyap, &trace.eta_norm, &trace.ud1,
                                &trace.ud2, &trace.ud3}) {
            out += ',';
            append_double(out, (*col)[r]);
        }
        out += ',';
        out += std::to_string(trace.held[r]);
        out += '\n';
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write trace: " + path.string());
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
}

SimTrace read_trace_csv(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read trace: " + path.string());
    std::string line;
    if (!std::getline(f, line)) throw std::runtime_error("empty trace file");
    SimTrace tr;
    int max_agent = 0;
    const auto parse_double = [](const std::string& s, std::size_t b, std::size_t e) {
        double v = 0.0;
        std::from_chars(s.data() + b, s.data() + e, v);
        return v;
    };
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::array<double, 20> vals{};
        std::size_t begin = 0;
        for (int c = 0; c < 20; ++c) {
            std::size_t end = line.find(',', begin);
            if (end == std::string::npos) end = line.size();
            vals[c] = parse_double(line, begin, end);
            begin = end + 1;
        }
        tr.t.push_back(vals[0]);
        tr.agent.push_back(static_cast<int>(vals[1]));
        max_agent = std::max(max_agent, static_cast<int>(vals[1]));
        tr.x1.push_back(vals[2]);
        tr.x2.push_back(vals[3]);
        tr.x3.push_back(vals[4]);
        tr.xh1.push_back(vals[5]);
        tr.xh2.push_back(vals[6]);
        tr.xh3.push_back(vals[7]);
        tr.e1.push_back(vals[8]);
        tr.e2.push_back(vals[9]);
        tr.e3.push_back(vals[10]);
        tr.u.push_back(vals[11]);
        tr.eps.push_back(static_cast<int>(vals[12]));
        tr.v_lyap.push_back(vals[13]);
        tr.vo_lyap.push_back(vals[14]);
        tr.eta_norm.push_back(vals[15]);
        tr.ud1.push_back(vals[16]);
        tr.ud2.push_back(vals[17]);
        tr.ud3.push_back(vals[18]);
        tr.held.push_back(static_cast<int>(vals[19]));
    }
    tr.n_followers = max_agent;
    if (tr.rows() >= 2) {
        const std::size_t per_block = static_cast<std::size_t>(max_agent) + 1;
        if (tr.rows() > per_block) tr.packet_period = tr.t[per_block] - tr.t[0];
    }
    tr.record_stride = 1;
    return tr;
}

json make_report(const ScenarioConfig& cfg, const SimTrace& trace,
                 const DosSchedule& schedule, const std::vector<Mat>& P,
                 const std::vector<SystemMatrices>& matrices,
                 const std::vector<std::string>& warnings) {
    ordered rep;
    rep["scenario"] = cfg.name;
    rep["seed"] = cfg.seed;
    rep["mechanism"] = cfg.mechanism == InputMechanism::hold ? "hold" : "zero";
    rep["warnings"] = warnings;

    const RunMetrics m = run_metrics(trace);
    ordered jm;
    jm["finite"] = m.finite;
    jm["max_abs_e1"] = m.max_abs_e1;
    jm["max_abs_e2"] = m.max_abs_e2;
    jm["max_abs_e3"] = m.max_abs_e3;
    jm["sup_e_norm"] = m.sup_e_norm;
    jm["sup_v"] = m.sup_v;
    rep["metrics"] = std::move(jm);

    const CollisionReport col = collision_check(trace, cfg.agents);
    ordered jc;
    jc["ok"] = col.ok;
    jc["min_spacing"] = col.min_spacing;
    jc["min_spacing_t"] = col.min_spacing_t;
    jc["min_spacing_front"] = col.min_spacing_front;
    jc["below_min_gap"] = col.below_min_gap;
    if (!col.ok) {
        jc["first_crossing_t"] = col.first_crossing_t;
        jc["crossing_front"] = col.crossing_front;
    }
    rep["collision"] = std::move(jc);

    const ConvergenceReport conv = check_convergence(trace, 0.5, 5.0);
    ordered jv;
    jv["applicable"] = conv.summary.applicable;
    jv["satisfied"] = conv.summary.satisfied;
    jv["end_abs_e1"] = conv.end_abs_e1;
    jv["end_abs_e2"] = conv.end_abs_e2;
    jv["end_abs_e3"] = conv.end_abs_e3;
    jv["first_quarter_vel_mean"] = conv.first_quarter_vel_mean;
    jv["last_quarter_vel_mean"] = conv.last_quarter_vel_mean;
    jv["first_quarter_acc_mean"] = conv.first_quarter_acc_mean;
    jv["last_quarter_acc_mean"] = conv.last_quarter_acc_mean;
    rep["convergence"] = std::move(jv);

    std::vector<double> d_oi;
    for (const auto& a : cfg.agents)
        d_oi.push_back(d_oi_constant(a.sigma_d_star, a.eta_star, cfg.xi));
    const BoundReport obs = check_observer_envelope(trace, P, cfg.psi, d_oi);
    ordered jo;
    jo["applicable"] = obs.applicable;
    if (obs.applicable) {
        jo["satisfied"] = obs.satisfied;
        jo["worst_margin"] = obs.worst_margin;
        jo["worst_time"] = obs.worst_time;
    }
    jo["d_oi"] = d_oi;
    rep["observer_envelope"] = std::move(jo);

    const bool attacked = !schedule.intervals.empty();
    if (attacked) {
        const Lemma1Report l1 = check_lemma1(cfg, trace, schedule, P, matrices);
        ordered jl;
        jl["applicable"] = l1.summary.applicable;
        jl["satisfied"] = l1.summary.satisfied;
        jl["worst_margin"] = double_or_string(l1.summary.worst_margin);
        jl["eq54_margin"] = l1.eq54_margin;
        ordered arr = ordered::array();
        for (const auto& iv : l1.intervals) {
            ordered ji;
            ji["agent"] = iv.agent;
            ji["t_k"] = iv.t_k;
            ji["t_start"] = iv.t_start;
            ji["t_end"] = iv.t_end;
            ji["duration"] = iv.duration;
            ji["gate"] = iv.gate;
            ji["within_gate"] = iv.within_gate;
            ji["delta_1k"] = iv.delta;
            ji["gamma_1i"] = iv.gamma;
            ji["bound"] = double_or_string(iv.bound);
            ji["sup_deviation"] = iv.sup_deviation;
            ji["satisfied"] = iv.satisfied;
            arr.push_back(std::move(ji));
        }
        jl["intervals"] = std::move(arr);
        rep["lemma1"] = std::move(jl);

        const Theorem4Report t4 = theorem4_report(cfg, trace, schedule, P, matrices);
        ordered jt;
        jt["applicable"] = t4.applicable;
        jt["chi0"] = t4.chi0;
        jt["nu0"] = t4.nu0;
        jt["chi1"] = t4.chi1;
        jt["rho_star"] = double_or_string(t4.rho_star);
        jt["log_bound"] = double_or_string(t4.log_bound);
        jt["bound"] = double_or_string(t4.bound);
        jt["sup_v"] = t4.sup_v;
        rep["theorem4"] = std::move(jt);

        rep["packet_energy_ok"] = realized_energy_ok(schedule);
        rep["schedule"] = schedule_to_json(schedule);
    }
    return rep;
}

void write_json(const json& j, const std::filesystem::path& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write: " + path.string());
    f << j.dump(2) << '\n';
}

}  // namespace nvsc
