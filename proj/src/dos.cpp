#include "nvsc/dos.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace nvsc {

namespace {

std::int64_t blocked_ticks_before(const std::vector<DosInterval>& iv, std::int64_t t) {
    std::int64_t total = 0;
    for (const auto& w : iv) {
        if (w.start_tick >= t) break;
        total += std::min(w.end_tick, t) - w.start_tick;
    }
    return total;
}

int onsets_in(const std::vector<DosInterval>& iv, std::int64_t tau, std::int64_t t) {
    int n = 0;
    for (const auto& w : iv)
        if (w.start_tick >= tau && w.start_tick < t) ++n;
    return n;
}

void check_frequency(const DosSchedule& s, int agent, const std::vector<DosInterval>& iv,
                     std::int64_t tau, std::int64_t t, std::vector<ScheduleViolation>& out) {
    if (t <= tau) return;
    const int n = onsets_in(iv, tau, t);
    if (n <= s.n0) return;
    const double window = static_cast<double>(t - tau) * s.grid_step;
    if ((n - s.n0) * s.tau_d > window)
        out.push_back({"frequency", agent, tau * s.grid_step, t * s.grid_step,
                       std::to_string(n) + " onsets exceed n0 + window/tau_D = " +
                           std::to_string(s.n0 + window / s.tau_d)});
}

void check_energy_prefix(const DosSchedule& s, int agent, const std::vector<DosInterval>& iv,
                         std::int64_t t, std::vector<ScheduleViolation>& out) {
    if (t <= 0) return;
    const std::int64_t blocked = blocked_ticks_before(iv, t);
    // |Xi(0,t)| <= t/T, exact in ticks: T*blocked <= t.
    if (static_cast<std::int64_t>(s.t_energy) * blocked > t)
        out.push_back({"energy", agent, 0.0, t * s.grid_step,
                       "blocked measure " + std::to_string(blocked * s.grid_step) +
                           " exceeds window/T = " +
                           std::to_string(t * s.grid_step / s.t_energy)});
}

}  // namespace

bool DosSchedule::blocks(int agent, std::int64_t tick) const {
    const auto it = intervals.find(agent);
    if (it == intervals.end()) return false;
    for (const auto& w : it->second) {
        if (tick < w.start_tick) return false;
        if (tick < w.end_tick) return true;
    }
    return false;
}

std::vector<ScheduleViolation> validate_schedule(const DosSchedule& s, int probes) {
    if (probes < 1) throw std::invalid_argument("validate_schedule: probes must be >= 1");
    std::vector<ScheduleViolation> out;
    if (s.t_energy < 1)
        out.push_back({"structure", 0, 0, 0, "T must be a natural number >= 1"});
    if (s.tau_d <= 0.0) out.push_back({"structure", 0, 0, 0, "tau_D must be positive"});
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ s.seed);
    for (const auto& [agent, iv] : s.intervals) {
        std::int64_t prev_end = -1;
        for (const auto& w : iv) {
            if (w.end_tick <= w.start_tick || w.start_tick < 0)
                out.push_back({"structure", agent, w.start_tick * s.grid_step,
                               w.end_tick * s.grid_step, "empty or negative interval"});
            if (w.start_tick < prev_end)
                out.push_back({"structure", agent, w.start_tick * s.grid_step,
                               w.end_tick * s.grid_step, "intervals overlap or unsorted"});
            prev_end = w.end_tick;
        }

        std::vector<std::int64_t> marks{0};
        if (s.horizon_ticks > 0) marks.push_back(s.horizon_ticks);
        for (const auto& w : iv) {
            marks.push_back(w.start_tick);
            marks.push_back(w.end_tick);
        }
        std::sort(marks.begin(), marks.end());
        marks.erase(std::unique(marks.begin(), marks.end()), marks.end());

        for (std::size_t a = 0; a < marks.size(); ++a)
            for (std::size_t b = a + 1; b < marks.size(); ++b)
                check_frequency(s, agent, iv, marks[a], marks[b], out);
        for (const auto t : marks) check_energy_prefix(s, agent, iv, t, out);

        const std::int64_t span = std::max<std::int64_t>(
            s.horizon_ticks, iv.empty() ? 1 : iv.back().end_tick);
        for (int p = 0; p < probes; ++p) {
            std::int64_t a = static_cast<std::int64_t>(uniform_index(rng, span + 1));
            std::int64_t b = static_cast<std::int64_t>(uniform_index(rng, span + 1));
            if (a > b) std::swap(a, b);
            if (a != b) check_frequency(s, agent, iv, a, b, out);
            check_energy_prefix(s, agent, iv, b, out);
        }
    }
    return out;
}

DosSchedule generate_schedule(const DosGenParams& p, double horizon, double grid_step) {
    if (p.tau_d <= 0.0) throw std::invalid_argument("generate_schedule: tau_D must be positive");
    if (p.t_energy < 1) throw std::invalid_argument("generate_schedule: T must be >= 1");
    if (horizon <= 0.0 || grid_step <= 0.0)
        throw std::invalid_argument("generate_schedule: bad horizon or grid step");
    if (p.min_duration > p.max_duration)
        throw std::invalid_argument("generate_schedule: min_duration > max_duration");
    if (p.target_duty && *p.target_duty > 1.0 / p.t_energy)
        throw InfeasibleSchedule("requested duty exceeds the 1/T energy budget");

    DosSchedule s;
    s.grid_step = grid_step;
    s.horizon_ticks = static_cast<std::int64_t>(std::llround(horizon / grid_step));
    s.n0 = p.n0;
    s.tau_d = p.tau_d;
    s.t_energy = p.t_energy;
    s.seed = p.seed;

    std::mt19937_64 rng(p.seed);
    const auto dur_min =
        std::max<std::int64_t>(1, static_cast<std::int64_t>(std::llround(p.min_duration / grid_step)));
    const auto dur_max =
        std::max<std::int64_t>(dur_min, static_cast<std::int64_t>(std::llround(p.max_duration / grid_step)));

    for (int agent : p.targets) {
        std::vector<DosInterval> iv;
        // n0 < 1 leaves no budget for even a single onset under Eq (12)
        // evaluated on a vanishing window around it.
        if (p.n0 >= 1.0) {
            std::int64_t cum_blocked = 0;
            std::int64_t prev_onset = std::numeric_limits<std::int64_t>::min() / 4;
            std::int64_t cursor = 0;
            while (true) {
                const std::int64_t dur =
                    dur_min + static_cast<std::int64_t>(uniform_index(rng, dur_max - dur_min + 1));
                // Energy prefix feasibility at the interval end: T*(C + d) <= s + d.
                const std::int64_t s_energy =
                    p.t_energy * (cum_blocked + dur) - dur;
                const std::int64_t s_freq =
                    prev_onset + static_cast<std::int64_t>(std::ceil(p.tau_d / grid_step));
                std::int64_t start = std::max({cursor, s_energy, s_freq, std::int64_t{0}});
                start += static_cast<std::int64_t>(
                    uniform_index(rng, static_cast<std::uint64_t>(p.max_extra_gap / grid_step) + 1));
                const std::int64_t end = start + dur;
                if (end > s.horizon_ticks) break;
                iv.push_back({start, end});
                cum_blocked += dur;
                prev_onset = start;
                cursor = end;
            }
        }
        if (static_cast<int>(iv.size()) < p.min_attacks)
            throw InfeasibleSchedule(
                "cannot place " + std::to_string(p.min_attacks) +
                " attacks within the horizon under the frequency/energy constraints");
        s.intervals[agent] = std::move(iv);
    }

    auto violations = validate_schedule(s, 64);
    if (!violations.empty())
        throw InfeasibleSchedule("generated schedule failed validation: " +
                                 violations.front().bound + ": " + violations.front().detail);
    return s;
}

double max_tolerable_interval(double a_norm, double gamma_1i) {
    if (a_norm < 0.0 || gamma_1i < 0.0)
        throw std::invalid_argument("max_tolerable_interval: negative input");
    if (a_norm == 0.0) return gamma_1i;  // ln(1+g*a)/a -> g as a -> 0
    return std::log1p(gamma_1i * a_norm) / a_norm;
}

double delta_1k(const HeldControl& snap, const SystemMatrices& m, const Mat& P,
                const ControllerGains& g, double omega_star, double sigma_d_star,
                double eps_star, double eps0, int degree) {
    const Mat bbt = m.B * m.B.transpose();
    const Mat bbtp = bbt * P;
    const double bbtp_norm = spectral_norm(bbtp);
    const Vec tanh_pe = (P * snap.e_i_k).array().tanh();
    const Mat i_minus_kc =
        Mat::Identity(P.rows(), P.cols()) - Mat(g.k_c_diag.asDiagonal());

    double d = m.Bw.norm() * omega_star;
    d += (m.A * snap.e_i_k).norm();
    d += 0.5 * degree * bbtp_norm * snap.e_i_k.norm();
    double neighbor_sum = 0.0;
    for (double ejn : snap.e_j_norms_k) neighbor_sum += ejn;
    d += 0.5 * bbtp_norm * tanh_pe.cwiseAbs().maxCoeff() * spectral_norm(i_minus_kc) *
         neighbor_sum;
    d += spectral_norm(g.k_u) * tanh_pe.norm();
    d += spectral_norm(bbt) * snap.u_hat_d_k.norm();
    d += sigma_d_star;
    d += m.Bf.norm() * eps_star;
    d += 2.0 * snap.eta_hat_k.norm();
    d += m.Bf.norm() * eps0;
    return d;
}

Gamma1 gamma_1i(double zeta_1i, double delta, const Mat& P, const Mat& g_sum) {
    const double denom_norm = spectral_norm(P * g_sum * P);
    if (delta <= 0.0 || denom_norm <= 0.0)
        return {std::numeric_limits<double>::infinity(), true};
    return {zeta_1i / (delta * denom_norm), false};
}

double eq54_margin(const Lemma1Config& c, double gamma, const Mat& P, const Mat& k_u) {
    const double lhs =
        c.zeta_1i + spectral_norm(P * k_u) + c.a[0] + c.a[1] + c.a[2] + c.a[4];
    return gamma - lhs;
}

}  // namespace nvsc
