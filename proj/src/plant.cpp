#include "nvsc/plant.hpp"

#include <cmath>
#include <stdexcept>

namespace nvsc {

namespace {
constexpr double kAirDensity = 1.225;  // kg/m^3
constexpr double kGravity = 9.81;      // m/s^2
}  // namespace

SystemMatrices build_matrices(const AgentParams& p, int n) {
    if (n < 2) throw std::invalid_argument("build_matrices: state dimension must be >= 2");
    SystemMatrices m;
    m.A = Mat::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) m.A(i, i + 1) = 1.0;
    m.B = Vec::Zero(n);
    if (p.tau) {
        const double tau = *p.tau;
        if (tau <= 0.0) throw std::invalid_argument("build_matrices: tau must be positive");
        m.A(n - 1, n - 1) = -1.0 / tau;
        m.B(n - 1) = (p.scaling == InputScaling::per_mass) ? 1.0 / tau : 1.0 / (p.mass * tau);
    } else {
        m.A(n - 1, n - 1) = p.a;
        m.B(n - 1) = p.b;
    }
    m.Bf = Vec::Zero(n);
    m.Bf(n - 1) = 1.0;
    m.Bw = m.Bf;
    m.C = Mat::Identity(n, n);
    return m;
}

double true_nonlinearity(const AgentParams& p, const Vec& x) {
    const double v = x.size() > 1 ? x(1) : 0.0;
    const auto& veh = p.vehicle;
    const double drag = 0.5 * kAirDensity * veh.drag_coeff * veh.frontal_area * v * v / p.mass;
    const double rolling = kGravity * veh.rolling_coeff * std::cos(veh.grade_angle);
    const double climb = kGravity * std::sin(veh.grade_angle);
    return -(drag + rolling + climb);
}

Vec follower_derivative(const AgentParams& p, const SystemMatrices& m, const Vec& x,
                        double u, double w) {
    if (x.size() != m.A.rows())
        throw std::invalid_argument("follower_derivative: state dimension mismatch");
    return m.A * x + m.B * u + m.Bf * true_nonlinearity(p, x) + m.Bw * w;
}

Vec leader_derivative(const LeaderModel& l, const Vec& x0, double t) {
    if (x0.size() != l.A0.rows())
        throw std::invalid_argument("leader_derivative: state dimension mismatch");
    Vec d = l.A0 * x0;
    if (l.f0) d += l.Bf0 * l.f0(x0, t);
    return d;
}

}  // namespace nvsc
