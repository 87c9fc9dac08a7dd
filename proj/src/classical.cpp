#include "bm/classical.hpp"

#include <cmath>
#include <stdexcept>

namespace bm {

double action_area(const Potential& p, double eps) {
    const TurningPoints tp = turning_points(p, eps);
    // g = eps - V cancels one power of the singular weight: the transformed
    // integrand is r^2 cos^2(theta) sqrt(R), smooth over the whole range.
    auto g = [](double, double eps_minus_v) { return eps_minus_v; };
    return 2.0 * invsqrt_weighted_pair_ex(g, p, eps, tp).first;
}

namespace {

struct State {
    double x, p;
};

inline State deriv(const Potential& pot, const State& s) {
    return {s.p, -0.5 * pot.deriv(s.x, 1)};
}

inline State rk4_step(const Potential& pot, const State& s, double h) {
    const State k1 = deriv(pot, s);
    const State k2 = deriv(pot, {s.x + 0.5 * h * k1.x, s.p + 0.5 * h * k1.p});
    const State k3 = deriv(pot, {s.x + 0.5 * h * k2.x, s.p + 0.5 * h * k2.p});
    const State k4 = deriv(pot, {s.x + h * k3.x, s.p + h * k3.p});
    return {s.x + h / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
            s.p + h / 6.0 * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p)};
}

}  // namespace

PhaseSpaceCurve psc_sample(const Potential& pot, double eps, int n_tau) {
    if (n_tau < 64) throw std::invalid_argument("psc_sample: n_tau must be >= 64");
    const TurningPoints tp = turning_points(pot, eps);

    // Half period = int dx / sqrt(eps - V); quadrature is far more accurate
    // than timing the ODE loop.
    auto one = [](double) { return 1.0; };
    const double period = 2.0 * integrate_invsqrt_weighted(one, pot, eps, tp);

    PhaseSpaceCurve psc{eps, 1.0, tp, {}, period, 0.0};
    psc.samples.reserve(n_tau + 1);

    const double h_sample = period / n_tau;
    // Substeps keep the RK4 global error well below the 1e-9 energy budget.
    int sub = 4;
    while (std::pow(h_sample / sub, 4) * n_tau * sub > 1e-13 && sub < 64) sub *= 2;
    const double h = h_sample / sub;

    State s{tp.x2, 0.0};
    double action = 0.0;
    psc.samples.push_back({0.0, s.x, s.p, 0.0});
    for (int i = 0; i < n_tau; ++i) {
        for (int j = 0; j < sub; ++j) {
            const double p_prev = s.p;
            s = rk4_step(pot, s, h);
            action += 0.5 * h * (p_prev * p_prev + s.p * s.p);
        }
        psc.samples.push_back({h_sample * (i + 1), s.x, s.p, action});
    }

    const double scale = std::max(1.0, std::abs(tp.x2 - tp.x1));
    if (std::abs(s.x - tp.x2) > 1e-6 * scale || std::abs(s.p) > 1e-6 * scale)
        throw std::runtime_error("psc_sample: orbit failed to close (step control failure)");
    psc.area = action;
    return psc;
}

TrajectoryDerivs trajectory_derivs(const Potential& pot, double x, double mom,
                                   int order) {
    if (order < 1 || order > 4)
        throw std::invalid_argument("trajectory_derivs: order must be in [1,4]");
    const auto v = pot.derivs(x, 4);
    TrajectoryDerivs d{};
    const double p = mom;
    d.x1 = p;
    d.p1 = -0.5 * v[1];
    d.x2 = d.p1;
    d.p2 = -0.5 * v[2] * p;
    d.x3 = d.p2;
    d.p3 = -0.5 * (v[3] * p * p - 0.5 * v[2] * v[1]);
    d.x4 = d.p3;
    d.p4 = -0.25 * p * (2.0 * v[4] * p * p - 3.0 * v[3] * v[1] - v[2] * v[2]);
    return d;
}

}  // namespace bm
