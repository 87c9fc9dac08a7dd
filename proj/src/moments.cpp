#include "bm/moments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bm {

double kernel_value(int order, const KernelInput& in) {
    if (!(in.q > 0.0)) throw std::invalid_argument("kernel_value: q must be positive");
    const double g2 = in.gamma * in.gamma;
    const double g4 = g2 * g2;
    const double q = in.q, q2 = q * q, q3 = q2 * q;
    const double v1 = in.v1, v2 = in.v2, v3 = in.v3, v4 = in.v4;
    const double k0 = -v4 / (12.0 * q)
                      - v1 * v3 * (g2 - 2.0 * v2) / (6.0 * q2)
                      - v2 * (2.0 * g2 - v2) * (6.0 * g2 + v2) / (12.0 * q2)
                      + v1 * v1 * v2 * (4.0 * g4 - v2 * v2) / (3.0 * q3);
    if (order == 0) return k0;
    const double k1 = in.x * k0 - v3 / (6.0 * q)
                      - v1 * v2 * (2.0 * g2 - 3.0 * v2) / (12.0 * q2);
    if (order == 1) return k1;
    if (order == 2) {
        return 2.0 * in.x * k1 - in.x * in.x * k0 - g2 / (3.0 * q)
               + v1 * v1 * (2.0 * g2 - v2) / (3.0 * q2);
    }
    throw std::invalid_argument("kernel_value: order must be 0, 1 or 2");
}

double q_bar(const Potential& p, double eps, double gamma, double x) {
    const double v1 = p.deriv(x, 1);
    return v1 * v1 + 4.0 * gamma * gamma * (eps - p(x));
}

double classical_average(const Potential& p, double eps,
                         const std::function<double(double)>& integrand) {
    const TurningPoints tp = turning_points(p, eps);
    auto [num, den] = invsqrt_weighted_pair(integrand, p, eps, tp);
    return num / den;
}

namespace {

double kernel_average(const Potential& p, double eps, double gamma, int order) {
    const TurningPoints tp = turning_points(p, eps);
    // eps - V comes from the quadrature's guarded ratio: the direct difference
    // cancels catastrophically near the turning points once 4 gamma^2 blows
    // the boundary layer up.
    auto f = [&](double x, double eps_minus_v) {
        const auto v = p.derivs(x, 4);
        const double q = v[1] * v[1] + 4.0 * gamma * gamma * eps_minus_v;
        return kernel_value(order, {x, q, gamma, v[1], v[2], v[3], v[4]});
    };
    auto [num, den] = invsqrt_weighted_pair_ex(f, p, eps, tp);
    return num / den;
}

}  // namespace

OrderPair normalized_moment(const Potential& p, double eps, double k,
                            double gamma, int m) {
    if (m != 1 && m != 2)
        throw std::invalid_argument(
            "normalized_moment: no correction kernel available for m > 2 "
            "(use classical_average for the order-0 value)");
    auto xm = [m](double x) { return (m == 1) ? x : x * x; };
    const double order0 = classical_average(p, eps, xm);
    const double km = kernel_average(p, eps, gamma, m);
    const double k0 = kernel_average(p, eps, gamma, 0);
    const double corr = (km - order0 * k0) / (k * k);
    return {order0, order0 + corr};
}

MomentEstimate moment_estimate(const Potential& p, double eps, double k,
                               double gamma) {
    MomentEstimate e{};
    e.eps = eps;
    e.k = k;
    e.gamma = gamma;
    e.avg_x = classical_average(p, eps, [](double x) { return x; });
    e.avg_x2 = classical_average(p, eps, [](double x) { return x * x; });
    e.avg_k0 = kernel_average(p, eps, gamma, 0);
    e.avg_k1 = kernel_average(p, eps, gamma, 1);
    e.avg_k2 = kernel_average(p, eps, gamma, 2);
    const double k2inv = 1.0 / (k * k);
    e.m1_over_m0 = {e.avg_x, e.avg_x + (e.avg_k1 - e.avg_x * e.avg_k0) * k2inv};
    e.m2_over_m0 = {e.avg_x2, e.avg_x2 + (e.avg_k2 - e.avg_x2 * e.avg_k0) * k2inv};
    return e;
}

namespace {

double nonuniformity(const Potential& p, double eps, const TurningPoints& tp,
                     double gamma) {
    const int n = 512;
    double qmin = std::numeric_limits<double>::infinity();
    double qmax = -qmin, mean = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double x = tp.x1 + (tp.x2 - tp.x1) * i / n;
        const double q = q_bar(p, eps, gamma, x);
        qmin = std::min(qmin, q);
        qmax = std::max(qmax, q);
        mean += q;
    }
    mean /= (n + 1);
    return (qmax - qmin) / mean;
}

}  // namespace

double choose_gamma(const Potential& p, double eps) {
    const TurningPoints tp = turning_points(p, eps);
    double best_g = 1.0, best_v = std::numeric_limits<double>::infinity();
    const int steps = 80;
    for (int i = 0; i <= steps; ++i) {
        const double g = std::pow(10.0, -2.0 + 4.0 * i / steps);
        const double v = nonuniformity(p, eps, tp, g);
        if (v < best_v) { best_v = v; best_g = g; }
    }
    // Golden-section refinement in log gamma.
    double a = std::log(best_g) - 4.0 * std::log(10.0) / steps;
    double b = std::log(best_g) + 4.0 * std::log(10.0) / steps;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = nonuniformity(p, eps, tp, std::exp(c));
    double fd = nonuniformity(p, eps, tp, std::exp(d));
    for (int it = 0; it < 120 && (b - a) > 1e-10; ++it) {
        if (fc < fd) { b = d; d = c; fd = fc; c = b - gr * (b - a); fc = nonuniformity(p, eps, tp, std::exp(c)); }
        else         { a = c; c = d; fc = fd; d = a + gr * (b - a); fd = nonuniformity(p, eps, tp, std::exp(d)); }
    }
    return std::exp(0.5 * (a + b));
}

double gamma_spread(const Potential& p, double eps,
                    const std::vector<double>& gammas, int order) {
    if (gammas.empty()) throw std::invalid_argument("gamma_spread: empty gamma list");
    for (double g : gammas)
        if (!(g > 0.0)) throw std::invalid_argument("gamma_spread: gammas must be positive");
    double lo = std::numeric_limits<double>::infinity(), hi = -lo, mean = 0.0;
    for (double g : gammas) {
        const double v = kernel_average(p, eps, g, order);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        mean += v;
    }
    mean /= double(gammas.size());
    const double spread = hi - lo;
    if (std::abs(mean) < 1e-12) return spread;  // absolute floor
    return spread / std::abs(mean);
}

}  // namespace bm
