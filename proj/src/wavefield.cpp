#include "bm/wavefield.hpp"

#include <algorithm>
#include <cmath>

#include "bm/classical.hpp"
#include "bm/safe_terms.hpp"

namespace bm {

namespace {

using cplx = std::complex<double>;
constexpr cplx kI{0.0, 1.0};

struct CircuitNode {
    double x, p, action;
    cplx a1;
    cplx sqrt_y1;  // branch-tracked sqrt(Y')
};

// Equispaced-tau trace of (X, P, L, A1/a0) along the flow from (x2, 0),
// with sqrt(Y') phase unwrapped cumulatively.
std::vector<CircuitNode> trace_circuit(const Potential& pot, double gamma,
                                       int n_nodes, double period,
                                       const TurningPoints& tp) {
    const double h = period / n_nodes;
    int sub = 2;
    while (std::pow(h / sub, 4) * n_nodes * sub > 1e-12 && sub < 64) sub *= 2;
    const double hs = h / sub;

    struct State {
        double x, p, act;
        cplx a1;
    };
    auto rhs = [&](const State& s, State& d) {
        d.x = s.p;
        d.p = -0.5 * pot.deriv(s.x, 1);
        d.act = s.p * s.p;
        d.a1 = detail::a1_rate_raw(pot.derivs(s.x, 4), gamma, s.p);
    };
    auto axpy = [](const State& s, double c, const State& d) {
        return State{s.x + c * d.x, s.p + c * d.p, s.act + c * d.act, s.a1 + c * d.a1};
    };

    std::vector<CircuitNode> nodes;
    nodes.reserve(n_nodes + 1);
    State s{tp.x2, 0.0, 0.0, cplx{0.0, 0.0}};
    auto push = [&]() {
        nodes.push_back({s.x, s.p, s.act, s.a1,
                         cplx{gamma * s.p, -0.5 * pot.deriv(s.x, 1)}});
    };
    push();
    State d1, d2, d3, d4;
    for (int i = 0; i < n_nodes; ++i) {
        for (int j = 0; j < sub; ++j) {
            rhs(s, d1);
            rhs(axpy(s, 0.5 * hs, d1), d2);
            rhs(axpy(s, 0.5 * hs, d2), d3);
            rhs(axpy(s, hs, d3), d4);
            s.x += hs / 6.0 * (d1.x + 2.0 * d2.x + 2.0 * d3.x + d4.x);
            s.p += hs / 6.0 * (d1.p + 2.0 * d2.p + 2.0 * d3.p + d4.p);
            s.act += hs / 6.0 * (d1.act + 2.0 * d2.act + 2.0 * d3.act + d4.act);
            s.a1 += hs / 6.0 * (d1.a1 + 2.0 * d2.a1 + 2.0 * d3.a1 + d4.a1);
        }
        push();
    }

    double phase = std::arg(nodes[0].sqrt_y1);
    double prev_arg = phase;
    for (auto& nd : nodes) {
        const double a = std::arg(nd.sqrt_y1);
        double dphi = a - prev_arg;
        while (dphi > M_PI) dphi -= 2.0 * M_PI;
        while (dphi < -M_PI) dphi += 2.0 * M_PI;
        phase += dphi;
        prev_arg = a;
        nd.sqrt_y1 = std::sqrt(std::abs(nd.sqrt_y1)) * std::exp(kI * (0.5 * phase));
    }
    return nodes;
}

}  // namespace

std::vector<double> default_grid(const Potential& p, double eps, double k,
                                 double gamma, int npoints) {
    const TurningPoints tp = turning_points(p, eps);
    const double pad = 6.0 / std::sqrt(k * gamma);
    std::vector<double> g(npoints);
    const double lo = tp.x1 - pad, hi = tp.x2 + pad;
    for (int i = 0; i < npoints; ++i)
        g[i] = lo + (hi - lo) * i / (npoints - 1);
    return g;
}

WaveField synthesize(const Potential& pot, double eps, double k, double gamma,
                     int order, const std::vector<double>& grid) {
    if (order < 0 || order > 2)
        throw std::invalid_argument("synthesize: order must be 0, 1 or 2");
    if (!(gamma > 0.0)) throw std::invalid_argument("synthesize: gamma must be positive");
    if (grid.empty()) throw std::invalid_argument("synthesize: empty grid");

    const double area = action_area(pot, eps);
    const double df = (order >= 1) ? delta_F(pot, eps, gamma) : 0.0;
    const double mismatch =
        std::remainder(k * area - M_PI + (order >= 1 ? df / k : 0.0), 2.0 * M_PI);
    if (std::abs(mismatch) > 0.1)
        throw PhaseClosureError("synthesize: eps is not a quantized energy "
                                "(circuit phase mismatch exceeds 0.1 rad)");

    const TurningPoints tp = turning_points(pot, eps);
    auto one = [](double) { return 1.0; };
    const double period = 2.0 * integrate_invsqrt_weighted(one, pot, eps, tp);

    WaveField out;
    out.grid = grid;
    out.order = order;
    out.gamma = gamma;
    out.eps = eps;
    out.k = k;

    const cplx ik = kI * k;
    std::vector<cplx> prev;
    for (int n_nodes = 128; n_nodes <= (1 << 14); n_nodes *= 2) {
        const auto nodes = trace_circuit(pot, gamma, n_nodes, period, tp);
        const double h = period / n_nodes;
        // Per-node amplitude factor A(tau) sqrt(Y'(tau)).
        std::vector<cplx> weight(n_nodes);
        for (int i = 0; i < n_nodes; ++i) {
            cplx amp{1.0, 0.0};
            if (order >= 1) amp += nodes[i].a1 / ik;
            if (order >= 2) {
                const cplx f = script_F(pot, eps, gamma, nodes[i].x, nodes[i].p);
                amp += (0.5 * nodes[i].a1 * nodes[i].a1 + f) / (ik * ik);
            }
            weight[i] = amp * nodes[i].sqrt_y1;
        }
        const double pref = std::sqrt(k / (2.0 * M_PI)) * h;
        std::vector<cplx> vals(grid.size(), cplx{0.0, 0.0});
        for (size_t gi = 0; gi < grid.size(); ++gi) {
            const double xx = grid[gi];
            cplx acc{0.0, 0.0};
            for (int i = 0; i < n_nodes; ++i) {
                const double dx = xx - nodes[i].x;
                const double re = -0.5 * k * gamma * dx * dx;
                if (re < -745.0) continue;  // Gaussian tail underflow guard
                const double im = k * (nodes[i].action + dx * nodes[i].p);
                acc += weight[i] * std::polar(std::exp(re), im);
            }
            vals[gi] = pref * acc;
        }
        if (!prev.empty()) {
            double peak = 0.0, diff = 0.0;
            for (size_t i = 0; i < vals.size(); ++i) {
                peak = std::max(peak, std::abs(vals[i]));
                diff = std::max(diff, std::abs(vals[i] - prev[i]));
            }
            if (peak > 0.0 && diff <= 1e-6 * peak) {
                out.values = std::move(vals);
                return out;
            }
        }
        prev = std::move(vals);
    }
    out.values = std::move(prev);
    return out;
}

double choose_gamma_field(const Potential& p, double eps) {
    const TurningPoints tp = turning_points(p, eps);
    auto one = [](double) { return 1.0; };
    const double period = 2.0 * integrate_invsqrt_weighted(one, p, eps, tp);
    double best_g = 1.0, best = std::numeric_limits<double>::infinity();
    for (double g = 0.02; g <= 2.5; g *= 1.15) {
        const auto nodes = trace_circuit(p, g, 1024, period, tp);
        double peak = 0.0;
        for (const auto& nd : nodes) peak = std::max(peak, std::abs(nd.a1));
        if (peak < best) { best = peak; best_g = g; }
    }
    return best_g;
}

WaveField normalize_field(const WaveField& w) {
    if (w.grid.size() < 2 || w.values.size() != w.grid.size())
        throw std::invalid_argument("normalize_field: malformed field");
    double norm2 = 0.0;
    size_t imax = 0;
    double amax = 0.0;
    for (size_t i = 0; i < w.values.size(); ++i) {
        const double dx = (i + 1 < w.grid.size()) ? w.grid[i + 1] - w.grid[i]
                                                  : w.grid[i] - w.grid[i - 1];
        norm2 += std::norm(w.values[i]) * dx;
        if (std::abs(w.values[i]) > amax) { amax = std::abs(w.values[i]); imax = i; }
    }
    if (!(norm2 > 0.0)) throw std::invalid_argument("normalize_field: zero field");
    const cplx phase = w.values[imax] / std::abs(w.values[imax]);
    const double scale = 1.0 / std::sqrt(norm2);
    WaveField out = w;
    for (auto& v : out.values) v = v / phase * scale;
    return out;
}

}  // namespace bm
