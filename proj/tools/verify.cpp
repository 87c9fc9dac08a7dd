#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <vector>

#include "bm/classical.hpp"
#include "bm/moments.hpp"
#include "bm/numerics.hpp"
#include "bm/oracle.hpp"
#include "bm/potentials.hpp"
#include "bm/quantize.hpp"
#include "bm/safe_terms.hpp"
#include "bm/wavefield.hpp"

namespace bmcli {

namespace {

using bm::Potential;
using cplx = std::complex<double>;

struct Runner {
    int failures = 0;
    int total = 0;

    void check(const std::string& name, const std::function<bool()>& fn) {
        ++total;
        bool ok = false;
        std::string err;
        try {
            ok = fn();
        } catch (const std::exception& e) {
            err = e.what();
        }
        if (!ok) ++failures;
        std::printf("%-64s %s%s%s\n", name.c_str(), ok ? "PASS" : "FAIL",
                    err.empty() ? "" : "  ", err.c_str());
        std::fflush(stdout);
    }
};

double fd_deriv(const Potential& p, double x, int order, double h) {
    // central differences of V for orders 1..3
    auto V = [&](double xx) { return p(xx); };
    switch (order) {
        case 1: return (V(x + h) - V(x - h)) / (2 * h);
        case 2: return (V(x + h) - 2 * V(x) + V(x - h)) / (h * h);
        case 3: return (V(x + 2 * h) - 2 * V(x + h) + 2 * V(x - h) - V(x - 2 * h)) /
                       (2 * h * h * h);
    }
    return 0;
}

// Numerical tau-derivative of the two Eq.-style bracket pieces, evaluated
// separately (valid away from turning points); independent route to a1_rate.
cplx piecewise_rate(const Potential& pot, double gamma, double x, double p) {
    auto bracket = [&](double xx, double pp) {
        const auto v = pot.derivs(xx, 4);
        const double v1 = v[1], v2 = v[2], v3 = v[3];
        const double P1 = -v1 / 2, P2 = -v2 * pp / 2;
        const double P3 = v1 * v2 / 4 - v3 * pp * pp / 2;
        const double X1 = pp, X2 = P1, X3 = P2;
        const cplx Y1{gamma * X1, P1}, Y2{gamma * X2, P2}, Y3{gamma * X3, P3};
        const cplx W = X1 * Y1;
        const cplx W1 = X2 * Y1 + X1 * Y2;
        const cplx W2 = X3 * Y1 + 2.0 * X2 * Y2 + X1 * Y3;
        const cplx inv2 = (2.0 * W1 * W1 - W * W2) / (W * W * W);
        return 5.0 * inv2 - (X1 * Y3 + X3 * Y1) / (W * W);
    };
    auto step = [&](double& xx, double& pp, double h) {
        const double k1x = pp, k1p = -0.5 * pot.deriv(xx, 1);
        const double k2x = pp + h / 2 * k1p, k2p = -0.5 * pot.deriv(xx + h / 2 * k1x, 1);
        const double k3x = pp + h / 2 * k2p, k3p = -0.5 * pot.deriv(xx + h / 2 * k2x, 1);
        const double k4x = pp + h * k3p, k4p = -0.5 * pot.deriv(xx + h * k3x, 1);
        xx += h / 6 * (k1x + 2 * k2x + 2 * k3x + k4x);
        pp += h / 6 * (k1p + 2 * k2p + 2 * k3p + k4p);
    };
    const double h = 1e-3;
    cplx b[5];
    for (int m = -2; m <= 2; ++m) {
        double xx = x, pp = p;
        for (int j = 0; j < std::abs(m); ++j) step(xx, pp, m > 0 ? h : -h);
        b[m + 2] = bracket(xx, pp);
    }
    const cplx dbr = (b[0] - 8.0 * b[1] + 8.0 * b[3] - b[4]) / (12.0 * h);
    const auto v = pot.derivs(x, 2);
    const double f1p = (-5 * v[1] * v[1] - 4 * p * p * v[2]) / (32 * p * p * p * p);
    return f1p - cplx{0, 1.0 / 48.0} * dbr;
}

}  // namespace

int run_verify() {
    Runner r;
    const auto pt = Potential::poschl_teller();
    const auto morse = Potential::morse();
    const auto harm = Potential::harmonic();
    const auto quart = Potential::quartic();

    // ---- potentials ----
    r.check("potentials: analytic derivatives match finite differences", [&]() {
        std::mt19937 rng(42);
        // step and tolerance per order: higher-order central differences
        // drown in roundoff at small h in double precision
        const double steps[4] = {0.0, 1e-5, 1e-4, 1e-3};
        const double tols[4] = {0.0, 2e-6, 2e-6, 1e-5};
        for (const auto* p : {&pt, &morse, &harm, &quart}) {
            std::uniform_real_distribution<double> dist(
                p->family() == bm::Family::Morse ? -1.5 : -3.0, 3.0);
            for (int i = 0; i < 100; ++i) {
                const double x = dist(rng);
                for (int ord = 1; ord <= 3; ++ord) {
                    const double a = p->deriv(x, ord);
                    const double b = fd_deriv(*p, x, ord, steps[ord]);
                    const double scale = std::max({1.0, std::abs(a)});
                    if (std::abs(a - b) > tols[ord] * scale) return false;
                }
            }
        }
        return true;
    });
    r.check("potentials: even wells have symmetric turning points", [&]() {
        for (double eps : {-0.75, -0.5, -0.25}) {
            const auto tps = bm::turning_points(pt, eps);
            if (std::abs(tps.x1 + tps.x2) > 1e-10) return false;
        }
        for (double eps : {0.5, 1.0, 2.0}) {
            const auto tq = bm::turning_points(quart, eps);
            if (std::abs(tq.x1 + tq.x2) > 1e-10) return false;
        }
        return true;
    });
    r.check("potentials: V < eps strictly between turning points", [&]() {
        for (const auto* p : {&pt, &morse}) {
            const auto tps = bm::turning_points(*p, -0.5);
            for (int i = 1; i < 400; ++i) {
                const double x = tps.x1 + (tps.x2 - tps.x1) * i / 400.0;
                if (!((*p)(x) < -0.5)) return false;
            }
        }
        return true;
    });

    // ---- numerics ----
    r.check("numerics: singular-weight quadrature stable under refinement", [&]() {
        const auto tps = bm::turning_points(pt, -0.5);
        bm::QuadratureSpec tight{1e-14, 1e-13, 26};
        auto g = [](double x) { return x * x + 0.25 * x; };
        const double a = bm::integrate_invsqrt_weighted(g, pt, -0.5, tps);
        const double b = bm::integrate_invsqrt_weighted(g, pt, -0.5, tps, tight);
        return std::abs(a - b) <= 1e-10 * std::abs(b);
    });
    r.check("numerics: odd integrand over even well integrates to zero", [&]() {
        const auto tps = bm::turning_points(quart, 1.0);
        auto g = [](double x) { return x * x * x - 2.0 * x; };
        return std::abs(bm::integrate_invsqrt_weighted(g, quart, 1.0, tps)) < 1e-10;
    });
    r.check("numerics: root refinement independent of bracket choice", [&]() {
        auto f = [](double x) { return std::cos(x); };
        const double a = bm::find_root(f, 1.0, 2.0, 1e-13);
        const double b = bm::find_root(f, 0.5, 3.1, 1e-13);
        return std::abs(a - b) <= 1e-12 && std::abs(a - M_PI / 2) < 1e-12;
    });

    // ---- classical ----
    r.check("classical: energy conserved along sampled orbits", [&]() {
        for (const auto& [p, eps] : std::vector<std::pair<const Potential*, double>>{
                 {&pt, -0.5}, {&morse, -0.5}, {&quart, 1.0}}) {
            const auto psc = bm::psc_sample(*p, eps, 256);
            for (const auto& s : psc.samples)
                if (std::abs(s.p * s.p + (*p)(s.x) - eps) > 1e-9) return false;
        }
        return true;
    });
    r.check("classical: even-well orbits are time-reversal symmetric", [&]() {
        const auto psc = bm::psc_sample(pt, -0.5, 256);
        const int n = int(psc.samples.size()) - 1;
        for (int i = 0; i <= n; ++i) {
            const auto& a = psc.samples[i];
            const auto& b = psc.samples[n - i];
            if (std::abs(a.x - b.x) > 1e-7 || std::abs(a.p + b.p) > 1e-7) return false;
        }
        return true;
    });
    r.check("classical: sampled area agrees with the action integral", [&]() {
        for (const auto& [p, eps] : std::vector<std::pair<const Potential*, double>>{
                 {&pt, -0.25}, {&quart, 1.0}}) {
            const auto psc = bm::psc_sample(*p, eps, 512);
            const double area = bm::action_area(*p, eps);
            if (std::abs(psc.area - area) > 1e-6 * area) return false;
        }
        return true;
    });
    r.check("classical: trajectory derivatives match divided differences", [&]() {
        const auto psc = bm::psc_sample(pt, -0.5, 4096);
        const double h = psc.period / 4096;
        for (int i : {700, 1500, 2900}) {
            const auto& s = psc.samples[i];
            const auto d = bm::trajectory_derivs(pt, s.x, s.p);
            const double x1 = (psc.samples[i + 1].x - psc.samples[i - 1].x) / (2 * h);
            const double x2 =
                (psc.samples[i + 1].x - 2 * s.x + psc.samples[i - 1].x) / (h * h);
            if (std::abs(x1 - d.x1) > 1e-5 * std::max(1.0, std::abs(d.x1))) return false;
            if (std::abs(x2 - d.x2) > 1e-5 * std::max(1.0, std::abs(d.x2))) return false;
        }
        return true;
    });

    // ---- safe terms ----
    r.check("safe: circuit change of A1 is gamma-independent", [&]() {
        for (const auto& [p, eps] : std::vector<std::pair<const Potential*, double>>{
                 {&pt, -0.5}, {&quart, 1.0}, {&morse, -0.5}}) {
            const double gs = bm::choose_gamma(*p, eps);
            const double a = bm::delta_F(*p, eps, gs / 4);
            const double b = bm::delta_F(*p, eps, gs);
            const double c = bm::delta_F(*p, eps, 4 * gs);
            if (std::abs(a - b) > 1e-6 || std::abs(c - b) > 1e-6) return false;
        }
        return true;
    });
    r.check("safe: -sech^2 circuit change is pi/4 at every depth", [&]() {
        for (double eps : {-0.75, -0.5, -0.25})
            if (std::abs(bm::delta_F(pt, eps, 1.0) - M_PI / 4) > 1e-6) return false;
        return true;
    });
    r.check("safe: combined rate equals split-form numerical derivative", [&]() {
        for (double x : {0.2, 0.5, 0.9}) {
            const double eps = -0.25;
            const double p = std::sqrt(eps - pt(x));
            if (p < 0.3) continue;
            const cplx a = bm::a1_rate(pt, eps, 1.0, x, p);
            const cplx b = piecewise_rate(pt, 1.0, x, p);
            if (std::abs(a - b) > 1e-9 * std::max(1.0, std::abs(a))) return false;
        }
        return true;
    });
    r.check("safe: rate and script_F finite at turning points", [&]() {
        const auto tps = bm::turning_points(pt, -0.5);
        const cplx a = bm::a1_rate(pt, -0.5, 1.0, tps.x2, 0.0);
        const cplx f = bm::script_F(pt, -0.5, 1.0, tps.x2, 0.0);
        return std::isfinite(std::abs(a)) && std::isfinite(std::abs(f));
    });
    r.check("safe: script_F vanishes identically for V = x^2 at gamma 1", [&]() {
        for (double x : {0.0, 0.3, 0.8}) {
            const double p = std::sqrt(1.0 - harm(x));
            if (std::abs(bm::script_F(harm, 1.0, 1.0, x, p)) > 1e-14) return false;
        }
        return true;
    });

    // ---- quantize ----
    r.check("quantize: order-0/order-1 errors scale as k^-2 / k^-4", [&]() {
        std::vector<double> lk, l0, l1;
        for (double kappa : {8.9, 17.8, 35.6}) {
            const double k = std::sqrt(kappa * (kappa + 1.0));
            const double exact = -std::pow(kappa / std::sqrt(kappa * (kappa + 1.0)), 2);
            const auto e = bm::quantize(pt, k, 0, 1, 1.0);
            lk.push_back(std::log(k));
            l0.push_back(std::log(std::abs(e.eps0 - exact)));
            l1.push_back(std::log(std::abs(e.eps1 - exact)));
        }
        auto slope = [](const std::vector<double>& x, const std::vector<double>& y) {
            const int n = int(x.size());
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            for (int i = 0; i < n; ++i) {
                sx += x[i]; sy += y[i]; sxx += x[i] * x[i]; sxy += x[i] * y[i];
            }
            return (n * sxy - sx * sy) / (n * sxx - sx * sx);
        };
        const double s0 = slope(lk, l0), s1 = slope(lk, l1);
        return std::abs(s0 + 2.0) <= 0.3 && std::abs(s1 + 4.0) <= 0.5;
    });
    r.check("quantize: eigenvalues strictly increase with n", [&]() {
        const double k = std::sqrt(8.9 * 9.9);
        double prev = -2.0;
        for (int n = 0; n < 9; ++n) {
            const auto e = bm::quantize(pt, k, n, 1, 1.0);
            if (!(e.eps1 > prev)) return false;
            prev = e.eps1;
        }
        return true;
    });
    r.check("quantize: refined eigenvalue independent of gamma", [&]() {
        const double k = std::sqrt(8.9 * 9.9);
        const double gs = bm::choose_gamma(pt, -0.5);
        const double a = bm::quantize(pt, k, 2, 1, gs / 4).eps1;
        const double b = bm::quantize(pt, k, 2, 1, gs).eps1;
        const double c = bm::quantize(pt, k, 2, 1, 4 * gs).eps1;
        return std::abs(a - b) <= 1e-8 && std::abs(c - b) <= 1e-8;
    });

    // ---- moments ----
    r.check("moments: kernel averages gamma-invariant for all fixtures", [&]() {
        const std::vector<std::pair<const Potential*, std::vector<double>>> fixtures{
            {&pt, {-0.75, -0.5, -0.25}}, {&quart, {0.5, 1.0, 2.0}}, {&morse, {-0.75, -0.5, -0.25}}};
        for (const auto& [p, epss] : fixtures)
            for (double eps : epss) {
                const double gs = bm::choose_gamma(*p, eps);
                const auto me = bm::moment_estimate(*p, eps, 10.0, gs);
                const double scale = std::max({std::abs(me.avg_k0), std::abs(me.avg_k1),
                                               std::abs(me.avg_k2), 1e-30});
                for (int ord = 0; ord <= 2; ++ord) {
                    const double avg = ord == 0 ? me.avg_k0 : ord == 1 ? me.avg_k1 : me.avg_k2;
                    // an average that is zero to numerical noise is trivially
                    // gamma-independent
                    if (std::abs(avg) <= 1e-9 * scale) continue;
                    if (bm::gamma_spread(*p, eps, {gs / 4, gs, 4 * gs}, ord) > 1e-8)
                        return false;
                }
            }
        return true;
    });
    r.check("moments: odd averages vanish for even wells", [&]() {
        for (double eps : {-0.75, -0.25}) {
            const auto me = bm::moment_estimate(pt, eps, 10.0, 0.7);
            if (std::abs(me.avg_x) > 1e-10 || std::abs(me.avg_k1) > 1e-10) return false;
        }
        return true;
    });
    r.check("moments: all kernel averages vanish for V = x^2", [&]() {
        for (double g : {0.5, 1.0, 2.0}) {
            const auto me = bm::moment_estimate(harm, 1.0, 10.0, g);
            if (std::abs(me.avg_k0) > 1e-10 || std::abs(me.avg_k1) > 1e-10 ||
                std::abs(me.avg_k2) > 1e-10)
                return false;
        }
        return true;
    });
    r.check("moments: quartic <X^2>/sqrt(eps) is the universal constant", [&]() {
        const double beta = M_PI / std::pow(std::tgamma(0.25), 2);
        const double c = 8.0 * beta * beta;
        for (double eps : {0.5, 1.0, 2.0}) {
            const auto me = bm::moment_estimate(quart, eps, 10.0, 1.0);
            if (std::abs(me.avg_x2 / std::sqrt(eps) - c) > 1e-6) return false;
        }
        return true;
    });

    // ---- wavefield ----
    r.check("wavefield: harmonic ground state reproduced to 1e-6", [&]() {
        const double k = 10.0;
        const auto grid = bm::default_grid(harm, 1.0 / k, k, 1.0, 801);
        const auto w = bm::normalize_field(bm::synthesize(harm, 1.0 / k, k, 1.0, 0, grid));
        double n2 = 0;
        const double dx = grid[1] - grid[0];
        for (double x : grid) n2 += std::exp(-k * x * x) * dx;
        double peak = 0, err = 0;
        for (size_t i = 0; i < grid.size(); ++i) {
            const double ex = std::exp(-k * grid[i] * grid[i] / 2) / std::sqrt(n2);
            peak = std::max(peak, std::abs(w.values[i]));
            err = std::max(err, std::abs(w.values[i] - cplx{ex, 0}));
        }
        return err / peak <= 1e-6;
    });
    r.check("wavefield: normalization is scale and phase invariant", [&]() {
        const double k = 10.0;
        const auto grid = bm::default_grid(harm, 1.0 / k, k, 1.0, 201);
        auto w = bm::synthesize(harm, 1.0 / k, k, 1.0, 0, grid);
        const auto a = bm::normalize_field(w);
        auto w2 = w;
        for (auto& v : w2.values) v *= 7.0 * std::polar(1.0, 0.3);
        const auto b = bm::normalize_field(w2);
        const auto c = bm::normalize_field(a);
        for (size_t i = 0; i < grid.size(); ++i) {
            if (std::abs(a.values[i] - b.values[i]) > 1e-12) return false;
            if (std::abs(a.values[i] - c.values[i]) > 1e-12) return false;
        }
        return true;
    });
    r.check("wavefield: non-quantized energy is rejected", [&]() {
        const double k = std::sqrt(8.9 * 9.9);
        const auto e0 = bm::quantize(pt, k, 0, 1, 1.0);
        const auto e1 = bm::quantize(pt, k, 1, 1, 1.0);
        const double eps_bad = 0.5 * (e0.eps1 + e1.eps1);
        try {
            const auto grid = bm::default_grid(pt, eps_bad, k, 1.0, 64);
            bm::synthesize(pt, eps_bad, k, 1.0, 1, grid);
        } catch (const bm::PhaseClosureError&) {
            return true;
        }
        return false;
    });

    // ---- oracle ----
    r.check("oracle: observed Numerov convergence order >= 3.5", [&]() {
        const auto st = bm::solve_eigen(harm, 10.0, 0, 1e-11);
        if (st.observed_order < 3.5) return false;
        return std::abs(st.eps - 0.1) < 1e-10;
    });
    r.check("oracle: eigenvalues increase and node counts match", [&]() {
        const double k = std::sqrt(8.9 * 9.9);
        double prev = -2;
        for (int n = 0; n < 4; ++n) {
            const auto st = bm::solve_eigen(pt, k, n, 1e-9);
            if (st.nodes != n || !(st.eps > prev)) return false;
            prev = st.eps;
        }
        return true;
    });
    r.check("oracle: -sech^2 spectrum matches the closed form to 1e-8", [&]() {
        const double kappa = 8.9;
        const double k = std::sqrt(kappa * (kappa + 1.0));
        for (int n = 0; n < 9; ++n) {
            const double exact = -std::pow(kappa - n, 2) / (kappa * (kappa + 1.0));
            const auto st = bm::solve_eigen(pt, k, n, 1e-10);
            if (std::abs(st.eps - exact) > 1e-8) return false;
        }
        return true;
    });

    std::printf("\n%d/%d checks passed\n", r.total - r.failures, r.total);
    return r.failures == 0 ? 0 : 2;
}

}  // namespace bmcli
