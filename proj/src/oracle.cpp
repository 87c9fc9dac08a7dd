#include "bm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bm/numerics.hpp"
#include "bm/quantize.hpp"

namespace bm {

namespace {

struct Shooter {
    std::vector<double> f;  // k^2 (V - eps0) precomputed with eps0 = 0: k^2 V
    double k2;
    double h;
    int match;  // matching index (near the well minimum)

    // Numerov pass from the left into [0, match+1]; returns node count and
    // fills y (scaled to avoid overflow).
    int run_left(double eps, std::vector<double>& y, int stop) const {
        const double h2 = h * h;
        auto T = [&](int i) { return h2 / 12.0 * (f[i] - k2 * eps); };
        y[0] = 0.0;
        y[1] = 1e-12;
        int nodes = 0;
        for (int i = 1; i < stop; ++i) {
            y[i + 1] = ((2.0 + 10.0 * T(i)) * y[i] - (1.0 - T(i - 1)) * y[i - 1]) /
                       (1.0 - T(i + 1));
            if (y[i + 1] != 0.0 && y[i] != 0.0 && (y[i + 1] > 0) != (y[i] > 0)) ++nodes;
            const double a = std::abs(y[i + 1]);
            if (a > 1e100) {
                for (int j = 0; j <= i + 1; ++j) y[j] *= 1e-100;
            }
        }
        return nodes;
    }

    int run_right(double eps, std::vector<double>& y, int stop) const {
        const double h2 = h * h;
        const int n = int(f.size()) - 1;
        auto T = [&](int i) { return h2 / 12.0 * (f[i] - k2 * eps); };
        y[n] = 0.0;
        y[n - 1] = 1e-12;
        int nodes = 0;
        for (int i = n - 1; i > stop; --i) {
            y[i - 1] = ((2.0 + 10.0 * T(i)) * y[i] - (1.0 - T(i + 1)) * y[i + 1]) /
                       (1.0 - T(i - 1));
            if (y[i - 1] != 0.0 && y[i] != 0.0 && (y[i - 1] > 0) != (y[i] > 0)) ++nodes;
            const double a = std::abs(y[i - 1]);
            if (a > 1e100) {
                for (int j = i - 1; j <= n; ++j) y[j] *= 1e-100;
            }
        }
        return nodes;
    }

    // Full-domain left sweep: number of interior sign changes.
    int count_nodes(double eps) const {
        std::vector<double> y(f.size());
        return run_left(eps, y, int(f.size()) - 1);
    }

    // Numerov residual of the matched composite at the matching row; zero at
    // eigenvalues of the discrete scheme.
    double mismatch(double eps) const {
        const double h2 = h * h;
        auto T = [&](int i) { return h2 / 12.0 * (f[i] - k2 * eps); };
        std::vector<double> yl(f.size()), yr(f.size());
        run_left(eps, yl, match + 1);
        run_right(eps, yr, match - 1);
        const double sl = yl[match], sr = yr[match];
        if (sl == 0.0 || sr == 0.0) return 0.0;
        // scale right branch so both agree at the match point
        const double c = sl / sr;
        const double ym1 = yl[match - 1];
        const double yp1 = yr[match + 1] * c;
        const double ym = sl;
        const double r = (1.0 - T(match + 1)) * yp1 + (1.0 - T(match - 1)) * ym1 -
                         (2.0 + 10.0 * T(match)) * ym;
        // normalize by branch magnitudes for a scale-free sign function
        const double scale = std::abs(ym1) + std::abs(yp1) + std::abs(ym);
        return r / scale;
    }

    std::vector<double> composite(double eps) const {
        std::vector<double> yl(f.size()), yr(f.size());
        run_left(eps, yl, match + 1);
        run_right(eps, yr, match - 1);
        const double c = yl[match] / yr[match];
        std::vector<double> y(f.size());
        for (int i = 0; i <= match; ++i) y[i] = yl[i];
        for (int i = match + 1; i < int(f.size()); ++i) y[i] = yr[i] * c;
        return y;
    }
};

struct Grid {
    double lo, hi, h;
    int npoints;
};

Grid build_grid(const Potential& p, double k, double eps_seed, int halvings) {
    const TurningPoints tp = turning_points(p, eps_seed);
    // Extend beyond each turning point until the WKB suppression
    // k^2 (V - eps) margin^2 >= 1200 (decay beyond e^-35).
    auto extend = [&](double x_tp, double dir, double limit) {
        double x = x_tp;
        const double step = 0.05 * std::max(1.0, tp.x2 - tp.x1);
        while (true) {
            x += dir * step;
            if ((dir > 0 && x >= limit) || (dir < 0 && x <= limit)) {
                x = limit;
                break;
            }
            const double m = x - x_tp;
            const double barrier = p(x) - eps_seed;
            if (barrier > 0.0 && k * k * barrier * m * m >= 1200.0) break;
        }
        return x;
    };
    const double margin_eps = 1e-9;
    double lo = extend(tp.x1, -1.0, p.domain_lo() + margin_eps);
    double hi = extend(tp.x2, +1.0, p.domain_hi() - margin_eps);

    const double vmin = p.well_min_value();
    const double lambda_min = 2.0 * M_PI / (k * std::sqrt(std::max(eps_seed - vmin, 1e-12)));
    double h = lambda_min / 40.0;
    for (int i = 0; i < halvings; ++i) h *= 0.5;
    int n = int(std::ceil((hi - lo) / h));
    if (n % 2 != 0) ++n;  // even interval count for Simpson
    h = (hi - lo) / n;
    return {lo, hi, h, n + 1};
}

Shooter make_shooter(const Potential& p, double k, const Grid& g, double x_match) {
    Shooter s;
    s.k2 = k * k;
    s.h = g.h;
    s.f.resize(g.npoints);
    for (int i = 0; i < g.npoints; ++i) {
        const double x = g.lo + g.h * i;
        s.f[i] = s.k2 * p(x);
    }
    // Match at the outer turning point: bound states have no node there.
    int match = int(std::lround((x_match - g.lo) / g.h));
    s.match = std::max(3, std::min(g.npoints - 4, match));
    return s;
}

double solve_on_grid(int n, const Shooter& s, double eps_lo, double eps_hi) {
    // Node-count bisection: find the window where the left sweep has exactly
    // n interior nodes below the upper turning region.
    double lo = eps_lo, hi = eps_hi;
    while (s.count_nodes(lo) > n) {
        lo -= (hi - lo);
        if (!(lo > -1e6)) throw std::runtime_error("oracle: node bracketing failed (low)");
    }
    while (s.count_nodes(hi) <= n) {
        hi += (hi - lo);
        if (!(hi < 1e6)) throw std::runtime_error("oracle: node bracketing failed (high)");
    }
    // narrow to the node transition n -> n+1
    for (int it = 0; it < 200 && (hi - lo) > 1e-13 * std::max(1.0, std::abs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (s.count_nodes(mid) <= n) lo = mid; else hi = mid;
        // once the window is narrow, switch to the smooth mismatch function
        if ((hi - lo) < 1e-3 * std::max(1.0, std::abs(lo))) break;
    }
    double flo = s.mismatch(lo), fhi = s.mismatch(hi);
    if (flo * fhi > 0.0) {
        // keep bisecting on node count until the mismatch brackets a root
        for (int it = 0; it < 60 && flo * fhi > 0.0; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (s.count_nodes(mid) <= n) { lo = mid; flo = s.mismatch(lo); }
            else { hi = mid; fhi = s.mismatch(hi); }
        }
        if (flo * fhi > 0.0)
            throw std::runtime_error("oracle: no sign change in mismatch over bracket");
    }
    return find_root([&](double e) { return s.mismatch(e); }, lo, hi,
                     1e-14 * std::max(1.0, std::abs(lo)));
}

}  // namespace

NumericState solve_eigen(const Potential& p, double k, int n, double tol) {
    const EigenEstimate seed = quantize(p, k, n, 0);
    // generous bracket around the semiclassical estimate
    double spacing;
    try {
        const EigenEstimate up = quantize(p, k, n + 1, 0);
        spacing = up.eps0 - seed.eps0;
    } catch (const NoBoundState&) {
        spacing = (n > 0) ? (seed.eps0 - quantize(p, k, n - 1, 0).eps0)
                          : 0.5 * std::abs(seed.eps0);
    }
    const double eps_lo = seed.eps0 - 0.6 * spacing;
    const double eps_hi = seed.eps0 + 0.6 * spacing;

    const double x_match = turning_points(p, seed.eps0).x2;
    std::vector<double> ladder;  // eps per step halving
    for (int halvings = 0; halvings <= 10; ++halvings) {
        const Grid g = build_grid(p, k, seed.eps0, halvings);
        const Shooter s = make_shooter(p, k, g, x_match);
        const double eps = solve_on_grid(n, s, eps_lo, eps_hi);
        ladder.push_back(eps);
        const size_t m = ladder.size();
        if (m >= 3 && std::abs(eps - ladder[m - 2]) <= tol / 10.0) {
            std::vector<double> y = s.composite(eps);
            // unit discrete L2
            double norm = 0.0;
            for (double v : y) norm += v * v;
            norm = std::sqrt(norm * g.h);
            double peak = 0.0;
            int peak_i = 0;
            for (int i = 0; i < int(y.size()); ++i)
                if (std::abs(y[i]) > peak) { peak = std::abs(y[i]); peak_i = i; }
            const double sign = (y[peak_i] > 0) ? 1.0 : -1.0;
            for (double& v : y) v *= sign / norm;
            int nodes = 0;
            for (size_t i = 1; i < y.size(); ++i)
                if (y[i] != 0.0 && y[i - 1] != 0.0 && (y[i] > 0) != (y[i - 1] > 0)) ++nodes;
            if (nodes != n)
                throw std::runtime_error("oracle: converged state has wrong node count");
            NumericState st;
            st.eps = eps;
            st.x_lo = g.lo;
            st.x_hi = g.hi;
            st.step = g.h;
            st.u = std::move(y);
            st.nodes = nodes;
            st.k = k;
            st.n = n;
            // convergence order from the last halving pair whose differences
            // sit clear of the eigenvalue noise floor
            const double floor = 2e-13 * std::max(1.0, std::abs(eps));
            st.observed_order = std::numeric_limits<double>::infinity();
            for (size_t j = m - 1; j >= 2; --j) {
                const double d1 = std::abs(ladder[j - 1] - ladder[j - 2]);
                const double d2 = std::abs(ladder[j] - ladder[j - 1]);
                if (d1 > 100.0 * floor && d2 > floor) {
                    st.observed_order = std::log2(d1 / d2);
                    break;
                }
            }
            return st;
        }
    }
    throw std::runtime_error("oracle: step halving failed to reach tolerance");
}

double numeric_moment(const NumericState& s, int m) {
    if (m < 0) throw std::invalid_argument("numeric_moment: m must be >= 0");
    auto simpson = [&](auto f) {
        const int n = int(s.u.size()) - 1;
        double acc = f(0) + f(n);
        for (int i = 1; i < n; i += 2) acc += 4.0 * f(i);
        for (int i = 2; i < n; i += 2) acc += 2.0 * f(i);
        return acc * s.step / 3.0;
    };
    const double m0 = simpson([&](int i) { return s.u[i] * s.u[i]; });
    if (m == 0) return 1.0;
    const double mm = simpson([&](int i) {
        const double x = s.x_lo + s.step * i;
        return std::pow(x, m) * s.u[i] * s.u[i];
    });
    return mm / m0;
}

}  // namespace bm
