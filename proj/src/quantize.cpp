#include "bm/quantize.hpp"

#include <cmath>
#include <limits>

#include "bm/classical.hpp"
#include "bm/numerics.hpp"
#include "bm/safe_terms.hpp"

namespace bm {

namespace {

// Solve area(eps) = target on (vmin, escape). area is strictly increasing in
// eps for a single well, so the root is unique when it exists.
double solve_area(const Potential& p, double target, const char* what) {
    const double vmin = p.well_min_value();
    const double escape = p.escape_energy();
    const double span = std::isfinite(escape) ? escape - vmin : 1.0;
    // eps - V(x) cancels catastrophically when probed too close to the well
    // bottom; 1e-9 of depth is shallow enough for any realistic k.
    double lo = vmin + 1e-9 * std::max(1.0, std::abs(vmin)) + 1e-10 * span;
    double hi;
    auto f = [&](double eps) { return action_area(p, eps) - target; };

    if (std::isfinite(escape)) {
        hi = escape - 1e-12 * std::max(1.0, std::abs(escape)) - 1e-13 * span;
        if (f(hi) < 0.0) throw NoBoundState(what);
    } else {
        hi = vmin + 1.0;
        while (f(hi) < 0.0) {
            hi = vmin + (hi - vmin) * 2.0;
            if (hi - vmin > 1e12) throw NoBoundState(what);
        }
        lo = vmin + (hi - vmin) / 4.0;
        while (f(lo) > 0.0) {
            lo = vmin + (lo - vmin) / 4.0;
            if (lo - vmin < 1e-14 * std::max(1.0, std::abs(vmin))) break;
        }
    }
    if (f(lo) > 0.0) throw NoBoundState(what);
    return find_root(f, lo, hi, 1e-14 * std::max(1.0, std::abs(lo) + std::abs(hi)));
}

}  // namespace

EigenEstimate quantize(const Potential& p, double k, int n, int order,
                       double gamma) {
    if (!(k > 0.0)) throw std::invalid_argument("quantize: k must be positive");
    if (n < 0) throw std::invalid_argument("quantize: n must be >= 0");
    if (order != 0 && order != 1)
        throw std::invalid_argument("quantize: order must be 0 or 1");

    const double base_target = (2.0 * n + 1.0) * M_PI / k;
    const double eps0 = solve_area(p, base_target, "no bound state at this n");

    EigenEstimate est{n, k, eps0, eps0, 0.0, gamma};
    if (order == 0) return est;

    // deltaF enters at O(k^-2); two or three sweeps reach fixed point.
    double eps = eps0;
    double df = 0.0;
    for (int it = 0; it < 12; ++it) {
        df = delta_F(p, eps, gamma);
        const double next =
            solve_area(p, base_target - df / (k * k), "no bound state at this n");
        const double change = std::abs(next - eps);
        eps = next;
        if (change < 1e-12 * std::max(1.0, std::abs(eps))) break;
    }
    est.eps1 = eps;
    est.deltaF_used = df;
    return est;
}

int count_bound_states(const Potential& p, double k,
                       std::optional<double> eps_ceiling) {
    double top = p.escape_energy();
    if (eps_ceiling) top = std::min(top, *eps_ceiling);
    if (!std::isfinite(top))
        throw std::invalid_argument(
            "count_bound_states: well confines at every energy; supply eps_ceiling");
    double area_top;
    try {
        area_top = action_area(p, top - 1e-10 * std::max(1.0, std::abs(top)));
    } catch (const DomainError&) {
        return 0;
    }
    // Levels with (2n+1) pi / k < area(top).
    const double ratio = area_top * k / M_PI;
    int count = int(std::floor((ratio - 1.0) / 2.0)) + 1;
    return std::max(0, count);
}

}  // namespace bm
