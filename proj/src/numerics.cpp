#include "bm/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace bm {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule.
const double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
const double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
const double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error;
};

Segment gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const double fc = f(c);
    double kron = kWgk[7] * fc;
    double gauss = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double x = h * kXgk[j];
        const double f1 = f(c - x), f2 = f(c + x);
        if (!std::isfinite(f1) || !std::isfinite(f2))
            throw QuadratureError("non-finite integrand evaluation");
        kron += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
    }
    kron *= h;
    gauss *= h;
    double err = std::abs(kron - gauss);
    err = 200.0 * err * std::sqrt(std::min(1.0, 200.0 * err));
    return {a, b, kron, err};
}

}  // namespace

QuadratureResult integrate_regular(const std::function<double(double)>& f,
                                   double a, double b, const QuadratureSpec& spec) {
    if (!(a < b)) throw std::invalid_argument("integrate_regular: need a < b");
    std::vector<Segment> segs{gk15(f, a, b)};
    for (int level = 0; level < spec.max_levels; ++level) {
        double total = 0.0, err = 0.0;
        for (const auto& s : segs) { total += s.value; err += s.error; }
        const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
        if (err <= tol) return {total, err};
        // Split the worst segment.
        auto worst = std::max_element(segs.begin(), segs.end(),
            [](const Segment& u, const Segment& v) { return u.error < v.error; });
        Segment s = *worst;
        segs.erase(worst);
        const double mid = 0.5 * (s.a + s.b);
        segs.push_back(gk15(f, s.a, mid));
        segs.push_back(gk15(f, mid, s.b));
        if (segs.size() > 4096)
            throw QuadratureError("integrate_regular: too many subdivisions");
    }
    throw QuadratureError("integrate_regular: failed to converge within max_levels");
}

const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int n) {
    static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::vector<double> x(n), w(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Newton from the Chebyshev-like initial guess.
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it2 = 0; it2 < 100; ++it2) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
    return cache.emplace(n, std::make_pair(std::move(x), std::move(w))).first->second;
}

namespace {

// Smooth remainder R(x) = (eps - V(x)) / ((x - x1)(x2 - x)). Near the
// endpoints the direct numerator cancels catastrophically, so (eps-V)/(x-xi)
// is replaced by its Taylor series at the turning point; the guard band is
// wide enough that the direct difference is accurate outside it.
double smooth_ratio(const Potential& p, double eps, const TurningPoints& tp, double x) {
    const double width = tp.x2 - tp.x1;
    const double guard = 5e-3 * width;
    auto series = [&](double xi) {
        const auto v = p.derivs(xi, 5);
        const double d = x - xi;
        return -(v[1] + d * (v[2] / 2.0 + d * (v[3] / 6.0 + d * (v[4] / 24.0 + d * v[5] / 120.0))));
    };
    double r;
    if (std::abs(x - tp.x1) < guard) {
        r = series(tp.x1) / (tp.x2 - x);
    } else if (std::abs(tp.x2 - x) < guard) {
        r = series(tp.x2) / (tp.x1 - x);
    } else {
        r = (eps - p(x)) / ((x - tp.x1) * (tp.x2 - x));
    }
    if (!(r > 0.0))
        throw QuadratureError("invsqrt weight: (eps-V)/((x-x1)(x2-x)) not positive; "
                              "turning points inconsistent with energy");
    return r;
}

template <typename F>
double theta_sum(const F& fn, int n) {
    const auto& [xs, ws] = gauss_legendre(n);
    const double half = M_PI / 2.0;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += ws[i] * fn(half * xs[i]);
    return acc * half;
}

}  // namespace

std::pair<double, double> invsqrt_weighted_pair_ex(
    const std::function<double(double, double)>& g, const Potential& p,
    double eps, const TurningPoints& tp, const QuadratureSpec& spec) {
    const double m = 0.5 * (tp.x1 + tp.x2);
    const double r = 0.5 * (tp.x2 - tp.x1);
    auto num_int = [&](double th) {
        const double x = m + r * std::sin(th);
        const double rho = smooth_ratio(p, eps, tp, x);
        const double c = r * std::cos(th);
        const double gv = g(x, rho * c * c);
        if (!std::isfinite(gv)) throw QuadratureError("non-finite integrand");
        return gv / std::sqrt(rho);
    };
    auto den_int = [&](double th) {
        const double x = m + r * std::sin(th);
        return 1.0 / std::sqrt(smooth_ratio(p, eps, tp, x));
    };

    double prev_n = 0.0, prev_d = 0.0;
    bool have_prev = false;
    for (int n = 16; n <= (1 << spec.max_levels); n *= 2) {
        const double vn = theta_sum(num_int, n);
        const double vd = theta_sum(den_int, n);
        if (have_prev) {
            const double tol_n = std::max(spec.abs_tol, spec.rel_tol * std::abs(vn));
            const double tol_d = std::max(spec.abs_tol, spec.rel_tol * std::abs(vd));
            if (std::abs(vn - prev_n) <= tol_n && std::abs(vd - prev_d) <= tol_d)
                return {vn, vd};
        }
        prev_n = vn;
        prev_d = vd;
        have_prev = true;
        if (n >= 8192) break;
    }
    return {prev_n, prev_d};
}

std::pair<double, double> invsqrt_weighted_pair(
    const std::function<double(double)>& g, const Potential& p, double eps,
    const TurningPoints& tp, const QuadratureSpec& spec) {
    return invsqrt_weighted_pair_ex([&](double x, double) { return g(x); }, p, eps,
                                    tp, spec);
}

double integrate_invsqrt_weighted(const std::function<double(double)>& g,
                                  const Potential& p, double eps,
                                  const TurningPoints& tp,
                                  const QuadratureSpec& spec) {
    return invsqrt_weighted_pair(g, p, eps, tp, spec).first;
}

double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double tol) {
    double a = lo, b = hi;
    double fa = f(a), fb = f(b);
    if (!std::isfinite(fa) || !std::isfinite(fb))
        throw std::runtime_error("find_root: non-finite endpoint evaluation");
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0) throw std::runtime_error("find_root: no sign change on bracket");

    // Brent's method.
    double c = a, fc = fa, d = b - a, e = d;
    for (int iter = 0; iter < 200; ++iter) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * 1e-16 * std::abs(b) + 0.5 * tol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double s = fb / fa, pq, q;
            if (a == c) {
                pq = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc, rr = fb / fc;
                pq = s * (2.0 * xm * qq * (qq - rr) - (b - a) * (rr - 1.0));
                q = (qq - 1.0) * (rr - 1.0) * (s - 1.0);
            }
            if (pq > 0.0) q = -q;
            pq = std::abs(pq);
            if (2.0 * pq < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = pq / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
        fb = f(b);
        if (!std::isfinite(fb)) throw std::runtime_error("find_root: non-finite evaluation");
        if ((fb > 0) == (fc > 0)) { c = a; fc = fa; d = b - a; e = d; }
    }
    return b;
}

}  // namespace bm
