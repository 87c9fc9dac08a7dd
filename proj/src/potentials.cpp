#include "bm/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bm/numerics.hpp"

namespace bm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Derivatives of -sech^2 as polynomials in u = tanh x, using d/dx = (1-u^2) d/du.
double pt_deriv(double x, int order) {
    const double u = std::tanh(x);
    const double u2 = u * u;
    switch (order) {
        case 0: return u2 - 1.0;
        case 1: return 2.0 * u - 2.0 * u * u2;
        case 2: return 2.0 - 8.0 * u2 + 6.0 * u2 * u2;
        case 3: return u * (-16.0 + 40.0 * u2 - 24.0 * u2 * u2);
        case 4: return -16.0 + u2 * (136.0 + u2 * (-240.0 + 120.0 * u2));
        case 5: return u * (272.0 + u2 * (-1232.0 + u2 * (1680.0 - 720.0 * u2)));
        default: throw std::invalid_argument("derivative order > 5");
    }
}

double morse_deriv(double x, int order) {
    if (order > 5) throw std::invalid_argument("derivative order > 5");
    const double a = std::exp(-2.0 * x);
    const double b = std::exp(-x);
    const double sa = (order % 2 == 0) ? 1.0 : -1.0;
    double pow2 = 1.0;
    for (int i = 0; i < order; ++i) pow2 *= 2.0;
    return sa * (pow2 * a - 2.0 * b);
}

double poly_eval(const std::vector<double>& c, double x) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

}  // namespace

Potential::Potential(Family f, std::string name, std::vector<double> params,
                     double lo, double hi)
    : family_(f), name_(std::move(name)), params_(std::move(params)),
      domain_lo_(lo), domain_hi_(hi) {
    if (family_ == Family::Polynomial) {
        if (params_.empty())
            throw std::invalid_argument("polynomial potential needs at least one coefficient");
        dcoeffs_[0] = params_;
        for (int d = 1; d <= max_order; ++d) {
            const auto& prev = dcoeffs_[d - 1];
            std::vector<double> next;
            for (size_t i = 1; i < prev.size(); ++i) next.push_back(prev[i] * double(i));
            if (next.empty()) next.push_back(0.0);
            dcoeffs_[d] = std::move(next);
        }
    }
    locate_minimum();
}

Potential Potential::morse() {
    return Potential(Family::Morse, "morse", {}, -4.0, 40.0);
}
Potential Potential::poschl_teller() {
    return Potential(Family::PoschlTeller, "poschl-teller", {}, -50.0, 50.0);
}
Potential Potential::quartic() {
    return Potential(Family::Quartic, "quartic", {}, -50.0, 50.0);
}
Potential Potential::harmonic() {
    return Potential(Family::Harmonic, "harmonic", {}, -50.0, 50.0);
}
Potential Potential::polynomial(std::vector<double> coeffs) {
    return Potential(Family::Polynomial, "poly", std::move(coeffs), -50.0, 50.0);
}

Potential Potential::parse(const std::string& spec) {
    auto open = spec.find('(');
    std::string name = (open == std::string::npos) ? spec : spec.substr(0, open);
    std::vector<double> args;
    if (open != std::string::npos) {
        auto close = spec.rfind(')');
        if (close == std::string::npos || close < open)
            throw std::invalid_argument("malformed potential spec: " + spec);
        std::string inner = spec.substr(open + 1, close - open - 1);
        std::stringstream ss(inner);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.find_first_not_of(" \t") == std::string::npos) continue;
            size_t pos = 0;
            double val = std::stod(tok, &pos);
            args.push_back(val);
        }
    }
    if (name == "morse") return morse();
    if (name == "poschl-teller" || name == "poschl_teller") return poschl_teller();
    if (name == "quartic") return quartic();
    if (name == "harmonic") return harmonic();
    if (name == "poly" || name == "polynomial") {
        if (args.empty())
            throw std::invalid_argument("poly(...) needs coefficients");
        return polynomial(std::move(args));
    }
    throw std::invalid_argument("unknown potential family: " + name);
}

double Potential::deriv(double x, int order) const {
    if (order < 0 || order > max_order)
        throw std::invalid_argument("derivative order must be in [0,5]");
    if (!(x > domain_lo_ && x < domain_hi_))
        throw DomainError("x outside potential evaluation domain");
    switch (family_) {
        case Family::Morse: return morse_deriv(x, order);
        case Family::PoschlTeller: return pt_deriv(x, order);
        case Family::Harmonic:
            if (order == 0) return x * x;
            if (order == 1) return 2.0 * x;
            if (order == 2) return 2.0;
            return 0.0;
        case Family::Quartic: {
            if (order == 0) return x * x * x * x;
            if (order == 1) return 4.0 * x * x * x;
            if (order == 2) return 12.0 * x * x;
            if (order == 3) return 24.0 * x;
            if (order == 4) return 24.0;
            return 0.0;
        }
        case Family::Polynomial: return poly_eval(dcoeffs_[order], x);
    }
    return 0.0;
}

std::array<double, Potential::max_order + 1> Potential::derivs(double x, int max_ord) const {
    if (max_ord < 0 || max_ord > max_order)
        throw std::invalid_argument("derivative order must be in [0,5]");
    std::array<double, max_order + 1> out{};
    for (int i = 0; i <= max_ord; ++i) out[i] = deriv(x, i);
    return out;
}

void Potential::locate_minimum() {
    switch (family_) {
        case Family::Morse:
            well_min_x_ = 0.0; well_min_v_ = -1.0; escape_ = 0.0;
            return;
        case Family::PoschlTeller:
            well_min_x_ = 0.0; well_min_v_ = -1.0; escape_ = 0.0;
            return;
        case Family::Harmonic:
        case Family::Quartic:
            well_min_x_ = 0.0; well_min_v_ = 0.0; escape_ = kInf;
            return;
        case Family::Polynomial: break;
    }
    // Coarse scan then golden-section refinement for polynomial wells.
    const double lo = domain_lo_ + 1e-9, hi = domain_hi_ - 1e-9;
    const int n = 4096;
    double best_x = lo, best_v = kInf;
    for (int i = 0; i <= n; ++i) {
        const double x = lo + (hi - lo) * i / n;
        const double fv = poly_eval(dcoeffs_[0], x);
        if (fv < best_v) { best_v = fv; best_x = x; }
    }
    const double h = (hi - lo) / n;
    double a = std::max(lo, best_x - h), b = std::min(hi, best_x + h);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = poly_eval(dcoeffs_[0], c), fd = poly_eval(dcoeffs_[0], d);
    for (int it = 0; it < 200 && (b - a) > 1e-14 * std::max(1.0, std::abs(a) + std::abs(b)); ++it) {
        if (fc < fd) { b = d; d = c; fd = fc; c = b - gr * (b - a); fc = poly_eval(dcoeffs_[0], c); }
        else         { a = c; c = d; fc = fd; d = a + gr * (b - a); fd = poly_eval(dcoeffs_[0], d); }
    }
    well_min_x_ = 0.5 * (a + b);
    well_min_v_ = poly_eval(dcoeffs_[0], well_min_x_);
    // Confinement threshold: lowest barrier top on either side of the minimum.
    double barrier = kInf;
    {
        double max_l = -kInf, max_r = -kInf;
        for (int i = 0; i <= n; ++i) {
            const double x = lo + (hi - lo) * i / n;
            const double fv = poly_eval(dcoeffs_[0], x);
            if (x < well_min_x_) max_l = std::max(max_l, fv);
            else max_r = std::max(max_r, fv);
        }
        // Leading even coefficient positive means the well is globally confining.
        const auto& c0 = dcoeffs_[0];
        int degree = int(c0.size()) - 1;
        while (degree > 0 && c0[degree] == 0.0) --degree;
        if (degree % 2 == 0 && degree > 0 && c0[degree] > 0.0) barrier = kInf;
        else barrier = std::min(max_l, max_r);
    }
    escape_ = barrier;
}

TurningPoints turning_points(const Potential& p, double eps,
                             std::optional<std::pair<double, double>> hint) {
    const double vmin = p.well_min_value();
    if (!(eps > vmin))
        throw DomainError("no turning points: energy at or below the well minimum");
    if (eps >= p.escape_energy())
        throw DomainError("no turning points: energy above the well top");

    const double x0 = p.well_min_x();
    auto f = [&](double x) { return eps - p(x); };

    double lo = hint ? hint->first : x0;
    double hi = hint ? hint->second : x0;
    // March outward from the minimum until the sign flips.
    auto march = [&](double start, double dir, double limit) {
        double step = 1e-3 * std::max(1.0, std::abs(start));
        double prev = start, cur = start;
        while (true) {
            cur = prev + dir * step;
            if ((dir > 0 && cur >= limit) || (dir < 0 && cur <= limit)) {
                cur = limit + dir * (-1e-12) * std::max(1.0, std::abs(limit));
                if (f(cur) > 0.0)
                    throw DomainError("no turning point before the domain edge");
                break;
            }
            if (f(cur) <= 0.0) break;
            prev = cur;
            step *= 1.6;
        }
        return std::pair<double, double>(prev, cur);
    };

    double x1, x2;
    // Refined essentially to machine precision: large-gamma kernel averages
    // are sensitive to root placement through the endpoint boundary layer.
    const double rtol = 4e-16;
    if (!hint) {
        auto [l_in, l_out] = march(x0, -1.0, p.domain_lo());
        auto [r_in, r_out] = march(x0, +1.0, p.domain_hi());
        x1 = find_root(f, std::min(l_out, l_in), std::max(l_out, l_in), rtol);
        x2 = find_root(f, std::min(r_in, r_out), std::max(r_in, r_out), rtol);
    } else {
        x1 = find_root(f, lo, x0, rtol);
        x2 = find_root(f, x0, hi, rtol);
    }
    if (!(x1 < x2)) throw DomainError("turning point bracketing failed");

    // Simple-root check. A slope far below the mean well slope (depth/width)
    // means the root merges with a stationary point of V.
    const double d1 = p.deriv(x1, 1), d2 = p.deriv(x2, 1);
    const double mean_slope = (eps - vmin) / (x2 - x1);
    if (d1 >= 0.0 || std::abs(d1) < 1e-12 * mean_slope)
        throw DomainError("degenerate turning point at x1");
    if (d2 <= 0.0 || std::abs(d2) < 1e-12 * mean_slope)
        throw DomainError("degenerate turning point at x2");
    return TurningPoints{x1, x2, eps};
}

}  // namespace bm
