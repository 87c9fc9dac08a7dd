#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "bm/potentials.hpp"

namespace bm {

struct QuadratureSpec {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_levels = 24;
};

struct QuadratureResult {
    double value;
    double error;  // internal estimate
};

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Adaptive Gauss-Kronrod (G7,K15) on [a,b] for smooth integrands.
QuadratureResult integrate_regular(const std::function<double(double)>& f,
                                   double a, double b,
                                   const QuadratureSpec& spec = {});

// Nodes/weights of the n-point Gauss-Legendre rule on [-1,1]. Cached.
const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int n);

// int_{x1}^{x2} g(x) / sqrt(eps - V(x)) dx with inverse-square-root endpoint
// singularities removed by x(theta) = m + r sin(theta). The ratio
// (eps-V)/((x-x1)(x2-x)) is evaluated with a first-order expansion in V'
// near the endpoints.
double integrate_invsqrt_weighted(const std::function<double(double)>& g,
                                  const Potential& p, double eps,
                                  const TurningPoints& tp,
                                  const QuadratureSpec& spec = {});

// Numerator/denominator pair sharing one theta grid:
//   (int g/sqrt(eps-V) dx, int dx/sqrt(eps-V)).
std::pair<double, double> invsqrt_weighted_pair(
    const std::function<double(double)>& g, const Potential& p, double eps,
    const TurningPoints& tp, const QuadratureSpec& spec = {});

// Same, but the integrand also receives eps - V(x) reconstructed from the
// guarded smooth ratio, free of the endpoint cancellation that a direct
// eps - V(x) evaluation suffers in double precision.
std::pair<double, double> invsqrt_weighted_pair_ex(
    const std::function<double(double, double)>& g, const Potential& p,
    double eps, const TurningPoints& tp, const QuadratureSpec& spec = {});

// Bracketed root refinement (Brent). Requires f(lo)*f(hi) <= 0.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double tol);

}  // namespace bm
