#pragma once

#include <functional>
#include <vector>

#include "bm/numerics.hpp"
#include "bm/potentials.hpp"

namespace bm {

struct KernelInput {
    double x;
    double q;  // Qbar(x) = V'(x)^2 + 4 gamma^2 (eps - V(x)), > 0 on the orbit
    double gamma;
    double v1, v2, v3, v4;
};

struct OrderPair {
    double order0;
    double order2;  // order0 + wave correction / k^2
};

struct MomentEstimate {
    double eps;
    double k;
    double gamma;
    double avg_x;
    double avg_x2;
    double avg_k0;
    double avg_k1;
    double avg_k2;
    OrderPair m1_over_m0;
    OrderPair m2_over_m0;
};

// Moment-correction kernels. K1 and K2 reuse the lower kernels.
double kernel_value(int order, const KernelInput& in);

double q_bar(const Potential& p, double eps, double gamma, double x);

// <f> = int f/sqrt(eps-V) dx / int dx/sqrt(eps-V) over the classical orbit.
double classical_average(const Potential& p, double eps,
                         const std::function<double(double)>& integrand);

// Normalized moment M_m/M_0 at orders 0 and 2 (m = 1 or 2). Orders beyond
// m = 2 have no correction kernel available.
OrderPair normalized_moment(const Potential& p, double eps, double k,
                            double gamma, int m);

// Full record of the quantities entering the first two normalized moments.
MomentEstimate moment_estimate(const Potential& p, double eps, double k,
                               double gamma);

// gamma* minimizing the nonuniformity (max-min)/mean of Qbar over [x1,x2].
double choose_gamma(const Potential& p, double eps);

// Max relative spread of <K_order> over the gamma list (absolute spread when
// the mean is below 1e-12).
double gamma_spread(const Potential& p, double eps,
                    const std::vector<double>& gammas, int order);

}  // namespace bm
