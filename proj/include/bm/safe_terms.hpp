#pragma once

#include <complex>

#include "bm/classical.hpp"
#include "bm/potentials.hpp"

namespace bm {

struct SafeParams {
    double gamma = 1.0;
    double a0 = 1.0;
    // Integration constants of the first and second amplitude corrections.
    // Fixed to zero; they drop from every normalized observable.
    std::complex<double> f1{0.0, 0.0};
    std::complex<double> f2{0.0, 0.0};
};

struct CorrectionSample {
    double x;
    double p;
    std::complex<double> a1_over_a0;
    std::complex<double> script_f;
    std::complex<double> a2_over_a0;  // = a1^2/2 + script_f
};

// d(A1/a0)/dtau at an on-shell phase-space point, as the single combined
// rational expression in which the turning-point poles cancel algebraically.
// Finite for mom -> 0 as long as the turning point is simple.
std::complex<double> a1_rate(const Potential& p, double eps, double gamma,
                             double x, double mom);

// Real change of A1/a0 per orbit circuit (counterclockwise/action-decreasing
// convention, so that the refined quantization reads
// k*area = (2n+1)pi - deltaF/k).
double delta_F(const Potential& p, double eps, double gamma);

// The closed-form ingredient of the second amplitude correction,
// A2/a0 = (A1/a0)^2/2 + script_F, with the f2 constant set to zero.
std::complex<double> script_F(const Potential& p, double eps, double gamma,
                              double x, double mom);

namespace detail {
// Rate as a plain rational function of the local derivatives and momentum;
// no on-shell validation (used by integrators whose stage points sit
// slightly off the energy shell).
std::complex<double> a1_rate_raw(const std::array<double, 6>& derivs,
                                 double gamma, double mom);
}  // namespace detail

}  // namespace bm
