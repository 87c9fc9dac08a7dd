#pragma once

#include <complex>
#include <vector>

#include "bm/potentials.hpp"

namespace bm {

struct WaveField {
    std::vector<double> grid;
    std::vector<std::complex<double>> values;
    int order;
    double gamma;
    double eps;
    double k;
};

struct PhaseClosureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Default synthesis grid: [x1 - 6/sqrt(k gamma), x2 + 6/sqrt(k gamma)].
std::vector<double> default_grid(const Potential& p, double eps, double k,
                                 double gamma, int npoints = 1024);

// Gaussian-superposition synthesis of the bound state at correction order
// 0, 1 or 2. eps must be a quantized energy; a circuit phase mismatch above
// 0.1 rad raises PhaseClosureError.
WaveField synthesize(const Potential& p, double eps, double k, double gamma,
                     int order, const std::vector<double>& grid);

// Unit discrete L2 norm; global phase fixed so the largest-magnitude sample
// is real positive.
WaveField normalize_field(const WaveField& w);

// gamma that keeps the first amplitude correction tame: minimizes the peak of
// |A1/a0| along the circuit over a log-spaced gamma scan. Used as the width
// policy for synthesis (the moment pipeline uses choose_gamma instead).
double choose_gamma_field(const Potential& p, double eps);

}  // namespace bm
