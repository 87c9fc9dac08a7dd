#pragma once

#include <vector>

#include "bm/potentials.hpp"

namespace bm {

// Numerically converged eigenpair of U'' + k^2 (eps - V) U = 0.
struct NumericState {
    double eps;
    double x_lo, x_hi;
    double step;
    std::vector<double> u;  // uniform samples on [x_lo, x_hi], unit discrete L2
    int nodes;
    double k;
    int n;
    // convergence order measured from the last two step halvings,
    // log2(|d_prev| / |d_last|); the scheme is fourth order
    double observed_order;
};

// Numerov shooting with two-sided integration, node-count bracketing and
// derivative matching; eps validated by step-halving until the Richardson
// estimate meets tol.
NumericState solve_eigen(const Potential& p, double k, int n, double tol = 1e-10);

// M_m / M_0 of the state by composite Simpson.
double numeric_moment(const NumericState& s, int m);

}  // namespace bm
