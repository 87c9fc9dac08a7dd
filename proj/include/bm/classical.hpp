#pragma once

#include <vector>

#include "bm/numerics.hpp"
#include "bm/potentials.hpp"

namespace bm {

struct PscSample {
    double tau;
    double x;
    double p;
    double action;  // cumulative integral of P^2 dtau from tau = 0
};

// One closed classical orbit at energy eps, sampled at equispaced tau along
// the flow X' = P, P' = -V'(X)/2 starting from the rightmost point (x2, 0).
struct PhaseSpaceCurve {
    double eps;
    double chi = 1.0;
    TurningPoints tp;
    std::vector<PscSample> samples;  // n_tau + 1 entries, last wraps the loop
    double period;
    double area;  // oint P dX (positive)
};

// Phase-space area enclosed by the orbit: 2 int sqrt(eps - V) dx.
double action_area(const Potential& p, double eps);

PhaseSpaceCurve psc_sample(const Potential& p, double eps, int n_tau);

// tau-derivatives of X and P at a phase-space point, orders 1..4, obtained by
// repeated differentiation of X' = P, P' = -V'(X)/2.
struct TrajectoryDerivs {
    double x1, x2, x3, x4;  // X', X'', X''', X''''
    double p1, p2, p3, p4;  // P', P'', P''', P''''
};

TrajectoryDerivs trajectory_derivs(const Potential& p, double x, double mom,
                                   int order = 4);

}  // namespace bm
