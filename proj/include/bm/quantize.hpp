#pragma once

#include <optional>

#include "bm/potentials.hpp"

namespace bm {

struct EigenEstimate {
    int n;
    double k;
    double eps0;         // root of k*area(eps) = (2n+1)*pi
    double eps1;         // root of k*area(eps) = (2n+1)*pi - deltaF(eps)/k
    double deltaF_used;  // 0 when order == 0
    double gamma_used;
};

struct NoBoundState : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Semiclassical eigenvalue at the requested order (0 or 1). The order-1
// deltaF(eps) dependence is resolved by fixed-point iteration.
EigenEstimate quantize(const Potential& p, double k, int n, int order,
                       double gamma = 1.0);

// Number of levels the order-0 condition admits below the escape energy
// (or below eps_ceiling for wells that confine at every energy).
int count_bound_states(const Potential& p, double k,
                       std::optional<double> eps_ceiling = {});

}  // namespace bm
