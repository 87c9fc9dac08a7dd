#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "bm/oracle.hpp"
#include "bm/potentials.hpp"

namespace bmtest {

// Known spectra of the closed-form wells.
inline double sech2_eigen(double kappa, int n) {
    return -std::pow(kappa - n, 2) / (kappa * (kappa + 1.0));
}
inline double morse_eigen(double k, int n) {
    return -std::pow(1.0 - (2.0 * n + 1.0) / (2.0 * k), 2);
}

// k admitting level n at fixed energy for the -sech^2 well, exact and
// two-term asymptotic forms.
inline double sech2_k_exact(int n, double eps) {
    const double m = 2.0 * n + 1.0;
    return (std::sqrt(m * m - (1.0 + eps)) + m * std::sqrt(-eps)) / (2.0 * (1.0 + eps));
}
inline double sech2_k_asym(int n, double eps) {
    const double m = 2.0 * n + 1.0;
    return m / (2.0 * (1.0 - std::sqrt(-eps))) - 1.0 / (4.0 * m);
}

inline double beta_quartic() { return M_PI / std::pow(std::tgamma(0.25), 2); }

inline double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const int n = int(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline double oracle_rms(const bm::NumericState& st) {
    const double m1 = bm::numeric_moment(st, 1);
    const double m2 = bm::numeric_moment(st, 2);
    return std::sqrt(m2 - m1 * m1);
}

// Cubic interpolation of an oracle state onto x.
inline double interp_state(const bm::NumericState& st, double x) {
    const double t = (x - st.x_lo) / st.step;
    const int j = std::max(1, std::min(int(st.u.size()) - 3, int(std::floor(t))));
    const double s = t - j;
    const double y0 = st.u[j - 1], y1 = st.u[j], y2 = st.u[j + 1], y3 = st.u[j + 2];
    return y1 + 0.5 * s * (y2 - y0 +
                           s * (2 * y0 - 5 * y1 + 4 * y2 - y3 + s * (3 * (y1 - y2) + y3 - y0)));
}

// Peak-to-valley synthesis error against the oracle over the region where the
// state is visible (>= 1% of peak), with correlation-based phase alignment.
double field_p2v_error(const std::vector<double>& grid,
                       const std::vector<std::complex<double>>& u,
                       const bm::NumericState& st);

}  // namespace bmtest
