#include <doctest.h>

#include <cmath>

#include "bm/oracle.hpp"
#include "test_support.hpp"

using bm::Potential;
using bmtest::sech2_eigen;

TEST_SUITE_BEGIN("oracle");

TEST_CASE("harmonic ladder") {
    const auto harm = Potential::harmonic();
    const auto st = bm::solve_eigen(harm, 10.0, 0, 1e-10);
    CHECK(st.eps == doctest::Approx(0.1).epsilon(1e-9));
    CHECK(st.nodes == 0);
    CHECK(bm::numeric_moment(st, 2) == doctest::Approx(0.05).epsilon(1e-8));
    CHECK(std::abs(bm::numeric_moment(st, 1)) < 1e-9);
    CHECK(bm::numeric_moment(st, 0) == 1.0);

    const auto st3 = bm::solve_eigen(harm, 10.0, 3, 1e-10);
    CHECK(st3.eps == doctest::Approx(0.7).epsilon(1e-9));
    CHECK(st3.nodes == 3);
}

TEST_CASE("-sech^2 spectrum across all nine kappa = 8.9 states") {
    const auto pt = Potential::poschl_teller();
    const double kappa = 8.9;
    const double k = std::sqrt(kappa * (kappa + 1.0));
    double prev = -1.0;
    for (int n = 0; n < 9; ++n) {
        const auto st = bm::solve_eigen(pt, k, n, 1e-10);
        CHECK(std::abs(st.eps - sech2_eigen(kappa, n)) <= 1e-8);
        CHECK(st.nodes == n);
        CHECK(st.eps > prev);
        prev = st.eps;
    }
}

TEST_CASE("integer kappa has the closed-form ground state sech^3") {
    const auto pt = Potential::poschl_teller();
    const double k = std::sqrt(12.0);  // kappa = 3
    const auto st = bm::solve_eigen(pt, k, 0, 1e-10);
    CHECK(st.eps == doctest::Approx(-0.75).epsilon(1e-9));
    // normalize the closed form on the same grid and compare pointwise
    double n2 = 0;
    for (size_t i = 0; i < st.u.size(); ++i) {
        const double x = st.x_lo + st.step * i;
        n2 += std::pow(1.0 / std::cosh(x), 6) * st.step;
    }
    for (size_t i = 0; i < st.u.size(); i += 16) {
        const double x = st.x_lo + st.step * i;
        const double exact = std::pow(1.0 / std::cosh(x), 3) / std::sqrt(n2);
        CHECK(std::abs(st.u[i] - exact) <= 1e-7);
    }
}

TEST_CASE("tails decay to numerical zero") {
    const auto pt = Potential::poschl_teller();
    const auto st = bm::solve_eigen(pt, std::sqrt(88.11), 4, 1e-9);
    double peak = 0;
    for (double v : st.u) peak = std::max(peak, std::abs(v));
    CHECK(std::abs(st.u.front()) / peak <= 1e-8);
    CHECK(std::abs(st.u.back()) / peak <= 1e-8);
}

TEST_CASE("observed convergence order under step halving is at least 3.5") {
    const auto pt = Potential::poschl_teller();
    const auto st = bm::solve_eigen(pt, std::sqrt(88.11), 0, 1e-10);
    CHECK(st.observed_order >= 3.5);
    const auto harm = Potential::harmonic();
    const auto sh = bm::solve_eigen(harm, 25.0, 1, 1e-11);
    CHECK(sh.observed_order >= 3.5);
    CHECK(std::abs(sh.eps - 3.0 / 25.0) < 1e-11);
}

TEST_CASE("parity of numeric moments") {
    const auto pt = Potential::poschl_teller();
    const auto st = bm::solve_eigen(pt, std::sqrt(88.11), 1, 1e-9);
    CHECK(std::abs(bm::numeric_moment(st, 1)) < 1e-9);
    CHECK(bm::numeric_moment(st, 2) > 0.0);
}

TEST_SUITE_END();
