#include <doctest.h>

#include <atomic>
#include <cmath>
#include <random>
#include <vector>

#include "bm/classical.hpp"
#include "bm/moments.hpp"
#include "bm/oracle.hpp"
#include "bm/parallel.hpp"
#include "bm/quantize.hpp"
#include "test_support.hpp"

using bm::Potential;

TEST_SUITE_BEGIN("properties");

namespace {

// random stiff single wells c2 x^2 + c4 x^4 (+ c6 x^6)
Potential random_even_well(std::mt19937& rng) {
    std::uniform_real_distribution<double> c2(0.1, 2.0), c4(0.05, 1.5), c6(0.0, 0.3);
    return Potential::polynomial({0.0, 0.0, c2(rng), 0.0, c4(rng), 0.0, c6(rng)});
}

}  // namespace

TEST_CASE("random even wells: turning points, area growth, level order") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 5; ++trial) {
        const auto p = random_even_well(rng);
        double prev_area = 0.0;
        for (double eps : {0.5, 1.0, 2.0, 4.0}) {
            const auto tp = bm::turning_points(p, eps);
            CHECK(std::abs(tp.x1 + tp.x2) < 1e-9);
            const double area = bm::action_area(p, eps);
            CHECK(area > prev_area);
            prev_area = area;
        }
        const double k = 6.0;
        double prev = -1.0;
        for (int n = 0; n < 4; ++n) {
            const auto e = bm::quantize(p, k, n, 1, 1.0);
            CHECK(e.eps1 > prev);
            prev = e.eps1;
        }
    }
}

TEST_CASE("random even wells: kernel averages independent of gamma") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 3; ++trial) {
        const auto p = random_even_well(rng);
        const double eps = 1.5;
        const double gs = bm::choose_gamma(p, eps);
        const auto me = bm::moment_estimate(p, eps, 8.0, gs);
        const double scale =
            std::max({std::abs(me.avg_k0), std::abs(me.avg_k1), std::abs(me.avg_k2)});
        for (int ord = 0; ord <= 2; ++ord) {
            const double avg = ord == 0 ? me.avg_k0 : ord == 1 ? me.avg_k1 : me.avg_k2;
            if (std::abs(avg) <= 1e-9 * scale) continue;
            CHECK(bm::gamma_spread(p, eps, {gs / 4, gs, 4 * gs}, ord) <= 1e-8);
        }
        // even well: odd averages vanish
        CHECK(std::abs(me.avg_x) < 1e-10);
        CHECK(std::abs(me.avg_k1) < 1e-10);
    }
}

TEST_CASE("random even wells: refined levels land on the oracle at O(k^-4)") {
    std::mt19937 rng(99);
    const auto p = random_even_well(rng);
    const double k = 25.0;
    for (int n : {1, 3}) {
        const auto e = bm::quantize(p, k, n, 1, 1.0);
        const auto st = bm::solve_eigen(p, k, n, 1e-10);
        CHECK(std::abs(e.eps1 - st.eps) / std::abs(st.eps) < 1e-5);
        // and the wave-corrected width lands within a part in 1e4
        const double g = bm::choose_gamma(p, e.eps1);
        const auto me = bm::moment_estimate(p, e.eps1, k, g);
        const double rms = std::sqrt(me.m2_over_m0.order2);
        const double rms_o = bmtest::oracle_rms(st);
        CHECK(std::abs(rms - rms_o) / rms_o < 1e-4);
    }
}

TEST_CASE("parallel_for covers every index exactly once and propagates errors") {
    std::vector<std::atomic<int>> hits(257);
    for (auto& h : hits) h = 0;
    bm::parallel_for(257, [&](int i) { hits[i]++; });
    for (auto& h : hits) CHECK(h == 1);

    CHECK(bm::worker_count() >= 1);
    CHECK_THROWS_AS(
        bm::parallel_for(8, [](int i) { if (i == 5) throw std::runtime_error("boom"); }),
        std::runtime_error);
}

TEST_SUITE_END();
