#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>

#include "bm/moments.hpp"
#include "bm/oracle.hpp"
#include "bm/parallel.hpp"
#include "bm/potentials.hpp"
#include "bm/quantize.hpp"
#include "bm/safe_terms.hpp"
#include "bm/wavefield.hpp"
#include "common.hpp"
#include "csvio.hpp"
#include "svg.hpp"

namespace bmcli {

int run_verify();
int run_figures(int which, const RunConfig& cfg);

namespace {

void emit(const Table& t, const RunConfig& cfg) {
    write_file(cfg.output, cfg.format == "json" ? t.to_json() : t.to_csv());
}

std::string plot_path(const RunConfig& cfg) {
    std::string p = cfg.output;
    const auto dot = p.rfind('.');
    if (dot != std::string::npos) p = p.substr(0, dot);
    if (p.empty() || p == "-") p = "plot";
    return p + ".svg";
}

int run_eigen(const RunConfig& cfg) {
    const auto pot = bm::Potential::parse(cfg.potential);
    const double k = resolve_k(cfg);
    const auto ns = parse_n_range(cfg.n_range);
    const int order = cfg.order < 0 ? 1 : cfg.order;
    if (order != 0 && order != 1)
        throw std::invalid_argument("eigen: --order must be 0 or 1");

    struct Row {
        bm::EigenEstimate est;
        double oracle;
    };
    std::vector<Row> rows(ns.size());
    bm::parallel_for(int(ns.size()), [&](int i) {
        const int n = ns[i];
        const double g = (cfg.gamma == "auto") ? 1.0 : parse_gamma_list(cfg.gamma)[0];
        rows[i].est = bm::quantize(pot, k, n, order, g);
        rows[i].oracle = bm::solve_eigen(pot, k, n, cfg.tol).eps;
    });

    Table t({"n", "k", "eps0", "eps1", "eps_oracle", "rel_err0", "rel_err1"});
    for (const auto& r : rows) {
        const double scale = std::abs(r.oracle);
        t.row(r.est.n, k, r.est.eps0, r.est.eps1, r.oracle,
              std::abs(r.est.eps0 - r.oracle) / scale,
              std::abs(r.est.eps1 - r.oracle) / scale);
    }
    emit(t, cfg);
    if (cfg.plot) {
        SvgChart chart("eigenvalue relative errors", false, true);
        std::vector<double> xs, e0, e1;
        for (size_t i = 0; i < rows.size(); ++i) {
            xs.push_back(rows[i].est.n);
            e0.push_back(t.value(i, 5));
            e1.push_back(t.value(i, 6));
        }
        chart.add_series("order 0", xs, e0);
        chart.add_series("order 1", xs, e1);
        write_file(plot_path(cfg), chart.render());
    }
    return 0;
}

int run_moments(const RunConfig& cfg) {
    const auto pot = bm::Potential::parse(cfg.potential);
    const double k = resolve_k(cfg);
    const auto ns = parse_n_range(cfg.n_range);
    const int order = cfg.order < 0 ? 2 : cfg.order;
    if (order != 0 && order != 2)
        throw std::invalid_argument("moments: --order must be 0 (use eps0) or 2 (use eps1)");

    std::vector<double> gammas;  // empty = auto per level
    if (cfg.gamma != "auto") gammas = parse_gamma_list(cfg.gamma);

    struct Row {
        int n;
        double gamma, eps_used;
        bm::MomentEstimate me;
        double rms_oracle;
    };
    std::vector<Row> rows;
    for (int n : ns)
        for (size_t gi = 0; gi < std::max<size_t>(1, gammas.size()); ++gi)
            rows.push_back({n, gammas.empty() ? -1.0 : gammas[gi], 0.0, {}, 0.0});

    std::vector<double> eps_used(ns.size());
    std::vector<double> rms_oracle(ns.size());
    bm::parallel_for(int(ns.size()), [&](int i) {
        const auto est = bm::quantize(pot, k, ns[i], order == 0 ? 0 : 1, 1.0);
        eps_used[i] = (order == 0) ? est.eps0 : est.eps1;
        const auto st = bm::solve_eigen(pot, k, ns[i], cfg.tol);
        const double m1 = bm::numeric_moment(st, 1);
        const double m2 = bm::numeric_moment(st, 2);
        rms_oracle[i] = std::sqrt(m2 - m1 * m1);
    });
    bm::parallel_for(int(rows.size()), [&](int ri) {
        auto& r = rows[ri];
        const size_t ni = ri / std::max<size_t>(1, gammas.size());
        r.eps_used = eps_used[ni];
        r.rms_oracle = rms_oracle[ni];
        const double g = (r.gamma < 0) ? bm::choose_gamma(pot, r.eps_used) : r.gamma;
        r.gamma = g;
        r.me = bm::moment_estimate(pot, r.eps_used, k, g);
    });

    Table t({"n", "k", "gamma", "eps_used", "m1_0", "m1_2", "m2_0", "m2_2",
             "rms_0", "rms_2", "rms_oracle", "rel_err0", "rel_err2"});
    for (const auto& r : rows) {
        const double rms0 = std::sqrt(r.me.m2_over_m0.order0 -
                                      r.me.m1_over_m0.order0 * r.me.m1_over_m0.order0);
        const double rms2 = std::sqrt(r.me.m2_over_m0.order2 -
                                      r.me.m1_over_m0.order2 * r.me.m1_over_m0.order2);
        t.row(r.n, k, r.gamma, r.eps_used, r.me.m1_over_m0.order0, r.me.m1_over_m0.order2,
              r.me.m2_over_m0.order0, r.me.m2_over_m0.order2, rms0, rms2, r.rms_oracle,
              std::abs(rms0 - r.rms_oracle) / r.rms_oracle,
              std::abs(rms2 - r.rms_oracle) / r.rms_oracle);
    }
    emit(t, cfg);
    if (cfg.plot) {
        SvgChart chart("rms width relative errors", false, true);
        std::vector<double> xs, e0, e2;
        for (size_t i = 0; i < rows.size(); ++i) {
            xs.push_back(rows[i].n);
            e0.push_back(t.value(i, 11));
            e2.push_back(t.value(i, 12));
        }
        chart.add_series("order 0", xs, e0);
        chart.add_series("order 2", xs, e2);
        write_file(plot_path(cfg), chart.render());
    }
    return 0;
}

int run_wavefield(const RunConfig& cfg) {
    const auto pot = bm::Potential::parse(cfg.potential);
    const double k = resolve_k(cfg);
    const auto ns = parse_n_range(cfg.n_range);
    if (ns.size() != 1)
        throw std::invalid_argument("wavefield: --n must be a single level");
    const int order = cfg.order < 0 ? 2 : cfg.order;

    const auto est = bm::quantize(pot, k, ns[0], 1, 1.0);
    const double g = (cfg.gamma == "auto") ? bm::choose_gamma_field(pot, est.eps1)
                                           : parse_gamma_list(cfg.gamma)[0];
    const auto grid = bm::default_grid(pot, est.eps1, k, g, cfg.grid_points);
    const auto w = bm::normalize_field(bm::synthesize(pot, est.eps1, k, g, order, grid));

    Table t({"x", "re_u", "im_u", "abs_u"});
    for (size_t i = 0; i < grid.size(); ++i)
        t.row(grid[i], w.values[i].real(), w.values[i].imag(), std::abs(w.values[i]));
    emit(t, cfg);
    if (cfg.plot) {
        SvgChart chart("synthesized bound state", false, false);
        std::vector<double> xs, re, ab;
        for (size_t i = 0; i < grid.size(); ++i) {
            xs.push_back(grid[i]);
            re.push_back(w.values[i].real());
            ab.push_back(std::abs(w.values[i]));
        }
        chart.add_series("Re U", xs, re);
        chart.add_series("|U|", xs, ab);
        write_file(plot_path(cfg), chart.render());
    }
    return 0;
}

RunConfig load_config(const std::string& path) {
    RunConfig cfg;
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot read config file: " + path);
    nlohmann::json j;
    f >> j;
    if (j.contains("potential")) cfg.potential = j["potential"].get<std::string>();
    if (j.contains("k")) cfg.k = j["k"].get<double>();
    if (j.contains("kappa")) cfg.kappa = j["kappa"].get<double>();
    if (j.contains("n")) cfg.n_range = j["n"].is_string() ? j["n"].get<std::string>()
                                                          : std::to_string(j["n"].get<int>());
    if (j.contains("order")) cfg.order = j["order"].get<int>();
    if (j.contains("gamma"))
        cfg.gamma = j["gamma"].is_string() ? j["gamma"].get<std::string>()
                                           : fmt(j["gamma"].get<double>());
    if (j.contains("format")) cfg.format = j["format"].get<std::string>();
    if (j.contains("output")) cfg.output = j["output"].get<std::string>();
    if (j.contains("plot")) cfg.plot = j["plot"].get<bool>();
    if (j.contains("tol")) cfg.tol = j["tol"].get<double>();
    if (j.contains("grid_points")) cfg.grid_points = j["grid_points"].get<int>();
    return cfg;
}

}  // namespace

}  // namespace bmcli

int main(int argc, char** argv) {
    using namespace bmcli;
    CLI::App app{"bound-state moments and semiclassical eigenvalues from the potential alone"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_file;

    auto add_common = [&](CLI::App* sub, bool needs_potential) {
        sub->add_option("--config", config_file, "JSON config file; flags override");
        auto* p = sub->add_option("--potential", cfg.potential,
                                  "potential spec, e.g. \"poschl-teller()\" or \"poly(0,0,0,0,1)\"");
        if (needs_potential) p->required(false);
        sub->add_option("--k", cfg.k, "asymptotic wavenumber k");
        sub->add_option("--kappa", cfg.kappa, "kappa with k^2 = kappa(kappa+1)");
        sub->add_option("--n", cfg.n_range, "level index or range, e.g. 4 or 0..8");
        sub->add_option("--order", cfg.order, "correction order");
        sub->add_option("--gamma", cfg.gamma, "auto, a value, or a comma list");
        sub->add_option("--format", cfg.format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--output,-o", cfg.output, "output path ('-' = stdout)");
        sub->add_flag("--plot", cfg.plot, "also write an SVG chart");
        sub->add_option("--tol", cfg.tol, "oracle eigenvalue tolerance");
        sub->add_option("--grid-points", cfg.grid_points, "wavefield grid size");
    };

    auto* eigen = app.add_subcommand("eigen", "semiclassical eigenvalues vs the numeric oracle");
    add_common(eigen, true);
    auto* moments = app.add_subcommand("moments", "wave-corrected bound-state moments vs oracle");
    add_common(moments, true);
    auto* wavefield = app.add_subcommand("wavefield", "synthesize a bound state");
    add_common(wavefield, true);
    auto* verify = app.add_subcommand("verify", "run the full invariant suite");
    int fig_which = 0;
    auto* figures = app.add_subcommand("figures", "emit datasets mirroring the reference figures");
    figures->add_option("--which", fig_which, "figure id: 1, 4, 5, 6 or 8")->required();
    add_common(figures, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (!config_file.empty()) {
            RunConfig file_cfg = load_config(config_file);
            // flags already wrote into cfg; merge: file fills what flags left at defaults
            RunConfig defaults;
            auto pick_s = [](const std::string& flag, const std::string& filev,
                             const std::string& def) { return flag != def ? flag : filev; };
            file_cfg.potential = pick_s(cfg.potential, file_cfg.potential, defaults.potential);
            if (cfg.k) file_cfg.k = cfg.k;
            if (cfg.kappa) file_cfg.kappa = cfg.kappa;
            file_cfg.n_range = pick_s(cfg.n_range, file_cfg.n_range, defaults.n_range);
            if (cfg.order != defaults.order) file_cfg.order = cfg.order;
            file_cfg.gamma = pick_s(cfg.gamma, file_cfg.gamma, defaults.gamma);
            file_cfg.format = pick_s(cfg.format, file_cfg.format, defaults.format);
            file_cfg.output = pick_s(cfg.output, file_cfg.output, defaults.output);
            if (cfg.plot) file_cfg.plot = true;
            if (cfg.tol != defaults.tol) file_cfg.tol = cfg.tol;
            if (cfg.grid_points != defaults.grid_points) file_cfg.grid_points = cfg.grid_points;
            cfg = file_cfg;
        }
        if (eigen->parsed()) return run_eigen(cfg);
        if (moments->parsed()) return run_moments(cfg);
        if (wavefield->parsed()) return run_wavefield(cfg);
        if (verify->parsed()) return run_verify();
        if (figures->parsed()) return run_figures(fig_which, cfg);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
