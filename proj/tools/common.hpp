#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bm/potentials.hpp"

namespace bmcli {

struct RunConfig {
    std::string potential;
    std::optional<double> k;
    std::optional<double> kappa;
    std::string n_range = "0";
    int order = -1;              // subcommand-specific default
    std::string gamma = "auto";  // auto | number | comma list
    std::string format = "csv";
    std::string output = "-";
    bool plot = false;
    double tol = 1e-10;
    int grid_points = 1024;
};

inline double resolve_k(const RunConfig& cfg) {
    if (cfg.k && cfg.kappa)
        throw std::invalid_argument("give exactly one of --k / --kappa");
    if (cfg.k) return *cfg.k;
    if (cfg.kappa) return std::sqrt(*cfg.kappa * (*cfg.kappa + 1.0));
    throw std::invalid_argument("one of --k / --kappa is required");
}

inline std::vector<int> parse_n_range(const std::string& s) {
    std::vector<int> out;
    const auto dots = s.find("..");
    if (dots == std::string::npos) {
        out.push_back(std::stoi(s));
        return out;
    }
    const int lo = std::stoi(s.substr(0, dots));
    const int hi = std::stoi(s.substr(dots + 2));
    if (hi < lo) throw std::invalid_argument("empty n range: " + s);
    for (int n = lo; n <= hi; ++n) out.push_back(n);
    return out;
}

inline std::vector<double> parse_gamma_list(const std::string& s) {
    std::vector<double> out;
    size_t pos = 0;
    while (pos < s.size()) {
        size_t comma = s.find(',', pos);
        if (comma == std::string::npos) comma = s.size();
        out.push_back(std::stod(s.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return out;
}

}  // namespace bmcli
