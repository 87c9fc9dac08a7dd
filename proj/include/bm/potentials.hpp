#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bm {

enum class Family { Morse, PoschlTeller, Quartic, Harmonic, Polynomial };

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One-dimensional potential well with hand-coded analytic derivatives up to
// fifth order. Immutable; cheap to copy.
class Potential {
  public:
    static constexpr int max_order = 5;

    static Potential morse();
    static Potential poschl_teller();
    static Potential quartic();
    static Potential harmonic();
    static Potential polynomial(std::vector<double> coeffs);

    // Parses a CLI/config spec string: name(p1,p2,...), e.g. "poschl-teller()",
    // "poly(0,0,0,0,1)". Parameters are allowed only for poly.
    static Potential parse(const std::string& spec);

    Family family() const { return family_; }
    const std::string& name() const { return name_; }
    const std::vector<double>& params() const { return params_; }
    double domain_lo() const { return domain_lo_; }
    double domain_hi() const { return domain_hi_; }

    double operator()(double x) const { return deriv(x, 0); }
    double deriv(double x, int order) const;

    // V, V', ..., V^(max_order) at x. max_order <= 5.
    std::array<double, max_order + 1> derivs(double x, int max_order = 5) const;

    // Location and value of the well minimum.
    double well_min_x() const { return well_min_x_; }
    double well_min_value() const { return well_min_v_; }
    // Energy above which the well no longer confines (+inf for polynomial wells).
    double escape_energy() const { return escape_; }

  private:
    Potential(Family f, std::string name, std::vector<double> params,
              double lo, double hi);

    Family family_;
    std::string name_;
    std::vector<double> params_;      // polynomial coefficients for Polynomial
    std::vector<double> dcoeffs_[6];  // shifted coefficient tables (Polynomial)
    double domain_lo_, domain_hi_;
    double well_min_x_ = 0.0, well_min_v_ = 0.0;
    double escape_ = 0.0;

    void locate_minimum();
};

struct TurningPoints {
    double x1;   // left root of eps - V
    double x2;   // right root, x1 < x2
    double eps;  // energy the pair belongs to
};

// Innermost simple-root bracket of eps - V(x) around the well minimum.
// Throws DomainError when eps is outside the well's energy range or when a
// turning point is degenerate (V' vanishing at the root).
TurningPoints turning_points(const Potential& p, double eps,
                             std::optional<std::pair<double, double>> hint = {});

}  // namespace bm
