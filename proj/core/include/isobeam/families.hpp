#pragma once

#include <array>
#include <utility>
#include <vector>

#include "isobeam/expr.hpp"
#include "isobeam/factorization.hpp"
#include "isobeam/jet.hpp"

namespace isobeam {

/// Family coefficient has a pole inside the working region.
class pole_error : public std::runtime_error {
public:
    pole_error(const std::string& what, double lo, double hi)
        : std::runtime_error(what), bracket_lo(lo), bracket_hi(hi) {}
    double bracket_lo;
    double bracket_hi;
};

/// Invalid family parameters (vanishing gauge, determinant constraint, ...).
class family_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Roots of 12 k^3 - 19 k^2 + 8 k - 1 = 0, verified against the cubic.
std::array<double, 3> k_roots();

inline double k_cubic(double k) { return 12.0 * k * k * k - 19.0 * k * k + 8.0 * k - 1.0; }

/// One-symmetry solution family: r = 1/(C a - k a Int_0^z a^-1) - 2a'/a.
/// The closed-form r requires C1 = C2 = 0; nonzero C1, C2 are accepted for
/// the coefficient formulas only.
struct LieFamilySpec {
    ExprPtr a;
    double C = 1.0;
    double k = 1.0;
    double C1 = 0.0;
    double C2 = 0.0;
};

/// A = (5a'^2 - 10 a a'' + 2 C1) / (2 a^2) and the matching quartic-in-a'
/// expression for B.  With C1 = C2 = 0 these are the family coefficients.
std::pair<Jet, Jet> theorem1_coeffs(const LieFamilySpec& spec, double z, int order = 2);

Jet theorem1_r(const LieFamilySpec& spec, double z, int order = 3);

/// Rational family parameters; k1 k4 - k2 k3 = -1 required.
struct ChazyFamilySpec {
    double k1 = 0.0, k2 = 1.0, k3 = 1.0, k4 = 0.0;
    void validate() const;
};

Jet chazy_r(const ChazyFamilySpec& spec, double z, int order = 3);

/// Parametric general Chazy solution (x(tau), y(tau)); tau >= 0, tau != 1/2,
/// real cube-root branch.
std::pair<double, double> chazy_parametric(const ChazyFamilySpec& spec, double tau);

/// Closed form y(x) obtained by eliminating tau.
double chazy_y_closed(const ChazyFamilySpec& spec, double x);

/// Gauss series sum_n (a)_n (b)_n / (c)_n x^n / n!, relative tail < 1e-12.
/// Arguments x < 0 are routed through the Pfaff transformation; x >= 1 is
/// out of domain.
double hyp2f1(double a, double b, double c, double x);

inline double chazy_sigma(double alpha) { return 1.0 / (144.0 * (1.0 - 9.0 * alpha)); }

ScalarField theorem1_r_field(const LieFamilySpec& spec);
BeamCoefficients theorem1_coeff_fields(const LieFamilySpec& spec);
ScalarField chazy_r_field(const ChazyFamilySpec& spec);

/// Brackets [z0, z1] where f changes sign or comes within `floor` of zero.
std::vector<std::pair<double, double>> scan_zeros(const std::function<double(double)>& f, double lo,
                                                  double hi, int samples, double floor = 0.0);

} // namespace isobeam
