#pragma once

#include <array>
#include <functional>

#include "isobeam/expr.hpp"
#include "isobeam/factorization.hpp"
#include "isobeam/jet.hpp"

namespace isobeam {

/// Bivariate truncated Taylor data in (z, r): raw partials
/// c(i,j) = d^{i+j} f / dz^i dr^j for i + j <= order (order <= 3).
class Jet2 {
public:
    static constexpr int max_order = 3;

    explicit Jet2(int order = max_order) : order_(order) {
        for (auto& row : c_) row.fill(0.0);
    }

    static Jet2 constant(double v, int order = max_order) {
        Jet2 j(order);
        j.c_[0][0] = v;
        return j;
    }
    static Jet2 var_z(double z0, int order = max_order) {
        Jet2 j(order);
        j.c_[0][0] = z0;
        if (order >= 1) j.c_[1][0] = 1.0;
        return j;
    }
    static Jet2 var_r(double r0, int order = max_order) {
        Jet2 j(order);
        j.c_[0][0] = r0;
        if (order >= 1) j.c_[0][1] = 1.0;
        return j;
    }
    /// Lift a univariate jet in z (a function of z only) into (z, r) space.
    static Jet2 lift_z(const Jet& a, int order = max_order);

    int order() const { return order_; }
    double coeff(int i, int j) const { return c_[i][j]; }
    double& coeff(int i, int j) { return c_[i][j]; }
    double value() const { return c_[0][0]; }

    Jet2 dz() const;
    Jet2 dr() const;

    Jet2 operator-() const;
    friend Jet2 operator+(const Jet2& a, const Jet2& b);
    friend Jet2 operator-(const Jet2& a, const Jet2& b);
    friend Jet2 operator*(const Jet2& a, const Jet2& b);
    friend Jet2 operator*(double s, const Jet2& a);
    friend Jet2 operator*(const Jet2& a, double s) { return s * a; }
    friend Jet2 operator+(const Jet2& a, double s);
    friend Jet2 operator-(const Jet2& a, double s) { return a + (-s); }

private:
    int order_;
    std::array<std::array<double, max_order + 1>, max_order + 1> c_;
};

/// Point vector field X = xi(z,r) d/dz + eta(z,r) d/dr, with coefficient
/// partials exposed through Jet2 evaluation.
struct PointVectorField {
    std::function<Jet2(const Jet2& z, const Jet2& r)> xi;
    std::function<Jet2(const Jet2& z, const Jet2& r)> eta;
};

PointVectorField field_X1();  // d/dz
PointVectorField field_X2();  // z d/dz - r d/dr
PointVectorField field_X3();  // z^2 d/dz - 2(rz + 2) d/dr
PointVectorField field_gamma(ExprPtr a);  // a d/dz - (a'r + 2a'') d/dr
PointVectorField field_r_scaling();       // r d/dr (not a symmetry; test foil)

/// Third-order jet coordinates (z, r, r', r'', r''').
struct JetPoint {
    double z = 0.0, r0 = 0.0, r1 = 0.0, r2 = 0.0, r3 = 0.0;
};

/// r''' solved from the principal equation (it enters linearly).
double on_manifold_r3(double z, double r0, double r1, double r2, const Jet& A, double B);
JetPoint on_manifold(const BeamCoefficients& coeffs, double z, double r0, double r1, double r2);

/// First three prolongation coefficients eta^[1..3] at p, via the recursion
/// eta^[k] = D(eta^[k-1]) - r^(k) D(xi).
std::array<double, 3> prolong(const PointVectorField& X, const JetPoint& p);

/// X^[3] applied to the principal equation's defining function, with r'''
/// eliminated on the solution manifold.
double symmetry_residual(const PointVectorField& X, const BeamCoefficients& coeffs, JetPoint p);

struct DeterminingResiduals {
    double res7 = 0.0;
    double res8 = 0.0;
    bool res8_indeterminate = false;  // a'(z) = 0: the relation divides by a'
    double res9 = 0.0;
};

DeterminingResiduals determining_residuals(const ExprAst& a, const BeamCoefficients& coeffs,
                                           double z);

/// Commutator [X, Y] = (X(Y_i) - Y(X_i)) d/dx_i.
PointVectorField bracket(const PointVectorField& X, const PointVectorField& Y);

/// y''' - 2 y y'' + 3 y'^2 - alpha (6 y' - y^2)^2 at the base point.
double chazy_residual(const Jet& y, double alpha);

/// (principal residual of r with A=B=0 at z, (27/8) x Chazy residual of
/// y(x) = r(2x/3) at x = (3/2) z, alpha = 4/27); equal for any smooth r.
std::pair<double, double> chazy_map_check(const ScalarField& r, double z);

} // namespace isobeam
