#include "isobeam/symmetry.hpp"

#include <cmath>
#include <map>

namespace isobeam {

Jet2 Jet2::lift_z(const Jet& a, int order) {
    if (a.order() < order) throw contract_error("Jet2::lift_z: univariate jet order too low");
    Jet2 j(order);
    for (int i = 0; i <= order; ++i) j.c_[i][0] = a.coeff(i);
    return j;
}

Jet2 Jet2::dz() const {
    if (order_ < 1) throw contract_error("Jet2::dz: order 0");
    Jet2 j(order_ - 1);
    for (int i = 0; i < order_; ++i)
        for (int jj = 0; i + jj < order_; ++jj) j.c_[i][jj] = c_[i + 1][jj];
    return j;
}

Jet2 Jet2::dr() const {
    if (order_ < 1) throw contract_error("Jet2::dr: order 0");
    Jet2 j(order_ - 1);
    for (int i = 0; i < order_; ++i)
        for (int jj = 0; i + jj < order_; ++jj) j.c_[i][jj] = c_[i][jj + 1];
    return j;
}

Jet2 Jet2::operator-() const {
    Jet2 j = *this;
    for (auto& row : j.c_)
        for (double& v : row) v = -v;
    return j;
}

Jet2 operator+(const Jet2& a, const Jet2& b) {
    Jet2 j(std::min(a.order_, b.order_));
    for (int i = 0; i <= j.order_; ++i)
        for (int jj = 0; i + jj <= j.order_; ++jj) j.c_[i][jj] = a.c_[i][jj] + b.c_[i][jj];
    return j;
}

Jet2 operator-(const Jet2& a, const Jet2& b) { return a + (-b); }

namespace {
double binom_small(int n, int k) {
    static const double table[4][4] = {{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};
    return table[n][k];
}
} // namespace

Jet2 operator*(const Jet2& a, const Jet2& b) {
    Jet2 j(std::min(a.order_, b.order_));
    for (int i = 0; i <= j.order_; ++i)
        for (int jj = 0; i + jj <= j.order_; ++jj) {
            double acc = 0.0;
            for (int p = 0; p <= i; ++p)
                for (int q = 0; q <= jj; ++q)
                    acc += binom_small(i, p) * binom_small(jj, q) * a.c_[p][q] *
                           b.c_[i - p][jj - q];
            j.c_[i][jj] = acc;
        }
    return j;
}

Jet2 operator*(double s, const Jet2& a) {
    Jet2 j = a;
    for (auto& row : j.c_)
        for (double& v : row) v *= s;
    return j;
}

Jet2 operator+(const Jet2& a, double s) {
    Jet2 j = a;
    j.c_[0][0] += s;
    return j;
}

PointVectorField field_X1() {
    return {[](const Jet2& z, const Jet2&) { return Jet2::constant(1.0, z.order()); },
            [](const Jet2& z, const Jet2&) { return Jet2::constant(0.0, z.order()); }};
}

PointVectorField field_X2() {
    return {[](const Jet2& z, const Jet2&) { return z; },
            [](const Jet2&, const Jet2& r) { return -r; }};
}

PointVectorField field_X3() {
    return {[](const Jet2& z, const Jet2&) { return z * z; },
            [](const Jet2& z, const Jet2& r) { return -2.0 * (r * z) - 4.0; }};
}

PointVectorField field_gamma(ExprPtr a) {
    auto xi = [a](const Jet2& z, const Jet2&) {
        Jet aj = eval_jet(*a, z.value(), z.order());
        return Jet2::lift_z(aj, z.order());
    };
    auto eta = [a](const Jet2& z, const Jet2& r) {
        Jet aj = eval_jet(*a, z.value(), z.order() + 2);
        Jet2 a1 = Jet2::lift_z(aj.derivative().truncated(z.order()), z.order());
        Jet2 a2 = Jet2::lift_z(aj.derivative().derivative(), z.order());
        return -(a1 * r) - 2.0 * a2;
    };
    return {xi, eta};
}

PointVectorField field_r_scaling() {
    return {[](const Jet2& z, const Jet2&) { return Jet2::constant(0.0, z.order()); },
            [](const Jet2&, const Jet2& r) { return r; }};
}

namespace {

// Polynomial in the jet coordinates (r', r'', r''') with Jet2-in-(z, r)
// coefficients; the carrier for the prolongation recursion.
using Mono = std::array<int, 3>;
using Poly = std::map<Mono, Jet2>;

void poly_add(Poly& p, const Mono& m, const Jet2& c) {
    auto it = p.find(m);
    if (it == p.end())
        p.emplace(m, c);
    else
        it->second = it->second + c;
}

Poly poly_scale_mono(const Poly& p, const Mono& shift, double s = 1.0) {
    Poly out;
    for (const auto& [m, c] : p)
        out.emplace(Mono{m[0] + shift[0], m[1] + shift[1], m[2] + shift[2]}, s * c);
    return out;
}

Poly poly_sub(Poly a, const Poly& b) {
    for (const auto& [m, c] : b) poly_add(a, m, -c);
    return a;
}

// Total derivative D = d/dz + r' d/dr + r'' d/dr' + r''' d/dr''.
Poly total_derivative(const Poly& p) {
    Poly out;
    for (const auto& [m, c] : p) {
        if (m[2] > 0) throw contract_error("total_derivative: r''' dependence not supported");
        poly_add(out, m, c.dz());
        poly_add(out, Mono{m[0] + 1, m[1], m[2]}, c.dr());
        if (m[0] > 0) poly_add(out, Mono{m[0] - 1, m[1] + 1, m[2]}, static_cast<double>(m[0]) * c);
        if (m[1] > 0) poly_add(out, Mono{m[0], m[1] - 1, m[2] + 1}, static_cast<double>(m[1]) * c);
    }
    return out;
}

double poly_eval(const Poly& p, double r1, double r2, double r3) {
    double acc = 0.0;
    for (const auto& [m, c] : p)
        acc += c.value() * std::pow(r1, m[0]) * std::pow(r2, m[1]) * std::pow(r3, m[2]);
    return acc;
}

struct Prolongation {
    Poly eta0, eta1, eta2, eta3;
};

Prolongation prolong_polys(const PointVectorField& X, double z, double r0) {
    Jet2 zv = Jet2::var_z(z);
    Jet2 rv = Jet2::var_r(r0);
    Poly xi{{Mono{0, 0, 0}, X.xi(zv, rv)}};
    Poly eta{{Mono{0, 0, 0}, X.eta(zv, rv)}};
    Poly Dxi = total_derivative(xi);

    Prolongation pr;
    pr.eta0 = eta;
    pr.eta1 = poly_sub(total_derivative(pr.eta0), poly_scale_mono(Dxi, Mono{1, 0, 0}));
    pr.eta2 = poly_sub(total_derivative(pr.eta1), poly_scale_mono(Dxi, Mono{0, 1, 0}));
    pr.eta3 = poly_sub(total_derivative(pr.eta2), poly_scale_mono(Dxi, Mono{0, 0, 1}));
    return pr;
}

} // namespace

double on_manifold_r3(double z, double r0, double r1, double r2, const Jet& A, double B) {
    (void)z;
    double A0 = A.coeff(0), A1 = A.coeff(1), A2 = A.coeff(2);
    return 3.0 * r0 * r2 + 3.5 * r1 * r1 - 2.0 * (2.0 * r0 * r0 + A0) * r1 + A2 + r0 * r0 * A0 +
           0.5 * A0 * A0 + 0.5 * r0 * r0 * r0 * r0 - r0 * A1 - 2.0 * B;
}

JetPoint on_manifold(const BeamCoefficients& coeffs, double z, double r0, double r1, double r2) {
    Jet A = coeffs.A(z, 2);
    double B = coeffs.B(z, 0).value();
    return {z, r0, r1, r2, on_manifold_r3(z, r0, r1, r2, A, B)};
}

std::array<double, 3> prolong(const PointVectorField& X, const JetPoint& p) {
    Prolongation pr = prolong_polys(X, p.z, p.r0);
    return {poly_eval(pr.eta1, p.r1, p.r2, p.r3), poly_eval(pr.eta2, p.r1, p.r2, p.r3),
            poly_eval(pr.eta3, p.r1, p.r2, p.r3)};
}

double symmetry_residual(const PointVectorField& X, const BeamCoefficients& coeffs, JetPoint p) {
    Jet A = coeffs.A(p.z, 3);
    Jet B = coeffs.B(p.z, 1);
    p.r3 = on_manifold_r3(p.z, p.r0, p.r1, p.r2, A, B.value());

    double A0 = A.coeff(0), A1 = A.coeff(1), A2 = A.coeff(2), A3 = A.coeff(3);
    double B1 = B.coeff(1);
    double r0 = p.r0, r1 = p.r1, r2 = p.r2;

    // Partials of the defining function F(z, r, r', r'', r''').
    double Fz = 2.0 * A1 * r1 - A3 - r0 * r0 * A1 - A0 * A1 + r0 * A2 + 2.0 * B1;
    double Fr0 = -3.0 * r2 + 8.0 * r0 * r1 - 2.0 * r0 * A0 - 2.0 * r0 * r0 * r0 + A1;
    double Fr1 = -7.0 * r1 + 2.0 * (2.0 * r0 * r0 + A0);
    double Fr2 = -3.0 * r0;

    Prolongation pr = prolong_polys(X, p.z, p.r0);
    Jet2 zv = Jet2::var_z(p.z);
    Jet2 rv = Jet2::var_r(p.r0);
    double xi = X.xi(zv, rv).value();
    double eta = X.eta(zv, rv).value();
    double e1 = poly_eval(pr.eta1, p.r1, p.r2, p.r3);
    double e2 = poly_eval(pr.eta2, p.r1, p.r2, p.r3);
    double e3 = poly_eval(pr.eta3, p.r1, p.r2, p.r3);

    return xi * Fz + eta * Fr0 + e1 * Fr1 + e2 * Fr2 + e3;
}

DeterminingResiduals determining_residuals(const ExprAst& a, const BeamCoefficients& coeffs,
                                           double z) {
    Jet aj = eval_jet(a, z, 5);
    Jet A = coeffs.A(z, 3);
    Jet B = coeffs.B(z, 1);
    double a0 = aj.coeff(0), a1 = aj.coeff(1), a2 = aj.coeff(2), a3 = aj.coeff(3),
           a4 = aj.coeff(4), a5 = aj.coeff(5);
    double A0 = A.coeff(0), A1 = A.coeff(1), A2 = A.coeff(2), A3 = A.coeff(3);
    double B0 = B.coeff(0), B1 = B.coeff(1);

    DeterminingResiduals out;
    out.res7 = a0 * A1 + 2.0 * a1 * A0 + 5.0 * a3;
    out.res9 = 3.0 * a1 * A1 + 2.0 * a2 * A0 + a0 * A2 + 5.0 * a4;
    if (a1 == 0.0) {
        out.res8_indeterminate = true;
    } else {
        out.res8 = B1 + 4.0 * a1 / a0 * B0 -
                   (a1 / a0 * A0 * A0 + 0.5 * A0 * A1 + a2 / a1 * A1 + 2.0 * a1 / a0 * A2 +
                    2.0 * a3 / a0 * A0 + 0.5 * A3 + a5 / a0);
    }
    return out;
}

PointVectorField bracket(const PointVectorField& X, const PointVectorField& Y) {
    auto component = [X, Y](bool want_xi) {
        return [X, Y, want_xi](const Jet2& z, const Jet2& r) {
            int ord = z.order();
            Jet2 zv = Jet2::var_z(z.value(), std::min(ord + 1, Jet2::max_order));
            Jet2 rv = Jet2::var_r(r.value(), std::min(ord + 1, Jet2::max_order));
            Jet2 xX = X.xi(zv, rv), eX = X.eta(zv, rv);
            Jet2 xY = Y.xi(zv, rv), eY = Y.eta(zv, rv);
            Jet2 cY = want_xi ? xY : eY;
            Jet2 cX = want_xi ? xX : eX;
            return xX * cY.dz() + eX * cY.dr() - xY * cX.dz() - eY * cX.dr();
        };
    };
    return {component(true), component(false)};
}

double chazy_residual(const Jet& y, double alpha) {
    if (y.order() < 3) throw contract_error("chazy_residual: jet order >= 3 required");
    double y0 = y.coeff(0), y1 = y.coeff(1), y2 = y.coeff(2), y3 = y.coeff(3);
    double q = 6.0 * y1 - y0 * y0;
    return y3 - 2.0 * y0 * y2 + 3.0 * y1 * y1 - alpha * q * q;
}

std::pair<double, double> chazy_map_check(const ScalarField& r, double z) {
    Jet rj = r(z, 3);
    Jet A = Jet::constant(z, 2, 0.0);
    double lhs = principal_residual(rj, A, 0.0);

    // y(x) = r(2x/3) at x = (3/2) z; chain rule scales the k-th derivative
    // by (2/3)^k.
    double x = 1.5 * z;
    Jet y(x, 3);
    double scale = 1.0;
    for (int k = 0; k <= 3; ++k) {
        y.coeff(k) = rj.coeff(k) * scale;
        scale *= 2.0 / 3.0;
    }
    double rhs = 27.0 / 8.0 * chazy_residual(y, 4.0 / 27.0);
    return {lhs, rhs};
}

} // namespace isobeam
