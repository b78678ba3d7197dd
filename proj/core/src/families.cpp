#include "isobeam/families.hpp"

#include <cmath>

#include "isobeam/quadrature.hpp"

namespace isobeam {

std::array<double, 3> k_roots() {
    std::array<double, 3> roots{0.25, 1.0 / 3.0, 1.0};
    for (double k : roots)
        if (std::abs(k_cubic(k)) > 1e-14)
            throw family_error("k_roots: cubic check failed");
    return roots;
}

std::pair<Jet, Jet> theorem1_coeffs(const LieFamilySpec& spec, double z, int order) {
    Jet a = eval_jet(*spec.a, z, order + 4);
    if (a.value() == 0.0) throw family_error("theorem1_coeffs: gauge a(z) vanishes");
    auto tr = [order](const Jet& j) { return j.truncated(order); };
    Jet a1 = a.derivative();                        // order + 3
    Jet a2 = a1.derivative();                       // order + 2
    Jet a3 = a2.derivative();                       // order + 1
    Jet a4 = a3.derivative();                       // order

    Jet at = tr(a), a1t = tr(a1), a2t = tr(a2), a3t = tr(a3);
    Jet a1sq = a1t * a1t;
    Jet aa2 = at * a2t;
    Jet asq = at * at;

    Jet A = (5.0 * a1sq - 10.0 * aa2 + 2.0 * spec.C1) / (2.0 * asq);

    Jet num = 81.0 * (a1sq * a1sq) + 12.0 * a1sq * (3.0 * spec.C1 - 17.0 * aa2) +
              72.0 * asq * (a1t * a3t) +
              4.0 * (Jet::constant(z, order, spec.C1 * spec.C1 + 4.0 * spec.C2) -
                     6.0 * spec.C1 * aa2 + 21.0 * asq * (a2t * a2t) - 6.0 * asq * (at * a4));
    Jet B = num / (16.0 * (asq * asq));
    return {A, B};
}

Jet theorem1_r(const LieFamilySpec& spec, double z, int order) {
    if (spec.C1 != 0.0 || spec.C2 != 0.0)
        throw family_error("theorem1_r: closed form requires C1 = C2 = 0");
    Jet a = eval_jet(*spec.a, z, order + 1);
    if (a.value() == 0.0) throw family_error("theorem1_r: gauge a(z) vanishes");
    const ExprPtr a_ast = spec.a;
    double q0 = quadrature([&a_ast](double t) { return 1.0 / eval_value(*a_ast, t); }, 0.0, z, 1e-13);

    // Q' = 1/a seeds all higher coefficients of the quadrature jet.
    Jet inva = Jet::constant(z, order, 1.0) / a.truncated(order);
    Jet Q(z, order + 1);
    Q.coeff(0) = q0;
    for (int j = 0; j <= order; ++j) Q.coeff(j + 1) = inva.coeff(j);

    Jet at = a.truncated(order + 1);
    Jet den = spec.C * at - spec.k * at * Q.truncated(order + 1);
    if (std::abs(den.value()) < 1e-13)
        throw pole_error("theorem1_r: pole of w at z", z, z);
    Jet w = Jet::constant(z, order + 1, 1.0) / den;
    Jet r = w.truncated(order) - 2.0 * a.derivative() / at.truncated(order);
    return r;
}

void ChazyFamilySpec::validate() const {
    if (std::abs(k1 * k4 - k2 * k3 + 1.0) > 1e-12)
        throw family_error("chazy family: k1*k4 - k2*k3 must equal -1");
}

Jet chazy_r(const ChazyFamilySpec& spec, double z, int order) {
    spec.validate();
    Jet zv = Jet::variable(z, order);
    Jet P = 3.0 * spec.k3 * zv - 2.0 * spec.k1;   // 3 k3 z - 2 k1
    Jet Q = 3.0 * spec.k4 * zv - 2.0 * spec.k2;   // 3 k4 z - 2 k2
    Jet P2 = P * P, P3 = P2 * P;
    Jet Q3 = Q * Q * Q;
    Jet num = 6.0 * (3.0 * spec.k3 * P2 * Q + 2.0 * spec.k4 * Q3 + spec.k4 * P3);
    Jet den = Q * (-2.0 * P3 - Q3);
    if (std::abs(den.value()) < 1e-13) throw pole_error("chazy_r: pole at z", z, z);
    return num / den;
}

std::pair<double, double> chazy_parametric(const ChazyFamilySpec& spec, double tau) {
    spec.validate();
    if (tau < 0.0) throw family_error("chazy_parametric: tau must be >= 0 (real branch)");
    if (tau == 0.5) throw family_error("chazy_parametric: tau = 1/2 is a parametrization singularity");
    double t13 = std::cbrt(tau);
    double t23 = t13 * t13;
    double xd = spec.k3 + spec.k4 * t13;
    if (xd == 0.0) throw family_error("chazy_parametric: x denominator vanishes");
    double x = (spec.k1 + spec.k2 * t13) / xd;
    double y = 3.0 * xd * (3.0 * spec.k3 * t23 + spec.k4 * (2.0 - tau)) / (1.0 - 2.0 * tau);
    return {x, y};
}

double chazy_y_closed(const ChazyFamilySpec& spec, double x) {
    double p = spec.k3 * x - spec.k1;
    double q = spec.k4 * x - spec.k2;
    double num = 3.0 * (3.0 * spec.k3 * p * p * q + 2.0 * spec.k4 * q * q * q + spec.k4 * p * p * p);
    double den = q * (-2.0 * p * p * p - q * q * q);
    return num / den;
}

namespace {

double hyp2f1_series(double a, double b, double c, double x) {
    double term = 1.0, sum = 1.0;
    for (int n = 0; n < 5000; ++n) {
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * x;
        sum += term;
        if (std::abs(term) < 1e-15 * std::abs(sum) && n > 2) return sum;
    }
    throw family_error("hyp2f1: series did not reach the tail tolerance");
}

} // namespace

double hyp2f1(double a, double b, double c, double x) {
    if (c <= 0.0 && c == std::floor(c))
        throw family_error("hyp2f1: c is a non-positive integer");
    if (x >= 1.0) throw family_error("hyp2f1: argument x >= 1 out of domain");
    if (x < 0.0) {
        // Pfaff: 2F1(a,b;c;x) = (1-x)^-a 2F1(a, c-b; c; x/(x-1)); maps x<0 into (0,1).
        return std::pow(1.0 - x, -a) * hyp2f1_series(a, c - b, c, x / (x - 1.0));
    }
    return hyp2f1_series(a, b, c, x);
}

ScalarField theorem1_r_field(const LieFamilySpec& spec) {
    return [spec](double z, int order) { return theorem1_r(spec, z, order); };
}

BeamCoefficients theorem1_coeff_fields(const LieFamilySpec& spec) {
    return {[spec](double z, int order) { return theorem1_coeffs(spec, z, order).first; },
            [spec](double z, int order) { return theorem1_coeffs(spec, z, order).second; }};
}

ScalarField chazy_r_field(const ChazyFamilySpec& spec) {
    return [spec](double z, int order) { return chazy_r(spec, z, order); };
}

std::vector<std::pair<double, double>> scan_zeros(const std::function<double(double)>& f, double lo,
                                                  double hi, int samples, double floor) {
    std::vector<std::pair<double, double>> out;
    double h = (hi - lo) / samples;
    double prev = f(lo);
    for (int i = 1; i <= samples; ++i) {
        double z = lo + i * h;
        double cur = f(z);
        if (prev == 0.0 || std::abs(prev) <= floor || (prev < 0.0) != (cur < 0.0))
            out.emplace_back(z - h, z);
        prev = cur;
    }
    if (std::abs(prev) <= floor && (out.empty() || out.back().second != hi))
        out.emplace_back(hi - h, hi);
    return out;
}

} // namespace isobeam
