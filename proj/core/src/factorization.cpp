#include "isobeam/factorization.hpp"

#include <cmath>

namespace isobeam {

std::pair<Jet, Jet> coeffs_from_factors(const FactorPair& fp, double z, int order) {
    Jet r = fp.r(z, order + 1);
    Jet s = fp.s(z, order + 2);
    Jet A = r.derivative() - (r * r).truncated(order) + 2.0 * s.truncated(order);
    Jet rs = r * s.truncated(order + 1);
    Jet B = s.derivative().derivative() - rs.derivative() + (s * s).truncated(order);
    return {A, B};
}

std::pair<Jet, Jet> hat_coeffs(const FactorPair& fp, double z, int order) {
    Jet r = fp.r(z, order + 3);
    Jet s = fp.s(z, order + 2);
    Jet r1 = r.derivative();                  // order + 2
    Jet Ahat = 2.0 * s.truncated(order) - 3.0 * r1.truncated(order) - (r * r).truncated(order);
    Jet s1 = s.derivative();                  // order + 1
    Jet s2 = s1.derivative();                 // order
    Jet r2 = r1.derivative();                 // order + 1
    Jet r3 = r2.derivative();                 // order
    Jet rt = r.truncated(order);
    Jet st = s.truncated(order);
    Jet Bhat = (s * s).truncated(order) + s2 - r3 - rt * r2.truncated(order) +
               rt * s1.truncated(order) - st * r1.truncated(order);
    return {Ahat, Bhat};
}

Jet s_from_r(const Jet& r, const Jet& A) {
    int order = std::min(r.order() - 1, A.order());
    return 0.5 * (A.truncated(order) + (r * r).truncated(order) + (-r.derivative()).truncated(order));
}

double principal_residual(const Jet& r, const Jet& A, double B) {
    double r0 = r.coeff(0), r1 = r.coeff(1), r2 = r.coeff(2), r3 = r.coeff(3);
    double A0 = A.coeff(0), A1 = A.coeff(1), A2 = A.coeff(2);
    return r3 - 3.0 * r0 * r2 - 3.5 * r1 * r1 + 2.0 * (2.0 * r0 * r0 + A0) * r1 - A2 -
           r0 * r0 * A0 - 0.5 * A0 * A0 - 0.5 * r0 * r0 * r0 * r0 + r0 * A1 + 2.0 * B;
}

namespace {

void require_order(const Jet& U, int min_order, const char* op) {
    if (U.order() < min_order) throw contract_error(std::string(op) + ": insufficient jet order");
}

} // namespace

Jet apply_R(const FactorPair& fp, const Jet& U) {
    require_order(U, 2, "apply_R");
    int m = U.order() - 2;
    Jet r = fp.r(U.base_point(), m);
    Jet s = fp.s(U.base_point(), m);
    return U.derivative().derivative() + r * U.derivative().truncated(m) + s * U.truncated(m);
}

Jet apply_Rstar(const FactorPair& fp, const Jet& U) {
    require_order(U, 2, "apply_Rstar");
    int m = U.order() - 2;
    Jet r = fp.r(U.base_point(), m + 1);
    Jet s = fp.s(U.base_point(), m);
    return U.derivative().derivative() - r.truncated(m) * U.derivative().truncated(m) -
           r.derivative() * U.truncated(m) + s * U.truncated(m);
}

Jet apply_L(const BeamCoefficients& coeffs, const Jet& U) {
    require_order(U, 4, "apply_L");
    int m = U.order() - 4;
    Jet A = coeffs.A(U.base_point(), m + 1);
    Jet B = coeffs.B(U.base_point(), m);
    Jet U1 = U.derivative();
    Jet U2 = U1.derivative();
    Jet U4 = U2.derivative().derivative();
    return U4 + A.truncated(m) * U2.truncated(m) + A.derivative() * U1.truncated(m) +
           B * U.truncated(m);
}

BeamCoefficients coeff_fields_from_factors(const FactorPair& fp) {
    return {[fp](double z, int order) { return coeffs_from_factors(fp, z, order).first; },
            [fp](double z, int order) { return coeffs_from_factors(fp, z, order).second; }};
}

BeamCoefficients hat_coeff_fields(const FactorPair& fp) {
    return {[fp](double z, int order) { return hat_coeffs(fp, z, order).first; },
            [fp](double z, int order) { return hat_coeffs(fp, z, order).second; }};
}

std::pair<double, double> intertwine_residual(const FactorPair& fp, const ScalarField& U, double z) {
    Jet Uj = U(z, 6);
    BeamCoefficients L = coeff_fields_from_factors(fp);
    BeamCoefficients Lhat = hat_coeff_fields(fp);

    Jet RU = apply_R(fp, Uj);                    // order 4
    double res1 = std::abs(apply_Rstar(fp, RU).value() - apply_L(L, Uj).value());

    Jet LU = apply_L(L, Uj.truncated(6));        // order 2
    double res2 = std::abs(apply_R(fp, LU).value() - apply_L(Lhat, RU).value());
    return {res1, res2};
}

} // namespace isobeam
