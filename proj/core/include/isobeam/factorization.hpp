#pragma once

#include <utility>

#include "isobeam/expr.hpp"
#include "isobeam/jet.hpp"

namespace isobeam {

/// Coefficient pair (A, B) of the canonical fourth-order beam operator
/// L = d4/dz4 + d/dz(A d/dz) + B.
struct BeamCoefficients {
    ScalarField A;
    ScalarField B;
};

inline BeamCoefficients unit_coeffs() { return {field_constant(0.0), field_constant(0.0)}; }

/// Functions (r, s) of the second-order factor R = d2/dz2 + r d/dz + s.
struct FactorPair {
    ScalarField r;
    ScalarField s;
};

/// (A, B) induced by the factorization L = R*R:
///   A = r' - r^2 + 2s,  B = s'' - (rs)' + s^2.
std::pair<Jet, Jet> coeffs_from_factors(const FactorPair& fp, double z, int order = 2);

/// Coefficients of the swapped operator Lhat = R R*:
///   Ahat = 2s - 3r' - r^2,  Bhat = s^2 + s'' - r''' - r r'' + r s' - s r'.
std::pair<Jet, Jet> hat_coeffs(const FactorPair& fp, double z, int order = 0);

/// s recovered from r and A:  s = (A + r^2 - r') / 2.
Jet s_from_r(const Jet& r, const Jet& A);

/// Left-hand side of the principal equation at the base point:
///   r''' - 3 r r'' - (7/2) r'^2 + 2(2r^2 + A) r' - A'' - r^2 A - A^2/2
///   - r^4/2 + r A' + 2B.
/// Requires r to order >= 3 and A to order >= 2.
double principal_residual(const Jet& r, const Jet& A, double B);

/// R U = U'' + r U' + s U, order reduced by 2.
Jet apply_R(const FactorPair& fp, const Jet& U);
/// R* U = U'' - r U' - r' U + s U, order reduced by 2.
Jet apply_Rstar(const FactorPair& fp, const Jet& U);
/// L U = U'''' + A U'' + A' U' + B U, order reduced by 4.
Jet apply_L(const BeamCoefficients& coeffs, const Jet& U);

BeamCoefficients coeff_fields_from_factors(const FactorPair& fp);
BeamCoefficients hat_coeff_fields(const FactorPair& fp);

/// (|R*(R U) - L U|, |R(L U) - Lhat(R U)|) at z, with (A,B) and (Ahat,Bhat)
/// derived from fp.  Both vanish identically for any smooth U.
std::pair<double, double> intertwine_residual(const FactorPair& fp, const ScalarField& U, double z);

} // namespace isobeam
