#include <doctest.h>

#include <cmath>
#include <random>

#include "isobeam/factorization.hpp"
#include "isobeam/families.hpp"

using namespace isobeam;

namespace {

FactorPair make_fp(const char* r_text, const char* s_text) {
    return {field_from_expr(parse(r_text)), field_from_expr(parse(s_text))};
}

} // namespace

TEST_CASE("coeffs_from_factors basics") {
    auto [A0, B0] = coeffs_from_factors(make_fp("0", "0"), 0.3);
    CHECK(A0.value() == doctest::Approx(0.0));
    CHECK(B0.value() == doctest::Approx(0.0));

    auto [Ac, Bc] = coeffs_from_factors(make_fp("0", "1.5"), -0.2);
    CHECK(Ac.value() == doctest::Approx(3.0));
    CHECK(Bc.value() == doctest::Approx(2.25));

    // r=z, s=0: A = 1 - z^2, B = 0
    auto [Az, Bz] = coeffs_from_factors(make_fp("z", "0"), 0.7);
    CHECK(Az.value() == doctest::Approx(1.0 - 0.49));
    CHECK(Az.coeff(1) == doctest::Approx(-1.4));
    CHECK(Bz.value() == doctest::Approx(0.0));
}

TEST_CASE("hat_coeffs basics") {
    auto [Ac, Bc] = hat_coeffs(make_fp("0", "1.5"), 0.4);
    CHECK(Ac.value() == doctest::Approx(3.0));
    CHECK(Bc.value() == doctest::Approx(2.25));

    auto [Az, Bz] = hat_coeffs(make_fp("z", "0"), 0.6);
    CHECK(Az.value() == doctest::Approx(-3.0 - 0.36));
    CHECK(Bz.value() == doctest::Approx(0.0));

    auto [As, Bs] = hat_coeffs(make_fp("0", "z"), 0.8);
    CHECK(As.value() == doctest::Approx(1.6));
    CHECK(Bs.value() == doctest::Approx(0.64));
}

TEST_CASE("s_from_r") {
    Jet r0 = Jet::constant(0.0, 3, 0.0);
    Jet A0 = Jet::constant(0.0, 2, 0.0);
    CHECK(s_from_r(r0, A0).value() == doctest::Approx(0.0));

    Jet A2c = Jet::constant(0.0, 2, 3.0);
    CHECK(s_from_r(r0, A2c).value() == doctest::Approx(1.5));

    Jet rz = Jet::variable(2.0, 3);
    CHECK(s_from_r(rz, Jet::constant(2.0, 2, 0.0)).value() == doctest::Approx(1.5));
}

TEST_CASE("principal_residual basics") {
    Jet zero3 = Jet::constant(0.0, 3, 0.0);
    Jet zero2 = Jet::constant(0.0, 2, 0.0);
    CHECK(principal_residual(zero3, zero2, 0.0) == doctest::Approx(0.0));
    CHECK(principal_residual(Jet::variable(0.0, 3), zero2, 0.0) == doctest::Approx(-3.5));
}

TEST_CASE("principal residual of a theorem1_r member r = 1/(1 - z/4)") {
    ExprPtr r_expr = parse("1/(1-z/4)");
    for (double z : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        Jet r = eval_jet(*r_expr, z, 3);
        Jet A = Jet::constant(z, 2, 0.0);
        CHECK(std::abs(principal_residual(r, A, 0.0)) < 1e-10);
    }
}

TEST_CASE("cubic root identity: residual of 1/(C-kz) proportional to the k-cubic") {
    double C = 2.0;
    for (double k : {0.25, 1.0 / 3.0, 0.5, 0.8, 1.0}) {
        for (double z : {0.0, 0.5, 1.0}) {
            Jet den = C - k * Jet::variable(z, 3);
            Jet r = Jet::constant(z, 3, 1.0) / den;
            Jet A = Jet::constant(z, 2, 0.0);
            double res = principal_residual(r, A, 0.0);
            double expect = 0.5 * k_cubic(k) * std::pow(C - k * z, -4.0);
            CHECK(res == doctest::Approx(expect).epsilon(1e-10));
        }
    }
}

TEST_CASE("apply_R / apply_Rstar basics") {
    FactorPair trivial = make_fp("0", "0");
    Jet U = eval_jet(parse("sin(3.14159265358979324*z)"), 0.5, 4);
    Jet RU = apply_R(trivial, U);
    double pi = 3.14159265358979324;
    CHECK(RU.value() == doctest::Approx(-pi * pi * std::sin(pi * 0.5)));

    FactorPair r1 = make_fp("1", "0");
    Jet Uz = Jet::variable(0.0, 2);
    CHECK(apply_R(r1, Uz).value() == doctest::Approx(1.0));
    CHECK(apply_Rstar(r1, Uz).value() == doctest::Approx(-1.0));

    CHECK_THROWS_AS(apply_R(trivial, Jet::variable(0.0, 1)), contract_error);
}

TEST_CASE("apply_L basics") {
    BeamCoefficients unit = unit_coeffs();
    Jet z4 = eval_jet(parse("z^4"), 0.0, 4);
    CHECK(apply_L(unit, z4).value() == doctest::Approx(24.0));

    double pi = 3.14159265358979324;
    Jet s = eval_jet(parse("sin(3.14159265358979324*z)"), 0.5, 4);
    CHECK(apply_L(unit, s).value() == doctest::Approx(std::pow(pi, 4.0)));

    BeamCoefficients a1{field_constant(1.0), field_constant(0.0)};
    Jet z2 = eval_jet(parse("z^2"), 1.0, 4);
    CHECK(apply_L(a1, z2).value() == doctest::Approx(2.0));
}

TEST_CASE("intertwine_residual examples") {
    auto [i1, i2] = intertwine_residual(make_fp("0", "0"), field_from_expr(parse("sin(z)")), 0.9);
    CHECK(i1 == doctest::Approx(0.0));
    CHECK(i2 == doctest::Approx(0.0));

    auto [j1, j2] = intertwine_residual(make_fp("z", "1"), field_from_expr(parse("z^3")), 0.7);
    CHECK(std::abs(j1) < 1e-10);
    CHECK(std::abs(j2) < 1e-10);

    ChazyFamilySpec spec{0, 1, 1, 0};
    ScalarField r = chazy_r_field(spec);
    FactorPair fp{r, [r](double z, int order) {
                      Jet rj = r(z, order + 1);
                      return 0.5 * ((rj * rj).truncated(order) - rj.derivative());
                  }};
    auto [c1, c2] = intertwine_residual(fp, field_from_expr(parse("exp(z)")), 0.3);
    CHECK(std::abs(c1) < 1e-9);
    CHECK(std::abs(c2) < 1e-9);
}

TEST_CASE("property: factorization and swap soundness for random smooth factors") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        double a0 = coef(rng), a1 = coef(rng), a2 = coef(rng);
        double b0 = coef(rng), b1 = coef(rng);
        FactorPair fp{[=](double z, int order) {
                          Jet zv = Jet::variable(z, order);
                          return a0 + a1 * zv + a2 * sin(zv);
                      },
                      [=](double z, int order) {
                          Jet zv = Jet::variable(z, order);
                          return b0 + b1 * cos(zv);
                      }};
        BeamCoefficients L = coeff_fields_from_factors(fp);
        BeamCoefficients Lhat = hat_coeff_fields(fp);
        ScalarField U = field_from_expr(parse("exp(z/2)*sin(z)+1"));
        for (double z : {-0.5, 0.1, 0.8}) {
            Jet Uj = U(z, 6);
            CHECK(std::abs(apply_Rstar(fp, apply_R(fp, Uj)).value() - apply_L(L, Uj).value()) <
                  1e-10);
            CHECK(std::abs(apply_R(fp, apply_Rstar(fp, Uj)).value() - apply_L(Lhat, Uj).value()) <
                  1e-10);
        }
    }
}

TEST_CASE("principal equation is the eliminant of the constraint system") {
    // For any smooth r and prescribed (A, B) = coeffs_from_factors(r, s(r, A)),
    // the residual vanishes identically.
    FactorPair fp = make_fp("sin(z)+0.3", "cos(z)-0.1");
    for (double z : {-1.0, -0.2, 0.4, 1.1}) {
        auto [A, B] = coeffs_from_factors(fp, z, 2);
        Jet r = fp.r(z, 3);
        CHECK(std::abs(principal_residual(r, A, B.value())) < 1e-10);
    }
}
