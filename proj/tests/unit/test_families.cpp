#include <doctest.h>

#include <cmath>

#include "isobeam/families.hpp"
#include "isobeam/quadrature.hpp"

using namespace isobeam;

TEST_CASE("k_roots returns the exact rationals and they satisfy the cubic") {
    auto roots = k_roots();
    CHECK(roots[0] == doctest::Approx(0.25));
    CHECK(roots[1] == doctest::Approx(1.0 / 3.0));
    CHECK(roots[2] == doctest::Approx(1.0));
    for (double k : roots) CHECK(std::abs(k_cubic(k)) < 1e-14);
    CHECK(k_cubic(1.0) == doctest::Approx(0.0));
    CHECK(k_cubic(0.25) == doctest::Approx(0.0));
    CHECK(std::abs(k_cubic(0.5)) > 1e-3);
}

TEST_CASE("quadrature") {
    CHECK(quadrature([](double) { return 1.0; }, 0.0, 1.0, 1e-10) == doctest::Approx(1.0));
    CHECK(quadrature([](double z) { return std::exp(-z); }, 0.0, 1.0, 1e-10) ==
          doctest::Approx(1.0 - std::exp(-1.0)));
    CHECK(quadrature([](double z) { return z * z; }, 0.0, 1.0, 1e-10) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("theorem1_coeffs examples") {
    LieFamilySpec unit{parse("1"), 1.0, 1.0};
    auto [A1, B1] = theorem1_coeffs(unit, 0.4);
    CHECK(A1.value() == doctest::Approx(0.0));
    CHECK(B1.value() == doctest::Approx(0.0));

    LieFamilySpec expz{parse("exp(z)"), 1.0, 1.0};
    auto [A2, B2] = theorem1_coeffs(expz, 0.7);
    CHECK(A2.value() == doctest::Approx(-2.5));
    CHECK(B2.value() == doctest::Approx(9.0 / 16.0));
    CHECK(A2.coeff(1) == doctest::Approx(0.0));

    LieFamilySpec c1{parse("1"), 1.0, 1.0, 2.0, 0.0};
    auto [A3, B3] = theorem1_coeffs(c1, 0.0);
    CHECK(A3.value() == doctest::Approx(2.0));
    CHECK(B3.value() == doctest::Approx(1.0));

    LieFamilySpec bad{parse("z"), 1.0, 1.0};
    CHECK_THROWS_AS(theorem1_coeffs(bad, 0.0), family_error);
}

TEST_CASE("theorem1_r examples") {
    LieFamilySpec a1{parse("1"), 1.0, 1.0};
    for (double z : {0.0, 0.3, 0.6}) {
        Jet r = theorem1_r(a1, z);
        CHECK(r.value() == doctest::Approx(1.0 / (1.0 - z)));
    }

    LieFamilySpec quarter{parse("1"), 1.0, 0.25};
    CHECK(theorem1_r(quarter, 0.0).value() == doctest::Approx(1.0));

    LieFamilySpec ez{parse("exp(z)"), 2.0, 1.0};
    CHECK(theorem1_r(ez, 0.0).value() == doctest::Approx(-1.5));

    LieFamilySpec pole{parse("1"), 0.5, 1.0};
    CHECK_THROWS_AS(theorem1_r(pole, 0.5), pole_error);
}

TEST_CASE("Bernoulli check: w solves w' + (a'/a) w = k w^2") {
    for (const char* a_text : {"1", "exp(z)", "1+z^2/4"}) {
        LieFamilySpec spec{parse(a_text), 2.0, 1.0 / 3.0};
        for (double z : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            Jet a = eval_jet(*spec.a, z, 2);
            Jet r = theorem1_r(spec, z, 1);
            // w = r + 2a'/a
            Jet w = r + 2.0 * a.derivative().truncated(1) / a.truncated(1);
            double res = w.coeff(1) + a.coeff(1) / a.coeff(0) * w.value() -
                         spec.k * w.value() * w.value();
            CHECK(std::abs(res) < 1e-10);
        }
    }
}

TEST_CASE("reduced-equation invariant v = k u^2 along theorem1_r solutions") {
    for (const char* a_text : {"1", "exp(z)", "1+z^2/4"}) {
        for (double k : k_roots()) {
            LieFamilySpec spec{parse(a_text), 2.0, k};
            for (double z : {0.0, 0.5, 1.0}) {
                Jet a = eval_jet(*spec.a, z, 2);
                Jet r = theorem1_r(spec, z, 1);
                double a0 = a.coeff(0), a1 = a.coeff(1), a2 = a.coeff(2);
                double u = a0 * r.value() + 2.0 * a1;
                double v = a0 * a0 * r.coeff(1) + a0 * a1 * r.value() + 2.0 * a0 * a2;
                CHECK(std::abs(v - k * u * u) < 1e-9);
            }
        }
    }
}

TEST_CASE("chazy family: determinant constraint enforced") {
    ChazyFamilySpec bad{1, 1, 1, 1};
    CHECK_THROWS_AS(bad.validate(), family_error);
}

TEST_CASE("chazy_r examples") {
    ChazyFamilySpec spec{0, 1, 1, 0};
    for (double z : {0.2, 0.9, 1.5}) {
        Jet r = chazy_r(spec, z);
        CHECK(r.value() == doctest::Approx(-81.0 * z * z / (27.0 * z * z * z - 4.0)));
    }
    CHECK(chazy_r(spec, 0.0).value() == doctest::Approx(0.0));

    ChazyFamilySpec spec2{-1, 0, 0, 1};
    CHECK(chazy_r(spec2, 1.0).value() == doctest::Approx(-124.0 / 43.0));

    CHECK_THROWS_AS(chazy_r(spec, std::cbrt(4.0 / 27.0)), pole_error);
}

TEST_CASE("chazy_parametric examples and closed-form consistency") {
    ChazyFamilySpec spec{0, 1, 1, 0};
    auto [x1, y1] = chazy_parametric(spec, 1.0);
    CHECK(x1 == doctest::Approx(1.0));
    CHECK(y1 == doctest::Approx(-9.0));

    auto [x0, y0] = chazy_parametric(spec, 1e-9);
    CHECK(x0 == doctest::Approx(0.0).epsilon(1e-2));
    CHECK(y0 == doctest::Approx(0.0).epsilon(1e-2));

    CHECK_THROWS_AS(chazy_parametric(spec, 0.5), family_error);

    for (const ChazyFamilySpec& s :
         {ChazyFamilySpec{0, 1, 1, 0}, ChazyFamilySpec{-1, 0, 0, 1}, ChazyFamilySpec{1, 1, 2, 1}}) {
        for (double tau : {0.05, 0.3, 0.8, 2.0}) {
            auto [x, y] = chazy_parametric(s, tau);
            CHECK(y == doctest::Approx(chazy_y_closed(s, x)).epsilon(1e-9));
            // chazy_r through the map z = (2/3) x
            double z = 2.0 / 3.0 * x;
            CHECK(chazy_r(s, z).value() == doctest::Approx(y).epsilon(1e-9));
        }
    }
}

TEST_CASE("hyp2f1 basics") {
    CHECK(hyp2f1(0.3, 1.7, 2.2, 0.0) == doctest::Approx(1.0));
    // 2F1(1,1;2;x) = -log(1-x)/x
    CHECK(hyp2f1(1.0, 1.0, 2.0, 0.5) == doctest::Approx(-std::log(0.5) / 0.5));
    CHECK(hyp2f1(1.0, 1.0, 2.0, -0.75) == doctest::Approx(-std::log(1.75) / -0.75));
    CHECK_THROWS_AS(hyp2f1(1.0, 1.0, 2.0, 1.0), family_error);
    CHECK_THROWS_AS(hyp2f1(1.0, 1.0, -2.0, 0.5), family_error);
}

TEST_CASE("hypergeometric identities along the Chazy parametrization") {
    for (double tau : {0.005, 0.01, 0.02, 0.05}) {
        double w = tau * std::pow(tau + 4.0, 3) / (4.0 * std::pow(2.0 * tau - 1.0, 3));
        CHECK(hyp2f1(0.25, -1.0 / 12.0, 2.0 / 3.0, w) ==
              doctest::Approx(std::pow(1.0 - 2.0 * tau, -0.25)).epsilon(1e-9));
        CHECK(hyp2f1(0.25, 7.0 / 12.0, 4.0 / 3.0, w) ==
              doctest::Approx(4.0 * std::pow(1.0 - 2.0 * tau, 0.75) / (tau + 4.0)).epsilon(1e-9));
    }
}

TEST_CASE("sigma arithmetic: alpha = 4/27 gives sigma = -1/48") {
    CHECK(chazy_sigma(4.0 / 27.0) == doctest::Approx(-1.0 / 48.0));
}

TEST_CASE("families satisfy the principal equation") {
    for (const char* a_text : {"1", "exp(z)", "1+z^2/4"}) {
        for (double k : k_roots()) {
            LieFamilySpec spec{parse(a_text), 2.0, k};
            BeamCoefficients coeffs = theorem1_coeff_fields(spec);
            for (int i = 0; i <= 20; ++i) {
                double z = i / 20.0;
                Jet r = theorem1_r(spec, z);
                Jet A = coeffs.A(z, 2);
                double B = coeffs.B(z, 0).value();
                CHECK(std::abs(principal_residual(r, A, B)) < 1e-9);
            }
        }
    }
}

TEST_CASE("chazy family satisfies the principal equation with A=B=0") {
    for (const ChazyFamilySpec& s :
         {ChazyFamilySpec{0, 1, 1, 0}, ChazyFamilySpec{-1, 0, 0, 1}, ChazyFamilySpec{1, 1, 2, 1}}) {
        for (int i = 0; i <= 40; ++i) {
            double z = i / 40.0;
            try {
                Jet r = chazy_r(s, z);
                if (std::abs(r.value()) > 20.0) continue;
                Jet A = Jet::constant(z, 2, 0.0);
                CHECK(std::abs(principal_residual(r, A, 0.0)) < 1e-9);
            } catch (const pole_error&) {
                continue;
            }
        }
    }
}

TEST_CASE("scan_zeros finds the pole bracket of the lie denominator") {
    // C - k Q(z) with a=1, C=0.5, k=1: zero at z=0.5
    auto hits = scan_zeros([](double z) { return 0.5 - z; }, 0.0, 1.0, 64);
    REQUIRE(!hits.empty());
    CHECK(hits[0].first <= 0.5);
    CHECK(hits[0].second >= 0.5);
}
