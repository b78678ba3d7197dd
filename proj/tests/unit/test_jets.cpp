#include <doctest.h>

#include <random>

#include "isobeam/jet.hpp"

using namespace isobeam;

namespace {

// Independent oracle: evaluate a polynomial's k-th derivative directly from
// its coefficient list.
Jet poly_jet(const std::vector<double>& coeffs, double z0, int order) {
    Jet j(z0, order);
    for (int k = 0; k <= order; ++k) {
        double acc = 0.0;
        for (std::size_t n = k; n < coeffs.size(); ++n) {
            double fall = 1.0;
            for (int i = 0; i < k; ++i) fall *= static_cast<double>(n - i);
            acc += coeffs[n] * fall * std::pow(z0, static_cast<double>(n - k));
        }
        j.coeff(k) = acc;
    }
    return j;
}

std::vector<double> poly_mul(const std::vector<double>& p, const std::vector<double>& q) {
    std::vector<double> out(p.size() + q.size() - 1, 0.0);
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j) out[i + j] += p[i] * q[j];
    return out;
}

} // namespace

TEST_CASE("jet mul of (1+z) and (1-z) at 0") {
    Jet a = poly_jet({1, 1}, 0.0, 2);
    Jet b = poly_jet({1, -1}, 0.0, 2);
    Jet p = a * b;
    CHECK(p.coeff(0) == doctest::Approx(1.0));
    CHECK(p.coeff(1) == doctest::Approx(0.0));
    CHECK(p.coeff(2) == doctest::Approx(-2.0));
}

TEST_CASE("jet add with zero jet is identity") {
    Jet x = poly_jet({0.3, -1.2, 0.7}, 0.5, 4);
    Jet z(0.5, 4);
    Jet s = x + z;
    for (int k = 0; k <= 4; ++k) CHECK(s.coeff(k) == x.coeff(k));
}

TEST_CASE("jet div: 1/(1-z) at 0 gives geometric-series derivatives") {
    Jet one = Jet::constant(0.0, 3, 1.0);
    Jet q = one / poly_jet({1, -1}, 0.0, 3);
    CHECK(q.coeff(0) == doctest::Approx(1.0));
    CHECK(q.coeff(1) == doctest::Approx(1.0));
    CHECK(q.coeff(2) == doctest::Approx(2.0));
    CHECK(q.coeff(3) == doctest::Approx(6.0));
}

TEST_CASE("jet div by zero-valued jet throws") {
    Jet one = Jet::constant(0.0, 2, 1.0);
    Jet z = Jet::variable(0.0, 2);
    CHECK_THROWS_AS(one / z, singular_point_error);
}

TEST_CASE("mismatched base point / order are contract violations") {
    Jet a(0.0, 3), b(1.0, 3), c(0.0, 2);
    CHECK_THROWS_AS(a + b, contract_error);
    CHECK_THROWS_AS(a * c, contract_error);
}

TEST_CASE("exp of identity jet at 0") {
    Jet e = exp(Jet::variable(0.0, 3));
    for (int k = 0; k <= 3; ++k) CHECK(e.coeff(k) == doctest::Approx(1.0));
}

TEST_CASE("exp of zero jet") {
    Jet e = exp(Jet(0.0, 3));
    CHECK(e.coeff(0) == doctest::Approx(1.0));
    CHECK(e.coeff(1) == doctest::Approx(0.0));
    CHECK(e.coeff(3) == doctest::Approx(0.0));
}

TEST_CASE("sin of identity jet at 0") {
    Jet s = sin(Jet::variable(0.0, 3));
    CHECK(s.coeff(0) == doctest::Approx(0.0));
    CHECK(s.coeff(1) == doctest::Approx(1.0));
    CHECK(s.coeff(2) == doctest::Approx(0.0));
    CHECK(s.coeff(3) == doctest::Approx(-1.0));
}

TEST_CASE("pow 1/3 of (8+z) at 0") {
    Jet p = pow(poly_jet({8, 1}, 0.0, 1), 1.0 / 3.0);
    CHECK(p.coeff(0) == doctest::Approx(2.0));
    CHECK(p.coeff(1) == doctest::Approx(1.0 / 12.0));
}

TEST_CASE("log requires positive argument") {
    CHECK_THROWS_AS(log(Jet::constant(0.0, 2, -1.0)), singular_point_error);
}

TEST_CASE("shift derivative") {
    Jet z2 = poly_jet({0, 0, 1}, 0.0, 3);
    Jet d = z2.derivative();
    CHECK(d.order() == 2);
    CHECK(d.coeff(0) == doctest::Approx(0.0));
    CHECK(d.coeff(1) == doctest::Approx(2.0));
    CHECK(d.coeff(2) == doctest::Approx(0.0));

    Jet c = Jet::constant(0.0, 2, 3.5);
    Jet dc = c.derivative();
    CHECK(dc.coeff(0) == 0.0);
    CHECK(dc.coeff(1) == 0.0);

    Jet s = sin(Jet::variable(0.0, 4)).derivative();
    CHECK(s.coeff(0) == doctest::Approx(1.0));
    CHECK(s.coeff(1) == doctest::Approx(0.0));
    CHECK(s.coeff(2) == doctest::Approx(-1.0));

    CHECK_THROWS_AS(Jet(0.0, 0).derivative(), contract_error);
}

TEST_CASE("property: jet_mul matches polynomial product") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> coef(-2.0, 2.0), base(-1.5, 1.5);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> p(5), q(5);
        for (auto& c : p) c = coef(rng);
        for (auto& c : q) c = coef(rng);
        double z0 = base(rng);
        Jet prod = poly_jet(p, z0, 6) * poly_jet(q, z0, 6);
        Jet expect = poly_jet(poly_mul(p, q), z0, 6);
        for (int k = 0; k <= 6; ++k)
            CHECK(prod.coeff(k) ==
                  doctest::Approx(expect.coeff(k)).epsilon(1e-12).scale(std::abs(expect.coeff(k)) + 1.0));
    }
}

TEST_CASE("property: div undoes mul") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> p(4), q(4);
        for (auto& c : p) c = coef(rng);
        for (auto& c : q) c = coef(rng);
        Jet x = poly_jet(p, 0.3, 6), y = poly_jet(q, 0.3, 6);
        if (std::abs(y.value()) < 0.5) {
            q[0] += 1.0;
            y = poly_jet(q, 0.3, 6);
        }
        Jet back = (x * y) / y;
        for (int k = 0; k <= 6; ++k)
            CHECK(back.coeff(k) ==
                  doctest::Approx(x.coeff(k)).epsilon(1e-8).scale(std::abs(x.coeff(k)) + 1.0));
    }
}

TEST_CASE("shift of exp jet equals truncated exp jet") {
    Jet e = exp(Jet::variable(0.4, 6));
    Jet d = e.derivative();
    for (int k = 0; k <= 5; ++k) CHECK(d.coeff(k) == doctest::Approx(e.coeff(k)));
}
