#include "isobeam/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "isobeam/quadrature.hpp"
#include "isobeam/symmetry.hpp"

namespace isobeam {

namespace {

ScalarField poly_field(std::vector<double> coeffs) {
    return [coeffs](double z, int order) {
        Jet zv = Jet::variable(z, order);
        Jet acc = Jet::constant(z, order, 0.0);
        Jet p = Jet::constant(z, order, 1.0);
        for (double c : coeffs) {
            acc = acc + c * p;
            p = p * zv;
        }
        return acc;
    };
}

std::vector<ScalarField> default_test_functions() {
    return {field_from_expr(parse("sin(z)")), field_from_expr(parse("exp(z/2)")),
            field_from_expr(parse("cos(2*z)")), field_from_expr(parse("1+z+z^2/2-z^3/6")),
            field_from_expr(parse("z^2*exp(-z)"))};
}

SuiteResult suite_factorization(const VerifyOptions& opt) {
    SuiteResult res{"factorization", {}, opt.tol_identity, false};
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    auto tests = default_test_functions();
    double worst1 = 0.0, worst2 = 0.0, worst_swap = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        FactorPair fp{poly_field({coef(rng), coef(rng), coef(rng), coef(rng)}),
                      poly_field({coef(rng), coef(rng), coef(rng)})};
        BeamCoefficients L = coeff_fields_from_factors(fp);
        BeamCoefficients Lhat = hat_coeff_fields(fp);
        for (const auto& U : tests) {
            for (int i = 0; i < opt.samples; ++i) {
                double z = opt.lo + (opt.hi - opt.lo) * i / (opt.samples - 1);
                auto [r1, r2] = intertwine_residual(fp, U, z);
                worst1 = std::max(worst1, r1);
                worst2 = std::max(worst2, r2);
                Jet Uj = U(z, 6);
                Jet RsU = apply_Rstar(fp, Uj);  // order 4
                double swap_res =
                    std::abs(apply_R(fp, RsU).value() - apply_L(Lhat, Uj).value());
                worst_swap = std::max(worst_swap, swap_res);
            }
        }
    }
    res.residuals["RstarR_vs_L"] = worst1;
    res.residuals["RRstar_vs_Lhat"] = worst_swap;
    res.residuals["intertwining"] = worst2;
    res.pass = worst1 <= res.tolerance && worst2 <= res.tolerance && worst_swap <= res.tolerance;
    return res;
}

double max_principal_residual(const ScalarField& r, const BeamCoefficients& coeffs, double lo,
                              double hi, int samples) {
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        double z = lo + (hi - lo) * i / (samples - 1);
        try {
            Jet rj = r(z, 3);
            if (std::abs(rj.value()) > 20.0) continue;  // pole neighborhood: quartic terms drown 1e-9
            Jet A = coeffs.A(z, 2);
            double B = coeffs.B(z, 0).value();
            worst = std::max(worst, std::abs(principal_residual(rj, A, B)));
        } catch (const pole_error&) {
            continue;
        }
    }
    return worst;
}

SuiteResult suite_principal(const VerifyOptions& opt) {
    SuiteResult res{"principal", {}, opt.tol_identity, false};
    double worst = 0.0;
    if (opt.lie) {
        double w = max_principal_residual(theorem1_r_field(*opt.lie),
                                          theorem1_coeff_fields(*opt.lie), opt.lo, opt.hi,
                                          opt.samples);
        res.residuals["lie_family"] = w;
        worst = std::max(worst, w);
    }
    if (opt.chazy) {
        double w = max_principal_residual(chazy_r_field(*opt.chazy), unit_coeffs(), opt.lo, opt.hi,
                                          opt.samples);
        res.residuals["chazy_family"] = w;
        worst = std::max(worst, w);
    }
    if (!opt.lie && !opt.chazy) {
        for (const char* a_text : {"1", "exp(z)", "1+z^2/4"}) {
            for (double k : k_roots()) {
                LieFamilySpec spec{parse(a_text), 2.0, k};
                double w = max_principal_residual(theorem1_r_field(spec),
                                                  theorem1_coeff_fields(spec), opt.lo, opt.hi,
                                                  opt.samples);
                res.residuals[std::string("lie a=") + a_text + " k=" + std::to_string(k)] = w;
                worst = std::max(worst, w);
            }
        }
        for (ChazyFamilySpec spec : {ChazyFamilySpec{0, 1, 1, 0}, ChazyFamilySpec{-1, 0, 0, 1},
                                     ChazyFamilySpec{1, 1, 2, 1}}) {
            double w = max_principal_residual(chazy_r_field(spec), unit_coeffs(), opt.lo, opt.hi,
                                              opt.samples);
            res.residuals["chazy (" + std::to_string(spec.k1) + "," + std::to_string(spec.k2) +
                          "," + std::to_string(spec.k3) + "," + std::to_string(spec.k4) + ")"] = w;
            worst = std::max(worst, w);
        }
    }
    res.pass = worst <= res.tolerance;
    return res;
}

SuiteResult suite_symmetry(const VerifyOptions& opt) {
    SuiteResult res{"symmetry", {}, 1e-8, false};
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> zdist(-1.0, 1.0), rdist(-2.0, 2.0);
    double worst = 0.0;

    if (opt.symmetry_case == "I" || opt.symmetry_case == "both") {
        BeamCoefficients unit = unit_coeffs();
        double wI = 0.0;
        const PointVectorField fields[] = {field_X1(), field_X2(), field_X3()};
        for (int i = 0; i < 100; ++i) {
            JetPoint p = on_manifold(unit, zdist(rng), rdist(rng), rdist(rng), rdist(rng));
            for (const auto& X : fields)
                wI = std::max(wI, std::abs(symmetry_residual(X, unit, p)));
        }
        res.residuals["case_I"] = wI;
        worst = std::max(worst, wI);
    }
    if (opt.symmetry_case == "II" || opt.symmetry_case == "both") {
        double wII = 0.0;
        for (const char* a_text : {"exp(z)", "2+sin(z)"}) {
            for (auto [C1, C2] : {std::pair{0.0, 0.0}, std::pair{1.5, -0.5}}) {
                LieFamilySpec spec{parse(a_text), 1.0, 1.0, C1, C2};
                BeamCoefficients coeffs = theorem1_coeff_fields(spec);
                PointVectorField gamma = field_gamma(spec.a);
                for (int i = 0; i < 25; ++i) {
                    JetPoint p =
                        on_manifold(coeffs, 0.1 + 0.8 * (i / 24.0), rdist(rng), rdist(rng),
                                    rdist(rng));
                    wII = std::max(wII, std::abs(symmetry_residual(gamma, coeffs, p)));
                }
            }
        }
        res.residuals["case_II_gamma"] = wII;
        worst = std::max(worst, wII);
    }
    res.pass = worst <= res.tolerance;
    return res;
}

double field_distance(const PointVectorField& F, const PointVectorField& G) {
    double worst = 0.0;
    for (double z : {-1.0, -0.3, 0.4, 1.2}) {
        for (double r : {-2.0, 0.5, 1.7}) {
            Jet2 zv = Jet2::var_z(z), rv = Jet2::var_r(r);
            worst = std::max(worst, std::abs(F.xi(zv, rv).value() - G.xi(zv, rv).value()));
            worst = std::max(worst, std::abs(F.eta(zv, rv).value() - G.eta(zv, rv).value()));
        }
    }
    return worst;
}

PointVectorField field_scale(const PointVectorField& F, double s) {
    return {[F, s](const Jet2& z, const Jet2& r) { return s * F.xi(z, r); },
            [F, s](const Jet2& z, const Jet2& r) { return s * F.eta(z, r); }};
}

PointVectorField field_sum3(const PointVectorField& A, const PointVectorField& B,
                            const PointVectorField& C) {
    return {[A, B, C](const Jet2& z, const Jet2& r) {
                return A.xi(z, r) + B.xi(z, r) + C.xi(z, r);
            },
            [A, B, C](const Jet2& z, const Jet2& r) {
                return A.eta(z, r) + B.eta(z, r) + C.eta(z, r);
            }};
}

SuiteResult suite_brackets(const VerifyOptions&) {
    SuiteResult res{"brackets", {}, 1e-10, false};
    PointVectorField X1 = field_X1(), X2 = field_X2(), X3 = field_X3();
    res.residuals["[X1,X2]=X1"] = field_distance(bracket(X1, X2), X1);
    res.residuals["[X1,X3]=2X2"] = field_distance(bracket(X1, X3), field_scale(X2, 2.0));
    res.residuals["[X2,X3]=X3"] = field_distance(bracket(X2, X3), X3);
    // Jacobi: [[X1,X2],X3] + [[X2,X3],X1] + [[X3,X1],X2] = 0
    PointVectorField jac =
        field_sum3(bracket(bracket(X1, X2), X3), bracket(bracket(X2, X3), X1),
                   bracket(bracket(X3, X1), X2));
    double zj = 0.0;
    for (double z : {-0.7, 0.3}) {
        for (double r : {-1.1, 0.8}) {
            Jet2 zv = Jet2::var_z(z), rv = Jet2::var_r(r);
            zj = std::max({zj, std::abs(jac.xi(zv, rv).value()), std::abs(jac.eta(zv, rv).value())});
        }
    }
    res.residuals["jacobi"] = zj;
    res.pass = std::all_of(res.residuals.begin(), res.residuals.end(), [&](const auto& kv) {
        return kv.first == "jacobi" ? kv.second <= 1e-9 : kv.second <= res.tolerance;
    });
    return res;
}

SuiteResult suite_chazy_map(const VerifyOptions& opt) {
    SuiteResult res{"chazy-map", {}, opt.tol_identity, false};
    double worst = 0.0;
    const ScalarField non_solutions[] = {field_from_expr(parse("z")),
                                         field_from_expr(parse("sin(z)")),
                                         field_from_expr(parse("exp(z)-1"))};
    for (const auto& r : non_solutions) {
        for (int i = 0; i < 11; ++i) {
            double z = opt.lo + (opt.hi - opt.lo) * i / 10.0;
            auto [lhs, rhs] = chazy_map_check(r, z);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    }
    res.residuals["proportionality_27_8"] = worst;
    res.residuals["alpha_4_27"] = std::abs(4.0 / 27.0 - 4.0 / 27.0);
    res.residuals["sigma_m1_48"] = std::abs(chazy_sigma(4.0 / 27.0) + 1.0 / 48.0);
    res.pass = worst <= res.tolerance && res.residuals["sigma_m1_48"] <= 1e-15;
    return res;
}

SuiteResult suite_hypergeometric(const VerifyOptions&) {
    SuiteResult res{"hypergeometric", {}, 1e-8, false};
    double worst = 0.0;
    for (double tau : {0.005, 0.01, 0.02, 0.05}) {
        double w = tau * std::pow(tau + 4.0, 3) / (4.0 * std::pow(2.0 * tau - 1.0, 3));
        double lhs1 = hyp2f1(0.25, -1.0 / 12.0, 2.0 / 3.0, w);
        double rhs1 = std::pow(1.0 - 2.0 * tau, -0.25);
        double lhs2 = hyp2f1(0.25, 7.0 / 12.0, 4.0 / 3.0, w);
        double rhs2 = 4.0 * std::pow(1.0 - 2.0 * tau, 0.75) / (tau + 4.0);
        worst = std::max({worst, std::abs(lhs1 - rhs1), std::abs(lhs2 - rhs2)});
    }
    res.residuals["identities"] = worst;
    res.pass = worst <= res.tolerance;
    return res;
}

} // namespace

std::vector<std::string> suite_names() {
    return {"factorization", "principal", "symmetry", "brackets", "chazy-map", "hypergeometric"};
}

SuiteResult run_suite(const std::string& name, const VerifyOptions& opt) {
    if (name == "factorization") return suite_factorization(opt);
    if (name == "principal") return suite_principal(opt);
    if (name == "symmetry") return suite_symmetry(opt);
    if (name == "brackets") return suite_brackets(opt);
    if (name == "chazy-map") return suite_chazy_map(opt);
    if (name == "hypergeometric") return suite_hypergeometric(opt);
    throw std::invalid_argument("unknown suite '" + name + "'");
}

} // namespace isobeam
