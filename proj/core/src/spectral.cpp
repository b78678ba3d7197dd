#include "isobeam/spectral.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "isobeam/quadrature.hpp"

namespace isobeam {

EndCondition end_condition_from_string(const std::string& s) {
    if (s == "hinged") return EndCondition::hinged;
    if (s == "clamped") return EndCondition::clamped;
    if (s == "free") return EndCondition::free_end;
    if (s == "sliding") return EndCondition::sliding;
    throw std::invalid_argument("unknown boundary condition '" + s + "'");
}

std::string to_string(EndCondition e) {
    switch (e) {
        case EndCondition::hinged: return "hinged";
        case EndCondition::clamped: return "clamped";
        case EndCondition::free_end: return "free";
        case EndCondition::sliding: return "sliding";
    }
    return "?";
}

namespace {

using Combo = std::map<int, double>;  // unknown index -> weight

Combo scaled(const Combo& c, double s) {
    Combo out;
    for (auto [k, v] : c) out[k] = v * s;
    return out;
}

void axpy(Combo& acc, const Combo& c, double s) {
    for (auto [k, v] : c) acc[k] += v * s;
}

} // namespace

DenseMatrix assemble(const BeamCoefficients& coeffs, BoundaryCondition bc, int n, double length,
                     double lo) {
    if (n < 32) throw contract_error("assemble: n >= 32 required");
    if (length <= 0.0) throw contract_error("assemble: length must be positive");
    double h = length / (n + 1);
    auto z_of = [&](int node) { return lo + node * h; };

    bool left_unknown = bc.left == EndCondition::free_end || bc.left == EndCondition::sliding;
    bool right_unknown = bc.right == EndCondition::free_end || bc.right == EndCondition::sliding;

    std::vector<int> unknowns;
    if (left_unknown) unknowns.push_back(0);
    for (int i = 1; i <= n; ++i) unknowns.push_back(i);
    if (right_unknown) unknowns.push_back(n + 1);
    int N = static_cast<int>(unknowns.size());

    // Node value -> linear combination of unknowns, ghosts eliminated.
    std::map<int, Combo> combo;
    for (int k = 0; k < N; ++k) combo[unknowns[k]] = Combo{{k, 1.0}};
    if (!left_unknown) combo[0] = Combo{};
    if (!right_unknown) combo[n + 1] = Combo{};

    auto left_ghosts = [&]() {
        switch (bc.left) {
            case EndCondition::hinged:
                combo[-1] = scaled(combo[1], -1.0);
                combo[-2] = scaled(combo[2], -1.0);
                break;
            case EndCondition::clamped:
                combo[-1] = combo[1];
                combo[-2] = combo[2];
                break;
            case EndCondition::sliding:
                combo[-1] = combo[1];
                combo[-2] = combo[2];
                break;
            case EndCondition::free_end: {
                double A0 = coeffs.A(z_of(0), 0).value();
                Combo g1;  // U(-h) = 2 U0 - U1
                axpy(g1, combo[0], 2.0);
                axpy(g1, combo[1], -1.0);
                combo[-1] = g1;
                Combo g2;  // U(-2h) = U2 - 2 U1 + 2 U(-h) + A0 h^2 (U1 - U(-h))
                axpy(g2, combo[2], 1.0);
                axpy(g2, combo[1], -2.0 + A0 * h * h);
                axpy(g2, g1, 2.0 - A0 * h * h);
                combo[-2] = g2;
                break;
            }
        }
    };
    auto right_ghosts = [&]() {
        switch (bc.right) {
            case EndCondition::hinged:
                combo[n + 2] = scaled(combo[n], -1.0);
                combo[n + 3] = scaled(combo[n - 1], -1.0);
                break;
            case EndCondition::clamped:
                combo[n + 2] = combo[n];
                combo[n + 3] = combo[n - 1];
                break;
            case EndCondition::sliding:
                combo[n + 2] = combo[n];
                combo[n + 3] = combo[n - 1];
                break;
            case EndCondition::free_end: {
                double Ab = coeffs.A(z_of(n + 1), 0).value();
                Combo g1;  // U(l+h) = 2 U_{n+1} - U_n
                axpy(g1, combo[n + 1], 2.0);
                axpy(g1, combo[n], -1.0);
                combo[n + 2] = g1;
                Combo g2;  // U(l+2h) = 2 U(l+h) - 2 U_n + U_{n-1} - Ab h^2 (U(l+h) - U_n)
                axpy(g2, g1, 2.0 - Ab * h * h);
                axpy(g2, combo[n], -2.0 + Ab * h * h);
                axpy(g2, combo[n - 1], 1.0);
                combo[n + 3] = g2;
                break;
            }
        }
    };
    left_ghosts();
    right_ghosts();

    DenseMatrix M(N);
    double ih4 = 1.0 / (h * h * h * h);
    double ih2 = 1.0 / (h * h);
    for (int row = 0; row < N; ++row) {
        int i = unknowns[row];
        double z = z_of(i);
        Jet A = coeffs.A(z, 1);
        double B0 = coeffs.B(z, 0).value();
        double A0 = A.coeff(0), A1 = A.coeff(1);

        Combo r;
        axpy(r, combo[i - 2], ih4);
        axpy(r, combo[i - 1], -4.0 * ih4 + A0 * ih2 - A1 / (2.0 * h));
        axpy(r, combo[i], 6.0 * ih4 - 2.0 * A0 * ih2 + B0);
        axpy(r, combo[i + 1], -4.0 * ih4 + A0 * ih2 + A1 / (2.0 * h));
        axpy(r, combo[i + 2], ih4);
        for (auto [col, v] : r) M(row, col) = v;
    }
    return M;
}

Spectrum spectrum(const DenseMatrix& matrix, int n_modes) {
    int N = matrix.size();
    if (n_modes > N) throw contract_error("spectrum: n_modes exceeds matrix size");
    DenseMatrix work = matrix;
    std::vector<double> wr(N), wi(N);
    lapack_int info = LAPACKE_dgeev(LAPACK_ROW_MAJOR, 'N', 'N', N, work.data(), N, wr.data(),
                                    wi.data(), nullptr, N, nullptr, N);
    if (info > 0)
        throw numerical_error("spectrum: QR iteration failed to converge (info=" +
                              std::to_string(info) + ")");
    if (info < 0) throw numerical_error("spectrum: bad argument to dgeev");

    Spectrum out;
    for (int i = 0; i < N; ++i)
        if (std::abs(wi[i]) > 1e-8 * std::max(std::abs(wr[i]), 1.0)) out.reality_warning = true;
    std::sort(wr.begin(), wr.end());
    out.eigenvalues.assign(wr.begin(), wr.begin() + n_modes);
    out.converged.assign(static_cast<std::size_t>(n_modes), false);
    out.grid_n = N;
    return out;
}

Spectrum compute_spectrum(const BeamCoefficients& coeffs, BoundaryCondition bc, int n,
                          double length, int n_modes, double lo, bool check_convergence) {
    Spectrum fine = spectrum(assemble(coeffs, bc, n, length, lo), n_modes);
    fine.bc = bc;
    fine.grid_n = n;
    fine.length = length;
    if (check_convergence && n / 2 >= 32) {
        Spectrum coarse = spectrum(assemble(coeffs, bc, n / 2, length, lo), n_modes);
        for (int i = 0; i < n_modes; ++i) {
            double f = fine.eigenvalues[i], c = coarse.eigenvalues[i];
            fine.converged[i] = std::abs(f - c) <= 1e-3 * std::max(std::abs(f), 1e-300);
        }
    }
    return fine;
}

IsospecReport isospec_report(const FactorPair& fp, BoundaryCondition bc, int n, double length,
                             int n_modes, double lo) {
    IsospecReport rep;
    rep.spec_L = compute_spectrum(coeff_fields_from_factors(fp), bc, n, length, n_modes, lo);
    rep.spec_Lhat = compute_spectrum(hat_coeff_fields(fp), bc, n, length, n_modes, lo);
    for (int i = 0; i < n_modes; ++i) {
        double a = rep.spec_L.eigenvalues[i], b = rep.spec_Lhat.eigenvalues[i];
        rep.relative_gaps.push_back(std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}));
    }
    std::vector<ScalarField> tests = {field_from_expr(parse("sin(z)")),
                                      field_from_expr(parse("exp(z/2)")),
                                      field_from_expr(parse("1+z+z^2/2-z^3/6"))};
    for (int i = 0; i <= 20; ++i) {
        double z = lo + length * i / 20.0;
        for (const auto& U : tests) {
            auto [r1, r2] = intertwine_residual(fp, U, z);
            rep.max_intertwine_residual = std::max({rep.max_intertwine_residual, r1, r2});
        }
    }
    return rep;
}

std::pair<double, double> barcilon_map(const PhysicalBeam& beam, double x) {
    auto f_of = [&](double t) { return eval_value(*beam.f, t); };
    auto m_of = [&](double t) { return eval_value(*beam.m, t); };
    auto check = [](double v, const char* name) {
        if (v <= 0.0) throw std::domain_error(std::string("barcilon_map: ") + name + " must be positive");
        return v;
    };
    double z = quadrature(
        [&](double t) { return std::pow(check(m_of(t), "m") / check(f_of(t), "f"), 0.25); }, 0.0, x,
        1e-12);
    double fx = check(f_of(x), "f"), mx = check(m_of(x), "m");
    double factor = std::pow(mx * mx * mx * fx, -0.125);
    return {z, factor};
}

} // namespace isobeam
