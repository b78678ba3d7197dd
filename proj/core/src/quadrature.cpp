#include "isobeam/quadrature.hpp"

#include <cmath>
#include <string>

namespace isobeam {

namespace {

struct Budget {
    int evals_left;
    double worst = 0.0;
};

double simpson(double fa, double fm, double fb, double h) { return h / 6.0 * (fa + 4.0 * fm + fb); }

double adapt(const std::function<double(double)>& f, double a, double b, double fa, double fm,
             double fb, double whole, double tol, Budget& budget, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    budget.evals_left -= 2;
    double left = simpson(fa, flm, fm, m - a);
    double right = simpson(fm, frm, fb, b - m);
    double err = (left + right - whole) / 15.0;
    if (std::abs(err) <= tol || depth >= 48 || budget.evals_left <= 0) {
        if (std::abs(err) > budget.worst) budget.worst = std::abs(err);
        if (std::abs(err) > tol && (depth >= 48 || budget.evals_left <= 0))
            throw quadrature_error("quadrature: error budget exhausted, achieved " +
                                       std::to_string(std::abs(err)),
                                   std::abs(err));
        return left + right + err;
    }
    return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, budget, depth + 1) +
           adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, budget, depth + 1);
}

} // namespace

double quadrature(const std::function<double(double)>& f, double lo, double hi, double tol) {
    if (tol <= 0.0) throw quadrature_error("quadrature: tol must be positive", 0.0);
    if (lo == hi) return 0.0;
    double sign = 1.0;
    if (lo > hi) {
        std::swap(lo, hi);
        sign = -1.0;
    }
    Budget budget{200000};
    double m = 0.5 * (lo + hi);
    double fa = f(lo), fm = f(m), fb = f(hi);
    double whole = simpson(fa, fm, fb, hi - lo);
    return sign * adapt(f, lo, hi, fa, fm, fb, whole, tol, budget, 0);
}

} // namespace isobeam
