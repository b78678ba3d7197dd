#pragma once

#include <string>
#include <vector>

#include "isobeam/expr.hpp"
#include "isobeam/factorization.hpp"

namespace isobeam {

class numerical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class EndCondition { hinged, clamped, free_end, sliding };

EndCondition end_condition_from_string(const std::string& s);
std::string to_string(EndCondition e);

/// Conditions in canonical coordinates:
///   hinged:  U = 0,  U'' = 0
///   clamped: U = 0,  U'  = 0
///   free:    U'' = 0, U''' + A U' = 0
///   sliding: U' = 0,  U''' + A U' = 0
struct BoundaryCondition {
    EndCondition left = EndCondition::hinged;
    EndCondition right = EndCondition::hinged;
};

/// Dense square matrix, row-major.
class DenseMatrix {
public:
    DenseMatrix(int n = 0) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {}
    int size() const { return n_; }
    double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    double* data() { return a_.data(); }
    const double* data() const { return a_.data(); }

private:
    int n_;
    std::vector<double> a_;
};

/// Second-order central-difference discretization of L on the interior of
/// [lo, lo + length] with n interior points (h = length/(n+1)); boundary
/// rows realized by ghost-point elimination.  free/sliding ends keep the
/// boundary node as an unknown.
DenseMatrix assemble(const BeamCoefficients& coeffs, BoundaryCondition bc, int n, double length,
                     double lo = 0.0);

struct Spectrum {
    std::vector<double> eigenvalues;   // sorted ascending, lambda = omega^2
    std::vector<bool> converged;       // set by grid-doubling comparison
    BoundaryCondition bc;
    int grid_n = 0;
    double length = 0.0;
    bool reality_warning = false;      // complex pair with |imag| > 1e-8 |real|
};

/// The n_modes algebraically smallest real eigenvalues of the matrix.
/// Convergence flags are left unset here.
Spectrum spectrum(const DenseMatrix& matrix, int n_modes);

/// Assembles and solves at grid n, flags convergence against grid n/2
/// (relative 1e-3 per mode).
Spectrum compute_spectrum(const BeamCoefficients& coeffs, BoundaryCondition bc, int n,
                          double length, int n_modes, double lo = 0.0,
                          bool check_convergence = true);

struct IsospecReport {
    Spectrum spec_L;
    Spectrum spec_Lhat;
    std::vector<double> relative_gaps;   // per mode
    double max_intertwine_residual = 0.0;
};

/// Side-by-side spectra of L (coeffs_from_factors) and Lhat (hat_coeffs)
/// under the same boundary conditions, plus the analytic intertwining
/// residual maximized over sample points and test functions.  Equality of
/// the spectra is reported, never asserted.
IsospecReport isospec_report(const FactorPair& fp, BoundaryCondition bc, int n, double length,
                             int n_modes, double lo = 0.0);

struct PhysicalBeam {
    ExprPtr f;  // flexural rigidity E I
    ExprPtr m;  // linear mass density rho alpha
    double length = 1.0;
};

/// Coordinate map z = Int_0^x (m/f)^{1/4} and amplitude factor (m^3 f)^{-1/8}.
std::pair<double, double> barcilon_map(const PhysicalBeam& beam, double x);

} // namespace isobeam
