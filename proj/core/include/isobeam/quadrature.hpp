#pragma once

#include <functional>
#include <stdexcept>

namespace isobeam {

class quadrature_error : public std::runtime_error {
public:
    quadrature_error(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_error(achieved) {}
    double achieved_error;
};

/// Adaptive Simpson with embedded error estimate; absolute error <= tol.
double quadrature(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-12);

} // namespace isobeam
