#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace isobeam {

/// Contract violations: mismatched orders/base points, insufficient order.
class contract_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Evaluation outside a function's domain (log of non-positive value,
/// division by a jet whose value is zero, ...).
class singular_point_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Truncated Taylor expansion of a scalar function at a point.
///
/// coeff(k) stores the raw k-th derivative f^(k)(z0), not the Taylor
/// coefficient f^(k)(z0)/k!.  This matches the way derivative symbols
/// appear in the residual formulas; the factorial bookkeeping is confined
/// to multiplication and composition.
class Jet {
public:
    Jet(double base_point, int order)
        : base_(base_point), c_(static_cast<std::size_t>(check_order(order)) + 1, 0.0) {}

    static Jet constant(double base_point, int order, double value) {
        Jet j(base_point, order);
        j.c_[0] = value;
        return j;
    }

    /// The identity function z at base_point: [z0, 1, 0, ...].
    static Jet variable(double base_point, int order) {
        Jet j(base_point, order);
        j.c_[0] = base_point;
        if (order >= 1) j.c_[1] = 1.0;
        return j;
    }

    double base_point() const { return base_; }
    int order() const { return static_cast<int>(c_.size()) - 1; }

    double coeff(int k) const { return c_.at(static_cast<std::size_t>(k)); }
    double& coeff(int k) { return c_.at(static_cast<std::size_t>(k)); }
    double value() const { return c_[0]; }

    /// Jet of the derivative function, order reduced by one.
    Jet derivative() const {
        if (order() < 1) throw contract_error("jet derivative: order 0 input");
        Jet r(base_, order() - 1);
        for (int k = 0; k <= r.order(); ++k) r.c_[static_cast<std::size_t>(k)] = c_[static_cast<std::size_t>(k) + 1];
        return r;
    }

    Jet truncated(int new_order) const {
        if (new_order > order()) throw contract_error("jet truncate: cannot raise order");
        Jet r(base_, new_order);
        for (int k = 0; k <= new_order; ++k) r.c_[static_cast<std::size_t>(k)] = c_[static_cast<std::size_t>(k)];
        return r;
    }

    Jet operator-() const {
        Jet r = *this;
        for (double& v : r.c_) v = -v;
        return r;
    }

    friend Jet operator+(const Jet& x, const Jet& y) {
        check_compatible(x, y, "add");
        Jet r = x;
        for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] += y.c_[k];
        return r;
    }

    friend Jet operator-(const Jet& x, const Jet& y) {
        check_compatible(x, y, "sub");
        Jet r = x;
        for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] -= y.c_[k];
        return r;
    }

    // Leibniz rule on raw derivatives.
    friend Jet operator*(const Jet& x, const Jet& y) {
        check_compatible(x, y, "mul");
        Jet r(x.base_, x.order());
        for (int k = 0; k <= x.order(); ++k) {
            double acc = 0.0;
            for (int j = 0; j <= k; ++j)
                acc += binom(k, j) * x.c_[static_cast<std::size_t>(j)] * y.c_[static_cast<std::size_t>(k - j)];
            r.c_[static_cast<std::size_t>(k)] = acc;
        }
        return r;
    }

    // Solves the triangular system x = y * h for h.
    friend Jet operator/(const Jet& x, const Jet& y) {
        check_compatible(x, y, "div");
        if (y.c_[0] == 0.0) throw singular_point_error("jet div: division by jet with zero value");
        Jet h(x.base_, x.order());
        for (int k = 0; k <= x.order(); ++k) {
            double acc = x.c_[static_cast<std::size_t>(k)];
            for (int j = 1; j <= k; ++j)
                acc -= binom(k, j) * y.c_[static_cast<std::size_t>(j)] * h.c_[static_cast<std::size_t>(k - j)];
            h.c_[static_cast<std::size_t>(k)] = acc / y.c_[0];
        }
        return h;
    }

    friend Jet operator*(double a, const Jet& x) {
        Jet r = x;
        for (double& v : r.c_) v *= a;
        return r;
    }
    friend Jet operator*(const Jet& x, double a) { return a * x; }
    friend Jet operator/(const Jet& x, double a) { return (1.0 / a) * x; }
    friend Jet operator+(const Jet& x, double a) {
        Jet r = x;
        r.c_[0] += a;
        return r;
    }
    friend Jet operator+(double a, const Jet& x) { return x + a; }
    friend Jet operator-(const Jet& x, double a) { return x + (-a); }
    friend Jet operator-(double a, const Jet& x) { return (-x) + a; }

    /// Taylor coefficients f^(k)/k!.
    std::vector<double> taylor() const {
        std::vector<double> t(c_.size());
        double fact = 1.0;
        for (std::size_t k = 0; k < c_.size(); ++k) {
            if (k > 0) fact *= static_cast<double>(k);
            t[k] = c_[k] / fact;
        }
        return t;
    }

    static Jet from_taylor(double base_point, const std::vector<double>& t) {
        Jet j(base_point, static_cast<int>(t.size()) - 1);
        double fact = 1.0;
        for (std::size_t k = 0; k < t.size(); ++k) {
            if (k > 0) fact *= static_cast<double>(k);
            j.c_[k] = t[k] * fact;
        }
        return j;
    }

private:
    static int check_order(int order) {
        if (order < 0) throw contract_error("jet: negative order");
        return order;
    }

    static void check_compatible(const Jet& x, const Jet& y, const char* what) {
        if (x.order() != y.order())
            throw contract_error(std::string("jet ") + what + ": order mismatch");
        if (x.base_ != y.base_)
            throw contract_error(std::string("jet ") + what + ": base point mismatch");
    }

    static double binom(int n, int k) {
        double b = 1.0;
        for (int i = 1; i <= k; ++i) b = b * static_cast<double>(n - k + i) / static_cast<double>(i);
        return b;
    }

    double base_;
    std::vector<double> c_;
};

namespace detail {

// Power-series composition recurrences on Taylor coefficients.  u is the
// argument's Taylor vector; g the result's.

inline std::vector<double> taylor_exp(const std::vector<double>& u) {
    std::vector<double> g(u.size());
    g[0] = std::exp(u[0]);
    for (std::size_t k = 1; k < u.size(); ++k) {
        double acc = 0.0;
        for (std::size_t j = 1; j <= k; ++j) acc += static_cast<double>(j) * u[j] * g[k - j];
        g[k] = acc / static_cast<double>(k);
    }
    return g;
}

inline std::vector<double> taylor_log(const std::vector<double>& u) {
    if (u[0] <= 0.0) throw singular_point_error("jet log: argument value not positive");
    std::vector<double> g(u.size());
    g[0] = std::log(u[0]);
    for (std::size_t k = 1; k < u.size(); ++k) {
        double acc = static_cast<double>(k) * u[k];
        for (std::size_t j = 1; j < k; ++j) acc -= static_cast<double>(j) * g[j] * u[k - j];
        g[k] = acc / (static_cast<double>(k) * u[0]);
    }
    return g;
}

// v = u^p with p constant, u0 > 0: k u0 v_k = sum_{j=1..k} ((p+1)j - k) u_j v_{k-j}.
inline std::vector<double> taylor_pow(const std::vector<double>& u, double p) {
    if (u[0] <= 0.0) throw singular_point_error("jet pow: base value not positive");
    std::vector<double> g(u.size());
    g[0] = std::pow(u[0], p);
    for (std::size_t k = 1; k < u.size(); ++k) {
        double acc = 0.0;
        for (std::size_t j = 1; j <= k; ++j)
            acc += ((p + 1.0) * static_cast<double>(j) - static_cast<double>(k)) * u[j] * g[k - j];
        g[k] = acc / (static_cast<double>(k) * u[0]);
    }
    return g;
}

inline void taylor_sincos(const std::vector<double>& u, std::vector<double>& s, std::vector<double>& c) {
    s.assign(u.size(), 0.0);
    c.assign(u.size(), 0.0);
    s[0] = std::sin(u[0]);
    c[0] = std::cos(u[0]);
    for (std::size_t k = 1; k < u.size(); ++k) {
        double as = 0.0, ac = 0.0;
        for (std::size_t j = 1; j <= k; ++j) {
            as += static_cast<double>(j) * u[j] * c[k - j];
            ac += static_cast<double>(j) * u[j] * s[k - j];
        }
        s[k] = as / static_cast<double>(k);
        c[k] = -ac / static_cast<double>(k);
    }
}

} // namespace detail

inline Jet exp(const Jet& x) { return Jet::from_taylor(x.base_point(), detail::taylor_exp(x.taylor())); }
inline Jet log(const Jet& x) { return Jet::from_taylor(x.base_point(), detail::taylor_log(x.taylor())); }

inline Jet sin(const Jet& x) {
    std::vector<double> s, c;
    detail::taylor_sincos(x.taylor(), s, c);
    return Jet::from_taylor(x.base_point(), s);
}

inline Jet cos(const Jet& x) {
    std::vector<double> s, c;
    detail::taylor_sincos(x.taylor(), s, c);
    return Jet::from_taylor(x.base_point(), c);
}

/// x^p for constant p.  Integer p works for any nonzero base (repeated
/// multiplication); fractional p requires a positive base value.
inline Jet pow(const Jet& x, double p) {
    double pr = std::round(p);
    if (pr == p && std::abs(p) <= 64.0) {
        int n = static_cast<int>(pr);
        Jet acc = Jet::constant(x.base_point(), x.order(), 1.0);
        for (int i = 0; i < std::abs(n); ++i) acc = acc * x;
        if (n < 0) acc = Jet::constant(x.base_point(), x.order(), 1.0) / acc;
        return acc;
    }
    return Jet::from_taylor(x.base_point(), detail::taylor_pow(x.taylor(), p));
}

inline Jet sqrt(const Jet& x) {
    if (x.value() < 0.0) throw singular_point_error("jet sqrt: negative argument value");
    return pow(x, 0.5);
}

} // namespace isobeam
