#pragma once

#include <array>
#include <cmath>

#include "keglue/params.hpp"

namespace keglue {

/// Truncated Taylor series of a scalar function of one real variable,
/// kept to fourth order.  c[k] is the k-th Taylor coefficient, so the
/// k-th derivative is k! * c[k].  Fourth order is exactly what the
/// Ricci potential needs: it involves two derivatives of the metric,
/// which itself involves two derivatives of the potential.
struct Jet {
    static constexpr int N = 5;
    std::array<double, N> c{};

    Jet() = default;
    explicit Jet(double v) { c[0] = v; }

    static Jet variable(double v) {
        Jet j(v);
        j.c[1] = 1.0;
        return j;
    }
    static Jet constant(double v) { return Jet(v); }

    double value() const { return c[0]; }
    double d1() const { return c[1]; }
    double d2() const { return 2.0 * c[2]; }
    double d3() const { return 6.0 * c[3]; }
    double d4() const { return 24.0 * c[4]; }
    double deriv(int k) const {
        static constexpr double fact[N] = {1, 1, 2, 6, 24};
        return c[k] * fact[k];
    }

    /// Jet of the derivative function (loses one order; top coefficient 0).
    Jet d() const {
        Jet r;
        for (int k = 1; k < N; ++k) r.c[k - 1] = k * c[k];
        return r;
    }

    Jet operator-() const {
        Jet r;
        for (int k = 0; k < N; ++k) r.c[k] = -c[k];
        return r;
    }
    Jet& operator+=(const Jet& o) {
        for (int k = 0; k < N; ++k) c[k] += o.c[k];
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        for (int k = 0; k < N; ++k) c[k] -= o.c[k];
        return *this;
    }
    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator+(Jet a, double b) { a.c[0] += b; return a; }
    friend Jet operator+(double b, Jet a) { a.c[0] += b; return a; }
    friend Jet operator-(Jet a, double b) { a.c[0] -= b; return a; }
    friend Jet operator-(double b, const Jet& a) { return -a + b; }
    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet r;
        for (int i = 0; i < N; ++i)
            for (int j = 0; i + j < N; ++j) r.c[i + j] += a.c[i] * b.c[j];
        return r;
    }
    friend Jet operator*(Jet a, double b) {
        for (auto& x : a.c) x *= b;
        return a;
    }
    friend Jet operator*(double b, Jet a) { return a * b; }
    friend Jet operator/(Jet a, double b) { return a * (1.0 / b); }
};

/// Compose an analytic function with the jet: F given by its derivatives
/// F^(k) at a.value().
inline Jet jet_compose(const std::array<double, Jet::N>& Fd, const Jet& a) {
    Jet d = a;
    d.c[0] = 0.0;  // a - a0
    Jet pw(1.0), r(Fd[0]);
    double fact = 1.0;
    for (int k = 1; k < Jet::N; ++k) {
        pw = pw * d;
        fact *= k;
        Jet term = pw * (Fd[k] / fact);
        r += term;
    }
    return r;
}

/// Composition outer(inner(x)) where `outer` is a jet in the variable whose
/// value is inner.value().
inline Jet jet_chain(const Jet& outer, const Jet& inner) {
    return jet_compose({outer.deriv(0), outer.deriv(1), outer.deriv(2), outer.deriv(3),
                        outer.deriv(4)},
                       inner);
}

inline Jet jet_recip(const Jet& a) {
    const double v = a.value();
    if (v == 0.0) throw DegenerateDataError("jet_recip: division by zero");
    const double iv = 1.0 / v;
    return jet_compose({iv, -iv * iv, 2 * iv * iv * iv, -6 * iv * iv * iv * iv,
                        24 * iv * iv * iv * iv * iv},
                       a);
}

inline Jet operator/(const Jet& a, const Jet& b) { return a * jet_recip(b); }
inline Jet operator/(double a, const Jet& b) { return jet_recip(b) * a; }

inline Jet jet_sqrt(const Jet& a) {
    const double v = a.value();
    if (!(v > 0.0)) throw DegenerateDataError("jet_sqrt: nonpositive argument");
    const double s = std::sqrt(v);
    return jet_compose({s, 0.5 / s, -0.25 / (s * v), 0.375 / (s * v * v),
                        -0.9375 / (s * v * v * v)},
                       a);
}

inline Jet jet_log(const Jet& a) {
    const double v = a.value();
    if (!(v > 0.0)) throw DegenerateDataError("jet_log: nonpositive argument");
    const double iv = 1.0 / v;
    return jet_compose({std::log(v), iv, -iv * iv, 2 * iv * iv * iv,
                        -6 * iv * iv * iv * iv},
                       a);
}

/// log(1+a), stable for |a| << 1.
inline Jet jet_log1p(const Jet& a) {
    const double v = a.value();
    if (!(v > -1.0)) throw DegenerateDataError("jet_log1p: argument <= -1");
    const double iv = 1.0 / (1.0 + v);
    return jet_compose({std::log1p(v), iv, -iv * iv, 2 * iv * iv * iv,
                        -6 * iv * iv * iv * iv},
                       a);
}

inline Jet jet_exp(const Jet& a) {
    const double e = std::exp(a.value());
    return jet_compose({e, e, e, e, e}, a);
}

}  // namespace keglue
