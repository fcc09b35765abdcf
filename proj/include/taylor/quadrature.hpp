#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "taylor/errors.hpp"

namespace taylor {

// Endpoint correction for the periodic trapezoid rule applied to integrands
// with a logarithmic singularity at the endpoint.  The composite rule for
// int_0^L f(s) ds with f ~ smooth + smooth*log near s=0 (and s=L) is
//
//   h * [ sum_{k=offset}^{n-offset} f(k h)
//         + sum_p w[p] * ( f(chi[p] h) + f(L - chi[p] h) ) ]
//
// with h = L/n.  Nodes chi are in units of h and fall in (0, offset - 1/2).
struct AlpertRule {
    int order;
    int offset;
    int count;
    const double* chi;
    const double* w;
};

// order 8: Gaussian-type nodes; order 16: fixed nodes, moment-matched weights.
const AlpertRule& alpert_log_rule(int order);

namespace detail {

inline constexpr int kGLCount = 15;
extern const double kGLNode[kGLCount];
extern const double kGLWeight[kGLCount];

inline double abs_max(double v) { return std::abs(v); }
inline double abs_max(const std::complex<double>& v) { return std::abs(v); }
template <class T>
    requires requires(const T& t) { t.cwiseAbs().maxCoeff(); }
double abs_max(const T& v) {
    return v.cwiseAbs().maxCoeff();
}

template <class F, class T>
T gl_panel(F& f, double a, double b, const T& zero) {
    const double c = 0.5 * (a + b), r = 0.5 * (b - a);
    T acc = zero;
    for (int i = 0; i < kGLCount; ++i)
        acc = acc + (r * kGLWeight[i]) * f(c + r * kGLNode[i]);
    return acc;
}

}  // namespace detail

// Adaptive panel integration to an absolute tolerance.  The zero argument
// fixes the accumulator type (0.0, complex zero, Eigen Vector::Zero(), ...).
template <class F, class T>
T integrate_adaptive(F&& f, double a, double b, double abs_tol, T zero) {
    struct Panel {
        double a, b, tol;
    };
    const double width0 = std::abs(b - a);
    std::vector<Panel> stack{{a, b, abs_tol}};
    T total = zero;
    while (!stack.empty()) {
        Panel p = stack.back();
        stack.pop_back();
        const double mid = 0.5 * (p.a + p.b);
        T whole = detail::gl_panel(f, p.a, p.b, zero);
        T left = detail::gl_panel(f, p.a, mid, zero);
        T right = detail::gl_panel(f, mid, p.b, zero);
        T refined = left + right;
        const double err = detail::abs_max(T(refined - whole));
        if (err <= p.tol) {
            total = total + refined;
            continue;
        }
        if (std::abs(p.b - p.a) < 1e-13 * width0)
            throw AccuracyError("integrate_adaptive: panel subdivision exhausted");
        stack.push_back({p.a, mid, 0.5 * p.tol});
        stack.push_back({mid, p.b, 0.5 * p.tol});
    }
    return total;
}

}  // namespace taylor
