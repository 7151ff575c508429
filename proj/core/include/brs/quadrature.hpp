#pragma once

#include <cmath>
#include <functional>

#include "brs/errors.hpp"

namespace brs {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  int max_depth = 50;
};

namespace detail {

struct SimpsonState {
  const std::function<double(double)>& f;
  const QuadratureOptions& opt;
  double unresolved = 0.0;  // accumulated error estimates of depth-capped panels
};

inline double simpson_rec(SimpsonState& st, double a, double b, double fa, double fm,
                          double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = st.f(lm);
  const double frm = st.f(rm);
  const double h = b - a;
  const double left = (h / 12.0) * (fa + 4.0 * flm + fm);
  const double right = (h / 12.0) * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (!std::isfinite(delta)) throw QuadratureFailure("non-finite integrand in adaptive Simpson");
  // Richardson: left+right+delta/15 has one order higher accuracy.
  if (std::fabs(delta) <= 15.0 * tol || depth >= st.opt.max_depth) {
    if (std::fabs(delta) > 15.0 * tol) st.unresolved += std::fabs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  return simpson_rec(st, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
         simpson_rec(st, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace detail

// Adaptive Simpson integration of f over [a, b] to an absolute tolerance.
// Panels that hit the depth cap are accepted with their Richardson estimate;
// if those leftovers sum to more than the tolerance the whole integral is
// considered unreliable and QuadratureFailure is thrown.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        const QuadratureOptions& opt = {}) {
  if (a == b) return 0.0;
  detail::SimpsonState st{f, opt, 0.0};
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double result = detail::simpson_rec(st, a, b, fa, fm, fb, whole, opt.abs_tol, 0);
  if (st.unresolved > opt.abs_tol) {
    throw QuadratureFailure("adaptive Simpson left " + std::to_string(st.unresolved) +
                            " unresolved above tolerance");
  }
  return result;
}

}  // namespace brs
