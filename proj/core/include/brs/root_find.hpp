#pragma once

#include <cmath>
#include <functional>
#include <limits>

#include "brs/errors.hpp"

namespace brs {

struct RootResult {
  double x = 0.0;
  double residual = 0.0;  // f(x) at the returned point
  int iterations = 0;
  bool converged = false;
};

// Brent's method on a sign-changing bracket [a, b].  The bracket is shrunk to
// machine precision (inverse quadratic / secant steps with bisection
// safeguards), so the residual typically lands far below f_tol; f_tol only
// decides whether the result counts as converged, max_iter caps the work.
inline RootResult brent(const std::function<double(double)>& f, double a, double b,
                        double fa, double fb, double f_tol, int max_iter = 200) {
  if (fa == 0.0) return {a, 0.0, 0, true};
  if (fb == 0.0) return {b, 0.0, 0, true};
  if ((fa > 0.0) == (fb > 0.0)) throw InvalidArgument("brent: root not bracketed");

  double c = a, fc = fa, d = b - a, e = d;
  int it = 0;
  for (; it < max_iter; ++it) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a; fc = fa; d = b - a; e = d;
    }
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::fabs(b);
    const double xm = 0.5 * (c - b);
    if (std::fabs(xm) <= tol1 || fb == 0.0) break;
    if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
      double p, q, r;
      const double s = fb / fa;
      if (a == c) {  // secant
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {  // inverse quadratic
        q = fa / fc;
        r = fb / fc;
        p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::fabs(p);
      if (2.0 * p < std::fmin(3.0 * xm * q - std::fabs(tol1 * q), std::fabs(e * q))) {
        e = d; d = p / q;
      } else {
        d = xm; e = d;
      }
    } else {
      d = xm; e = d;
    }
    a = b; fa = fb;
    b += (std::fabs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
    fb = f(b);
  }
  RootResult out;
  out.x = b;
  out.residual = fb;
  out.iterations = it;
  out.converged = std::fabs(fb) <= f_tol;
  return out;
}

// Bisection for monotone scalar equations where only a residual tolerance
// matters (used for policy cutoffs and quantile inversion).
inline double bisect_monotone(const std::function<double(double)>& f, double lo, double hi,
                              int steps = 80) {
  double flo = f(lo);
  for (int i = 0; i < steps && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid; flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace brs
