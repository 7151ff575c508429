#include "brs/distribution.hpp"

#include <cmath>

#include "brs/errors.hpp"
#include "brs/root_find.hpp"

namespace brs {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Product of two independent U[0,1]: F(u) = u(1 - ln u), f(u) = -ln u.
double product_uniform_cdf(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  return u * (1.0 - std::log(u));
}

double product_uniform_density(double u) {
  if (u <= 0.0 || u >= 1.0) return 0.0;
  return -std::log(u);
}

// int_0^t u(-ln u) du = t^2/4 - (t^2/2) ln t.
double product_uniform_trunc_mean(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 0.25;
  return t * t * (0.25 - 0.5 * std::log(t));
}

void validate(const Distribution::Family& fam) {
  if (const auto* u = std::get_if<UniformOn>(&fam)) {
    if (!(u->b > 0.0)) throw InvalidArgument("UniformOn: b must be positive");
  } else if (const auto* s = std::get_if<ScaledUniformTop>(&fam)) {
    if (s->k < 1) throw InvalidArgument("ScaledUniformTop: k must be a positive integer");
  } else if (const auto* e = std::get_if<Exponential>(&fam)) {
    if (!(e->rate > 0.0)) throw InvalidArgument("Exponential: rate must be positive");
  } else if (const auto* n = std::get_if<NumericDensity>(&fam)) {
    if (!n->density) throw InvalidArgument("NumericDensity: density handle required");
    if (!(n->support_sup > 0.0)) throw InvalidArgument("NumericDensity: support_sup must be positive");
  }
}

}  // namespace

Distribution::Distribution(Family family) : family_(std::move(family)) { validate(family_); }

double Distribution::cdf(double x) const {
  return std::visit(
      [x](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, UniformOn>) {
          if (x <= 0.0) return 0.0;
          return x >= f.b ? 1.0 : x / f.b;
        } else if constexpr (std::is_same_v<T, ScaledUniformTop>) {
          if (x <= 0.0) return 0.0;
          const double kx = static_cast<double>(f.k) * x;
          return kx >= 1.0 ? 1.0 : kx;
        } else if constexpr (std::is_same_v<T, Exponential>) {
          return x <= 0.0 ? 0.0 : -std::expm1(-f.rate * x);
        } else if constexpr (std::is_same_v<T, RectangleArea>) {
          return product_uniform_cdf(x);
        } else if constexpr (std::is_same_v<T, EllipseArea>) {
          // pi*A*B with A,B ~ U[0,1/2] is (pi/4) times the product of two U[0,1].
          return product_uniform_cdf(4.0 * x / kPi);
        } else {
          if (x <= 0.0) return 0.0;
          const double hi = std::fmin(x, f.support_sup);
          const double v = integrate(f.density, 0.0, hi);
          return std::fmin(v, 1.0);
        }
      },
      family_);
}

double Distribution::density(double x) const {
  return std::visit(
      [x](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, UniformOn>) {
          return (x < 0.0 || x > f.b) ? 0.0 : 1.0 / f.b;
        } else if constexpr (std::is_same_v<T, ScaledUniformTop>) {
          const double sup = 1.0 / static_cast<double>(f.k);
          return (x < 0.0 || x > sup) ? 0.0 : static_cast<double>(f.k);
        } else if constexpr (std::is_same_v<T, Exponential>) {
          return x < 0.0 ? 0.0 : f.rate * std::exp(-f.rate * x);
        } else if constexpr (std::is_same_v<T, RectangleArea>) {
          return product_uniform_density(x);
        } else if constexpr (std::is_same_v<T, EllipseArea>) {
          const double c = 4.0 / kPi;
          return c * product_uniform_density(c * x);
        } else {
          return (x < 0.0 || x > f.support_sup) ? 0.0 : f.density(x);
        }
      },
      family_);
}

double Distribution::truncated_mean(double t) const {
  return std::visit(
      [t](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, UniformOn>) {
          if (t <= 0.0) return 0.0;
          const double u = std::fmin(t, f.b);
          return u * u / (2.0 * f.b);
        } else if constexpr (std::is_same_v<T, ScaledUniformTop>) {
          if (t <= 0.0) return 0.0;
          const double k = static_cast<double>(f.k);
          const double u = std::fmin(t, 1.0 / k);
          return k * u * u / 2.0;
        } else if constexpr (std::is_same_v<T, Exponential>) {
          if (t <= 0.0) return 0.0;
          if (t == kInfiniteSupport) return 1.0 / f.rate;
          const double lt = f.rate * t;
          return (1.0 - std::exp(-lt) * (lt + 1.0)) / f.rate;
        } else if constexpr (std::is_same_v<T, RectangleArea>) {
          return product_uniform_trunc_mean(t);
        } else if constexpr (std::is_same_v<T, EllipseArea>) {
          // V = (pi/4) R scales the truncated mean: M_V(t) = (pi/4) M_R(4t/pi).
          return (kPi / 4.0) * product_uniform_trunc_mean(4.0 * t / kPi);
        } else {
          if (t <= 0.0) return 0.0;
          const double hi = std::fmin(t, f.support_sup);
          const auto& density = f.density;
          return integrate([&density](double x) { return x * density(x); }, 0.0, hi);
        }
      },
      family_);
}

double Distribution::total_mean() const {
  return std::visit(
      [this](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, UniformOn>) {
          return f.b / 2.0;
        } else if constexpr (std::is_same_v<T, ScaledUniformTop>) {
          return 1.0 / (2.0 * static_cast<double>(f.k));
        } else if constexpr (std::is_same_v<T, Exponential>) {
          return 1.0 / f.rate;
        } else if constexpr (std::is_same_v<T, RectangleArea>) {
          return 0.25;
        } else if constexpr (std::is_same_v<T, EllipseArea>) {
          return kPi / 16.0;
        } else {
          return truncated_mean(f.support_sup);
        }
      },
      family_);
}

double Distribution::support_sup() const {
  return std::visit(
      [](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, UniformOn>) {
          return f.b;
        } else if constexpr (std::is_same_v<T, ScaledUniformTop>) {
          return 1.0 / static_cast<double>(f.k);
        } else if constexpr (std::is_same_v<T, Exponential>) {
          return kInfiniteSupport;
        } else if constexpr (std::is_same_v<T, RectangleArea>) {
          return 1.0;
        } else if constexpr (std::is_same_v<T, EllipseArea>) {
          return kPi / 4.0;
        } else {
          return f.support_sup;
        }
      },
      family_);
}

double Distribution::sample(SplitMix64& rng) const {
  return std::visit(
      [this, &rng](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, UniformOn>) {
          return f.b * rng.uniform01();
        } else if constexpr (std::is_same_v<T, ScaledUniformTop>) {
          return rng.uniform01() / static_cast<double>(f.k);
        } else if constexpr (std::is_same_v<T, Exponential>) {
          return -std::log1p(-rng.uniform01()) / f.rate;
        } else if constexpr (std::is_same_v<T, RectangleArea>) {
          const double a = rng.uniform01();
          return a * rng.uniform01();
        } else if constexpr (std::is_same_v<T, EllipseArea>) {
          const double a = 0.5 * rng.uniform01();
          return kPi * a * (0.5 * rng.uniform01());
        } else {
          // Quantile inversion against the quadrature cdf.
          const double u = rng.uniform01();
          if (u <= 0.0) return 0.0;
          const auto g = [this, u](double x) { return cdf(x) - u; };
          return bisect_monotone(g, 0.0, f.support_sup);
        }
      },
      family_);
}

std::string Distribution::family_name() const {
  return std::visit(
      [](const auto& f) -> std::string {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, UniformOn>) return "uniform";
        else if constexpr (std::is_same_v<T, ScaledUniformTop>) return "scaled_uniform_top";
        else if constexpr (std::is_same_v<T, Exponential>) return "exponential";
        else if constexpr (std::is_same_v<T, RectangleArea>) return "rectangle_area";
        else if constexpr (std::is_same_v<T, EllipseArea>) return "ellipse_area";
        else return "numeric_density";
      },
      family_);
}

Distribution uniform_on(double b) { return Distribution(UniformOn{b}); }
Distribution scaled_uniform_top(long k) { return Distribution(ScaledUniformTop{k}); }
Distribution exponential(double rate) { return Distribution(Exponential{rate}); }
Distribution rectangle_area() { return Distribution(RectangleArea{}); }
Distribution ellipse_area() { return Distribution(EllipseArea{}); }
Distribution numeric_density(std::function<double(double)> density, double support_sup) {
  return Distribution(NumericDensity{std::move(density), support_sup});
}

}  // namespace brs
