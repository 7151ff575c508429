#pragma once

#include <functional>
#include <limits>
#include <string>
#include <variant>

#include "brs/quadrature.hpp"
#include "brs/rng.hpp"

namespace brs {

// Nonnegative value distributions for item sizes / inter-arrival times.
// Each family supplies exact cdf, density, truncated first moment
// M(t) = int_0^t x dF(x), total mean M(sup), support supremum, and sampling.

struct UniformOn {  // uniform on [0, b]
  double b = 1.0;
};

struct ScaledUniformTop {  // uniform on [0, 1/k]
  long k = 1;
};

struct Exponential {
  double rate = 1.0;
};

struct RectangleArea {};  // X*Y, X,Y iid U[0,1]

struct EllipseArea {};  // pi*A*B, A,B iid U[0,1/2]

struct NumericDensity {  // arbitrary density on [0, support_sup], moments by quadrature
  std::function<double(double)> density;
  double support_sup = 1.0;
};

constexpr double kInfiniteSupport = std::numeric_limits<double>::infinity();

class Distribution {
 public:
  using Family =
      std::variant<UniformOn, ScaledUniformTop, Exponential, RectangleArea, EllipseArea, NumericDensity>;

  explicit Distribution(Family family);

  double cdf(double x) const;
  double density(double x) const;
  double truncated_mean(double t) const;  // int_0^t x dF(x), monotone, -> total_mean()
  double total_mean() const;
  double support_sup() const;  // +infinity for Exponential
  double sample(SplitMix64& rng) const;

  const Family& family() const { return family_; }
  std::string family_name() const;

 private:
  Family family_;
};

// Convenience constructors.
Distribution uniform_on(double b);
Distribution scaled_uniform_top(long k);
Distribution exponential(double rate);
Distribution rectangle_area();
Distribution ellipse_area();
Distribution numeric_density(std::function<double(double)> density, double support_sup);

}  // namespace brs
