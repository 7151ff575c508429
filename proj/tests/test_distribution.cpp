#include <doctest.h>

#include <cmath>

#include "brs/distribution.hpp"
#include "brs/errors.hpp"
#include "brs/quadrature.hpp"
#include "test_support.hpp"

using namespace brs;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<Distribution> named_families() {
  return {uniform_on(1.0), uniform_on(3.5),    scaled_uniform_top(1), scaled_uniform_top(4),
          exponential(1.0), exponential(0.25), rectangle_area(),      ellipse_area()};
}

// Truncation point covering most of the mass for unbounded families.
double probe_sup(const Distribution& d) {
  const double sup = d.support_sup();
  return std::isfinite(sup) ? sup : 40.0 / std::get<Exponential>(d.family()).rate;
}

}  // namespace

TEST_CASE("uniform cdf and truncated mean closed forms") {
  const Distribution u = uniform_on(1.0);
  CHECK(u.cdf(0.3) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(u.cdf(-0.1) == 0.0);
  CHECK(u.cdf(2.0) == 1.0);
  CHECK(u.truncated_mean(0.2) == doctest::Approx(0.02).epsilon(1e-15));
  CHECK(u.total_mean() == doctest::Approx(0.5));
  CHECK(u.support_sup() == 1.0);

  const Distribution u35 = uniform_on(3.5);
  CHECK(u35.truncated_mean(3.5) == doctest::Approx(3.5 / 2.0));
  CHECK(u35.truncated_mean(1.0) == doctest::Approx(1.0 / 7.0));
}

TEST_CASE("scaled uniform top matches uniform on [0, 1/k]") {
  const Distribution d = scaled_uniform_top(4);
  CHECK(d.support_sup() == doctest::Approx(0.25));
  CHECK(d.cdf(0.1) == doctest::Approx(0.4));
  CHECK(d.cdf(0.3) == 1.0);
  CHECK(d.total_mean() == doctest::Approx(0.125));
  CHECK(d.truncated_mean(0.1) == doctest::Approx(4.0 * 0.01 / 2.0));
}

TEST_CASE("exponential truncated mean and its limit") {
  const Distribution e = exponential(1.0);
  CHECK(e.cdf(1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-14));
  CHECK(e.truncated_mean(2.0) ==
        doctest::Approx(1.0 - std::exp(-2.0) * 3.0).epsilon(1e-14));
  CHECK(e.support_sup() == kInfiniteSupport);
  CHECK(e.truncated_mean(kInfiniteSupport) == doctest::Approx(1.0));

  // M(40/rate) recovers the full mean 1/rate to quadrature accuracy.
  for (double rate : {1.0, 2.0, 0.5}) {
    const Distribution d = exponential(rate);
    const auto integrand = [rate](double x) { return x * rate * std::exp(-rate * x); };
    const double quad = integrate(integrand, 0.0, 40.0 / rate);
    CHECK(d.truncated_mean(40.0 / rate) == doctest::Approx(quad).epsilon(1e-10));
    CHECK(d.truncated_mean(40.0 / rate) == doctest::Approx(1.0 / rate).epsilon(1e-10));
  }
}

TEST_CASE("rectangle area frozen values") {
  const Distribution r = rectangle_area();
  // F(u) = u(1 - ln u), derived by integrating the product density -ln u.
  CHECK(r.cdf(0.5) == doctest::Approx(0.8465735902799726).epsilon(1e-14));
  CHECK(r.cdf(1.0) == 1.0);
  CHECK(r.cdf(0.0) == 0.0);
  // M(0.1) = t^2/4 - (t^2/2) ln t at t = 0.1.
  CHECK(r.truncated_mean(0.1) == doctest::Approx(0.0140129254649702).epsilon(1e-12));
  CHECK(r.total_mean() == doctest::Approx(0.25));
}

TEST_CASE("ellipse area is a scaled product of uniforms") {
  const Distribution e = ellipse_area();
  CHECK(e.support_sup() == doctest::Approx(kPi / 4.0));
  CHECK(e.total_mean() == doctest::Approx(kPi / 16.0).epsilon(1e-14));
  CHECK(e.cdf(kPi / 4.0) == doctest::Approx(1.0));
  const double u = 0.3;
  CHECK(e.cdf(u) ==
        doctest::Approx((4.0 * u / kPi) * (1.0 - std::log(4.0 * u / kPi))).epsilon(1e-14));
  // Scaling identity against the rectangle family: M_e(t) = (pi/4) M_r(4t/pi).
  const Distribution r = rectangle_area();
  for (double t : {0.05, 0.2, 0.6}) {
    CHECK(e.truncated_mean(t) ==
          doctest::Approx((kPi / 4.0) * r.truncated_mean(4.0 * t / kPi)).epsilon(1e-14));
  }
}

TEST_CASE("closed-form moments agree with quadrature of x dF") {
  for (const Distribution& d : named_families()) {
    const double sup = probe_sup(d);
    for (int i = 1; i <= 50; ++i) {
      const double t = sup * static_cast<double>(i) / 50.0;
      const auto integrand = [&d](double x) { return x * d.density(x); };
      const double quad = integrate(integrand, 0.0, t);
      CHECK(d.truncated_mean(t) == doctest::Approx(quad).epsilon(1e-8));
    }
  }
}

TEST_CASE("cdf and truncated mean invariants on a fine grid") {
  for (const Distribution& d : named_families()) {
    const double sup = probe_sup(d);
    double prev_cdf = 0.0, prev_mean = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      const double t = sup * static_cast<double>(i) / 1000.0;
      const double F = d.cdf(t);
      const double M = d.truncated_mean(t);
      CHECK(F >= prev_cdf);
      CHECK(M >= prev_mean);
      CHECK(F <= 1.0 + 1e-12);
      CHECK(M <= t * F + 1e-12);  // items below t average below t
      prev_cdf = F;
      prev_mean = M;
    }
    CHECK(d.truncated_mean(sup) == doctest::Approx(d.total_mean()).epsilon(1e-10));
  }
}

TEST_CASE("samplers match their cdf (KS at 1e5 draws)") {
  for (const Distribution& d : named_families()) {
    const auto sample = brs::test::draw(d, 100000, 0xC0FFEE);
    const double ks =
        brs::test::ks_distance(sample, [&d](double x) { return d.cdf(x); });
    INFO(d.family_name());
    CHECK(ks < 0.01);
  }
}

TEST_CASE("sampler mean matches total mean") {
  for (const Distribution& d : named_families()) {
    const auto sample = brs::test::draw(d, 100000, 42);
    double mean = 0.0;
    for (double x : sample) mean += x;
    mean /= static_cast<double>(sample.size());
    CHECK(mean == doctest::Approx(d.total_mean()).epsilon(0.02));
  }
}

TEST_CASE("numeric density reproduces the rectangle family by quadrature") {
  const Distribution byquad = numeric_density(
      [](double u) { return u <= 0.0 ? 0.0 : -std::log(std::fmax(u, 1e-300)); }, 1.0);
  const Distribution exact = rectangle_area();
  for (double t : {0.05, 0.1, 0.3, 0.7, 1.0}) {
    CHECK(byquad.cdf(t) == doctest::Approx(exact.cdf(t)).epsilon(1e-8));
    CHECK(byquad.truncated_mean(t) == doctest::Approx(exact.truncated_mean(t)).epsilon(1e-8));
  }
  CHECK(byquad.total_mean() == doctest::Approx(0.25).epsilon(1e-8));

  SplitMix64 rng(9);
  for (int i = 0; i < 200; ++i) {
    const double x = byquad.sample(rng);
    CHECK(x >= 0.0);
    CHECK(x <= 1.0);
  }
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(uniform_on(0.0), InvalidArgument);
  CHECK_THROWS_AS(uniform_on(-1.0), InvalidArgument);
  CHECK_THROWS_AS(scaled_uniform_top(0), InvalidArgument);
  CHECK_THROWS_AS(exponential(0.0), InvalidArgument);
  CHECK_THROWS_AS(numeric_density(nullptr, 1.0), InvalidArgument);
  CHECK_THROWS_AS(numeric_density([](double) { return 1.0; }, 0.0), InvalidArgument);
}

TEST_CASE("quadrature failure on a divergent integrand") {
  CHECK_THROWS_AS(integrate([](double x) { return 1.0 / x; }, 0.0, 1.0), QuadratureFailure);
}
