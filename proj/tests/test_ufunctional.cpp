#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "wnc/donsker.hpp"
#include "wnc/rng.hpp"
#include "wnc/ufunctional.hpp"

using namespace wnc;

namespace {

FunctionElement random_span(CounterRng& rng, std::size_t max_len,
                            double scale_coeff = 1.0) {
  std::vector<cplx> c(1 + rng.next_u64() % max_len);
  for (cplx& v : c) v = {scale_coeff * rng.next_normal(), 0.0};
  return FunctionElement::hermite_span(std::move(c));
}

// Closed-form T-transform of Donsker's delta, derived independently of the
// S route:  (2 pi t)^{-1/2} exp((I^2 + 2 i a I - a^2)/(2t) - (xi,xi)/2),
// I = int_0^t xi.
cplx t_delta_closed(double t, cplx a, const FunctionElement& xi) {
  const cplx I = inner_product(xi, FunctionElement::indicator(0.0, t));
  const cplx xi2 = inner_product(xi, xi);
  return std::exp((I * I + 2.0 * cplx{0.0, 1.0} * a * I - a * a) / (2.0 * t) -
                  0.5 * xi2) /
         std::sqrt(kTwoPi * t);
}

}  // namespace

TEST_CASE("characteristic functional closed values") {
  CHECK(std::abs(characteristic_functional(FunctionElement::zero()) -
                 cplx{1.0, 0.0}) < 1e-15);
  CHECK(characteristic_functional(FunctionElement::basis(0)).real() ==
        doctest::Approx(std::exp(-0.5)));
  CHECK(characteristic_functional(FunctionElement::indicator(0.0, 4.0)).real() ==
        doctest::Approx(std::exp(-2.0)));
}

TEST_CASE("s_from_t maps the vacuum T-transform to the constant 1") {
  UFunctional t_one{[](const FunctionElement& xi) {
                      return characteristic_functional(xi);
                    },
                    GrowthCertificate{}};
  CounterRng rng(11, 0);
  for (int i = 0; i < 20; ++i) {
    auto xi = random_span(rng, 10);
    CHECK(std::abs(s_from_t(t_one, xi) - cplx{1.0, 0.0}) < 1e-10);
  }
  CHECK(std::abs(s_from_t(t_one, FunctionElement::zero()) - cplx{1.0, 0.0}) <
        1e-15);
}

TEST_CASE("S and T routes to Donsker's delta agree") {
  const double t = 1.0;
  const cplx a{0.4, 0.2};
  UFunctional t_delta{[&](const FunctionElement& xi) {
                        return t_delta_closed(t, a, xi);
                      },
                      GrowthCertificate{}};
  CounterRng rng(12, 0);
  for (int i = 0; i < 100; ++i) {
    auto xi = random_span(rng, 8, 0.5);
    const cplx via_t = s_from_t(t_delta, xi);
    const cplx direct = s_delta(t, a, xi);
    CHECK(std::abs(via_t - direct) < 1e-10);
  }
}

TEST_CASE("t_from_s inverts s_from_t") {
  UFunctional s_d{[](const FunctionElement& xi) {
                    return s_delta(1.0, cplx{0.3, 0.0}, xi);
                  },
                  GrowthCertificate{}};
  CounterRng rng(13, 0);
  for (int i = 0; i < 25; ++i) {
    auto xi = random_span(rng, 8, 0.5);
    CHECK(std::abs(t_from_s(s_d, xi) -
                   t_delta_closed(1.0, cplx{0.3, 0.0}, xi)) < 1e-10);
  }
}

TEST_CASE("constant functional passes any order-two bound") {
  GrowthCertificate cert;
  cert.K1 = 1.0;
  cert.K2 = 0.01;
  UFunctional one{[](const FunctionElement&) { return cplx{1.0, 0.0}; }, cert};
  const ConvergenceReport r = verify_growth_bound(one, cert, 2000, 3);
  CHECK(r.bound_violations == 0);
  CHECK(r.verdict);
}

TEST_CASE("the vacuum T-transform is not of minimal type") {
  GrowthCertificate cert;
  cert.K1 = 1.0;
  cert.norm = NormSpec{0, NormSpec::Sign::positive};
  cert.style = GrowthCertificate::Style::minimal_type;
  UFunctional c_fn{[](const FunctionElement& xi) {
                     return characteristic_functional(xi);
                   },
                   cert};
  const ConvergenceReport r = verify_growth_bound(c_fn, cert, 2000, 5);
  CHECK(r.bound_violations > 0);
  CHECK_FALSE(r.verdict);
}

TEST_CASE("Donsker S-transform passes its certified constants") {
  const cplx a{0.5, 0.0};
  const GrowthCertificate cert = donsker_certificate(1.0, a, {1.0, 0.0});
  UFunctional f{[a](const FunctionElement& xi) { return s_delta(1.0, a, xi); },
                cert};
  const ConvergenceReport r = verify_growth_bound(f, cert, 5000, 17);
  CHECK(r.bound_violations == 0);
}

TEST_CASE("halving K2 makes the Donsker bound fail (sharpness)") {
  // Probe nearly proportional to the pairing direction, scaled along the
  // imaginary axis, with an imaginary offset: the certified exponent is
  // attained up to the projection defect.
  const cplx a{0.0, -0.5};
  const GrowthCertificate cert = donsker_certificate(1.0, a, {1.0, 0.0});
  const FunctionElement xi = project_indicator(0.0, 1.0, 64);
  bool violated = false;
  for (double y : {2.0, 3.0, 4.0, 5.0, 6.0, 7.0}) {
    const cplx z{0.0, y};
    const double value = std::abs(s_delta(1.0, a, scale(xi, z)));
    const double n0 = norm(xi);
    const double bound =
        cert.K1 * std::exp(0.5 * cert.K2 * std::norm(z) * n0 * n0);
    if (value > bound) violated = true;
  }
  CHECK(violated);
}

TEST_CASE("sequence checker") {
  GrowthCertificate cert;
  cert.K1 = 1.0;
  cert.K2 = 1.0;
  std::vector<FunctionElement> probes = {FunctionElement::zero(),
                                         FunctionElement::basis(0),
                                         FunctionElement::basis(1)};
  SUBCASE("constant sequence converges") {
    std::vector<UFunctional> seq(
        4, UFunctional{[](const FunctionElement& xi) {
                         return characteristic_functional(xi);
                       },
                       cert});
    CHECK(check_sequence(seq, probes, cert).verdict);
  }
  SUBCASE("n times C violates the uniform bound") {
    std::vector<UFunctional> seq;
    for (int n = 5; n <= 8; ++n)
      seq.push_back({[n](const FunctionElement& xi) {
                       return static_cast<double>(n) *
                              characteristic_functional(xi);
                     },
                     cert});
    const ConvergenceReport r = check_sequence(seq, probes, cert);
    CHECK(r.bound_violations > 0);
    CHECK_FALSE(r.verdict);
  }
  SUBCASE("too-short sequences are rejected") {
    std::vector<UFunctional> seq(
        2, UFunctional{[](const FunctionElement& xi) {
                         return characteristic_functional(xi);
                       },
                       cert});
    CHECK_THROWS_AS(check_sequence(seq, probes, cert), DomainViolation);
  }
}

TEST_CASE("approximant S-transforms converge in the sequence checker") {
  GrowthCertificate cert = donsker_certificate(1.0, cplx{0.3, 0.0}, {1.0, 0.0});
  const FunctionElement eta = project_indicator(0.0, 1.0, 64);
  std::vector<UFunctional> seq;
  for (unsigned n : {2u, 3u, 4u, 5u, 6u}) {
    ApproximantSpec spec(n, Sector(0.0), eta);
    seq.push_back({[spec](const FunctionElement& xi) {
                     return s_approximant(spec, {1.0, 0.0}, {0.3, 0.0}, xi);
                   },
                   cert});
  }
  std::vector<FunctionElement> probes = {FunctionElement::zero(),
                                         FunctionElement::basis(0)};
  const ConvergenceReport r = check_sequence(seq, probes, cert);
  CHECK(r.verdict);
  // limit matches the closed form at the same pairing direction
  DonskerDelta d(eta, {0.3, 0.0});
  CHECK(std::abs(seq.back()(FunctionElement::zero()) -
                 s_scaled_delta(d, FunctionElement::zero())) < 1e-6);
}

TEST_CASE("parameter integration") {
  const FunctionElement xi = FunctionElement::basis(0);
  SUBCASE("constant family integrates to itself on [0,1]") {
    auto f = [](double, const FunctionElement& x) {
      return characteristic_functional(x);
    };
    const cplx v = integrate_family(f, 0.0, 1.0, nullptr, {1e-11, 4096}, xi);
    CHECK(std::abs(v - characteristic_functional(xi)) < 1e-10);
  }
  SUBCASE("integrable endpoint singularity") {
    // K1(lambda) = lambda^{-1/2} e^{-1/(2 lambda)}; oracle by u = 1/lambda.
    auto f = [](double lam, const FunctionElement& x) {
      return std::pow(lam, -0.5) * std::exp(-0.5 / lam) *
             characteristic_functional(x);
    };
    const cplx v = integrate_family(f, 1e-12, 1.0, nullptr, {1e-9, 8192}, xi);
    auto oracle = [](double u) {
      return cplx{std::pow(u, -1.5) * std::exp(-0.5 * u), 0.0};
    };
    const cplx expected =
        characteristic_functional(xi) * integrate(oracle, 1.0, 80.0, {1e-12, 4096}).value;
    CHECK(std::abs(v - expected) < 1e-7);
  }
}

TEST_CASE("ray analyticity of the packaged closed forms") {
  CounterRng rng(21, 0);
  UFunctional c_fn{[](const FunctionElement& xi) {
                     return characteristic_functional(xi);
                   },
                   GrowthCertificate{}};
  UFunctional s_d{[](const FunctionElement& xi) {
                    return s_delta(1.0, cplx{0.2, 0.1}, xi);
                  },
                  GrowthCertificate{}};
  for (int i = 0; i < 10; ++i) {
    auto xi = random_span(rng, 6, 0.4);
    auto zeta = random_span(rng, 6, 0.4);
    const cplx lambda0{0.3 * rng.next_normal(), 0.3 * rng.next_normal()};
    CHECK(ray_analyticity_residual(c_fn, xi, zeta, lambda0) < 1e-6);
    CHECK(ray_analyticity_residual(s_d, xi, zeta, lambda0) < 1e-6);
  }
}
