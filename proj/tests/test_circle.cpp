#include <doctest.h>

#include <cmath>
#include <complex>
#include <map>
#include <vector>

#include "wnc/circle.hpp"
#include "wnc/rng.hpp"

using namespace wnc;

namespace {

FunctionElement random_span(CounterRng& rng, std::size_t max_len,
                            double scale_coeff) {
  std::vector<cplx> c(1 + rng.next_u64() % max_len);
  for (cplx& v : c) v = {scale_coeff * rng.next_normal(), 0.0};
  return FunctionElement::hermite_span(std::move(c));
}

}  // namespace

TEST_CASE("constant packet reproduces the free integrand") {
  CircleState state(0.3, 1.2, WavePacket({{0, cplx{1.0, 0.0}}}));
  CounterRng rng(71, 0);
  for (int i = 0; i < 30; ++i) {
    auto xi = random_span(rng, 8, 0.5);
    CHECK(std::abs(t_circle(state, xi) - t_free_integrand(xi)) < 1e-13);
  }
}

TEST_CASE("single-mode phase at t = pi") {
  CircleState state(0.0, M_PI, WavePacket({{1, cplx{1.0, 0.0}}}));
  const cplx v = t_circle(state, FunctionElement::zero());
  CHECK(std::abs(v - cplx{0.0, -1.0}) < 1e-14);
}

TEST_CASE("free integrand equals the characteristic functional at sqrt(i) xi") {
  CounterRng rng(72, 0);
  for (int i = 0; i < 50; ++i) {
    auto xi = random_span(rng, 8, 0.5);
    const cplx rotated = characteristic_functional(scale(xi, sqrt_i()));
    CHECK(std::abs(t_free_integrand(xi) - rotated) < 1e-12);
  }
}

TEST_CASE("uniform bound holds on random probes") {
  WavePacket packet({{-2, cplx{0.3, 0.1}}, {0, cplx{1.0, 0.0}},
                     {1, cplx{0.0, -0.4}}, {3, cplx{0.2, 0.2}}},
                    0.8);
  CircleState state(0.7, 0.9, packet);
  CounterRng rng(73, 0);
  int violations = 0;
  for (int i = 0; i < 1000; ++i) {
    auto xi = random_span(rng, 10, 1.0);
    if (std::abs(t_circle(state, xi)) > t_circle_bound(state, xi))
      ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("feynman integral closed values") {
  CHECK(std::abs(feynman_integral(
                     CircleState(M_PI / 2.0, 0.0,
                                 WavePacket({{1, cplx{1.0, 0.0}}}))) -
                 cplx{0.0, 1.0}) < 1e-15);
  WavePacket pair({{1, cplx{1.0, 0.0}}, {-1, cplx{1.0, 0.0}}});
  for (double t : {0.0, 0.4, 2.0}) {
    const cplx v = feynman_integral(CircleState(0.0, t, pair));
    const cplx expected = 2.0 * std::exp(cplx{0.0, -0.5 * t});
    CHECK(std::abs(v - expected) < 1e-14);
  }
}

TEST_CASE("modulus never exceeds the coefficient sum") {
  WavePacket packet({{-1, cplx{0.5, 0.0}}, {2, cplx{0.0, 0.7}},
                     {4, cplx{0.1, -0.1}}});
  double l1 = 0.0;
  for (const auto& [l, a] : packet.coeffs) l1 += std::abs(a);
  for (double t : {0.1, 1.0, 5.0, 30.0})
    for (double phi0 : {0.0, 1.1, 4.4}) {
      CHECK(std::abs(feynman_integral(CircleState(phi0, t, packet))) <=
            l1 * (1.0 + 1e-14));
    }
}

TEST_CASE("2 pi periodicity in the endpoint") {
  WavePacket packet({{-3, cplx{0.2, 0.1}}, {1, cplx{1.0, 0.0}},
                     {2, cplx{0.0, 0.5}}});
  for (double phi0 : {0.0, 0.7, 2.9}) {
    const cplx base = feynman_integral(CircleState(phi0, 1.3, packet));
    const cplx shifted =
        feynman_integral(CircleState(phi0 + kTwoPi, 1.3, packet));
    CHECK(std::abs(base - shifted) < 1e-13);
  }
}

TEST_CASE("mode evolution is a semigroup") {
  WavePacket packet({{-1, cplx{0.4, 0.0}}, {0, cplx{0.3, 0.3}},
                     {2, cplx{0.0, 1.0}}});
  const double t1 = 0.6;
  const double t2 = 1.1;
  // evolve by t1 mode-wise, then run the remaining t2
  std::map<int, cplx> evolved;
  for (const auto& [l, a] : packet.coeffs) {
    const double ld = l;
    evolved[l] = a * std::exp(cplx{0.0, -0.5} * ld * ld * t1);
  }
  for (double phi0 : {0.0, 1.8}) {
    const cplx joint = feynman_integral(CircleState(phi0, t1 + t2, packet));
    const cplx stepped =
        feynman_integral(CircleState(phi0, t2, WavePacket(evolved)));
    CHECK(std::abs(joint - stepped) < 1e-14);
  }
}

TEST_CASE("propagator satisfies the free Schroedinger equation on the grid") {
  WavePacket packet({{-2, cplx{0.3, 0.0}}, {1, cplx{1.0, 0.0}},
                     {2, cplx{0.0, 0.4}}});
  std::vector<double> phis = {0.0, 0.5, 1.0, 2.0, 3.0};
  std::vector<double> ts = {0.3, 0.8, 1.5};
  const double r1 = schroedinger_residual(packet, phis, ts, 1e-2);
  const double r2 = schroedinger_residual(packet, phis, ts, 5e-3);
  CHECK(r1 < 1e-2);
  // centered differences: residual should shrink about fourfold
  CHECK(r2 / r1 == doctest::Approx(0.25).epsilon(0.15));
  CHECK(schroedinger_residual(packet, phis, ts, 1e-4) < 1e-6);
}

TEST_CASE("localized endpoint diagnosis") {
  const DivergenceReport report = localized_divergence_check(1.0, 0.5, 0.0);
  CHECK(report.divergent);
  CHECK(std::abs(report.formal_tau.imag()) < 1e-12);
  CHECK(report.partial_sum_rate <= 1e-12);
  CHECK(report.z1_converges);
  CHECK_THROWS_AS(localized_divergence_check(0.0, 0.5, 0.0), NonpositiveTime);
}

TEST_CASE("packet and state validation") {
  CHECK_THROWS_AS(WavePacket({{0, cplx{1.0, 0.0}}}, 0.0), DomainViolation);
  CHECK_THROWS_AS(WavePacket({{kMaxPacketMode + 1, cplx{1.0, 0.0}}}),
                  DomainViolation);
  CHECK_THROWS_AS(CircleState(0.0, -0.5, WavePacket({{0, cplx{1.0, 0.0}}})),
                  NonpositiveTime);
  WavePacket witness({{2, cplx{1.0, 0.0}}}, 0.5);
  CHECK(witness.summability() == doctest::Approx(std::exp(0.5 * 0.25 * 4.0)));
}
