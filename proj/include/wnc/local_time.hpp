#pragma once

#include <cmath>
#include <complex>

#include "wnc/function_element.hpp"
#include "wnc/mc.hpp"
#include "wnc/quadrature.hpp"
#include "wnc/ufunctional.hpp"

namespace wnc {

// L(t, a) = int_0^t delta(B(s) - a) ds, extended to complex levels a in the
// sector Re(a^2) > 0.
struct LocalTimeQuery {
  double t;
  cplx a;

  LocalTimeQuery(double t_, cplx a_) : t(t_), a(a_) {
    if (!(t >= 0.0)) throw NonpositiveTime();
    if (!((a * a).real() > 0.0))
      throw DomainViolation("local time requires Re(a^2) > 0");
  }
};

// Integrability data for the parameter family behind the local-time
// integral (the role of K1 in the Bochner-integrability criterion).
inline FamilyCertificate local_time_family_certificate(cplx a) {
  const double re_a2 = (a * a).real();
  const double mod_a2 = std::norm(a);
  FamilyCertificate cert;
  cert.K1 = [re_a2, mod_a2](double s) {
    return std::exp(-0.5 * re_a2 / s + 0.5 * mod_a2) / std::sqrt(kTwoPi * s);
  };
  cert.K2_sup = 1.0;
  return cert;
}

// S L(t, a)(xi) = int_0^t (2 pi s)^{-1/2} exp(-(int_0^s xi - a)^2 / 2s) ds.
//
// The integrand has an essential singularity structure e^{-c/s} s^{-1/2} at
// s = 0 on which adaptive bisection stalls; below 0.01 t the substitution
// u = 1/s turns it into an exponentially decaying tail.
inline cplx s_local_time(const LocalTimeQuery& q, const FunctionElement& xi,
                         double tol = 1e-10) {
  if (q.t == 0.0) return {0.0, 0.0};
  auto running_integral = [&xi](double s) -> cplx {
    return inner_product(xi, FunctionElement::indicator(0.0, s));
  };
  auto integrand = [&](double s) -> cplx {
    const cplx w = running_integral(s) - q.a;
    return std::exp(-w * w / (2.0 * s)) / std::sqrt(kTwoPi * s);
  };
  QuadratureSpec spec;
  spec.abs_tol = 0.5 * tol;
  const double split = 0.01 * q.t;
  cplx value = integrate(integrand, split, q.t, spec).value;

  const double re_a2 = (q.a * q.a).real();
  const double u_lo = 1.0 / split;
  const double u_hi =
      std::max(2.0 * u_lo, 2.0 * (std::log(1.0 / tol) + 20.0) / re_a2);
  auto tail = [&](double u) -> cplx {
    const double s = 1.0 / u;
    return integrand(s) / (u * u);
  };
  value += integrate(tail, u_lo, u_hi, spec).value;
  return value;
}

// Occupation-time estimator E[ |{s <= t : |B(s) - a| < eps}| ] / (2 eps)
// from Euler-discretized Brownian paths; converges to the local time at
// xi = 0 as eps -> 0 and steps -> infinity.
inline Estimate occupation_oracle(double t, double a, double eps,
                                  std::uint64_t paths, std::size_t steps,
                                  std::uint64_t seed, unsigned workers = 1) {
  if (!(a > 0.0)) throw DomainViolation("occupation oracle requires real a > 0");
  if (t == 0.0) return {cplx{0.0, 0.0}, 0.0, paths};
  const double dt = t / static_cast<double>(steps);
  const double sdt = std::sqrt(dt);
  return estimate_mean(paths, seed, workers,
                       [&](std::uint64_t, CounterRng& rng) -> cplx {
                         double b = 0.0;
                         double occupied = 0.0;
                         for (std::size_t k = 0; k < steps; ++k) {
                           b += sdt * rng.next_normal();
                           if (std::abs(b - a) < eps) occupied += dt;
                         }
                         return {occupied / (2.0 * eps), 0.0};
                       });
}

}  // namespace wnc
