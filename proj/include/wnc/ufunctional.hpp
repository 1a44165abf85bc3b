#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "wnc/function_element.hpp"
#include "wnc/quadrature.hpp"
#include "wnc/rng.hpp"

namespace wnc {

// C(xi) = exp(-1/2 int xi^2), the characteristic functional of the white
// noise measure; also the T-transform of 1.
inline cplx characteristic_functional(const FunctionElement& xi) {
  return std::exp(-0.5 * inner_product(xi, xi));
}

struct GrowthCertificate {
  enum class Style { order_two, minimal_type };
  double K1 = 1.0;
  double K2 = 1.0;
  NormSpec norm;
  Style style = Style::order_two;
};

using Evaluator = std::function<cplx(const FunctionElement&)>;

struct UFunctional {
  Evaluator evaluate;
  GrowthCertificate certificate;

  cplx operator()(const FunctionElement& xi) const { return evaluate(xi); }
};

struct ConvergenceReport {
  double cauchy_max_gap = 0.0;
  std::uint64_t bound_violations = 0;
  bool verdict = false;
};

// S Phi(xi) = C(xi) T Phi(-i xi).
inline cplx s_from_t(const UFunctional& t_transform, const FunctionElement& xi) {
  return characteristic_functional(xi) *
         t_transform(scale(xi, cplx{0.0, -1.0}));
}

inline cplx t_from_s(const UFunctional& s_transform, const FunctionElement& xi) {
  // Inverse of the relation above: T Phi(xi) = C(-i xi)^{-1}... written via
  // S Phi(i xi) = C(i xi) T Phi(xi).
  return s_transform(scale(xi, cplx{0.0, 1.0})) /
         characteristic_functional(scale(xi, cplx{0.0, 1.0}));
}

struct ProbeConfig {
  std::size_t max_span_length = 16;
  double z_mod_min = 0.125;
  double z_mod_max = 8.0;
};

namespace detail {

inline FunctionElement random_hermite_probe(CounterRng& rng,
                                            std::size_t max_len) {
  const std::size_t len =
      1 + static_cast<std::size_t>(rng.next_u64() % max_len);
  std::vector<cplx> c(len);
  for (cplx& v : c) v = {rng.next_normal(), 0.0};
  return FunctionElement::hermite_span(std::move(c));
}

inline cplx random_scaling(CounterRng& rng, const ProbeConfig& cfg) {
  const double mod = cfg.z_mod_min *
                     std::pow(cfg.z_mod_max / cfg.z_mod_min,
                              rng.next_uniform());
  const double phase = 2.0 * M_PI * rng.next_uniform() - M_PI;
  return std::polar(mod, phase);
}

}  // namespace detail

inline const std::vector<double>& minimal_type_epsilons() {
  static const std::vector<double> eps{1.0, 0.1, 0.01};
  return eps;
}

// Samples random Hermite probes xi and scalings z and counts violations of
// the certified bound |F(z xi)| <= K1 exp(K2 |z|^2 |xi|^2).  For the
// minimal-type style the bound is tested with the dual norm |xi|_{-p} at
// every epsilon in minimal_type_epsilons().
inline ConvergenceReport verify_growth_bound(const UFunctional& f,
                                             const GrowthCertificate& cert,
                                             std::uint64_t trials,
                                             std::uint64_t seed,
                                             const ProbeConfig& cfg = {}) {
  ConvergenceReport report;
  for (std::uint64_t i = 0; i < trials; ++i) {
    CounterRng rng(seed, i);
    const FunctionElement xi =
        detail::random_hermite_probe(rng, cfg.max_span_length);
    const cplx z = detail::random_scaling(rng, cfg);
    const double value = std::abs(f(scale(xi, z)));
    if (cert.style == GrowthCertificate::Style::order_two) {
      const double n = norm(xi, cert.norm);
      const double bound =
          cert.K1 * std::exp(cert.K2 * std::norm(z) * n * n);
      if (value > bound) ++report.bound_violations;
    } else {
      NormSpec dual{cert.norm.p, NormSpec::Sign::dual};
      const double n = norm(xi, dual);
      for (double eps : minimal_type_epsilons()) {
        const double bound = cert.K1 * std::exp(eps * std::norm(z) * n * n);
        if (value > bound) ++report.bound_violations;
      }
    }
  }
  report.verdict = report.bound_violations == 0;
  return report;
}

struct SequenceConfig {
  std::size_t monotone_from = 0;   // index beyond which gaps must shrink
  double converged_floor = 1e-13;  // gaps below this count as converged
};

// Pointwise Cauchy test plus a uniform growth bound over a finite prefix of
// a functional sequence.
inline ConvergenceReport check_sequence(const std::vector<UFunctional>& members,
                                        const std::vector<FunctionElement>& probes,
                                        const GrowthCertificate& cert,
                                        const SequenceConfig& cfg = {}) {
  if (members.size() < 3)
    throw DomainViolation("sequence check needs at least 3 members");
  ConvergenceReport report;
  std::vector<std::vector<cplx>> values(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    values[i].reserve(probes.size());
    for (const FunctionElement& xi : probes) {
      const cplx v = members[i](xi);
      values[i].push_back(v);
      const double n = norm(xi, cert.norm);
      if (std::abs(v) > cert.K1 * std::exp(cert.K2 * n * n))
        ++report.bound_violations;
    }
  }
  std::vector<double> gaps(members.size() - 1, 0.0);
  for (std::size_t i = 0; i + 1 < members.size(); ++i)
    for (std::size_t j = 0; j < probes.size(); ++j)
      gaps[i] = std::max(gaps[i], std::abs(values[i + 1][j] - values[i][j]));
  report.cauchy_max_gap = gaps.back();
  bool monotone = true;
  for (std::size_t i = std::max<std::size_t>(cfg.monotone_from, 1);
       i < gaps.size(); ++i)
    if (!(gaps[i] < gaps[i - 1] || gaps[i] <= cfg.converged_floor))
      monotone = false;
  report.verdict = monotone && report.bound_violations == 0;
  return report;
}

// Declared integrability data for a parameter family (recorded, and used
// only for diagnostics; the quadrature itself carries the error control).
struct FamilyCertificate {
  std::function<double(double)> K1;
  double K2_sup = 0.0;
};

// Realizes "intertwine transform and integration": quadrature of
// lambda -> F(lambda, xi) against the measure density over [a, b].
inline cplx integrate_family(
    const std::function<cplx(double, const FunctionElement&)>& f, double a,
    double b, const std::function<double(double)>& density,
    const QuadratureSpec& spec, const FunctionElement& xi) {
  auto integrand = [&](double lambda) -> cplx {
    const double d = density ? density(lambda) : 1.0;
    return d * f(lambda, xi);
  };
  return integrate(integrand, a, b, spec).value;
}

// Fourth-order finite-difference Cauchy-Riemann residual of the complex map
// g at z0, |dg/dx + i dg/dy|; small residual certifies local analyticity.
inline double cauchy_riemann_residual(const std::function<cplx(cplx)>& g,
                                      cplx z0, double h) {
  auto d4 = [&](cplx step) -> cplx {
    return (-g(z0 + 2.0 * step) + 8.0 * g(z0 + step) - 8.0 * g(z0 - step) +
            g(z0 - 2.0 * step)) /
           (12.0 * h);
  };
  const cplx gx = d4(cplx{h, 0.0});
  const cplx gy = d4(cplx{0.0, h});
  return std::abs(gx + cplx{0.0, 1.0} * gy);
}

// Residual of the ray restriction lambda -> F(lambda xi + zeta).
inline double ray_analyticity_residual(const UFunctional& f,
                                       const FunctionElement& xi,
                                       const FunctionElement& zeta,
                                       cplx lambda0, double h = 1e-4) {
  auto g = [&](cplx lambda) -> cplx {
    return f(FunctionElement::combination({{lambda, xi}, {1.0, zeta}}));
  };
  return cauchy_riemann_residual(g, lambda0, h);
}

}  // namespace wnc
