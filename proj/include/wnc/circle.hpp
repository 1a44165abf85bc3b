#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <vector>

#include "wnc/function_element.hpp"
#include "wnc/series.hpp"
#include "wnc/ufunctional.hpp"

namespace wnc {

inline constexpr int kMaxPacketMode = 512;

// Smeared final state F(phi) = sum_l a_l e^{i l phi} with the summability
// witness s recorded for the bound constants.
struct WavePacket {
  std::map<int, cplx> coeffs;
  double s = 1.0;

  WavePacket(std::map<int, cplx> coeffs_, double s_ = 1.0)
      : coeffs(std::move(coeffs_)), s(s_) {
    if (!(s > 0.0)) throw DomainViolation("summability witness s must be > 0");
    for (const auto& [l, a] : coeffs)
      if (l < -kMaxPacketMode || l > kMaxPacketMode)
        throw DomainViolation("wave packet mode index out of range");
  }

  double summability() const {
    double sum = 0.0;
    for (const auto& [l, a] : coeffs)
      sum += std::abs(a) * std::exp(0.5 * s * s * static_cast<double>(l) *
                                    static_cast<double>(l));
    return sum;
  }
};

struct CircleState {
  double phi0;
  double t;
  WavePacket packet;

  CircleState(double phi0_, double t_, WavePacket packet_)
      : phi0(phi0_), t(t_), packet(std::move(packet_)) {
    if (!(t >= 0.0)) throw NonpositiveTime();
  }
};

// T I_0(xi) = exp(-(i/2) int xi^2), the free Feynman integrand; unimodular
// for real xi.
inline cplx t_free_integrand(const FunctionElement& xi) {
  return std::exp(cplx{0.0, -0.5} * inner_product(xi, xi));
}

// T I(xi) = e^{-(i/2) int xi^2} sum_l a_l
//             exp(-(i/2) l^2 t + i l (phi0 - int_0^t xi)).
inline cplx t_circle(const CircleState& state, const FunctionElement& xi) {
  const cplx integral =
      state.t > 0.0
          ? inner_product(xi, FunctionElement::indicator(0.0, state.t))
          : cplx{0.0, 0.0};
  cplx sum{0.0, 0.0};
  for (const auto& [l, a] : state.packet.coeffs) {
    const double ld = static_cast<double>(l);
    sum += a * std::exp(cplx{0.0, -0.5} * ld * ld * state.t +
                        cplx{0.0, 1.0} * ld * (state.phi0 - integral));
  }
  return t_free_integrand(xi) * sum;
}

// Uniform bound |T I(xi)| <= (sum |a_l| e^{s^2 l^2 / 2}) e^{(1 + 1/s^2) |xi|_0^2 / 2}.
inline double t_circle_bound(const CircleState& state,
                             const FunctionElement& xi) {
  const double n0 = norm(xi);
  const double s = state.packet.s;
  return state.packet.summability() *
         std::exp(0.5 * (1.0 + 1.0 / (s * s)) * n0 * n0);
}

// <<I, 1>> = T I(0) = sum_l a_l exp(-(i/2) l^2 t + i l phi0); t = 0 is
// admitted as the closed-form limit (the sum is finite).
inline cplx feynman_integral(const CircleState& state) {
  cplx sum{0.0, 0.0};
  for (const auto& [l, a] : state.packet.coeffs) {
    const double ld = static_cast<double>(l);
    sum += a * std::exp(cplx{0.0, 1.0} * (ld * state.phi0 -
                                          0.5 * ld * ld * state.t));
  }
  return sum;
}

// Max grid residual of i d_t psi + (1/2) d^2_phi psi for
// psi(phi0, t) = feynman_integral, via centered differences of step h.
inline double schroedinger_residual(const WavePacket& packet,
                                    const std::vector<double>& phi0_grid,
                                    const std::vector<double>& t_grid,
                                    double h) {
  auto psi = [&](double phi0, double t) -> cplx {
    return feynman_integral(CircleState(phi0, t, packet));
  };
  double worst = 0.0;
  for (double t : t_grid)
    for (double phi0 : phi0_grid) {
      const cplx dt = (psi(phi0, t + h) - psi(phi0, t - h)) / (2.0 * h);
      const cplx dphi2 = (psi(phi0 + h, t) - 2.0 * psi(phi0, t) +
                          psi(phi0 - h, t)) /
                         (h * h);
      worst = std::max(worst, std::abs(cplx{0.0, 1.0} * dt + 0.5 * dphi2));
    }
  return worst;
}

// Diagnosis of the strictly localized endpoint: the formal theta arguments
// of the winding series at z = sqrt(i) leave the convergence domain, while
// the same construction at z = 1 stays inside it.
struct DivergenceReport {
  cplx formal_tau;          // theta second argument at z = sqrt(i)
  bool divergent;           // true when Im(formal_tau) <= 0
  double partial_sum_rate;  // term decay exponent; <= 0 means no decay
  bool z1_converges;        // control: the unscaled series is fine
};

inline cplx sqrt_i() { return std::polar(1.0, 0.25 * M_PI); }

inline DivergenceReport localized_divergence_check(double t, double phi1,
                                                   double phi0) {
  if (!(t > 0.0)) throw NonpositiveTime();
  (void)phi1;
  (void)phi0;
  DivergenceReport report{};
  const cplx z = sqrt_i();
  // tau-analogue of the winding series: i / (2 pi t' z^2) with the shifts
  // rescaled to unit steps; at z^2 = i this is real.
  report.formal_tau = cplx{0.0, 1.0} / (kTwoPi * t * z * z);
  // roundoff guard, as in diagnose_series: the boundary value is exactly real
  report.divergent = !(report.formal_tau.imag() > 1e-12 / (kTwoPi * t));
  report.partial_sum_rate = diagnose_series(z, t).decay_rate;
  bool ok = true;
  try {
    ThetaArgs probe(cplx{0.0, 0.0}, cplx{0.0, 1.0} / (kTwoPi * t));
    (void)probe;
  } catch (const DivergentTheta&) {
    ok = false;
  }
  report.z1_converges = ok;
  return report;
}

}  // namespace wnc
