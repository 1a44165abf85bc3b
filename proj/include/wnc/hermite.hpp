#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace wnc {

// Orthonormal Hermite functions e_k(t) = (2^k k! sqrt(pi))^{-1/2}
// H_k(t) e^{-t^2/2}.  They are the eigenfunctions of the harmonic
// oscillator Hamiltonian -d^2/dt^2 + (t^2 + 1) with eigenvalues 2k + 2.
inline std::vector<double> hermite_values(std::size_t count, double t) {
  std::vector<double> e(count);
  if (count == 0) return e;
  constexpr double pi_quarter = 0.7511255444649425;  // pi^{-1/4}
  e[0] = pi_quarter * std::exp(-0.5 * t * t);
  if (count > 1) e[1] = std::sqrt(2.0) * t * e[0];
  for (std::size_t k = 2; k < count; ++k) {
    const double kd = static_cast<double>(k);
    e[k] = std::sqrt(2.0 / kd) * t * e[k - 1] -
           std::sqrt((kd - 1.0) / kd) * e[k - 2];
  }
  return e;
}

inline double hermite_value(std::size_t k, double t) {
  return hermite_values(k + 1, t)[k];
}

// Integrals I_k = int_a^b e_k(t) dt in closed form.
//
// From e_k' = sqrt(k/2) e_{k-1} - sqrt((k+1)/2) e_{k+1}:
//   I_{k+1} = sqrt(k/(k+1)) I_{k-1} - sqrt(2/(k+1)) (e_k(b) - e_k(a)),
// seeded with the Gaussian error function for I_0 and the exact
// antiderivative of t e^{-t^2/2} for I_1.
inline std::vector<double> hermite_indicator_integrals(std::size_t count,
                                                       double a, double b) {
  std::vector<double> integral(count);
  if (count == 0) return integral;
  constexpr double inv_sqrt2 = 0.7071067811865476;
  constexpr double pi_quarter_pos = 1.3313353638003897;  // pi^{1/4}
  const std::vector<double> ea = hermite_values(count, a);
  const std::vector<double> eb = hermite_values(count, b);
  integral[0] = pi_quarter_pos * inv_sqrt2 *
                (std::erf(b * inv_sqrt2) - std::erf(a * inv_sqrt2));
  if (count > 1)
    integral[1] = std::sqrt(2.0) * 0.7511255444649425 *
                  (std::exp(-0.5 * a * a) - std::exp(-0.5 * b * b));
  for (std::size_t k = 2; k < count; ++k) {
    const double kd = static_cast<double>(k);
    integral[k] = std::sqrt((kd - 1.0) / kd) * integral[k - 2] -
                  std::sqrt(2.0 / kd) * (eb[k - 1] - ea[k - 1]);
  }
  return integral;
}

}  // namespace wnc
