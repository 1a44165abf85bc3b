#pragma once

#include <cmath>
#include <complex>
#include <cstddef>

#include "wnc/donsker.hpp"
#include "wnc/function_element.hpp"

namespace wnc {

// Arguments of the Jacobi theta function
//   theta(rho, tau) = sum_n exp(pi i n^2 tau + 2 pi i n rho),
// convergent exactly for Im(tau) > 0.
struct ThetaArgs {
  cplx rho;
  cplx tau;

  ThetaArgs(cplx rho_, cplx tau_) : rho(rho_), tau(tau_) {
    if (!(tau.imag() > 0.0))
      throw DivergentTheta("theta function requires Im(tau) > 0");
  }
};

struct ThetaResult {
  cplx value;
  std::size_t truncation;  // summed over |n| <= truncation
};

inline ThetaResult theta(const ThetaArgs& args, double tol = 1e-14) {
  const double decay = M_PI * args.tau.imag();
  const double drift = kTwoPi * std::abs(args.rho.imag());
  // |n|-th term modulus <= exp(-pi n^2 Im tau + 2 pi |n| |Im rho|); past the
  // peak n* = drift / (2 decay) the Gaussian tail takes over.
  const double peak = drift / (2.0 * decay);
  std::size_t n_max = static_cast<std::size_t>(
      std::ceil(peak + std::sqrt((std::log(1.0 / tol) + 2.0) / decay))) + 2;
  cplx sum{1.0, 0.0};  // n = 0 term
  const cplx ipi{0.0, M_PI};
  for (std::size_t n = 1; n <= n_max; ++n) {
    const double nd = static_cast<double>(n);
    const cplx quad = ipi * nd * nd * args.tau;
    const cplx lin = 2.0 * ipi * nd * args.rho;
    sum += std::exp(quad + lin) + std::exp(quad - lin);
  }
  return {sum, n_max};
}

// sum_n sigma_z delta(B(t) - a + n); converges for z in S_0.
struct DeltaSeries {
  cplx z;
  double t;
  cplx a;

  DeltaSeries(cplx z_, double t_, cplx a_) : z(z_), t(t_), a(a_) {
    if (!(t > 0.0)) throw NonpositiveTime();
    const double re_inv_z2 = (1.0 / (z * z)).real();
    if (!(re_inv_z2 > 0.0) || !Sector(0.0).contains(z))
      throw DivergentTheta(
          "delta series requires z in S_0 (Re(1/z^2) > 0); "
          "the series does not converge otherwise");
  }
};

// Theta-form S-transform:
//   S sigma_z delta(xi) * theta((i / 2 pi t z)(int_0^t xi - a/z),
//                               i / (2 pi t z^2)).
// The rho argument carries the extra 1/z so that the theta form matches the
// defining sum term by term; completing the square in
// exp(-((a - n) - z int xi)^2 / (2 t z^2)) puts the linear-in-n coefficient
// at (a - z int xi) / (t z^2), not (a/z - int xi) / t.
inline cplx s_series(const DeltaSeries& d, const FunctionElement& xi,
                     double tol = 1e-14) {
  const FunctionElement eta = FunctionElement::indicator(0.0, d.t);
  const DonskerDelta delta(eta, d.a, d.z, Sector(0.0));
  const cplx integral = inner_product(xi, eta);
  const cplx i_unit{0.0, 1.0};
  const ThetaArgs args(
      i_unit / (kTwoPi * d.t * d.z) * (integral - d.a / d.z),
      i_unit / (kTwoPi * d.t * d.z * d.z));
  return s_scaled_delta(delta, xi) * theta(args, tol).value;
}

// Finite partial sum sum_{n=-N}^{N}; defined for any sector z, including
// scalings for which the infinite series diverges.
inline cplx partial_sum(cplx z, double t, cplx a, const Sector& sector,
                        std::size_t N, const FunctionElement& xi) {
  if (!(t > 0.0)) throw NonpositiveTime();
  const FunctionElement eta = FunctionElement::indicator(0.0, t);
  const cplx z_pairing = z * inner_product(xi, eta);
  const cplx prefactor = 1.0 / (z * std::sqrt(kTwoPi * t));
  if (!sector.contains(z))
    throw SectorViolation("partial sum: z outside the given sector");
  cplx sum{0.0, 0.0};
  for (std::ptrdiff_t n = -static_cast<std::ptrdiff_t>(N);
       n <= static_cast<std::ptrdiff_t>(N); ++n) {
    const cplx w = a - static_cast<double>(n) - z_pairing;
    sum += std::exp(-w * w / (2.0 * t * z * z));
  }
  return prefactor * sum;
}

// Divergence diagnosis for the infinite series.  The |n|-th term modulus
// behaves like exp(-decay_rate n^2); non-positive decay means the partial
// sums grow without bound.
struct SeriesDiagnosis {
  bool divergent;
  double decay_rate;
};

inline SeriesDiagnosis diagnose_series(cplx z, double t) {
  if (!(t > 0.0)) throw NonpositiveTime();
  if (z == cplx{0.0, 0.0}) throw ZeroScaling();
  const double rate = (1.0 / (z * z)).real() / (2.0 * t);
  // roundoff guard: on the sector boundary Re(1/z^2) is an exact zero that
  // floating point can place on either side
  const double floor = 1e-12 / (2.0 * t * std::norm(z));
  return {!(rate > floor), rate};
}

}  // namespace wnc
