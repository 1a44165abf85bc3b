#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "wnc/function_element.hpp"
#include "wnc/quadrature.hpp"
#include "wnc/ufunctional.hpp"

namespace wnc {

inline constexpr double kTwoPi = 6.283185307179586;
inline constexpr double kSqrtTwoPi = 2.5066282746310002;

// S-transform of Donsker's delta delta(B(t) - a),
//   (2 pi t)^{-1/2} exp(-(int_0^t xi - a)^2 / (2t)),
// analytic in a so complex offsets are admitted as-is.
inline cplx s_delta(double t, cplx a, const FunctionElement& xi) {
  if (!(t > 0.0)) throw NonpositiveTime();
  const cplx integral = inner_product(xi, FunctionElement::indicator(0.0, t));
  const cplx w = integral - a;
  return std::exp(-w * w / (2.0 * t)) / std::sqrt(kTwoPi * t);
}

// delta(<.,eta> - a) scaled by z inside the sector.
struct DonskerDelta {
  FunctionElement eta;
  cplx a;
  cplx z;
  Sector sector;

  DonskerDelta(FunctionElement eta_, cplx a_, cplx z_ = {1.0, 0.0},
               Sector sector_ = Sector(0.0))
      : eta(std::move(eta_)), a(a_), z(z_), sector(sector_) {
    if (!(norm(eta) > 0.0))
      throw DomainViolation("pairing direction eta must have |eta|_0 > 0");
    if (!sector.contains(z))
      throw SectorViolation("scaling parameter z lies outside the sector");
  }
};

// S sigma_z delta(xi) = (sqrt(2 pi) z |eta|_0)^{-1}
//                       exp(-(a - z (xi, eta))^2 / (2 z^2 |eta|_0^2)).
inline cplx s_scaled_delta(const DonskerDelta& d, const FunctionElement& xi) {
  if (!d.sector.contains(d.z))
    throw SectorViolation("scaling parameter z lies outside the sector");
  const double eta_norm = norm(d.eta);
  const cplx w = d.a - d.z * inner_product(xi, d.eta);
  const cplx z2n2 = 2.0 * d.z * d.z * eta_norm * eta_norm;
  return std::exp(-w * w / z2n2) / (kSqrtTwoPi * d.z * eta_norm);
}

// Regularized approximant: finite cutoff n in the lambda integral and a
// Schwartz stand-in eta_n for the pairing direction.
struct ApproximantSpec {
  unsigned n;
  Sector sector;
  FunctionElement eta_n;

  ApproximantSpec(unsigned n_, Sector sector_, FunctionElement eta_n_)
      : n(n_), sector(sector_), eta_n(std::move(eta_n_)) {
    if (n == 0) throw DomainViolation("approximant cutoff must be positive");
    if (contains_indicator(eta_n))
      throw DomainViolation("eta_n must be a finite Hermite span");
  }
};

// S sigma_z phi_n(xi) after the contour substitution nu = e^{i alpha} lambda:
//   (2 pi)^{-1} e^{-i alpha} int_{-n}^{n}
//     exp(-1/2 z^2 e^{-2 i alpha} nu^2 |eta_n|^2
//         + i e^{-i alpha} nu (z (xi, eta_n) - a)) d nu.
inline cplx s_approximant(const ApproximantSpec& spec, cplx z, cplx a,
                          const FunctionElement& xi,
                          double abs_tol = 1e-10) {
  if (!spec.sector.contains(z))
    throw SectorViolation("z outside the approximant sector");
  const double eta2 = std::pow(norm(spec.eta_n), 2);
  const cplx pairing = inner_product(xi, spec.eta_n);
  const cplx phase = std::exp(cplx{0.0, -spec.sector.alpha});
  const cplx gauss_coef = -0.5 * z * z * phase * phase * eta2;
  const cplx lin_coef = cplx{0.0, 1.0} * phase * (z * pairing - a);
  auto integrand = [&](double nu) -> cplx {
    return std::exp(gauss_coef * nu * nu + lin_coef * nu);
  };
  QuadratureSpec qspec;
  qspec.abs_tol = abs_tol;
  const double n = static_cast<double>(spec.n);
  const QuadratureResult r = integrate_split(integrand, -n, {0.0}, n, qspec);
  return phase / kTwoPi * r.value;
}

// Pointwise form of the approximant (proof of the scaling identity):
//   sin(n e^{-i alpha} (z <omega, eta_n> - a)) / (pi (z <omega, eta_n> - a)).
inline cplx approximant_kernel(const ApproximantSpec& spec, cplx z, cplx a,
                               cplx pairing_value) {
  const cplx w = z * pairing_value - a;
  const cplx arg =
      static_cast<double>(spec.n) * std::exp(cplx{0.0, -spec.sector.alpha}) * w;
  if (std::abs(w) < 1e-12) {
    // sin(cx)/(pi x) -> c/pi as x -> 0
    return static_cast<double>(spec.n) *
           std::exp(cplx{0.0, -spec.sector.alpha}) / M_PI;
  }
  return std::sin(arg) / (M_PI * w);
}

// Threshold q such that the distribution lies in (S)_{-q} for every
// q > ln(K2)/(2 ln 2) + p + 1, given a certified order-two bound in |.|_p.
inline double singularity_order(double K2, unsigned p) {
  if (!(K2 > 0.0)) throw DomainViolation("K2 must be positive");
  return std::log(K2) / (2.0 * std::log(2.0)) + static_cast<double>(p) + 1.0;
}

// Certified growth constants for S sigma_z delta from the singularity-order
// estimate; valid for every s > 0.
inline GrowthCertificate donsker_certificate(double eta_norm, cplx a, cplx z,
                                             double s = 1.0) {
  GrowthCertificate cert;
  const double mod_z = std::abs(z);
  cert.K1 = std::exp((1.0 + 1.0 / (s * s)) * std::norm(a) /
                     (2.0 * eta_norm * eta_norm * mod_z * mod_z)) /
            (kSqrtTwoPi * mod_z * eta_norm);
  cert.K2 = 0.5 * (1.0 + s * s);
  cert.norm = NormSpec{};  // |.|_0
  cert.style = GrowthCertificate::Style::order_two;
  return cert;
}

// Pointwise convergence of z -> sigma_z delta along a sequence in the
// sector, with the uniform constants from the continuity argument.
inline ConvergenceReport scaling_continuity_check(
    const FunctionElement& eta, cplx a, const Sector& sector,
    const std::vector<cplx>& z_sequence,
    const std::vector<FunctionElement>& probes) {
  std::vector<UFunctional> members;
  members.reserve(z_sequence.size());
  double k1_sup = 0.0;
  const double eta_norm = norm(eta);
  for (cplx z : z_sequence) {
    DonskerDelta d(eta, a, z, sector);
    k1_sup = std::max(k1_sup, donsker_certificate(eta_norm, a, z).K1);
    members.push_back(
        {[d](const FunctionElement& xi) { return s_scaled_delta(d, xi); },
         GrowthCertificate{}});
  }
  GrowthCertificate cert;
  cert.K1 = k1_sup;
  cert.K2 = 1.0;  // s = 1 in the family bound
  return check_sequence(members, probes, cert);
}

}  // namespace wnc
