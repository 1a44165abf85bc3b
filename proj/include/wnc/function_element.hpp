#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>
#include <variant>
#include <vector>

#include "wnc/errors.hpp"
#include "wnc/hermite.hpp"
#include "wnc/quadrature.hpp"

namespace wnc {

struct FunctionElement;

// 1_{[start,end)}; as an L^2 element the choice of half-open vs closed
// interval is immaterial and the toolkit does not distinguish them.
struct Indicator {
  double start;
  double end;
};

// Finite span sum_k coeffs[k] e_k in the orthonormal Hermite basis.
struct HermiteSpan {
  std::vector<cplx> coeffs;
};

// Finite linear combination with complex weights.
struct Combination {
  std::vector<std::pair<cplx, FunctionElement>> terms;
};

inline constexpr std::size_t kMaxHermiteLength = 1 << 16;

struct FunctionElement {
  std::variant<Indicator, HermiteSpan, Combination> value;

  static FunctionElement indicator(double start, double end) {
    if (!(end > start))
      throw DomainViolation("indicator requires end > start");
    return {Indicator{start, end}};
  }

  static FunctionElement hermite_span(std::vector<cplx> coeffs) {
    if (coeffs.size() > kMaxHermiteLength)
      throw DomainViolation("Hermite span exceeds length bound");
    return {HermiteSpan{std::move(coeffs)}};
  }

  // The k-th orthonormal basis function e_k.
  static FunctionElement basis(std::size_t k) {
    std::vector<cplx> c(k + 1, cplx{0.0, 0.0});
    c[k] = 1.0;
    return hermite_span(std::move(c));
  }

  static FunctionElement zero() { return hermite_span({}); }

  static FunctionElement combination(
      std::vector<std::pair<cplx, FunctionElement>> terms) {
    if (terms.empty()) throw DomainViolation("combination must be non-empty");
    return {Combination{std::move(terms)}};
  }
};

// w * f without touching f's representation.
inline FunctionElement scale(const FunctionElement& f, cplx w) {
  return FunctionElement::combination({{w, f}});
}

inline FunctionElement add(const FunctionElement& f, const FunctionElement& g) {
  return FunctionElement::combination({{1.0, f}, {1.0, g}});
}

inline bool contains_indicator(const FunctionElement& f) {
  return std::visit(
      [](const auto& v) -> bool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Indicator>) {
          return true;
        } else if constexpr (std::is_same_v<T, HermiteSpan>) {
          return false;
        } else {
          for (const auto& [w, e] : v.terms)
            if (contains_indicator(e)) return true;
          return false;
        }
      },
      f.value);
}

inline FunctionElement conjugate(const FunctionElement& f) {
  return std::visit(
      [](const auto& v) -> FunctionElement {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Indicator>) {
          return {v};
        } else if constexpr (std::is_same_v<T, HermiteSpan>) {
          HermiteSpan s = v;
          for (cplx& c : s.coeffs) c = std::conj(c);
          return {std::move(s)};
        } else {
          Combination c;
          c.terms.reserve(v.terms.size());
          for (const auto& [w, e] : v.terms)
            c.terms.emplace_back(std::conj(w), conjugate(e));
          return {std::move(c)};
        }
      },
      f.value);
}

// Pointwise value.  Indicators evaluate to their characteristic function.
inline cplx evaluate(const FunctionElement& f, double t) {
  return std::visit(
      [t](const auto& v) -> cplx {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Indicator>) {
          return (t >= v.start && t < v.end) ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
        } else if constexpr (std::is_same_v<T, HermiteSpan>) {
          const std::vector<double> e = hermite_values(v.coeffs.size(), t);
          cplx sum{0.0, 0.0};
          for (std::size_t k = 0; k < v.coeffs.size(); ++k)
            sum += v.coeffs[k] * e[k];
          return sum;
        } else {
          cplx sum{0.0, 0.0};
          for (const auto& [w, e] : v.terms) sum += w * evaluate(e, t);
          return sum;
        }
      },
      f.value);
}

namespace detail {

// int_s^e sum_k c_k e_k(t) dt by adaptive quadrature.  Tolerance 1e-12 keeps
// the error below every downstream test tolerance.
inline cplx indicator_span_overlap(const Indicator& ind, const HermiteSpan& s) {
  if (s.coeffs.empty()) return {0.0, 0.0};
  QuadratureSpec spec;
  spec.abs_tol = 1e-12;
  auto f = [&s](double t) -> cplx {
    const std::vector<double> e = hermite_values(s.coeffs.size(), t);
    cplx sum{0.0, 0.0};
    for (std::size_t k = 0; k < s.coeffs.size(); ++k) sum += s.coeffs[k] * e[k];
    return sum;
  };
  // The span oscillates on a sqrt(2n) frequency scale; pre-split so the
  // base rule resolves each panel.
  const double osc = std::sqrt(2.0 * static_cast<double>(s.coeffs.size()));
  const std::size_t panels =
      std::max<std::size_t>(1, static_cast<std::size_t>(
                                   (ind.end - ind.start) * osc / 3.0));
  std::vector<double> interior;
  for (std::size_t i = 1; i < panels; ++i)
    interior.push_back(ind.start + (ind.end - ind.start) *
                                       static_cast<double>(i) /
                                       static_cast<double>(panels));
  return integrate_split(f, ind.start, interior, ind.end, spec).value;
}

}  // namespace detail

// Bilinear L^2 pairing (f, g) = int f g (no conjugation); complex
// coefficients extend bilinearly.  The |.|_0 norm conjugates separately.
inline cplx inner_product(const FunctionElement& f, const FunctionElement& g);

namespace detail {

inline cplx inner_product_base(const Indicator& a, const Indicator& b) {
  const double overlap =
      std::min(a.end, b.end) - std::max(a.start, b.start);
  return {std::max(0.0, overlap), 0.0};
}

inline cplx inner_product_base(const HermiteSpan& a, const HermiteSpan& b) {
  cplx sum{0.0, 0.0};
  const std::size_t n = std::min(a.coeffs.size(), b.coeffs.size());
  for (std::size_t k = 0; k < n; ++k) sum += a.coeffs[k] * b.coeffs[k];
  return sum;
}

}  // namespace detail

inline cplx inner_product(const FunctionElement& f, const FunctionElement& g) {
  return std::visit(
      [&](const auto& a, const auto& b) -> cplx {
        using A = std::decay_t<decltype(a)>;
        using B = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<A, Combination>) {
          cplx sum{0.0, 0.0};
          for (const auto& [w, e] : a.terms) sum += w * inner_product(e, g);
          return sum;
        } else if constexpr (std::is_same_v<B, Combination>) {
          cplx sum{0.0, 0.0};
          for (const auto& [w, e] : b.terms) sum += w * inner_product(f, e);
          return sum;
        } else if constexpr (std::is_same_v<A, Indicator> &&
                             std::is_same_v<B, Indicator>) {
          return detail::inner_product_base(a, b);
        } else if constexpr (std::is_same_v<A, HermiteSpan> &&
                             std::is_same_v<B, HermiteSpan>) {
          return detail::inner_product_base(a, b);
        } else if constexpr (std::is_same_v<A, Indicator>) {
          return detail::indicator_span_overlap(a, b);
        } else {
          return detail::indicator_span_overlap(b, a);
        }
      },
      f.value, g.value);
}

struct NormSpec {
  enum class Sign { positive, dual };
  unsigned p = 0;
  Sign sign = Sign::positive;
};

namespace detail {

// Flattens f into a single Hermite coefficient vector; throws if any
// indicator occurs with the flattening weight applied.
inline void accumulate_coeffs(const FunctionElement& f, cplx weight,
                              std::vector<cplx>& out) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Indicator>) {
          throw RaisedNormOfNonSchwartz();
        } else if constexpr (std::is_same_v<T, HermiteSpan>) {
          if (out.size() < v.coeffs.size()) out.resize(v.coeffs.size());
          for (std::size_t k = 0; k < v.coeffs.size(); ++k)
            out[k] += weight * v.coeffs[k];
        } else {
          for (const auto& [w, e] : v.terms)
            accumulate_coeffs(e, weight * w, out);
        }
      },
      f.value);
}

}  // namespace detail

inline std::vector<cplx> hermite_coefficients(const FunctionElement& f) {
  std::vector<cplx> out;
  detail::accumulate_coeffs(f, {1.0, 0.0}, out);
  return out;
}

// |f|_p = |A^p f|_0 realized spectrally: A e_k = (2k+2) e_k.
inline double norm(const FunctionElement& f, const NormSpec& spec = {}) {
  if (spec.p == 0) {
    const cplx sq = inner_product(conjugate(f), f);
    return std::sqrt(std::max(0.0, sq.real()));
  }
  const std::vector<cplx> c = hermite_coefficients(f);
  const double exponent =
      2.0 * static_cast<double>(spec.p) *
      (spec.sign == NormSpec::Sign::positive ? 1.0 : -1.0);
  double sum = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k)
    sum += std::pow(2.0 * static_cast<double>(k) + 2.0, exponent) *
           std::norm(c[k]);
  return std::sqrt(sum);
}

// Open wedge S_alpha = { z : arg z in (-pi/4 + alpha, pi/4 + alpha) }.
struct Sector {
  double alpha = 0.0;

  explicit Sector(double a = 0.0) : alpha(a) {
    if (!(std::abs(a) < 0.25 * M_PI))
      throw DomainViolation("sector angle must satisfy |alpha| < pi/4");
  }

  bool contains(cplx z) const {
    if (z == cplx{0.0, 0.0}) throw ZeroScaling();
    const double phi = std::arg(z);
    return phi > alpha - 0.25 * M_PI && phi < alpha + 0.25 * M_PI;
  }
};

inline bool sector_contains(const Sector& s, cplx z) { return s.contains(z); }

// Equivalent test Re(z^2 e^{-2 i alpha}) > 0 restricted to the half-plane
// Re(z e^{-i alpha}) > 0 (the quadratic form alone cannot tell the wedge
// from its mirror cone).
inline bool sector_sign_test(const Sector& s, cplx z) {
  if (z == cplx{0.0, 0.0}) throw ZeroScaling();
  const cplx rot = z * std::exp(cplx{0.0, -s.alpha});
  return (rot * rot).real() > 0.0 && rot.real() > 0.0;
}

// L^2 projection of 1_{[start,end)} onto the first `count` Hermite
// coefficients; converges to the indicator in L^2 as count grows.
inline FunctionElement project_indicator(double start, double end,
                                         std::size_t count) {
  std::vector<double> ints = hermite_indicator_integrals(count, start, end);
  std::vector<cplx> coeffs(ints.begin(), ints.end());
  return FunctionElement::hermite_span(std::move(coeffs));
}

}  // namespace wnc
