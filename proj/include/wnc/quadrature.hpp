#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "wnc/errors.hpp"

namespace wnc {

using cplx = std::complex<double>;

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1,1].
// Odd entries of xk are the Gauss abscissae.
inline constexpr double kKronrodX[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kKronrodW[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double kGaussW[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

}  // namespace detail

struct QuadratureResult {
  cplx value;
  double error_estimate;
  std::size_t evaluations;
};

struct QuadratureSpec {
  double abs_tol = 1e-10;
  std::size_t max_intervals = 4096;
};

// Gauss-Kronrod 7/15 on [a,b]; returns the Kronrod value and the
// |K15 - G7| error estimate.
template <class F>
QuadratureResult gk15(F&& f, double a, double b) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  cplx kronrod{0.0, 0.0};
  cplx gauss{0.0, 0.0};
  for (int i = 0; i < 8; ++i) {
    const double dx = half * detail::kKronrodX[i];
    const cplx fp = f(mid + dx);
    const cplx fm = (i == 7) ? fp : cplx(f(mid - dx));
    const cplx sum = (i == 7) ? fp : fp + fm;
    kronrod += detail::kKronrodW[i] * sum;
    if (i % 2 == 1) gauss += detail::kGaussW[i / 2] * sum;
  }
  kronrod *= half;
  gauss *= half;
  return {kronrod, std::abs(kronrod - gauss), 15};
}

// Globally adaptive bisection driven by the GK15 error estimate.
template <class F>
QuadratureResult integrate(F&& f, double a, double b,
                           const QuadratureSpec& spec = {}) {
  struct Cell {
    double a, b;
    cplx value;
    double err;
  };
  QuadratureResult first = gk15(f, a, b);
  std::vector<Cell> cells{{a, b, first.value, first.error_estimate}};
  std::size_t evals = first.evaluations;
  while (true) {
    double total_err = 0.0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      total_err += cells[i].err;
      if (cells[i].err > cells[worst].err) worst = i;
    }
    if (total_err <= spec.abs_tol) break;
    if (cells.size() >= spec.max_intervals)
      throw QuadratureFailure("adaptive quadrature: interval budget exhausted "
                              "with error estimate above tolerance");
    const Cell cell = cells[worst];
    const double m = 0.5 * (cell.a + cell.b);
    QuadratureResult left = gk15(f, cell.a, m);
    QuadratureResult right = gk15(f, m, cell.b);
    evals += left.evaluations + right.evaluations;
    cells[worst] = {cell.a, m, left.value, left.error_estimate};
    cells.push_back({m, cell.b, right.value, right.error_estimate});
  }
  cplx value{0.0, 0.0};
  double err = 0.0;
  for (const Cell& c : cells) {
    value += c.value;
    err += c.err;
  }
  return {value, err, evals};
}

// Convenience overload splitting at interior points (e.g. at an oscillation
// center or a kink) before adapting.
template <class F>
QuadratureResult integrate_split(F&& f, double a,
                                 const std::vector<double>& interior, double b,
                                 const QuadratureSpec& spec = {}) {
  std::vector<double> pts;
  pts.push_back(a);
  for (double p : interior)
    if (p > a && p < b) pts.push_back(p);
  pts.push_back(b);
  QuadratureSpec part = spec;
  part.abs_tol = spec.abs_tol / static_cast<double>(pts.size() - 1);
  QuadratureResult out{{0.0, 0.0}, 0.0, 0};
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    QuadratureResult r = integrate(f, pts[i], pts[i + 1], part);
    out.value += r.value;
    out.error_estimate += r.error_estimate;
    out.evaluations += r.evaluations;
  }
  return out;
}

}  // namespace wnc
