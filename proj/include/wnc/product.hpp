#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "wnc/donsker.hpp"
#include "wnc/function_element.hpp"
#include "wnc/quadrature.hpp"

namespace wnc {

// Dense symmetric positive definite matrix of pairwise inner products.
class GramMatrix {
 public:
  explicit GramMatrix(const std::vector<FunctionElement>& family) {
    if (family.empty()) throw DomainViolation("gram: family must be non-empty");
    n_ = family.size();
    m_.assign(n_ * n_, 0.0);
    for (std::size_t k = 0; k < n_; ++k)
      for (std::size_t l = k; l < n_; ++l) {
        const cplx v = inner_product(family[k], family[l]);
        m_[k * n_ + l] = m_[l * n_ + k] = v.real();
      }
    factorize();
  }

  std::size_t size() const { return n_; }
  double entry(std::size_t k, std::size_t l) const { return m_[k * n_ + l]; }
  double determinant() const { return det_; }
  double condition() const { return cond_; }
  double min_eigenvalue() const { return eig_min_; }

  // Lower-triangular Cholesky factor entry.
  double cholesky(std::size_t k, std::size_t l) const { return l_[k * n_ + l]; }

  // Solves M x = b for complex b through the Cholesky factor.
  std::vector<cplx> solve(const std::vector<cplx>& b) const {
    std::vector<cplx> y(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      cplx s = b[i];
      for (std::size_t j = 0; j < i; ++j) s -= l_[i * n_ + j] * y[j];
      y[i] = s / l_[i * n_ + i];
    }
    std::vector<cplx> x(n_);
    for (std::size_t ii = n_; ii-- > 0;) {
      cplx s = y[ii];
      for (std::size_t j = ii + 1; j < n_; ++j) s -= l_[j * n_ + ii] * x[j];
      x[ii] = s / l_[ii * n_ + ii];
    }
    return x;
  }

  // Eigenvalues by cyclic Jacobi rotations (the matrices here are tiny).
  std::vector<double> eigenvalues() const {
    std::vector<double> a = m_;
    const std::size_t n = n_;
    for (int sweep = 0; sweep < 64; ++sweep) {
      double off = 0.0;
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q) off += a[p * n + q] * a[p * n + q];
      if (off < 1e-30) break;
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q) {
          const double apq = a[p * n + q];
          if (std::abs(apq) < 1e-300) continue;
          const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
          const double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          const double c = 1.0 / std::sqrt(t * t + 1.0);
          const double s = t * c;
          for (std::size_t i = 0; i < n; ++i) {
            const double aip = a[i * n + p];
            const double aiq = a[i * n + q];
            a[i * n + p] = c * aip - s * aiq;
            a[i * n + q] = s * aip + c * aiq;
          }
          for (std::size_t i = 0; i < n; ++i) {
            const double api = a[p * n + i];
            const double aqi = a[q * n + i];
            a[p * n + i] = c * api - s * aqi;
            a[q * n + i] = s * api + c * aqi;
          }
        }
    }
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = a[i * n + i];
    return eig;
  }

 private:
  void factorize() {
    const std::vector<double> eig = eigenvalues();
    eig_min_ = eig[0];
    double eig_max = eig[0];
    for (double e : eig) {
      eig_min_ = std::min(eig_min_, e);
      eig_max = std::max(eig_max, e);
    }
    if (!(eig_min_ > 0.0) || eig_max / eig_min_ > 1e12)
      throw SingularGram("gram matrix is numerically singular "
                         "(factors not linearly independent)");
    cond_ = eig_max / eig_min_;
    l_.assign(n_ * n_, 0.0);
    det_ = 1.0;
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        double s = m_[i * n_ + j];
        for (std::size_t k = 0; k < j; ++k) s -= l_[i * n_ + k] * l_[j * n_ + k];
        if (i == j) {
          if (!(s > 0.0)) throw SingularGram("cholesky breakdown");
          l_[i * n_ + i] = std::sqrt(s);
          det_ *= s;
        } else {
          l_[i * n_ + j] = s / l_[j * n_ + j];
        }
      }
    }
  }

  std::size_t n_ = 0;
  std::vector<double> m_;
  std::vector<double> l_;
  double det_ = 0.0;
  double cond_ = 0.0;
  double eig_min_ = 0.0;
};

inline GramMatrix gram(const std::vector<FunctionElement>& family) {
  return GramMatrix(family);
}

// prod_j sigma_z delta(<., f_j> - a_j) with a shared scaling z.
struct DeltaProduct {
  cplx z;
  std::vector<std::pair<FunctionElement, cplx>> factors;
  Sector sector;
  GramMatrix matrix;

  DeltaProduct(cplx z_, std::vector<std::pair<FunctionElement, cplx>> factors_,
               Sector sector_ = Sector(0.0))
      : z(z_),
        factors(std::move(factors_)),
        sector(sector_),
        matrix(directions(factors)) {
    if (!sector.contains(z))
      throw SectorViolation("product scaling z outside the sector");
  }

  static std::vector<FunctionElement> directions(
      const std::vector<std::pair<FunctionElement, cplx>>& fs) {
    if (fs.empty()) throw DomainViolation("product needs at least one factor");
    std::vector<FunctionElement> d;
    d.reserve(fs.size());
    for (const auto& [f, a] : fs) d.push_back(f);
    return d;
  }
};

// S-transform of the product,
//   ((2 pi z^2)^n det M)^{-1/2} exp(-1/2 v M^{-1} v),
//   v = (f, xi) - a / z.
// The branch of the prefactor is fixed by (z^2)^{-n/2} := z^{-n}, which
// reduces to the single-delta 1/z at n = 1 and is continuous on the sector.
inline cplx s_product(const DeltaProduct& p, const FunctionElement& xi) {
  if (!p.sector.contains(p.z))
    throw SectorViolation("product scaling z outside the sector");
  const std::size_t n = p.factors.size();
  std::vector<cplx> v(n);
  for (std::size_t j = 0; j < n; ++j)
    v[j] = inner_product(p.factors[j].first, xi) - p.factors[j].second / p.z;
  const std::vector<cplx> y = p.matrix.solve(v);
  cplx quad{0.0, 0.0};
  for (std::size_t j = 0; j < n; ++j) quad += v[j] * y[j];
  const cplx prefactor =
      std::pow(p.z, -static_cast<double>(n)) /
      std::sqrt(std::pow(kTwoPi, static_cast<double>(n)) *
                p.matrix.determinant());
  return prefactor * std::exp(-0.5 * quad);
}

namespace detail {

// Iterated adaptive quadrature of a Gaussian-type integrand over [-R, R]^n.
template <class F>
cplx iterated_box_integral(const F& f, std::size_t n, double radius,
                           double abs_tol, std::vector<double>& point,
                           std::size_t level) {
  QuadratureSpec spec;
  spec.abs_tol = abs_tol;
  auto slice = [&](double nu) -> cplx {
    point[level] = nu;
    if (level + 1 == n) return f(point);
    return iterated_box_integral(f, n, radius, abs_tol / (2.0 * radius), point,
                                 level + 1);
  };
  return integrate_split(slice, -radius, {0.0}, radius, spec).value;
}

}  // namespace detail

// Independent route to the product transform: the n-dimensional contour
// integral from the derivation of the product formula, evaluated by
// iterated adaptive quadrature, converted from T to S afterwards.
inline cplx t_product_oracle(cplx z, double alpha,
                             const std::vector<std::pair<FunctionElement, cplx>>& factors,
                             const FunctionElement& xi,
                             double abs_tol = 1e-9) {
  const std::size_t n = factors.size();
  if (n == 0 || n > 3)
    throw DomainViolation("quadrature oracle supports 1 <= n <= 3 factors");
  const cplx phase = std::exp(cplx{0.0, -alpha});
  const cplx decay_coef = z * z * phase * phase;
  if (!(decay_coef.real() > 0.0))
    throw QuadratureFailure("rotated Gaussian integral does not converge: "
                            "Re(z^2 e^{-2 i alpha}) <= 0");
  const GramMatrix m = gram(DeltaProduct::directions(factors));
  std::vector<cplx> fxi(n);
  cplx amax{0.0, 0.0};
  for (std::size_t j = 0; j < n; ++j) {
    fxi[j] = inner_product(factors[j].first, xi);
    if (std::abs(factors[j].second) > std::abs(amax)) amax = factors[j].second;
  }
  const cplx xi2 = inner_product(xi, xi);
  // Truncation radius from the quadratic decay rate and the linear growth.
  const double c = 0.5 * decay_coef.real() * m.min_eigenvalue();
  double lin = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    lin += std::abs(z) * std::abs(fxi[j]) + std::abs(factors[j].second);
  const double log_margin = std::log(1.0 / abs_tol) + 12.0;
  const double radius =
      (lin + std::sqrt(lin * lin + 4.0 * c * log_margin)) / (2.0 * c) + 2.0;

  auto integrand = [&](const std::vector<double>& nu) -> cplx {
    cplx quad{0.0, 0.0};
    cplx linear{0.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t l = 0; l < n; ++l)
        quad += nu[k] * nu[l] * m.entry(k, l);
      linear += nu[k] * (z * phase * fxi[k] +
                         cplx{0.0, 1.0} * phase * factors[k].second);
    }
    return std::exp(-0.5 * decay_coef * quad - linear - 0.5 * xi2);
  };
  std::vector<double> point(n, 0.0);
  const cplx box =
      detail::iterated_box_integral(integrand, n, radius, abs_tol, point, 0);
  return std::pow(phase, static_cast<double>(n)) /
         std::pow(kTwoPi, static_cast<double>(n)) * box;
}

inline cplx s_product_oracle(const DeltaProduct& p, const FunctionElement& xi,
                             double abs_tol = 1e-9) {
  // S Phi(xi) = C(xi) T Phi(-i xi)
  const FunctionElement rotated = scale(xi, cplx{0.0, -1.0});
  return characteristic_functional(xi) *
         t_product_oracle(p.z, p.sector.alpha, p.factors, rotated, abs_tol);
}

}  // namespace wnc
