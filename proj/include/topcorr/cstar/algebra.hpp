#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "topcorr/groupoid.hpp"

namespace topcorr::cstar {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Conversions from exact weights into the scalar field of a module.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static Rational from(const Rational& q) { return q; }
  static Rational conj(const Rational& q) { return q; }
  static Rational sqrt(const Rational& q) {
    auto r = exact_sqrt(q);
    if (!r) throw Error("square root of " + to_string(q) + " is irrational");
    return *r;
  }
};

template <>
struct ScalarTraits<Complex> {
  static Complex from(const Rational& q) { return Complex(to_double(q), 0.0); }
  static Complex conj(const Complex& z) { return std::conj(z); }
  static Complex sqrt(const Rational& q) { return Complex(std::sqrt(to_double(q)), 0.0); }
};

/// Functions on the arrows of G with convolution against the Haar system.
template <class S>
class ConvolutionAlgebra {
 public:
  using Element = std::vector<S>;
  using T = ScalarTraits<S>;

  explicit ConvolutionAlgebra(HaarGroupoid obj) : obj_(std::move(obj)) {
    for (const Rational& w : obj_.haar.weight) alpha_.push_back(T::from(w));
  }

  const HaarGroupoid& object() const { return obj_; }
  const Groupoid& g() const { return obj_.g(); }
  std::size_t dim() const { return g().arrow_count(); }

  Element zero() const { return Element(dim(), S(0)); }
  Element dirac(Index a) const {
    Element e = zero();
    e[a] = S(1);
    return e;
  }
  /// Σ_u α(1_u)⁻¹ δ_{1_u}
  Element unit() const {
    Element e = zero();
    for (Index u = 0; u < g().unit_count(); ++u) e[g().identity(u)] = S(1) / alpha_[g().identity(u)];
    return e;
  }

  /// (f*h)(γ) = Σ_{η∈G^{r(γ)}} f(η) h(η⁻¹γ) α(η)
  Element convolve(const Element& f, const Element& h) const {
    Element out = zero();
    for (Index c = 0; c < dim(); ++c)
      for (Index e : g().range_fiber(g().rng(c))) out[c] += f[e] * h[g().compose(g().inv(e), c)] * alpha_[e];
    return out;
  }

  /// f*(γ) = conj f(γ⁻¹)
  Element involute(const Element& f) const {
    Element out(dim());
    for (Index c = 0; c < dim(); ++c) out[c] = T::conj(f[g().inv(c)]);
    return out;
  }

  const S& alpha(Index a) const { return alpha_[a]; }

 private:
  HaarGroupoid obj_;
  std::vector<S> alpha_;
};

/// Left regular representation π(δ_η) on functions on the arrows, and the weight ν(κ) = α(κ⁻¹)
/// that makes it a *-representation.
struct RegularRepresentation {
  std::vector<Matrix> dirac;
  Eigen::VectorXd nu;
};

inline RegularRepresentation regular_representation(const HaarGroupoid& obj) {
  const Groupoid& g = obj.g();
  const std::size_t n = g.arrow_count();
  RegularRepresentation r;
  r.nu.resize(n);
  for (Index k = 0; k < n; ++k) r.nu[k] = to_double(obj.haar.weight[g.inv(k)]);
  for (Index e = 0; e < n; ++e) {
    Matrix m = Matrix::Zero(n, n);
    for (Index k : g.range_fiber(g.src(e))) m(g.compose(e, k), k) = to_double(obj.haar.weight[e]);
    r.dirac.push_back(std::move(m));
  }
  return r;
}

}  // namespace topcorr::cstar
