#pragma once

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include "topcorr/correspondence.hpp"
#include "topcorr/cstar/algebra.hpp"

namespace topcorr::cstar {

/// Functions on the bispace with
///   (φ·f)(x) = Σ_{γ∈G^{ρ(x)}} φ(γ) f(γ⁻¹x) Δ^{1/2}(γ, γ⁻¹x) α(γ)
///   (f·ψ)(x) = Σ_{η∈H^{σ(x)}} f(xη) ψ(η⁻¹) β(η)
///   ⟨f,g⟩(η) = Σ_{x∈σ⁻¹(r(η))} conj f(x) g(xη) λ(x)
template <class S>
class HilbertBimodule {
 public:
  using Vec = std::vector<S>;
  using T = ScalarTraits<S>;

  explicit HilbertBimodule(Correspondence c) : c_(std::move(c)), left_(c_.left()), right_(c_.right()) {
    const Groupoid& g = c_.left().g();
    const std::size_t n = c_.size();
    root_delta_.assign(g.arrow_count() * n, S(0));
    for (Index a = 0; a < g.arrow_count(); ++a)
      for (Index p = 0; p < n; ++p)
        if (g.src(a) == c_.space().rho(p)) root_delta_[a * n + p] = T::sqrt(c_.delta(a, p));
    for (const Rational& w : c_.lambda()) lambda_.push_back(T::from(w));
  }

  const Correspondence& correspondence() const { return c_; }
  const ConvolutionAlgebra<S>& left_algebra() const { return left_; }
  const ConvolutionAlgebra<S>& right_algebra() const { return right_; }
  std::size_t dim() const { return c_.size(); }

  Vec dirac(Index p) const {
    Vec v(dim(), S(0));
    v[p] = S(1);
    return v;
  }

  Vec left(const Vec& phi, const Vec& f) const {
    const Bispace& x = c_.space();
    const Groupoid& g = c_.left().g();
    Vec out(dim(), S(0));
    for (Index p = 0; p < dim(); ++p)
      for (Index a : g.range_fiber(x.rho(p))) {
        Index q = x.left_act(g.inv(a), p);
        out[p] += phi[a] * f[q] * root_delta_[a * dim() + q] * left_.alpha(a);
      }
    return out;
  }

  Vec right(const Vec& f, const Vec& psi) const {
    const Bispace& x = c_.space();
    const Groupoid& h = c_.right().g();
    Vec out(dim(), S(0));
    for (Index p = 0; p < dim(); ++p)
      for (Index b : h.range_fiber(x.sigma(p))) out[p] += f[x.right_act(p, b)] * psi[h.inv(b)] * right_.alpha(b);
    return out;
  }

  Vec inner(const Vec& f, const Vec& g) const {
    const Bispace& x = c_.space();
    const Groupoid& h = c_.right().g();
    Vec out(h.arrow_count(), S(0));
    for (Index b = 0; b < h.arrow_count(); ++b)
      for (Index p = 0; p < dim(); ++p)
        if (x.sigma(p) == h.rng(b)) out[b] += T::conj(f[p]) * g[x.right_act(p, b)] * lambda_[p];
    return out;
  }

 private:
  Correspondence c_;
  ConvolutionAlgebra<S> left_, right_;
  std::vector<S> root_delta_, lambda_;
};

/// Dense matrices of a module on a fixed basis: left[a] is f ↦ δ_a·f, right[b] is f ↦ f·δ_b, and
/// ⟨f,g⟩(η) = f^† form[η] g.
struct ModuleMatrices {
  std::size_t dim = 0;
  std::vector<Matrix> left, right, form;
};

inline ModuleMatrices module_matrices(const HilbertBimodule<Complex>& m) {
  const std::size_t n = m.dim();
  const auto& A = m.left_algebra();
  const auto& B = m.right_algebra();
  ModuleMatrices out;
  out.dim = n;
  for (Index a = 0; a < A.dim(); ++a) {
    Matrix l = Matrix::Zero(n, n);
    for (Index p = 0; p < n; ++p) {
      auto col = m.left(A.dirac(a), m.dirac(p));
      for (Index q = 0; q < n; ++q) l(q, p) = col[q];
    }
    out.left.push_back(std::move(l));
  }
  for (Index b = 0; b < B.dim(); ++b) {
    Matrix r = Matrix::Zero(n, n);
    for (Index p = 0; p < n; ++p) {
      auto col = m.right(m.dirac(p), B.dirac(b));
      for (Index q = 0; q < n; ++q) r(q, p) = col[q];
    }
    out.right.push_back(std::move(r));
  }
  out.form.assign(B.dim(), Matrix::Zero(n, n));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      auto v = m.inner(m.dirac(i), m.dirac(j));
      for (Index b = 0; b < B.dim(); ++b) out.form[b](i, j) = v[b];
    }
  return out;
}

/// Compression to the span of the orthonormal columns of v.
inline ModuleMatrices compress(const ModuleMatrices& m, const Matrix& v) {
  ModuleMatrices out;
  out.dim = v.cols();
  Matrix vh = v.adjoint();
  for (const auto& l : m.left) out.left.push_back(vh * l * v);
  for (const auto& r : m.right) out.right.push_back(vh * r * v);
  for (const auto& q : m.form) out.form.push_back(vh * q * v);
  return out;
}

/// Maximum residual and where it occurred.
struct Residual {
  double value = 0.0;
  std::string where;

  void update(double r, const std::string& w) {
    if (where.empty() || r > value) {
      value = r;
      where = w;
    }
  }
  bool within(double tol) const { return value <= tol; }
};

/// |a - b| relative to max(1, |a|, |b|) entrywise.
inline double scaled_difference(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return std::numeric_limits<double>::infinity();
  if (a.size() == 0) return 0.0;
  double scale = std::max({1.0, a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff()});
  return (a - b).cwiseAbs().maxCoeff() / scale;
}

inline Matrix combine(const std::vector<Matrix>& basis, const std::vector<Complex>& coeff, std::size_t rows,
                      std::size_t cols) {
  Matrix out = Matrix::Zero(rows, cols);
  for (Index k = 0; k < basis.size(); ++k)
    if (coeff[k] != Complex(0)) out += coeff[k] * basis[k];
  return out;
}

struct AxiomResiduals {
  Residual left_homomorphism, left_adjointable, right_module, actions_commute, inner_right_linear,
      inner_hermitian, positivity;
  double min_eigenvalue = 0.0;

  double max() const {
    return std::max({left_homomorphism.value, left_adjointable.value, right_module.value, actions_commute.value,
                     inner_right_linear.value, inner_hermitian.value, positivity.value});
  }
};

/// The bimodule identities on Dirac spanning sets, and positivity of the Gram matrix [⟨e_i,e_j⟩]
/// in the regular representation of the right algebra.
inline AxiomResiduals check_module_axioms(const ModuleMatrices& m, const ConvolutionAlgebra<Complex>& a,
                                          const ConvolutionAlgebra<Complex>& b) {
  AxiomResiduals r;
  const std::size_t n = m.dim;
  const Groupoid& G = a.g();
  const Groupoid& H = b.g();
  for (Index x = 0; x < a.dim(); ++x)
    for (Index y = 0; y < a.dim(); ++y) {
      Matrix lhs = combine(m.left, a.convolve(a.dirac(x), a.dirac(y)), n, n);
      r.left_homomorphism.update(scaled_difference(lhs, m.left[x] * m.left[y]), G.arrow_name(x) + "," + G.arrow_name(y));
    }
  for (Index x = 0; x < a.dim(); ++x)
    for (Index e = 0; e < b.dim(); ++e)
      r.left_adjointable.update(scaled_difference(m.left[x].adjoint() * m.form[e], m.form[e] * m.left[G.inv(x)]),
                                G.arrow_name(x) + "," + H.arrow_name(e));
  for (Index x = 0; x < b.dim(); ++x)
    for (Index y = 0; y < b.dim(); ++y) {
      Matrix lhs = combine(m.right, b.convolve(b.dirac(x), b.dirac(y)), n, n);
      r.right_module.update(scaled_difference(lhs, m.right[y] * m.right[x]), H.arrow_name(x) + "," + H.arrow_name(y));
    }
  for (Index x = 0; x < a.dim(); ++x)
    for (Index y = 0; y < b.dim(); ++y)
      r.actions_commute.update(scaled_difference(m.left[x] * m.right[y], m.right[y] * m.left[x]),
                               G.arrow_name(x) + "," + H.arrow_name(y));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      std::vector<Complex> ij(b.dim());
      for (Index e = 0; e < b.dim(); ++e) ij[e] = m.form[e](i, j);
      for (Index y = 0; y < b.dim(); ++y) {
        auto rhs = b.convolve(ij, b.dirac(y));
        Matrix lv(1, b.dim()), rv(1, b.dim());
        for (Index e = 0; e < b.dim(); ++e) {
          lv(0, e) = (m.form[e] * m.right[y])(i, j);
          rv(0, e) = rhs[e];
        }
        r.inner_right_linear.update(scaled_difference(lv, rv), std::to_string(i) + "," + std::to_string(j) + "," + H.arrow_name(y));
      }
    }
  for (Index e = 0; e < b.dim(); ++e)
    r.inner_hermitian.update(scaled_difference(m.form[e], m.form[H.inv(e)].adjoint()), H.arrow_name(e));

  RegularRepresentation reg = regular_representation(b.object());
  const std::size_t k = b.dim();
  Matrix big = Matrix::Zero(n * k, n * k);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      Matrix blk = Matrix::Zero(k, k);
      for (Index e = 0; e < k; ++e)
        if (m.form[e](i, j) != Complex(0)) blk += m.form[e](i, j) * reg.dirac[e];
      big.block(i * k, j * k, k, k) = blk;
    }
  Eigen::VectorXd root(n * k);
  for (Index i = 0; i < n; ++i)
    for (Index e = 0; e < k; ++e) root[i * k + e] = std::sqrt(reg.nu[e]);
  Matrix sym = root.asDiagonal() * big * root.cwiseInverse().asDiagonal();
  r.positivity.update(scaled_difference(sym, sym.adjoint()), "gram_hermitian");
  if (sym.size() > 0) {
    Eigen::SelfAdjointEigenSolver<Matrix> es((sym + sym.adjoint()) / 2.0);
    r.min_eigenvalue = es.eigenvalues().minCoeff();
    if (r.min_eigenvalue < 0) r.positivity.update(-r.min_eigenvalue, "gram_eigenvalue");
  }
  return r;
}

}  // namespace topcorr::cstar
