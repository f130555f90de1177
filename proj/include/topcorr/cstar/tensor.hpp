#pragma once

#include <unsupported/Eigen/KroneckerProduct>

#include "topcorr/cstar/module.hpp"

namespace topcorr::cstar {

/// Interior tensor product of m1 (A -> B) and m2 (B -> C), on the basis e_i ⊗ e_j (index i·n2 + j).
struct TensorModule {
  ModuleMatrices algebraic;  // before the quotient
  Matrix basis;              // orthonormal columns spanning the complement of the null space
  std::size_t rank = 0;
  ModuleMatrices quotient;   // compressed to basis
};

/// ⟨e_i⊗e_j, e_k⊗e_l⟩(ζ) = ⟨e_j, ⟨e_i,e_k⟩·e_l⟩(ζ) = Σ_η Q1_η(i,k) (Q2_ζ L2_η)(j,l)
inline TensorModule interior_tensor(const ModuleMatrices& m1, const ModuleMatrices& m2,
                                    const ConvolutionAlgebra<Complex>& right_of_m2, double tol = 1e-9) {
  if (m1.form.size() != m2.left.size())
    throw MismatchError("interior tensor: middle algebras differ in dimension");
  const std::size_t n1 = m1.dim, n2 = m2.dim, n = n1 * n2;
  TensorModule t;
  ModuleMatrices& m = t.algebraic;
  m.dim = n;
  Matrix i1 = Matrix::Identity(n1, n1), i2 = Matrix::Identity(n2, n2);
  for (const auto& l : m1.left) m.left.push_back(Eigen::kroneckerProduct(l, i2).eval());
  for (const auto& r : m2.right) m.right.push_back(Eigen::kroneckerProduct(i1, r).eval());
  for (const auto& q2 : m2.form) {
    Matrix q = Matrix::Zero(n, n);
    for (Index e = 0; e < m1.form.size(); ++e) q += Eigen::kroneckerProduct(m1.form[e], (q2 * m2.left[e]).eval());
    m.form.push_back(std::move(q));
  }
  // Σ_u ⟨v,v⟩(1_u) vanishes exactly on the null space
  const Groupoid& c = right_of_m2.g();
  Matrix s = Matrix::Zero(n, n);
  for (Index u = 0; u < c.unit_count(); ++u) s += m.form[c.identity(u)];
  if (n > 0) {
    Eigen::SelfAdjointEigenSolver<Matrix> es((s + s.adjoint()) / 2.0);
    const auto& ev = es.eigenvalues();
    double cut = tol * std::max(1.0, ev.cwiseAbs().maxCoeff());
    std::vector<Index> keep;
    for (Index k = 0; k < n; ++k)
      if (ev[k] > cut) keep.push_back(k);
    t.basis = Matrix(n, keep.size());
    for (Index k = 0; k < keep.size(); ++k) t.basis.col(k) = es.eigenvectors().col(keep[k]);
  } else {
    t.basis = Matrix(0, 0);
  }
  t.rank = t.basis.cols();
  t.quotient = compress(m, t.basis);
  return t;
}

inline std::size_t numerical_rank(const Matrix& a, double tol = 1e-9) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(a);
  const auto& sv = svd.singularValues();
  double cut = tol * std::max(1.0, sv.maxCoeff());
  std::size_t r = 0;
  for (Index k = 0; k < sv.size(); ++k)
    if (sv[k] > cut) ++r;
  return r;
}

}  // namespace topcorr::cstar
