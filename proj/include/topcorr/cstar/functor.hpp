#pragma once

#include "topcorr/bicategory.hpp"
#include "topcorr/cstar/tensor.hpp"

namespace topcorr::cstar {

/// The complex module of a correspondence together with its two algebras.
struct BuiltModule {
  HilbertBimodule<Complex> module;
  ModuleMatrices matrices;
};

inline BuiltModule build_module(const Correspondence& c) {
  HilbertBimodule<Complex> m(c);
  ModuleMatrices mm = module_matrices(m);
  return BuiltModule{std::move(m), std::move(mm)};
}

/// Φ(f⊗g)([x,y]) = Σ_{η∈H^{σ(x)}} f(xη) g(η⁻¹y) b^{-1/2}(xη, η⁻¹y) β(η), evaluated from the representative z.
inline Eigen::RowVectorXcd phi_row(const Composite& c, Index z) {
  const Bispace& X = c.first.space();
  const Bispace& Y = c.second.space();
  const HaarGroupoid& h = c.first.right();
  const std::size_t n2 = Y.size();
  Eigen::RowVectorXcd row = Eigen::RowVectorXcd::Zero(X.size() * n2);
  auto [x, y] = c.fibre.pairs[z];
  for (Index e : h.g().range_fiber(X.sigma(x))) {
    Index x0 = X.right_act(x, e);
    Index y0 = Y.left_act(h.g().inv(e), y);
    Index z0 = c.fibre.find(x0, y0);
    row[x0 * n2 + y0] += to_double(h.haar.weight[e]) / std::sqrt(to_double(c.cochain[z0]));
  }
  return row;
}

struct PhiReport {
  Matrix phi;  // |Ω| × (n1·n2)
  Residual well_defined, isometry, left, right, quotient_unitary;
  std::size_t omega = 0, tensor_rank = 0, image_rank = 0;

  double max() const {
    return std::max({well_defined.value, isometry.value, left.value, right.value, quotient_unitary.value});
  }
  bool onto() const { return image_rank == omega && tensor_rank == omega; }
};

inline Matrix phi_matrix(const Composite& c) {
  Matrix phi(c.quotient.size(), c.first.size() * c.second.size());
  for (Index w = 0; w < c.quotient.size(); ++w) phi.row(w) = phi_row(c, c.quotient.rep(w));
  return phi;
}

/// Φ: H(X)⊗H(Y) -> H(X∘Y) preserves inner products, is onto, and intertwines both actions.
inline PhiReport check_phi(const Composite& c, double tol = 1e-9) {
  PhiReport r;
  BuiltModule mx = build_module(c.first), my = build_module(c.second), mz = build_module(c.result);
  TensorModule t = interior_tensor(mx.matrices, my.matrices, my.module.right_algebra(), tol);
  r.phi = phi_matrix(c);
  r.omega = c.quotient.size();
  r.tensor_rank = t.rank;
  r.image_rank = numerical_rank(r.phi, tol);
  for (Index z = 0; z < c.fibre.size(); ++z) {
    Index w = c.quotient.cls[z];
    r.well_defined.update(scaled_difference(phi_row(c, z), r.phi.row(w)), c.result.space().name(w));
  }
  const Groupoid& gl = c.first.left().g();
  const Groupoid& gr = c.second.right().g();
  Matrix ph = r.phi.adjoint();
  for (Index e = 0; e < gr.arrow_count(); ++e)
    r.isometry.update(scaled_difference(ph * mz.matrices.form[e] * r.phi, t.algebraic.form[e]), gr.arrow_name(e));
  for (Index a = 0; a < gl.arrow_count(); ++a)
    r.left.update(scaled_difference(r.phi * t.algebraic.left[a], mz.matrices.left[a] * r.phi), gl.arrow_name(a));
  for (Index e = 0; e < gr.arrow_count(); ++e)
    r.right.update(scaled_difference(r.phi * t.algebraic.right[e], mz.matrices.right[e] * r.phi), gr.arrow_name(e));
  // on the quotient Φ is a square matrix carrying the scalar Gram form to that of X∘Y
  Matrix pq = r.phi * t.basis;
  if (pq.rows() == pq.cols()) {
    r.quotient_unitary.update(numerical_rank(pq, tol) == pq.rows() ? 0.0 : 1.0, "invertible");
  } else {
    r.quotient_unitary.update(1.0, "dimension");
  }
  return r;
}

/// T(f)(y) = f(t⁻¹y) · (dt_*λ/dτ)^{1/2}(y), with T*(g)(x) = g(tx) · (dτ/dt_*λ)^{1/2}(tx).
struct InducedUnitary {
  Matrix t, t_adj;
};

inline InducedUnitary unitary_from_iso(const CorrIso& iso) {
  const std::size_t n = iso.map.size();
  InducedUnitary u{Matrix::Zero(n, n), Matrix::Zero(n, n)};
  for (Index p = 0; p < n; ++p) {
    Index q = iso.map[p];
    double m = to_double(iso.derivative[q]);
    u.t(q, p) = 1.0 / std::sqrt(m);
    u.t_adj(p, q) = std::sqrt(m);
  }
  return u;
}

struct UnitaryReport {
  Residual adjoint, unitary, isometry, left, right;
  double max() const { return std::max({adjoint.value, unitary.value, isometry.value, left.value, right.value}); }
};

inline UnitaryReport check_unitary(const CorrIso& iso, const InducedUnitary& u) {
  UnitaryReport r;
  BuiltModule ms = build_module(iso.source), mt = build_module(iso.target);
  const std::size_t n = iso.map.size();
  Matrix id = Matrix::Identity(n, n);
  r.unitary.update(scaled_difference(u.t_adj * u.t, id), "T*T");
  r.unitary.update(std::max(r.unitary.value, scaled_difference(u.t * u.t_adj, id)), "TT*");
  const Groupoid& g = iso.source.left().g();
  const Groupoid& h = iso.source.right().g();
  for (Index e = 0; e < h.arrow_count(); ++e) {
    r.adjoint.update(scaled_difference(u.t.adjoint() * mt.matrices.form[e], ms.matrices.form[e] * u.t_adj),
                     h.arrow_name(e));
    r.isometry.update(scaled_difference(u.t.adjoint() * mt.matrices.form[e] * u.t, ms.matrices.form[e]),
                      h.arrow_name(e));
    r.right.update(scaled_difference(u.t * ms.matrices.right[e], mt.matrices.right[e] * u.t), h.arrow_name(e));
  }
  for (Index a = 0; a < g.arrow_count(); ++a)
    r.left.update(scaled_difference(u.t * ms.matrices.left[a], mt.matrices.left[a] * u.t), g.arrow_name(a));
  return r;
}

/// Both routes H(X1)⊗H(X2)⊗H(X3) -> H(X1∘(X2∘X3)):
///   T_a ∘ Φ(X12, X3) ∘ (Φ(X1,X2) ⊗ 1)   and   Φ(X1, X23) ∘ (1 ⊗ Φ(X2,X3)).
inline Residual check_functor_pentagon(Bicategory& bc, const Correspondence& x1, const Correspondence& x2,
                                       const Correspondence& x3) {
  const Composite& c12 = bc.compose(x1, x2);
  const Composite& c23 = bc.compose(x2, x3);
  const Composite& c12_3 = bc.compose(c12.result, x3);
  const Composite& c1_23 = bc.compose(x1, c23.result);
  InducedUnitary ta = unitary_from_iso(bc.associator(x1, x2, x3).iso);
  Matrix i1 = Matrix::Identity(x1.size(), x1.size()), i3 = Matrix::Identity(x3.size(), x3.size());
  Matrix lhs = ta.t * phi_matrix(c12_3) * Eigen::kroneckerProduct(phi_matrix(c12), i3).eval();
  Matrix rhs = phi_matrix(c1_23) * Eigen::kroneckerProduct(i1, phi_matrix(c23)).eval();
  Residual r;
  r.update(scaled_difference(lhs, rhs), x1.name() + "," + x2.name() + "," + x3.name());
  return r;
}

/// T_l ∘ Φ(id_G, X) equals f⊗g ↦ f·g, and T_r ∘ Φ(X, id_H) equals f⊗ψ ↦ f·ψ.
struct IdentityCoherence {
  Residual left, right;
  double max() const { return std::max(left.value, right.value); }
};

inline IdentityCoherence check_identity_coherence(Bicategory& bc, const Correspondence& x) {
  IdentityCoherence r;
  BuiltModule mx = build_module(x);
  const std::size_t n = x.size();
  const Groupoid& g = x.left().g();
  const Groupoid& h = x.right().g();

  const Composite& cl = bc.compose(bc.identity(x.left()), x);
  Matrix pairing_l(n, g.arrow_count() * n);
  for (Index a = 0; a < g.arrow_count(); ++a)
    for (Index p = 0; p < n; ++p) pairing_l.col(a * n + p) = mx.matrices.left[a].col(p);
  Matrix lhs_l = unitary_from_iso(bc.left_unitor(x).iso).t * phi_matrix(cl);
  r.left.update(scaled_difference(lhs_l, pairing_l), x.name());

  const Composite& cr = bc.compose(x, bc.identity(x.right()));
  Matrix pairing_r(n, n * h.arrow_count());
  for (Index p = 0; p < n; ++p)
    for (Index e = 0; e < h.arrow_count(); ++e)
      pairing_r.col(p * h.arrow_count() + e) = mx.matrices.right[e].col(p);
  Matrix lhs_r = unitary_from_iso(bc.right_unitor(x).iso).t * phi_matrix(cr);
  r.right.update(scaled_difference(lhs_r, pairing_r), x.name());
  return r;
}

/// T of a vertical composite equals the product of the two unitaries.
inline Residual check_unitary_functoriality(const CorrIso& s, const CorrIso& t) {
  Residual r;
  Matrix lhs = unitary_from_iso(compose_iso_vertical(s, t)).t;
  Matrix rhs = unitary_from_iso(t).t * unitary_from_iso(s).t;
  r.update(scaled_difference(lhs, rhs), s.source.name());
  return r;
}

}  // namespace topcorr::cstar
