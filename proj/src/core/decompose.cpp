#include "core/decompose.hpp"

namespace relcalc {

const char* kind_name(DecompositionKind k) {
  switch (k) {
    case DecompositionKind::Canonical: return "canonical";
    case DecompositionKind::Componentwise: return "componentwise";
    case DecompositionKind::Orthogonal: return "orthogonal";
    case DecompositionKind::Cartesian: return "cartesian";
    case DecompositionKind::AdjointComponentwise: return "adjoint-componentwise";
    case DecompositionKind::MaximalPart: return "maximal-part";
  }
  return "?";
}

Subspace regular_space(const Relation& a) { return complement(adjoint(adjoint(a)).mul()); }

Mat regular_projector(const Relation& a) { return regular_space(a).projector(); }

Relation regular_part(const Relation& a) {
  return product(Relation::from_operator(regular_projector(a)), a);
}

Relation singular_part(const Relation& a) {
  const int n = a.n();
  return product(Relation::from_operator(Mat::Identity(n, n) - regular_projector(a)), a);
}

Relation operator_part(const Relation& a) { return restrict_range(a, regular_space(a)); }

Relation mul_part(const Relation& a) { return cross(Subspace::zero(a.n()), a.mul()); }

Relation max_operator_part(const Relation& a) {
  return product(Relation::from_operator(complement(a.mul()).projector()), a);
}

Decomposition canonical_decompose(const Relation& a) {
  Decomposition d{DecompositionKind::Canonical, {regular_part(a), singular_part(a)}, 0.0};
  d.identity_residual = opening(op_sum(d.parts[0], d.parts[1]), a);
  return d;
}

Decomposition max_part_decompose(const Relation& a) {
  Decomposition d{DecompositionKind::MaximalPart, {max_operator_part(a), mul_part(a)}, 0.0};
  d.identity_residual = opening(cw_sum(d.parts[0], d.parts[1]), a);
  return d;
}

DecomposableResult is_decomposable(const Relation& a) {
  DecomposableResult r;
  const Subspace m = a.mul();
  const Subspace sing_ran = singular_part(a).ran();
  if (leq(sing_ran, m)) {
    r.decomposable = true;
    Decomposition d{DecompositionKind::Componentwise, {operator_part(a), mul_part(a)}, 0.0};
    d.identity_residual = opening(cw_sum(d.parts[0], d.parts[1]), a);
    r.certificate = d;
  } else {
    const int n = a.n();
    Mat out = (Mat::Identity(n, n) - m.projector()) * sing_ran.basis();
    r.violation = sing_ran.basis() * top_right_singular(out);
  }
  return r;
}

OrthogonalDecomposition orthogonal_decompose(const Relation& a) {
  const Subspace d = a.dom();
  const Subspace m = a.mul();
  if (!leq(m, adjoint(a).mul())) {
    Mat gram = m.basis().adjoint() * d.basis();
    throw Error(ErrorCode::OrthogonalRefused, "dom A is not orthogonal to mul A", Vec(d.basis() * top_right_singular(gram)));
  }
  OrthogonalDecomposition out;
  out.dec = Decomposition{DecompositionKind::Orthogonal, {operator_part(a), mul_part(a)}, 0.0};
  out.dec.identity_residual = opening(cw_sum(out.dec.parts[0], out.dec.parts[1]), a);
  out.regular_space = regular_space(a);
  out.mul_closure = complement(out.regular_space);
  return out;
}

AdjointDecomposition adjoint_decompose(const Relation& a) {
  const Relation s = adjoint(a);
  AdjointDecomposition out;
  out.dec = Decomposition{DecompositionKind::AdjointComponentwise, {operator_part(s), mul_part(s)}, 0.0};
  out.dec.identity_residual = opening(cw_sum(out.dec.parts[0], out.dec.parts[1]), s);
  out.orthogonal = leq(s.mul(), adjoint(s).mul());
  return out;
}

Relation real_part(const Relation& a) { return scalar_mul(0.5, op_sum(a, adjoint(a))); }

Relation imag_part(const Relation& a) { return scalar_mul(cplx(0.0, -0.5), op_diff(a, adjoint(a))); }

Cartesian cartesian_components(const Relation& a) {
  const Relation s = adjoint(a);
  const Subspace d = a.dom();
  const Subspace ds = s.dom();
  if (!leq(d, ds)) {
    const int n = a.n();
    Mat out = (Mat::Identity(n, n) - ds.projector()) * d.basis();
    throw Error(ErrorCode::NotFormallyDomainTight, "dom A is not contained in dom A*",
                Vec(d.basis() * top_right_singular(out)));
  }
  const Relation sop = operator_part(s);
  Cartesian c;
  c.a1 = scalar_mul(0.5, op_sum(a, sop));
  c.a2 = scalar_mul(cplx(0.0, -0.5), op_diff(a, sop));
  c.reassembly_residual = opening(op_sum(c.a1, scalar_mul(I1, c.a2)), a);
  c.infinity_residual = opening(infinity_ext(a), op_sum(real_part(a), scalar_mul(I1, imag_part(a))));
  c.dec = Decomposition{DecompositionKind::Cartesian, {c.a1, c.a2}, c.reassembly_residual};
  return c;
}

}  // namespace relcalc
