#include "core/relation.hpp"

#include <cmath>

namespace relcalc {

namespace {

void same_n(const Relation& a, const Relation& b) {
  if (a.n() != b.n()) throw Error(ErrorCode::DimensionMismatch, "relations live in different spaces");
}

Relation from_stacked(const Mat& top, const Mat& bottom, double tol = kRankTol) {
  Mat cols(top.rows() + bottom.rows(), top.cols());
  cols << top, bottom;
  return Relation(Subspace::span_scaled(cols, tol));
}

}  // namespace

Relation::Relation(Subspace graph) : graph_(std::move(graph)) {
  const int m = graph_.ambient();
  if (m <= 0 || m % 2 != 0) throw Error(ErrorCode::DimensionMismatch, "graph must live in C^(2n) with n >= 1");
  n_ = m / 2;
  f_ = graph_.basis().topRows(n_);
  g_ = graph_.basis().bottomRows(n_);
}

Relation Relation::from_graph(const Mat& pairs, double tol) {
  if (pairs.rows() == 0 || pairs.rows() % 2 != 0)
    throw Error(ErrorCode::DimensionMismatch, "graph vectors must have even length 2n >= 2");
  return Relation(Subspace::span(pairs, tol));
}

Relation Relation::from_graph(const std::vector<ElementPair>& pairs, int n, double tol) {
  if (n <= 0) throw Error(ErrorCode::DimensionMismatch, "n must be positive");
  Mat cols(2 * n, static_cast<Eigen::Index>(pairs.size()));
  for (size_t j = 0; j < pairs.size(); ++j) {
    if (pairs[j].f.size() != n || pairs[j].f_prime.size() != n)
      throw Error(ErrorCode::DimensionMismatch, "element pair length differs from n");
    cols.col(static_cast<Eigen::Index>(j)) << pairs[j].f, pairs[j].f_prime;
  }
  return Relation(Subspace::span(cols, tol));
}

Relation Relation::from_operator(const Mat& m, const Subspace& domain) {
  if (m.rows() != m.cols() || m.rows() != domain.ambient() || m.rows() == 0)
    throw Error(ErrorCode::DimensionMismatch, "operator must be n x n with domain in C^n");
  return from_stacked(domain.basis(), m * domain.basis());
}

Relation Relation::from_operator(const Mat& m) {
  return from_operator(m, Subspace::full(static_cast<int>(m.rows())));
}

Subspace Relation::dom() const { return Subspace::span_scaled(f_); }
Subspace Relation::ran() const { return Subspace::span_scaled(g_); }

Subspace Relation::mul() const {
  if (dim() == 0) return Subspace::zero(n_);
  Mat k = null_space(f_, kRankTol);
  if (k.cols() == 0) return Subspace::zero(n_);
  return Subspace::span_scaled(g_ * k);
}

Subspace Relation::ker() const {
  if (dim() == 0) return Subspace::zero(n_);
  Mat k = null_space(g_, kRankTol);
  if (k.cols() == 0) return Subspace::zero(n_);
  return Subspace::span_scaled(f_ * k);
}

bool Relation::contains(const Vec& f, const Vec& fp, double tol) const {
  Vec v(2 * n_);
  v << f, fp;
  return graph_.contains(v, tol);
}

Components components(const Relation& a) { return {a.dom(), a.ran(), a.ker(), a.mul()}; }

double opening(const Relation& a, const Relation& b) {
  same_n(a, b);
  return opening(a.graph(), b.graph());
}
bool equal(const Relation& a, const Relation& b, double tol) { return opening(a, b) <= tol; }
bool leq(const Relation& a, const Relation& b, double tol) {
  same_n(a, b);
  return leq(a.graph(), b.graph(), tol);
}

Relation inverse(const Relation& a) {
  const int n = a.n();
  Mat b(2 * n, a.dim());
  b << a.G(), a.F();
  return Relation(Subspace::from_orthonormal(std::move(b), a.graph().tol()));
}

Relation adjoint(const Relation& a) {
  const int n = a.n();
  Subspace perp = complement(a.graph());
  const Mat& x = perp.basis();
  Mat b(2 * n, x.cols());
  // J(x, y) = (y, -x)
  b << x.bottomRows(n), -x.topRows(n);
  return Relation(Subspace::from_orthonormal(std::move(b), perp.tol()));
}

Relation cw_sum(const Relation& a, const Relation& b) {
  same_n(a, b);
  return Relation(sum(a.graph(), b.graph()));
}

Relation intersect(const Relation& a, const Relation& b) {
  same_n(a, b);
  return Relation(intersect(a.graph(), b.graph()));
}

Relation op_sum(const Relation& a, const Relation& b) {
  same_n(a, b);
  const int n = a.n();
  Mat match(n, a.dim() + b.dim());
  match << a.F(), -b.F();
  Mat nul = null_space(match, kRankTol);
  if (nul.cols() == 0) return Relation(Subspace::zero(2 * n));
  Mat z = nul.topRows(a.dim());
  Mat w = nul.bottomRows(b.dim());
  return from_stacked(a.F() * z, a.G() * z + b.G() * w);
}

Relation op_diff(const Relation& a, const Relation& b) { return op_sum(a, scalar_mul(-1.0, b)); }

Relation scalar_mul(cplx c, const Relation& a) {
  if (c == cplx(1.0)) return a;
  if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw Error(ErrorCode::InvalidArgument, "non-finite scalar");
  if (std::abs(c) <= 1.0) return from_stacked(a.F(), c * a.G());
  // Large c: rotate so the value parts are orthogonal, then scale each column separately
  // so no direction is pushed below the rank floor.
  const int n = a.n();
  Eigen::JacobiSVD<Mat> svd(a.G(), Eigen::ComputeFullV);
  const Mat f = a.F() * svd.matrixV();
  Mat g = a.G() * svd.matrixV();
  const auto& sv = svd.singularValues();
  for (Eigen::Index j = 0; j < g.cols(); ++j)
    if (j >= sv.size() || sv(j) <= kRankTol * std::max(sv.size() ? sv(0) : 0.0, 1.0)) g.col(j).setZero();
  Mat cols(2 * n, a.dim());
  for (int j = 0; j < a.dim(); ++j) {
    const double s = std::max(f.col(j).norm(), std::abs(c) * g.col(j).norm());
    cols.col(j) << f.col(j) / s, (c / s) * g.col(j);
  }
  return Relation(Subspace::span(cols));
}

Relation shift(const Relation& a, cplx lambda) {
  const int n = a.n();
  return op_sum(a, Relation::from_operator(-lambda * Mat::Identity(n, n)));
}

Relation product(const Relation& a, const Relation& b) {
  same_n(a, b);
  const int n = a.n();
  Mat match(n, b.dim() + a.dim());
  match << b.G(), -a.F();
  Mat nul = null_space(match, kRankTol);
  if (nul.cols() == 0) return Relation(Subspace::zero(2 * n));
  Mat w = nul.topRows(b.dim());
  Mat z = nul.bottomRows(a.dim());
  return from_stacked(b.F() * w, a.G() * z);
}

Relation cw_orth_sum(const Relation& a, const Relation& b) {
  const int n1 = a.n(), n2 = b.n(), n = n1 + n2;
  Mat basis = Mat::Zero(2 * n, a.dim() + b.dim());
  basis.block(0, 0, n1, a.dim()) = a.F();
  basis.block(n, 0, n1, a.dim()) = a.G();
  basis.block(n1, a.dim(), n2, b.dim()) = b.F();
  basis.block(n + n1, a.dim(), n2, b.dim()) = b.G();
  return Relation(Subspace::from_orthonormal(std::move(basis)));
}

Relation cross(const Subspace& s, const Subspace& t) {
  if (s.ambient() != t.ambient() || s.ambient() == 0)
    throw Error(ErrorCode::DimensionMismatch, "cross: subspaces must share a positive ambient dimension");
  const int n = s.ambient();
  Mat basis = Mat::Zero(2 * n, s.dim() + t.dim());
  basis.block(0, 0, n, s.dim()) = s.basis();
  basis.block(n, s.dim(), n, t.dim()) = t.basis();
  return Relation(Subspace::from_orthonormal(std::move(basis)));
}

Relation infinity_ext(const Relation& a) {
  const int n = a.n();
  return cw_sum(a, cross(Subspace::zero(n), adjoint(a).mul()));
}

Relation restrict_range(const Relation& a, const Subspace& s) {
  if (s.ambient() != a.n()) throw Error(ErrorCode::DimensionMismatch, "restrict_range: ambient mismatch");
  return intersect(a, cross(Subspace::full(a.n()), s));
}

Relation restrict_domain(const Relation& a, const Subspace& s) {
  if (s.ambient() != a.n()) throw Error(ErrorCode::DimensionMismatch, "restrict_domain: ambient mismatch");
  return intersect(a, cross(s, Subspace::full(a.n())));
}

Relation identity_on(const Subspace& s) {
  if (s.ambient() == 0) throw Error(ErrorCode::DimensionMismatch, "identity_on: empty ambient space");
  Mat b(2 * s.ambient(), s.dim());
  b << s.basis(), s.basis();
  b /= std::sqrt(2.0);
  return Relation(Subspace::from_orthonormal(std::move(b)));
}

Relation zero_on(const Subspace& s) { return cross(s, Subspace::zero(s.ambient())); }

Relation embed(const Relation& a, const Mat& v) {
  if (v.cols() != a.n() || v.rows() < v.cols())
    throw Error(ErrorCode::DimensionMismatch, "embed: V must be m x n with m >= n");
  const double dev = (v.adjoint() * v - Mat::Identity(v.cols(), v.cols())).norm();
  if (dev > 1e-10) throw Error(ErrorCode::NotAnIsometry, "embed: V is not an isometry");
  Mat b(2 * v.rows(), a.dim());
  b << v * a.F(), v * a.G();
  return Relation(Subspace::from_orthonormal(std::move(b)));
}

Relation compress(const Relation& a, const Mat& q) {
  if (q.rows() != a.n() || q.cols() == 0) throw Error(ErrorCode::DimensionMismatch, "compress: shape mismatch");
  return from_stacked(q.adjoint() * a.F(), q.adjoint() * a.G());
}

Mat apply_operator(const Relation& a, const Mat& x) {
  if (x.rows() != a.n()) throw Error(ErrorCode::DimensionMismatch, "apply_operator: shape mismatch");
  if (x.cols() == 0) return Mat(a.n(), 0);
  if (a.dim() == 0) return Mat::Zero(a.n(), x.cols());
  Mat z = solve_min_norm(a.F(), x, kRankTol);
  return a.G() * z;
}

}  // namespace relcalc
