#include "core/classify.hpp"

#include "core/decompose.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

namespace relcalc {

FormPair form_pair(const Relation& a) { return {a.F().adjoint() * a.G(), a.F().adjoint() * a.F()}; }

bool is_psd(const Mat& m) {
  if (m.size() == 0) return true;
  Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const double scale = std::max(ev.cwiseAbs().maxCoeff(), 1.0);
  return ev(0) >= -1e-10 * scale;
}

Vec lowest_eigvec(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  return es.eigenvectors().col(0);
}

bool is_symmetric(const Relation& a) {
  const FormPair fp = form_pair(a);
  if (fp.cross.size() == 0) return true;
  return (fp.cross - fp.cross.adjoint()).norm() <= kEqualTol;
}

bool is_selfadjoint(const Relation& a) { return equal(a, adjoint(a)); }
bool is_formally_domain_tight(const Relation& a) { return leq(a.dom(), adjoint(a).dom()); }
bool is_domain_tight(const Relation& a) { return equal(a.dom(), adjoint(a).dom()); }
bool is_formally_range_tight(const Relation& a) { return leq(a.ran(), adjoint(a).ran()); }
bool is_range_tight(const Relation& a) { return equal(a.ran(), adjoint(a).ran()); }
bool is_singular(const Relation& a) { return leq(a.ran(), adjoint(adjoint(a)).mul()); }
bool is_regular(const Relation& a) { return adjoint(adjoint(a)).mul().is_zero(); }

bool is_dissipative(const Relation& a) { return is_psd(form_pair(a).im_form()); }
bool is_accretive(const Relation& a) { return is_psd(form_pair(a).re_form()); }
bool is_nonnegative(const Relation& a) { return is_symmetric(a) && is_accretive(a); }

bool is_sectorial(const Relation& a, double alpha) {
  if (!(alpha > 0.0 && alpha < std::numbers::pi / 2))
    throw Error(ErrorCode::InvalidArgument, "sectorial angle must lie in (0, pi/2)");
  const FormPair fp = form_pair(a);
  const Mat re = fp.re_form(), im = fp.im_form();
  const double t = std::tan(alpha);
  return is_psd(t * re - im) && is_psd(t * re + im);
}

std::optional<Mat> normality_gap(const Relation& a) {
  const Relation s = adjoint(a);
  const Subspace d = a.dom();
  if (!leq(d, s.dom())) return std::nullopt;
  const Subspace m = a.mul();
  const Mat ta = apply_operator(operator_part(a), d.basis());
  const Mat ts = apply_operator(operator_part(s), d.basis());
  const int k = d.dim(), b = m.dim();
  Mat gap = Mat::Zero(k + b, k + b);
  gap.topLeftCorner(k, k) = ta.adjoint() * ta - ts.adjoint() * ts;
  gap.bottomRightCorner(b, b) = Mat::Identity(b, b);
  return gap;
}

bool is_formally_normal(const Relation& a) {
  auto gap = normality_gap(a);
  if (!gap) return false;
  if (gap->size() == 0) return true;
  if (!is_psd(*gap)) return false;
  Eigen::SelfAdjointEigenSolver<Mat> es(*gap, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const double cut = 1e-9 * std::max(ev.cwiseAbs().maxCoeff(), 1.0);
  int rank = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) > cut) ++rank;
  return rank <= adjoint(a).mul().dim();
}

Compression compressed_operator_part(const Relation& a) {
  Compression c;
  c.basis = complement(a.mul()).basis();
  const Relation op = operator_part(a);
  // Only meaningful when dom A covers the basis; otherwise values are least-squares representatives.
  c.op = c.basis.adjoint() * apply_operator(op, c.basis);
  return c;
}

bool is_normal(const Relation& a) {
  const Relation s = adjoint(a);
  const Subspace m = a.mul();
  if (!equal(m, s.mul())) return false;
  if (!equal(a.dom(), complement(m))) return false;
  const Compression c = compressed_operator_part(a);
  if (c.op.size() == 0) return true;
  const double scale = std::max(1.0, c.op.squaredNorm());
  return (c.op * c.op.adjoint() - c.op.adjoint() * c.op).norm() <= kEqualTol * scale;
}

const char* class_name(ClassKind k) {
  switch (k) {
    case ClassKind::Symmetric: return "symmetric";
    case ClassKind::Dissipative: return "dissipative";
    case ClassKind::Accretive: return "accretive";
    case ClassKind::Nonnegative: return "nonnegative";
    case ClassKind::Sectorial: return "sectorial";
  }
  return "?";
}

bool in_class(const Relation& a, const OperatorClass& c) {
  switch (c.kind) {
    case ClassKind::Symmetric: return is_symmetric(a);
    case ClassKind::Dissipative: return is_dissipative(a);
    case ClassKind::Accretive: return is_accretive(a);
    case ClassKind::Nonnegative: return is_nonnegative(a);
    case ClassKind::Sectorial: return is_sectorial(a, c.alpha);
  }
  return false;
}

static bool range_is_everything(const Relation& a, cplx lambda) {
  return shift(a, lambda).ran().is_full();
}

bool is_maximal(const Relation& a, const OperatorClass& c) {
  if (!in_class(a, c)) throw Error(ErrorCode::ClassMismatch, std::string("relation is not ") + class_name(c.kind));
  switch (c.kind) {
    case ClassKind::Symmetric:
      // Two exterior half-planes; either one in the resolvent set suffices.
      return range_is_everything(a, I1) || range_is_everything(a, -I1);
    case ClassKind::Dissipative: return range_is_everything(a, -I1);
    default: return range_is_everything(a, -1.0);
  }
}

static void require_extension(const Relation& a, const Relation& b, const Mat& v) {
  if (v.rows() != b.n() || v.cols() != a.n()) throw Error(ErrorCode::DimensionMismatch, "embedding shape mismatch");
  if (!leq(embed(a, v), b)) throw Error(ErrorCode::NotAnExtension, "B does not contain the embedded A");
}

bool is_tight_extension(const Relation& a, const Relation& b, const Mat& v) {
  require_extension(a, b, v);
  const Subspace vd = Subspace::span_scaled(v * a.dom().basis());
  const Subspace meet = intersect(b.dom(), Subspace::from_orthonormal(v));
  return equal(vd, meet);
}

bool is_star_tight_extension(const Relation& a, const Relation& b, const Mat& v) {
  require_extension(a, b, v);
  const Subspace projected = Subspace::span_scaled(v.adjoint() * adjoint(b).dom().basis());
  return equal(projected, adjoint(a).dom());
}

}  // namespace relcalc
