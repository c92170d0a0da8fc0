#include "core/subspace.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace relcalc {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotAnIsometry: return "NotAnIsometry";
    case ErrorCode::NotAnExtension: return "NotAnExtension";
    case ErrorCode::ClassMismatch: return "ClassMismatch";
    case ErrorCode::NotFormallyDomainTight: return "NotFormallyDomainTight";
    case ErrorCode::OrthogonalRefused: return "OrthogonalRefused";
    case ErrorCode::DegenerateSegment: return "DegenerateSegment";
    case ErrorCode::BisectionFailure: return "BisectionFailure";
    case ErrorCode::Precondition: return "Precondition";
    case ErrorCode::UnknownLaw: return "UnknownLaw";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Type: return "Type";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Numeric: return "Numeric";
  }
  return "Unknown";
}

namespace {

Mat thin_left(const Mat& cols, double thresh_rel, bool scaled) {
  const Eigen::Index m = cols.rows();
  if (cols.cols() == 0 || m == 0) return Mat(m, 0);
  if (!cols.allFinite()) throw Error(ErrorCode::InvalidArgument, "span: non-finite entries");
  // Huge inputs would overflow inside the SVD; a uniform rescale keeps the span.
  const double big = cols.cwiseAbs().maxCoeff();
  if (big > 1e150) return thin_left(cols / big, thresh_rel, scaled);
  Eigen::JacobiSVD<Mat> svd(cols, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  const double smax = s.size() ? s(0) : 0.0;
  const double cut = thresh_rel * (scaled ? std::max(smax, 1.0) : smax);
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > cut && s(r) > 0.0) ++r;
  return svd.matrixU().leftCols(r);
}

}  // namespace

Subspace Subspace::from_orthonormal(Mat basis, double tol) { return Subspace(std::move(basis), tol); }

Subspace Subspace::span(const Mat& cols, double tol) {
  if (tol < 0) throw Error(ErrorCode::InvalidArgument, "negative rank tolerance");
  return Subspace(thin_left(cols, tol, false), tol);
}

Subspace Subspace::span(const std::vector<Vec>& vectors, int ambient, double tol) {
  Mat cols(ambient, static_cast<Eigen::Index>(vectors.size()));
  for (size_t j = 0; j < vectors.size(); ++j) {
    if (vectors[j].size() != ambient)
      throw Error(ErrorCode::DimensionMismatch, "span: vector length differs from ambient dimension");
    cols.col(static_cast<Eigen::Index>(j)) = vectors[j];
  }
  return span(cols, tol);
}

Subspace Subspace::span_scaled(const Mat& cols, double tol) {
  return Subspace(thin_left(cols, tol, true), tol);
}

Subspace Subspace::zero(int m) { return Subspace(Mat(m, 0), kRankTol); }
Subspace Subspace::full(int m) { return Subspace(Mat::Identity(m, m), kRankTol); }

Mat Subspace::projector() const { return basis_ * basis_.adjoint(); }

double Subspace::residual(const Vec& v) const {
  if (v.size() != ambient()) throw Error(ErrorCode::DimensionMismatch, "contains: vector length mismatch");
  if (dim() == 0) return v.norm();
  Vec r = v - basis_ * (basis_.adjoint() * v);
  return r.norm();
}

bool Subspace::contains(const Vec& v, double tol) const { return residual(v) <= tol * v.norm(); }

static void same_ambient(const Subspace& s, const Subspace& t) {
  if (s.ambient() != t.ambient()) throw Error(ErrorCode::DimensionMismatch, "ambient dimension mismatch");
}

Subspace complement(const Subspace& s) {
  const int m = s.ambient();
  const int d = s.dim();
  if (d == 0) return Subspace::full(m);
  if (d == m) return Subspace::zero(m);
  Eigen::HouseholderQR<Mat> qr(s.basis());
  Mat q = qr.householderQ() * Mat::Identity(m, m);
  return Subspace::from_orthonormal(q.rightCols(m - d), s.tol());
}

Subspace sum(const Subspace& s, const Subspace& t) {
  same_ambient(s, t);
  if (s.dim() == 0) return t;
  if (t.dim() == 0) return s;
  Mat cols(s.ambient(), s.dim() + t.dim());
  cols << s.basis(), t.basis();
  return Subspace::span_scaled(cols, std::max(s.tol(), t.tol()));
}

Subspace intersect(const Subspace& s, const Subspace& t) {
  same_ambient(s, t);
  const int m = s.ambient();
  if (s.dim() == 0 || t.dim() == 0) return Subspace::zero(m);
  if (s.dim() == m) return t;
  if (t.dim() == m) return s;
  // Common vectors: B_s x = B_t y.
  Mat stacked(m, s.dim() + t.dim());
  stacked << s.basis(), -t.basis();
  const double tol = std::max(s.tol(), t.tol());
  Mat nul = null_space(stacked, tol);
  if (nul.cols() == 0) return Subspace::zero(m);
  Mat common = s.basis() * nul.topRows(s.dim()) + t.basis() * nul.bottomRows(t.dim());
  return Subspace::span_scaled(common, tol);
}

double excess(const Subspace& s, const Subspace& t) {
  same_ambient(s, t);
  if (s.dim() == 0) return 0.0;
  if (t.dim() == 0) return 1.0;
  Mat r = s.basis() - t.basis() * (t.basis().adjoint() * s.basis());
  return spectral_norm(r);
}

bool leq(const Subspace& s, const Subspace& t, double tol) { return excess(s, t) <= tol; }

double opening(const Subspace& s, const Subspace& t) {
  same_ambient(s, t);
  if (s.dim() != t.dim()) return 1.0;
  if (s.dim() == 0 || s.dim() == s.ambient()) return 0.0;
  return std::min(1.0, std::max(excess(s, t), excess(t, s)));
}

bool equal(const Subspace& s, const Subspace& t, double tol) { return opening(s, t) <= tol; }

Mat null_space(const Mat& m, double thresh) {
  const Eigen::Index c = m.cols();
  if (c == 0) return Mat(0, 0);
  if (m.rows() == 0) return Mat::Identity(c, c);
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double cut = thresh * std::max(1.0, s.size() ? s(0) : 0.0);
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > cut) ++r;
  return svd.matrixV().rightCols(c - r);
}

int rank_abs(const Mat& m, double thresh) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& s = svd.singularValues();
  int r = 0;
  while (r < s.size() && s(r) > thresh) ++r;
  return r;
}

double spectral_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

double min_singular(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& s = svd.singularValues();
  // Wide matrices have nontrivial kernel regardless of the singular values.
  if (m.cols() > m.rows()) return 0.0;
  return s(s.size() - 1);
}

Vec top_right_singular(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  return svd.matrixV().col(0);
}

Mat solve_min_norm(const Mat& m, const Mat& rhs, double thresh) {
  if (m.cols() == 0) return Mat(0, rhs.cols());
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(thresh);
  return svd.solve(rhs);
}

}  // namespace relcalc
