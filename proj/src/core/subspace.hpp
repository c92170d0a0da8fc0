#pragma once

#include "core/common.hpp"

#include <vector>

namespace relcalc {

// Closed subspace of C^m stored as an orthonormal basis (m x d).
class Subspace {
 public:
  Subspace() = default;

  // Trusts that `basis` already has orthonormal columns.
  static Subspace from_orthonormal(Mat basis, double tol = kRankTol);
  // Span of the columns; directions below tol * sigma_max are dropped.
  static Subspace span(const Mat& cols, double tol = kRankTol);
  static Subspace span(const std::vector<Vec>& vectors, int ambient, double tol = kRankTol);
  // Span with threshold tol * max(sigma_max, 1): noise on near-zero inputs is discarded.
  static Subspace span_scaled(const Mat& cols, double tol = kRankTol);
  static Subspace zero(int m);
  static Subspace full(int m);

  int ambient() const { return static_cast<int>(basis_.rows()); }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const Mat& basis() const { return basis_; }
  double tol() const { return tol_; }
  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient(); }

  Mat projector() const;
  // Distance of v from the subspace (norm of the orthogonal residual).
  double residual(const Vec& v) const;
  bool contains(const Vec& v, double tol = kEqualTol) const;

 private:
  Subspace(Mat b, double tol) : basis_(std::move(b)), tol_(tol) {}
  Mat basis_ = Mat(0, 0);
  double tol_ = kRankTol;
};

Subspace complement(const Subspace& s);
Subspace sum(const Subspace& s, const Subspace& t);
Subspace intersect(const Subspace& s, const Subspace& t);

// Largest singular value of (I - P_t) * basis(s); 0 when s is {0}.
double excess(const Subspace& s, const Subspace& t);
bool leq(const Subspace& s, const Subspace& t, double tol = kEqualTol);
double opening(const Subspace& s, const Subspace& t);
bool equal(const Subspace& s, const Subspace& t, double tol = kEqualTol);

// ---- dense helpers shared by the other modules ----

// Orthonormal basis of ker(m): right singular vectors with sigma <= thresh.
Mat null_space(const Mat& m, double thresh);
// Numerical rank with threshold thresh (absolute).
int rank_abs(const Mat& m, double thresh);
double spectral_norm(const Mat& m);
double min_singular(const Mat& m);
// Top right singular vector.
Vec top_right_singular(const Mat& m);
// Full-column-rank least squares X with m X = rhs (minimum norm).
Mat solve_min_norm(const Mat& m, const Mat& rhs, double thresh);

}  // namespace relcalc
