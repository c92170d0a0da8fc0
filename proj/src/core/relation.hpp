#pragma once

#include "core/subspace.hpp"

namespace relcalc {

struct ElementPair {
  Vec f;
  Vec f_prime;
};

// Linear relation in C^n: a subspace of C^n x C^n, basis [F; G].
class Relation {
 public:
  Relation() = default;
  explicit Relation(Subspace graph);

  static Relation from_graph(const Mat& pairs, double tol = kRankTol);  // 2n x k
  static Relation from_graph(const std::vector<ElementPair>& pairs, int n, double tol = kRankTol);
  static Relation from_operator(const Mat& m, const Subspace& domain);
  static Relation from_operator(const Mat& m);  // everywhere defined

  int n() const { return n_; }
  int dim() const { return graph_.dim(); }
  const Subspace& graph() const { return graph_; }
  const Mat& F() const { return f_; }
  const Mat& G() const { return g_; }

  Subspace dom() const;
  Subspace ran() const;
  Subspace mul() const;
  Subspace ker() const;

  bool contains(const Vec& f, const Vec& fp, double tol = kEqualTol) const;

 private:
  int n_ = 0;
  Subspace graph_;
  Mat f_, g_;
};

struct Components {
  Subspace dom, ran, ker, mul;
};
Components components(const Relation& a);

double opening(const Relation& a, const Relation& b);
bool equal(const Relation& a, const Relation& b, double tol = kEqualTol);
bool leq(const Relation& a, const Relation& b, double tol = kEqualTol);

Relation inverse(const Relation& a);
Relation adjoint(const Relation& a);
Relation cw_sum(const Relation& a, const Relation& b);
Relation op_sum(const Relation& a, const Relation& b);
Relation op_diff(const Relation& a, const Relation& b);
Relation scalar_mul(cplx c, const Relation& a);
Relation shift(const Relation& a, cplx lambda);  // A - lambda
Relation product(const Relation& a, const Relation& b);  // {(f,f'): (f,h) in B, (h,f') in A}
Relation intersect(const Relation& a, const Relation& b);
Relation cw_orth_sum(const Relation& a, const Relation& b);
Relation infinity_ext(const Relation& a);
Relation restrict_range(const Relation& a, const Subspace& s);
Relation restrict_domain(const Relation& a, const Subspace& s);
Relation cross(const Subspace& s, const Subspace& t);
Relation identity_on(const Subspace& s);
Relation zero_on(const Subspace& s);
Relation embed(const Relation& a, const Mat& v);
// Inverse of embed: the relation in C^k seen through the isometry q (n x k).
Relation compress(const Relation& a, const Mat& q);

// Values of a relation on the columns of x (must lie in dom A): some f' with (x_j, f') in A.
// Unique when A is an operator.
Mat apply_operator(const Relation& a, const Mat& x);

}  // namespace relcalc
