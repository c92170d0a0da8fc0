#pragma once

#include "core/relation.hpp"

#include <initializer_list>

namespace fx {

using relcalc::cplx;
using relcalc::Mat;
using relcalc::Relation;
using relcalc::Subspace;
using relcalc::Vec;

inline Vec e(int n, int i) {
  Vec v = Vec::Zero(n);
  v(i) = 1.0;
  return v;
}

inline Vec vec(std::initializer_list<cplx> xs) {
  Vec v(static_cast<int>(xs.size()));
  int i = 0;
  for (cplx x : xs) v(i++) = x;
  return v;
}

inline Mat cols(std::initializer_list<Vec> vs) {
  Mat m(vs.begin()->size(), static_cast<int>(vs.size()));
  int j = 0;
  for (const Vec& v : vs) m.col(j++) = v;
  return m;
}

inline Vec pair(const Vec& f, const Vec& fp) {
  Vec v(f.size() + fp.size());
  v << f, fp;
  return v;
}

inline Subspace span(std::initializer_list<Vec> vs) { return Subspace::span(cols(vs)); }

// span{(e1|0), (0|e2)} in C^2: selfadjoint, singular, with dom = ker = span e1 and ran = mul = span e2.
inline Relation a_sd() {
  return Relation::from_graph(cols({pair(e(2, 0), Vec::Zero(2)), pair(Vec::Zero(2), e(2, 1))}));
}

inline Mat nilpotent() {
  Mat m = Mat::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

inline Relation graph(const Mat& m) { return Relation::from_operator(m); }

inline Relation zero_on_e1() { return relcalc::zero_on(span({e(2, 0)})); }

}  // namespace fx
