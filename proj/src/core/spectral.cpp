#include "core/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace relcalc {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

// f = U w parametrizes dom A; values modulo mul A are P (T w), P onto (mul A)^perp.
struct ReducedPencil {
  Mat value;  // P T   (n x r)
  Mat frame;  // P U   (n x r)
  Mat u;      // U, orthonormal basis of dom A
  int r = 0;
};

ReducedPencil reduce(const Relation& a) {
  ReducedPencil p;
  const int n = a.n();
  if (a.dim() == 0) {
    p.value = p.frame = p.u = Mat(n, 0);
    return p;
  }
  Eigen::JacobiSVD<Mat> svd(a.F(), Eigen::ComputeThinU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  int r = 0;
  while (r < s.size() && s(r) > kRankTol) ++r;
  p.r = r;
  p.u = svd.matrixU().leftCols(r);
  Mat t = a.G() * svd.matrixV().leftCols(r);
  for (int j = 0; j < r; ++j) t.col(j) /= s(j);
  const Mat perp = Mat::Identity(n, n) - a.mul().projector();
  p.value = perp * t;
  p.frame = perp * p.u;
  return p;
}

double pencil_scale(const ReducedPencil& p, cplx lambda) {
  return std::max(1.0, spectral_norm(p.value) + std::abs(lambda) * spectral_norm(p.frame));
}

Mat random_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> nd;
  Mat m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = cplx(nd(rng), nd(rng));
  return m;
}

}  // namespace

double gamma_tol(const Relation& a, cplx lambda) {
  return 1e-9 * (spectral_norm(a.G()) + std::abs(lambda) * spectral_norm(a.F()));
}

double regularity_constant(const Relation& a, cplx lambda) {
  const ReducedPencil p = reduce(a);
  if (p.r == 0) return std::numeric_limits<double>::infinity();
  return min_singular(p.value - lambda * p.frame);
}

int defect(const Relation& a, cplx lambda) {
  const int n = a.n();
  if (a.dim() == 0) return n;
  const double thresh = std::max(1e-9 * (spectral_norm(a.G()) + std::abs(lambda) * spectral_norm(a.F())), 1e-12);
  return n - rank_abs(a.G() - lambda * a.F(), thresh);
}

bool is_regular_point(const Relation& a, cplx lambda) {
  const double c = regularity_constant(a, lambda);
  return c > gamma_tol(a, lambda);
}

bool in_resolvent_set(const Relation& a, cplx lambda) { return is_regular_point(a, lambda) && defect(a, lambda) == 0; }

SpectralReport eigenvalues(const Relation& a) {
  SpectralReport rep;
  rep.mul_dim = a.mul().dim();
  const ReducedPencil p = reduce(a);
  const int r = p.r;
  if (r == 0) return rep;
  const int n = a.n();
  std::mt19937_64 rng(0x5eed5eedULL);
  std::normal_distribution<double> nd;

  // Normal rank below r: every lambda has a nontrivial kernel.
  {
    const cplx probe(0.7310585786, 0.2689414214);
    const double thr = 1e-9 * pencil_scale(p, probe);
    if (rank_abs(p.value - probe * p.frame, thr) < r) {
      rep.every_point = true;
      return rep;
    }
  }

  // Square compression W^H (value - lambda frame), solved by shift-invert.
  std::vector<cplx> candidates;
  for (int attempt = 0; attempt < 8; ++attempt) {
    const Mat w = random_matrix(rng, n, r);
    const cplx sigma(nd(rng), nd(rng));
    const Mat k = w.adjoint() * (p.value - sigma * p.frame);
    Eigen::JacobiSVD<Mat> ks(k);
    const auto& sv = ks.singularValues();
    if (sv(sv.size() - 1) < 1e-8 * sv(0)) continue;
    const Mat m = k.partialPivLu().solve(w.adjoint() * p.frame);
    Eigen::ComplexEigenSolver<Mat> es(m, false);
    const double mscale = std::max(m.cwiseAbs().maxCoeff(), 1e-300);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      const cplx mu = es.eigenvalues()(i);
      if (std::abs(mu) <= 1e-11 * mscale) continue;
      candidates.push_back(sigma + 1.0 / mu);
    }
    break;
  }

  std::vector<cplx> accepted;
  for (const cplx& lam : candidates) {
    const double scale = pencil_scale(p, lam);
    if (min_singular(p.value - lam * p.frame) > 1e-7 * scale) continue;
    bool dup = false;
    for (const cplx& q : accepted)
      if (std::abs(q - lam) <= 1e-6 * (1.0 + std::abs(lam))) dup = true;
    if (!dup) accepted.push_back(lam);
  }
  std::sort(accepted.begin(), accepted.end(), [](cplx x, cplx y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  for (const cplx& lam : accepted) {
    const double scale = pencil_scale(p, lam);
    const int rk = rank_abs(p.value - lam * p.frame, 1e-7 * scale);
    rep.eigenvalues.push_back({lam, std::max(1, r - rk)});
  }
  return rep;
}

ResolventCheck resolvent_norm_bound_check(const Relation& a, cplx mu, cplx lambda) {
  const double cm = regularity_constant(a, mu);
  if (!(cm > gamma_tol(a, mu))) throw Error(ErrorCode::Precondition, "mu is not a point of regular type");
  const double dist = std::abs(lambda - mu);
  if (std::isfinite(cm) && !(dist < cm)) throw Error(ErrorCode::Precondition, "|lambda - mu| must be below c(mu)");
  const double cl = regularity_constant(a, lambda);
  ResolventCheck r;
  r.lhs = 1.0 / cl;
  r.rhs = std::isfinite(cm) ? (1.0 / cm) / (1.0 - dist / cm) : 0.0;
  r.holds = r.lhs <= r.rhs * (1.0 + 1e-8) + 1e-300;
  return r;
}

cplx rayleigh(const Relation& a, const Vec& z) {
  const Vec f = a.F() * z;
  const Vec g = a.G() * z;
  return f.dot(g) / f.squaredNorm();
}

std::vector<cplx> nrange_sample(const Relation& a, size_t count, std::uint64_t seed) {
  std::vector<cplx> out;
  if (a.dom().is_zero()) {
    out.push_back(0.0);
    return out;
  }
  const int d = a.dim();
  const Mat cross = a.F().adjoint() * a.G();
  const Mat gram = a.F().adjoint() * a.F();
  out.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(i))));
    std::normal_distribution<double> nd;
    for (;;) {
      Vec z(d);
      for (int k = 0; k < d; ++k) z(k) = cplx(nd(rng), nd(rng));
      const double nf = std::real(z.dot(gram * z));
      if (nf <= 1e-20 * z.squaredNorm()) continue;
      out.push_back(z.dot(cross * z) / nf);
      break;
    }
  }
  return out;
}

ConvexWitness nrange_convex_witness(const Relation& a, const Vec& z1, const Vec& z2, double u) {
  if (z1.size() != a.dim() || z2.size() != a.dim())
    throw Error(ErrorCode::DimensionMismatch, "graph coordinates have the wrong length");
  if (!(u >= 0.0 && u <= 1.0)) throw Error(ErrorCode::InvalidArgument, "u must lie in [0,1]");
  const Vec f1 = a.F() * z1, g1 = a.G() * z1;
  const Vec f2 = a.F() * z2, g2 = a.G() * z2;
  if (std::abs(f1.norm() - 1.0) > 1e-8 || std::abs(f2.norm() - 1.0) > 1e-8)
    throw Error(ErrorCode::Precondition, "||F z_i|| must equal 1");
  // (x, y) = y^H x
  auto ip = [](const Vec& x, const Vec& y) { return y.dot(x); };
  const cplx l1 = ip(g1, f1), l2 = ip(g2, f2);
  if (std::abs(l1 - l2) <= 1e-12 * std::max({1.0, std::abs(l1), std::abs(l2)}))
    throw Error(ErrorCode::DegenerateSegment, "the two values coincide");

  const cplx c1 = (ip(g2, f1) - l2 * ip(f2, f1)) / (l1 - l2);
  const cplx c2 = (ip(g1, f2) - l2 * ip(f1, f2)) / (l1 - l2);
  const cplx gap = std::conj(c1) - c2;
  const cplx delta = std::abs(gap) == 0.0 ? cplx(1.0) : gap / std::abs(gap);
  const double beta = std::clamp(std::real(delta * ip(f2, f1)), -1.0, 1.0);
  const double gamma = std::real(delta * c1 + std::conj(delta) * c2);
  const double sgn = beta >= 0.0 ? 1.0 : -1.0;

  auto root = [&](double t1) { return std::sqrt(std::max(0.0, 1.0 - (1.0 - beta * beta) * t1 * t1)); };
  auto h = [&](double t1) { return (1.0 - beta * gamma) * t1 * t1 + sgn * gamma * t1 * root(t1); };

  double lo = 0.0, hi = 1.0, t = u;
  int it = 0;
  if (u == 0.0) {
    t = 0.0;
  } else if (u == 1.0) {
    t = 1.0;
  } else {
    for (; it < 200; ++it) {
      t = 0.5 * (lo + hi);
      const double v = h(t);
      if (std::abs(v - u) <= 1e-12) break;
      if (v < u) lo = t;
      else hi = t;
    }
  }
  if (std::abs(h(t) - u) > 1e-9) throw Error(ErrorCode::BisectionFailure, "bisection did not reach the target");

  const double t2 = -beta * t + sgn * root(t);
  const cplx x1 = t, x2 = delta * t2;
  ConvexWitness w;
  w.element.f = x1 * f1 + x2 * f2;
  w.element.f_prime = x1 * g1 + x2 * g2;
  w.value = ip(w.element.f_prime, w.element.f) / w.element.f.squaredNorm();
  w.target = u * l1 + (1.0 - u) * l2;
  w.iterations = it;
  return w;
}

}  // namespace relcalc
