#include "laws/generate.hpp"

#include "core/classify.hpp"
#include "core/spectral.hpp"

#include <cmath>

namespace relcalc {

int Rng::integer(int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  return d(eng_);
}

Mat Rng::gaussian(int rows, int cols) {
  Mat m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = cnormal();
  return m;
}

Vec Rng::gaussian_vec(int n) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = cnormal();
  return v;
}

Mat Rng::hermitian(int n) {
  Mat g = gaussian(n, n);
  return (g + g.adjoint()) / 2.0;
}

Mat Rng::unitary(int n) {
  Eigen::HouseholderQR<Mat> qr(gaussian(n, n));
  Mat q = qr.householderQ() * Mat::Identity(n, n);
  const Mat r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    const cplx d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

Subspace Rng::subspace(int m, int dim) {
  if (dim <= 0) return Subspace::zero(m);
  if (dim >= m) return Subspace::full(m);
  return Subspace::span(gaussian(m, dim));
}

Subspace Rng::subspace_in(const Subspace& s, int dim) {
  if (dim <= 0) return Subspace::zero(s.ambient());
  if (dim >= s.dim()) return s;
  return Subspace::span(s.basis() * gaussian(s.dim(), dim));
}

const char* profile_name(Profile p) {
  switch (p) {
    case Profile::Generic: return "generic";
    case Profile::Operator: return "operator";
    case Profile::Symmetric: return "symmetric";
    case Profile::Selfadjoint: return "selfadjoint";
    case Profile::Dissipative: return "dissipative";
    case Profile::Accretive: return "accretive";
    case Profile::Sectorial: return "sectorial";
    case Profile::Nonnegative: return "nonnegative";
    case Profile::Singular: return "singular";
    case Profile::PurelyMultivalued: return "purely-multivalued";
    case Profile::FormallyDomainTight: return "formally-domain-tight";
    case Profile::DomainTight: return "domain-tight";
  }
  return "?";
}

Profile profile_from_name(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(Profile::DomainTight); ++i) {
    const auto p = static_cast<Profile>(i);
    if (s == profile_name(p)) return p;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown generator profile: " + s);
}

namespace {

// {(d, M d + m) : d in D, m in Mu}
Relation operator_plus_mul(const Mat& m, const Subspace& d, const Subspace& mu) {
  const int n = static_cast<int>(m.rows());
  return cw_sum(Relation::from_operator(m, d), cross(Subspace::zero(n), mu));
}

// Cayley image of a unitary with some eigenvalues pinned to 1 (mul) and -1 (ker).
Relation cayley(Rng& rng, int n) {
  const Mat q = rng.unitary(n);
  Vec phase(n);
  const int pinned_one = rng.coin(0.5) ? rng.integer(0, std::max(0, n / 2)) : 0;
  const int pinned_minus = rng.coin(0.3) ? 1 : 0;
  for (int i = 0; i < n; ++i) {
    // Unpinned phases stay away from 0 so (I - U) is well conditioned on them.
    double th = (rng.coin() ? 1.0 : -1.0) * (0.05 + 2.95 * rng.uniform());
    if (i < pinned_one) th = 0.0;
    else if (i < pinned_one + pinned_minus) th = M_PI;
    phase(i) = std::polar(1.0, th);
  }
  const Mat u = q * phase.asDiagonal() * q.adjoint();
  const Mat id = Mat::Identity(n, n);
  Mat b(2 * n, n);
  b << (id - u), I1 * (id + u);
  return Relation(Subspace::span_scaled(b));
}

// Domain and an orthogonal mul part for the class constructions.
void class_shape(Rng& rng, int n, int maximal, Subspace& d, Subspace& mu) {
  const int a = rng.integer(maximal == 0 ? 0 : 1, maximal == 0 ? n - 1 : n);
  d = rng.subspace(n, a);
  const Subspace perp = complement(d);
  bool full = maximal == 1 || (maximal == -1 && rng.coin(0.5));
  if (full) {
    mu = perp;
  } else {
    mu = rng.subspace_in(perp, rng.integer(0, std::max(0, perp.dim() - 1)));
  }
}

Relation build(const GenProfile& p, Rng& rng) {
  const int n = p.n;
  switch (p.name) {
    case Profile::Generic: {
      if (p.graph_dim >= 0) return Relation(rng.subspace(2 * n, p.graph_dim));
      if (rng.coin(0.4)) return Relation(rng.subspace(2 * n, rng.integer(0, 2 * n)));
      const Subspace d = rng.subspace(n, rng.integer(0, n));
      const Subspace mu = rng.subspace(n, rng.integer(0, n));
      return operator_plus_mul(rng.gaussian(n, n), d, mu);
    }
    case Profile::Operator: {
      const int a = p.graph_dim >= 0 ? std::min(p.graph_dim, n) : rng.integer(0, n);
      return Relation::from_operator(rng.gaussian(n, n), rng.subspace(n, a));
    }
    case Profile::Selfadjoint: return cayley(rng, n);
    case Profile::Symmetric: {
      const Relation sa = cayley(rng, n);
      const int k = p.graph_dim >= 0 ? std::min(p.graph_dim, n) : rng.integer(0, n - 1);
      return Relation(rng.subspace_in(sa.graph(), k));
    }
    case Profile::Dissipative:
    case Profile::Accretive:
    case Profile::Sectorial:
    case Profile::Nonnegative: {
      Subspace d, mu;
      class_shape(rng, n, p.maximal, d, mu);
      const Mat c = rng.gaussian(n, rng.integer(0, n));
      const Mat psd = c * c.adjoint();
      Mat m;
      if (p.name == Profile::Dissipative) m = rng.hermitian(n) + I1 * psd;
      else if (p.name == Profile::Accretive) m = psd + I1 * rng.hermitian(n);
      else if (p.name == Profile::Nonnegative) m = psd;
      else {
        Mat b = rng.hermitian(n);
        const double nb = spectral_norm(b);
        if (nb > 0) b *= 0.9 * std::tan(p.alpha) * rng.uniform() / nb;
        const Mat cf = rng.gaussian(n, n);
        m = cf.adjoint() * (Mat::Identity(n, n) + I1 * b) * cf;
      }
      return operator_plus_mul(m, d, mu);
    }
    case Profile::Singular: {
      const Subspace s = rng.subspace(n, rng.integer(0, n));
      const Subspace t = rng.subspace(n, rng.integer(0, n));
      return cross(s, t);
    }
    case Profile::PurelyMultivalued: return cross(Subspace::zero(n), rng.subspace(n, rng.integer(0, n)));
    case Profile::FormallyDomainTight:
    case Profile::DomainTight: {
      const Subspace d = rng.subspace(n, rng.integer(0, n));
      const Subspace perp = complement(d);
      const Subspace mu = p.name == Profile::DomainTight ? perp : rng.subspace_in(perp, rng.integer(0, perp.dim()));
      return operator_plus_mul(rng.gaussian(n, n), d, mu);
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown profile");
}

// Singular values of F and G are either numerically zero or at least 1e-2:
// nearly multivalued or nearly singular draws amplify rounding beyond the law tolerances.
bool well_separated(const Relation& a) {
  for (const Mat* m : {&a.F(), &a.G()}) {
    if (m->cols() == 0) continue;
    Eigen::JacobiSVD<Mat> svd(*m);
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
      const double s = svd.singularValues()(i);
      if (s > kRankTol && s < 1e-2) return false;
    }
  }
  return true;
}

}  // namespace

bool satisfies_profile(const Relation& a, const GenProfile& p) {
  auto maximal_ok = [&](ClassKind k) {
    if (p.maximal == -1) return true;
    return is_maximal(a, {k, p.alpha}) == (p.maximal == 1);
  };
  switch (p.name) {
    case Profile::Generic: return true;
    case Profile::Operator: return a.mul().is_zero();
    case Profile::Symmetric: return is_symmetric(a);
    case Profile::Selfadjoint: return is_selfadjoint(a);
    case Profile::Dissipative: return is_dissipative(a) && maximal_ok(ClassKind::Dissipative);
    case Profile::Accretive: return is_accretive(a) && maximal_ok(ClassKind::Accretive);
    case Profile::Sectorial: return is_sectorial(a, p.alpha) && maximal_ok(ClassKind::Sectorial);
    case Profile::Nonnegative: return is_nonnegative(a) && maximal_ok(ClassKind::Nonnegative);
    case Profile::Singular: return is_singular(a);
    case Profile::PurelyMultivalued: return a.dom().is_zero();
    case Profile::FormallyDomainTight: return is_formally_domain_tight(a);
    case Profile::DomainTight: return is_domain_tight(a);
  }
  return false;
}

Relation generate(const GenProfile& p) {
  if (p.n <= 0) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  if (p.graph_dim > 2 * p.n) throw Error(ErrorCode::InvalidArgument, "graph_dim exceeds 2n");
  if (p.graph_dim >= 0) {
    const bool sized = p.name == Profile::Generic || p.name == Profile::Operator || p.name == Profile::Symmetric ||
                       p.name == Profile::Selfadjoint;
    if (!sized) throw Error(ErrorCode::InvalidArgument, std::string("graph_dim is not supported for ") + profile_name(p.name));
    if (p.name == Profile::Selfadjoint ? p.graph_dim != p.n : (p.name != Profile::Generic && p.graph_dim > p.n))
      throw Error(ErrorCode::InvalidArgument, "infeasible graph_dim for " + std::string(profile_name(p.name)));
  }
  if (p.name == Profile::Sectorial && !(p.alpha > 0 && p.alpha < M_PI / 2))
    throw Error(ErrorCode::InvalidArgument, "sectorial angle must lie in (0, pi/2)");
  if (p.maximal == 0 && p.n < 2 && p.name != Profile::Generic)
    throw Error(ErrorCode::InvalidArgument, "non-maximal class relations need n >= 2");
  std::uint64_t s = p.seed;
  for (int attempt = 0; attempt < 64; ++attempt) {
    Rng rng(splitmix64(s));
    Relation a = build(p, rng);
    if (satisfies_profile(a, p) && well_separated(a)) return a;
    s = splitmix64(s + 0x1234567ULL);
  }
  throw Error(ErrorCode::InvalidArgument, std::string("could not generate a ") + profile_name(p.name) + " relation");
}

}  // namespace relcalc
