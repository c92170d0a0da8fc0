#include "core/classify.hpp"
#include "core/decompose.hpp"
#include "core/spectral.hpp"
#include "laws/laws.hpp"

#include <cmath>
#include <initializer_list>

namespace relcalc {

namespace {

Relation gen(Rng& rng, Profile p, int n, int maximal = -1) {
  GenProfile g;
  g.name = p;
  g.n = n;
  g.seed = rng.engine()();
  g.maximal = maximal;
  return generate(g);
}

Relation draw(Rng& rng, int n, std::initializer_list<Profile> ps) {
  const int k = rng.integer(0, static_cast<int>(ps.size()) - 1);
  return gen(rng, *(ps.begin() + k), n);
}

const std::initializer_list<Profile> kMixed = {Profile::Generic, Profile::Generic, Profile::Operator,
                                               Profile::Singular, Profile::FormallyDomainTight,
                                               Profile::DomainTight, Profile::Symmetric};

Subspace full(int n) { return Subspace::full(n); }
Subspace zero(int n) { return Subspace::zero(n); }
Relation star(const Relation& a) { return adjoint(a); }
Relation closure(const Relation& a) { return adjoint(adjoint(a)); }
Relation graph_of(const Mat& m) { return Relation::from_operator(m); }

bool fdt(const Relation& a) { return is_formally_domain_tight(a); }
bool dt(const Relation& a) { return is_domain_tight(a); }

// Relation i*B for readability.
Relation times_i(const Relation& b) { return scalar_mul(I1, b); }

struct ClassPick {
  Profile profile;
  OperatorClass cls;
};

ClassPick pick_class(Rng& rng) {
  static const ClassPick picks[] = {
      {Profile::Dissipative, {ClassKind::Dissipative, 0.0}},
      {Profile::Accretive, {ClassKind::Accretive, 0.0}},
      {Profile::Sectorial, {ClassKind::Sectorial, 1.0471975511965976}},
      {Profile::Nonnegative, {ClassKind::Nonnegative, 0.0}},
  };
  return picks[rng.integer(0, 3)];
}

// Relation in C^k viewed through an isometry q (n x k); k = 0 has no relation.
std::optional<Relation> compress_to(const Relation& a, const Subspace& s) {
  if (s.dim() == 0) return std::nullopt;
  return compress(a, s.basis());
}

// Normal operator on a random subspace plus the orthogonal purely multivalued part.
Relation normal_relation(Rng& rng, int n) {
  const Subspace h = rng.subspace(n, rng.integer(1, n));
  const int k = h.dim();
  const Mat u = rng.unitary(k);
  Vec d(k);
  for (int i = 0; i < k; ++i) d(i) = rng.cnormal();
  const Mat nk = u * d.asDiagonal() * u.adjoint();
  const Mat m = h.basis() * nk * h.basis().adjoint();
  return cw_sum(Relation::from_operator(m, h), cross(zero(n), complement(h)));
}

std::vector<Law> build_registry() {
  std::vector<Law> laws;
  auto add = [&](std::string id, std::string statement, std::function<void(Rng&, int, Checker&)> body,
                 bool degenerate = false) { laws.push_back({std::move(id), std::move(statement), degenerate, std::move(body)}); };

  add("adjoint-duality", "(dom A)^perp = mul A*, (ran A)^perp = ker A*, and the same for A*", [](Rng& rng, int n, Checker& ck) {
    const Relation a = draw(rng, n, kMixed);
    const Relation s = star(a), c = closure(a);
    ck.same(complement(a.dom()), s.mul(), "dom/mul");
    ck.same(complement(a.ran()), s.ker(), "ran/ker");
    ck.same(complement(s.dom()), c.mul(), "dom*/mul**");
    ck.same(complement(s.ran()), c.ker(), "ran*/ker**");
  });

  add("adjoint-involution", "A** = A and (A^-1)* = (A*)^-1", [](Rng& rng, int n, Checker& ck) {
    const Relation a = draw(rng, n, kMixed);
    ck.same(closure(a), a, "A** = A");
    ck.same(star(inverse(a)), inverse(star(a)), "inverse/adjoint");
  });

  add("cw-adjoint", "(A (+) B)* = A* cap B*", [](Rng& rng, int n, Checker& ck) {
    const Relation a = draw(rng, n, kMixed), b = draw(rng, n, kMixed);
    ck.same(star(cw_sum(a, b)), intersect(star(a), star(b)), "cw sum adjoint");
  });

  add("opsum-adjoint", "A* + B* in (A + B)*, with equality for everywhere defined B", [](Rng& rng, int n, Checker& ck) {
    const Relation a = draw(rng, n, kMixed), b = draw(rng, n, kMixed);
    ck.sub(op_sum(star(a), star(b)), star(op_sum(a, b)), "inclusion");
    const Relation m = graph_of(rng.gaussian(n, n));
    ck.same(op_sum(star(a), star(m)), star(op_sum(a, m)), "bounded summand");
  });

  add("product-adjoint", "B*A* in (AB)*, with equality for everywhere defined A", [](Rng& rng, int n, Checker& ck) {
    const Relation a = draw(rng, n, kMixed), b = draw(rng, n, kMixed);
    ck.sub(product(star(b), star(a)), star(product(a, b)), "inclusion");
    const Relation m = graph_of(rng.gaussian(n, n));
    ck.same(star(product(m, b)), product(star(b), star(m)), "bounded left factor");
  });

  add("projection-product", "AR = A (+) (Y x {0}) and A(I-R) = (dom A + X) x mul A", [](Rng& rng, int n, Checker& ck) {
    const Relation a = draw(rng, n, kMixed);
    const Subspace ms = star(a).mul();
    const Subspace x = rng.subspace_in(ms, rng.integer(0, ms.dim()));
    const Subspace y = intersect(ms, complement(x));
    const Subspace dx = sum(a.dom(), x);
    const Mat r = dx.projector();
    ck.same(product(a, graph_of(r)), cw_sum(a, cross(y, zero(n))), "AR");
    ck.same(product(a, graph_of(Mat::Identity(n, n) - r)), cross(dx, a.mul()), "A(I-R)");
    ck.same(product(a, graph_of(r)).dom(), sum(a.dom(), y), "dom AR");
  });

  add("dom-ran-sum", "C^n = dom A** + ran A* = ran A** + dom A*", [](Rng& rng, int n, Checker& ck) {
    const Relation a = draw(rng, n, kMixed);
    const Relation s = star(a), c = closure(a);
    ck.same(sum(c.dom(), s.ran()), full(n), "dom** + ran*");
    ck.same(sum(c.ran(), s.dom()), full(n), "ran** + dom*");
  });

  add("easy", "dom A in dom A* iff mul A** in mul A*, and dom A* in dom A iff mul A* in mul A**", [](Rng& rng, int n, Checker& ck) {
    const Relation a = draw(rng, n, kMixed);
    const Relation s = star(a), c = closure(a);
    ck.iff(leq(a.dom(), s.dom()), leq(c.mul(), s.mul()), "first");
    ck.iff(leq(s.dom(), a.dom()), leq(s.mul(), c.mul()), "second");
    ck.iff(equal(a.dom(), s.dom()), equal(c.mul(), s.mul()), "equality");
  });

  add("canonical", "A = A_reg + A_sing, mul A_sing = mul A, A_reg regular, A_sing singular", [](Rng& rng, int n, Checker& ck) {
    const Relation a = draw(rng, n, kMixed);
    const Relation reg = regular_part(a), sing = singular_part(a);
    ck.same(op_sum(reg, sing), a, "reassembly");
    ck.same(sing.mul(), a.mul(), "mul A_sing");
    ck.truth(reg.mul().is_zero(), "A_reg operator");
    ck.truth(closure(reg).mul().is_zero(), "A_reg closable");
    ck.sub(sing.ran(), closure(sing).mul(), "A_sing singular");
    ck.same(closure(reg), regular_part(closure(a)), "(A_reg)** = (A**)_reg");
  });

  add("singular-equiv", "singular iff dom A* = ker A* iff A* = dom A* x mul A*; singular iff A = dom A x mul A", [](Rng& rng, int n, Checker& ck) {
    const Relation a = draw(rng, n, {Profile::Singular, Profile::Singular, Profile::PurelyMultivalued, Profile::Generic,
                                     Profile::Operator});
    const Relation s = star(a);
    const bool p = is_singular(a);
    ck.iff(p, equal(s.dom(), s.ker()), "dom* = ker*");
    ck.iff(p, equal(s, cross(s.dom(), s.mul())), "A* product form");
    ck.iff(p, equal(closure(a), cross(a.dom(), closure(a).mul())), "A** product form");
    ck.iff(p, equal(a, cross(a.dom(), a.mul())), "A = dom x mul");
    ck.iff(p, equal(a.dom(), a.ker()), "dom = ker");
    ck.iff(p, is_singular(inverse(a)), "inverse singular");
    ck.iff(p, is_singular(s), "adjoint singular");
  });

  add("regular-equiv", "regular iff mul A** = {0} iff A* densely defined iff ran A in H_A iff A_op = A", [](Rng& rng, int n, Checker& ck) {
    const Relation a = draw(rng, n, kMixed);
    const bool p = is_regular(a);
    ck.iff(p, star(a).dom().is_full(), "dom A* dense");
    ck.iff(p, a.mul().is_zero(), "mul A = {0}");
    ck.iff(p, leq(a.ran(), regular_space(a)), "ran A in H_A");
    ck.iff(p, equal(operator_part(a), a), "A_op = A");
    ck.iff(p, regular_space(a).is_full(), "H_A = C^n");
  });

  add("componentwise-unique", "B (+) A_mul = A with ran B in H_A forces B = A_op", [](Rng& rng, int n, Checker& ck) {
    const Relation a = draw(rng, n, kMixed);
    const Relation op = operator_part(a), am = mul_part(a);
    const Subspace h = regular_space(a);
    // Rotated basis of A_op.
    if (op.dim() > 0) {
      const Relation rot(Subspace::span(op.graph().basis() * rng.unitary(op.dim())));
      ck.truth(equal(cw_sum(rot, am), a), "rotation reassembles");
      ck.same(rot, op, "rotation coincides");
    }
    // Perturbation K into H_A restricted to dom A.
    const Mat k = h.projector() * rng.gaussian(n, n) * (rng.coin(0.2) ? 0.0 : 1.0);
    const Relation b = op_sum(op, graph_of(k));
    ck.sub(b.ran(), h, "ran B in H_A");
    ck.iff(equal(cw_sum(b, am), a), equal(b, op), "reassembles iff B = A_op");
  });

  add("reglem-equiv", "dom A_op = dom A, A_reg = A_op in A, ran (I-P)A in mul A, A = A_reg (+) A_mul", [](Rng& rng, int n, Checker& ck) {
    const Relation a = draw(rng, n, kMixed);
    const Relation op = operator_part(a), reg = regular_part(a);
    ck.same(op.dom(), a.dom(), "dom A_op");
    ck.same(reg, op, "A_reg = A_op");
    ck.sub(reg, a, "A_reg in A");
    ck.sub(singular_part(a).ran(), a.mul(), "ran (I-P)A");
    ck.same(cw_sum(reg, mul_part(a)), a, "A = A_reg (+) A_mul");
    const auto d = is_decomposable(a);
    ck.truth(d.decomposable, "decomposable");
    if (d.certificate) ck.value(d.certificate->identity_residual, "certificate residual");
    ck.same(closure(op), operator_part(closure(a)), "(A_op)** = (A**)_op");
    ck.same(closure(mul_part(a)), mul_part(closure(a)), "(A_mul)** = (A**)_mul");
  });

  add("maxpart", "A_m = A_op = A_reg, ran A_m in H_A, A = A_m (+) A_mul", [](Rng& rng, int n, Checker& ck) {
    const Relation a = draw(rng, n, kMixed);
    const Decomposition d = max_part_decompose(a);
    const Relation& am = d.parts[0];
    ck.truth(am.mul().is_zero(), "A_m operator");
    ck.same(am, operator_part(a), "A_m = A_op");
    ck.same(am, regular_part(a), "A_m = A_reg");
    ck.sub(am.ran(), regular_space(a), "ran A_m in H_A");
    ck.same(closure(a).mul(), a.mul(), "mul A** = mul A");
    ck.value(d.identity_residual, "A = A_m (+) A_mul");
  });

  add("orth-iff", "orthogonal decomposition exists iff mul A** in mul A*", [](Rng& rng, int n, Checker& ck) {
    const Relation a = draw(rng, n, {Profile::Generic, Profile::FormallyDomainTight, Profile::DomainTight,
                                     Profile::Symmetric, Profile::Singular});
    const bool cond = leq(closure(a).mul(), star(a).mul());
    try {
      const OrthogonalDecomposition od = orthogonal_decompose(a);
      ck.truth(cond, "success implies condition");
      ck.value(od.dec.identity_residual, "reassembly");
      ck.sub(od.dec.parts[0].dom(), od.regular_space, "dom A_op in H_A");
      ck.sub(od.dec.parts[0].ran(), od.regular_space, "ran A_op in H_A");
      ck.same(sum(od.regular_space, od.mul_closure), full(n), "splitting");
    } catch (const Error& e) {
      if (e.code() != ErrorCode::OrthogonalRefused) throw;
      ck.truth(!cond, "refusal implies failed condition");
      const Vec& w = *e.witness();
      ck.truth(a.dom().contains(w), "witness in dom A");
      ck.truth(a.mul().basis().size() > 0 && (a.mul().basis().adjoint() * w).norm() > kEqualTol * w.norm(),
               "witness not orthogonal to mul A");
    }
  });

  add("adjoint-orth-iff", "A* = (A*)_op (+) (A*)_mul orthogonally iff mul A* in mul A**", [](Rng& rng, int n, Checker& ck) {
    const Relation a = draw(rng, n, {Profile::Generic, Profile::FormallyDomainTight, Profile::DomainTight,
                                     Profile::Operator, Profile::Singular});
    const AdjointDecomposition d = adjoint_decompose(a);
    const Relation s = star(a);
    ck.value(d.dec.identity_residual, "reassembly");
    const bool cond = leq(s.mul(), closure(a).mul());
    ck.iff(d.orthogonal, cond, "orthogonality criterion");
    ck.iff(cond, excess(s.dom(), complement(s.mul())) <= kEqualTol, "dom A* orthogonal to mul A*");
  });

  add("opstar-commute", "mul A = mul A* implies (A_op)* = (A*)_op in H_A", [](Rng& rng, int n, Checker& ck) {
    const Relation a = draw(rng, n, {Profile::DomainTight, Profile::Selfadjoint});
    const Relation s = star(a);
    ck.same(a.mul(), s.mul(), "hypothesis");
    const Subspace h = regular_space(a);
    const auto b = compress_to(operator_part(a), h);
    if (!b) {
      ck.vacuous();
      return;
    }
    ck.truth(b->dom().is_full(), "A_op densely defined in H_A");
    ck.same(embed(adjoint(*b), h.basis()), operator_part(s), "(A_op)* = (A*)_op");
  });

  add("mulba", "A domain tight with mul A = mul A* iff A = B (+) A_mul orthogonally, B densely defined domain tight in H_A",
      [](Rng& rng, int n, Checker& ck) {
        const Relation a = draw(rng, n, {Profile::DomainTight, Profile::Selfadjoint, Profile::Generic,
                                         Profile::FormallyDomainTight});
        const Relation s = star(a);
        const bool lhs = dt(a) && equal(a.mul(), s.mul());
        bool rhs = leq(a.mul(), s.mul());
        if (rhs) {
          const Subspace h = regular_space(a);
          const Relation op = operator_part(a);
          rhs = equal(cw_sum(op, mul_part(a)), a) && leq(op.dom(), h);
          if (rhs) {
            if (auto b = compress_to(op, h)) rhs = b->dom().is_full() && dt(*b);
            if (auto m = compress_to(mul_part(a), closure(a).mul())) rhs = rhs && is_selfadjoint(*m);
          }
        }
        ck.iff(lhs, rhs, "characterization");
      });

  add("convexity", "the numerical range is convex: each u l1 + (1-u) l2 is attained", [](Rng& rng, int n, Checker& ck) {
    const Relation a = draw(rng, n, {Profile::Generic, Profile::Operator, Profile::Dissipative, Profile::DomainTight});
    if (a.dom().is_zero()) {
      ck.vacuous();
      return;
    }
    auto unit = [&]() {
      for (;;) {
        Vec z = rng.gaussian_vec(a.dim());
        const double nf = (a.F() * z).norm();
        if (nf > 1e-6 * z.norm()) return Vec(z / nf);
      }
    };
    const Vec z1 = unit(), z2 = unit();
    if (std::abs(rayleigh(a, z1) - rayleigh(a, z2)) < 1e-6) {
      ck.vacuous();
      return;
    }
    for (double u : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const ConvexWitness w = nrange_convex_witness(a, z1, z2, u);
      ck.value(std::abs(w.value - w.target), "witness value");
      ck.value(std::abs(w.element.f.norm() - 1.0), "unit f");
      ck.truth(a.contains(w.element.f, w.element.f_prime), "witness in A");
    }
  });

  add("nr-mulinc", "W(A) in a half-plane implies mul A in mul A* and ||(A - l)^-1|| <= 1/d(l)", [](Rng& rng, int n, Checker& ck) {
    const ClassPick cp = pick_class(rng);
    const Relation a = gen(rng, cp.profile, n);
    ck.sub(a.mul(), star(a).mul(), "mul A in mul A*");
    const double t = 0.1 + 3.0 * rng.uniform();
    const cplx lam = cp.cls.kind == ClassKind::Dissipative ? cplx(0.0, -t) : cplx(-t, 0.0);
    const double c = regularity_constant(a, lam);
    ck.truth(c >= t * (1.0 - 1e-8), "resolvent bound by distance");
  });

  add("maximal-mul", "maximal with respect to the numerical range implies mul A = mul A*", [](Rng& rng, int n, Checker& ck) {
    const ClassPick cp = pick_class(rng);
    const Relation a = gen(rng, cp.profile, n, rng.coin(0.7) ? 1 : -1);
    if (!is_maximal(a, cp.cls)) {
      ck.vacuous();
      return;
    }
    ck.same(a.mul(), star(a).mul(), "mul A = mul A*");
    ck.same(infinity_ext(a), a, "A_inf = A");
  });

  add("resolvent-est", "||(A-l)^-1|| <= ||(A-m)^-1|| / (1 - |l-m| ||(A-m)^-1||)", [](Rng& rng, int n, Checker& ck) {
    const Relation a = draw(rng, n, kMixed);
    const cplx mu = 2.0 * rng.cnormal();
    const double cm = regularity_constant(a, mu);
    if (!std::isfinite(cm) || !(cm > gamma_tol(a, mu))) {
      ck.vacuous();
      return;
    }
    const cplx lam = mu + 0.95 * rng.uniform() * cm * std::polar(1.0, 2.0 * M_PI * rng.uniform());
    const ResolventCheck r = resolvent_norm_bound_check(a, mu, lam);
    ck.truth(r.holds, "estimate");
    ck.truth(regularity_constant(a, lam) >= cm - std::abs(lam - mu) - 1e-9 * (1.0 + cm), "regular type persists");
  });

  add("defect-const", "dim ran(A - l)^perp is constant off the eigenvalues", [](Rng& rng, int n, Checker& ck) {
    const Relation a = draw(rng, n, kMixed);
    const SpectralReport sr = eigenvalues(a);
    if (sr.every_point) {
      ck.vacuous();
      return;
    }
    auto sample = [&]() {
      for (;;) {
        const cplx l = 3.0 * std::sqrt(rng.uniform()) * std::polar(1.0, 2.0 * M_PI * rng.uniform());
        bool near = false;
        for (const auto& e : sr.eigenvalues)
          if (std::abs(e.value - l) < 0.1) near = true;
        if (!near) return l;
      }
    };
    const cplx l0 = sample();
    const int d0 = defect(a, l0);
    for (int i = 0; i < 20; ++i) {
      const cplx l = sample();
      ck.truth(defect(a, l) == d0, "constant defect");
    }
    // Step 1 of the proof: ||(I - P_mu) h|| <= |l - mu| / c(mu) ||h|| for h in ran(A - l)^perp.
    const double cm = regularity_constant(a, l0);
    if (std::isfinite(cm) && cm > gamma_tol(a, l0)) {
      const cplx l = l0 + 0.45 * cm * std::polar(1.0, 2.0 * M_PI * rng.uniform());
      const Subspace hl = complement(shift(a, l).ran());
      const Subspace hm = complement(shift(a, l0).ran());
      if (hl.dim() > 0) {
        const int nn = a.n();
        const Mat proj = (Mat::Identity(nn, nn) - hm.projector()) * hl.basis();
        ck.truth(spectral_norm(proj) <= std::abs(l - l0) / cm * (1.0 + 1e-8) + 1e-12, "step-one bound");
      }
      ck.truth(opening(hl, hm) < 1.0 - 1e-12 || hl.dim() == 0, "opening below one");
    }
  });

  add("ainf-adjoint", "(A_inf)* = A* cap (dom A x C^n), dom A_inf = dom A, mul A_inf = mul A + mul A*", [](Rng& rng, int n, Checker& ck) {
    const Relation a = draw(rng, n, kMixed);
    const Relation s = star(a), ai = infinity_ext(a);
    ck.same(star(ai), intersect(s, cross(a.dom(), full(n))), "(A_inf)*");
    ck.same(star(ai).dom(), intersect(a.dom(), s.dom()), "dom (A_inf)*");
    ck.same(star(ai).mul(), s.mul(), "mul (A_inf)*");
    ck.same(ai.dom(), a.dom(), "dom A_inf");
    ck.same(ai.mul(), sum(a.mul(), s.mul()), "mul A_inf");
  });

  add("ainf-tight", "A fdt iff A_inf fdt; A_inf dt iff dom A = dom A cap dom A*; A dt iff A_inf dt and dom A* in dom A", [](Rng& rng, int n, Checker& ck) {
    const Relation a = draw(rng, n, {Profile::Generic, Profile::FormallyDomainTight, Profile::DomainTight,
                                     Profile::Symmetric, Profile::Selfadjoint, Profile::Operator});
    const Relation s = star(a), ai = infinity_ext(a);
    ck.iff(fdt(a), fdt(ai), "(i)");
    ck.iff(dt(ai), equal(a.dom(), intersect(a.dom(), s.dom())), "(ii)");
    ck.iff(dt(a), dt(ai) && leq(s.dom(), a.dom()), "(iii)");
    if (dt(a)) {
      ck.same(star(ai), s, "(A_inf)* = A*");
      ck.same(s, infinity_ext(s), "A* = (A*)_inf");
    }
  });

  add("ainf-marci", "for fdt A: mul A_inf = mul A*, A_inf = A iff mul A* = mul A, A_inf operator iff dom A = C^n", [](Rng& rng, int n, Checker& ck) {
    const Relation a = draw(rng, n, {Profile::FormallyDomainTight, Profile::DomainTight, Profile::Symmetric,
                                     Profile::Selfadjoint, Profile::Operator});
    if (!fdt(a)) {
      ck.vacuous();
      return;
    }
    const Relation s = star(a), ai = infinity_ext(a);
    ck.same(ai.mul(), s.mul(), "(i)");
    ck.iff(equal(ai, a), equal(s.mul(), a.mul()), "(ii)");
    ck.same(intersect(a, cross(zero(n), s.mul())), cross(zero(n), a.mul()), "(iii) intersection");
    const bool direct = intersect(a.graph(), cross(zero(n), s.mul()).graph()).is_zero();
    ck.iff(direct, a.mul().is_zero(), "(iii) direct iff operator");
    ck.iff(ai.mul().is_zero(), a.dom().is_full(), "(iv)");
    if (dt(a) && equal(closure(a).mul(), a.mul())) ck.same(ai, a, "domain tight and closed");
  });

  add("ainf-selfadjoint", "A_inf selfadjoint iff A symmetric and dom A = dom A cap dom A*", [](Rng& rng, int n, Checker& ck) {
    const Relation a = draw(rng, n, {Profile::Symmetric, Profile::Selfadjoint, Profile::Generic, Profile::Dissipative,
                                     Profile::FormallyDomainTight});
    const Relation s = star(a);
    ck.iff(is_selfadjoint(infinity_ext(a)), is_symmetric(a) && equal(a.dom(), intersect(a.dom(), s.dom())), "criterion");
  });

  add("sym-sa", "symmetric, domain tight and mul A* in mul A imply selfadjoint", [](Rng& rng, int n, Checker& ck) {
    const Relation a = draw(rng, n, {Profile::Selfadjoint, Profile::Symmetric, Profile::Symmetric});
    const Relation s = star(a);
    const bool hyp = is_symmetric(a) && dt(a) && leq(s.mul(), a.mul());
    if (!hyp) {
      ck.truth(!is_selfadjoint(a) || !is_symmetric(a) || dt(a), "selfadjoint relations are domain tight");
      ck.vacuous();
      return;
    }
    ck.truth(is_selfadjoint(a), "selfadjoint");
  });

  add("reim", "Re A = Re A*, Im A = -Im A*, Re/Im symmetric, mul Re A = mul Im A = mul A + mul A*", [](Rng& rng, int n, Checker& ck) {
    const Relation a = draw(rng, n, kMixed);
    const Relation s = star(a);
    const Relation re = real_part(a), im = imag_part(a);
    ck.same(re, real_part(s), "Re A = Re A*");
    ck.same(im, scalar_mul(-1.0, imag_part(s)), "Im A = -Im A*");
    ck.same(re, real_part(closure(a)), "Re A** = Re A");
    ck.sub(re, star(re), "Re A symmetric");
    ck.sub(im, star(im), "Im A symmetric");
    ck.truth(is_symmetric(re) && is_symmetric(im), "form test");
    ck.same(re.mul(), sum(a.mul(), s.mul()), "mul Re A");
    ck.same(im.mul(), re.mul(), "mul Im A");
    ck.same(re.dom(), intersect(a.dom(), s.dom()), "dom Re A");
    ck.same(im.dom(), re.dom(), "dom Im A");
    if (fdt(a)) ck.same(re.mul(), s.mul(), "fdt: mul Re A = mul A*");
  });

  add("eenv", "Re A in A (+) A*, ran Im A = mul(A (+) A*), ran Re A = mul(-A (+) A*), Re A +- i Im A in Re A (+) ({0} x ran Im A) in A (+) A*, and the same for Im with -iA", [](Rng& rng, int n, Checker& ck) {
    const Relation a = draw(rng, n, kMixed);
    const Relation s = star(a), both = cw_sum(a, s);
    const Relation re = real_part(a), im = imag_part(a);
    // Im A = Re(-iA); Im A is not inside A (+) A* in general (A = I already fails).
    const Relation rot = scalar_mul(-I1, a);
    const Relation both_rot = cw_sum(rot, star(rot));
    ck.sub(re, both, "Re A in A (+) A*");
    ck.same(im, real_part(rot), "Im A = Re(-iA)");
    ck.sub(im, both_rot, "Im A in (-iA) (+) (-iA)*");
    ck.same(im.ran(), both.mul(), "ran Im A");
    ck.same(re.ran(), cw_sum(scalar_mul(-1.0, a), s).mul(), "ran Re A");
    const Relation mid_re = cw_sum(re, cross(zero(n), im.ran()));
    const Relation mid_im = cw_sum(im, cross(zero(n), re.ran()));
    for (double sg : {1.0, -1.0}) {
      ck.sub(op_sum(re, scalar_mul(sg * I1, im)), mid_re, "Re +- i Im");
      ck.sub(op_sum(im, scalar_mul(sg * I1, re)), mid_im, "Im +- i Re");
    }
    ck.sub(mid_re, both, "middle (Re)");
    ck.sub(mid_im, both_rot, "middle (Im)");
  });

  add("fdtight", "fdt iff A in Re A + i Im A iff (Re A) (+) A* = A (+) A*", [](Rng& rng, int n, Checker& ck) {
    const Relation a = draw(rng, n, {Profile::Generic, Profile::FormallyDomainTight, Profile::DomainTight,
                                     Profile::Operator, Profile::Symmetric});
    const Relation s = star(a);
    const Relation re = real_part(a), im = imag_part(a);
    const bool p = fdt(a);
    ck.iff(p, leq(a, op_sum(re, times_i(im))), "(ii)");
    ck.iff(p, equal(cw_sum(re, s), cw_sum(a, s)), "(iii)");
    if (p) {
      const Relation b = op_diff(re, times_i(im));
      ck.same(b.dom(), a.dom(), "(iv) dom B = dom A");
      ck.sub(a, star(b), "(iv) A in B*");
    }
  });

  add("rmlem", "dom A* in dom A iff (Re A) (+) A = A (+) A*; domain tight implies Re A = Re A*, Im A = -Im A*", [](Rng& rng, int n, Checker& ck) {
    const Relation a = draw(rng, n, {Profile::Generic, Profile::DomainTight, Profile::Operator, Profile::FormallyDomainTight});
    const Relation s = star(a);
    ck.iff(leq(s.dom(), a.dom()), equal(cw_sum(real_part(a), a), cw_sum(a, s)), "(i)");
    if (dt(a)) {
      ck.same(real_part(a), real_part(s), "(ii) Re");
      ck.same(imag_part(a), scalar_mul(-1.0, imag_part(s)), "(ii) Im");
    }
  });

  add("reaal", "dt iff (Re A) (+) A = (Re A) (+) A* iff Re A (+) ({0} x ran Im A) = A (+) A*", [](Rng& rng, int n, Checker& ck) {
    const Relation a = draw(rng, n, {Profile::Generic, Profile::DomainTight, Profile::FormallyDomainTight,
                                     Profile::Selfadjoint, Profile::Operator});
    const Relation s = star(a), re = real_part(a), im = imag_part(a);
    const bool p = dt(a);
    const Relation both = cw_sum(a, s);
    const Relation mid = cw_sum(re, cross(zero(n), im.ran()));
    ck.iff(p, equal(cw_sum(re, a), cw_sum(re, s)), "(ii)");
    ck.iff(p, equal(mid, both), "(iii)");
    if (p) {
      ck.same(cw_sum(re, a), both, "chain 2");
      ck.same(cw_sum(re, s), both, "chain 3");
    }
  });

  add("cart", "fdt iff A = A1 + i A2 with A1, A2 symmetric iff A_inf = Re A + i Im A", [](Rng& rng, int n, Checker& ck) {
    const Relation a = draw(rng, n, {Profile::Generic, Profile::FormallyDomainTight, Profile::DomainTight,
                                     Profile::Operator, Profile::Dissipative});
    const bool p = fdt(a);
    const bool inf_ok = equal(infinity_ext(a), op_sum(real_part(a), times_i(imag_part(a))));
    ck.iff(p, inf_ok, "(iii)");
    try {
      const Cartesian c = cartesian_components(a);
      ck.truth(p, "components exist only for fdt");
      ck.value(c.reassembly_residual, "A = A1 + i A2");
      ck.value(c.infinity_residual, "A_inf = Re A + i Im A");
      ck.truth(is_symmetric(c.a1) && is_symmetric(c.a2), "A1, A2 symmetric");
      ck.sub(c.a1, star(c.a1), "A1 in A1*");
      ck.sub(c.a2, star(c.a2), "A2 in A2*");
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotFormallyDomainTight) throw;
      ck.truth(!p, "refusal only without fdt");
      const Vec& w = *e.witness();
      ck.truth(a.dom().contains(w) && !star(a).dom().contains(w), "witness in dom A outside dom A*");
    }
  });

  add("cart-plus", "dt iff A_inf = Re A + i Im A and (A*)_inf = Re A - i Im A iff A in Re A + i Im A and A* = Re A - i Im A", [](Rng& rng, int n, Checker& ck) {
    const Relation a = draw(rng, n, {Profile::DomainTight, Profile::FormallyDomainTight, Profile::Generic,
                                     Profile::Selfadjoint});
    const Relation s = star(a), re = real_part(a), im = imag_part(a);
    const Relation plus = op_sum(re, times_i(im)), minus = op_diff(re, times_i(im));
    const bool p = dt(a);
    ck.iff(p, equal(infinity_ext(a), plus) && equal(infinity_ext(s), minus), "(ii)");
    ck.iff(p, leq(a, plus) && equal(s, minus), "(iii)");
    bool iv = false;
    if (fdt(a)) {
      const Cartesian c = cartesian_components(a);
      iv = c.reassembly_residual <= kEqualTol && equal(s, minus);
    }
    ck.iff(p, iv, "(iv)");
  });

  add("cart-plusplus", "dt with mul A = mul A* iff A = Re A + i Im A and A* = Re A - i Im A iff A = A1 + i A2, A* = A1 - i A2", [](Rng& rng, int n, Checker& ck) {
    const Relation a = draw(rng, n, {Profile::DomainTight, Profile::DomainTight, Profile::FormallyDomainTight,
                                     Profile::Generic, Profile::Selfadjoint});
    const Relation s = star(a), re = real_part(a), im = imag_part(a);
    const bool p = dt(a) && equal(a.mul(), s.mul());
    ck.iff(p, equal(a, op_sum(re, times_i(im))) && equal(s, op_diff(re, times_i(im))), "(ii)");
    bool iii = false;
    if (fdt(a)) {
      const Cartesian c = cartesian_components(a);
      iii = c.reassembly_residual <= kEqualTol && equal(s, op_diff(c.a1, times_i(c.a2)));
    }
    ck.iff(p, iii, "(iii)");
  });

  add("dualpair", "B = A1 - i A2 has dom B = dom A, B in A*, A in B*, A1 cap (dom A x C^n) in Re A", [](Rng& rng, int n, Checker& ck) {
    const Relation a = draw(rng, n, {Profile::FormallyDomainTight, Profile::DomainTight, Profile::Symmetric,
                                     Profile::Dissipative});
    const Cartesian c = cartesian_components(a);
    const Relation b = op_diff(c.a1, times_i(c.a2));
    ck.same(b.dom(), a.dom(), "dom B");
    ck.truth(fdt(b), "B fdt");
    ck.sub(b, star(a), "B in A*");
    ck.sub(a, star(b), "A in B*");
    const Relation box = cross(a.dom(), full(n));
    ck.sub(intersect(c.a1, box), real_part(a), "A1 part");
    ck.sub(intersect(c.a2, box), imag_part(a), "A2 part");
    ck.sub(op_sum(c.a1, times_i(c.a2)), op_sum(real_part(a), times_i(imag_part(a))), "A1 + i A2");
    ck.sub(b, op_diff(real_part(a), times_i(imag_part(a))), "A1 - i A2");
  });

  add("class-orth", "maximal class, selfadjoint or normal A = A_op (+) A_mul orthogonally with A_op in the class on H_A", [](Rng& rng, int n, Checker& ck) {
    const int pick = rng.integer(0, 5);
    Relation a;
    std::optional<OperatorClass> cls;
    if (pick < 4) {
      const ClassPick cp = pick_class(rng);
      a = gen(rng, cp.profile, n, 1);
      cls = cp.cls;
    } else if (pick == 4) {
      a = gen(rng, Profile::Selfadjoint, n);
    } else {
      a = normal_relation(rng, n);
    }
    const OrthogonalDecomposition od = orthogonal_decompose(a);
    ck.value(od.dec.identity_residual, "reassembly");
    const Subspace h = regular_space(a);
    if (auto b = compress_to(operator_part(a), h)) {
      ck.truth(b->dom().is_full(), "A_op densely defined");
      if (cls) {
        ck.truth(in_class(*b, *cls), "A_op in class");
        ck.truth(is_maximal(*b, *cls), "A_op maximal");
      } else if (pick == 4) {
        ck.truth(is_selfadjoint(*b), "A_op selfadjoint");
      } else {
        ck.truth(is_normal(a), "A normal");
        ck.truth(is_normal(*b), "A_op normal");
      }
    }
    if (auto m = compress_to(mul_part(a), a.mul())) ck.truth(is_selfadjoint(*m), "A_mul selfadjoint in mul A");
  });

  add("tight-ext", "A dt in H, B fdt extension in K: dom B cap H = P dom B*, B tight and *-tight", [](Rng& rng, int n, Checker& ck) {
    const Relation a = draw(rng, n, {Profile::DomainTight, Profile::Selfadjoint});
    const int k = rng.integer(1, 3), m = n + k;
    const Mat u = rng.unitary(m);
    const Mat v = u.leftCols(n), w = u.rightCols(k);
    const Subspace kk = rng.subspace(k, rng.integer(0, k));
    const Subspace m2 = rng.subspace_in(complement(kk), rng.integer(0, k - kk.dim()));
    Relation b = embed(a, v);
    if (kk.dim() > 0) b = cw_sum(b, Relation::from_operator(rng.gaussian(m, m), Subspace::span(w * kk.basis())));
    if (m2.dim() > 0) b = cw_sum(b, cross(Subspace::zero(m), Subspace::span(w * m2.basis())));
    ck.truth(fdt(b), "B fdt");
    const Subspace hv = Subspace::from_orthonormal(v);
    ck.same(intersect(b.dom(), hv), Subspace::span_scaled(v * v.adjoint() * star(b).dom().basis()), "dom B cap H = P dom B*");
    ck.truth(is_tight_extension(a, b, v), "tight");
    ck.truth(is_star_tight_extension(a, b, v), "*-tight");
    // Converse on block extensions of arbitrary relations.
    const Relation a2 = draw(rng, n, {Profile::Generic, Profile::DomainTight, Profile::FormallyDomainTight});
    const Relation b2 = cw_orth_sum(a2, gen(rng, Profile::Generic, k));
    Mat inc = Mat::Zero(m, n);
    inc.topRows(n) = Mat::Identity(n, n);
    const Subspace hi = Subspace::from_orthonormal(inc);
    const bool iw = equal(intersect(b2.dom(), hi), Subspace::span_scaled(inc * inc.adjoint() * star(b2).dom().basis()));
    const bool tt = is_tight_extension(a2, b2, inc) && is_star_tight_extension(a2, b2, inc);
    ck.truth(!(iw && tt) || dt(a2), "converse");
    // Same space: A dt, B fdt extension implies B dt.
    const Relation e = rng.coin(0.5) ? Relation(rng.subspace_in(a.graph(), rng.integer(0, a.dim()))) : gen(rng, Profile::Generic, n);
    const Relation bb = cw_sum(a, e);
    ck.truth(!fdt(bb) || dt(bb), "same-space extension");
  });

  add("range-tight-inv", "A range tight iff A^-1 domain tight (and formal versions)", [](Rng& rng, int n, Checker& ck) {
    Relation a = draw(rng, n, {Profile::Generic, Profile::DomainTight, Profile::FormallyDomainTight, Profile::Selfadjoint,
                               Profile::Operator});
    if (rng.coin(0.5)) a = inverse(a);
    ck.iff(is_range_tight(a), dt(inverse(a)), "range tight");
    ck.iff(is_formally_range_tight(a), fdt(inverse(a)), "formally range tight");
    const Relation s = star(a);
    if (is_symmetric(a) && is_range_tight(a) && leq(s.ker(), a.ker())) ck.truth(is_selfadjoint(a), "symmetric range tight");
  });

  add("degenerate-findim",
      "finite-dimensional forms: dom A* = C^n iff ran A** in dom A* iff A operator; ran P A** in dom A*; A_reg = A_op; A_sing operator iff A_sing = dom A x {0}",
      [](Rng& rng, int n, Checker& ck) {
        const Relation a = draw(rng, n, kMixed);
        const Relation s = star(a), c = closure(a);
        const bool op = a.mul().is_zero();
        ck.iff(s.dom().is_full(), op, "dom A* = C^n iff operator");
        ck.iff(leq(c.ran(), s.dom()), op, "ran A** in dom A* iff operator");
        const Mat p = s.dom().projector(), q = a.dom().projector();
        ck.sub(product(graph_of(p), c).ran(), s.dom(), "ran P A** in dom A*");
        ck.sub(product(graph_of(q), s).ran(), c.dom(), "ran Q A* in dom A**");
        ck.sub(Subspace::span_scaled(s.ran().projector() * c.dom().basis()), s.ran(), "P' dom A** in ran A*");
        ck.sub(Subspace::span_scaled(a.ran().projector() * s.dom().basis()), c.ran(), "Q' dom A* in ran A**");
        ck.same(regular_part(a), operator_part(a), "A_reg = A_op");
        const Relation sing = singular_part(a);
        ck.iff(sing.mul().is_zero(), equal(sing, cross(a.dom(), zero(n))), "A_sing operator iff zero on dom A");
        ck.same(cw_sum(a, a), a, "closed sums");
      },
      true);

  return laws;
}

}  // namespace

const std::vector<Law>& law_registry() {
  static const std::vector<Law> reg = build_registry();
  return reg;
}

const Law& find_law(const std::string& id) {
  for (const Law& l : law_registry())
    if (l.id == id) return l;
  throw Error(ErrorCode::UnknownLaw, "unknown law: " + id);
}

}  // namespace relcalc
