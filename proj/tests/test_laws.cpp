#include <doctest.h>

#include "core/classify.hpp"
#include "core/decompose.hpp"
#include "fixtures.hpp"
#include "laws/laws.hpp"

#include <cstring>
#include <set>

using namespace relcalc;
using fx::cols;
using fx::e;
using fx::pair;
using fx::span;

namespace {

const Vec z2 = Vec::Zero(2);

// dom A = mul A = span e1.
Relation tangled() { return Relation::from_graph(cols({pair(e(2, 0), z2), pair(z2, e(2, 0))})); }

Relation re_plus_i_im(const Relation& a, cplx sign = 1.0) {
  return op_sum(real_part(a), scalar_mul(sign * I1, imag_part(a)));
}

}  // namespace

TEST_SUITE("laws") {

TEST_CASE("registry ids") {
  const char* expected[] = {
      "adjoint-duality", "adjoint-involution", "cw-adjoint", "opsum-adjoint", "product-adjoint",
      "projection-product", "dom-ran-sum", "easy", "canonical", "singular-equiv", "regular-equiv",
      "componentwise-unique", "reglem-equiv", "maxpart", "orth-iff", "adjoint-orth-iff", "opstar-commute",
      "mulba", "convexity", "nr-mulinc", "maximal-mul", "resolvent-est", "defect-const", "ainf-adjoint",
      "ainf-tight", "ainf-marci", "ainf-selfadjoint", "sym-sa", "reim", "eenv", "fdtight", "rmlem", "reaal",
      "cart", "cart-plus", "cart-plusplus", "dualpair", "class-orth", "tight-ext", "range-tight-inv",
      "degenerate-findim"};
  std::set<std::string> ids;
  for (const Law& l : law_registry()) {
    CHECK(ids.insert(l.id).second);
    CHECK_FALSE(l.statement.empty());
  }
  for (const char* id : expected) {
    CAPTURE(id);
    CHECK(ids.count(id) == 1);
  }
  CHECK(find_law("degenerate-findim").degenerate);
  CHECK_FALSE(find_law("cart").degenerate);
}

TEST_CASE("unknown law") {
  try {
    run_law("nosuchlaw", 10, {2, 2}, 1, 1);
    FAIL("expected UnknownLaw");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::UnknownLaw);
  }
}

TEST_CASE("adjoint duality at n = 5") {
  const LawReport r = run_law("adjoint-duality", 100, {5, 5}, 42, 2);
  CHECK(r.pass());
  CHECK(r.trials == 100);
  CHECK(r.max_residual <= 1e-8);
}

TEST_CASE("cart-plusplus at n = 4") {
  const LawReport r = run_law("cart-plusplus", 100, {4, 4}, 1, 2);
  CHECK(r.pass());
  CHECK(r.max_residual <= 1e-8);
}

TEST_CASE("seeds and dimensions") {
  CHECK(trial_seed(42, "cart", 0) == trial_seed(42, "cart", 0));
  CHECK(trial_seed(42, "cart", 0) != trial_seed(42, "cart", 1));
  CHECK(trial_seed(42, "cart", 0) != trial_seed(42, "reim", 0));
  CHECK(trial_seed(42, "cart", 0) != trial_seed(43, "cart", 0));
  const DimRange d{2, 6};
  for (size_t t = 0; t < 20; ++t) CHECK(trial_dim(d, t) == 2 + static_cast<int>(t % 5));
}

TEST_CASE("reports do not depend on the thread count") {
  for (const char* id : {"canonical", "convexity", "reaal"}) {
    const LawReport a = run_law(id, 60, {2, 5}, 9, 1), b = run_law(id, 60, {2, 5}, 9, 4);
    CAPTURE(id);
    CHECK(a.max_residual == b.max_residual);
    CHECK(a.vacuous == b.vacuous);
    CHECK(format_report_line(a) == format_report_line(b));
  }
}

TEST_CASE("failure replay is bit-exact") {
  const Law noisy{"noisy", "always fails with a random residual", false, [](Rng& rng, int n, Checker& ck) {
                    const Relation a = generate({Profile::Generic, n, -1, rng.engine()()});
                    ck.value(1.0 + opening(adjoint(adjoint(a)), a) + rng.uniform(), "forced");
                  }};
  for (std::uint64_t s : {1ULL, 99ULL, 0xdeadbeefULL}) {
    const TrialResult a = run_trial(noisy, s, 4), b = run_trial(noisy, s, 4);
    CHECK_FALSE(a.ok);
    CHECK(std::memcmp(&a.residual, &b.residual, sizeof(double)) == 0);
    CHECK(a.witness == b.witness);
  }
  // A registered law replays the same way.
  const Law& law = find_law("reaal");
  const std::uint64_t s = trial_seed(42, law.id, 17);
  const TrialResult x = run_trial(law, s, 5), y = run_trial(law, s, 5);
  CHECK(std::memcmp(&x.residual, &y.residual, sizeof(double)) == 0);
}

TEST_CASE("exceptions inside a trial count as failures") {
  const Law thrower{"thrower", "throws", false, [](Rng&, int, Checker&) {
                      throw Error(ErrorCode::Precondition, "boom");
                    }};
  const TrialResult r = run_trial(thrower, 1, 2);
  CHECK_FALSE(r.ok);
  CHECK(r.witness.find("boom") != std::string::npos);
}

TEST_CASE("report line format") {
  LawReport r;
  r.law_id = "degenerate-findim";
  r.degenerate = true;
  r.trials = 3;
  const std::string line = format_report_line(r);
  CHECK(line.rfind("PASS degenerate-findim", 0) == 0);
  CHECK(line.find("[degenerate: vacuously/trivially true in finite dimension]") != std::string::npos);
  r.failures.push_back({2, 0xabcULL, 3, 0.5, "w"});
  CHECK(format_report_line(r).rfind("FAIL", 0) == 0);
  CHECK(format_report_line(r).find("seed=0x0000000000000abc") != std::string::npos);
}

TEST_CASE("generator profiles satisfy their predicates") {
  for (int pi = 0; pi <= static_cast<int>(Profile::DomainTight); ++pi) {
    const Profile p = static_cast<Profile>(pi);
    CHECK(profile_from_name(profile_name(p)) == p);
    for (std::uint64_t s = 0; s < 15; ++s) {
      GenProfile g;
      g.name = p;
      g.n = 2 + static_cast<int>(s % 4);
      g.seed = s;
      const Relation a = generate(g), b = generate(g);
      CAPTURE(profile_name(p));
      CAPTURE(s);
      CHECK(a.n() == g.n);
      CHECK(satisfies_profile(a, g));
      CHECK(a.graph().basis() == b.graph().basis());
    }
  }
  CHECK_THROWS_AS(profile_from_name("nope"), Error);
}

TEST_CASE("generator rejects infeasible requests") {
  auto code_of = [](const GenProfile& g) {
    try {
      generate(g);
    } catch (const Error& err) {
      return err.code();
    }
    return ErrorCode::Io;  // sentinel: no error
  };
  CHECK(code_of({Profile::Selfadjoint, 3, 1, 0}) == ErrorCode::InvalidArgument);
  CHECK(code_of({Profile::Symmetric, 3, 5, 0}) == ErrorCode::InvalidArgument);
  CHECK(code_of({Profile::Generic, 2, 5, 0}) == ErrorCode::InvalidArgument);
  CHECK(code_of({Profile::Generic, 0, -1, 0}) == ErrorCode::InvalidArgument);
  CHECK(code_of({Profile::Dissipative, 3, 2, 0}) == ErrorCode::InvalidArgument);
  GenProfile sect{Profile::Sectorial, 3, -1, 0};
  sect.alpha = 2.0;
  CHECK(code_of(sect) == ErrorCode::InvalidArgument);
  CHECK(code_of({Profile::Generic, 3, 4, 0}) == ErrorCode::Io);
  CHECK(generate({Profile::Generic, 3, 4, 0}).dim() == 4);
}

// Negative controls: fixed relations on which the hypothesis of a biconditional fails,
// so the other side must fail as well.

TEST_CASE("control: easy") {
  const Relation a = tangled();
  CHECK_FALSE(leq(a.dom(), adjoint(a).dom()));
  CHECK_FALSE(leq(adjoint(adjoint(a)).mul(), adjoint(a).mul()));
}

TEST_CASE("control: singular-equiv") {
  const Relation a = fx::graph(fx::nilpotent());
  CHECK_FALSE(is_singular(a));
  CHECK_FALSE(equal(adjoint(a).dom(), adjoint(a).ker()));
  CHECK_FALSE(equal(adjoint(a), cross(adjoint(a).dom(), adjoint(a).mul())));
  CHECK_FALSE(equal(a, cross(a.dom(), a.mul())));
}

TEST_CASE("control: regular-equiv") {
  const Relation a = fx::a_sd();
  CHECK_FALSE(is_regular(a));
  CHECK_FALSE(adjoint(adjoint(a)).mul().is_zero());
  CHECK_FALSE(adjoint(a).dom().is_full());
  CHECK_FALSE(leq(a.ran(), regular_space(a)));
  CHECK_FALSE(equal(operator_part(a), a));
}

TEST_CASE("control: orth-iff") {
  const Relation a = tangled();
  CHECK_FALSE(leq(adjoint(adjoint(a)).mul(), adjoint(a).mul()));
  CHECK_THROWS_AS(orthogonal_decompose(a), Error);
}

TEST_CASE("control: adjoint-orth-iff") {
  const Relation a = fx::zero_on_e1();
  CHECK_FALSE(leq(adjoint(a).mul(), adjoint(adjoint(a)).mul()));
  CHECK_FALSE(adjoint_decompose(a).orthogonal);
}

TEST_CASE("control: mulba") {
  const Relation a = fx::zero_on_e1();
  CHECK_FALSE(is_domain_tight(a));
  // The only candidate for B is A_op, which is not densely defined in H_A = C^2.
  CHECK(regular_space(a).is_full());
  CHECK_FALSE(operator_part(a).dom().is_full());
}

TEST_CASE("control: ainf-tight") {
  const Relation a = tangled();
  CHECK_FALSE(is_formally_domain_tight(a));
  CHECK_FALSE(is_formally_domain_tight(infinity_ext(a)));
  const Relation z = fx::zero_on_e1();
  CHECK_FALSE(is_domain_tight(z));
  CHECK(is_domain_tight(infinity_ext(z)));
  CHECK_FALSE(leq(adjoint(z).dom(), z.dom()));
}

TEST_CASE("control: ainf-selfadjoint") {
  const Relation a = fx::graph(fx::nilpotent());
  CHECK_FALSE(is_symmetric(a));
  CHECK_FALSE(is_selfadjoint(infinity_ext(a)));
}

TEST_CASE("control: sym-sa needs domain tightness") {
  const Relation a = fx::zero_on_e1();
  CHECK(is_symmetric(a));
  CHECK_FALSE(is_domain_tight(a));
  CHECK_FALSE(is_selfadjoint(a));
}

TEST_CASE("control: fdtight") {
  const Relation a = tangled();
  CHECK_FALSE(is_formally_domain_tight(a));
  CHECK_FALSE(leq(a, re_plus_i_im(a)));
  CHECK_FALSE(equal(cw_sum(real_part(a), adjoint(a)), cw_sum(a, adjoint(a))));
}

TEST_CASE("control: rmlem") {
  const Relation a = fx::zero_on_e1();
  CHECK_FALSE(leq(adjoint(a).dom(), a.dom()));
  CHECK_FALSE(equal(cw_sum(real_part(a), a), cw_sum(a, adjoint(a))));
}

TEST_CASE("control: reaal") {
  const Relation a = fx::zero_on_e1();
  CHECK_FALSE(is_domain_tight(a));
  CHECK_FALSE(equal(cw_sum(real_part(a), a), cw_sum(real_part(a), adjoint(a))));
  CHECK_FALSE(equal(cw_sum(real_part(a), cross(Subspace::zero(2), imag_part(a).ran())), cw_sum(a, adjoint(a))));
}

TEST_CASE("control: cart") {
  const Relation a = tangled();
  CHECK_THROWS_AS(cartesian_components(a), Error);
  CHECK_FALSE(equal(infinity_ext(a), re_plus_i_im(a)));
}

TEST_CASE("control: cart-plus and cart-plusplus") {
  const Relation a = fx::zero_on_e1();
  CHECK(is_formally_domain_tight(a));
  CHECK_FALSE(is_domain_tight(a));
  CHECK_FALSE(equal(adjoint(a), re_plus_i_im(a, -1.0)));
  CHECK_FALSE(equal(infinity_ext(adjoint(a)), re_plus_i_im(a, -1.0)));
}

TEST_CASE("control: range-tight-inv") {
  const Relation a = tangled();
  CHECK_FALSE(is_formally_range_tight(a));
  CHECK_FALSE(is_formally_domain_tight(inverse(a)));
  CHECK_FALSE(is_range_tight(a));
  CHECK_FALSE(is_domain_tight(inverse(a)));
}

TEST_CASE("control: the unsigned range identity fails for the identity") {
  // ran Re A = mul(A +^ A*) is false: Re I = I has full range, I +^ I is an operator.
  const Relation id = fx::graph(Mat::Identity(1, 1));
  CHECK_FALSE(equal(real_part(id).ran(), cw_sum(id, adjoint(id)).mul()));
  CHECK_FALSE(leq(imag_part(id), cw_sum(id, adjoint(id))));
}

}  // TEST_SUITE
