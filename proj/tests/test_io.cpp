#include <doctest.h>

#include "core/classify.hpp"
#include "core/decompose.hpp"
#include "fixtures.hpp"
#include "io/dsl.hpp"
#include "io/format.hpp"
#include "io/report.hpp"
#include "laws/generate.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>

using namespace relcalc;

namespace {

const char* kFixtures = R"(hilbert n=2
# the singular selfadjoint fixture
relation A
  vec (1,0 | 0,0)
  vec (0,0 | 0,1)
operator B
  row 0 1
  row 0 0
subspace S
  vec (1,1)
scalar c 2-0.5i
)";

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Numeric;  // sentinel: no error
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

Environment random_env(std::uint64_t seed) {
  Rng rng(seed);
  const int n = rng.integer(1, 5);
  Environment env(n);
  const Profile ps[] = {Profile::Generic, Profile::Operator, Profile::Selfadjoint, Profile::Singular,
                        Profile::Dissipative, Profile::PurelyMultivalued};
  for (int k = 0; k < 4; ++k) {
    GenProfile g;
    g.name = ps[rng.integer(0, 5)];
    g.n = n;
    g.seed = rng.engine()();
    env.bind("R" + std::to_string(k), generate(g));
  }
  env.bind("S", rng.subspace(n, rng.integer(0, n)));
  env.bind("z", rng.cnormal());
  return env;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("complex literals") {
  CHECK(parse_complex("2") == cplx(2, 0));
  CHECK(parse_complex("-1.5") == cplx(-1.5, 0));
  CHECK(parse_complex("3i") == cplx(0, 3));
  CHECK(parse_complex("-i") == cplx(0, -1));
  CHECK(parse_complex("2+3i") == cplx(2, 3));
  CHECK(parse_complex("2-3i") == cplx(2, -3));
  CHECK(parse_complex("1e-3-2.5e2i") == cplx(1e-3, -250));
  CHECK(parse_complex(" 4 ") == cplx(4, 0));
  for (const char* bad : {"", "i2", "2+", "1..2", "abc", "2+3", "inf", "nan", "1e999", "2 + 3i", "3ii"}) {
    CAPTURE(bad);
    CHECK_FALSE(parse_complex(bad));
  }
}

TEST_CASE("complex formatting round-trips") {
  std::mt19937_64 eng(1);
  std::normal_distribution<double> nd;
  for (int t = 0; t < 1000; ++t) {
    const cplx z(nd(eng) * std::pow(10.0, nd(eng) * 5), nd(eng));
    CHECK(parse_complex(format_complex(z)) == z);
  }
  CHECK(format_complex_short(cplx(0.5, -1e-20)) == "0.5");
  CHECK(format_complex_short(cplx(-0.0, 2)) == "2i");
  CHECK(format_real_short(-0.0) == "0");
}

TEST_CASE("definitions file: fixtures") {
  const Environment env = parse_environment(kFixtures);
  CHECK(env.n() == 2);
  CHECK(env.names() == std::vector<std::string>{"A", "B", "S", "c"});
  CHECK(equal(env.relation("A"), fx::a_sd()));
  CHECK(equal(env.relation("B"), fx::graph(fx::nilpotent())));
  CHECK(equal(std::get<Subspace>(env.at("S")), fx::span({fx::vec({1, 1})})));
  CHECK(std::get<cplx>(env.at("c")) == cplx(2, -0.5));
  CHECK(code_of([&] { env.at("nope"); }) == ErrorCode::UnknownName);
  CHECK(code_of([&] { env.relation("S"); }) == ErrorCode::Type);
}

TEST_CASE("definitions file: errors") {
  const std::string malformed = "hilbert n=2\nrelation A\n  vec (1,x | 0,0)\n";
  CHECK(code_of([&] { parse_environment(malformed); }) == ErrorCode::Parse);
  CHECK(message_of([&] { parse_environment(malformed); }).find("line 3: malformed literal 'x'") != std::string::npos);
  const std::string short_vec = "hilbert n=2\nrelation A\n  vec (1 | 0,0)\n";
  CHECK(message_of([&] { parse_environment(short_vec); }).find("inconsistent n") != std::string::npos);
  const std::string rows = "hilbert n=2\noperator B\n  row 0 1\n";
  CHECK(message_of([&] { parse_environment(rows); }).find("inconsistent n") != std::string::npos);
  const std::string dup = "hilbert n=1\nsubspace S\n  vec (1)\nsubspace S\n  vec (1)\n";
  CHECK(message_of([&] { parse_environment(dup); }).find("line 4: duplicate name: S") != std::string::npos);
  CHECK(code_of([&] { parse_environment("relation A\n"); }) == ErrorCode::Parse);
  CHECK(code_of([&] { parse_environment(""); }) == ErrorCode::Parse);
  CHECK(code_of([&] { parse_environment("hilbert n=0\n"); }) == ErrorCode::Parse);
  CHECK(code_of([&] { parse_environment("hilbert n=2\nbogus X\n"); }) == ErrorCode::Parse);
  CHECK(code_of([&] { parse_environment("hilbert n=2\nrelation print\n"); }) == ErrorCode::Parse);
  CHECK(code_of([&] { load_environment("/nonexistent/dir/file.rel"); }) == ErrorCode::Io);
  CHECK(code_of([&] { save_environment(Environment(2), "/nonexistent/dir/file.rel"); }) == ErrorCode::Io);
}

TEST_CASE("save and load round-trip") {
  const auto dir = std::filesystem::temp_directory_path();
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Environment env = random_env(s);
    const std::string path = (dir / ("relcalc_rt_" + std::to_string(s) + ".rel")).string();
    save_environment(env, path);
    const Environment back = load_environment(path);
    std::remove(path.c_str());
    CAPTURE(s);
    REQUIRE(back.names() == env.names());
    for (const std::string& name : env.names()) {
      const Value& a = env.at(name);
      const Value& b = back.at(name);
      REQUIRE(a.index() == b.index());
      if (auto* r = std::get_if<Relation>(&a)) CHECK(opening(*r, std::get<Relation>(b)) <= 1e-12);
      if (auto* t = std::get_if<Subspace>(&a)) CHECK(opening(*t, std::get<Subspace>(b)) <= 1e-12);
      if (auto* c = std::get_if<cplx>(&a)) CHECK(*c == std::get<cplx>(b));
    }
    CHECK(serialize_environment(back) == serialize_environment(env));
  }
}

TEST_CASE("canonical basis does not depend on the stored basis") {
  Rng rng(3);
  for (int t = 0; t < 30; ++t) {
    const Subspace s = rng.subspace(4, rng.integer(0, 4));
    const Mat mixed = s.basis() * (s.dim() ? rng.unitary(s.dim()) : Mat(0, 0));
    CHECK((canonical_basis(s) - canonical_basis(Subspace::span(mixed))).norm() < 1e-9);
  }
}

TEST_CASE("parser basics") {
  const Program p = parse_program("A^*^*");
  REQUIRE(p.stmts.size() == 1);
  const Expr& e = *p.stmts[0].expr;
  CHECK(e.kind == Expr::Kind::Adjoint);
  CHECK(e.args[0]->kind == Expr::Kind::Adjoint);
  CHECK(e.args[0]->args[0]->kind == Expr::Kind::Ident);
  CHECK(expr_to_string(e) == "A^*^*");

  const Program q = parse_program("x = 2+3i * A (+) B^-1 - C\nprint x; x");
  REQUIRE(q.stmts.size() == 3);
  CHECK(q.stmts[0].kind == Stmt::Kind::Assign);
  CHECK(q.stmts[0].target == "x");
  CHECK(q.stmts[1].kind == Stmt::Kind::Print);
  CHECK(q.stmts[2].kind == Stmt::Kind::Bare);
  // Additive operators are left-associative on one tier.
  CHECK(q.stmts[0].expr->kind == Expr::Kind::OpDiff);
  CHECK(q.stmts[0].expr->args[0]->kind == Expr::Kind::CwSum);
  CHECK(q.stmts[0].expr->args[0]->args[0]->kind == Expr::Kind::Product);
}

TEST_CASE("syntax errors carry positions") {
  CHECK(code_of([] { parse_program("A + "); }) == ErrorCode::Parse);
  CHECK(message_of([] { parse_program("A + "); }).find("line 1, column 5") != std::string::npos);
  CHECK(message_of([] { parse_program("x = A\ny = (B"); }).find("line 2, column 7") != std::string::npos);
  CHECK(message_of([] { parse_program("A ^ B"); }).find("column 3") != std::string::npos);
  CHECK(code_of([] { parse_program(std::string(300, '(') + "A" + std::string(300, ')')); }) == ErrorCode::Parse);
  CHECK(code_of([] { parse_program("print = A"); }) == ErrorCode::Parse);
}

TEST_CASE("evaluation on A_sd") {
  const Environment env = parse_environment(kFixtures);
  CHECK(equal(std::get<Relation>(evaluate(env, "re(A) (+) cross(zero(), mul(A))")), fx::a_sd()));
  CHECK(equal(std::get<Relation>(evaluate(env, "A^*")), fx::a_sd()));
  CHECK(equal(std::get<Relation>(evaluate(env, "op(A)")), operator_part(fx::a_sd())));
  CHECK(equal(std::get<Subspace>(evaluate(env, "dom(A)^*")), fx::span({fx::e(2, 1)})));
  CHECK(equal(std::get<Relation>(evaluate(env, "B - B")), fx::graph(Mat::Zero(2, 2))));
  CHECK(equal(std::get<Relation>(evaluate(env, "i*B")), scalar_mul(I1, fx::graph(fx::nilpotent()))));
  CHECK(equal(std::get<Relation>(evaluate(env, "c*B")), scalar_mul(cplx(2, -0.5), fx::graph(fx::nilpotent()))));
  CHECK(std::get<cplx>(evaluate(env, "c^* * 2")) == cplx(4, 1));
  CHECK(equal(std::get<Relation>(evaluate(env, "shift(B, 1)")), shift(fx::graph(fx::nilpotent()), 1.0)));
  CHECK(equal(std::get<Relation>(evaluate(env, "minf(zero(dom(A)))")), fx::a_sd()));
  CHECK(equal(std::get<Relation>(evaluate(env, "id()")), fx::graph(Mat::Identity(2, 2))));
  CHECK(std::get<Subspace>(evaluate(env, "space()")).is_full());
}

TEST_CASE("type and name errors") {
  const Environment env = parse_environment(kFixtures);
  CHECK(code_of([&] { evaluate(env, "S + A"); }) == ErrorCode::Type);
  CHECK(code_of([&] { evaluate(env, "A * 2"); }) == ErrorCode::Type);
  CHECK(code_of([&] { evaluate(env, "dom(S)"); }) == ErrorCode::Type);
  CHECK(code_of([&] { evaluate(env, "frob(A)"); }) == ErrorCode::Type);
  CHECK(code_of([&] { evaluate(env, "Q"); }) == ErrorCode::UnknownName);
  CHECK(code_of([&] { evaluate(env, "0^-1"); }) == ErrorCode::Type);
  CHECK(code_of([&] { evaluate(env, "1e308*1e308"); }) == ErrorCode::Numeric);
  CHECK(message_of([&] { evaluate(env, "A + S"); }).find("line 1, column 3") != std::string::npos);
}

TEST_CASE("programs update the environment") {
  Environment env = parse_environment(kFixtures);
  const std::string out = run_program(env, "X = A (+) B; print dom(X)");
  REQUIRE(env.find("X"));
  CHECK(equal(env.relation("X"), cw_sum(fx::a_sd(), fx::graph(fx::nilpotent()))));
  CHECK(out.find("subspace _") != std::string::npos);
  // A failing statement leaves earlier assignments in place.
  CHECK(code_of([&] { run_program(env, "Y = A; Z = Q"); }) == ErrorCode::UnknownName);
}

TEST_CASE("DSL identities hold for every binding") {
  for (std::uint64_t s = 0; s < 40; ++s) {
    const Environment env = random_env(100 + s);
    for (const std::string& name : env.names()) {
      if (!std::holds_alternative<Relation>(env.at(name))) continue;
      const Relation& a = env.relation(name);
      CAPTURE(name);
      CHECK(equal(std::get<Relation>(evaluate(env, name + "^*^*")), a));
      CHECK(equal(std::get<Relation>(evaluate(env, "op(" + name + ") (+) cross(zero(), mul(" + name + "))")), a));
    }
  }
}

TEST_CASE("fuzzed programs never crash") {
  const Environment base = parse_environment(kFixtures);
  const std::vector<std::string> tokens = {
      "A", "B", "S", "c", "i", "x", "(", ")", "(+)", "+", "-", "*", "^*", "^-1", "=", ";", "\n", "print", ",",
      "2", "-1.5", "3i", "2+3i", "1e308", "0", "re(", "im(", "reg(", "sing(", "op(", "mulrel(", "minf(", "dom(",
      "ran(", "ker(", "mul(", "graph(", "cross(", "id(", "zero(", "shift(", "space(", " ", "^", "@", "#", "{"};
  std::mt19937_64 eng(2024);
  int ok = 0, typed = 0;
  for (int t = 0; t < 10000; ++t) {
    std::string src;
    const size_t len = std::uniform_int_distribution<size_t>(0, 1024)(eng);
    const bool bytes = t % 5 == 0;
    while (src.size() < len) {
      if (bytes) src += static_cast<char>(std::uniform_int_distribution<int>(1, 255)(eng));
      else src += tokens[std::uniform_int_distribution<size_t>(0, tokens.size() - 1)(eng)] + (eng() % 3 ? "" : " ");
    }
    if (src.size() > 1024) src.resize(1024);
    Environment env = base;
    try {
      run_program(env, src);
      ++ok;
    } catch (const Error&) {
      ++typed;
    } catch (const std::exception& e) {
      FAIL("untyped exception: " << e.what() << " on input " << src);
    }
  }
  CHECK(ok + typed == 10000);
  CHECK(ok > 0);
}

TEST_CASE("classify text for A_sd") {
  const std::string text = classify_text("A", fx::a_sd());
  for (const char* want : {"selfadjoint=true", "singular=true", "domain_tight=true", "decomposable=true",
                           "maximal_symmetric=true", "regular=false"})
    CHECK(text.find(want) != std::string::npos);
  const std::string nil = classify_text("B", fx::graph(fx::nilpotent()));
  CHECK(nil.find("maximal_symmetric=n/a") != std::string::npos);
}

TEST_CASE("JSON report shape") {
  const auto j = nlohmann::json::parse(report_json("A", fx::a_sd()));
  CHECK(j["format_version"] == 1);
  CHECK(j["dims"]["dom"] == 1);
  CHECK(j["dims"]["mul"] == 1);
  CHECK(j["classify"]["selfadjoint"] == true);
  CHECK(j["classify"]["maximal_symmetric"] == true);
  CHECK(j["decompositions"]["orthogonal"]["available"] == true);
  CHECK(j["spectrum"]["samples"].size() == 5);
  CHECK(j["spectrum"]["eigenvalues"].size() == 1);
  for (const auto& s : j["spectrum"]["samples"]) CHECK(s.contains("defect"));
  const auto k = nlohmann::json::parse(report_json("T", Relation::from_graph(fx::cols(
                                                             {fx::pair(fx::e(2, 0), Vec::Zero(2)),
                                                              fx::pair(Vec::Zero(2), fx::e(2, 0))}))));
  CHECK(k["decompositions"]["orthogonal"]["available"] == false);
  CHECK(k["decompositions"]["orthogonal"].contains("witness"));
  CHECK(k["decompositions"]["cartesian"]["available"] == false);
}

TEST_CASE("numerical range CSV") {
  const std::string csv = nrange_csv(fx::graph(Mat::Identity(3, 3)), 100, 1);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "re,im");
  int count = 0;
  while (std::getline(in, line)) {
    CHECK(line == "1,0");
    ++count;
  }
  CHECK(count == 100);
  CHECK(nrange_csv(cross(Subspace::zero(2), Subspace::full(2)), 10, 1) == "re,im\n0,0\n");
}

}  // TEST_SUITE
