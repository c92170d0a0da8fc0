#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <relcalc/relcalc.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <string>
#include <thread>
#include <vector>

namespace {

const char* kDefs =
    "hilbert n=2\n"
    "relation A\n  vec (1,0 | 0,0)\n  vec (0,0 | 0,1)\n"
    "operator B\n  row 0 1\n  row 0 0\n";

struct Env {
  relcalc_env* p = nullptr;
  ~Env() { relcalc_env_destroy(p); }
};

struct Rel {
  relcalc_relation* p = nullptr;
  ~Rel() { relcalc_relation_destroy(p); }
};

struct Str {
  char* p = nullptr;
  ~Str() { relcalc_string_free(p); }
  std::string s() const { return p ? p : ""; }
};

}  // namespace

TEST_SUITE("capi") {

TEST_CASE("environment lifecycle") {
  Env env;
  REQUIRE(relcalc_env_load_string(kDefs, &env.p) == RELCALC_OK);
  CHECK(relcalc_env_dim(env.p) == 2);
  Str names;
  REQUIRE(relcalc_env_names(env.p, &names.p) == RELCALC_OK);
  CHECK(names.s() == "A\nB\n");
  Str ser;
  REQUIRE(relcalc_env_serialize(env.p, &ser.p) == RELCALC_OK);
  Env back;
  REQUIRE(relcalc_env_load_string(ser.p, &back.p) == RELCALC_OK);
  Rel a, b;
  REQUIRE(relcalc_relation_get(env.p, "A", &a.p) == RELCALC_OK);
  REQUIRE(relcalc_relation_get(back.p, "A", &b.p) == RELCALC_OK);
  double gap = 1.0;
  REQUIRE(relcalc_relation_opening(a.p, b.p, &gap) == RELCALC_OK);
  CHECK(gap <= 1e-12);
}

TEST_CASE("status codes and last error") {
  Env env;
  CHECK(relcalc_env_load_string("hilbert n=2\nrelation A\n vec (1,q | 0,0)\n", &env.p) == RELCALC_E_PARSE);
  CHECK(env.p == nullptr);
  CHECK(std::string(relcalc_last_error()).find("line 3") != std::string::npos);
  CHECK(relcalc_env_load("/nonexistent/x.rel", &env.p) == RELCALC_E_IO);
  CHECK(relcalc_env_create(0, &env.p) == RELCALC_E_INVALID_ARGUMENT);
  CHECK(relcalc_env_create(2, nullptr) == RELCALC_E_INVALID_ARGUMENT);
  REQUIRE(relcalc_env_load_string(kDefs, &env.p) == RELCALC_OK);
  Str out;
  CHECK(relcalc_eval(env.p, "A + ", &out.p) == RELCALC_E_PARSE);
  CHECK(std::string(relcalc_last_error()).find("column 5") != std::string::npos);
  CHECK(relcalc_eval(env.p, "dom(A) + A", &out.p) == RELCALC_E_TYPE);
  CHECK(relcalc_eval(env.p, "Q", &out.p) == RELCALC_E_UNKNOWN_NAME);
  CHECK(relcalc_report(env.p, "Q", 0, &out.p) == RELCALC_E_UNKNOWN_NAME);
  CHECK(relcalc_eval(env.p, "1e308*1e308", &out.p) == RELCALC_E_NUMERIC);
  int passed = 0;
  CHECK(relcalc_laws_run("nosuchlaw", 1, 2, 2, 1, 1, &out.p, &passed) == RELCALC_E_UNKNOWN_LAW);
  CHECK(std::string(relcalc_status_name(RELCALC_OK)) == "ok");
  CHECK(relcalc_env_save(env.p, "/nonexistent/dir/out.rel") == RELCALC_E_IO);
}

TEST_CASE("failed eval leaves the environment untouched") {
  Env env;
  REQUIRE(relcalc_env_load_string(kDefs, &env.p) == RELCALC_OK);
  Str out;
  CHECK(relcalc_eval(env.p, "X = A; Y = Q", &out.p) == RELCALC_E_UNKNOWN_NAME);
  Str names;
  REQUIRE(relcalc_env_names(env.p, &names.p) == RELCALC_OK);
  CHECK(names.s() == "A\nB\n");
  Str ok;
  REQUIRE(relcalc_eval(env.p, "X = A^*; print X", &ok.p) == RELCALC_OK);
  CHECK(ok.s().find("vec (1,0 | 0,0)") != std::string::npos);
  Str names2;
  REQUIRE(relcalc_env_names(env.p, &names2.p) == RELCALC_OK);
  CHECK(names2.s() == "A\nB\nX\n");
}

TEST_CASE("relation handles") {
  // A_sd as interleaved complex column-major 4 x 2.
  const double graph[] = {1, 0, 0, 0, 0, 0, 0, 0,  //
                          0, 0, 0, 0, 0, 0, 1, 0};
  Rel a;
  REQUIRE(relcalc_relation_from_graph(2, 2, graph, &a.p) == RELCALC_OK);
  CHECK(relcalc_relation_n(a.p) == 2);
  CHECK(relcalc_relation_dim(a.p) == 2);
  int dims[4] = {};
  REQUIRE(relcalc_relation_component_dims(a.p, dims) == RELCALC_OK);
  CHECK(dims[0] == 1);
  CHECK(dims[1] == 1);
  CHECK(dims[2] == 1);
  CHECK(dims[3] == 1);

  Rel s;
  REQUIRE(relcalc_relation_unary(RELCALC_OP_ADJOINT, a.p, &s.p) == RELCALC_OK);
  double gap = 1.0;
  REQUIRE(relcalc_relation_opening(a.p, s.p, &gap) == RELCALC_OK);
  CHECK(gap <= 1e-12);

  const double nil[] = {0, 0, 0, 0, 1, 0, 0, 0};  // column-major [[0,1],[0,0]]
  Rel b, sum, prod, scaled, inv, op;
  REQUIRE(relcalc_relation_from_operator(2, nil, &b.p) == RELCALC_OK);
  REQUIRE(relcalc_relation_binary(RELCALC_OP_CW_SUM, a.p, b.p, &sum.p) == RELCALC_OK);
  CHECK(relcalc_relation_dim(sum.p) == 3);  // (e1, 0) is in both
  REQUIRE(relcalc_relation_binary(RELCALC_OP_PRODUCT, b.p, b.p, &prod.p) == RELCALC_OK);
  REQUIRE(relcalc_relation_component_dims(prod.p, dims) == RELCALC_OK);
  CHECK(dims[1] == 0);  // N^2 = 0
  REQUIRE(relcalc_relation_scale(b.p, 0, 2, &scaled.p) == RELCALC_OK);
  REQUIRE(relcalc_relation_unary(RELCALC_OP_INVERSE, b.p, &inv.p) == RELCALC_OK);
  REQUIRE(relcalc_relation_component_dims(inv.p, dims) == RELCALC_OK);
  CHECK(dims[0] == 1);
  CHECK(dims[3] == 1);
  REQUIRE(relcalc_relation_unary(RELCALC_OP_OPERATOR_PART, a.p, &op.p) == RELCALC_OK);
  CHECK(relcalc_relation_dim(op.p) == 1);

  std::vector<double> basis(2 * 4 * 2);
  REQUIRE(relcalc_relation_basis(a.p, basis.data(), basis.size()) == RELCALC_OK);
  CHECK(relcalc_relation_basis(a.p, basis.data(), 3) == RELCALC_E_INVALID_ARGUMENT);

  Rel three;
  const double id3[18] = {1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0};
  REQUIRE(relcalc_relation_from_operator(3, id3, &three.p) == RELCALC_OK);
  Rel bad;
  CHECK(relcalc_relation_binary(RELCALC_OP_SUM, a.p, three.p, &bad.p) == RELCALC_E_DIMENSION);
  CHECK(bad.p == nullptr);
  const double nan_graph[] = {NAN, 0, 0, 0, 0, 0, 0, 0};
  CHECK(relcalc_relation_from_graph(2, 1, nan_graph, &bad.p) == RELCALC_E_INVALID_ARGUMENT);
}

TEST_CASE("binding handles into an environment") {
  Env env;
  REQUIRE(relcalc_env_create(2, &env.p) == RELCALC_OK);
  const double nil[] = {0, 0, 0, 0, 1, 0, 0, 0};
  Rel b;
  REQUIRE(relcalc_relation_from_operator(2, nil, &b.p) == RELCALC_OK);
  REQUIRE(relcalc_relation_bind(env.p, "N", b.p) == RELCALC_OK);
  CHECK(relcalc_relation_bind(env.p, "N", b.p) == RELCALC_OK);  // rebinding replaces
  CHECK(relcalc_relation_bind(env.p, "2bad", b.p) == RELCALC_E_INVALID_ARGUMENT);
  Str cls;
  REQUIRE(relcalc_classify(env.p, "N", &cls.p) == RELCALC_OK);
  CHECK(cls.s().find("dissipative=false") != std::string::npos);
  Str csv;
  REQUIRE(relcalc_nrange_csv(env.p, "N", 10, 3, &csv.p) == RELCALC_OK);
  CHECK(csv.s().rfind("re,im\n", 0) == 0);
}

TEST_CASE("reports and laws through the C API") {
  Env env;
  REQUIRE(relcalc_env_load_string(kDefs, &env.p) == RELCALC_OK);
  Str text, json;
  REQUIRE(relcalc_report(env.p, "A", 0, &text.p) == RELCALC_OK);
  REQUIRE(relcalc_report(env.p, "A", 1, &json.p) == RELCALC_OK);
  CHECK(text.s().find("selfadjoint = true") != std::string::npos);
  CHECK(json.s().find("\"format_version\": 1") != std::string::npos);
  Str laws;
  int passed = 0;
  REQUIRE(relcalc_laws_run("adjoint-duality", 20, 2, 4, 42, 2, &laws.p, &passed) == RELCALC_OK);
  CHECK(passed == 1);
  CHECK(laws.s().rfind("PASS adjoint-duality", 0) == 0);
  Str list;
  REQUIRE(relcalc_law_list(&list.p) == RELCALC_OK);
  CHECK(list.s().find("cart-plusplus") != std::string::npos);
}

TEST_CASE("last error is per thread") {
  Env env;
  CHECK(relcalc_env_create(-1, &env.p) == RELCALC_E_INVALID_ARGUMENT);
  std::string other;
  std::thread t([&] {
    Env e2;
    relcalc_env_load_string("garbage", &e2.p);
    other = relcalc_last_error();
  });
  t.join();
  CHECK(other.find("line 1") != std::string::npos);
  CHECK(std::string(relcalc_last_error()).find("line 1") == std::string::npos);
}

TEST_CASE("null arguments are rejected") {
  Str out;
  CHECK(relcalc_eval(nullptr, "A", &out.p) == RELCALC_E_INVALID_ARGUMENT);
  CHECK(relcalc_report(nullptr, "A", 0, &out.p) == RELCALC_E_INVALID_ARGUMENT);
  CHECK(relcalc_relation_from_graph(2, 1, nullptr, nullptr) == RELCALC_E_INVALID_ARGUMENT);
  relcalc_env_destroy(nullptr);
  relcalc_relation_destroy(nullptr);
  relcalc_string_free(nullptr);
}

}  // TEST_SUITE
