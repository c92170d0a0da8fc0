#include "relcalc/relcalc.h"

#include "core/decompose.hpp"
#include "io/dsl.hpp"
#include "io/format.hpp"
#include "io/report.hpp"
#include "laws/laws.hpp"

#include <cstdlib>
#include <cstring>
#include <new>

using namespace relcalc;

struct relcalc_env {
  Environment env;
};

struct relcalc_relation {
  Relation rel;
};

namespace {

thread_local std::string g_last_error;

relcalc_status status_of(ErrorCode c) {
  switch (c) {
    case ErrorCode::DimensionMismatch: return RELCALC_E_DIMENSION;
    case ErrorCode::InvalidArgument:
    case ErrorCode::NotAnIsometry: return RELCALC_E_INVALID_ARGUMENT;
    case ErrorCode::NotAnExtension:
    case ErrorCode::ClassMismatch:
    case ErrorCode::DegenerateSegment:
    case ErrorCode::Precondition: return RELCALC_E_PRECONDITION;
    case ErrorCode::NotFormallyDomainTight:
    case ErrorCode::OrthogonalRefused: return RELCALC_E_REFUSED;
    case ErrorCode::BisectionFailure:
    case ErrorCode::Numeric: return RELCALC_E_NUMERIC;
    case ErrorCode::UnknownLaw: return RELCALC_E_UNKNOWN_LAW;
    case ErrorCode::Parse: return RELCALC_E_PARSE;
    case ErrorCode::Type: return RELCALC_E_TYPE;
    case ErrorCode::UnknownName: return RELCALC_E_UNKNOWN_NAME;
    case ErrorCode::Io: return RELCALC_E_IO;
  }
  return RELCALC_E_INTERNAL;
}

relcalc_status fail(relcalc_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <class F>
relcalc_status guard(F&& f) {
  try {
    g_last_error.clear();
    f();
    return RELCALC_OK;
  } catch (const Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(RELCALC_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(RELCALC_E_INTERNAL, e.what());
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void need(const void* p, const char* what) {
  if (!p) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must not be null");
}

Mat read_complex(const double* data, int rows, int cols) {
  Mat m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      const size_t k = 2 * (static_cast<size_t>(j) * rows + i);
      m(i, j) = cplx(data[k], data[k + 1]);
    }
  return m;
}

relcalc_relation* wrap(Relation r) { return new relcalc_relation{std::move(r)}; }

}  // namespace

extern "C" {

const char* relcalc_last_error(void) { return g_last_error.c_str(); }

const char* relcalc_status_name(relcalc_status s) {
  switch (s) {
    case RELCALC_OK: return "ok";
    case RELCALC_E_INVALID_ARGUMENT: return "invalid-argument";
    case RELCALC_E_DIMENSION: return "dimension-mismatch";
    case RELCALC_E_PARSE: return "parse-error";
    case RELCALC_E_TYPE: return "type-error";
    case RELCALC_E_UNKNOWN_NAME: return "unknown-name";
    case RELCALC_E_IO: return "io-error";
    case RELCALC_E_UNKNOWN_LAW: return "unknown-law";
    case RELCALC_E_REFUSED: return "refused";
    case RELCALC_E_PRECONDITION: return "precondition";
    case RELCALC_E_NUMERIC: return "numeric";
    case RELCALC_E_INTERNAL: return "internal";
  }
  return "unknown-status";
}

void relcalc_string_free(char* s) { std::free(s); }

relcalc_status relcalc_env_create(int n, relcalc_env** out) {
  return guard([&] {
    need(out, "out");
    if (n <= 0) throw Error(ErrorCode::InvalidArgument, "n must be positive");
    *out = new relcalc_env{Environment(n)};
  });
}

relcalc_status relcalc_env_load(const char* path, relcalc_env** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = new relcalc_env{load_environment(path)};
  });
}

relcalc_status relcalc_env_load_string(const char* text, relcalc_env** out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    *out = new relcalc_env{parse_environment(text)};
  });
}

relcalc_status relcalc_env_save(const relcalc_env* env, const char* path) {
  return guard([&] {
    need(env, "env");
    need(path, "path");
    save_environment(env->env, path);
  });
}

relcalc_status relcalc_env_serialize(const relcalc_env* env, char** out) {
  return guard([&] {
    need(env, "env");
    need(out, "out");
    *out = dup(serialize_environment(env->env));
  });
}

void relcalc_env_destroy(relcalc_env* env) { delete env; }

int relcalc_env_dim(const relcalc_env* env) { return env ? env->env.n() : 0; }

relcalc_status relcalc_env_names(const relcalc_env* env, char** out) {
  return guard([&] {
    need(env, "env");
    need(out, "out");
    std::string s;
    for (const auto& name : env->env.names()) s += name + "\n";
    *out = dup(s);
  });
}

relcalc_status relcalc_eval(relcalc_env* env, const char* program, char** out) {
  return guard([&] {
    need(env, "env");
    need(program, "program");
    need(out, "out");
    // Evaluate on a copy so a failing statement leaves the environment untouched.
    Environment work = env->env;
    std::string printed = run_program(work, program);
    *out = dup(printed);
    env->env = std::move(work);
  });
}

relcalc_status relcalc_report(const relcalc_env* env, const char* name, int json, char** out) {
  return guard([&] {
    need(env, "env");
    need(name, "name");
    need(out, "out");
    const Relation& a = env->env.relation(name);
    *out = dup(json ? report_json(name, a) : report_text(name, a));
  });
}

relcalc_status relcalc_classify(const relcalc_env* env, const char* name, char** out) {
  return guard([&] {
    need(env, "env");
    need(name, "name");
    need(out, "out");
    *out = dup(classify_text(name, env->env.relation(name)));
  });
}

relcalc_status relcalc_nrange_csv(const relcalc_env* env, const char* name, size_t samples, uint64_t seed, char** out) {
  return guard([&] {
    need(env, "env");
    need(name, "name");
    need(out, "out");
    *out = dup(nrange_csv(env->env.relation(name), samples, seed));
  });
}

relcalc_status relcalc_laws_run(const char* law_id, size_t trials, int dim_lo, int dim_hi, uint64_t seed,
                                unsigned threads, char** out, int* all_passed) {
  return guard([&] {
    need(law_id, "law_id");
    need(out, "out");
    if (dim_lo < 1 || dim_hi < dim_lo) throw Error(ErrorCode::InvalidArgument, "invalid dimension range");
    std::vector<LawReport> reps;
    if (std::string(law_id) == "all") reps = run_all(trials, {dim_lo, dim_hi}, seed, threads);
    else reps.push_back(run_law(law_id, trials, {dim_lo, dim_hi}, seed, threads));
    std::string s;
    bool ok = true;
    for (const LawReport& r : reps) {
      s += format_report_line(r) + "\n";
      ok = ok && r.pass();
    }
    *out = dup(s);
    if (all_passed) *all_passed = ok ? 1 : 0;
  });
}

relcalc_status relcalc_law_list(char** out) {
  return guard([&] {
    need(out, "out");
    std::string s;
    for (const Law& l : law_registry()) s += l.id + "\n";
    *out = dup(s);
  });
}

relcalc_status relcalc_relation_get(const relcalc_env* env, const char* name, relcalc_relation** out) {
  return guard([&] {
    need(env, "env");
    need(name, "name");
    need(out, "out");
    *out = wrap(env->env.relation(name));
  });
}

relcalc_status relcalc_relation_bind(relcalc_env* env, const char* name, const relcalc_relation* r) {
  return guard([&] {
    need(env, "env");
    need(name, "name");
    need(r, "relation");
    if (!is_identifier(name)) throw Error(ErrorCode::InvalidArgument, std::string("invalid name: ") + name);
    env->env.assign(name, r->rel);
  });
}

relcalc_status relcalc_relation_from_graph(int n, int k, const double* vectors, relcalc_relation** out) {
  return guard([&] {
    need(out, "out");
    if (n <= 0 || k < 0) throw Error(ErrorCode::InvalidArgument, "need n > 0 and k >= 0");
    if (k > 0) need(vectors, "vectors");
    *out = wrap(Relation::from_graph(k > 0 ? read_complex(vectors, 2 * n, k) : Mat(2 * n, 0)));
  });
}

relcalc_status relcalc_relation_from_operator(int n, const double* matrix, relcalc_relation** out) {
  return guard([&] {
    need(out, "out");
    need(matrix, "matrix");
    if (n <= 0) throw Error(ErrorCode::InvalidArgument, "n must be positive");
    *out = wrap(Relation::from_operator(read_complex(matrix, n, n)));
  });
}

void relcalc_relation_destroy(relcalc_relation* r) { delete r; }

int relcalc_relation_n(const relcalc_relation* r) { return r ? r->rel.n() : 0; }

int relcalc_relation_dim(const relcalc_relation* r) { return r ? r->rel.dim() : 0; }

relcalc_status relcalc_relation_component_dims(const relcalc_relation* r, int dims[4]) {
  return guard([&] {
    need(r, "relation");
    need(dims, "dims");
    dims[0] = r->rel.dom().dim();
    dims[1] = r->rel.ran().dim();
    dims[2] = r->rel.ker().dim();
    dims[3] = r->rel.mul().dim();
  });
}

relcalc_status relcalc_relation_basis(const relcalc_relation* r, double* out, size_t capacity) {
  return guard([&] {
    need(r, "relation");
    const Mat& b = r->rel.graph().basis();
    const size_t want = 2 * static_cast<size_t>(b.rows()) * static_cast<size_t>(b.cols());
    if (capacity < want) throw Error(ErrorCode::InvalidArgument, "capacity too small: need " + std::to_string(want));
    if (want > 0) need(out, "out");
    for (Eigen::Index j = 0; j < b.cols(); ++j)
      for (Eigen::Index i = 0; i < b.rows(); ++i) {
        const size_t k = 2 * (static_cast<size_t>(j) * b.rows() + i);
        out[k] = b(i, j).real();
        out[k + 1] = b(i, j).imag();
      }
  });
}

relcalc_status relcalc_relation_unary(relcalc_unary_op op, const relcalc_relation* a, relcalc_relation** out) {
  return guard([&] {
    need(a, "relation");
    need(out, "out");
    const Relation& r = a->rel;
    switch (op) {
      case RELCALC_OP_ADJOINT: *out = wrap(adjoint(r)); return;
      case RELCALC_OP_INVERSE: *out = wrap(inverse(r)); return;
      case RELCALC_OP_REAL_PART: *out = wrap(real_part(r)); return;
      case RELCALC_OP_IMAG_PART: *out = wrap(imag_part(r)); return;
      case RELCALC_OP_REGULAR_PART: *out = wrap(regular_part(r)); return;
      case RELCALC_OP_SINGULAR_PART: *out = wrap(singular_part(r)); return;
      case RELCALC_OP_OPERATOR_PART: *out = wrap(operator_part(r)); return;
      case RELCALC_OP_MUL_PART: *out = wrap(mul_part(r)); return;
      case RELCALC_OP_INFINITY_EXT: *out = wrap(infinity_ext(r)); return;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown unary operation");
  });
}

relcalc_status relcalc_relation_binary(relcalc_binary_op op, const relcalc_relation* a, const relcalc_relation* b,
                                       relcalc_relation** out) {
  return guard([&] {
    need(a, "a");
    need(b, "b");
    need(out, "out");
    if (a->rel.n() != b->rel.n()) throw Error(ErrorCode::DimensionMismatch, "relations live in different spaces");
    switch (op) {
      case RELCALC_OP_SUM: *out = wrap(op_sum(a->rel, b->rel)); return;
      case RELCALC_OP_DIFF: *out = wrap(op_diff(a->rel, b->rel)); return;
      case RELCALC_OP_CW_SUM: *out = wrap(cw_sum(a->rel, b->rel)); return;
      case RELCALC_OP_PRODUCT: *out = wrap(product(a->rel, b->rel)); return;
      case RELCALC_OP_INTERSECT: *out = wrap(intersect(a->rel, b->rel)); return;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown binary operation");
  });
}

relcalc_status relcalc_relation_scale(const relcalc_relation* a, double re, double im, relcalc_relation** out) {
  return guard([&] {
    need(a, "relation");
    need(out, "out");
    *out = wrap(scalar_mul(cplx(re, im), a->rel));
  });
}

relcalc_status relcalc_relation_opening(const relcalc_relation* a, const relcalc_relation* b, double* out) {
  return guard([&] {
    need(a, "a");
    need(b, "b");
    need(out, "out");
    if (a->rel.n() != b->rel.n()) throw Error(ErrorCode::DimensionMismatch, "relations live in different spaces");
    *out = opening(a->rel, b->rel);
  });
}

}  // extern "C"
