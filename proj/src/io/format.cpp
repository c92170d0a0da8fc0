#include "io/format.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace relcalc {

const char* value_kind(const Value& v) {
  switch (v.index()) {
    case 0: return "relation";
    case 1: return "subspace";
    default: return "scalar";
  }
}

void Environment::set_n(int n) {
  if (!values_.empty() && n != n_) throw Error(ErrorCode::Parse, "cannot change n of a non-empty environment");
  n_ = n;
}

void Environment::check(const Value& v) const {
  if (n_ <= 0) throw Error(ErrorCode::Parse, "hilbert dimension not set");
  if (const auto* r = std::get_if<Relation>(&v); r && r->n() != n_)
    throw Error(ErrorCode::DimensionMismatch, "relation does not live in C^" + std::to_string(n_));
  if (const auto* s = std::get_if<Subspace>(&v); s && s->ambient() != n_)
    throw Error(ErrorCode::DimensionMismatch, "subspace does not live in C^" + std::to_string(n_));
}

void Environment::bind(const std::string& name, Value v) {
  if (values_.count(name)) throw Error(ErrorCode::Parse, "duplicate name: " + name);
  assign(name, std::move(v));
}

void Environment::assign(const std::string& name, Value v) {
  check(v);
  auto it = values_.find(name);
  if (it == values_.end()) {
    values_.emplace(name, std::move(v));
    order_.push_back(name);
  } else {
    it->second = std::move(v);
  }
}

const Value* Environment::find(const std::string& name) const {
  auto it = values_.find(name);
  return it == values_.end() ? nullptr : &it->second;
}

const Value& Environment::at(const std::string& name) const {
  const Value* v = find(name);
  if (!v) throw Error(ErrorCode::UnknownName, "unknown name: " + name);
  return *v;
}

const Relation& Environment::relation(const std::string& name) const {
  const Value& v = at(name);
  if (const auto* r = std::get_if<Relation>(&v)) return *r;
  throw Error(ErrorCode::Type, name + " is a " + value_kind(v) + ", not a relation");
}

namespace {

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  const char* b = s.data();
  const char* e = b + s.size();
  if (*b == '+') ++b;
  if (b == e || *b == '+') return false;
  // from_chars would accept "inf"/"nan"; only decimals are allowed.
  for (const char* p = b; p != e; ++p)
    if (!(std::isdigit(static_cast<unsigned char>(*p)) || *p == '.' || *p == 'e' || *p == 'E' || *p == '-' || *p == '+'))
      return false;
  auto [ptr, ec] = std::from_chars(b, e, out);
  return ec == std::errc() && ptr == e && std::isfinite(out);
}

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

}  // namespace

std::optional<cplx> parse_complex(const std::string& raw) {
  const std::string s = trim(raw);
  if (s.empty()) return std::nullopt;
  if (s.back() != 'i') {
    double re;
    if (!parse_double(s, re)) return std::nullopt;
    return cplx(re, 0.0);
  }
  const std::string body = s.substr(0, s.size() - 1);
  // Split at the last sign that does not belong to an exponent.
  size_t split = std::string::npos;
  for (size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_of = [](const std::string& t, double& out) {
    if (t.empty() || t == "+") return out = 1.0, true;
    if (t == "-") return out = -1.0, true;
    return parse_double(t, out);
  };
  double re = 0.0, im = 0.0;
  if (split == std::string::npos) {
    if (!imag_of(body, im)) return std::nullopt;
  } else {
    if (!parse_double(body.substr(0, split), re)) return std::nullopt;
    if (!imag_of(body.substr(split), im)) return std::nullopt;
  }
  return cplx(re, im);
}

std::string format_complex(cplx z) {
  char buf[80];
  z = cplx(z.real() + 0.0, z.imag() + 0.0);  // drop negative zeros
  if (z.imag() == 0.0 && !std::signbit(z.imag())) {
    std::snprintf(buf, sizeof buf, "%.17g", z.real());
  } else {
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  }
  return buf;
}

std::string format_real_short(double x, int digits) {
  if (x == 0.0) return "0";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  if (std::string(buf) == "-0") return "0";
  return buf;
}

std::string format_complex_short(cplx z, double snap, int digits) {
  const double cut = snap * std::max(1.0, std::abs(z));
  double re = std::abs(z.real()) <= cut ? 0.0 : z.real();
  double im = std::abs(z.imag()) <= cut ? 0.0 : z.imag();
  const std::string rs = format_real_short(re, digits);
  if (im == 0.0) return rs;
  std::string is = format_real_short(im, digits);
  if (is == "0") return rs;
  if (is == "1") is = "";
  else if (is == "-1") is = "-";
  if (re == 0.0 || rs == "0") return is + "i";
  return rs + (is.empty() || is[0] != '-' ? "+" : "") + is + "i";
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return s != "print";
}

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
  throw Error(ErrorCode::Parse, "line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

Vec parse_entries(const std::vector<std::string>& items, int n, int line) {
  if (static_cast<int>(items.size()) != n)
    fail(line, "inconsistent n: expected " + std::to_string(n) + " entries, got " + std::to_string(items.size()));
  Vec v(n);
  for (int i = 0; i < n; ++i) {
    auto c = parse_complex(items[i]);
    if (!c) fail(line, "malformed literal '" + trim(items[i]) + "'");
    v(i) = *c;
  }
  return v;
}

struct Block {
  std::string kind, name;
  int line = 0;
  std::vector<Vec> vecs;  // relation: length 2n; subspace: n; operator: rows
};

// Saved files hold orthonormal bases; keeping them as-is makes save/load bit-exact.
Subspace adopt(const Mat& cols) {
  const Eigen::Index k = cols.cols();
  if (k > 0 && (cols.adjoint() * cols - Mat::Identity(k, k)).cwiseAbs().maxCoeff() <= 1e-14)
    return Subspace::from_orthonormal(cols);
  return Subspace::span(cols);
}

void finish(Environment& env, Block& b) {
  if (b.kind.empty()) return;
  const int n = env.n();
  if (b.kind == "relation") {
    Mat cols(2 * n, static_cast<Eigen::Index>(b.vecs.size()));
    for (size_t j = 0; j < b.vecs.size(); ++j) cols.col(static_cast<Eigen::Index>(j)) = b.vecs[j];
    env.bind(b.name, Relation(adopt(cols)));
  } else if (b.kind == "subspace") {
    Mat cols(n, static_cast<Eigen::Index>(b.vecs.size()));
    for (size_t j = 0; j < b.vecs.size(); ++j) cols.col(static_cast<Eigen::Index>(j)) = b.vecs[j];
    env.bind(b.name, adopt(cols));
  } else if (b.kind == "operator") {
    if (static_cast<int>(b.vecs.size()) != n)
      fail(b.line, "inconsistent n: operator " + b.name + " needs " + std::to_string(n) + " rows");
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.row(i) = b.vecs[i].transpose();
    env.bind(b.name, Relation::from_operator(m));
  }
  b = Block{};
}

}  // namespace

Environment parse_environment(const std::string& text) {
  Environment env;
  Block cur;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw.substr(0, raw.find('#'));
    s = trim(s);
    if (s.empty()) continue;
    std::istringstream words(s);
    std::string head;
    words >> head;
    if (head == "hilbert") {
      std::string arg, extra;
      words >> arg;
      if (words >> extra) fail(line, "unexpected text after hilbert");
      if (env.n() > 0) fail(line, "hilbert declared twice");
      int n = 0;
      if (arg.rfind("n=", 0) != 0) fail(line, "expected 'hilbert n=<int>'");
      const std::string num = arg.substr(2);
      auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), n);
      if (ec != std::errc() || p != num.data() + num.size() || n <= 0 || n > 4096)
        fail(line, "expected a positive dimension");
      env.set_n(n);
    } else if (head == "relation" || head == "operator" || head == "subspace" || head == "scalar") {
      if (env.n() <= 0) fail(line, "'hilbert n=<int>' must come first");
      finish(env, cur);
      std::string name, extra;
      words >> name;
      if (!is_identifier(name)) fail(line, "invalid name '" + name + "'");
      if (env.find(name)) fail(line, "duplicate name: " + name);
      if (head == "scalar") {
        std::string lit;
        words >> lit;
        auto c = parse_complex(lit);
        if (!c) fail(line, "malformed literal '" + lit + "'");
        if (words >> extra) fail(line, "unexpected text after scalar");
        env.bind(name, *c);
        continue;
      }
      if (words >> extra) fail(line, "unexpected text after name");
      cur.kind = head;
      cur.name = name;
      cur.line = line;
    } else if (head == "vec") {
      if (cur.kind != "relation" && cur.kind != "subspace") fail(line, "'vec' outside a relation or subspace block");
      const std::string rest = trim(s.substr(3));
      if (rest.size() < 2 || rest.front() != '(' || rest.back() != ')') fail(line, "expected 'vec (...)'");
      const std::string inner = rest.substr(1, rest.size() - 2);
      const int n = env.n();
      if (cur.kind == "relation") {
        const auto halves = split(inner, '|');
        if (halves.size() != 2) fail(line, "relation vectors need the form (f entries | f' entries)");
        Vec v(2 * n);
        v << parse_entries(split(halves[0], ','), n, line), parse_entries(split(halves[1], ','), n, line);
        cur.vecs.push_back(v);
      } else {
        if (inner.find('|') != std::string::npos) fail(line, "subspace vectors have no '|'");
        cur.vecs.push_back(parse_entries(split(inner, ','), n, line));
      }
    } else if (head == "row") {
      if (cur.kind != "operator") fail(line, "'row' outside an operator block");
      std::vector<std::string> items;
      for (std::string w; words >> w;) items.push_back(w);
      if (static_cast<int>(cur.vecs.size()) >= env.n()) fail(line, "inconsistent n: too many rows");
      cur.vecs.push_back(parse_entries(items, env.n(), line));
    } else {
      fail(line, "unknown directive '" + head + "'");
    }
  }
  finish(env, cur);
  if (env.n() <= 0) throw Error(ErrorCode::Parse, "missing 'hilbert n=<int>'");
  return env;
}

Environment load_environment(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_environment(ss.str());
}

std::string serialize_environment(const Environment& env) {
  std::ostringstream out;
  out << "hilbert n=" << env.n() << "\n";
  const int n = env.n();
  for (const std::string& name : env.names()) {
    const Value& v = env.at(name);
    if (const auto* c = std::get_if<cplx>(&v)) {
      out << "scalar " << name << " " << format_complex(*c) << "\n";
    } else if (const auto* r = std::get_if<Relation>(&v)) {
      out << "relation " << name << "\n";
      for (int j = 0; j < r->dim(); ++j) {
        out << "  vec (";
        for (int i = 0; i < n; ++i) out << (i ? "," : "") << format_complex(r->F()(i, j));
        out << " | ";
        for (int i = 0; i < n; ++i) out << (i ? "," : "") << format_complex(r->G()(i, j));
        out << ")\n";
      }
    } else {
      const auto& s = std::get<Subspace>(v);
      out << "subspace " << name << "\n";
      for (int j = 0; j < s.dim(); ++j) {
        out << "  vec (";
        for (int i = 0; i < n; ++i) out << (i ? "," : "") << format_complex(s.basis()(i, j));
        out << ")\n";
      }
    }
  }
  return out.str();
}

void save_environment(const Environment& env, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  out << serialize_environment(env);
  out.flush();
  if (!out) throw Error(ErrorCode::Io, "write failed: " + path);
}

Mat canonical_basis(const Subspace& s) {
  const int m = s.ambient(), k = s.dim();
  Mat rows = s.basis().transpose();  // k x m, row space = s
  int r = 0;
  for (int col = 0; col < m && r < k; ++col) {
    Eigen::Index piv;
    const double best = rows.col(col).segment(r, k - r).cwiseAbs().maxCoeff(&piv);
    if (best <= 1e-9) continue;
    piv += r;
    rows.row(r).swap(rows.row(piv));
    rows.row(r) /= rows(r, col);
    for (int i = 0; i < k; ++i)
      if (i != r) rows.row(i) -= rows(i, col) * rows.row(r);
    ++r;
  }
  return rows.topRows(r).transpose();
}

}  // namespace relcalc
