#pragma once

#include "core/relation.hpp"

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace relcalc {

using Value = std::variant<Relation, Subspace, cplx>;

const char* value_kind(const Value& v);  // "relation", "subspace", "scalar"

// Named bindings over one ambient space C^n.
class Environment {
 public:
  explicit Environment(int n = 0) : n_(n) {}
  int n() const { return n_; }
  void set_n(int n);
  // Throws Parse on a duplicate name.
  void bind(const std::string& name, Value v);
  // Overwrites an existing binding.
  void assign(const std::string& name, Value v);
  const Value* find(const std::string& name) const;
  const Value& at(const std::string& name) const;  // throws UnknownName
  const Relation& relation(const std::string& name) const;  // throws UnknownName / Type
  const std::vector<std::string>& names() const { return order_; }

 private:
  void check(const Value& v) const;
  int n_;
  std::map<std::string, Value> values_;
  std::vector<std::string> order_;
};

// Complex literal: "a", "bi", "a+bi", "a-bi" (decimal a, b with optional exponent).
std::optional<cplx> parse_complex(const std::string& s);
// Round-trip formatting with 17 significant digits.
std::string format_complex(cplx z);
// Rounded display; parts with |c| <= snap * max(1, |z|) print as 0, never "-0".
std::string format_complex_short(cplx z, double snap = 1e-14, int digits = 12);
std::string format_real_short(double x, int digits = 12);
bool is_identifier(const std::string& s);

Environment parse_environment(const std::string& text);
Environment load_environment(const std::string& path);  // Io / Parse errors
std::string serialize_environment(const Environment& env);
void save_environment(const Environment& env, const std::string& path);  // Io error

// Reduced row echelon basis (columns); unique for the subspace.
Mat canonical_basis(const Subspace& s);

}  // namespace relcalc
