#include "io/report.hpp"

#include "core/classify.hpp"
#include "core/decompose.hpp"
#include "core/spectral.hpp"
#include "io/format.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <optional>
#include <sstream>

namespace relcalc {

namespace {

using nlohmann::ordered_json;

struct Flag {
  std::string key;
  std::optional<bool> value;  // nullopt: not applicable
};

std::optional<bool> maximal_if(const Relation& a, ClassKind k) {
  const OperatorClass c{k, 0.0};
  if (!in_class(a, c)) return std::nullopt;
  return is_maximal(a, c);
}

// Smallest semi-angle of a sector containing W(A), if any.
std::optional<double> sector_angle(const Relation& a) {
  const double top = std::numbers::pi / 2 - 1e-9;
  if (!is_sectorial(a, top)) return std::nullopt;
  const Mat im = form_pair(a).im_form();
  if (is_psd(im) && is_psd(-im)) return 0.0;  // real numerical range
  double lo = 0.0, hi = top;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid > 0.0 && is_sectorial(a, mid)) hi = mid;
    else lo = mid;
  }
  return hi;
}

std::vector<Flag> flags(const Relation& a) {
  return {
      {"operator", a.mul().is_zero()},
      {"symmetric", is_symmetric(a)},
      {"selfadjoint", is_selfadjoint(a)},
      {"formally_domain_tight", is_formally_domain_tight(a)},
      {"domain_tight", is_domain_tight(a)},
      {"formally_range_tight", is_formally_range_tight(a)},
      {"range_tight", is_range_tight(a)},
      {"singular", is_singular(a)},
      {"regular", is_regular(a)},
      {"decomposable", is_decomposable(a).decomposable},
      {"dissipative", is_dissipative(a)},
      {"accretive", is_accretive(a)},
      {"nonnegative", is_nonnegative(a)},
      {"sectorial", sector_angle(a).has_value()},
      {"formally_normal", is_formally_normal(a)},
      {"normal", is_normal(a)},
      {"maximal_symmetric", maximal_if(a, ClassKind::Symmetric)},
      {"maximal_dissipative", maximal_if(a, ClassKind::Dissipative)},
      {"maximal_accretive", maximal_if(a, ClassKind::Accretive)},
      {"maximal_nonnegative", maximal_if(a, ClassKind::Nonnegative)},
  };
}

std::string flag_text(const std::optional<bool>& v) {
  if (!v) return "n/a";
  return *v ? "true" : "false";
}

double rounded(double x) {
  if (!std::isfinite(x)) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

ordered_json cnum(cplx z, double snap = 1e-12) {
  const double cut = snap * std::max(1.0, std::abs(z));
  const double re = std::abs(z.real()) <= cut ? 0.0 : z.real();
  const double im = std::abs(z.imag()) <= cut ? 0.0 : z.imag();
  return ordered_json::array({rounded(re), rounded(im)});
}

ordered_json json_subspace(const Subspace& s) {
  ordered_json out = ordered_json::array();
  const Mat b = canonical_basis(s);
  for (int j = 0; j < b.cols(); ++j) {
    ordered_json v = ordered_json::array();
    for (int i = 0; i < b.rows(); ++i) v.push_back(cnum(b(i, j)));
    out.push_back(v);
  }
  return out;
}

ordered_json json_relation(const Relation& r) {
  ordered_json out = ordered_json::array();
  const Mat b = canonical_basis(r.graph());
  const int n = r.n();
  for (int j = 0; j < b.cols(); ++j) {
    ordered_json f = ordered_json::array(), fp = ordered_json::array();
    for (int i = 0; i < n; ++i) {
      f.push_back(cnum(b(i, j)));
      fp.push_back(cnum(b(n + i, j)));
    }
    out.push_back({{"f", f}, {"f_prime", fp}});
  }
  return out;
}

std::string text_subspace(const Subspace& s, const std::string& indent) {
  const Mat b = canonical_basis(s);
  if (b.cols() == 0) return indent + "{0}\n";
  std::string out;
  for (int j = 0; j < b.cols(); ++j) {
    out += indent + "(";
    for (int i = 0; i < b.rows(); ++i) out += (i ? ", " : "") + format_complex_short(b(i, j), 1e-12);
    out += ")\n";
  }
  return out;
}

std::string text_relation(const Relation& r, const std::string& indent) {
  const Mat b = canonical_basis(r.graph());
  if (b.cols() == 0) return indent + "{(0 | 0)}\n";
  const int n = r.n();
  std::string out;
  for (int j = 0; j < b.cols(); ++j) {
    out += indent + "(";
    for (int i = 0; i < n; ++i) out += (i ? ", " : "") + format_complex_short(b(i, j), 1e-12);
    out += " | ";
    for (int i = 0; i < n; ++i) out += (i ? ", " : "") + format_complex_short(b(n + i, j), 1e-12);
    out += ")\n";
  }
  return out;
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

const cplx kSamplePoints[] = {cplx(0, 0), cplx(1, 0), cplx(-1, 0), cplx(0, 1), cplx(0, -1)};

// Everything the reports show, computed once.
struct Facts {
  std::vector<Flag> flags;
  std::optional<double> sector;
  Decomposition canonical;
  std::optional<Decomposition> componentwise;
  std::optional<OrthogonalDecomposition> orthogonal;
  std::optional<Vec> orthogonal_witness;
  AdjointDecomposition adjoint;
  std::optional<Cartesian> cartesian;
  SpectralReport spectrum;
};

Facts gather(const Relation& a) {
  Facts f;
  f.flags = flags(a);
  f.sector = sector_angle(a);
  f.canonical = canonical_decompose(a);
  if (auto d = is_decomposable(a); d.certificate) f.componentwise = *d.certificate;
  try {
    f.orthogonal = orthogonal_decompose(a);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::OrthogonalRefused) throw;
    f.orthogonal_witness = e.witness();
  }
  f.adjoint = adjoint_decompose(a);
  if (is_formally_domain_tight(a)) f.cartesian = cartesian_components(a);
  f.spectrum = eigenvalues(a);
  for (cplx l : kSamplePoints) {
    // Values under the rank tolerance are rounding noise; show them as 0.
    double c = regularity_constant(a, l);
    if (c <= gamma_tol(a, l)) c = 0.0;
    f.spectrum.samples.push_back({l, c, defect(a, l)});
  }
  return f;
}

}  // namespace

std::string report_text(const std::string& name, const Relation& a) {
  const Facts f = gather(a);
  std::ostringstream out;
  out << "relation " << name << " in C^" << a.n() << "\n";
  out << "graph dim: " << a.dim() << "\n";
  out << "dims: dom " << a.dom().dim() << ", ran " << a.ran().dim() << ", ker " << a.ker().dim() << ", mul "
      << a.mul().dim() << "\n";
  out << "\n[classify]\n";
  for (const Flag& fl : f.flags) out << fl.key << " = " << flag_text(fl.value) << "\n";
  out << "sector_angle = " << (f.sector ? format_real_short(rounded(*f.sector), 9) : "n/a") << "\n";

  out << "\n[canonical]  A = A_reg + A_sing\n";
  out << "  regular part:\n" << text_relation(f.canonical.parts[0], "    ");
  out << "  singular part:\n" << text_relation(f.canonical.parts[1], "    ");
  out << "  residual: " << sci(f.canonical.identity_residual) << "\n";

  out << "\n[componentwise]  A = A_op (+) A_mul\n";
  if (f.componentwise) {
    out << "  operator part:\n" << text_relation(f.componentwise->parts[0], "    ");
    out << "  multivalued part:\n" << text_relation(f.componentwise->parts[1], "    ");
    out << "  residual: " << sci(f.componentwise->identity_residual) << "\n";
  } else {
    out << "  not decomposable\n";
  }

  out << "\n[orthogonal]\n";
  if (f.orthogonal) {
    out << "  operator part:\n" << text_relation(f.orthogonal->dec.parts[0], "    ");
    out << "  multivalued part:\n" << text_relation(f.orthogonal->dec.parts[1], "    ");
    out << "  regular space:\n" << text_subspace(f.orthogonal->regular_space, "    ");
    out << "  residual: " << sci(f.orthogonal->dec.identity_residual) << "\n";
  } else {
    out << "  refused: dom A is not orthogonal to mul A\n";
    if (f.orthogonal_witness) out << "  witness:\n" << text_subspace(Subspace::span(Mat(*f.orthogonal_witness)), "    ");
  }

  out << "\n[adjoint componentwise]  A* = (A*)_op (+) (A*)_mul\n";
  out << "  orthogonal: " << (f.adjoint.orthogonal ? "true" : "false") << "\n";
  out << "  operator part:\n" << text_relation(f.adjoint.dec.parts[0], "    ");
  out << "  multivalued part:\n" << text_relation(f.adjoint.dec.parts[1], "    ");
  out << "  residual: " << sci(f.adjoint.dec.identity_residual) << "\n";

  out << "\n[cartesian]  A = A1 + i A2\n";
  if (f.cartesian) {
    out << "  A1:\n" << text_relation(f.cartesian->a1, "    ");
    out << "  A2:\n" << text_relation(f.cartesian->a2, "    ");
    out << "  residual: " << sci(f.cartesian->reassembly_residual) << "\n";
    out << "  infinity residual: " << sci(f.cartesian->infinity_residual) << "\n";
  } else {
    out << "  none: A is not formally domain tight\n";
  }

  out << "\n[spectrum]\n";
  out << "every point is an eigenvalue: " << (f.spectrum.every_point ? "true" : "false") << "\n";
  out << "mul dim: " << f.spectrum.mul_dim << "\n";
  out << "eigenvalues:";
  if (f.spectrum.eigenvalues.empty()) out << " none";
  out << "\n";
  for (const Eigenvalue& e : f.spectrum.eigenvalues)
    out << "  " << format_complex_short(e.value, 1e-10, 10) << " (multiplicity " << e.multiplicity << ")\n";
  out << "sample points:\n";
  for (const SpectralSample& s : f.spectrum.samples) {
    out << "  lambda " << format_complex_short(s.lambda) << ": defect " << s.defect << ", c "
        << (std::isfinite(s.c) ? format_real_short(rounded(s.c), 10) : "inf") << ", regular type "
        << (is_regular_point(a, s.lambda) ? "yes" : "no") << ", resolvent " << (in_resolvent_set(a, s.lambda) ? "yes" : "no")
        << "\n";
  }
  return out.str();
}

std::string report_json(const std::string& name, const Relation& a) {
  const Facts f = gather(a);
  ordered_json j;
  j["format_version"] = 1;
  j["name"] = name;
  j["n"] = a.n();
  j["graph_dim"] = a.dim();
  j["dims"] = {{"dom", a.dom().dim()}, {"ran", a.ran().dim()}, {"ker", a.ker().dim()}, {"mul", a.mul().dim()}};
  ordered_json cls = ordered_json::object();
  for (const Flag& fl : f.flags) cls[fl.key] = fl.value ? ordered_json(*fl.value) : ordered_json(nullptr);
  cls["sector_angle"] = f.sector ? ordered_json(rounded(*f.sector)) : ordered_json(nullptr);
  j["classify"] = cls;

  ordered_json dec;
  dec["canonical"] = {{"regular", json_relation(f.canonical.parts[0])},
                      {"singular", json_relation(f.canonical.parts[1])},
                      {"residual", f.canonical.identity_residual}};
  if (f.componentwise) {
    dec["componentwise"] = {{"available", true},
                            {"operator", json_relation(f.componentwise->parts[0])},
                            {"multivalued", json_relation(f.componentwise->parts[1])},
                            {"residual", f.componentwise->identity_residual}};
  } else {
    dec["componentwise"] = {{"available", false}};
  }
  if (f.orthogonal) {
    dec["orthogonal"] = {{"available", true},
                         {"operator", json_relation(f.orthogonal->dec.parts[0])},
                         {"multivalued", json_relation(f.orthogonal->dec.parts[1])},
                         {"regular_space", json_subspace(f.orthogonal->regular_space)},
                         {"residual", f.orthogonal->dec.identity_residual}};
  } else {
    ordered_json o = {{"available", false}};
    if (f.orthogonal_witness) o["witness"] = json_subspace(Subspace::span(Mat(*f.orthogonal_witness)));
    dec["orthogonal"] = o;
  }
  dec["adjoint"] = {{"orthogonal", f.adjoint.orthogonal},
                    {"operator", json_relation(f.adjoint.dec.parts[0])},
                    {"multivalued", json_relation(f.adjoint.dec.parts[1])},
                    {"residual", f.adjoint.dec.identity_residual}};
  if (f.cartesian) {
    dec["cartesian"] = {{"available", true},
                        {"a1", json_relation(f.cartesian->a1)},
                        {"a2", json_relation(f.cartesian->a2)},
                        {"residual", f.cartesian->reassembly_residual},
                        {"infinity_residual", f.cartesian->infinity_residual}};
  } else {
    dec["cartesian"] = {{"available", false}};
  }
  j["decompositions"] = dec;

  ordered_json eig = ordered_json::array();
  for (const Eigenvalue& e : f.spectrum.eigenvalues)
    eig.push_back({{"value", cnum(e.value, 1e-10)}, {"multiplicity", e.multiplicity}});
  ordered_json pts = ordered_json::array();
  for (const SpectralSample& s : f.spectrum.samples) {
    pts.push_back({{"lambda", cnum(s.lambda)},
                   {"defect", s.defect},
                   {"c", std::isfinite(s.c) ? ordered_json(rounded(s.c)) : ordered_json(nullptr)},
                   {"regular_type", is_regular_point(a, s.lambda)},
                   {"resolvent", in_resolvent_set(a, s.lambda)}});
  }
  j["spectrum"] = {{"every_point", f.spectrum.every_point},
                   {"mul_dim", f.spectrum.mul_dim},
                   {"eigenvalues", eig},
                   {"samples", pts}};
  return j.dump(2) + "\n";
}

std::string classify_text(const std::string& name, const Relation& a) {
  std::ostringstream out;
  out << "name=" << name << "\n";
  for (const Flag& fl : flags(a)) out << fl.key << "=" << flag_text(fl.value) << "\n";
  return out.str();
}

std::string nrange_csv(const Relation& a, size_t samples, std::uint64_t seed) {
  std::string out = "re,im\n";
  for (cplx z : nrange_sample(a, samples, seed)) {
    const double cut = 1e-14 * std::max(1.0, std::abs(z));
    const double re = std::abs(z.real()) <= cut ? 0.0 : z.real();
    const double im = std::abs(z.imag()) <= cut ? 0.0 : z.imag();
    out += format_real_short(re) + "," + format_real_short(im) + "\n";
  }
  return out;
}

}  // namespace relcalc
