#include <relcalc/relcalc.h>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitLawFailure = 3;

int exit_code(relcalc_status s) {
  switch (s) {
    case RELCALC_OK: return kExitOk;
    case RELCALC_E_INVALID_ARGUMENT:
    case RELCALC_E_IO:
    case RELCALC_E_UNKNOWN_LAW: return kExitUsage;
    default: return kExitParse;
  }
}

int report_error(relcalc_status s) {
  std::cerr << "relcalc: " << relcalc_status_name(s) << ": " << relcalc_last_error() << "\n";
  return exit_code(s);
}

struct EnvDeleter {
  void operator()(relcalc_env* e) const { relcalc_env_destroy(e); }
};
using EnvPtr = std::unique_ptr<relcalc_env, EnvDeleter>;

struct Text {
  char* p = nullptr;
  ~Text() { relcalc_string_free(p); }
};

relcalc_status load(const std::string& path, EnvPtr& env) {
  relcalc_env* raw = nullptr;
  const relcalc_status s = relcalc_env_load(path.c_str(), &raw);
  env.reset(raw);
  return s;
}

// "n" or "lo..hi".
bool parse_dims(const std::string& s, int& lo, int& hi) {
  const auto dots = s.find("..");
  try {
    size_t used = 0;
    if (dots == std::string::npos) {
      lo = hi = std::stoi(s, &used);
      return used == s.size() && lo >= 1;
    }
    const std::string a = s.substr(0, dots), b = s.substr(dots + 2);
    lo = std::stoi(a, &used);
    if (used != a.size()) return false;
    hi = std::stoi(b, &used);
    return used == b.size() && lo >= 1 && hi >= lo;
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Calculus of linear relations in C^n"};
  app.require_subcommand(1);

  std::string defs, expr, name, format = "text", out_path, law = "all", dims = "2..6";
  size_t samples = 1000, trials = 100;
  std::uint64_t seed = 0, law_seed = 42;
  unsigned threads = 0;
  int dim_only = 0;
  bool list = false;

  auto* eval = app.add_subcommand("eval", "Evaluate statements or an expression");
  eval->add_option("-f,--file", defs, "Definitions file");
  eval->add_option("--dim", dim_only, "Empty environment over C^n (instead of -f)");
  eval->add_option("-e,--expr", expr, "Program text")->required();

  auto* report = app.add_subcommand("report", "Full report on a relation");
  report->add_option("name", name, "Binding name")->required();
  report->add_option("-f,--file", defs, "Definitions file")->required();
  report->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* nrange = app.add_subcommand("nrange", "Sample the numerical range as CSV");
  nrange->add_option("name", name, "Binding name")->required();
  nrange->add_option("-f,--file", defs, "Definitions file")->required();
  nrange->add_option("--samples", samples, "Number of samples");
  nrange->add_option("--seed", seed, "Sampling seed");
  nrange->add_option("-o,--output", out_path, "CSV path (stdout if omitted)");

  auto* laws = app.add_subcommand("laws", "Run the randomized theorem checks");
  laws->add_option("--law", law, "Law id or 'all'");
  laws->add_option("--trials", trials, "Trials per law");
  laws->add_option("--dim", dims, "Dimension n or range lo..hi");
  laws->add_option("--seed", law_seed, "Master seed");
  laws->add_option("--threads", threads, "Worker threads (0: all cores)");
  laws->add_flag("--list", list, "List law ids and exit");

  auto* classify = app.add_subcommand("classify", "Classification flags of a relation");
  classify->add_option("name", name, "Binding name")->required();
  classify->add_option("-f,--file", defs, "Definitions file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Text text;
  EnvPtr env;

  if (eval->parsed()) {
    relcalc_status s;
    if (!defs.empty()) {
      s = load(defs, env);
    } else if (dim_only > 0) {
      relcalc_env* raw = nullptr;
      s = relcalc_env_create(dim_only, &raw);
      env.reset(raw);
    } else {
      std::cerr << "relcalc: eval needs -f <defs> or --dim <n>\n";
      return kExitUsage;
    }
    if (s != RELCALC_OK) return report_error(s);
    s = relcalc_eval(env.get(), expr.c_str(), &text.p);
    if (s != RELCALC_OK) return report_error(s);
    std::cout << text.p;
    return kExitOk;
  }

  if (report->parsed() || classify->parsed() || nrange->parsed()) {
    relcalc_status s = load(defs, env);
    if (s != RELCALC_OK) return report_error(s);
    if (report->parsed()) s = relcalc_report(env.get(), name.c_str(), format == "json", &text.p);
    else if (classify->parsed()) s = relcalc_classify(env.get(), name.c_str(), &text.p);
    else s = relcalc_nrange_csv(env.get(), name.c_str(), samples, seed, &text.p);
    if (s != RELCALC_OK) return report_error(s);
    if (nrange->parsed() && !out_path.empty()) {
      std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
      if (out) out << text.p;
      if (!out) {
        std::cerr << "relcalc: io-error: cannot write " << out_path << "\n";
        return kExitUsage;
      }
      return kExitOk;
    }
    std::cout << text.p;
    return kExitOk;
  }

  if (laws->parsed()) {
    if (list) {
      const relcalc_status s = relcalc_law_list(&text.p);
      if (s != RELCALC_OK) return report_error(s);
      std::cout << text.p;
      return kExitOk;
    }
    int lo = 0, hi = 0;
    if (!parse_dims(dims, lo, hi)) {
      std::cerr << "relcalc: --dim expects n or lo..hi with 1 <= lo <= hi\n";
      return kExitUsage;
    }
    int passed = 0;
    const relcalc_status s = relcalc_laws_run(law.c_str(), trials, lo, hi, law_seed, threads, &text.p, &passed);
    if (s != RELCALC_OK) return report_error(s);
    std::cout << text.p;
    return passed ? kExitOk : kExitLawFailure;
  }
  return kExitUsage;
}
