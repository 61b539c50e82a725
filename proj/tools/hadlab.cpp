// hadlab: command-line front end for the Hadamard complement toolkit.
//
// Exit codes: 0 success (AHP where a verdict is printed), 1 NotAHP or
// singular, 2 bad arguments / parse or index errors, 3 closed form not
// applicable to the requested split.

#include <cmath>
#include <cstdio>
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "hadlab/ahp.hpp"
#include "hadlab/bounds.hpp"
#include "hadlab/complement.hpp"
#include "hadlab/embed.hpp"
#include "hadlab/json_writer.hpp"
#include "hadlab/matcore.hpp"
#include "hadlab/numlin.hpp"
#include "hadlab/scan.hpp"

namespace {

using namespace hadlab;

constexpr int kExitAhp = 0;
constexpr int kExitNotAhp = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInapplicable = 3;

struct CliConfig {
  std::string format = "json";
  double tol_zero = Tolerances{}.zero;
  double tol_ortho = Tolerances{}.ortho;
  double tol_psd = Tolerances{}.psd;
  std::optional<int> max_order;
  std::uint64_t seed = kDefaultSeed;
  std::optional<std::uint64_t> limit;

  Tolerances tolerances() const {
    Tolerances t;
    t.zero = tol_zero;
    t.ortho = tol_ortho;
    t.psd = tol_psd;
    return t;
  }

  int resolved_max_order() const {
    if (max_order) return *max_order;
    if (const char* env = std::getenv("HADLAB_MAX_ORDER")) {
      char* end = nullptr;
      const long v = std::strtol(env, &end, 10);
      if (end == env || *end != '\0') throw Error(ErrorKind::Parse, "HADLAB_MAX_ORDER is not an integer");
      return static_cast<int>(v);
    }
    return kDefaultMaxOrder;
  }

  void validate() const {
    if (!(tol_zero > 0) || !(tol_ortho > 0) || !(tol_psd > 0))
      throw Error(ErrorKind::Domain, "tolerances must be positive");
    if (resolved_max_order() < 4) throw Error(ErrorKind::Domain, "max order must be at least 4");
    if (format != "json" && format != "text") throw Error(ErrorKind::Domain, "format must be text or json");
  }
};

// Text rendering ---------------------------------------------------------------

std::string fmt_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string scalar_text(const Json& j) {
  if (j.is_number_float()) return fmt_number(j.get<double>());
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

bool is_matrix(const Json& j) {
  return j.is_object() && j.size() == 3 && j.contains("rows") && j.contains("cols") && j.contains("data");
}

void render_text(const Json& j, std::ostream& os, int depth) {
  const std::string pad(static_cast<std::size_t>(depth > 0 ? 2 * depth : 0), ' ');
  if (is_matrix(j)) {
    const auto rows = j["rows"].get<int>();
    const auto cols = j["cols"].get<int>();
    for (int i = 0; i < rows; ++i) {
      os << pad;
      for (int k = 0; k < cols; ++k) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%12.6g", j["data"][static_cast<std::size_t>(i * cols + k)].get<double>());
        os << buf;
      }
      os << '\n';
    }
    return;
  }
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_structured() && !(value.is_array() && std::none_of(value.begin(), value.end(),
                                                                      [](const Json& v) { return v.is_structured(); }))) {
        os << pad << key << ":\n";
        render_text(value, os, depth + 1);
      } else {
        os << pad << key << ": ";
        render_text(value, os, -1);
        os << '\n';
      }
    }
    return;
  }
  if (j.is_array()) {
    bool scalar = std::none_of(j.begin(), j.end(), [](const Json& v) { return v.is_structured(); });
    if (scalar) {
      os << '[';
      for (std::size_t k = 0; k < j.size(); ++k) os << (k ? ", " : "") << scalar_text(j[k]);
      os << ']';
      return;
    }
    for (std::size_t k = 0; k < j.size(); ++k) {
      os << pad << "- [" << k << "]\n";
      render_text(j[k], os, depth + 1);
    }
    return;
  }
  os << scalar_text(j);
}

void emit(const Json& j, const CliConfig& cfg) {
  if (cfg.format == "json") {
    std::cout << dump_json(j, 2, 17) << '\n';
  } else {
    render_text(j, std::cout, 0);
  }
}

// Input ------------------------------------------------------------------------

// A path, or a catalog token: "walsh:<n>" or "paley12".
SignMatrix load_matrix(const std::string& source, int max_order) {
  if (source == "paley12") return paley12().body();
  if (source.rfind("walsh:", 0) == 0) {
    std::size_t used = 0;
    const int n = std::stoi(source.substr(6), &used);
    if (used != source.size() - 6) throw Error(ErrorKind::Parse, "bad Walsh exponent in '" + source + "'");
    return walsh(n, max_order).body();
  }
  std::ifstream in(source, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot open '" + source + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  SignMatrix s = parse_sign_matrix(buf.str());
  if (s.rows() > max_order || s.cols() > max_order)
    throw Error(ErrorKind::Resource, "matrix exceeds max order " + std::to_string(max_order));
  return s;
}

HadamardMatrix load_hadamard(const std::string& source, int max_order) {
  return HadamardMatrix(load_matrix(source, max_order));
}

// Commands -------------------------------------------------------------------------

int cmd_construct(const CliConfig& cfg, const std::string& kind, const std::optional<int>& param) {
  const int max_order = cfg.resolved_max_order();
  if (kind == "walsh") {
    if (!param) throw Error(ErrorKind::Domain, "construct walsh needs an exponent");
    std::cout << serialize_sign_matrix(walsh(*param, max_order).body());
  } else if (kind == "paley12") {
    std::cout << serialize_sign_matrix(paley12().body());
  } else if (kind == "kn") {
    if (!param) throw Error(ErrorKind::Domain, "construct kn needs an order");
    if (*param > max_order) throw Error(ErrorKind::Resource, "order exceeds max order");
    emit(to_json(kn_matrix(*param)), cfg);
  } else {
    throw Error(ErrorKind::Domain, "unknown kind '" + kind + "' (walsh, paley12, kn)");
  }
  return 0;
}

int cmd_complement(const CliConfig& cfg, const std::string& source, const std::string& rows,
                   const std::string& cols) {
  const Tolerances tol = cfg.tolerances();
  const HadamardMatrix h = load_hadamard(source, cfg.resolved_max_order());
  const PartitionedHadamard p(h, parse_index_list(rows), parse_index_list(cols));
  const ScanRecord rec = classify_split(h, {p.rows_a(), p.cols_a()}, tol);

  Json out = to_json(rec);
  if (rec.applicability.status == Applicability::Applicable) {
    out["factors"] = to_json(complement_polar(p, tol));
  } else {
    out["factors"] = nullptr;
    const PolarDecomposition oracle = polar(p.d_block().to_real(), tol);
    Json fallback;
    fallback["U"] = to_json(oracle.U);
    fallback["T"] = to_json(oracle.T);
    fallback["unique"] = oracle.unique;
    out["oraclePolar"] = std::move(fallback);
  }
  emit(out, cfg);

  if (rec.applicability.status != Applicability::Applicable) return kExitInapplicable;
  return rec.verdict.status == AhpStatus::AHP ? kExitAhp : kExitNotAhp;
}

int cmd_check_ahp(const CliConfig& cfg, const std::string& source) {
  const Tolerances tol = cfg.tolerances();
  const SignMatrix s = load_matrix(source, cfg.resolved_max_order());
  if (!s.square()) throw Error(ErrorKind::Domain, "check-ahp needs a square matrix");
  const AhpVerdict v = ahp_check(s, tol);
  Json out;
  out["N"] = s.rows();
  out["verdict"] = to_json(v);
  const PolarDecomposition p = polar(s.to_real(), tol);
  out["U"] = p.unique ? to_json(p.U) : Json(nullptr);
  emit(out, cfg);
  return v.status == AhpStatus::AHP ? kExitAhp : kExitNotAhp;
}

int cmd_bounds(const CliConfig& cfg, int r, int n, bool hadamard, const std::string& a_source) {
  std::optional<SignMatrix> a;
  if (!a_source.empty()) a = load_matrix(a_source, cfg.resolved_max_order());
  if (a && (!a->square() || a->rows() != r)) throw Error(ErrorKind::Domain, "--matrix must be r x r");
  if (r < 1 || n < 1) throw Error(ErrorKind::Domain, "--r and --N must be positive");

  BoundReport rep = ahp_thresholds(r, n, a, hadamard);
  if (r <= n - r) {
    const BoundReport b = a ? bound_e_inf(*a, n) : bound_e_inf(r, n, hadamard);
    rep.bound1 = b.bound1;
    rep.bound2 = b.bound2;
    rep.bound3 = b.bound3;
  }
  Json out = to_json(rep);
  const double r2 = static_cast<double>(r) * r;
  out["hadamardCaseRemark"] = rep.a_is_hadamard && r2 < n ? Json(hadamard_case_cubic_remark(r, n)) : Json(nullptr);
  emit(out, cfg);
  return 0;
}

int cmd_scan(const CliConfig& cfg, const std::string& source, int r, unsigned threads) {
  const HadamardMatrix h = load_hadamard(source, cfg.resolved_max_order());
  ScanOptions opt;
  opt.limit = cfg.limit;
  opt.seed = cfg.seed;
  opt.tol = cfg.tolerances();
  opt.threads = threads;
  opt.name = (source == "paley12" || source.rfind("walsh:", 0) == 0) ? source : matrix_fingerprint(h.body());
  emit(to_json(scan(h, r, opt)), cfg);
  return 0;
}

int cmd_embed(const CliConfig& cfg, const std::string& source, bool general) {
  const SignMatrix d = load_matrix(source, cfg.resolved_max_order());
  bool distinct = true;
  if (!general) {
    for (int j = 0; j < d.cols() && distinct; ++j)
      for (int k = j + 1; k < d.cols() && distinct; ++k) {
        bool same = true;
        for (int i = 0; i < d.rows() && same; ++i) same = d(i, j) == d(i, k);
        distinct = !same;
      }
  }
  const Embedding e = (!general && distinct) ? embed_distinct_columns(d, cfg.resolved_max_order())
                                             : embed_general(d, cfg.resolved_max_order());
  Json out = to_json(e);
  out["method"] = (!general && distinct) ? "distinct-columns" : "general";
  out["verified"] = e.verifies(d);
  emit(out, cfg);
  return 0;
}

int cmd_polar(const CliConfig& cfg, const std::string& source) {
  const SignMatrix s = load_matrix(source, cfg.resolved_max_order());
  if (!s.square()) throw Error(ErrorKind::Domain, "polar needs a square matrix");
  const PolarDecomposition p = polar(s.to_real(), cfg.tolerances());
  Json out;
  out["U"] = to_json(p.U);
  out["T"] = to_json(p.T);
  out["residual"] = p.residual;
  out["sigmaMin"] = p.sigma_min;
  out["sigmaMax"] = p.sigma_max;
  out["unique"] = p.unique;
  emit(out, cfg);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Complement theory toolkit for submatrices of Hadamard matrices"};
  app.require_subcommand(1);
  app.fallthrough();

  CliConfig cfg;
  app.add_option("--format", cfg.format, "Output format: text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--tol-zero", cfg.tol_zero, "Zero tolerance for polar entries");
  app.add_option("--tol-ortho", cfg.tol_ortho, "Orthogonality tolerance");
  app.add_option("--tol-psd", cfg.tol_psd, "PSD tolerance");
  app.add_option("--seed", cfg.seed, "Sampling seed");
  app.add_option("--limit", cfg.limit, "Sample this many splits instead of enumerating all");
  app.add_option("--max-order", cfg.max_order, "Maximum matrix order (env HADLAB_MAX_ORDER)");

  std::string kind, source, rows, cols, a_source;
  std::optional<int> param;
  int r = 0, n = 0;
  bool hadamard = false, general = false;
  unsigned threads = 1;

  auto* construct = app.add_subcommand("construct", "Print a catalog matrix (walsh <n> | paley12 | kn <N>)");
  construct->add_option("kind", kind)->required();
  construct->add_option("param", param);

  auto* complement = app.add_subcommand("complement", "Closed-form polar decomposition of the complement of a split");
  complement->add_option("matrix", source, "Sign-matrix file, walsh:<n> or paley12")->required();
  complement->add_option("--rows", rows, "1-based rows of A, comma separated")->required();
  complement->add_option("--cols", cols, "1-based columns of A, comma separated")->required();

  auto* check_ahp = app.add_subcommand("check-ahp", "Almost Hadamard sign pattern test");
  check_ahp->add_option("matrix", source)->required();

  auto* bounds = app.add_subcommand("bounds", "||E||_inf bounds and AHP thresholds");
  bounds->add_option("--r", r)->required();
  bounds->add_option("--N", n)->required();
  bounds->add_flag("--hadamard", hadamard, "Treat A as Hadamard");
  bounds->add_option("--matrix", a_source, "Concrete r x r block A");

  auto* scan_cmd = app.add_subcommand("scan", "Classify every r x r split");
  scan_cmd->add_option("matrix", source)->required();
  scan_cmd->add_option("--r", r)->required();
  scan_cmd->add_option("--threads", threads, "Worker threads")->default_val(1);

  auto* embed = app.add_subcommand("embed", "Embed a sign matrix into a Walsh matrix");
  embed->add_option("matrix", source)->required();
  embed->add_flag("--general", general, "Always use the repeated-column construction");

  auto* polar_cmd = app.add_subcommand("polar", "Polar decomposition of a sign matrix");
  polar_cmd->add_option("matrix", source)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    cfg.validate();
    if (construct->parsed()) return cmd_construct(cfg, kind, param);
    if (complement->parsed()) return cmd_complement(cfg, source, rows, cols);
    if (check_ahp->parsed()) return cmd_check_ahp(cfg, source);
    if (bounds->parsed()) return cmd_bounds(cfg, r, n, hadamard, a_source);
    if (scan_cmd->parsed()) return cmd_scan(cfg, source, r, threads);
    if (embed->parsed()) return cmd_embed(cfg, source, general);
    if (polar_cmd->parsed()) return cmd_polar(cfg, source);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
