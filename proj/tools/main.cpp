#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "cantorq/errors.hpp"
#include "cantorq/expand.hpp"
#include "cantorq/format.hpp"
#include "cantorq/jacobi.hpp"
#include "cantorq/oracle.hpp"
#include "cantorq/presets.hpp"
#include "cantorq/tower.hpp"
#include "cantorq/widom.hpp"
#include "cantorq/words.hpp"

namespace {

using namespace cantorq;
using nlohmann::json;

struct RunConfig {
  std::string gamma_inline;
  std::string config_path;
  std::string preset;
  unsigned precision = 0;  // 0 = from config file / default
  std::string format = "csv";
  std::string output_path;

  std::string note;  // preset index-shift note, echoed in headers

  // Builds the spec and pins the process-wide working precision to it.
  GammaSpec resolve_spec() {
    int sources = !gamma_inline.empty() + !config_path.empty() + !preset.empty();
    if (sources != 1)
      throw config_error("exactly one of --gamma, --config, --preset is required");
    auto finish = [&](GammaSpec spec) {
      set_precision_bits(spec.precision_bits());
      return spec;
    };
    unsigned bits = precision ? precision : kDefaultPrecisionBits;
    if (!gamma_inline.empty()) return finish(GammaSpec::parse_inline(gamma_inline, bits));
    if (!preset.empty()) {
      Preset p = load_preset(preset, bits);
      note = p.note;
      return finish(p.spec);
    }
    GammaSpec spec = GammaSpec::from_config_file(config_path);
    if (precision)
      return finish(GammaSpec(spec.prefix(), spec.tail_kind(), spec.tail_values(), precision));
    return finish(spec);
  }
};

class Emitter {
 public:
  Emitter(const RunConfig& rc, const GammaSpec& spec, const std::string& command)
      : json_(rc.format == "json") {
    if (!rc.output_path.empty()) {
      file_.open(rc.output_path);
      if (!file_) throw config_error("cannot open output file '" + rc.output_path + "'");
    }
    if (json_) {
      doc_["command"] = command;
      doc_["spec"] = spec.to_string();
      doc_["precision_bits"] = precision_bits();
      if (!rc.note.empty()) doc_["note"] = rc.note;
    } else {
      out() << "# command: " << command << "\n# spec: " << spec.to_string()
            << "\n# precision_bits: " << precision_bits() << "\n";
      if (!rc.note.empty()) out() << "# note: " << rc.note << "\n";
    }
  }

  std::ostream& out() { return file_.is_open() ? file_ : std::cout; }
  bool is_json() const { return json_; }

  void csv_header(const std::string& header) {
    if (!json_) out() << header << "\n";
  }

  void csv_row(const std::string& row) {
    if (!json_) out() << row << "\n";
  }

  json& doc() { return doc_; }

  void finish() {
    if (json_) out() << doc_.dump(2) << "\n";
  }

 private:
  bool json_;
  std::ofstream file_;
  json doc_;
};

std::string fmt(const real& x) { return decimal_string(x); }
std::string fmt(const LogScalar& v) { return decimal_string(v.value()); }

void cmd_capacity(const RunConfig& rc_in) {
  RunConfig rc = rc_in;
  GammaSpec spec = rc.resolve_spec();
  NormTable nt(spec);
  LogScalar cap = nt.capacity();
  Emitter em(rc, spec, "capacity");
  if (em.is_json()) {
    em.doc()["capacity"] = fmt(cap);
    em.doc()["log2_capacity"] = log2_string(cap);
  } else {
    em.csv_header("capacity,log2_capacity");
    em.csv_row(fmt(cap) + "," + log2_string(cap));
  }
  em.finish();
}

void cmd_intervals(const RunConfig& rc_in, unsigned level) {
  RunConfig rc = rc_in;
  GammaSpec spec = rc.resolve_spec();
  NormTable nt(spec);
  auto intervals = basic_intervals(nt, level);
  Emitter em(rc, spec, "intervals");
  em.csv_header("j,left,right,length");
  json rows = json::array();
  for (const auto& iv : intervals) {
    if (em.is_json())
      rows.push_back({{"j", iv.index},
                      {"left", fmt(iv.left)},
                      {"right", fmt(iv.right)},
                      {"length", fmt(iv.length())}});
    else
      em.csv_row(std::to_string(iv.index) + "," + fmt(iv.left) + "," + fmt(iv.right) + "," +
                 fmt(iv.length()));
  }
  if (em.is_json()) {
    em.doc()["level"] = level;
    em.doc()["intervals"] = std::move(rows);
  }
  em.finish();
}

void cmd_nodes(const RunConfig& rc_in, unsigned level) {
  RunConfig rc = rc_in;
  GammaSpec spec = rc.resolve_spec();
  NormTable nt(spec);
  NodeSet ns = chebyshev_nodes(nt, level);
  Emitter em(rc, spec, "nodes");
  em.csv_header("k,x");
  json rows = json::array();
  for (std::size_t k = 0; k < ns.nodes.size(); ++k) {
    if (em.is_json())
      rows.push_back({{"k", k + 1}, {"x", fmt(ns.nodes[k])}});
    else
      em.csv_row(std::to_string(k + 1) + "," + fmt(ns.nodes[k]));
  }
  if (em.is_json()) {
    em.doc()["level"] = level;
    em.doc()["weight"] = fmt(ns.weight());
    em.doc()["nodes"] = std::move(rows);
  }
  em.finish();
}

void cmd_jacobi(const RunConfig& rc_in, std::size_t N, const std::string& checkpoint) {
  RunConfig rc = rc_in;
  GammaSpec spec = rc.resolve_spec();
  JacobiOptions opt;
  opt.checkpoint_path = checkpoint;
  JacobiTable table = JacobiTable::compute(spec, N, opt);
  Emitter em(rc, spec, "jacobi");
  em.csv_header("n,a_n,log2_a_n");
  json rows = json::array();
  for (std::size_t n = 1; n <= N; ++n) {
    LogScalar a = table.a_log(n);
    if (em.is_json())
      rows.push_back({{"n", n}, {"a", fmt(a)}, {"log2_a", log2_string(a)}});
    else
      em.csv_row(std::to_string(n) + "," + fmt(a) + "," + log2_string(a));
  }
  if (em.is_json()) {
    em.doc()["computed_precision_bits"] = table.precision_bits();
    em.doc()["cancellation_loss_bits"] = table.cancellation_loss_bits();
    em.doc()["a"] = std::move(rows);
  } else {
    em.out() << "# cancellation_loss_bits: " << table.cancellation_loss_bits() << "\n";
  }
  em.finish();
}

void cmd_widom(const RunConfig& rc_in, std::size_t N, bool dyadic, unsigned smax) {
  RunConfig rc = rc_in;
  GammaSpec spec = rc.resolve_spec();
  Emitter em(rc, spec, "widom");
  json rows = json::array();
  if (dyadic) {
    NormTable nt(spec);
    em.csv_header("s,n,W,log2_W");
    for (unsigned s = 0; s <= smax; ++s) {
      LogScalar w = widom_dyadic_closed(nt, s);
      if (em.is_json())
        rows.push_back({{"s", s}, {"n", std::size_t{1} << s}, {"W", fmt(w)},
                        {"log2_W", log2_string(w)}});
      else
        em.csv_row(std::to_string(s) + "," + std::to_string(std::size_t{1} << s) + "," + fmt(w) +
                   "," + log2_string(w));
    }
    if (em.is_json()) em.doc()["dyadic"] = std::move(rows);
  } else {
    JacobiTable table = JacobiTable::compute(spec, N);
    WidomSeries series = WidomSeries::compute(table);
    em.csv_header("n,W,log2_W,is_dyadic");
    for (std::size_t n = 1; n <= N; ++n) {
      LogScalar w = series.W(n);
      bool dy = WidomSeries::is_dyadic(n);
      if (em.is_json())
        rows.push_back(
            {{"n", n}, {"W", fmt(w)}, {"log2_W", log2_string(w)}, {"is_dyadic", dy}});
      else
        em.csv_row(std::to_string(n) + "," + fmt(w) + "," + log2_string(w) + "," +
                   (dy ? "1" : "0"));
    }
    if (em.is_json()) em.doc()["W"] = std::move(rows);
  }
  em.finish();
}

void cmd_qpoly(const RunConfig& rc_in, unsigned long long n) {
  RunConfig rc = rc_in;
  GammaSpec spec = rc.resolve_spec();
  NormTable nt(spec);
  QExpansion e = gram_expand_Q(nt, n);
  Emitter em(rc, spec, "qpoly");
  em.csv_header("basis_degree,coefficient");
  json rows = json::array();
  auto degrees = e.basis_degrees();
  for (std::size_t j = 0; j < degrees.size(); ++j) {
    real c = (j < e.coeffs.size()) ? e.coeffs[j] : real(1);
    if (em.is_json())
      rows.push_back({{"basis_degree", degrees[j]}, {"coefficient", fmt(c)}});
    else
      em.csv_row(std::to_string(degrees[j]) + "," + fmt(c));
  }
  if (em.is_json()) {
    em.doc()["n"] = n;
    em.doc()["s"] = e.s;
    em.doc()["k"] = e.k;
    em.doc()["expansion"] = std::move(rows);
  }
  em.finish();
}

void cmd_moment(const RunConfig& rc_in, const std::string& aword) {
  RunConfig rc = rc_in;
  GammaSpec spec = rc.resolve_spec();
  NormTable nt(spec);
  AWord w = AWord::parse(aword);
  auto v = a_integral_closed(nt, w);
  Emitter em(rc, spec, "moment");
  if (em.is_json()) {
    em.doc()["aword"] = w.to_string();
    em.doc()["is_zero"] = !v.has_value();
    em.doc()["value"] = v ? fmt(*v) : "0";
    if (v) em.doc()["log2_value"] = log2_string(*v);
  } else {
    em.csv_header("aword,value,log2_value,is_zero");
    em.csv_row("\"" + w.to_string() + "\"," + (v ? fmt(*v) : "0") + "," +
               (v ? log2_string(*v) : "") + "," + (v ? "0" : "1"));
  }
  em.finish();
}

void cmd_limits(const RunConfig& rc_in, std::size_t j, std::size_t nn, unsigned smin,
                unsigned smax) {
  RunConfig rc = rc_in;
  GammaSpec spec = rc.resolve_spec();
  std::size_t need = (j << smax) + nn;
  JacobiTable table = JacobiTable::compute(spec, need);
  auto profile = limit_profile(table, j, nn, smin, smax);
  Emitter em(rc, spec, "limits");
  em.csv_header("s,index,a_index,a_limit,deviation");
  json rows = json::array();
  for (const auto& e : profile) {
    if (em.is_json())
      rows.push_back({{"s", e.s},
                      {"index", e.index},
                      {"a_index", fmt(e.a_index)},
                      {"a_limit", fmt(e.a_limit)},
                      {"deviation", fmt(e.deviation)}});
    else
      em.csv_row(std::to_string(e.s) + "," + std::to_string(e.index) + "," + fmt(e.a_index) +
                 "," + fmt(e.a_limit) + "," + fmt(e.deviation));
  }
  if (em.is_json()) em.doc()["profile"] = std::move(rows);
  em.finish();
}

void cmd_check(const RunConfig& rc_in, unsigned level, std::size_t M, const std::string& tol) {
  RunConfig rc = rc_in;
  GammaSpec spec = rc.resolve_spec();
  real tolerance(tol);
  JacobiComparison cmp = compare_jacobi(spec, level, M, tolerance);
  // machine-readable result for CI regardless of --format
  json j;
  j["command"] = "check";
  j["spec"] = spec.to_string();
  j["precision_bits"] = precision_bits();
  j["level"] = cmp.level;
  j["M"] = cmp.M;
  j["tol"] = tol;
  j["max_deviation"] = fmt(cmp.max_deviation);
  j["oracle_cauchy_s_minus_2"] = fmt(cmp.oracle_cauchy);
  j["max_b_offset"] = fmt(cmp.max_b_offset);
  j["pass"] = cmp.pass;
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!rc.output_path.empty()) {
    file.open(rc.output_path);
    if (!file) throw config_error("cannot open output file '" + rc.output_path + "'");
    os = &file;
  }
  *os << j.dump(2) << "\n";
}

void cmd_presets(const RunConfig& rc_in, const std::string& name) {
  if (name.empty()) {
    for (const auto& n : preset_names()) std::cout << n << "\n";
    return;
  }
  unsigned bits = rc_in.precision ? rc_in.precision : kDefaultPrecisionBits;
  Preset p = load_preset(name, bits);
  if (!p.note.empty()) std::cout << "# note: " << p.note << "\n";
  std::cout << p.spec.to_config_text() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orthogonal polynomials, Jacobi parameters and Widom factors for the "
               "weakly equilibrium Cantor sets K(gamma)"};
  app.fallthrough();
  app.require_subcommand(1);

  RunConfig rc;
  app.add_option("--gamma", rc.gamma_inline,
                 "inline gamma spec: const:<v> | periodic:<v,...> | list:<v,...>;tail=...");
  app.add_option("--config", rc.config_path, "JSON config file with prefix/tail/precision_bits");
  app.add_option("--preset", rc.preset, "named gamma sequence (see `presets`)");
  app.add_option("--precision", rc.precision, "working precision in bits [64, 8192]")
      ->check(CLI::Range(64u, 8192u));
  app.add_option("--format", rc.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--output", rc.output_path, "output file (default stdout)");

  unsigned level = 1;
  std::size_t count = 16;
  unsigned long long qn = 1;
  std::string aword, checkpoint, tol = "1e-8", preset_name;
  bool dyadic = false;
  unsigned smax = 8, smin = 1;
  std::size_t jj = 1, nn = 0, m = 16;

  auto* c_capacity = app.add_subcommand("capacity", "logarithmic capacity of K(gamma)");

  auto* c_intervals = app.add_subcommand("intervals", "basic intervals of E_s");
  c_intervals->add_option("--level", level, "level s")->required();

  auto* c_nodes = app.add_subcommand("nodes", "zeros of Q_{2^s} (the nu_s nodes)");
  c_nodes->add_option("--level", level, "level s")->required();

  auto* c_jacobi = app.add_subcommand("jacobi", "Jacobi parameters a_1..a_N");
  c_jacobi->add_option("--n", count, "table length N")->required();
  c_jacobi->add_option("--checkpoint", checkpoint, "checkpoint file for resumable runs");

  auto* c_widom = app.add_subcommand("widom", "Widom factors");
  c_widom->add_option("--n", count, "emit W_1..W_N from the Jacobi table");
  c_widom->add_flag("--dyadic", dyadic, "emit the closed-form W_{2^s} series instead");
  c_widom->add_option("--smax", smax, "top dyadic level for --dyadic");

  auto* c_qpoly = app.add_subcommand("qpoly", "B-basis expansion of Q_n");
  c_qpoly->add_option("--n", qn, "degree n")->required();

  auto* c_moment = app.add_subcommand("moment", "integral of an A-word");
  c_moment->add_option("--aword", aword, "factors as <degree>:<exp>,... e.g. 4:2,2:1")->required();

  auto* c_limits = app.add_subcommand("limits", "profile of a_{j 2^s + n} against a_n");
  c_limits->add_option("--j", jj, "odd multiplier j")->required();
  c_limits->add_option("--nn", nn, "offset n (a_0 := 0)")->required();
  c_limits->add_option("--smax", smax, "top level s")->required();
  c_limits->add_option("--smin", smin, "bottom level s");

  auto* c_check = app.add_subcommand("check", "recursion vs Stieltjes oracle");
  c_check->add_option("--level", level, "oracle level s (uses nu_s and nu_{s-2})")->required();
  c_check->add_option("--m", m, "coefficients to compare (M <= 2^(s-2))")->required();
  c_check->add_option("--tol", tol, "pass threshold");

  auto* c_presets = app.add_subcommand("presets", "list named gamma sequences");
  c_presets->add_option("--name", preset_name, "dump one preset as a config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 3;
  }

  try {
    if (c_capacity->parsed()) cmd_capacity(rc);
    else if (c_intervals->parsed()) cmd_intervals(rc, level);
    else if (c_nodes->parsed()) cmd_nodes(rc, level);
    else if (c_jacobi->parsed()) cmd_jacobi(rc, count, checkpoint);
    else if (c_widom->parsed()) cmd_widom(rc, count, dyadic, smax);
    else if (c_qpoly->parsed()) cmd_qpoly(rc, qn);
    else if (c_moment->parsed()) cmd_moment(rc, aword);
    else if (c_limits->parsed()) cmd_limits(rc, jj, nn, smin, smax);
    else if (c_check->parsed()) cmd_check(rc, level, m, tol);
    else if (c_presets->parsed()) cmd_presets(rc, preset_name);
    return 0;
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 3;
  } catch (const precision_error& e) {
    std::cerr << "precision exhausted: " << e.what() << "\n";
    return 2;
  } catch (const domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
