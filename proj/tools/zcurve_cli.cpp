// zcurve: command-line laboratory for the Hardy Z(t) curve.
//
// Subcommands: eval, zeros, extrema, gram, arclen, verify (lemma1..lemma4,
// theorem, trig), sweep, cache.  Exit status: 0 = all invariants held,
// 1 = usage or domain error, 2 = findings (invariant failures or internal
// computation faults).

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "zcurve/critical_points.hpp"
#include "zcurve/io.hpp"
#include "zcurve/lemma_verify.hpp"
#include "zcurve/quadrature.hpp"
#include "zcurve/rs_eval.hpp"
#include "zcurve/window.hpp"

using nlohmann::ordered_json;
using namespace zcurve;

namespace {

struct RunConfig {
  std::string command;  // filled after parse, e.g. "verify lemma3"
  double T = 0.0;
  double H = 0.0;
  double t = 0.0;
  double tau = 0.0;
  double x = kPi / 2.0;
  double y = kPi / 2.0;
  double eps = 0.1;
  double delta = 1.0 / 6.0;
  double mu = 0.1;
  long long nu = 0;
  bool nu_given = false;
  std::string what = "all";
  std::string format;  // resolved per command if left empty
  std::string out;
  int parallel = 1;
  int order = 5;
  std::string deriv_mode = "analytic";
  double fd_step = 1e-5;
  std::optional<double> tol;
  std::string cache_dir;
  bool use_cache = false;
  bool no_timestamp = false;
  bool allow_wide = false;
  std::vector<double> T_list;
  std::string H_rule = "T^0.24";

  EvalOptions eval_options() const {
    EvalOptions o;
    o.rs_correction_order = order;
    o.derivative_mode = derivative_mode_from_string(deriv_mode);
    o.fd_step = fd_step;
    o.validate();
    return o;
  }

  double tol_or(double fallback) const { return tol ? *tol : fallback; }

  std::filesystem::path resolved_cache_dir() const {
    if (!cache_dir.empty()) return cache_dir;
    if (const char* env = std::getenv("ZCURVE_CACHE_DIR"); env && *env)
      return env;
    return "zcache";
  }

  // canonical rendering of every semantic field; the SVG metadata hash
  std::string canonical() const {
    std::string s = command;
    s += "|T=" + fmt17(T) + ";H=" + fmt17(H) + ";t=" + fmt17(t);
    s += ";tau=" + fmt17(tau) + ";x=" + fmt17(x) + ";y=" + fmt17(y);
    s += ";eps=" + fmt17(eps) + ";delta=" + fmt17(delta) + ";mu=" + fmt17(mu);
    s += ";nu=" + std::to_string(nu_given ? nu : 0);
    s += ";what=" + what + ";opts=" + eval_options().describe();
    s += ";tol=" + (tol ? fmt17(*tol) : std::string("default"));
    s += ";allow_wide=" + std::to_string(allow_wide ? 1 : 0);
    s += ";H_rule=" + H_rule + ";T_list=";
    for (double v : T_list) s += fmt17(v) + ",";
    return s;
  }

  std::string config_hash() const { return fmt_hex(fnv1a(canonical())); }
};

double parse_h_rule(const std::string& rule) {
  std::string why = "H-rule must look like T^p with p in (0, 0.25]";
  if (rule.size() < 3 || rule[0] != 'T' || rule[1] != '^')
    throw std::domain_error(why + " (got \"" + rule + "\")");
  double p = 0.0;
  std::size_t used = 0;
  try {
    p = std::stod(rule.substr(2), &used);
  } catch (const std::exception&) {
    throw std::domain_error(why + " (got \"" + rule + "\")");
  }
  if (used != rule.size() - 2 || !(p > 0.0 && p <= 0.25))
    throw std::domain_error(why + " (got \"" + rule + "\")");
  return p;
}

ordered_json findings_json(const std::vector<Finding>& fs) {
  ordered_json arr = ordered_json::array();
  for (const auto& f : fs)
    arr.push_back({{"code", f.code}, {"detail", f.detail}, {"t", f.t}});
  return arr;
}

void emit(const RunConfig& cfg, const std::string& content) {
  write_output(cfg.out, content);
}

void emit_json(const RunConfig& cfg, const ordered_json& j) {
  emit(cfg, j.dump(2) + "\n");
}

int exit_for(const std::vector<Finding>& findings) {
  if (findings.empty()) return 0;
  for (const auto& f : findings)
    std::cerr << "finding: " << f.code << " at t=" << fmt17(f.t) << ": "
              << f.detail << "\n";
  return 2;
}

// Point location shared by `zeros` and `extrema`, with optional persistence.
void locate_points(const RunConfig& cfg, const Window& w,
                   std::vector<ZeroPoint>* zeros,
                   std::vector<ExtremumPoint>* extrema,
                   std::vector<Finding>* findings) {
  const EvalOptions opts = cfg.eval_options();
  const CacheKey key{w.T, w.H, opts.hash()};
  if (cfg.use_cache &&
      cache_load(cfg.resolved_cache_dir(), key, zeros, extrema))
    return;
  *zeros = find_zeros(w, opts, findings, cfg.parallel);
  *extrema = find_extrema(*zeros, opts, findings, cfg.parallel);
  if (cfg.use_cache)
    cache_store(cfg.resolved_cache_dir(), key, *zeros, *extrema);
}

// grid of Z samples for SVG plots
void sample_window(const RunConfig& cfg, const Window& w,
                   std::vector<double>* ts, std::vector<double>* zs) {
  const EvalOptions opts = cfg.eval_options();
  const int n = 800;
  ts->resize(n + 1);
  zs->resize(n + 1);
  for (int i = 0; i <= n; ++i)
    (*ts)[static_cast<std::size_t>(i)] = w.lo() + w.H * i / n;
  parallel_for(static_cast<std::size_t>(n) + 1, cfg.parallel,
               [&](std::size_t i) { (*zs)[i] = z((*ts)[i], opts); });
}

SvgOptions svg_options(const RunConfig& cfg, const std::string& title,
                       const std::string& xl, const std::string& yl) {
  SvgOptions s;
  s.title = title;
  s.x_label = xl;
  s.y_label = yl;
  s.config_hash = cfg.config_hash();
  s.include_timestamp = !cfg.no_timestamp;
  return s;
}

// --- command implementations ---------------------------------------------

int cmd_eval(const RunConfig& cfg) {
  const EvalOptions opts = cfg.eval_options();
  if (cfg.format == "svg") {
    if (!(cfg.H > 0.0))
      throw std::domain_error(
          "eval --format svg plots a window; pass --T and --H");
    Window w{cfg.T, cfg.H};
    w.validate();
    std::vector<double> ts, zs;
    sample_window(cfg, w, &ts, &zs);
    emit(cfg, svg_line_plot(
                  ts, zs, svg_options(cfg, "Z(t)", "t", "Z")));
    return 0;
  }
  const double zv = z(cfg.t, opts);
  const double zp = z_prime(cfg.t, opts);
  if (cfg.format == "json") {
    emit_json(cfg, {{"schema_version", "1"},
                    {"kind", "eval"},
                    {"t", cfg.t},
                    {"z", zv},
                    {"zprime", zp},
                    {"theta", theta(cfg.t)},
                    {"theta1", theta1(cfg.t)}});
    return 0;
  }
  if (cfg.what == "theta") {
    emit(cfg, csv_table({"t", "theta", "theta1"},
                        {{fmt17(cfg.t), fmt17(theta(cfg.t)),
                          fmt17(theta1(cfg.t))}}));
  } else if (cfg.what == "all") {
    emit(cfg, csv_table({"t", "z", "zprime", "theta", "theta1"},
                        {{fmt17(cfg.t), fmt17(zv), fmt17(zp),
                          fmt17(theta(cfg.t)), fmt17(theta1(cfg.t))}}));
  } else {  // z | zprime
    emit(cfg, csv_table({"t", "z", "zprime"},
                        {{fmt17(cfg.t), fmt17(zv), fmt17(zp)}}));
  }
  return 0;
}

int cmd_zeros(const RunConfig& cfg) {
  Window w{cfg.T, cfg.H};
  w.validate();
  std::vector<ZeroPoint> zeros;
  std::vector<ExtremumPoint> extrema;
  std::vector<Finding> findings;
  locate_points(cfg, w, &zeros, &extrema, &findings);
  if (cfg.format == "json") {
    ordered_json pts = ordered_json::array();
    for (const auto& p : zeros)
      pts.push_back(
          {{"t", p.t}, {"index", p.index_hint}, {"residual", p.residual}});
    emit_json(cfg, {{"schema_version", "1"},
                    {"kind", "zeros"},
                    {"window", {{"T", w.T}, {"H", w.H}}},
                    {"count", zeros.size()},
                    {"points", pts},
                    {"findings", findings_json(findings)}});
  } else if (cfg.format == "svg") {
    std::vector<double> ts, zs;
    sample_window(cfg, w, &ts, &zs);
    emit(cfg, svg_line_plot(ts, zs,
                            svg_options(cfg, "Z(t) with located zeros", "t",
                                        "Z")));
  } else {
    std::vector<std::vector<std::string>> rows;
    for (const auto& p : zeros)
      rows.push_back(
          {fmt17(p.t), std::to_string(p.index_hint), fmt17(p.residual)});
    emit(cfg, csv_table({"t", "index", "residual"}, rows));
  }
  return exit_for(findings);
}

int cmd_extrema(const RunConfig& cfg) {
  Window w{cfg.T, cfg.H};
  w.validate();
  std::vector<ZeroPoint> zeros;
  std::vector<ExtremumPoint> extrema;
  std::vector<Finding> findings;
  locate_points(cfg, w, &zeros, &extrema, &findings);
  if (cfg.format == "json") {
    ordered_json pts = ordered_json::array();
    for (const auto& e : extrema)
      pts.push_back({{"t", e.t},
                     {"z_value", e.z_value},
                     {"left_zero", e.left_zero},
                     {"right_zero", e.right_zero}});
    emit_json(cfg, {{"schema_version", "1"},
                    {"kind", "extrema"},
                    {"window", {{"T", w.T}, {"H", w.H}}},
                    {"count", extrema.size()},
                    {"points", pts},
                    {"findings", findings_json(findings)}});
  } else if (cfg.format == "svg") {
    throw std::domain_error("extrema has no svg form; use zeros or eval");
  } else {
    std::vector<std::vector<std::string>> rows;
    for (const auto& e : extrema)
      rows.push_back({fmt17(e.t), fmt17(e.z_value), fmt17(e.left_zero),
                      fmt17(e.right_zero)});
    emit(cfg, csv_table({"t", "z_value", "left_zero", "right_zero"}, rows));
  }
  return exit_for(findings);
}

int cmd_gram(const RunConfig& cfg) {
  if (cfg.nu_given) {
    GramLikePoint p = gram_like(cfg.nu, cfg.tau);
    if (cfg.format == "json")
      emit_json(cfg, {{"schema_version", "1"},
                      {"kind", "gram_point"},
                      {"nu", p.nu},
                      {"tau", p.tau},
                      {"t", p.t}});
    else if (cfg.format == "svg")
      throw std::domain_error("gram has no svg form");
    else
      emit(cfg, csv_table({"nu", "tau", "t"},
                          {{std::to_string(p.nu), fmt17(p.tau), fmt17(p.t)}}));
    return 0;
  }
  Window w{cfg.T, cfg.H};
  w.validate();
  GramCountReport rep = count_gram_like(w, cfg.tau);
  std::vector<GramLikePoint> pts;
  for (long long nu = rep.nu_first; nu <= rep.nu_last; ++nu)
    pts.push_back(gram_like(nu, cfg.tau));
  if (cfg.format == "json") {
    ordered_json arr = ordered_json::array();
    for (const auto& p : pts) arr.push_back({{"nu", p.nu}, {"t", p.t}});
    emit_json(cfg, {{"schema_version", "1"},
                    {"kind", "gram_count"},
                    {"window", {{"T", w.T}, {"H", w.H}}},
                    {"tau", cfg.tau},
                    {"count", rep.count},
                    {"predicted", rep.predicted},
                    {"deviation", rep.deviation},
                    {"nu_first", rep.nu_first},
                    {"nu_last", rep.nu_last},
                    {"points", arr}});
  } else if (cfg.format == "svg") {
    throw std::domain_error("gram has no svg form");
  } else {
    std::vector<std::vector<std::string>> rows;
    for (const auto& p : pts)
      rows.push_back({std::to_string(p.nu), fmt17(p.tau), fmt17(p.t)});
    emit(cfg, csv_table({"nu", "tau", "t"}, rows));
  }
  return 0;
}

int cmd_arclen(const RunConfig& cfg) {
  Window w{cfg.T, cfg.H};
  w.validate();
  QuadratureResult r =
      arc_length(w, cfg.eval_options(), cfg.tol_or(1e-7), cfg.parallel);
  if (cfg.format == "json") {
    emit_json(cfg, {{"schema_version", "1"},
                    {"kind", "arc_length"},
                    {"window", {{"T", w.T}, {"H", w.H}}},
                    {"value", r.value},
                    {"abs_error_estimate", r.abs_error_estimate},
                    {"subdivisions", r.subdivisions},
                    {"kink_points_used", r.kink_points_used}});
  } else if (cfg.format == "svg") {
    throw std::domain_error("arclen has no svg form");
  } else {
    emit(cfg,
         csv_table({"value", "abs_error_estimate", "subdivisions",
                    "kink_points_used"},
                   {{fmt17(r.value), fmt17(r.abs_error_estimate),
                     std::to_string(r.subdivisions),
                     std::to_string(r.kink_points_used)}}));
  }
  return 0;
}

std::vector<std::vector<std::string>> lemma_csv_rows(
    const std::vector<const LemmaReport*>& reports) {
  std::vector<std::vector<std::string>> rows;
  for (const auto* r : reports)
    rows.push_back({to_string(r->lemma_id), r->variant, fmt17(r->lhs),
                    fmt17(r->main_term), fmt17(r->deviation),
                    fmt17(r->normalized_deviation), fmt17(r->ratio),
                    fmt17(r->edge_mass),
                    std::to_string(r->findings.size())});
  return rows;
}

int emit_lemma_reports(const RunConfig& cfg, const std::string& kind,
                       const std::vector<const LemmaReport*>& reports) {
  std::vector<Finding> all;
  for (const auto* r : reports)
    all.insert(all.end(), r->findings.begin(), r->findings.end());
  if (cfg.format == "json") {
    ordered_json arr = ordered_json::array();
    for (const auto* r : reports) arr.push_back(to_json(*r));
    emit_json(cfg, {{"schema_version", "1"},
                    {"kind", kind},
                    {"reports", std::move(arr)}});
  } else if (cfg.format == "svg") {
    throw std::domain_error("verify has no svg form; see sweep --format svg");
  } else {
    emit(cfg, csv_table({"lemma", "variant", "lhs", "main_term", "deviation",
                         "normalized_deviation", "ratio", "edge_mass",
                         "findings"},
                        lemma_csv_rows(reports)));
  }
  return exit_for(all);
}

int cmd_verify_lemma1(const RunConfig& cfg) {
  Window w{cfg.T, cfg.H};
  auto [even, odd] =
      verify_lemma1(w, cfg.tau, cfg.eval_options(), cfg.delta, cfg.parallel);
  auto alt = verify_alternating_sums(w, cfg.tau, cfg.eval_options(), cfg.delta,
                                     cfg.parallel);
  return emit_lemma_reports(cfg, "lemma1", {&even, &odd, &alt});
}

int cmd_verify_lemma2(const RunConfig& cfg) {
  Window w{cfg.T, cfg.H};
  auto [g1, g2] = verify_lemma2(w, cfg.x, cfg.y, cfg.eval_options(), cfg.delta,
                                cfg.tol_or(1e-7), cfg.parallel);
  return emit_lemma_reports(cfg, "lemma2", {&g1, &g2});
}

int cmd_verify_lemma3(const RunConfig& cfg) {
  Window w{cfg.T, cfg.H};
  LemmaReport rep = verify_lemma3(w, cfg.eps, cfg.eval_options(),
                                  cfg.tol_or(1e-7), cfg.parallel);
  return emit_lemma_reports(cfg, "lemma3", {&rep});
}

int cmd_verify_lemma4(const RunConfig& cfg) {
  Window w{cfg.T, cfg.H};
  LemmaReport rep =
      verify_lemma4(w, cfg.eval_options(), cfg.tol_or(1e-9), cfg.parallel);
  return emit_lemma_reports(cfg, "lemma4", {&rep});
}

int cmd_verify_theorem(const RunConfig& cfg) {
  Window w{cfg.T, cfg.H};
  TheoremReport rep = verify_theorem(w, cfg.eval_options(), cfg.allow_wide,
                                     cfg.mu, cfg.tol_or(1e-9), cfg.parallel);
  if (cfg.format == "json") {
    emit_json(cfg, to_json(rep));
  } else if (cfg.format == "svg") {
    throw std::domain_error("verify has no svg form; see sweep --format svg");
  } else {
    std::vector<std::vector<std::string>> rows = {
        {"arc_len", fmt17(rep.arc_len)},
        {"twice_sum_local_max", fmt17(rep.twice_sum_local_max)},
        {"abs_deriv_integral", fmt17(rep.abs_deriv_integral)},
        {"theta", fmt17(rep.theta)},
        {"residual", fmt17(rep.residual)},
        {"edge_mass", fmt17(rep.edge_mass)},
        {"zeros", std::to_string(rep.zero_count)},
        {"extrema", std::to_string(rep.extremum_count)},
        {"gram_like", std::to_string(rep.gram_count)},
        {"ratio_literal", fmt17(rep.ratio_literal)},
        {"ratio_aligned", fmt17(rep.ratio_aligned)},
        {"findings", std::to_string(rep.findings.size())}};
    emit(cfg, csv_table({"key", "value"}, rows));
  }
  return exit_for(rep.findings);
}

int cmd_verify_trig(const RunConfig& cfg) {
  Window w{cfg.T, cfg.H};
  w.validate();
  TrigHypothesisReport rep = check_trig_hypothesis(w, cfg.delta);
  if (cfg.format == "json") {
    ordered_json rows = ordered_json::array();
    for (const auto& r : rep.rows)
      rows.push_back({{"a", r.a}, {"t", r.t}, {"ratio", r.ratio}});
    emit_json(cfg, {{"schema_version", "1"},
                    {"kind", "trig_report"},
                    {"window", {{"T", w.T}, {"H", w.H}}},
                    {"delta", rep.delta},
                    {"max_ratio", rep.max_ratio},
                    {"degenerate", rep.degenerate},
                    {"flag", rep.flag},
                    {"rows", std::move(rows)}});
  } else if (cfg.format == "svg") {
    throw std::domain_error("verify has no svg form; see sweep --format svg");
  } else {
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : rep.rows)
      rows.push_back({std::to_string(r.a), fmt17(r.t), fmt17(r.ratio)});
    emit(cfg, csv_table({"a", "t", "ratio"}, rows));
  }
  return 0;
}

int cmd_sweep(const RunConfig& cfg) {
  const double p = parse_h_rule(cfg.H_rule);
  SweepReport sweep = sweep_theorem(cfg.T_list, p, cfg.eval_options(),
                                    cfg.allow_wide, cfg.tol_or(1e-9),
                                    cfg.parallel);
  std::vector<Finding> all;
  for (const auto& e : sweep.entries)
    all.insert(all.end(), e.report.findings.begin(), e.report.findings.end());
  if (cfg.format == "csv") {
    std::vector<std::vector<std::string>> rows;
    for (const auto& e : sweep.entries)
      rows.push_back({fmt17(e.T), fmt17(e.H), fmt17(e.report.arc_len),
                      fmt17(e.report.twice_sum_local_max),
                      fmt17(e.report.abs_deriv_integral),
                      fmt17(e.report.theta), fmt17(e.report.ratio_literal),
                      fmt17(e.report.ratio_aligned),
                      std::to_string(e.report.findings.size())});
    emit(cfg, csv_table({"T", "H", "arc_len", "twice_sum_local_max",
                         "abs_deriv_integral", "theta", "ratio_literal",
                         "ratio_aligned", "findings"},
                        rows));
  } else if (cfg.format == "svg") {
    std::vector<double> xs, ys;
    for (const auto& e : sweep.entries) {
      xs.push_back(std::log10(e.T));
      ys.push_back(e.report.ratio_literal);
    }
    emit(cfg, svg_line_plot(xs, ys,
                            svg_options(cfg, "arc length ratio vs T",
                                        "log10(T)", "arc/(2 sum |Z|)")));
  } else {
    emit_json(cfg, to_json(sweep));
  }
  return exit_for(all);
}

int cmd_cache(const RunConfig& cfg, const std::string& action) {
  namespace fs = std::filesystem;
  const fs::path dir = cfg.resolved_cache_dir();
  std::vector<std::pair<std::string, std::uintmax_t>> files;
  if (fs::exists(dir))
    for (const auto& entry : fs::directory_iterator(dir)) {
      const std::string name = entry.path().filename().string();
      if (entry.is_regular_file() && name.rfind("zcache_", 0) == 0 &&
          name.size() > 4 && name.substr(name.size() - 4) == ".txt")
        files.emplace_back(name, entry.file_size());
    }
  std::sort(files.begin(), files.end());

  if (action == "list") {
    if (cfg.format == "json") {
      ordered_json arr = ordered_json::array();
      for (const auto& [name, size] : files)
        arr.push_back({{"name", name}, {"bytes", size}});
      emit_json(cfg, {{"schema_version", "1"},
                      {"kind", "cache_list"},
                      {"dir", dir.string()},
                      {"files", std::move(arr)}});
    } else {
      std::vector<std::vector<std::string>> rows;
      for (const auto& [name, size] : files)
        rows.push_back({name, std::to_string(size)});
      emit(cfg, csv_table({"file", "bytes"}, rows));
    }
    return 0;
  }
  if (action == "info") {
    std::uintmax_t total = 0;
    for (const auto& [name, size] : files) total += size;
    if (cfg.format == "json") {
      emit_json(cfg, {{"schema_version", "1"},
                      {"kind", "cache_info"},
                      {"dir", dir.string()},
                      {"files", files.size()},
                      {"total_bytes", total}});
    } else {
      emit(cfg, csv_table({"key", "value"},
                          {{"dir", dir.string()},
                           {"files", std::to_string(files.size())},
                           {"total_bytes", std::to_string(total)}}));
    }
    return 0;
  }
  // clear: remove only our own zcache_*.txt records
  std::size_t removed = 0;
  for (const auto& [name, size] : files) {
    (void)size;
    if (fs::remove(dir / name)) ++removed;
  }
  if (cfg.format == "json")
    emit_json(cfg, {{"schema_version", "1"},
                    {"kind", "cache_clear"},
                    {"dir", dir.string()},
                    {"removed", removed}});
  else
    emit(cfg, csv_table({"key", "value"},
                        {{"removed", std::to_string(removed)}}));
  return 0;
}

void add_common_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--format", cfg.format, "output format: csv|json|svg")
      ->check(CLI::IsMember({"csv", "json", "svg"}));
  cmd->add_option("--out", cfg.out, "output file (default stdout)");
  cmd->add_option("--parallel", cfg.parallel, "worker thread cap")
      ->check(CLI::Range(1, 64));
  cmd->add_option("--order", cfg.order,
                  "Riemann-Siegel correction order (0..5)")
      ->check(CLI::Range(0, 5));
  cmd->add_option("--deriv-mode", cfg.deriv_mode,
                  "Z' mode: analytic|paper_sum|central_difference");
  cmd->add_option("--fd-step", cfg.fd_step, "central-difference step");
  cmd->add_option("--tol", cfg.tol, "quadrature tolerance override");
  cmd->add_flag("--no-timestamp", cfg.no_timestamp,
                "omit the timestamp from SVG metadata");
}

void add_window_options(CLI::App* cmd, RunConfig& cfg, bool required = true) {
  auto* t = cmd->add_option("--T", cfg.T, "window start T (>= 100)");
  auto* h = cmd->add_option("--H", cfg.H, "window length H (> 0)");
  if (required) {
    t->required();
    h->required();
  }
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"numerical laboratory for the Hardy Z(t) curve"};
  app.require_subcommand(1);

  auto* eval = app.add_subcommand("eval", "evaluate Z, Z', theta at a point");
  eval->add_option("--t", cfg.t, "ordinate t (>= 100)");
  eval->add_option("--what", cfg.what, "columns: z|zprime|theta|all")
      ->check(CLI::IsMember({"z", "zprime", "theta", "all"}));
  add_window_options(eval, cfg, false);
  add_common_options(eval, cfg);

  auto* zeros = app.add_subcommand("zeros", "locate zeros of Z in a window");
  add_window_options(zeros, cfg);
  add_common_options(zeros, cfg);
  zeros->add_flag("--use-cache", cfg.use_cache, "read/write the point cache");
  zeros->add_option("--cache-dir", cfg.cache_dir,
                    "cache directory (env ZCURVE_CACHE_DIR)");

  auto* extrema =
      app.add_subcommand("extrema", "locate extrema of Z in a window");
  add_window_options(extrema, cfg);
  add_common_options(extrema, cfg);
  extrema->add_flag("--use-cache", cfg.use_cache, "read/write the point cache");
  extrema->add_option("--cache-dir", cfg.cache_dir,
                      "cache directory (env ZCURVE_CACHE_DIR)");

  auto* gram =
      app.add_subcommand("gram", "Gram-like points h_nu(tau) and counts");
  auto* nu_opt = gram->add_option("--nu", cfg.nu, "single index nu");
  gram->add_option("--tau", cfg.tau, "phase offset in [-pi, pi]");
  add_window_options(gram, cfg, false);
  add_common_options(gram, cfg);

  auto* arclen = app.add_subcommand("arclen", "arc length of the Z-curve");
  add_window_options(arclen, cfg);
  add_common_options(arclen, cfg);

  auto* verify = app.add_subcommand("verify", "lemma/theorem verification");
  verify->require_subcommand(1);
  CLI::App* vsub[6];
  const char* vnames[6] = {"lemma1", "lemma2", "lemma3",
                           "lemma4", "theorem", "trig"};
  const char* vdescs[6] = {
      "Gram-point derivative sums vs main terms",
      "Z' integrals over the G sets vs main terms",
      "lower bound ratio for the |Z'| integral",
      "exact decomposition int|Z'| = 2 sum |Z(t0)| + edge",
      "full arc-length theorem assembly",
      "elementary trig-sum hypothesis diagnostic"};
  for (int i = 0; i < 6; ++i) {
    vsub[i] = verify->add_subcommand(vnames[i], vdescs[i]);
    add_window_options(vsub[i], cfg);
    add_common_options(vsub[i], cfg);
  }
  vsub[0]->add_option("--tau", cfg.tau, "phase offset in [-pi, pi]");
  vsub[0]->add_option("--delta", cfg.delta, "normalization exponent (0,1/6]");
  vsub[1]->add_option("--x", cfg.x, "G1 half-width in (0, pi/2]");
  vsub[1]->add_option("--y", cfg.y, "G2 half-width in (0, pi/2]");
  vsub[1]->add_option("--delta", cfg.delta, "normalization exponent (0,1/6]");
  vsub[2]->add_option("--eps", cfg.eps, "slack in (0, 1/2)");
  vsub[4]->add_flag("--allow-wide", cfg.allow_wide,
                    "permit H above T^(1/4) for diagnostics");
  vsub[4]->add_option("--mu", cfg.mu, "lower exponent: require H >= T^mu");
  vsub[5]->add_option("--delta", cfg.delta, "hypothesis exponent");

  auto* sweep = app.add_subcommand("sweep", "theorem verification over a T list");
  sweep->add_option("--T-list", cfg.T_list, "comma-separated T values")
      ->required()
      ->delimiter(',');
  sweep->add_option("--H-rule", cfg.H_rule, "window rule T^p, p <= 0.25");
  std::string sweep_verify = "theorem";
  sweep->add_option("--verify", sweep_verify, "verification to run (theorem)")
      ->check(CLI::IsMember({"theorem"}));
  sweep->add_flag("--allow-wide", cfg.allow_wide,
                  "permit H above T^(1/4) for diagnostics");
  add_common_options(sweep, cfg);

  auto* cache = app.add_subcommand("cache", "located-point cache maintenance");
  cache->require_subcommand(1);
  auto* cache_list = cache->add_subcommand("list", "list cache records");
  auto* cache_info = cache->add_subcommand("info", "cache directory summary");
  auto* cache_clear = cache->add_subcommand("clear", "delete cache records");
  for (auto* c : {cache_list, cache_info, cache_clear}) {
    c->add_option("--cache-dir", cfg.cache_dir,
                  "cache directory (env ZCURVE_CACHE_DIR)");
    add_common_options(c, cfg);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (app.got_subcommand(eval)) {
      cfg.command = "eval";
      if (cfg.format.empty()) cfg.format = "csv";
      if (eval->count("--t") == 0 && cfg.format != "svg")
        throw std::domain_error("eval requires --t (or --T/--H with svg)");
      return cmd_eval(cfg);
    }
    if (app.got_subcommand(zeros)) {
      cfg.command = "zeros";
      if (cfg.format.empty()) cfg.format = "csv";
      return cmd_zeros(cfg);
    }
    if (app.got_subcommand(extrema)) {
      cfg.command = "extrema";
      if (cfg.format.empty()) cfg.format = "csv";
      return cmd_extrema(cfg);
    }
    if (app.got_subcommand(gram)) {
      cfg.command = "gram";
      cfg.nu_given = nu_opt->count() > 0;
      if (!cfg.nu_given && gram->count("--T") == 0)
        throw std::domain_error("gram requires --nu or a --T/--H window");
      if (cfg.format.empty()) cfg.format = "csv";
      return cmd_gram(cfg);
    }
    if (app.got_subcommand(arclen)) {
      cfg.command = "arclen";
      if (cfg.format.empty()) cfg.format = "csv";
      return cmd_arclen(cfg);
    }
    if (app.got_subcommand(verify)) {
      if (cfg.format.empty()) cfg.format = "json";
      for (int i = 0; i < 6; ++i)
        if (verify->got_subcommand(vsub[i])) {
          cfg.command = std::string("verify ") + vnames[i];
          switch (i) {
            case 0: return cmd_verify_lemma1(cfg);
            case 1: return cmd_verify_lemma2(cfg);
            case 2: return cmd_verify_lemma3(cfg);
            case 3: return cmd_verify_lemma4(cfg);
            case 4: return cmd_verify_theorem(cfg);
            default: return cmd_verify_trig(cfg);
          }
        }
    }
    if (app.got_subcommand(sweep)) {
      cfg.command = "sweep";
      if (cfg.format.empty()) cfg.format = "json";
      return cmd_sweep(cfg);
    }
    if (app.got_subcommand(cache)) {
      cfg.command = "cache";
      if (cfg.format.empty()) cfg.format = "csv";
      if (cache->got_subcommand(cache_list)) return cmd_cache(cfg, "list");
      if (cache->got_subcommand(cache_info)) return cmd_cache(cfg, "info");
      return cmd_cache(cfg, "clear");
    }
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "computation failed: " << e.what() << "\n";
    return 2;
  }
  return 1;  // unreachable with require_subcommand(1)
}
