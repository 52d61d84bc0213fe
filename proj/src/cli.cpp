#include "wpv/cli.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wpv/intersect.hpp"
#include "wpv/kdv.hpp"
#include "wpv/verify.hpp"
#include "wpv/volume.hpp"

namespace wpv::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  int g = 0, n = 1;
  int kappa = 0;
  std::string psi;
  int gmax = 2, nmax = 4, dmax = 3, kmax = 4;
  std::string cache;
  std::string out_path;
  std::string format = "text";
  std::string series_name;
  std::string cache_action;
  double tol = 1e-10;
  int jobs = 1;
  bool normalized = false;
};

std::vector<int> parse_psi(const std::string& text) {
  std::vector<int> out;
  if (text.empty()) throw UsageError("--psi must list at least one exponent (n >= 1)");
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string item = text.substr(pos, comma - pos);
    int v = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size())
      throw UsageError("malformed --psi entry '" + item + "': expected comma-separated nonnegative integers");
    if (v < 0) throw UsageError("--psi entries must be nonnegative, got " + item);
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

std::optional<std::filesystem::path> cache_path(const RunConfig& cfg) {
  if (!cfg.cache.empty()) return std::filesystem::path(cfg.cache);
  if (const char* env = std::getenv("WPV_CACHE"); env && *env) return std::filesystem::path(env);
  return std::nullopt;
}

void maybe_load(intersect::IntersectionEngine& engine, const std::optional<std::filesystem::path>& path) {
  if (path && std::filesystem::exists(*path)) engine.load_cache(*path);
}

void maybe_save(const intersect::IntersectionEngine& engine, const std::optional<std::filesystem::path>& path) {
  if (path) engine.save_cache(*path);
}

std::string float12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string series_latex(const Series& s) {
  if (s.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : s.terms()) {
    const bool neg = c < 0;
    Rational a = neg ? Rational(-c) : c;
    std::string coef = a.get_den() == 1 ? a.get_num().get_str()
                                        : "\\frac{" + a.get_num().get_str() + "}{" + a.get_den().get_str() + "}";
    std::string mono;
    if (m.s) mono += m.s == 1 ? "s" : "s^{" + std::to_string(m.s) + "}";
    for (std::size_t i = 0; i < m.t.size(); ++i) {
      if (!m.t[i]) continue;
      mono += " t_{" + std::to_string(i) + "}";
      if (m.t[i] > 1) mono += "^{" + std::to_string(m.t[i]) + "}";
    }
    if (coef == "1" && !mono.empty()) coef.clear();
    if (out.empty())
      out = neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    out += coef + (coef.empty() || mono.empty() ? "" : " ") + (mono.empty() ? "" : mono.substr(mono[0] == ' '));
  }
  return out;
}

std::string series_json(const std::string& name, const TSeries& s) {
  nlohmann::ordered_json j;
  j["series"] = name;
  j["window"] = {{"gmax", s.window().g_max}, {"nmax", s.window().n_max}};
  auto terms = nlohmann::ordered_json::array();
  for (const auto& [m, c] : s.terms()) terms.push_back({{"s", m.s}, {"t", m.t}, {"coeff", to_string(c)}});
  j["terms"] = terms;
  return j.dump(2);
}

int report(std::ostream& out, const std::vector<verify::CheckRow>& rows) {
  out << "identity\twindow\tstatus\tdetail\n";
  for (const auto& r : rows) out << r.identity << "\t" << r.window << "\t" << (r.ok ? "PASS" : "FAIL") << "\t" << r.detail << "\n";
  const bool ok = verify::all_ok(rows);
  out << (ok ? "all " : "FAILED: ") << rows.size() << " checks" << (ok ? " passed" : "") << "\n";
  return ok ? 0 : 1;
}

int cmd_volume(const RunConfig& cfg, std::ostream& out) {
  volume::VolKey key;
  try {
    key = volume::VolKey(cfg.g, cfg.n);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  volume::VolumeEngine engine;
  EvenPoly p = cfg.normalized ? engine.v_poly(key) : engine.vol_poly(key);
  if (cfg.format == "json")
    out << to_json(p) << "\n";
  else if (cfg.format == "latex")
    out << to_latex(p) << "\n";
  else
    out << to_text(p) << "\n";
  return 0;
}

int cmd_intersect(const RunConfig& cfg, std::ostream& out) {
  intersect::BracketKey key;
  try {
    key = intersect::BracketKey::make(cfg.g, cfg.kappa, parse_psi(cfg.psi));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  intersect::IntersectionEngine engine;
  auto path = cache_path(cfg);
  maybe_load(engine, path);
  out << to_string(engine.bracket(key)) << "\n";
  maybe_save(engine, path);
  return 0;
}

// Every gate-satisfying key with 3g - 3 + n <= dmax, n >= 1.
std::vector<intersect::BracketKey> table_keys(int dmax) {
  std::vector<intersect::BracketKey> keys;
  for (int d = 0; d <= dmax; ++d)
    for (int g = 0; 3 * g - 3 < d; ++g) {
      const int n = d - 3 * g + 3;
      if (n < 1 || 2 * g - 2 + n <= 0) continue;
      for (int k0 = 0; k0 <= d; ++k0) {
        std::vector<int> psi(static_cast<std::size_t>(n), 0);
        std::function<void(int, int, int)> walk = [&](int pos, int cap, int left) {
          if (pos == n) {
            if (left == 0) keys.push_back(intersect::BracketKey::make(g, k0, psi));
            return;
          }
          for (int v = std::min(cap, left); v >= 0; --v) {
            psi[static_cast<std::size_t>(pos)] = v;
            walk(pos + 1, v, left - v);
          }
        };
        walk(0, d - k0, d - k0);
      }
    }
  return keys;
}

int cmd_table(const RunConfig& cfg, std::ostream& out) {
  intersect::IntersectionEngine engine;
  auto path = cache_path(cfg);
  maybe_load(engine, path);
  nlohmann::ordered_json j;
  j["dmax"] = cfg.dmax;
  j["convention"] = intersect::kCacheConvention;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& key : table_keys(cfg.dmax))
    rows.push_back({{"g", key.g}, {"kappa", key.kappa}, {"psi", key.psi}, {"value", to_string(engine.bracket(key))}});
  j["brackets"] = rows;
  maybe_save(engine, path);
  if (cfg.out_path.empty()) {
    out << j.dump(2) << "\n";
  } else {
    std::ofstream f(cfg.out_path);
    if (!f) throw std::runtime_error("cannot write " + cfg.out_path);
    f << j.dump(2) << "\n";
    out << "wrote " << rows.size() << " brackets to " << cfg.out_path << "\n";
  }
  return 0;
}

int cmd_emit(const RunConfig& cfg, std::ostream& out) {
  intersect::IntersectionEngine engine;
  maybe_load(engine, cache_path(cfg));
  const Window w(cfg.gmax, cfg.nmax);
  TSeries s = cfg.series_name == "F" ? kdv::assemble_F(engine, w) : kdv::assemble_G(engine, w);
  if (cfg.format == "json")
    out << series_json(cfg.series_name, s) << "\n";
  else if (cfg.format == "latex")
    out << series_latex(s.series()) << "\n";
  else
    out << to_string(s.series()) << "\n";
  return 0;
}

int cmd_verify_kernel(const RunConfig& cfg, std::ostream& out) {
  const double threshold = 1e-8;
  auto rows = verify::kernel_sweep(cfg.kmax, cfg.tol, threshold, cfg.jobs);
  out << "kind,k,i,j,t,numeric,exact,abs_err,panels_used,status\n";
  bool ok = true;
  for (const auto& r : rows) {
    out << (r.is_double ? "double," : "single,") << (r.is_double ? "" : std::to_string(r.k)) << ","
        << (r.is_double ? std::to_string(r.i) : "") << "," << (r.is_double ? std::to_string(r.j) : "") << ","
        << float12(r.t) << "," << float12(r.numeric) << "," << float12(r.exact) << "," << float12(r.abs_err) << ","
        << r.panels << "," << (r.ok ? "PASS" : "FAIL") << "\n";
    ok = ok && r.ok;
  }
  return ok ? 0 : 1;
}

int cmd_verify(const RunConfig& cfg, const std::string& which, std::ostream& out) {
  if (which == "kernel") return cmd_verify_kernel(cfg, out);
  if (which == "virasoro") return report(out, verify::virasoro_suite(cfg.gmax, cfg.nmax, cfg.kmax));
  intersect::IntersectionEngine engine;
  auto path = cache_path(cfg);
  maybe_load(engine, path);
  int code = 0;
  if (which == "kdv") {
    std::vector<std::string> checked;
    code = report(out, verify::kdv_suite(engine, cfg.gmax, cfg.nmax, &checked));
    out << "checked monomials:";
    for (const auto& m : checked) out << " " << m;
    out << "\n";
  } else {
    volume::VolumeEngine volumes;
    code = report(out, verify::cross_suite(volumes, engine, cfg.dmax, cfg.jobs));
  }
  maybe_save(engine, path);
  return code;
}

int cmd_cache(const RunConfig& cfg, std::ostream& out) {
  auto path = cache_path(cfg);
  if (!path) throw UsageError("cache needs --cache FILE or WPV_CACHE");
  const auto keys = table_keys(cfg.dmax);
  if (cfg.cache_action == "build") {
    intersect::IntersectionEngine engine;
    for (const auto& k : keys) engine.bracket(k);
    engine.save_cache(*path);
    out << "computed " << engine.computed() << " brackets, cached " << engine.cached() << " in " << path->string()
        << "\n";
    return 0;
  }
  // check: reload and compare with a fresh computation
  intersect::IntersectionEngine loaded, fresh;
  const std::size_t count = loaded.load_cache(*path);
  std::size_t mismatches = 0;
  for (const auto& k : keys)
    if (loaded.bracket(k) != fresh.bracket(k)) ++mismatches;
  out << "loaded " << count << " entries; recomputed after load: " << loaded.computed() << "; mismatches: " << mismatches
      << "\n";
  return mismatches == 0 && loaded.computed() == 0 ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weil-Petersson volumes and kappa/psi intersection numbers"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_cache = [&](CLI::App* sub) { sub->add_option("--cache", cfg.cache, "bracket cache file (or WPV_CACHE)"); };
  auto add_window = [&](CLI::App* sub) {
    sub->add_option("--gmax", cfg.gmax, "largest genus")->check(CLI::NonNegativeNumber);
    sub->add_option("--nmax", cfg.nmax, "largest number of insertions")->check(CLI::PositiveNumber);
  };

  auto* vol = app.add_subcommand("volume", "volume polynomial of M_{g,n}(L)");
  vol->add_option("--g", cfg.g, "genus")->required();
  vol->add_option("--n", cfg.n, "number of boundary components")->required();
  vol->add_flag("--normalized", cfg.normalized, "print v_{g,n} instead of Vol_{g,n}");
  vol->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "json", "latex"}));

  auto* ins = app.add_subcommand("intersect", "one intersection number");
  ins->add_option("--g", cfg.g, "genus")->required();
  ins->add_option("--kappa", cfg.kappa, "power of kappa_1")->check(CLI::NonNegativeNumber);
  ins->add_option("--psi", cfg.psi, "comma-separated psi exponents")->required();
  add_cache(ins);

  auto* tab = app.add_subcommand("table", "all intersection numbers with 3g-3+n <= dmax as JSON");
  tab->add_option("--dmax", cfg.dmax)->check(CLI::NonNegativeNumber);
  tab->add_option("--out", cfg.out_path, "output file (stdout if omitted)");
  add_cache(tab);

  auto* emit = app.add_subcommand("emit", "generating function F or G on a window");
  emit->add_option("series", cfg.series_name)->required()->check(CLI::IsMember({"F", "G"}));
  add_window(emit);
  emit->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "json", "latex"}));
  add_cache(emit);

  auto* ver = app.add_subcommand("verify", "identity checks; exit 1 on any failure");
  std::string which;
  ver->add_option("target", which)->required()->check(CLI::IsMember({"kernel", "virasoro", "kdv", "cross"}));
  add_window(ver);
  ver->add_option("--dmax", cfg.dmax)->check(CLI::NonNegativeNumber);
  ver->add_option("--kmax", cfg.kmax)->check(CLI::NonNegativeNumber);
  ver->add_option("--tol", cfg.tol, "quadrature tolerance")->check(CLI::PositiveNumber);
  ver->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
  add_cache(ver);

  auto* cache = app.add_subcommand("cache", "build or check a bracket cache");
  cache->add_option("action", cfg.cache_action)->required()->check(CLI::IsMember({"build", "check"}));
  cache->add_option("--dmax", cfg.dmax)->check(CLI::NonNegativeNumber);
  add_cache(cache);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*vol) return cmd_volume(cfg, out);
    if (*ins) return cmd_intersect(cfg, out);
    if (*tab) return cmd_table(cfg, out);
    if (*emit) return cmd_emit(cfg, out);
    if (*ver) return cmd_verify(cfg, which, out);
    if (*cache) return cmd_cache(cfg, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace wpv::cli
