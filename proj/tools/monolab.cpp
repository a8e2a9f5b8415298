// monolab: lattice monopole-equation workbench command line.
//
//   monolab verify <clifford|lattice|weitzenbock|gradient|gauge|kahler|reduce3d>
//   monolab solve
//   monolab topology <input.json>
//
// Configuration comes from an optional ini-style file (key = value lines,
// [section] headers namespace keys for readability only) overridden by
// flags; flags win. Every command writes a run manifest. Exit codes:
// 0 success, 1 check failure, 2 usage/config error, 3 runtime failure.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "monolab/functional.hpp"
#include "monolab/kahler.hpp"
#include "monolab/operators.hpp"
#include "monolab/reduction3d.hpp"
#include "monolab/snapshot.hpp"
#include "monolab/topology.hpp"

using namespace monolab;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "monolab 0.1.0";

struct RunConfig {
  std::vector<int> sizes{8, 8, 8, 8};
  std::vector<double> spacings;  // defaults to 1/N per direction
  std::vector<int> flux;         // upper-triangle entries, row-major
  double kappa = 0.0;
  double eta_amplitude = 0.0;
  double amplitude = 0.3;
  std::uint64_t seed = 1;
  double tol = 1e-8;
  int max_iters = 10000;
  int threads = 1;
  std::string out_dir = "monolab_out";
  bool dry_run = false;
  std::vector<int> study_sizes{8, 16, 32};

  json to_json() const {
    json j;
    j["sizes"] = sizes;
    j["spacings"] = resolved_spacings();
    j["flux"] = flux;
    j["kappa"] = kappa;
    j["eta_amplitude"] = eta_amplitude;
    j["amplitude"] = amplitude;
    j["seed"] = seed;
    j["tol"] = tol;
    j["max_iters"] = max_iters;
    j["threads"] = threads;
    j["out"] = out_dir;
    j["study_sizes"] = study_sizes;
    return j;
  }

  std::vector<double> resolved_spacings() const {
    if (!spacings.empty()) return spacings;
    std::vector<double> sp;
    for (int n : sizes) sp.push_back(1.0 / n);
    return sp;
  }
};

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// ini-style config: key = value with optional [section] headers
std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open config file " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(is, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';' || t[0] == '[') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw Error("bad config line: " + line);
    kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  return kv;
}

// applies file values only for keys whose flag was not given; flags win
void apply_config_file(RunConfig& cfg, const std::string& path,
                       const std::map<std::string, bool>& flag_given) {
  const auto kv = read_config_file(path);
  auto get = [&](const char* key) -> const std::string* {
    const auto fg = flag_given.find(key);
    if (fg != flag_given.end() && fg->second) return nullptr;
    const auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };
  if (const auto* v = get("size")) cfg.sizes = parse_int_list(*v);
  if (const auto* v = get("spacing")) cfg.spacings = parse_double_list(*v);
  if (const auto* v = get("flux")) cfg.flux = parse_int_list(*v);
  if (const auto* v = get("kappa")) cfg.kappa = std::stod(*v);
  if (const auto* v = get("eta-amplitude")) cfg.eta_amplitude = std::stod(*v);
  if (const auto* v = get("amplitude")) cfg.amplitude = std::stod(*v);
  if (const auto* v = get("seed")) cfg.seed = std::stoull(*v);
  if (const auto* v = get("tol")) cfg.tol = std::stod(*v);
  if (const auto* v = get("max-iters")) cfg.max_iters = std::stoi(*v);
  if (const auto* v = get("threads")) cfg.threads = std::stoi(*v);
  if (const auto* v = get("out")) cfg.out_dir = *v;
  if (const auto* v = get("sizes")) cfg.study_sizes = parse_int_list(*v);
}

std::array<std::array<int, 4>, 4> flux_matrix(const RunConfig& cfg, int dim) {
  std::array<std::array<int, 4>, 4> m{};
  const int npairs = dim * (dim - 1) / 2;
  if (!cfg.flux.empty() && static_cast<int>(cfg.flux.size()) != npairs)
    throw Error("flux wants " + std::to_string(npairs) + " entries for dim " +
                std::to_string(dim));
  int p = 0;
  for (int u = 0; u < dim; ++u)
    for (int v = u + 1; v < dim; ++v) {
      const int muv = cfg.flux.empty() ? 0 : cfg.flux[static_cast<std::size_t>(p)];
      m[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = muv;
      m[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = -muv;
      ++p;
    }
  return m;
}

struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct CheckList {
  std::vector<Check> checks;

  void add(const std::string& name, double value, double tol, bool less_than = true) {
    Check c;
    c.name = name;
    c.value = value;
    c.tolerance = tol;
    c.passed = less_than ? (value <= tol) : (value >= tol);
    checks.push_back(c);
  }

  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }

  json to_json() const {
    json arr = json::array();
    for (const auto& c : checks) {
      json j;
      j["name"] = c.name;
      j["value"] = c.value;
      j["tolerance"] = c.tolerance;
      j["passed"] = c.passed;
      arr.push_back(j);
    }
    return arr;
  }

  void print() const {
    for (const auto& c : checks)
      std::printf("[%s] %s  value=%.3e  tol=%.3e\n", c.passed ? "PASS" : "FAIL",
                  c.name.c_str(), c.value, c.tolerance);
  }
};

struct Lattice4 {
  std::shared_ptr<TorusLattice> lat;
  std::shared_ptr<FluxBackground> bg;
};

Lattice4 build4(const RunConfig& cfg) {
  if (cfg.sizes.size() != 4) throw Error("this command needs a 4-d lattice (--size N,N,N,N)");
  Lattice4 out;
  out.lat = std::make_shared<TorusLattice>(make_lattice(4, cfg.sizes, cfg.resolved_spacings()));
  out.bg = std::make_shared<FluxBackground>(flux_background(*out.lat, flux_matrix(cfg, 4)));
  return out;
}

GaugeMap random_gauge(const TorusLattice& lat, std::mt19937_64& rng, bool winding) {
  GaugeMap g = make_gauge_map(lat);
  std::normal_distribution<double> gd(0.0, 1.0);
  for (double& x : g.f.v) x = gd(rng);
  if (winding) {
    std::uniform_int_distribution<int> wd(-2, 2);
    for (int u = 0; u < lat.dim; ++u) g.winding[static_cast<std::size_t>(u)] = wd(rng);
  }
  return g;
}

// ----------------------------------------------------------------- suites

CheckList verify_clifford(const RunConfig& cfg) {
  CheckList cl;
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gd(0.0, 1.0);

  for (int dim : {3, 4}) {
    const GammaRep rep = build_gamma_rep(dim);
    double worst = 0.0;
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        CMat anti = rep.generators[static_cast<std::size_t>(i)] * rep.generators[static_cast<std::size_t>(j)] +
                    rep.generators[static_cast<std::size_t>(j)] * rep.generators[static_cast<std::size_t>(i)];
        if (i == j)
          for (int r = 0; r < rep.fiber; ++r) anti.at(r, r) += 2.0;
        for (int r = 0; r < rep.fiber; ++r)
          for (int c = 0; c < rep.fiber; ++c) worst = std::max(worst, std::abs(anti.at(r, c)));
      }
    cl.add("anticommutators_d" + std::to_string(dim), worst, 0.0);
  }

  const GammaRep rep = build_gamma_rep(4);
  double worst_real = 0.0, worst_sum = 0.0, worst_quad = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::array<cplx, 2> p{cplx{gd(rng), gd(rng)}, cplx{gd(rng), gd(rng)}};
    const std::array<cplx, 4> full{p[0], p[1], cplx{}, cplx{}};
    double sum = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        const auto eev = mat_apply(rep.generators[static_cast<std::size_t>(i)] * rep.generators[static_cast<std::size_t>(j)], full);
        cplx pair{};
        for (int k = 0; k < 4; ++k) pair += eev[static_cast<std::size_t>(k)] * std::conj(full[static_cast<std::size_t>(k)]);
        worst_real = std::max(worst_real, std::fabs(std::real(pair)));
        sum += std::norm(pair);
      }
    const double n2 = norm2(p);
    worst_sum = std::max(worst_sum, std::fabs(sum - 2.0 * n2 * n2) / std::max(1.0, 2.0 * n2 * n2));
    // rho(q(psi)) psi = (i/2)|psi|^2 psi
    const auto q = quadratic_form(rep, p);
    const auto rq = two_form_action(rep, q, p);
    const cplx closed = cplx{0.0, 0.5} * n2;
    worst_quad = std::max(worst_quad, std::abs(rq[0] - closed * p[0]) + std::abs(rq[1] - closed * p[1]));
  }
  cl.add("pairing_real_part", worst_real, 1e-13);
  cl.add("pairing_norm_sum_rel", worst_sum, 1e-12);
  cl.add("traceless_quadratic_action", worst_quad, 1e-12);

  const std::array<std::array<double, 6>, 3> asd = {{{1, 0, 0, 0, 0, -1}, {0, 1, 0, 0, 1, 0}, {0, 0, 1, -1, 0, 0}}};
  double worst_asd = 0.0;
  for (const auto& w : asd)
    for (int trial = 0; trial < 10; ++trial) {
      const std::array<cplx, 2> p{cplx{gd(rng), gd(rng)}, cplx{gd(rng), gd(rng)}};
      const auto r = two_form_action(rep, w, p);
      worst_asd = std::max(worst_asd, std::abs(r[0]) + std::abs(r[1]));
    }
  cl.add("asd_action_norm", worst_asd, 1e-13);
  return cl;
}

CheckList verify_lattice(const RunConfig& cfg) {
  CheckList cl;
  RunConfig c4 = cfg;
  if (c4.sizes.size() != 4) c4.sizes = {8, 8, 8, 8};
  c4.flux.clear();
  Lattice4 l4 = build4(c4);
  const TorusLattice& lat = *l4.lat;
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gd(0.0, 1.0);

  double worst_dd = 0.0, worst_adj = 0.0;
  for (int k = 0; k + 2 <= 4; ++k) {
    Cochain c = make_cochain(lat, k);
    for (double& x : c.v) x = gd(rng);
    const Cochain ddc = d(lat, d(lat, c));
    for (double x : ddc.v) worst_dd = std::max(worst_dd, std::fabs(x));
  }
  for (int k = 0; k + 1 <= 4; ++k) {
    Cochain x = make_cochain(lat, k);
    Cochain y = make_cochain(lat, k + 1);
    for (double& v : x.v) v = gd(rng);
    for (double& v : y.v) v = gd(rng);
    const double lhs = inner(lat, d(lat, x), y);
    const double rhs = inner(lat, x, d_star(lat, y));
    worst_adj = std::max(worst_adj, std::fabs(lhs - rhs) / (1.0 + std::fabs(lhs)));
  }
  cl.add("dd_zero", worst_dd, 1e-12);
  cl.add("adjointness_rel", worst_adj, 1e-12);

  double worst_star = 0.0;
  for (int k = 0; k <= 4; ++k) {
    Cochain c = make_cochain(lat, k);
    for (double& x : c.v) x = gd(rng);
    const Cochain ss = hodge_star(lat, hodge_star(lat, c));
    const double sign = (k * (4 - k)) % 2 == 0 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < c.v.size(); ++i)
      worst_star = std::max(worst_star, std::fabs(ss.v[i] - sign * c.v[i]));
  }
  cl.add("star_sign_law", worst_star, 0.0);

  double worst_flux = 0.0;
  std::uniform_int_distribution<int> dm(-3, 3);
  for (int trial = 0; trial < 16; ++trial) {
    std::array<std::array<int, 4>, 4> m{};
    for (int u = 0; u < 4; ++u)
      for (int v = u + 1; v < 4; ++v) {
        m[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = dm(rng);
        m[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = -m[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
      }
    const FluxBackground bg = flux_background(lat, m);
    int base[4] = {trial % lat.sizes[0], (trial * 3) % lat.sizes[1], 0, 1};
    for (int u = 0; u < 4; ++u)
      for (int v = u + 1; v < 4; ++v) {
        const double flux = plaquette_flux_sum(lat, bg.F0, u, v, base);
        worst_flux = std::max(worst_flux,
                              std::fabs(flux - 2.0 * kPi * m[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]));
      }
  }
  cl.add("flux_quantization", worst_flux, 1e-12);
  return cl;
}

CheckList verify_weitzenbock(const RunConfig& cfg, json* extra) {
  CheckList cl;
  std::vector<double> residuals;
  for (int N : cfg.study_sizes) {
    RunConfig c = cfg;
    c.sizes = {N, N, N, N};
    c.spacings = {1.0 / N, 1.0 / N, 1.0 / N, 1.0 / N};
    c.flux.clear();
    Lattice4 l4 = build4(c);
    const Config conf = random_config(l4.lat, l4.bg, cfg.seed, 0.4);
    const WeitzenbockReport r = weitzenbock_residual(conf);
    residuals.push_back(r.value);
  }
  json orders = json::array();
  bool decreasing = true;
  double min_order = 1e9, final_order = 0.0;
  for (std::size_t i = 1; i < residuals.size(); ++i) {
    if (residuals[i] >= residuals[i - 1]) decreasing = false;
    const double order = std::log2(residuals[i - 1] / residuals[i]);
    orders.push_back(order);
    min_order = std::min(min_order, order);
    final_order = order;
  }
  if (extra != nullptr) {
    (*extra)["residuals"] = residuals;
    (*extra)["orders"] = orders;
  }
  cl.add("residual_decreasing", decreasing ? 1.0 : 0.0, 1.0, false);
  cl.add("orders_min", min_order, 1.5, false);
  cl.add("order_finest_pair", final_order, 1.9, false);
  return cl;
}

CheckList verify_gradient(const RunConfig& cfg, int nconfigs = 5, int ndirs = 20) {
  CheckList cl;
  Lattice4 l4 = build4(cfg);
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gd(0.0, 1.0);
  double worst = 0.0;
  for (int ci = 0; ci < nconfigs; ++ci) {
    const Config c = random_config(l4.lat, l4.bg, cfg.seed + static_cast<unsigned>(ci), 0.5);
    FunctionalParams p;
    p.kappa = cfg.kappa;
    if (cfg.eta_amplitude > 0.0)
      p.eta = harmonic_selfdual(*l4.lat, cfg.eta_amplitude, cfg.seed);
    const TangentPair g = gradient(c, p);
    const double gn = std::sqrt(tangent_norm2(*l4.lat, g));
    for (int t = 0; t < ndirs; ++t) {
      TangentPair dir = make_tangent(*l4.lat);
      for (double& x : dir.alpha.v) x = gd(rng);
      for (cplx& z : dir.phi.v) z = cplx{gd(rng), gd(rng)};
      const double sc = std::sqrt(tangent_norm2(*l4.lat, dir));
      for (double& x : dir.alpha.v) x /= sc;
      for (cplx& z : dir.phi.v) z /= sc;
      auto shifted = [&](double s) {
        Config cs = c;
        for (std::size_t i = 0; i < cs.a.v.size(); ++i) cs.a.v[i] += s * dir.alpha.v[i];
        for (std::size_t i = 0; i < cs.psi.v.size(); ++i) cs.psi.v[i] += s * dir.phi.v[i];
        return action(cs, p);
      };
      const double eps = 0.02;
      const double fd = (shifted(-2 * eps) - 8 * shifted(-eps) + 8 * shifted(eps) - shifted(2 * eps)) / (12 * eps);
      const double an = tangent_inner(*l4.lat, g, dir);
      worst = std::max(worst, std::fabs(fd - an) / std::max(std::fabs(an), 1e-3 * gn));
    }
  }
  cl.add("gradient_fd_rel", worst, 1e-6);
  return cl;
}

CheckList verify_gauge(const RunConfig& cfg, int nmaps = 50) {
  CheckList cl;
  RunConfig c4 = cfg;
  if (c4.flux.empty()) c4.flux = {1, 0, 0, 0, 0, -1};
  Lattice4 l4 = build4(c4);
  std::mt19937_64 rng(cfg.seed);
  const Config c = random_config(l4.lat, l4.bg, cfg.seed, 0.7);
  FunctionalParams praw, pwb;
  praw.form = ActionForm::raw;
  pwb.form = ActionForm::weitzenbock;
  pwb.kappa = cfg.kappa;
  const double sraw = action(c, praw);
  const double swb = action(c, pwb);
  const SWResidual r = sw_residual(c);
  const double nd = norm2(*l4.lat, r.dirac);
  const double nc = norm2(*l4.lat, r.curv);

  double worst = 0.0;
  for (int t = 0; t < nmaps; ++t) {
    const GaugeMap g = random_gauge(*l4.lat, rng, t % 2 == 1);
    const Config cg = gauge_act(g, c);
    worst = std::max(worst, std::fabs(action(cg, praw) - sraw) / (1.0 + std::fabs(sraw)));
    worst = std::max(worst, std::fabs(action(cg, pwb) - swb) / (1.0 + std::fabs(swb)));
    const SWResidual rg = sw_residual(cg);
    worst = std::max(worst, std::fabs(norm2(*l4.lat, rg.dirac) - nd) / (1.0 + nd));
    worst = std::max(worst, std::fabs(norm2(*l4.lat, rg.curv) - nc) / (1.0 + nc));
  }
  cl.add("gauge_invariance_rel", worst, 1e-11);
  return cl;
}

CheckList verify_kahler(const RunConfig& cfg, int nconfigs = 100) {
  CheckList cl;
  RunConfig c4 = cfg;
  if (c4.flux.empty()) c4.flux = {2, 0, 0, 0, 0, 2};
  Lattice4 l4 = build4(c4);
  const KahlerStructure ks = kahler_structure(*l4.lat);
  double worst_dirac = 0.0, worst_total = 0.0;
  for (int t = 0; t < nconfigs; ++t) {
    const Config c = random_config(l4.lat, l4.bg, cfg.seed + static_cast<unsigned>(t), 0.8);
    const SpinorField dol = dolbeault_dirac(ks, c);
    const SpinorField dir = dirac_plus(c);
    double num = 0.0;
    for (std::size_t i = 0; i < dol.v.size(); ++i) num += std::norm(dol.v[i] - dir.v[i]);
    worst_dirac = std::max(worst_dirac, std::sqrt(l4.lat->cell_volume * num / norm2(*l4.lat, c.psi)));
    const KSWResidual kr = ksw_residual(ks, c);
    const SWResidual r = sw_residual(c);
    const double curv = std::sqrt(norm2(*l4.lat, r.curv));
    worst_total = std::max(worst_total, std::fabs(kr.total - curv) / (1.0 + curv));
  }
  cl.add("dolbeault_vs_dirac_rel", worst_dirac, 1e-10);
  cl.add("ksw_total_vs_curv_rel", worst_total, 1e-10);
  return cl;
}

CheckList verify_reduce3d(const RunConfig& cfg) {
  CheckList cl;
  std::vector<int> sizes = cfg.sizes.size() == 3 ? cfg.sizes : std::vector<int>{8, 8, 8};
  std::vector<double> spac;
  for (int n : sizes) spac.push_back(1.0 / n);
  auto lat = std::make_shared<TorusLattice>(make_lattice(3, sizes, spac));
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gd(0.0, 1.0);

  // flow_rhs = -grad csd by finite differences
  double worst_fd = 0.0;
  {
    std::array<std::array<int, 4>, 4> m{};
    m[0][1] = 1; m[1][0] = -1;
    auto bg = std::make_shared<FluxBackground>(flux_background(*lat, m));
    const Config3 c = random_config(lat, bg, cfg.seed, 0.6, 1.0);
    const TangentPair rhs = flow_rhs(c);
    for (int t = 0; t < 10; ++t) {
      TangentPair dir = make_tangent(*lat);
      for (double& x : dir.alpha.v) x = gd(rng);
      for (cplx& z : dir.phi.v) z = cplx{gd(rng), gd(rng)};
      const double sc = std::sqrt(tangent_norm2(*lat, dir));
      for (double& x : dir.alpha.v) x /= sc;
      for (cplx& z : dir.phi.v) z /= sc;
      auto shifted = [&](double s) {
        Config3 cs = c;
        for (std::size_t i = 0; i < cs.a.v.size(); ++i) cs.a.v[i] += s * dir.alpha.v[i];
        for (std::size_t i = 0; i < cs.psi.v.size(); ++i) cs.psi.v[i] += s * dir.phi.v[i];
        return csd(cs).value;
      };
      const double eps = 0.02;
      const double fd = (shifted(-2 * eps) - 8 * shifted(-eps) + 8 * shifted(eps) - shifted(2 * eps)) / (12 * eps);
      const double an = -tangent_inner(*lat, rhs, dir);
      worst_fd = std::max(worst_fd, std::fabs(fd - an) / std::max(1.0, std::fabs(an)));
    }
  }
  cl.add("csd_gradient_fd_rel", worst_fd, 1e-6);

  // measured csd shift = 4 pi^2 pairing for all |m|, |w| <= 2
  double worst_shift = 0.0;
  for (int m01 = -2; m01 <= 2; ++m01)
    for (int m02 = -2; m02 <= 2; ++m02)
      for (int m12 = -2; m12 <= 2; ++m12) {
        std::array<std::array<int, 4>, 4> m{};
        m[0][1] = m01; m[1][0] = -m01;
        m[0][2] = m02; m[2][0] = -m02;
        m[1][2] = m12; m[2][1] = -m12;
        auto bg = std::make_shared<FluxBackground>(flux_background(*lat, m));
        const Config3 c = random_config(lat, bg, cfg.seed + 7, 0.4, 1.0);
        const double base = csd(c).value;
        GaugeMap g = make_gauge_map(*lat);
        for (int w0 = -2; w0 <= 2; ++w0)
          for (int w1 = -2; w1 <= 2; ++w1)
            for (int w2 = -2; w2 <= 2; ++w2) {
              g.winding = {w0, w1, w2, 0};
              const double measured = csd(gauge_act(g, c)).value - base;
              const double predicted = gauge_shift_predicted(m, g.winding);
              worst_shift = std::max(worst_shift, std::fabs(measured - predicted) /
                                                      std::max(1.0, std::fabs(predicted)));
            }
      }
  cl.add("csd_winding_shift_rel", worst_shift, 1e-8);
  return cl;
}

// ----------------------------------------------------------------- output

json manifest_base(const std::string& command, const RunConfig& cfg) {
  json j;
  j["command"] = command;
  j["config"] = cfg.to_json();
  j["seed"] = cfg.seed;
  j["version"] = kVersion;
  return j;
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream os(path);
  if (!os) throw Error("cannot write " + path.string());
  os << j.dump(2) << "\n";
}

int finish_manifest(json manifest, const RunConfig& cfg,
                    const std::vector<std::string>& outputs, bool passed,
                    std::chrono::steady_clock::time_point start) {
  const auto wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
  manifest["wall_time_seconds"] = wall.count();
  manifest["outputs"] = outputs;
  manifest["passed"] = passed;
  std::filesystem::create_directories(cfg.out_dir);
  write_json(std::filesystem::path(cfg.out_dir) / "manifest.json", manifest);
  return passed ? 0 : 1;
}

int run_verify(const std::string& suite, const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  json manifest = manifest_base("verify " + suite, cfg);
  if (cfg.dry_run) {
    manifest["dry_run"] = true;
    return finish_manifest(manifest, cfg, {}, true, start);
  }
  CheckList cl;
  json extra;
  if (suite == "clifford") cl = verify_clifford(cfg);
  else if (suite == "lattice") cl = verify_lattice(cfg);
  else if (suite == "weitzenbock") cl = verify_weitzenbock(cfg, &extra);
  else if (suite == "gradient") cl = verify_gradient(cfg);
  else if (suite == "gauge") cl = verify_gauge(cfg);
  else if (suite == "kahler") cl = verify_kahler(cfg);
  else if (suite == "reduce3d") cl = verify_reduce3d(cfg);
  else throw Error("unknown suite: config error");

  cl.print();
  json report;
  report["suite"] = suite;
  report["checks"] = cl.to_json();
  report["passed"] = cl.all_passed();
  if (!extra.is_null()) report["study"] = extra;
  std::filesystem::create_directories(cfg.out_dir);
  write_json(std::filesystem::path(cfg.out_dir) / "report.json", report);
  manifest["summary"] = cl.to_json();
  return finish_manifest(manifest, cfg, {"report.json"}, cl.all_passed(), start);
}

int run_solve(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  json manifest = manifest_base("solve", cfg);
  if (cfg.dry_run) {
    build4(cfg);  // validates lattice and flux input
    manifest["dry_run"] = true;
    return finish_manifest(manifest, cfg, {}, true, start);
  }
  Lattice4 l4 = build4(cfg);
  const Config c0 = random_config(l4.lat, l4.bg, cfg.seed, cfg.amplitude);
  FunctionalParams p;
  p.kappa = cfg.kappa;
  if (cfg.eta_amplitude > 0.0) p.eta = harmonic_selfdual(*l4.lat, cfg.eta_amplitude, cfg.seed);
  SolveOptions opts;
  opts.tol = cfg.tol;
  opts.max_iters = cfg.max_iters;
  opts.keep_trace = true;

  auto [cmin, rep] = flow_minimize(c0, p, opts);

  std::filesystem::create_directories(cfg.out_dir);
  const std::filesystem::path out(cfg.out_dir);
  write_trace_csv((out / "trace.csv").string(), rep.trace);
  write_json(out / "report.json", to_json(rep));
  save_cochain((out / "snapshot_a.mlab").string(), *l4.lat, cmin.a, &l4.bg->m, cfg.seed);
  save_spinor((out / "snapshot_psi.mlab").string(), *l4.lat, cmin.psi, &l4.bg->m, cfg.seed);

  json summary = to_json(rep);
  {
    // both Chern normalizations of the background: the stored bundle and
    // its square root seen by the section
    json flux_stored = json::array(), flux_half = json::array();
    for (int u = 0; u < 4; ++u) {
      json r1 = json::array(), r2 = json::array();
      for (int v = 0; v < 4; ++v) {
        r1.push_back(l4.bg->m[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]);
        r2.push_back(0.5 * l4.bg->m[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]);
      }
      flux_stored.push_back(r1);
      flux_half.push_back(r2);
    }
    summary["c1_stored_bundle"] = flux_stored;
    summary["c1_spinor_line"] = flux_half;
  }
  manifest["summary"] = summary;
  std::printf("[%s] solve  iters=%d  S=%.6e  |psi|_inf=%.3e  sqrt(I+)=%.3e\n",
              rep.converged ? "PASS" : "FAIL", rep.iterations, rep.final_action,
              rep.psi_sup, std::sqrt(rep.i_plus));
  const int rc = finish_manifest(manifest, cfg,
                                 {"trace.csv", "report.json", "snapshot_a.mlab", "snapshot_psi.mlab"},
                                 rep.converged, start);
  return rc == 0 ? 0 : 3;  // solver failure, not a check failure
}

FourManifoldData manifold_from_json(const json& j) {
  FourManifoldData md;
  md.chi = j.at("chi").get<long long>();
  md.sigma = j.at("sigma").get<long long>();
  md.b2plus = j.value("b2plus", 0LL);
  if (j.contains("Q")) md.Q = j.at("Q").get<IntMatrix>();
  if (j.contains("b1")) md.b1 = j.at("b1").get<long long>();
  md.validate();
  return md;
}

int run_topology(const std::string& input, const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  json manifest = manifest_base("topology " + input, cfg);
  std::ifstream is(input);
  if (!is) throw Error("cannot open " + input);
  json doc;
  try {
    doc = json::parse(is);
  } catch (const json::exception& e) {
    throw Error(std::string("bad JSON input: ") + e.what());
  }
  const FourManifoldData md = manifold_from_json(doc);
  if (cfg.dry_run) {
    manifest["dry_run"] = true;
    return finish_manifest(manifest, cfg, {}, true, start);
  }

  std::filesystem::create_directories(cfg.out_dir);
  const std::filesystem::path out(cfg.out_dir);
  std::vector<std::string> outputs;
  json summary;

  // dimensions and indices for the supplied classes
  {
    std::ofstream os(out / "dimensions.csv");
    os << "class,dimension,dirac_index,euler_sig_term,counting_rule\n";
    std::vector<SpinCClass> classes;
    if (doc.contains("c1_L2")) {
      SpinCClass s;
      s.c1_L2 = doc.at("c1_L2").get<std::vector<long long>>();
      classes.push_back(s);
    }
    if (doc.contains("classes"))
      for (const auto& row : doc.at("classes")) {
        SpinCClass s;
        s.c1_L2 = row.get<std::vector<long long>>();
        classes.push_back(s);
      }
    if (classes.empty()) {
      SpinCClass s;
      s.c1_L2.assign(md.Q.size(), 0);
      classes.push_back(s);
    }
    json dims = json::array();
    for (const auto& s : classes) {
      const SWDimension dim = sw_dimension(md, s);
      const InvariantRule rule = invariant_counting_rules(dim.dimension);
      std::string rname = rule.rule == CountingRule::zero ? "zero"
                          : rule.rule == CountingRule::signed_count ? "signed_count"
                          : "pairing_c1^" + rule.pairing_degree.str();
      std::string cls;
      for (std::size_t i = 0; i < s.c1_L2.size(); ++i)
        cls += (i ? " " : "") + std::to_string(s.c1_L2[i]);
      os << '"' << cls << '"' << ',' << dim.dimension.str() << ',' << dim.dirac_index.str()
         << ',' << dim.euler_sig_term.str() << ',' << rname << "\n";
      json jd;
      jd["class"] = s.c1_L2;
      jd["dimension"] = dim.dimension.str();
      jd["dirac_index"] = dim.dirac_index.str();
      jd["rule"] = rname;
      dims.push_back(jd);
    }
    summary["dimensions"] = dims;
    outputs.push_back("dimensions.csv");
  }

  // Thom genus-bound table with the curvature estimates at that genus
  {
    const long long dmax = doc.value("thom_max_degree", 10LL);
    std::ofstream os(out / "thom.csv");
    os << "degree,genus_bound,curvature_bound,psi_sq_bound\n";
    for (long long dd = 1; dd <= dmax; ++dd) {
      const long long g = thom_genus_bound(dd);
      const CurvatureEstimate est = curvature_estimate_bound(std::max(1LL, g));
      char buf[128];
      std::snprintf(buf, sizeof(buf), "%lld,%lld,%.17g,%.17g\n", dd, g, est.f_bound,
                    est.psi_sq_bound);
      os << buf;
    }
    outputs.push_back("thom.csv");
  }

  // basic classes within the coefficient box
  if (!md.Q.empty() && det_of(md.Q) != 0) {
    const long long bound = doc.value("bound", 3LL);
    const auto classes = basic_class_candidates(md, bound);
    std::ofstream os(out / "basic_classes.csv");
    os << "class\n";
    for (const auto& x : classes) {
      os << '"';
      for (std::size_t i = 0; i < x.size(); ++i) os << (i ? " " : "") << x[i];
      os << '"' << "\n";
    }
    summary["basic_class_count"] = classes.size();
    outputs.push_back("basic_classes.csv");
  }

  if (doc.contains("connected_sum_query")) {
    const auto q = doc.at("connected_sum_query").get<std::vector<long long>>();
    if (q.size() != 2) throw Error("connected_sum_query wants [b2plus_1, b2plus_2]");
    summary["connected_sum"] =
        connected_sum_invariant(q[0], q[1]) == ConnectedSumVerdict::vanishes
            ? "vanishes"
            : "no conclusion";
  }
  if (doc.contains("nonabelian")) {
    const auto& na = doc.at("nonabelian");
    summary["nonabelian_dimension"] =
        nonabelian_dimension(na.at("N").get<long long>(), na.at("c2").get<long long>(),
                             md.chi, md.sigma, na.at("delta").get<long long>())
            .str();
  }
  if (doc.contains("gromov")) {
    const auto& gr = doc.at("gromov");
    summary["gromov_dimension"] = gromov_dimension(gr.at("c1K_dot_A").get<long long>(),
                                                   gr.at("A_sq").get<long long>());
  }

  write_json(out / "summary.json", summary);
  outputs.push_back("summary.json");
  manifest["summary"] = summary;
  std::printf("[PASS] topology tables written to %s\n", cfg.out_dir.c_str());
  return finish_manifest(manifest, cfg, outputs, true, start);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lattice monopole-equation workbench"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_file;
  std::string size_text, spacing_text, flux_text, sizes_text;

  if (const char* env = std::getenv("MONOPOLE_LAB_THREADS")) cfg.threads = std::atoi(env);

  std::map<std::string, std::vector<CLI::Option*>> tracked;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_file, "ini-style config file");
    tracked["size"].push_back(cmd->add_option("--size", size_text, "lattice sizes, comma separated"));
    tracked["spacing"].push_back(cmd->add_option("--spacing", spacing_text, "lattice spacings, comma separated"));
    tracked["flux"].push_back(cmd->add_option("--flux", flux_text, "upper-triangle flux integers m01,m02,..."));
    tracked["kappa"].push_back(cmd->add_option("--kappa", cfg.kappa, "synthetic scalar-curvature constant"));
    tracked["eta-amplitude"].push_back(cmd->add_option("--eta-amplitude", cfg.eta_amplitude, "harmonic self-dual perturbation size"));
    tracked["amplitude"].push_back(cmd->add_option("--amplitude", cfg.amplitude, "random start amplitude"));
    tracked["seed"].push_back(cmd->add_option("--seed", cfg.seed, "random seed"));
    tracked["tol"].push_back(cmd->add_option("--tol", cfg.tol, "solver gradient tolerance (rms per dof)"));
    tracked["max-iters"].push_back(cmd->add_option("--max-iters", cfg.max_iters, "solver iteration budget"));
    tracked["threads"].push_back(cmd->add_option("--threads", cfg.threads, "worker threads (1 = bit-exact)"));
    tracked["out"].push_back(cmd->add_option("--out", cfg.out_dir, "output directory"));
    cmd->add_flag("--dry-run", cfg.dry_run, "validate configuration only");
  };

  std::string suite;
  CLI::App* verify = app.add_subcommand("verify", "run a named invariant suite");
  verify->add_option("suite", suite,
                     "clifford|lattice|weitzenbock|gradient|gauge|kahler|reduce3d")
      ->required();
  verify->add_option("--sizes", sizes_text, "refinement sizes for convergence studies");
  add_common(verify);

  CLI::App* solve = app.add_subcommand("solve", "gradient-flow minimization run");
  add_common(solve);

  std::string topo_input;
  CLI::App* topo = app.add_subcommand("topology", "closed-form topological tables");
  topo->add_option("input", topo_input, "manifold data JSON")->required();
  add_common(topo);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (!config_file.empty()) {
      std::map<std::string, bool> flag_given;
      for (const auto& [key, opts] : tracked)
        for (const CLI::Option* o : opts) flag_given[key] = flag_given[key] || o->count() > 0;
      apply_config_file(cfg, config_file, flag_given);
    }
    // flags win over the file
    if (!size_text.empty()) cfg.sizes = parse_int_list(size_text);
    if (!spacing_text.empty()) cfg.spacings = parse_double_list(spacing_text);
    if (!flux_text.empty()) cfg.flux = parse_int_list(flux_text);
    if (!sizes_text.empty()) cfg.study_sizes = parse_int_list(sizes_text);
    set_threads(cfg.threads);

    if (verify->parsed()) {
      const std::vector<std::string> known = {"clifford", "lattice", "weitzenbock",
                                              "gradient", "gauge", "kahler", "reduce3d"};
      bool ok = false;
      for (const auto& k : known) ok = ok || k == suite;
      if (!ok) {
        std::fprintf(stderr, "error: unknown suite '%s'\n", suite.c_str());
        return 2;
      }
      return run_verify(suite, cfg);
    }
    if (solve->parsed()) return run_solve(cfg);
    if (topo->parsed()) return run_topology(topo_input, cfg);
  } catch (const Error& e) {
    // configuration and input problems exit 2; anything raised mid-run is a
    // runtime failure
    const std::string what = e.what();
    std::fprintf(stderr, "error: %s\n", what.c_str());
    const bool config_problem =
        what.find("config") != std::string::npos || what.find("cannot open") != std::string::npos ||
        what.find("flux wants") != std::string::npos || what.find("bad JSON") != std::string::npos ||
        what.find("make_lattice") != std::string::npos || what.find("needs a 4-d") != std::string::npos ||
        what.find("must be") != std::string::npos || what.find("inconsistent") != std::string::npos ||
        what.find("wants [") != std::string::npos || what.find("mismatch") != std::string::npos;
    return config_problem ? 2 : 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 2;
}
