#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

#include "harmtori/config.hpp"
#include "harmtori/elliptic_core.hpp"
#include "harmtori/export.hpp"
#include "harmtori/genus_zero.hpp"
#include "harmtori/report.hpp"
#include "harmtori/verify.hpp"

using namespace harmtori;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNotSpectral = 2;
constexpr int kExitVerifyFailed = 3;

cplx parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  std::size_t used = 0;
  try {
    if (comma == std::string::npos) {
      const double re = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument("");
      return {re, 0.0};
    }
    const std::string a = text.substr(0, comma), b = text.substr(comma + 1);
    const double re = std::stod(a, &used);
    if (used != a.size()) throw std::invalid_argument("");
    const double im = std::stod(b, &used);
    if (used != b.size()) throw std::invalid_argument("");
    return {re, im};
  } catch (const std::exception&) {
    throw std::invalid_argument("expected RE,IM but got '" + text + "'");
  }
}

WindingMatrix parse_matrix(const std::string& text) {
  std::vector<std::int64_t> v;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    std::size_t used = 0;
    try {
      v.push_back(std::stoll(cell, &used));
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != cell.size()) throw std::invalid_argument("bad matrix entry '" + cell + "'");
    if (std::llabs(v.back()) > (1LL << 31)) throw std::invalid_argument("matrix entries must satisfy |n| <= 2^31");
  }
  if (v.size() != 4) throw std::invalid_argument("matrix needs four integers n1,m1,n2,m2");
  return {v[0], v[1], v[2], v[3]};
}

int cmd_curve_info(const std::string& alpha, const std::string& beta, const RunConfig& cfg) {
  const BranchPair bp{parse_complex(alpha), parse_complex(beta)};
  const CurveReport r = curve_report(bp, cfg.max_den, cfg.detection_tol, cfg.quadrature_tol);
  std::cout << to_text(r);
  return r.spectral() ? kExitOk : kExitNotSpectral;
}

int cmd_level_set(const std::string& p_text, const std::string& q_text, const RunConfig& cfg, bool serial) {
  const Rational p = parse_rational(p_text), q = parse_rational(q_text);
  if (p.num <= 0) throw std::invalid_argument("p must be positive");
  if (cfg.out_path.empty()) throw std::invalid_argument("--out is required");
  const SweepOptions opt = cfg.sweep_options();
  const LevelSetMesh mesh = serial ? sweep_level_set_serial(p, q, opt) : sweep_level_set(p, q, opt);
  const TopologyReport topo = sweep_topology(p, q, opt);
  {
    std::ofstream out(cfg.out_path);
    if (!out) throw std::invalid_argument("cannot write " + cfg.out_path);
    write_level_set_csv(out, mesh, to_string(cfg), &topo);
  }
  if (!cfg.mesh_path.empty()) {
    std::ofstream out(cfg.mesh_path);
    if (!out) throw std::invalid_argument("cannot write " + cfg.mesh_path);
    write_level_set_obj(out, mesh);
  }
  std::cout << "wrote " << mesh.records.size() - static_cast<std::size_t>(mesh.failures()) << " points to "
            << cfg.out_path << "\n";
  std::cout << "deck shift " << topo.shift.str() << ", max closure " << fmt17(topo.max_closure) << ", max deck error "
            << fmt17(topo.max_deck) << "\n";
  if (mesh.failures() > 0) std::cout << "warning: " << mesh.failures() << " points failed to solve\n";
  return kExitOk;
}

int cmd_enumerate(const std::string& p_text, const RunConfig& cfg) {
  const Rational p = parse_rational(p_text);
  for (const ComponentId& c : enumerate_components(p, cfg.max_den, cfg.q_range)) {
    const Rational q = std::holds_alternative<Annulus>(c) ? std::get<Annulus>(c).q : std::get<Helicoid>(c).q_class;
    const ModuliSummary s = moduli_summary(p, q);
    std::cout << describe(c) << " l=" << s.l;
    if (s.monodromy) std::cout << " monodromy=" << *s.monodromy;
    std::cout << " fibre=" << s.fibre << "\n";
  }
  return kExitOk;
}

int cmd_genus0(const std::string& alpha, const std::string& matrix) {
  Genus0Data d{parse_complex(alpha), parse_matrix(matrix)};
  const Genus0Report r = genus0_report(d);
  if (r.period_residual > 1e-11 || r.eigenline_residual > 1e-9 || r.scalar_residual > 1e-10) {
    std::cerr << "genus-zero invariants failed:\n" << to_text(r);
    return kExitVerifyFailed;
  }
  std::cout << to_text(r);
  return kExitOk;
}

int cmd_verify(const std::string& suite, const RunConfig& cfg, bool serial) {
  if (!is_suite_name(suite)) throw CLI::ValidationError("--suite", "unknown suite '" + suite + "'");
  VerifyOptions opt;
  opt.seed = cfg.seed;
  opt.parallel = !serial;
  const auto results = run_suite(suite, opt);
  std::cout << to_text(results);
  bool ok = true;
  for (const auto& r : results) ok = ok && r.passed;
  std::cout << (ok ? "all invariants passed\n" : "verification failed\n");
  return ok ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral data of equivariant harmonic tori in S^3"};
  app.require_subcommand(1);

  RunConfig cfg;
  try {
    cfg = config_from_environment();
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  }

  std::string alpha, beta, p_text, q_text, matrix, suite;
  bool serial = false;

  auto* ci = app.add_subcommand("curve-info", "Curve report and spectral-data checklist for a branch pair");
  ci->add_option("--alpha", alpha, "first branch point RE,IM")->required();
  ci->add_option("--beta", beta, "second branch point RE,IM")->required();
  ci->add_option("--max-den", cfg.max_den, "denominator cap for candidate detection");
  ci->add_option("--tol", cfg.detection_tol, "detection tolerance");

  auto* ls = app.add_subcommand("level-set", "Sweep a level set of T~ and export it");
  ls->add_option("--p", p_text, "S value n/m")->required();
  ls->add_option("--q", q_text, "T value n/m")->required();
  ls->add_option("--k-grid", cfg.k_grid, "number of modulus samples");
  ls->add_option("--angle-grid", cfg.angle_grid, "number of angle samples");
  ls->add_option("--span", cfg.span, "advance of the rescaled free angle, radians");
  ls->add_option("--k-min", cfg.k_min);
  ls->add_option("--k-max", cfg.k_max);
  ls->add_option("--start-angle", cfg.start_angle);
  ls->add_option("--out", cfg.out_path, "CSV output path");
  ls->add_option("--mesh", cfg.mesh_path, "OBJ output path");
  ls->add_flag("--serial", serial, "use the serial reference sweep");

  auto* en = app.add_subcommand("enumerate", "List components with bounded q denominator");
  en->add_option("--p", p_text, "S value n/m")->required();
  en->add_option("--max-den", cfg.max_den);
  en->add_option("--q-range", cfg.q_range, "for p = 1: list q in [-R, R]");

  auto* g0 = app.add_subcommand("genus0", "Genus-zero spectral data");
  g0->add_option("--alpha", alpha, "branch point RE,IM")->required();
  g0->add_option("--matrix", matrix, "winding matrix n1,m1,n2,m2")->required();

  auto* vf = app.add_subcommand("verify", "Run the invariant suites");
  vf->add_option("--suite", suite, "all|elliptic|curves|differentials|moduli")->required();
  vf->add_option("--seed", cfg.seed);
  vf->add_flag("--serial", serial, "evaluate samples serially");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    validate(cfg);
    if (*ci) return cmd_curve_info(alpha, beta, cfg);
    if (*ls) return cmd_level_set(p_text, q_text, cfg, serial);
    if (*en) return cmd_enumerate(p_text, cfg);
    if (*g0) return cmd_genus0(alpha, matrix);
    if (*vf) return cmd_verify(suite, cfg, serial);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
