// Command-line surface: every subcommand writes a machine-readable report
// (deterministic JSON, floats at 17 significant digits) plus a sibling
// .meta.json with the timestamp, and prints a short summary table.
// Exit codes: 0 success, 1 check failure, 2 usage/config error.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <random>

#include "swlat/flow.hpp"
#include "swlat/functional.hpp"
#include "swlat/hessian.hpp"
#include "swlat/hodge.hpp"
#include "swlat/identity.hpp"
#include "swlat/report.hpp"
#include "swlat/runconfig.hpp"
#include "swlat/snapshot.hpp"
#include "swlat/spectral.hpp"

using namespace swlat;

namespace {

struct CommonOpts {
  std::string config_path;
  std::string snapshot_path;
  std::string out_dir;
  int n = 2;
  double h = 1.0;
  std::vector<int> flux{0, 0, 0, 0, 0, 0};
  double kg = 0.0;
  std::string kg_file;
  std::uint64_t seed = 42;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_snapshot = true) {
  cmd->set_help_flag("--help", "print usage");
  cmd->add_option("--config", o.config_path, "JSON run configuration (strict keys)");
  if (with_snapshot) cmd->add_option("--snapshot", o.snapshot_path, "load the configuration from a snapshot file");
  cmd->add_option("--n", o.n, "sites per axis");
  cmd->add_option("--h", o.h, "lattice spacing");
  cmd->add_option("--flux", o.flux, "six flux integers (plane order 01,02,03,12,13,23)")->expected(6);
  cmd->add_option("--kg", o.kg, "constant scalar-potential value");
  cmd->add_option("--kg-file", o.kg_file, "0-cochain payload file for a site-varying potential");
  cmd->add_option("--seed", o.seed, "random seed");
  cmd->add_option("--out", o.out_dir, "report output directory (env SWLAT_OUT overrides the default '.')");
}

RunConfig resolve_config(const CommonOpts& o) {
  RunConfig cfg;
  if (!o.config_path.empty()) cfg = load_run_config(o.config_path);
  if (o.config_path.empty()) {
    cfg.n = o.n;
    cfg.h = o.h;
    for (int i = 0; i < 6; ++i) cfg.flux[i] = o.flux[i];
    cfg.kg_constant = o.kg;
    if (!o.kg_file.empty()) cfg.kg_file = o.kg_file;
    cfg.seed = o.seed;
  }
  if (!o.out_dir.empty()) cfg.out_dir = o.out_dir;
  if (const char* env = std::getenv("SWLAT_OUT"); env && o.out_dir.empty()) cfg.out_dir = env;
  return cfg;
}

Configuration resolve_configuration(const CommonOpts& o, const RunConfig& cfg) {
  if (!o.snapshot_path.empty()) return load_snapshot(o.snapshot_path);
  const Lattice lat(cfg.n, cfg.h);
  return make_zero_configuration(lat, cfg);
}

void print_row(const std::string& key, const std::string& value) {
  std::cout << "  " << key;
  for (std::size_t i = key.size(); i < 28; ++i) std::cout << ' ';
  std::cout << value << "\n";
}

void print_row(const std::string& key, double value) { print_row(key, format_double_17(value)); }

JsonValue config_json(const RunConfig& cfg) {
  JsonValue j = JsonValue::object();
  j.set("n", cfg.n).set("h", cfg.h);
  JsonValue flux = JsonValue::array();
  for (int m : cfg.flux) flux.push(m);
  j.set("flux", std::move(flux));
  if (cfg.kg_file)
    j.set("kg_file", *cfg.kg_file);
  else
    j.set("kg", cfg.kg_constant);
  j.set("seed", static_cast<std::int64_t>(cfg.seed));
  return j;
}

Configuration random_configuration(const Lattice& lat, const RunConfig& cfg, std::mt19937_64& gen, double amp) {
  std::uniform_real_distribution<double> dist(-amp, amp);
  Cochain a(lat, 1);
  for (auto& v : a.values) v = dist(gen);
  SpinorField phi(lat, Chirality::plus);
  for (auto& v : phi.values) v = cdouble{dist(gen), dist(gen)};
  return Configuration(std::move(a), std::move(phi), make_bundle(lat, cfg));
}

TangentVector random_tangent(const Lattice& lat, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  TangentVector t = TangentVector::zero(lat);
  for (auto& v : t.theta.values) v = dist(gen);
  for (auto& v : t.v.values) v = cdouble{dist(gen), dist(gen)};
  return t;
}

// Central finite difference of the energy along a tangent direction.
double fd_energy_derivative(const Configuration& c, const TangentVector& t, double eps) {
  auto shifted = [&](double s) {
    Cochain a = c.a;
    for (std::int64_t e = 0; e < a.size(); ++e) a[e] += s * t.theta[e];
    SpinorField phi = c.phi;
    for (std::size_t i = 0; i < phi.values.size(); ++i) phi.values[i] += s * t.v.values[i];
    return sw_eval(Configuration(std::move(a), std::move(phi), c.bundle)).total;
  };
  return (shifted(eps) - shifted(-eps)) / (2.0 * eps);
}

int cmd_eval(const CommonOpts& o) {
  const RunConfig cfg = resolve_config(o);
  const Configuration c = resolve_configuration(o, cfg);
  const EnergyBreakdown e = sw_eval(c);

  JsonValue rep = JsonValue::object();
  rep.set("schema", "swlat-report/1").set("command", "eval").set("config", config_json(cfg));
  JsonValue res = JsonValue::object();
  res.set("curvature_term", e.curvature_term)
      .set("dirichlet_term", e.dirichlet_term)
      .set("quartic_term", e.quartic_term)
      .set("curvature_coupling_term", e.curvature_coupling_term)
      .set("topological_term", e.topological_term)
      .set("total", e.total);
  rep.set("results", std::move(res));
  const std::string path = write_report(rep, cfg.out_dir, "eval");

  std::cout << "energy breakdown\n";
  print_row("curvature", e.curvature_term);
  print_row("dirichlet", e.dirichlet_term);
  print_row("quartic", e.quartic_term);
  print_row("curvature coupling", e.curvature_coupling_term);
  print_row("topological", e.topological_term);
  print_row("total", e.total);
  print_row("report", path);
  return 0;
}

int cmd_grad_check(const CommonOpts& o, int trials, double fd_step, double tol) {
  const RunConfig cfg = resolve_config(o);
  const Lattice lat(cfg.n, cfg.h);
  std::mt19937_64 gen(cfg.seed);

  double max_rel = 0.0;
  JsonValue errors = JsonValue::array();
  for (int t = 0; t < trials; ++t) {
    const Configuration c = random_configuration(lat, cfg, gen, 1.0);
    const GradientPair g = sw_gradient(c);
    const TangentVector dir = random_tangent(lat, gen);
    const double analytic = inner(g.grad_a, dir.theta) + inner_re(g.grad_phi, dir.v);
    const double fd = fd_energy_derivative(c, dir, fd_step);
    const double rel = std::abs(fd - analytic) / std::max(1.0, std::abs(fd));
    max_rel = std::max(max_rel, rel);
    errors.push(rel);
  }

  JsonValue rep = JsonValue::object();
  rep.set("schema", "swlat-report/1").set("command", "grad-check").set("config", config_json(cfg));
  JsonValue res = JsonValue::object();
  res.set("trials", trials).set("fd_step", fd_step).set("tolerance", tol);
  res.set("max_relative_error", max_rel).set("relative_errors", std::move(errors));
  res.set("pass", max_rel <= tol);
  rep.set("results", std::move(res));
  const std::string path = write_report(rep, cfg.out_dir, "grad-check");

  std::cout << "gradient finite-difference check\n";
  print_row("trials", std::to_string(trials));
  print_row("max relative error", max_rel);
  print_row("tolerance", tol);
  print_row("status", max_rel <= tol ? "pass" : "FAIL");
  print_row("report", path);
  return max_rel <= tol ? 0 : 1;
}

int cmd_hessian_check(const CommonOpts& o, int pairs, int fd_trials, double fd_step, double tol) {
  const RunConfig cfg = resolve_config(o);
  const Lattice lat(cfg.n, cfg.h);
  std::mt19937_64 gen(cfg.seed);

  double max_sym = 0.0;
  double max_fd = 0.0;
  for (int t = 0; t < pairs; ++t) {
    const Configuration c = random_configuration(lat, cfg, gen, 1.0);
    const HessianOperator hess(c);
    const TangentVector s = random_tangent(lat, gen);
    const TangentVector u = random_tangent(lat, gen);
    const double defect = std::abs(inner(s, hess.apply(u)) - inner(hess.apply(s), u)) / (norm(s) * norm(u));
    max_sym = std::max(max_sym, defect);
  }

  for (int t = 0; t < fd_trials; ++t) {
    const Configuration c = random_configuration(lat, cfg, gen, 1.0);
    const HessianOperator hess(c);
    const TangentVector dir = random_tangent(lat, gen);

    // Raw second differential of the energy: diag(1/2, 2) congruence of
    // the block-normalized operator.
    Cochain expect_a = hess.apply_aa(dir.theta);
    for (auto& v : expect_a.values) v *= 0.5;
    const Cochain cross_a = hess.apply_av(dir.v);
    for (std::int64_t e = 0; e < expect_a.size(); ++e) expect_a[e] += cross_a[e];
    SpinorField expect_v = hess.apply_vv(dir.v);
    for (auto& v : expect_v.values) v *= 2.0;
    const SpinorField cross_v = hess.apply_va(dir.theta);
    for (std::size_t i = 0; i < expect_v.values.size(); ++i) expect_v.values[i] += cross_v.values[i];

    auto grad_at = [&](double s) {
      Cochain a = c.a;
      for (std::int64_t e = 0; e < a.size(); ++e) a[e] += s * dir.theta[e];
      SpinorField phi = c.phi;
      for (std::size_t i = 0; i < phi.values.size(); ++i) phi.values[i] += s * dir.v.values[i];
      return sw_gradient(Configuration(std::move(a), std::move(phi), c.bundle));
    };
    const GradientPair gp = grad_at(fd_step);
    const GradientPair gm = grad_at(-fd_step);

    double num = 0.0, den = 0.0;
    for (std::int64_t e = 0; e < expect_a.size(); ++e) {
      const double fd = (gp.grad_a[e] - gm.grad_a[e]) / (2.0 * fd_step);
      num += (fd - expect_a[e]) * (fd - expect_a[e]);
      den += expect_a[e] * expect_a[e];
    }
    for (std::size_t i = 0; i < expect_v.values.size(); ++i) {
      const cdouble fd = (gp.grad_phi.values[i] - gm.grad_phi.values[i]) / (2.0 * fd_step);
      num += std::norm(fd - expect_v.values[i]);
      den += std::norm(expect_v.values[i]);
    }
    max_fd = std::max(max_fd, std::sqrt(num / std::max(den, 1e-300)));
  }

  const bool pass = max_sym <= 1e-11 && max_fd <= tol;

  JsonValue rep = JsonValue::object();
  rep.set("schema", "swlat-report/1").set("command", "hessian-check").set("config", config_json(cfg));
  JsonValue res = JsonValue::object();
  res.set("symmetry_pairs", pairs).set("max_symmetry_defect", max_sym);
  res.set("fd_trials", fd_trials).set("fd_step", fd_step).set("max_fd_relative_error", max_fd);
  res.set("tolerance", tol).set("pass", pass);
  rep.set("results", std::move(res));
  const std::string path = write_report(rep, cfg.out_dir, "hessian-check");

  std::cout << "hessian check\n";
  print_row("max symmetry defect", max_sym);
  print_row("max FD-of-gradient error", max_fd);
  print_row("status", pass ? "pass" : "FAIL");
  print_row("report", path);
  return pass ? 0 : 1;
}

int cmd_spectrum(const CommonOpts& o, const std::string& which, int count, const std::string& solver) {
  const RunConfig cfg = resolve_config(o);
  const Configuration c = resolve_configuration(o, cfg);
  const Lattice& lat = c.lattice();

  const HessianOperator hess(c);
  const ReducibleBlocks blocks = reducible_blocks(hess);
  const LinearOperator op = which == "gauge" ? cochain1_operator(lat, blocks.gauge_block)
                                             : spinor_operator(lat, blocks.spinor_block);

  SpectralReport sr;
  if (solver == "dense" || (solver == "auto" && op.dim <= 2048))
    sr = dense_spectrum(op);
  else
    sr = lanczos_lowest(op, count, 1e-10, cfg.seed);

  JsonValue rep = JsonValue::object();
  rep.set("schema", "swlat-report/1").set("command", "spectrum").set("config", config_json(cfg));
  JsonValue res = JsonValue::object();
  res.set("operator", which == "gauge" ? "d*d" : "L_A").set("solver", sr.solver);
  res.set("dim", sr.dim).set("zero_threshold", sr.zero_threshold);
  JsonValue evs = JsonValue::array();
  const int limit = sr.solver == "dense" ? std::min<int>(count, static_cast<int>(sr.eigenvalues.size()))
                                         : static_cast<int>(sr.eigenvalues.size());
  for (int i = 0; i < limit; ++i) evs.push(sr.eigenvalues[i]);
  res.set("lowest_eigenvalues", std::move(evs));
  res.set("kernel_dim", sr.kernel_dim).set("negative_count", sr.morse_index);
  rep.set("results", std::move(res));
  const std::string path = write_report(rep, cfg.out_dir, "spectrum");

  std::cout << "spectrum of " << (which == "gauge" ? "d*d" : "L_A") << " (" << sr.solver << ")\n";
  print_row("dim (real)", std::to_string(sr.dim));
  print_row("lowest eigenvalue", sr.eigenvalues.front());
  print_row("kernel dim", std::to_string(sr.kernel_dim));
  print_row("negative count", std::to_string(sr.morse_index));
  print_row("report", path);
  return 0;
}

int cmd_index(const CommonOpts& o, double tau) {
  const RunConfig cfg = resolve_config(o);
  const Configuration c = resolve_configuration(o, cfg);

  const SpectralReport sr = morse_index(c, tau);
  const double bound = spectrum_bounded_below_check(c);

  JsonValue rep = JsonValue::object();
  rep.set("schema", "swlat-report/1").set("command", "index").set("config", config_json(cfg));
  JsonValue res = JsonValue::object();
  res.set("morse_index", sr.morse_index).set("kernel_dim", sr.kernel_dim);
  res.set("zero_threshold", sr.zero_threshold).set("solver", sr.solver);
  res.set("spectrum_lower_bound", bound);
  JsonValue evs = JsonValue::array();
  for (std::size_t i = 0; i < sr.eigenvalues.size() && i < 16; ++i) evs.push(sr.eigenvalues[i]);
  res.set("lowest_eigenvalues", std::move(evs));
  rep.set("results", std::move(res));
  const std::string path = write_report(rep, cfg.out_dir, "index");

  std::cout << "Morse index of the reducible point (real dimensions)\n";
  print_row("morse index", std::to_string(sr.morse_index));
  print_row("kernel dim", std::to_string(sr.kernel_dim));
  print_row("spectrum lower bound", bound);
  print_row("report", path);
  return 0;
}

int cmd_hodge(const CommonOpts& o) {
  const RunConfig cfg = resolve_config(o);
  Configuration c = resolve_configuration(o, cfg);
  const Lattice& lat = c.lattice();

  if (o.snapshot_path.empty()) {
    // Nothing loaded: decompose a seeded random 1-cochain.
    std::mt19937_64 gen(cfg.seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (auto& v : c.a.values) v = dist(gen);
  }

  const HodgeSplit split = hodge_split(c.a);
  Cochain sum(lat, 1);
  for (std::int64_t e = 0; e < sum.size(); ++e)
    sum[e] = split.exact[e] + split.coexact[e] + split.harmonic[e] - c.a[e];
  const double recon = norm(sum) / std::max(1e-300, norm(c.a));
  const double scale = std::max(1.0, norm(c.a) * norm(c.a));
  const double ortho = std::max({std::abs(inner(split.exact, split.coexact)), std::abs(inner(split.exact, split.harmonic)),
                                 std::abs(inner(split.coexact, split.harmonic))}) /
                       scale;
  const int b1 = betti_1(lat);
  const bool pass = recon <= 1e-10 && ortho <= 1e-10 && b1 == 4;

  JsonValue rep = JsonValue::object();
  rep.set("schema", "swlat-report/1").set("command", "hodge").set("config", config_json(cfg));
  JsonValue res = JsonValue::object();
  res.set("betti_1", b1);
  res.set("exact_norm", norm(split.exact)).set("coexact_norm", norm(split.coexact)).set("harmonic_norm", norm(split.harmonic));
  res.set("reconstruction_residual", recon).set("orthogonality_residual", ortho);

  const GradientPair g = sw_gradient(c);
  const bool critical = grad_norm(g) <= 1e-10 && norm(c.phi) <= 1e-12;
  res.set("reducible_critical", critical);
  if (critical) {
    const JacobianPoint pt = jacobian_coordinates(c);
    JsonValue coords = JsonValue::array();
    for (double x : pt.coords) coords.push(x);
    res.set("jacobian_coords", std::move(coords));
  }
  res.set("pass", pass);
  rep.set("results", std::move(res));
  const std::string path = write_report(rep, cfg.out_dir, "hodge");

  std::cout << "hodge decomposition\n";
  print_row("b1", std::to_string(b1));
  print_row("reconstruction residual", recon);
  print_row("orthogonality residual", ortho);
  print_row("status", pass ? "pass" : "FAIL");
  print_row("report", path);
  return pass ? 0 : 1;
}

int cmd_flow(const CommonOpts& o, FlowParams params, double amp, bool random_start) {
  const RunConfig cfg = resolve_config(o);
  Configuration c0 = resolve_configuration(o, cfg);
  if (random_start && o.snapshot_path.empty()) {
    std::mt19937_64 gen(cfg.seed);
    std::uniform_real_distribution<double> dist(-amp, amp);
    for (auto& v : c0.a.values) v = dist(gen);
    for (auto& v : c0.phi.values) v = cdouble{dist(gen), dist(gen)};
  }
  params.seed = cfg.seed;

  const FlowTrace trace = descend(c0, params);
  const Configuration& terminal = *trace.terminal;
  const Classification cls = classify_critical_point(terminal);

  const char* status = trace.status == FlowStatus::converged ? "converged"
                       : trace.status == FlowStatus::max_iters ? "max_iters"
                                                               : "diverged";
  const char* kind = cls.kind == CriticalKind::reducible_morse_bott ? "reducible_morse_bott"
                     : cls.kind == CriticalKind::reducible_indexed  ? "reducible_indexed"
                     : cls.kind == CriticalKind::irreducible        ? "irreducible"
                                                                    : "not_critical";

  JsonValue rep = JsonValue::object();
  rep.set("schema", "swlat-report/1").set("command", "flow").set("config", config_json(cfg));
  JsonValue res = JsonValue::object();
  res.set("status", status).set("iterations", trace.records.empty() ? 0 : trace.records.back().iter);
  res.set("initial_energy", trace.records.front().energy).set("terminal_energy", trace.records.back().energy);
  res.set("terminal_grad_norm", cls.grad_norm).set("terminal_phi_norm", cls.phi_norm);
  res.set("terminal_dstar_f_norm", [&] {
    Cochain f = d(terminal.a);
    const Cochain& tw = terminal.bundle.twist_curvature();
    for (std::int64_t i = 0; i < f.size(); ++i) f[i] += tw[i];
    return norm(d_star(f));
  }());
  res.set("classification", kind);
  if (cls.kind == CriticalKind::reducible_morse_bott || cls.kind == CriticalKind::reducible_indexed) {
    res.set("morse_index", cls.morse_index).set("spinor_kernel_dim", cls.spinor_kernel_dim);
    res.set("slice_kernel_dim", cls.slice_kernel_dim);
  }
  JsonValue energies = JsonValue::array();
  const std::size_t stride = std::max<std::size_t>(1, trace.records.size() / 200);
  for (std::size_t i = 0; i < trace.records.size(); i += stride) energies.push(trace.records[i].energy);
  res.set("energy_samples", std::move(energies));
  rep.set("results", std::move(res));
  const std::string path = write_report(rep, cfg.out_dir, "flow");

  std::cout << "gradient flow\n";
  print_row("status", status);
  print_row("iterations", std::to_string(trace.records.empty() ? 0 : trace.records.back().iter));
  print_row("terminal energy", trace.records.back().energy);
  print_row("terminal |phi|", cls.phi_norm);
  print_row("classification", kind);
  print_row("report", path);
  return trace.status == FlowStatus::diverged ? 1 : 0;
}

int cmd_identity_check(const CommonOpts& o, double physical_size, std::vector<int> levels, double min_factor) {
  const RunConfig cfg = resolve_config(o);
  const auto study = identity_refinement_study(levels, physical_size);

  bool pass = true;
  for (std::size_t i = 1; i < study.size(); ++i)
    if (study[i].factor < min_factor) pass = false;

  JsonValue rep = JsonValue::object();
  rep.set("schema", "swlat-report/1").set("command", "identity-check").set("config", config_json(cfg));
  JsonValue res = JsonValue::object();
  res.set("physical_size", physical_size).set("min_factor", min_factor);
  JsonValue rows = JsonValue::array();
  for (const auto& lvl : study) {
    JsonValue row = JsonValue::object();
    row.set("n", lvl.n).set("defect", lvl.defect).set("factor", lvl.factor);
    rows.push(std::move(row));
  }
  res.set("levels", std::move(rows)).set("pass", pass);
  rep.set("results", std::move(res));
  const std::string path = write_report(rep, cfg.out_dir, "identity-check");

  std::cout << "energy identity refinement study (L = " << physical_size << ")\n";
  for (const auto& lvl : study) {
    std::cout << "  n = " << lvl.n << "  defect = " << format_double_17(lvl.defect);
    if (lvl.factor > 0.0) std::cout << "  factor = " << format_double_17(lvl.factor);
    std::cout << "\n";
  }
  print_row("status", pass ? "pass" : "FAIL");
  print_row("report", path);
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice toolkit for the Seiberg-Witten functional on the flat 4-torus"};
  app.set_help_flag("--help", "print usage");
  app.require_subcommand(1);

  CommonOpts eval_o, grad_o, hess_o, spec_o, index_o, hodge_o, flow_o, id_o;

  CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate the energy breakdown");
  add_common(eval_cmd, eval_o);

  CLI::App* grad_cmd = app.add_subcommand("grad-check", "finite-difference check of the gradient");
  add_common(grad_cmd, grad_o, false);
  int grad_trials = 20;
  double grad_fd_step = 1e-5, grad_tol = 1e-6;
  grad_cmd->add_option("--trials", grad_trials, "random configurations");
  grad_cmd->add_option("--fd-step", grad_fd_step, "central difference step");
  grad_cmd->add_option("--tol", grad_tol, "maximum relative error");

  CLI::App* hess_cmd = app.add_subcommand("hessian-check", "symmetry and FD-of-gradient checks");
  add_common(hess_cmd, hess_o, false);
  int hess_pairs = 100, hess_trials = 10;
  double hess_fd_step = 1e-5, hess_tol = 1e-5;
  hess_cmd->add_option("--pairs", hess_pairs, "random pairs for the symmetry check");
  hess_cmd->add_option("--trials", hess_trials, "random FD-of-gradient directions");
  hess_cmd->add_option("--fd-step", hess_fd_step, "central difference step");
  hess_cmd->add_option("--tol", hess_tol, "maximum relative error");

  CLI::App* spec_cmd = app.add_subcommand("spectrum", "eigenvalues of L_A or of d*d at a reducible point");
  add_common(spec_cmd, spec_o);
  std::string spec_which = "la", spec_solver = "auto";
  int spec_count = 10;
  spec_cmd->add_option("--operator", spec_which, "la or gauge")->check(CLI::IsMember({"la", "gauge"}));
  spec_cmd->add_option("--count", spec_count, "eigenvalues to report");
  spec_cmd->add_option("--solver", spec_solver, "dense, lanczos or auto")
      ->check(CLI::IsMember({"dense", "lanczos", "auto"}));

  CLI::App* index_cmd = app.add_subcommand("index", "Morse index of a reducible configuration");
  add_common(index_cmd, index_o);
  double index_tau = -1.0;
  index_cmd->add_option("--tau", index_tau, "zero threshold (default: 1e-8 * spectral scale)");

  CLI::App* hodge_cmd = app.add_subcommand("hodge", "Hodge split, b1 and Jacobian coordinates");
  add_common(hodge_cmd, hodge_o);

  CLI::App* flow_cmd = app.add_subcommand("flow", "gradient descent and critical point classification");
  add_common(flow_cmd, flow_o);
  FlowParams flow_params;
  double flow_amp = 0.5;
  bool flow_zero_start = false;
  flow_cmd->add_option("--iters", flow_params.max_iters, "iteration budget");
  flow_cmd->add_option("--grad-tol", flow_params.grad_tol, "gradient norm stopping tolerance");
  flow_cmd->add_option("--step", flow_params.step, "maximal trial step");
  flow_cmd->add_option("--regauge-every", flow_params.regauge_every, "Coulomb re-gauge period (0 = off)");
  flow_cmd->add_option("--amp", flow_amp, "amplitude of the random start");
  flow_cmd->add_flag("--zero-start", flow_zero_start, "start from the zero configuration instead of a random one");

  CLI::App* id_cmd = app.add_subcommand("identity-check", "energy identity refinement study");
  add_common(id_cmd, id_o, false);
  double id_l = 8.0, id_min_factor = 1.5;
  std::vector<int> id_levels{4, 8, 16};
  id_cmd->add_option("--l", id_l, "physical torus size");
  id_cmd->add_option("--levels", id_levels, "refinement levels");
  id_cmd->add_option("--min-factor", id_min_factor, "required defect reduction per refinement");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (eval_cmd->parsed()) return cmd_eval(eval_o);
    if (grad_cmd->parsed()) return cmd_grad_check(grad_o, grad_trials, grad_fd_step, grad_tol);
    if (hess_cmd->parsed()) return cmd_hessian_check(hess_o, hess_pairs, hess_trials, hess_fd_step, hess_tol);
    if (spec_cmd->parsed()) return cmd_spectrum(spec_o, spec_which, spec_count, spec_solver);
    if (index_cmd->parsed()) return cmd_index(index_o, index_tau);
    if (hodge_cmd->parsed()) return cmd_hodge(hodge_o);
    if (flow_cmd->parsed()) return cmd_flow(flow_o, flow_params, flow_amp, !flow_zero_start);
    if (id_cmd->parsed()) return cmd_identity_check(id_o, id_l, id_levels, id_min_factor);
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const std::runtime_error& err) {
    // malformed inputs are usage errors; failed numeric invariants are
    // check failures
    std::cerr << "error: " << err.what() << "\n";
    const std::string what = err.what();
    const bool usage = what.find("run config") != std::string::npos ||
                       what.find("snapshot '") != std::string::npos ||
                       what.find("cochain file") != std::string::npos;
    return usage ? 2 : 1;
  }
  return 2;
}
