#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "swmoment/certifier.hpp"
#include "swmoment/covering.hpp"
#include "swmoment/errors.hpp"
#include "swmoment/frequency_lab.hpp"
#include "swmoment/grid_io.hpp"
#include "swmoment/identity_suite.hpp"
#include "swmoment/serialize.hpp"
#include "synthetic.hpp"

namespace swm::cli {

namespace {

constexpr const char* kFooter = R"(Exit codes: 0 all checks passed, 1 a check failed, 2 invalid usage,
3 numerical nonconvergence (a partial report is still written).
Representation ids: trivial, classical, su2-adjoint, su3-adjoint, adhm12, multispinor-<n>, uk-<k>.
SWMOMENT_THREADS caps the worker thread count. JSON reports carry a "timestamp" field;
every other byte is reproducible from the flags.)";

const std::vector<std::string> kIdentityReps = {"classical", "su2-adjoint", "su3-adjoint", "adhm12", "multispinor-2"};

struct Common {
  std::uint64_t seed = 0;
  std::string out_path;
};

struct Config {
  Common common;
  std::string rep;
  std::vector<std::string> reps;
  std::string check = "all";
  std::string estimator = "criterion";
  double delta_mu = kDefaultDeltaMu;
  std::vector<double> deltas;
  int samples = 0;
  int multistarts = 8;
  double threshold = 5.0;
  std::string grid;
  std::string synthetic;
  std::string save_grid;
  double radius = 1.0;
  double spacing = 0.0;
  double eps = 1.0;
  std::vector<double> center;
  std::vector<double> radii;
  std::string report_path;
  double tolerance = 0.05;
  std::optional<double> delta;
  bool both_readings = false;
  int stride = 1;
  double amplitude = 1.0;
  std::optional<double> c_f;
  double r0 = 0.0;
};

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw InvalidArgument("cannot open --out file '" + path + "'");
    }
    stream_ = path.empty() ? &fallback : &file_;
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

void write_json(std::ostream& os, json j) {
  stamp(j);
  os << j.dump(2) << '\n';
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "RNG seed (required; runs are reproducible from it)")->required();
  sub->add_option("--out", c.out_path, "Write the report to this file instead of stdout");
}

std::shared_ptr<const Domain> make_domain(const Config& c) {
  const double h = c.spacing > 0.0 ? c.spacing : c.radius / 64.0;
  Eigen::Vector3d ctr = Eigen::Vector3d::Zero();
  if (!c.center.empty()) ctr = Eigen::Vector3d(c.center[0], c.center[1], c.center[2]);
  return std::make_shared<const Domain>(ctr, c.radius, h);
}

int parse_suffix_int(const std::string& s, const std::string& prefix) {
  const std::string tail = s.substr(prefix.size());
  if (tail.empty() || tail.find_first_not_of("0123456789") != std::string::npos)
    throw InvalidArgument("bad synthetic field '" + s + "'");
  return std::stoi(tail);
}

LatticeField load_field(const Config& c) {
  if (!c.grid.empty()) return field_from_grid(read_grid_file(c.grid));
  const auto d = make_domain(c);
  if (c.synthetic.rfind("harmonic-", 0) == 0) return harmonic_field(d, parse_suffix_int(c.synthetic, "harmonic-"));
  if (c.synthetic == "smooth" || c.synthetic == "smooth-flat") {
    auto rep = std::make_shared<const QuatRep>(rep_by_id(c.rep.empty() ? "classical" : c.rep));
    return smooth_field(d, rep, c.eps, c.common.seed, c.synthetic == "smooth");
  }
  if (c.synthetic == "cone") return cone_field(d, c.common.seed);
  throw InvalidArgument("unknown synthetic field '" + c.synthetic + "'");
}

ScalarField load_density(const Config& c) {
  if (!c.grid.empty()) return scalar_from_grid(read_grid_file(c.grid));
  const auto d = make_domain(c);
  if (c.synthetic == "zero") return constant_density(d, 0.0);
  if (c.synthetic == "constant") return constant_density(d, c.amplitude);
  if (c.synthetic == "mixture") return gaussian_mixture(d, c.common.seed);
  if (c.synthetic == "shell") return shell_density(d, 0.3 * c.radius, 0.055 * c.radius, c.amplitude);
  throw InvalidArgument("unknown synthetic density '" + c.synthetic + "'");
}

template <class Field>
void maybe_save(const Config& c, const Field& f, const std::string& rep_id) {
  if (c.save_grid.empty()) return;
  std::ofstream os(c.save_grid);
  if (!os) throw InvalidArgument("cannot open --save-grid file '" + c.save_grid + "'");
  if constexpr (std::is_same_v<Field, ScalarField>)
    write_grid(os, to_grid(f));
  else
    write_grid(os, to_grid(f, rep_id));
}

std::string field_rep_id(const Config& c) {
  if (!c.grid.empty()) return read_grid_file(c.grid).rep;
  if (c.synthetic.rfind("harmonic-", 0) == 0) return "trivial";
  if (c.synthetic == "cone") return "su2-adjoint";
  return c.rep.empty() ? "classical" : c.rep;
}

int cmd_describe(const Config& c, std::ostream& out) {
  json j;
  j["command"] = "describe";
  j["seed"] = c.common.seed;
  j["rep"] = describe_rep(rep_by_id(c.rep), c.rep);
  write_json(out, j);
  return kOk;
}

int cmd_identities(const Config& c, std::ostream& out) {
  const int samples = c.samples > 0 ? c.samples : 10000;
  const auto reps = c.reps.empty() ? kIdentityReps : c.reps;
  const bool all = c.check == "all";
  bool ok = true;
  for (const auto& id : reps) {
    const QuatRep rep = rep_by_id(id);
    const bool su2 = has_su2_adjoint_block(rep);
    auto emit = [&](const std::string& name, const std::optional<IdentityCheck>& r) {
      json j;
      if (r) {
        j = to_json(*r);
        ok = ok && r->pass();
      } else {
        j = {{"check", name}, {"rep", rep.name()}, {"skipped", "needs an su(2) adjoint block"}};
      }
      j["rep_id"] = id;
      stamp(j);
      out << j.dump() << '\n';
    };
    if (all || c.check == "mu-gamma") emit("mu_gamma", check_mu_gamma_identity(rep, samples, c.common.seed));
    if (all || c.check == "commutator")
      emit("commutator_norm", su2 ? std::optional(check_commutator_norm(rep, samples, c.common.seed)) : std::nullopt);
    if (all || c.check == "dmu")
      emit("dmu_orthogonality", su2 ? std::optional(check_dmu_orthogonality(rep, samples, c.common.seed)) : std::nullopt);
    if (all || c.check == "dirac")
      emit("dirac_moment", check_dirac_moment_compatibility(rep, samples, c.common.seed));
  }
  return ok ? kOk : kCheckFailed;
}

bool stable(const CertReport& r) { return std::abs(r.stability_ratio - 1.0) < 0.1; }

int cmd_certify(const Config& c, std::ostream& out) {
  const int samples = c.samples > 0 ? c.samples : 2000;
  const std::uint64_t seed = c.common.seed;
  const std::string rep = c.rep.empty() ? "su2-adjoint" : c.rep;
  json j;
  j["command"] = "certify";
  bool ok = true;
  try {
    if (c.estimator == "criterion") {
      const CertReport r = rep == "su2-adjoint" ? certify_su2_criterion(c.delta_mu, samples, c.multistarts, seed)
                                                 : certify_criterion(rep_by_id(rep), c.delta_mu, samples, c.multistarts, seed);
      ok = std::isfinite(r.estimate) && stable(r);
      j["report"] = to_json(r);
    } else if (c.estimator == "sweep") {
      if (rep != "su2-adjoint") throw InvalidArgument("--estimator sweep needs --rep su2-adjoint");
      const auto deltas = c.deltas.empty() ? std::vector<double>{0.01, 0.05, 0.1} : c.deltas;
      json reports = json::array();
      for (const auto& r : certify_su2_sweep(deltas, samples, c.multistarts, seed)) {
        ok = ok && std::isfinite(r.estimate) && stable(r);
        reports.push_back(to_json(r));
      }
      j["reports"] = reports;
    } else if (c.estimator == "sigma") {
      if (rep != "adhm12") throw InvalidArgument("--estimator sigma needs --rep adhm12");
      const CertReport r = estimate_sigma_adhm12(samples, c.multistarts, seed);
      ok = r.estimate < 0.999 && stable(r) && r.values.at("c_split_violations") == 0.0;
      j["report"] = to_json(r);
    } else if (c.estimator == "min-mu") {
      if (rep != "adhm12") throw InvalidArgument("--estimator min-mu needs --rep adhm12");
      const CertReport r = min_mu_on_unit_psi(samples, c.multistarts, seed);
      ok = stable(r);
      for (const auto& p : r.parts) ok = ok && p.estimate > 0.0;
      j["report"] = to_json(r);
    } else if (c.estimator == "quadratic") {
      if (rep != "adhm12") throw InvalidArgument("--estimator quadratic needs --rep adhm12");
      const CertReport r = certify_quadratic_estimate(c.delta_mu, samples, c.multistarts, seed);
      ok = std::isfinite(r.estimate) && r.values.at("negative_denominators") == 0.0;
      j["report"] = to_json(r);
    } else if (c.estimator == "failure") {
      const QuatRep q = rep_by_id(rep);
      if (!q.adjoint_block() || q.adjoint_block()->offset != 0)
        throw InvalidArgument("--estimator failure needs an adjoint rep");
      const CertReport r = failure_search(q.alg(), c.threshold, samples, c.multistarts, seed, c.delta_mu);
      ok = r.values.at("succeeded") == 1.0;
      j["report"] = to_json(r);
    } else {
      throw InvalidArgument("unknown estimator '" + c.estimator + "'");
    }
  } catch (const NonConvergence& e) {
    j["error"] = e.what();
    j["report"] = to_json(e.report());
    j["pass"] = false;
    write_json(out, j);
    return kNonConvergence;
  }
  j["pass"] = ok;
  write_json(out, j);
  return ok ? kOk : kCheckFailed;
}

std::vector<double> default_radii(const Domain& d, const Eigen::Vector3d& x) {
  const double hi = d.radius() - 2 * d.spacing() - (x - d.center()).norm();
  const double lo = std::max(5 * d.spacing(), hi / 6);
  if (!(hi > lo)) throw InvalidArgument("domain too small for a frequency profile");
  std::vector<double> r;
  for (int k = 0; k < 6; ++k) r.push_back(lo + (hi - lo) * k / 5.0);
  return r;
}

int cmd_frequency(const Config& c, std::ostream& out) {
  const LatticeField f = load_field(c);
  maybe_save(c, f, field_rep_id(c));
  const Eigen::Vector3d x = f.domain().center();
  const auto radii = c.radii.empty() ? default_radii(f.domain(), x) : c.radii;
  const FrequencyProfile p = frequency_profile(f, x, radii);
  write_profile_csv(out, p);
  if (c.report_path.empty()) return kOk;
  json j;
  j["command"] = "frequency";
  j["seed"] = c.common.seed;
  j["profile"] = to_json(p);
  bool ok = true;
  if (radii.size() >= 4 && std::all_of(p.defined.begin(), p.defined.end(), [](bool b) { return b; })) {
    const MonotonicityReport m = monotonicity_report(p, c.tolerance);
    j["monotonicity"] = to_json(m);
    ok = m.all_ok;
  }
  j["pass"] = ok;
  std::ofstream os(c.report_path);
  if (!os) throw InvalidArgument("cannot open --report file '" + c.report_path + "'");
  write_json(os, j);
  return ok ? kOk : kCheckFailed;
}

int cmd_covering(const Config& c, std::ostream& out) {
  const ScalarField f = load_density(c);
  maybe_save(c, f, "trivial");
  const Eigen::Vector3d x = f.domain->center();
  const double r = f.domain->radius();
  CoveringOptions opts;
  opts.center_stride = c.stride;
  json j;
  j["command"] = "covering";
  j["seed"] = c.common.seed;
  bool ok = true;
  if (c.both_readings) {
    const CoveringReadings rd = covering_check_readings(f, x, r, opts);
    j["readings"] = to_json(rd);
    ok = rd.reciprocal.consistent();
  } else {
    const CoveringVerdict v = covering_check(f, c.delta.value_or(default_covering_delta()), x, r, opts);
    j["covering_number"] = covering_number();
    j["verdict"] = to_json(v);
    ok = v.consistent();
  }
  if (c.c_f) {
    const double r0 = c.r0 > 0.0 ? c.r0 : 0.5 * r;
    j["regularity_scale"] = {{"c_F", *c.c_f}, {"r0", r0}, {"value", regularity_scale(f, *c.c_f, r0, x)}};
  }
  j["pass"] = ok;
  write_json(out, j);
  return ok ? kOk : kCheckFailed;
}

int cmd_residual(const Config& c, std::ostream& out) {
  const LatticeField f = load_field(c);
  maybe_save(c, f, field_rep_id(c));
  json j;
  j["command"] = "residual";
  j["seed"] = c.common.seed;
  j["rep"] = f.rep().name();
  j["sw"] = to_json(residual_sw(f));
  const auto& adj = f.rep().adjoint_block();
  if (adj && adj->offset == 0 && 4 * adj->count == f.rep().dim_S()) j["flat_gc"] = to_json(residual_flat_gc(f));
  if (!f.has_connection()) j["weitzenbock_defect"] = weitzenbock_defect(f);
  write_json(out, j);
  return kOk;
}

void add_field_options(CLI::App* sub, Config& c, const std::string& synthetic_help) {
  auto* g = sub->add_option("--grid", c.grid, "Input grid file (text format, see the README)");
  auto* s = sub->add_option("--synthetic", c.synthetic, synthetic_help);
  g->excludes(s);
  sub->add_option("--radius", c.radius, "Synthetic domain radius R")->check(CLI::PositiveNumber);
  sub->add_option("--spacing", c.spacing, "Synthetic grid spacing h (default R / 64)")->check(CLI::PositiveNumber);
  sub->add_option("--center", c.center, "Synthetic domain center x,y,z")->expected(3)->delimiter(',');
  sub->add_option("--save-grid", c.save_grid, "Also write the analysed field as a grid file");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"swmoment: hyperkahler moment maps, geometric criteria and frequency diagnostics", "swmoment"};
  app.footer(kFooter);
  app.require_subcommand(1);
  Config c;

  auto* describe = app.add_subcommand("describe", "Print a representation: dimensions, blocks, structure constants, validation");
  add_common(describe, c.common);
  describe->add_option("--rep", c.rep, "Representation id")->required();

  auto* identities = app.add_subcommand("identities", "Run the identity suite; one JSON line per (rep, check)");
  add_common(identities, c.common);
  identities->add_option("--rep", c.reps, "Representation ids (default: classical, su2-adjoint, su3-adjoint, adhm12, multispinor-2)")
      ->delimiter(',');
  identities->add_option("--check", c.check, "all | mu-gamma | commutator | dmu | dirac")
      ->check(CLI::IsMember({"all", "mu-gamma", "commutator", "dmu", "dirac"}));
  identities->add_option("--samples", c.samples, "Samples per check (default 10000)")->check(CLI::PositiveNumber);

  auto* certify = app.add_subcommand("certify", "Estimate a geometric constant by seeded multistart search");
  add_common(certify, c.common);
  certify->add_option("--rep", c.rep, "su2-adjoint (default) | su3-adjoint | adhm12 | multispinor-<n> | classical");
  certify->add_option("--estimator", c.estimator,
                      "criterion: sup |phi||mu| / |Gamma_phi mu| on the band |mu| <= delta-mu\n"
                      "sweep: criterion over --deltas (su2-adjoint)\n"
                      "sigma: worst anticorrelation of mu(Psi) and mu(xi) (adhm12)\n"
                      "min-mu: inf |mu(Psi, xi)| on |Psi| = 1, |xi| <= R, R = 0, 1, 10 (adhm12)\n"
                      "quadratic: sup of the quadratic decay ratio (adhm12)\n"
                      "failure: search for criterion failure on an adjoint rep")
      ->check(CLI::IsMember({"criterion", "sweep", "sigma", "min-mu", "quadratic", "failure"}));
  certify->add_option("--delta-mu", c.delta_mu, "Band width delta_mu (default 0.05)")->check(CLI::PositiveNumber);
  certify->add_option("--deltas", c.deltas, "Band widths for the sweep (default 0.01,0.05,0.1)")->delimiter(',');
  certify->add_option("--samples", c.samples, "Random samples (default 2000)")->check(CLI::PositiveNumber);
  certify->add_option("--multistarts", c.multistarts, "Local ascents from the best samples (default 8)")
      ->check(CLI::PositiveNumber);
  certify->add_option("--threshold", c.threshold, "Success threshold of the failure search (default 5)")
      ->check(CLI::PositiveNumber);

  auto* frequency = app.add_subcommand("frequency", "Frequency profile m, D, N of a field as CSV: radius,m,D,N");
  add_common(frequency, c.common);
  add_field_options(frequency, c, "harmonic-<0..3> | smooth | smooth-flat | cone");
  frequency->add_option("--rep", c.rep, "Representation of smooth synthetic fields (default classical)");
  frequency->add_option("--eps", c.eps, "Scale eps of synthetic fields")->check(CLI::PositiveNumber);
  frequency->add_option("--radii", c.radii, "Radii r with 4h < r <= R - 2h (default: six, evenly spaced)")
      ->delimiter(',');
  frequency->add_option("--report", c.report_path, "Write profile and monotonicity report as JSON");
  frequency->add_option("--tolerance", c.tolerance, "Quadrature tolerance of the doubling exponent (default 0.05)")
      ->check(CLI::NonNegativeNumber);

  auto* covering = app.add_subcommand("covering", "Check the decay hypothesis and interior bound for a density");
  add_common(covering, c.common);
  add_field_options(covering, c, "zero | constant | mixture | shell");
  covering->add_option("--amplitude", c.amplitude, "Amplitude of constant and shell densities")
      ->check(CLI::NonNegativeNumber);
  covering->add_option("--delta", c.delta, "Decay threshold (default 1 / (16 N_c))")->check(CLI::PositiveNumber);
  covering->add_flag("--both-readings", c.both_readings, "Check with delta = 1 / (16 N_c) and delta = N_c / 16");
  covering->add_option("--stride", c.stride, "Test every stride-th node as a ball center")->check(CLI::PositiveNumber);
  covering->add_option("--c-f", c.c_f, "Also report the regularity scale for this threshold")->check(CLI::PositiveNumber);
  covering->add_option("--r0", c.r0, "Upper radius of the regularity scale (default R / 2)")->check(CLI::PositiveNumber);

  auto* residual = app.add_subcommand("residual", "Pointwise equation residuals of a field");
  add_common(residual, c.common);
  add_field_options(residual, c, "harmonic-<0..3> | smooth | smooth-flat | cone");
  residual->add_option("--rep", c.rep, "Representation of smooth synthetic fields (default classical)");
  residual->add_option("--eps", c.eps, "Scale eps of synthetic fields")->check(CLI::PositiveNumber);

  for (auto* sub : {frequency, covering, residual})
    sub->callback([sub, &c] {
      if (c.grid.empty() && c.synthetic.empty())
        throw CLI::ValidationError(sub->get_name() + ": one of --grid or --synthetic is required");
    });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "swmoment: " << e.what() << "\nRun with --help for usage.\n";
    return kUsage;
  }

  try {
    Output o(c.common.out_path, out);
    if (describe->parsed()) return cmd_describe(c, o.get());
    if (identities->parsed()) return cmd_identities(c, o.get());
    if (certify->parsed()) return cmd_certify(c, o.get());
    if (frequency->parsed()) return cmd_frequency(c, o.get());
    if (covering->parsed()) return cmd_covering(c, o.get());
    return cmd_residual(c, o.get());
  } catch (const InvalidArgument& e) {
    err << "swmoment: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "swmoment: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "swmoment: " << e.what() << '\n';
    return kCheckFailed;
  }
}

}  // namespace swm::cli
