#include "swmoment/serialize.hpp"

#include <cstdio>
#include <ctime>
#include <ostream>

namespace swm {

json to_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json describe_rep(const QuatRep& rep, const std::string& id) {
  const LieAlg& g = rep.alg();
  json consts = json::array();
  for (int a = 0; a < g.dim(); ++a)
    for (int b = a + 1; b < g.dim(); ++b)
      for (int e = 0; e < g.dim(); ++e)
        if (g.structure_constant(a, b, e) != 0.0) consts.push_back({a, b, e, g.structure_constant(a, b, e)});
  json blocks = json::array();
  for (const auto& b : rep.blocks()) blocks.push_back({{"name", b.name}, {"offset", b.offset}, {"size", b.size}});
  const RepValidation v = rep.validate();
  json out{{"id", id},
           {"name", rep.name()},
           {"dim_S", rep.dim_S()},
           {"algebra", {{"name", g.name()},
                        {"dim", g.dim()},
                        {"matrix_size", g.matrix_size()},
                        {"metric_scale", g.metric_scale()},
                        {"closure_residual", g.closure_residual()},
                        {"structure_constants", consts}}},
           {"blocks", blocks},
           {"flavor", rep.flavor_names()},
           {"validation", {{"module_axioms", v.module_axioms},
                           {"skew", v.skew},
                           {"h_linearity", v.h_linearity},
                           {"homomorphism", v.homomorphism}}}};
  if (const auto& adj = rep.adjoint_block()) out["adjoint_block"] = {{"offset", adj->offset}, {"count", adj->count}};
  return out;
}

json to_json(const IdentityCheck& c) {
  return {{"check", c.name},
          {"rep", c.rep},
          {"samples", c.samples},
          {"seed", c.seed},
          {"tolerance", c.tolerance},
          {"worst_residual", c.worst_residual},
          {"worst_index", c.worst_index},
          {"worst_witness", to_json(c.worst_witness)},
          {"pass", c.pass()}};
}

json to_json(const CertReport& r) {
  json out{{"rep", r.rep},
           {"estimator", r.estimator},
           {"constraint", r.constraint},
           {"delta_mu", r.delta_mu},
           {"samples", r.samples},
           {"multistarts", r.multistarts},
           {"seed", r.seed},
           {"estimate", r.estimate},
           {"spread", r.spread},
           {"stability_ratio", r.stability_ratio},
           {"feasible_samples", r.feasible_samples},
           {"converged", r.converged},
           {"finals", r.finals},
           {"values", r.values},
           {"witness_kind", r.witness_kind},
           {"witness", to_json(r.witness)}};
  if (!r.parts.empty()) {
    json parts = json::array();
    for (const auto& p : r.parts) parts.push_back(to_json(p));
    out["parts"] = parts;
  }
  return out;
}

json to_json(const FrequencyProfile& p) {
  json rows = json::array();
  for (std::size_t k = 0; k < p.radii.size(); ++k) {
    json row{{"radius", p.radii[k]}, {"m", p.m[k]}, {"D", p.D[k]}};
    row["N"] = p.defined[k] ? json(p.N[k]) : json(nullptr);
    rows.push_back(row);
  }
  return {{"center", {p.center[0], p.center[1], p.center[2]}},
          {"sphere_rule", p.sphere_rule},
          {"radial_nodes", p.radial_nodes},
          {"profile", rows}};
}

json to_json(const MonotonicityReport& r) {
  json pairs = json::array();
  for (const auto& q : r.pairs)
    pairs.push_back({{"s", q.s},
                     {"r", q.r},
                     {"N_s", q.n_s},
                     {"N_r", q.n_r},
                     {"exponent", q.exponent},
                     {"lower", q.lower},
                     {"upper", q.upper},
                     {"frequency_ok", q.frequency_ok},
                     {"exponent_ok", q.exponent_ok}});
  return {{"C", r.C}, {"tolerance", r.tolerance}, {"all_ok", r.all_ok}, {"pairs", pairs}};
}

json to_json(const CoveringVerdict& v) {
  const auto& w = v.worst_pair;
  return {{"delta", v.delta},
          {"hypothesis_holds", v.hypothesis_holds},
          {"conclusion_holds", v.conclusion_holds},
          {"conclusion_value", v.conclusion_value},
          {"consistent", v.consistent()},
          {"pairs_tested", v.pairs_tested},
          {"premise_true", v.premise_true},
          {"violations", v.violations},
          {"worst_pair", {{"y", {w.y[0], w.y[1], w.y[2]}}, {"s", w.s}, {"premise", w.premise}, {"decay", w.decay}}}};
}

json to_json(const CoveringReadings& r) {
  return {{"covering_number", r.covering_number},
          {"reciprocal", to_json(r.reciprocal)},
          {"literal", to_json(r.literal)}};
}

json to_json(const SwResidual& r) {
  return {{"dirac_max", r.dirac_max}, {"curvature_max", r.curvature_max}, {"interior_nodes", r.interior_nodes}};
}

json to_json(const FlatGcResidual& r) {
  return {{"divergence_max", r.divergence_max},
          {"curl_max", r.curl_max},
          {"curvature_max", r.curvature_max},
          {"interior_nodes", r.interior_nodes}};
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void stamp(json& j) { j["timestamp"] = utc_timestamp(); }

void write_profile_csv(std::ostream& out, const FrequencyProfile& p) {
  out << "radius,m,D,N\n";
  char buf[128];
  for (std::size_t k = 0; k < p.radii.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,", p.radii[k], p.m[k], p.D[k]);
    out << buf;
    if (p.defined[k]) {
      std::snprintf(buf, sizeof buf, "%.17g", p.N[k]);
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace swm
