#include "swmoment/grid_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "swmoment/errors.hpp"

namespace swm {

namespace {

constexpr const char* kMagic = "swmoment-grid";

template <class T>
void expect_key(std::istream& in, const std::string& key, T& value) {
  std::string k;
  if (!(in >> k) || k != key) throw InvalidArgument("grid: expected '" + key + "', found '" + k + "'");
  if (!(in >> value)) throw InvalidArgument("grid: bad value for '" + key + "'");
}

std::shared_ptr<const Domain> domain_of(const GridFile& g) {
  auto d = std::make_shared<const Domain>(g.center, g.radius, g.spacing);
  if (d->nodes_per_axis() != g.dims)
    throw InvalidArgument("grid: dims " + std::to_string(g.dims) + " do not match spacing and radius (expected " +
                          std::to_string(d->nodes_per_axis()) + ")");
  return d;
}

}  // namespace

GridFile read_grid(std::istream& in) {
  GridFile g;
  std::string magic;
  int version = 0;
  if (!(in >> magic >> version) || magic != kMagic || version != 1) throw InvalidArgument("grid: not a swmoment-grid 1 file");
  int dy = 0;
  int dz = 0;
  std::string k;
  if (!(in >> k) || k != "dims" || !(in >> g.dims >> dy >> dz) || dy != g.dims || dz != g.dims)
    throw InvalidArgument("grid: expected cubic 'dims n n n'");
  expect_key(in, "spacing", g.spacing);
  expect_key(in, "radius", g.radius);
  if (!(in >> k) || k != "center" || !(in >> g.center[0] >> g.center[1] >> g.center[2]))
    throw InvalidArgument("grid: expected 'center x y z'");
  expect_key(in, "rep", g.rep);
  expect_key(in, "kind", g.kind);
  if (g.kind != "scalar" && g.kind != "field") throw InvalidArgument("grid: kind must be scalar or field");
  int components = 0;
  expect_key(in, "components", components);
  if (components < 1) throw InvalidArgument("grid: components must be positive");
  expect_key(in, "eps", g.eps);
  if (!(in >> k) || k != "data") throw InvalidArgument("grid: expected 'data'");
  const auto d = domain_of(g);
  const auto nodes = static_cast<Eigen::Index>(d->size());
  g.values.resize(components, nodes);
  for (Eigen::Index n = 0; n < nodes; ++n)
    for (int c = 0; c < components; ++c)
      if (!(in >> g.values(c, n)))
        throw InvalidArgument("grid: data ended early at node " + std::to_string(n) + " of " + std::to_string(nodes));
  if (!g.values.allFinite()) throw InvalidArgument("grid: non-finite value");
  return g;
}

GridFile read_grid_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("grid: cannot open '" + path + "'");
  return read_grid(in);
}

void write_grid(std::ostream& out, const GridFile& g) {
  std::ostringstream s;
  s.precision(17);
  s << kMagic << " 1\n"
    << "dims " << g.dims << ' ' << g.dims << ' ' << g.dims << '\n'
    << "spacing " << g.spacing << '\n'
    << "radius " << g.radius << '\n'
    << "center " << g.center[0] << ' ' << g.center[1] << ' ' << g.center[2] << '\n'
    << "rep " << g.rep << '\n'
    << "kind " << g.kind << '\n'
    << "components " << g.values.rows() << '\n'
    << "eps " << g.eps << '\n'
    << "data\n";
  for (Eigen::Index n = 0; n < g.values.cols(); ++n) {
    for (Eigen::Index c = 0; c < g.values.rows(); ++c) s << (c ? " " : "") << g.values(c, n);
    s << '\n';
  }
  out << s.str();
}

GridFile to_grid(const ScalarField& f) {
  GridFile g;
  const Domain& d = *f.domain;
  g.dims = d.nodes_per_axis();
  g.spacing = d.spacing();
  g.radius = d.radius();
  g.center = d.center();
  g.values = f.values.transpose();
  return g;
}

GridFile to_grid(const LatticeField& f, const std::string& rep_id) {
  GridFile g;
  const Domain& d = f.domain();
  g.rep = rep_id;
  g.kind = "field";
  g.dims = d.nodes_per_axis();
  g.spacing = d.spacing();
  g.radius = d.radius();
  g.center = d.center();
  g.eps = f.eps();
  g.values.resize(f.phi_data().rows() + f.connection_data().rows(), f.phi_data().cols());
  g.values << f.phi_data(), f.connection_data();
  return g;
}

ScalarField scalar_from_grid(const GridFile& g) {
  if (g.kind != "scalar" || g.values.rows() != 1) throw InvalidArgument("grid: expected a scalar grid");
  return ScalarField{domain_of(g), g.values.row(0).transpose()};
}

LatticeField field_from_grid(const GridFile& g) {
  if (g.kind != "field") throw InvalidArgument("grid: expected a field grid");
  auto rep = std::make_shared<const QuatRep>(rep_by_id(g.rep));
  const int spin = rep->dim_S();
  const int conn = 3 * rep->alg_dim();
  if (g.values.rows() != spin + conn)
    throw InvalidArgument("grid: rep " + g.rep + " needs " + std::to_string(spin + conn) + " components, file has " +
                          std::to_string(g.values.rows()));
  LatticeField f(domain_of(g), rep, g.eps);
  f.phi_data() = g.values.topRows(spin);
  f.connection_data() = g.values.bottomRows(conn);
  return f;
}

}  // namespace swm
