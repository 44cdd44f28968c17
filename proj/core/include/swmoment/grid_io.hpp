#pragma once

#include <iosfwd>
#include <string>

#include <Eigen/Core>

#include "swmoment/lattice.hpp"

namespace swm {

/// Text grid format:
///
///   swmoment-grid 1
///   dims <n> <n> <n>
///   spacing <h>
///   radius <R>
///   center <x> <y> <z>
///   rep <id>
///   kind scalar | field
///   components <c>
///   eps <eps>
///   data
///   <c values per node, one node per line, nodes in row-major (i, j, k) order>
///
/// A field node holds the spinor followed by the connection rows A_1, A_2, A_3.
struct GridFile {
  std::string rep = "trivial";
  std::string kind = "scalar";
  int dims = 0;
  double spacing = 0.0;
  double radius = 0.0;
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  double eps = 1.0;
  Eigen::MatrixXd values;  // components x nodes
};

GridFile read_grid(std::istream& in);
GridFile read_grid_file(const std::string& path);
void write_grid(std::ostream& out, const GridFile& g);

GridFile to_grid(const ScalarField& f);
GridFile to_grid(const LatticeField& f, const std::string& rep_id);
ScalarField scalar_from_grid(const GridFile& g);
LatticeField field_from_grid(const GridFile& g);

}  // namespace swm
