#include "swmoment/representation.hpp"

#include <cmath>
#include <complex>
#include <utility>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "swmoment/errors.hpp"

namespace swm {

namespace {

using Mat = Eigen::MatrixXd;

double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// Real 4x4 matrix of q -> q c for a complex scalar c = a + b i inside H.
Eigen::Matrix4d right_complex(std::complex<double> c) { return right_mult_matrix(Quat{c.real(), c.imag(), 0, 0}); }

Mat block_diag_repeat(const Eigen::Matrix4d& m, int n) {
  Mat out = Mat::Zero(4 * n, 4 * n);
  for (int s = 0; s < n; ++s) out.block<4, 4>(4 * s, 4 * s) = m;
  return out;
}

// Action of a complex k x k matrix X on H^k by (X Psi)_j = sum_l Psi_l X_jl.
Mat complex_right_action(const Eigen::MatrixXcd& x) {
  const int k = static_cast<int>(x.rows());
  Mat out = Mat::Zero(4 * k, 4 * k);
  for (int j = 0; j < k; ++j)
    for (int l = 0; l < k; ++l)
      if (x(j, l) != 0.0) out.block<4, 4>(4 * j, 4 * l) = right_complex(x(j, l));
  return out;
}

Mat embed(const Mat& m, int offset, int total) {
  Mat out = Mat::Zero(total, total);
  out.block(offset, offset, m.rows(), m.cols()) = m;
  return out;
}

Mat left_module(int a, int slots) {
  const Quat units[3] = {Quat::i(), Quat::j(), Quat::k()};
  return block_diag_repeat(left_mult_matrix(units[a]), slots);
}

// (1, i, j, k) coordinates to the C^2 column (z, w) of q = z + j w.
Eigen::Vector2cd to_c2(const Eigen::Vector4d& v) {
  return Eigen::Vector2cd(std::complex<double>(v[0], v[1]), std::complex<double>(v[2], -v[3]));
}

}  // namespace

double RepValidation::worst() const {
  return std::max(std::max(module_axioms, skew), std::max(h_linearity, homomorphism));
}

QuatRep::QuatRep(std::string name, LieAlg alg, Mat I, Mat J, Mat K, std::vector<Mat> rho)
    : name_{std::move(name)}, alg_{std::move(alg)}, dim_S_{static_cast<int>(I.rows())}, rho_{std::move(rho)} {
  gam_[0] = std::move(I);
  gam_[1] = std::move(J);
  gam_[2] = std::move(K);
  if (dim_S_ % 4 != 0) throw InvalidArgument("QuatRep " + name_ + ": dim_S must be a multiple of 4");
  for (const auto& g : gam_)
    if (g.rows() != dim_S_ || g.cols() != dim_S_) throw DimensionMismatch("QuatRep " + name_ + ": I, J, K shape");
  if (static_cast<int>(rho_.size()) != alg_.dim())
    throw DimensionMismatch("QuatRep " + name_ + ": need one generator per basis element of " + alg_.name());
  for (const auto& r : rho_)
    if (r.rows() != dim_S_ || r.cols() != dim_S_) throw DimensionMismatch("QuatRep " + name_ + ": generator shape");
}

void QuatRep::add_flavor(std::string name, Mat gen) {
  if (gen.rows() != dim_S_ || gen.cols() != dim_S_) throw DimensionMismatch("QuatRep " + name_ + ": flavor shape");
  flavor_names_.push_back(std::move(name));
  flavor_.push_back(std::move(gen));
}

void QuatRep::check_spinor(const Spinor& phi, const char* what) const {
  if (phi.size() != dim_S_)
    throw DimensionMismatch(std::string(what) + ": spinor has " + std::to_string(phi.size()) +
                            " coefficients, rep " + name_ + " needs " + std::to_string(dim_S_));
}

void QuatRep::check_moment(const MomentValue& m, const char* what) const {
  if (m.cols() != alg_.dim())
    throw DimensionMismatch(std::string(what) + ": moment value has " + std::to_string(m.cols()) +
                            " columns, rep " + name_ + " needs " + std::to_string(alg_.dim()));
}

RepValidation QuatRep::validate() const {
  RepValidation v;
  const Mat id = Mat::Identity(dim_S_, dim_S_);
  for (const auto& g : gam_) {
    v.module_axioms = std::max(v.module_axioms, max_abs(g * g + id));
    v.module_axioms = std::max(v.module_axioms, max_abs(g.transpose() * g - id));
  }
  v.module_axioms = std::max(v.module_axioms, max_abs(gam_[0] * gam_[1] - gam_[2]));
  const int n = alg_.dim();
  for (int a = 0; a < n; ++a) {
    v.skew = std::max(v.skew, max_abs(rho_[a] + rho_[a].transpose()));
    for (const auto& g : gam_) v.h_linearity = std::max(v.h_linearity, max_abs(rho_[a] * g - g * rho_[a]));
    for (int b = a + 1; b < n; ++b) {
      Mat d = rho_[a] * rho_[b] - rho_[b] * rho_[a];
      for (int e = 0; e < n; ++e) d -= alg_.structure_constant(a, b, e) * rho_[e];
      v.homomorphism = std::max(v.homomorphism, max_abs(d));
    }
  }
  return v;
}

Spinor gamma(const QuatRep& rep, const ImQuat& v, const Spinor& phi) {
  rep.check_spinor(phi, "gamma");
  return v.x * (rep.gamma_op(0) * phi) + v.y * (rep.gamma_op(1) * phi) + v.z * (rep.gamma_op(2) * phi);
}

MomentValue moment_polarized(const QuatRep& rep, const Spinor& phi, const Spinor& psi) {
  rep.check_spinor(phi, "moment_polarized");
  rep.check_spinor(psi, "moment_polarized");
  const int n = rep.alg_dim();
  MomentValue m(3, n);
  Spinor gt_phi[3];
  Spinor gt_psi[3];
  for (int a = 0; a < 3; ++a) {
    gt_phi[a] = rep.gamma_op(a).transpose() * phi;
    gt_psi[a] = rep.gamma_op(a).transpose() * psi;
  }
  for (int b = 0; b < n; ++b) {
    const Spinor r_phi = rep.rho(b) * phi;
    const Spinor r_psi = rep.rho(b) * psi;
    for (int a = 0; a < 3; ++a) m(a, b) = 0.25 * (r_phi.dot(gt_psi[a]) + r_psi.dot(gt_phi[a]));
  }
  return m;
}

MomentValue moment(const QuatRep& rep, const Spinor& phi) {
  rep.check_spinor(phi, "moment");
  const int n = rep.alg_dim();
  MomentValue m(3, n);
  Spinor gt[3];
  for (int a = 0; a < 3; ++a) gt[a] = rep.gamma_op(a).transpose() * phi;
  for (int b = 0; b < n; ++b) {
    const Spinor r = rep.rho(b) * phi;
    for (int a = 0; a < 3; ++a) m(a, b) = 0.5 * r.dot(gt[a]);
  }
  return m;
}

Mat bold_gamma(const QuatRep& rep, const MomentValue& zeta) {
  rep.check_moment(zeta, "bold_gamma");
  Mat out = Mat::Zero(rep.dim_S(), rep.dim_S());
  for (int b = 0; b < rep.alg_dim(); ++b) {
    Mat g = zeta(0, b) * rep.gamma_op(0) + zeta(1, b) * rep.gamma_op(1) + zeta(2, b) * rep.gamma_op(2);
    out.noalias() += g * rep.rho(b);
  }
  return out;
}

Spinor gamma_phi(const QuatRep& rep, const Spinor& phi, const MomentValue& zeta) {
  rep.check_spinor(phi, "gamma_phi");
  rep.check_moment(zeta, "gamma_phi");
  Spinor out = Spinor::Zero(rep.dim_S());
  for (int b = 0; b < rep.alg_dim(); ++b) {
    if (zeta.col(b).isZero(0.0)) continue;
    const Spinor r = rep.rho(b) * phi;
    for (int a = 0; a < 3; ++a)
      if (zeta(a, b) != 0.0) out.noalias() += zeta(a, b) * (rep.gamma_op(a) * r);
  }
  return out;
}

Mat gamma_phi_matrix(const QuatRep& rep, const Spinor& phi) {
  rep.check_spinor(phi, "gamma_phi_matrix");
  const int n = rep.alg_dim();
  Mat out(rep.dim_S(), 3 * n);
  for (int b = 0; b < n; ++b) {
    const Spinor r = rep.rho(b) * phi;
    for (int a = 0; a < 3; ++a) out.col(a * n + b) = rep.gamma_op(a) * r;
  }
  return out;
}

Eigen::VectorXd flatten(const MomentValue& m) {
  Eigen::VectorXd v(m.size());
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < m.cols(); ++b) v[a * m.cols() + b] = m(a, b);
  return v;
}

MomentValue unflatten(const Eigen::VectorXd& v, int alg_dim) {
  if (v.size() != 3 * alg_dim) throw DimensionMismatch("unflatten: expected 3 * dim(g) entries");
  MomentValue m(3, alg_dim);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < alg_dim; ++b) m(a, b) = v[a * alg_dim + b];
  return m;
}

Spinor apply_quaternion(const QuatRep& rep, const Quat& p, const Spinor& phi) {
  rep.check_spinor(phi, "apply_quaternion");
  return p.w * phi + p.x * (rep.gamma_op(0) * phi) + p.y * (rep.gamma_op(1) * phi) + p.z * (rep.gamma_op(2) * phi);
}

Spinor gauge_transform(const QuatRep& rep, const Coeffs& coeffs, const Spinor& phi) {
  rep.check_spinor(phi, "gauge_transform");
  if (coeffs.size() != rep.alg_dim()) throw DimensionMismatch("gauge_transform: coefficient count");
  Mat gen = Mat::Zero(rep.dim_S(), rep.dim_S());
  for (int b = 0; b < rep.alg_dim(); ++b) gen += coeffs[b] * rep.rho(b);
  return gen.exp() * phi;
}

QuatRep rep_trivial() {
  return QuatRep{"trivial", LieAlg::trivial(), left_module(0, 1), left_module(1, 1), left_module(2, 1), {}};
}

QuatRep rep_classical() {
  QuatRep rep{"classical", su_basis(1), left_module(0, 1), left_module(1, 1), left_module(2, 1),
              {right_complex({0.0, 1.0})}};
  rep.set_blocks({{"H", 0, 4}});
  return rep;
}

QuatRep rep_multispinor(int n) {
  if (n < 1) throw InvalidArgument("rep_multispinor: n must be >= 1");
  QuatRep rep{"multispinor-" + std::to_string(n), su_basis(1), left_module(0, n), left_module(1, n),
              left_module(2, n), {block_diag_repeat(right_complex({0.0, 1.0}), n)}};
  std::vector<RepBlock> blocks;
  for (int s = 0; s < n; ++s) blocks.push_back({"H" + std::to_string(s), 4 * s, 4});
  rep.set_blocks(std::move(blocks));
  return rep;
}

QuatRep rep_uk(int k) {
  if (k < 1) throw InvalidArgument("rep_uk: k must be >= 1");
  LieAlg alg = u_basis(k);
  std::vector<Mat> rho;
  for (const auto& x : alg.matrices()) rho.push_back(complex_right_action(x));
  QuatRep rep{"u" + std::to_string(k) + "-fundamental", std::move(alg), left_module(0, k), left_module(1, k),
              left_module(2, k), std::move(rho)};
  rep.set_blocks({{"H(x)C^" + std::to_string(k), 0, 4 * k}});
  return rep;
}

QuatRep rep_adjoint(const LieAlg& alg) {
  const int n = alg.dim();
  std::vector<Mat> rho;
  for (int c = 0; c < n; ++c) {
    Coeffs e = Coeffs::Zero(n);
    e[c] = 1.0;
    rho.push_back(Eigen::kroneckerProduct(alg.ad(e), Eigen::Matrix4d::Identity()).eval());
  }
  QuatRep rep{"adjoint-" + alg.name(), alg, left_module(0, n), left_module(1, n), left_module(2, n), std::move(rho)};
  rep.set_blocks({{alg.name() + "(x)H", 0, 4 * n}});
  rep.set_adjoint_block({0, n});
  return rep;
}

QuatRep rep_adhm(int r, int k) {
  if (r < 1 || k < 1) throw InvalidArgument("rep_adhm: r and k must be >= 1");
  LieAlg alg = u_basis(k);
  const int n = alg.dim();
  const int hom = 4 * k * r;
  const int total = hom + 4 * n;
  std::vector<Mat> rho;
  for (int c = 0; c < n; ++c) {
    Mat m = Mat::Zero(total, total);
    const Mat act = complex_right_action(alg.matrices()[c]);
    for (int s = 0; s < r; ++s) m.block(4 * k * s, 4 * k * s, 4 * k, 4 * k) = act;
    Coeffs e = Coeffs::Zero(n);
    e[c] = 1.0;
    m.block(hom, hom, 4 * n, 4 * n) = Eigen::kroneckerProduct(alg.ad(e), Eigen::Matrix4d::Identity());
    rho.push_back(std::move(m));
  }
  Mat g[3];
  for (int a = 0; a < 3; ++a) g[a] = left_module(a, total / 4);
  QuatRep rep{"adhm-" + std::to_string(r) + "-" + std::to_string(k), std::move(alg), g[0], g[1], g[2],
              std::move(rho)};

  // su(r) acts on Hom_C(C^r, -) by precomposition: (f Y)(e_t) = sum_s f(e_s) Y_st.
  if (r > 1) {
    const LieAlg flav = su_basis(r);
    for (int y = 0; y < flav.dim(); ++y) {
      const Eigen::MatrixXcd& Y = flav.matrices()[y];
      Mat m = Mat::Zero(total, total);
      for (int t = 0; t < r; ++t)
        for (int s = 0; s < r; ++s)
          if (Y(s, t) != 0.0)
            for (int j = 0; j < k; ++j)
              m.block<4, 4>(4 * (k * t + j), 4 * (k * s + j)) = -right_complex(Y(s, t));
      rep.add_flavor("su(" + std::to_string(r) + ")_" + std::to_string(y), std::move(m));
    }
  }
  const Quat units[3] = {Quat::i(), Quat::j(), Quat::k()};
  const char* names[3] = {"sp(1)_i", "sp(1)_j", "sp(1)_k"};
  for (int a = 0; a < 3; ++a)
    rep.add_flavor(names[a], embed(block_diag_repeat(-right_mult_matrix(units[a]), n), hom, total));

  std::vector<RepBlock> blocks{{"hom", 0, hom}};
  if (n > 1) blocks.push_back({"adjoint-su", hom, 4 * (n - 1)});
  blocks.push_back({"adjoint-center", hom + 4 * (n - 1), 4});
  rep.set_blocks(std::move(blocks));
  rep.set_adjoint_block({hom, n});
  return rep;
}

Eigen::Matrix2cd classical_matrix_form(const Quat& q) {
  const std::complex<double> z{q.w, q.x};
  const std::complex<double> w{q.y, -q.z};
  const double zz = std::norm(z);
  const double ww = std::norm(w);
  Eigen::Matrix2cd m;
  m << zz - ww, 2.0 * z * std::conj(w), 2.0 * std::conj(z) * w, ww - zz;
  return 0.5 * m;
}

Eigen::Matrix2cd classical_matrix_via_moment(const QuatRep& classical, const Quat& q) {
  if (classical.dim_S() != 4 || classical.alg_dim() != 1)
    throw InvalidArgument("classical_matrix_via_moment: needs the classical rep");
  const Mat t = bold_gamma(classical, moment(classical, q.coeffs()));
  Eigen::Matrix2cd m;
  m.col(0) = to_c2(t.col(0));
  m.col(1) = to_c2(t.col(2));
  return m;
}

MomentValue adjoint_mu_explicit(const LieAlg& alg, const Spinor& xi) {
  const int n = alg.dim();
  if (xi.size() != 4 * n) throw DimensionMismatch("adjoint_mu_explicit: spinor must have 4 dim(g) coefficients");
  Coeffs comp[4];
  for (int q = 0; q < 4; ++q) {
    comp[q].resize(n);
    for (int b = 0; b < n; ++b) comp[q][b] = xi[4 * b + q];
  }
  MomentValue m(3, n);
  m.row(0) = (alg.bracket(comp[0], comp[1]) + alg.bracket(comp[2], comp[3])).transpose();
  m.row(1) = (alg.bracket(comp[0], comp[2]) + alg.bracket(comp[3], comp[1])).transpose();
  m.row(2) = (alg.bracket(comp[0], comp[3]) + alg.bracket(comp[1], comp[2])).transpose();
  return m;
}

Torus diagonal_torus(const LieAlg& alg) {
  const int k = alg.matrix_size();
  if (k == 0) throw InvalidArgument("diagonal_torus: algebra has no matrix realization");
  Torus t;
  t.basis.resize(k, alg.dim());
  for (int j = 0; j < k; ++j) {
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(k, k);
    h(j, j) = std::complex<double>(0, 1);
    t.basis.row(j) = alg.from_matrix(h).transpose();
  }
  return t;
}

MomentValue pi_torus(const QuatRep& rep, const Torus& t, const MomentValue& m) {
  rep.check_moment(m, "pi_torus");
  if (t.basis.cols() != rep.alg_dim()) throw DimensionMismatch("pi_torus: torus lives in a different algebra");
  const Mat gram = t.basis * t.basis.transpose();
  if (max_abs(gram - Mat::Identity(gram.rows(), gram.cols())) > 1e-10)
    throw InvalidArgument("pi_torus: torus basis is not orthonormal");
  return m * t.basis.transpose() * t.basis;
}

std::vector<std::string> builtin_rep_ids() {
  return {"trivial", "classical", "su2-adjoint", "su3-adjoint", "adhm12", "multispinor-<n>", "uk-<k>"};
}

QuatRep rep_by_id(const std::string& id) {
  auto suffix = [&](const std::string& prefix) -> int {
    const std::string tail = id.substr(prefix.size());
    if (tail.empty() || tail.size() > 3 || tail.find_first_not_of("0123456789") != std::string::npos)
      throw InvalidArgument("unknown representation id '" + id + "'");
    return std::stoi(tail);
  };
  if (id == "trivial") return rep_trivial();
  if (id == "classical") return rep_classical();
  if (id == "su2-adjoint") return rep_adjoint(su_basis(2));
  if (id == "su3-adjoint") return rep_adjoint(su_basis(3));
  if (id == "adhm12") return rep_adhm(1, 2);
  if (id.rfind("multispinor-", 0) == 0) return rep_multispinor(suffix("multispinor-"));
  if (id.rfind("uk-", 0) == 0) return rep_uk(suffix("uk-"));
  throw InvalidArgument("unknown representation id '" + id + "'");
}

}  // namespace swm
