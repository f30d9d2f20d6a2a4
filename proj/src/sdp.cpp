// Copyright 2026 The pepcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pepcert/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <variant>

namespace pepcert {

using Eigen::MatrixXd;
using Eigen::VectorXd;

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal:
      return "optimal";
    case SolveStatus::MaxIterations:
      return "max-iterations";
    case SolveStatus::Stalled:
      return "stalled";
    case SolveStatus::Unbounded:
      return "unbounded";
    case SolveStatus::NumericalError:
      return "numerical-error";
  }
  return "?";
}

void SdpStandardForm::validate() const {
  const auto check = [&](const VectorXd& v, const MatrixXd& M, const std::string& what) {
    if (v.size() != f_dim) throw std::invalid_argument(what + ": vector part has wrong size");
    if (M.rows() != n || M.cols() != n) throw std::invalid_argument(what + ": matrix part has wrong size");
    if (M.size() > 0 && (M - M.transpose()).cwiseAbs().maxCoeff() > 0.0) {
      throw std::invalid_argument(what + ": matrix part is not symmetric");
    }
  };
  check(obj_v, obj_M, "objective");
  for (const auto& r : rows) check(r.v, r.M, "row " + r.id);
  if (init_row >= m()) throw std::invalid_argument("initialization row out of range");
}

SdpStandardForm SdpStandardForm::from_problem(const PepProblem& problem) {
  SdpStandardForm sdp;
  sdp.n = problem.n();
  sdp.f_dim = problem.f_dim;
  sdp.obj_v = problem.objective.dense_v(sdp.f_dim);
  sdp.obj_M = problem.objective.dense_m(sdp.n);
  for (const auto& atom : problem.atoms) {
    SdpRow row;
    row.id = atom.id;
    row.v = atom.expr.dense_v(sdp.f_dim);
    row.M = atom.expr.dense_m(sdp.n);
    row.rhs = -atom.expr.c().to_double();
    row.equality = atom.sense == Sense::Equal;
    sdp.rows.push_back(std::move(row));
  }
  sdp.init_row = problem.init_atom();
  return sdp;
}

bool SolveDiagnostics::within(double tol) const {
  return gap <= tol && primal_residual <= tol && dual_residual <= tol && min_eig_G >= -tol &&
         min_eig_S >= -tol && min_ineq_multiplier >= -tol;
}

namespace {

double min_eig(const MatrixXd& A) {
  if (A.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (A + A.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues()[0];
}

double frob_inner(const MatrixXd& A, const MatrixXd& B) { return A.cwiseProduct(B).sum(); }

double max_abs(const MatrixXd& A) { return A.size() == 0 ? 0.0 : A.cwiseAbs().maxCoeff(); }
double max_abs(const VectorXd& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

MatrixXd sym(const MatrixXd& A) { return 0.5 * (A + A.transpose()); }

}  // namespace

SolveDiagnostics evaluate_solution(const SdpStandardForm& sdp, const VectorXd& F, const MatrixXd& G,
                                   const VectorXd& multipliers) {
  SolveDiagnostics d;
  d.primal_objective = sdp.obj_v.dot(F) + frob_inner(sdp.obj_M, G);
  VectorXd dual_v = sdp.obj_v;
  MatrixXd S = -sdp.obj_M;
  for (int k = 0; k < sdp.m(); ++k) {
    const SdpRow& r = sdp.rows[k];
    const double lam = multipliers[k];
    d.dual_objective += lam * r.rhs;
    const double excess = r.v.dot(F) + frob_inner(r.M, G) - r.rhs;
    d.primal_residual = std::max(d.primal_residual, r.equality ? std::abs(excess) : std::max(0.0, excess));
    dual_v -= lam * r.v;
    S += lam * r.M;
    if (!r.equality) d.min_ineq_multiplier = std::min(d.min_ineq_multiplier, lam);
  }
  d.gap = std::abs(d.primal_objective - d.dual_objective);
  d.dual_residual = max_abs(dual_v);
  d.min_eig_G = min_eig(G);
  d.min_eig_S = min_eig(S);
  return d;
}

namespace {

// The reduced, equilibrated problem in minimization form
//
//   minimize <C, X> + <cF, F>  s.t.  A(X) + B s + Af F = b,  X PSD, s >= 0,
//
// where B selects the inequality rows.
struct Reduced {
  int n = 0;
  int mf = 0;
  int m = 0;
  std::vector<MatrixXd> A;
  MatrixXd Af;
  VectorXd b;
  MatrixXd C;
  VectorXd cF;
  std::vector<int> ineq;  // row index of each slack
  // Maps back to the original problem.
  MatrixXd Q;                // G = Q X Q^T
  std::vector<int> f_keep;   // original F coordinate of each reduced one
  std::vector<int> row_of;   // original row of each reduced row
  VectorXd row_scale;        // r_k
  double obj_scale = 1.0;

  // Row k is vec(A[k]).
  MatrixXd Avec;

  VectorXd apply(const MatrixXd& X) const { return Avec * X.reshaped(); }
  MatrixXd adjoint(const VectorXd& y) const {
    MatrixXd out = MatrixXd::Zero(n, n);
    for (int k = 0; k < m; ++k) out += y[k] * A[k];
    return out;
  }
  VectorXd slack_rows(const VectorXd& s) const {
    VectorXd out = VectorXd::Zero(m);
    for (std::size_t i = 0; i < ineq.size(); ++i) out[ineq[i]] = s[static_cast<int>(i)];
    return out;
  }
  VectorXd ineq_part(const VectorXd& y) const {
    VectorXd out(static_cast<int>(ineq.size()));
    for (std::size_t i = 0; i < ineq.size(); ++i) out[static_cast<int>(i)] = y[ineq[i]];
    return out;
  }
};

struct ReductionFailure {
  SolveStatus status;
  std::string message;
};

// Restricts G to the span of every data matrix (any component orthogonal to it
// is invisible to the objective and to every row), drops free coordinates that
// are linear combinations of others, and equilibrates the rows.
std::variant<Reduced, ReductionFailure> reduce(const SdpStandardForm& sdp) {
  Reduced red;

  // Range of the data matrices.
  MatrixXd K = MatrixXd::Zero(sdp.n, sdp.n);
  const auto accumulate = [&](const MatrixXd& M) {
    const double s = max_abs(M);
    if (s > 0.0) K += (M / s) * (M / s);
  };
  accumulate(sdp.obj_M);
  for (const auto& r : sdp.rows) accumulate(r.M);
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(K);
  const double kmax = sdp.n > 0 ? std::max(es.eigenvalues().maxCoeff(), 0.0) : 0.0;
  std::vector<int> range;
  for (int i = sdp.n - 1; i >= 0; --i) {
    if (es.eigenvalues()[i] > 1e-12 * kmax && kmax > 0.0) range.push_back(i);
  }
  red.n = static_cast<int>(range.size());
  red.Q.resize(sdp.n, red.n);
  for (int j = 0; j < red.n; ++j) red.Q.col(j) = es.eigenvectors().col(range[j]);

  // Independent free coordinates.
  MatrixXd Af_full(sdp.m(), sdp.f_dim);
  for (int k = 0; k < sdp.m(); ++k) Af_full.row(k) = sdp.rows[k].v.transpose();
  int rank = 0;
  if (sdp.m() > 0 && sdp.f_dim > 0) {
    Eigen::ColPivHouseholderQR<MatrixXd> qr(Af_full);
    qr.setThreshold(1e-12);
    rank = static_cast<int>(qr.rank());
    for (int j = 0; j < rank; ++j) red.f_keep.push_back(qr.colsPermutation().indices()[j]);
  }
  std::sort(red.f_keep.begin(), red.f_keep.end());
  red.mf = rank;
  MatrixXd Af_keep(sdp.m(), rank);
  VectorXd c_keep(rank);
  for (int j = 0; j < rank; ++j) {
    Af_keep.col(j) = Af_full.col(red.f_keep[j]);
    c_keep[j] = sdp.obj_v[red.f_keep[j]];
  }
  if (rank < sdp.f_dim) {
    Eigen::ColPivHouseholderQR<MatrixXd> keep_qr(Af_keep);
    for (int j = 0; j < sdp.f_dim; ++j) {
      if (std::find(red.f_keep.begin(), red.f_keep.end(), j) != red.f_keep.end()) continue;
      const VectorXd col = Af_full.col(j);
      const VectorXd t = rank > 0 ? VectorXd(keep_qr.solve(col)) : VectorXd();
      const double expected = rank > 0 ? t.dot(c_keep) : 0.0;
      const double scale = 1.0 + std::abs(sdp.obj_v[j]) + (rank > 0 ? t.cwiseAbs().dot(c_keep.cwiseAbs()) : 0.0);
      if (std::abs(sdp.obj_v[j] - expected) > 1e-9 * scale) {
        return ReductionFailure{SolveStatus::Unbounded,
                                "objective increases along a direction no constraint sees (free coordinate " +
                                    std::to_string(j) + ")"};
      }
    }
  }

  // Rows: drop those that vanish after the reduction.
  for (int k = 0; k < sdp.m(); ++k) {
    const SdpRow& r = sdp.rows[k];
    MatrixXd A = sym(red.Q.transpose() * r.M * red.Q);
    VectorXd a = Af_keep.row(k).transpose();
    const double scale = std::max(max_abs(A), max_abs(a));
    if (scale == 0.0) {
      const bool violated = r.equality ? std::abs(r.rhs) > 0.0 : r.rhs < 0.0;
      if (violated) return ReductionFailure{SolveStatus::NumericalError, "row " + r.id + " is infeasible"};
      continue;
    }
    // Repeated rows (the same inequality seen from two visits of one point)
    // make the Newton system singular; the first copy carries the multiplier.
    const bool repeated = std::any_of(red.row_of.begin(), red.row_of.end(), [&](int j) {
      const SdpRow& o = sdp.rows[j];
      return o.equality == r.equality && o.rhs == r.rhs && o.v == r.v && o.M == r.M;
    });
    if (repeated) continue;
    red.row_of.push_back(k);
    red.A.push_back(A / scale);
    red.b.conservativeResize(red.m + 1);
    red.b[red.m] = r.rhs / scale;
    red.Af.conservativeResize(red.m + 1, rank);
    red.Af.row(red.m) = a.transpose() / scale;
    red.row_scale.conservativeResize(red.m + 1);
    red.row_scale[red.m] = scale;
    if (!r.equality) red.ineq.push_back(red.m);
    ++red.m;
  }
  if (red.m == 0) red.Af.resize(0, rank);
  red.Avec.resize(red.m, red.n * red.n);
  for (int k = 0; k < red.m; ++k) red.Avec.row(k) = red.A[k].reshaped().transpose();

  const MatrixXd C = sym(red.Q.transpose() * sdp.obj_M * red.Q);
  red.obj_scale = std::max({max_abs(C), max_abs(c_keep), 1e-300});
  if (max_abs(C) == 0.0 && max_abs(c_keep) == 0.0) red.obj_scale = 1.0;
  red.C = -C / red.obj_scale;
  red.cF = -c_keep / red.obj_scale;
  return red;
}

struct Iterate {
  MatrixXd X, Z;
  VectorXd s, z, F, y;
};

struct Direction {
  MatrixXd dX, dZ;
  VectorXd ds, dz, dF, dy;
};

// Largest step keeping X + a dX PSD, given the Cholesky factor of X.
double psd_step(const Eigen::LLT<MatrixXd>& llt, const MatrixXd& dX) {
  if (dX.rows() == 0) return std::numeric_limits<double>::infinity();
  const MatrixXd& L = llt.matrixL();
  MatrixXd T = L.triangularView<Eigen::Lower>().solve(dX);
  T = L.triangularView<Eigen::Lower>().solve(T.transpose().eval());
  const double lmin = min_eig(T);
  return lmin < 0.0 ? -1.0 / lmin : std::numeric_limits<double>::infinity();
}

double lp_step(const VectorXd& x, const VectorXd& dx) {
  double a = std::numeric_limits<double>::infinity();
  for (int i = 0; i < x.size(); ++i) {
    if (dx[i] < 0.0) a = std::min(a, -x[i] / dx[i]);
  }
  return a;
}

class Ipm {
 public:
  Ipm(const SdpStandardForm& sdp, const Reduced& red, const SolverOptions& opt)
      : sdp_(sdp), red_(red), opt_(opt) {}

  PrimalDualSolution run() {
    init();
    PrimalDualSolution best;
    double best_merit = std::numeric_limits<double>::infinity();
    SolveStatus status = SolveStatus::MaxIterations;
    std::string message = "iteration limit reached";
    int iter = 0;
    for (;; ++iter) {
      PrimalDualSolution cur = unscale(iter);
      const double merit = merit_of(cur.diagnostics);
      if (merit < best_merit) {
        best_merit = merit;
        best = cur;
      }
      if (cur.diagnostics.within(0.1 * opt_.tol)) {
        status = SolveStatus::Optimal;
        break;
      }
      if (iter >= opt_.max_iter) break;
      if (it_.X.trace() + it_.s.sum() + max_abs(it_.F) > 1e12) {
        status = SolveStatus::Unbounded;
        message = "primal iterates diverge";
        break;
      }
      const StepOutcome out = step();
      if (out == StepOutcome::Breakdown) {
        status = SolveStatus::Stalled;
        message = "scaling matrices lost definiteness";
        break;
      }
      if (out == StepOutcome::Tiny) {
        status = SolveStatus::Stalled;
        message = "step lengths collapsed";
        break;
      }
    }
    if (status != SolveStatus::Unbounded) {
      if (best.diagnostics.within(opt_.tol)) {
        status = SolveStatus::Optimal;
        message.clear();
      }
    }
    best.status = status;
    best.message = message;
    return best;
  }

 private:
  enum class StepOutcome { Ok, Tiny, Breakdown };

  int nu() const { return red_.n + static_cast<int>(red_.ineq.size()); }

  void init() {
    const int n = red_.n;
    const int mi = static_cast<int>(red_.ineq.size());
    double xi = std::max(10.0, std::sqrt(static_cast<double>(std::max(n, 1))));
    double eta = xi;
    for (int k = 0; k < red_.m; ++k) {
      const double an = red_.A[k].norm();
      xi = std::max(xi, std::max(n, 1) * (1.0 + std::abs(red_.b[k])) / (1.0 + an));
      eta = std::max(eta, an);
    }
    eta = std::max(eta, red_.C.norm());
    it_.X = xi * MatrixXd::Identity(n, n);
    it_.Z = eta * MatrixXd::Identity(n, n);
    it_.s = VectorXd::Constant(mi, xi);
    it_.z = VectorXd::Constant(mi, eta);
    it_.F = VectorXd::Zero(red_.mf);
    it_.y = VectorXd::Zero(red_.m);
  }

  static double merit_of(const SolveDiagnostics& d) {
    return std::max({d.gap, d.primal_residual, d.dual_residual, -d.min_eig_G, -d.min_eig_S,
                     -d.min_ineq_multiplier});
  }

  PrimalDualSolution unscale(int iter) const {
    PrimalDualSolution sol;
    sol.F = VectorXd::Zero(sdp_.f_dim);
    for (int j = 0; j < red_.mf; ++j) sol.F[red_.f_keep[j]] = it_.F[j];
    sol.G = sym(red_.Q * it_.X * red_.Q.transpose());
    sol.multipliers = VectorXd::Zero(sdp_.m());
    for (int k = 0; k < red_.m; ++k) {
      sol.multipliers[red_.row_of[k]] = -it_.y[k] * red_.obj_scale / red_.row_scale[k];
    }
    sol.slack = -sdp_.obj_M;
    for (int k = 0; k < sdp_.m(); ++k) {
      sol.lambda[sdp_.rows[k].id] = sol.multipliers[k];
      sol.slack += sol.multipliers[k] * sdp_.rows[k].M;
    }
    sol.tau = sdp_.init_row >= 0 ? sol.multipliers[sdp_.init_row] : std::numeric_limits<double>::quiet_NaN();
    sol.diagnostics = evaluate_solution(sdp_, sol.F, sol.G, sol.multipliers);
    sol.diagnostics.iterations = iter;
    return sol;
  }

  StepOutcome step() {
    const int n = red_.n;
    const int m = red_.m;
    const int mf = red_.mf;
    const int mi = static_cast<int>(red_.ineq.size());
    const Iterate& x = it_;

    Eigen::LLT<MatrixXd> llt_x(x.X), llt_z(x.Z);
    if (n > 0 && (llt_x.info() != Eigen::Success || llt_z.info() != Eigen::Success)) {
      return StepOutcome::Breakdown;
    }

    // Nesterov-Todd scaling: W Z W = X, R^{-1} X R^{-T} = R^T Z R = diag(d).
    MatrixXd R(n, n), Rinv(n, n);
    VectorXd d(n);
    if (n > 0) {
      const MatrixXd Lx = llt_x.matrixL();
      const MatrixXd Lz = llt_z.matrixL();
      Eigen::JacobiSVD<MatrixXd> svd(Lz.transpose() * Lx, Eigen::ComputeFullU | Eigen::ComputeFullV);
      d = svd.singularValues();
      if (d.minCoeff() <= 0.0) return StepOutcome::Breakdown;
      const VectorXd dm = d.cwiseSqrt().cwiseInverse();
      R = Lx * svd.matrixV() * dm.asDiagonal();
      Rinv = d.cwiseSqrt().asDiagonal() * svd.matrixV().transpose() *
             Lx.triangularView<Eigen::Lower>().solve(MatrixXd::Identity(n, n));
    }
    const MatrixXd W = R * R.transpose();

    // Residuals.
    const VectorXd rp = red_.b - red_.apply(x.X) - red_.slack_rows(x.s) - red_.Af * x.F;
    const MatrixXd Rd = red_.C - red_.adjoint(x.y) - x.Z;
    const VectorXd rds = -red_.ineq_part(x.y) - x.z;
    const VectorXd rdf = red_.cF - red_.Af.transpose() * x.y;
    const double mu = (frob_inner(x.X, x.Z) + x.s.dot(x.z)) / std::max(nu(), 1);

    // Schur complement with the free-variable border.
    MatrixXd WAW(m, n * n);
    for (int l = 0; l < m; ++l) WAW.row(l) = (W * red_.A[l] * W).reshaped().transpose();
    MatrixXd KKT = MatrixXd::Zero(m + mf, m + mf);
    KKT.topLeftCorner(m, m) = sym(red_.Avec * WAW.transpose());
    const VectorXd sz = x.s.cwiseQuotient(x.z);
    for (int i = 0; i < mi; ++i) KKT(red_.ineq[i], red_.ineq[i]) += sz[i];
    KKT.topRightCorner(m, mf) = red_.Af;
    KKT.bottomLeftCorner(mf, m) = red_.Af.transpose();
    Eigen::PartialPivLU<MatrixXd> lu(KKT);
    const MatrixXd WRdW = W * Rd * W;
    const VectorXd A_WRdW = red_.apply(WRdW);

    const auto solve_dir = [&](const MatrixXd& Rc, const VectorXd& kc) {
      Direction dir;
      MatrixXd K(n, n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) K(i, j) = 2.0 * Rc(i, j) / (d[i] + d[j]);
      }
      const MatrixXd RKR = R * K * R.transpose();
      const VectorXd kz = kc.cwiseQuotient(x.z);
      VectorXd rhs(m + mf);
      rhs.head(m) = rp - red_.apply(RKR) + A_WRdW - red_.slack_rows(kz - sz.cwiseProduct(rds));
      rhs.tail(mf) = rdf;
      const VectorXd sol = lu.solve(rhs);
      dir.dy = sol.head(m);
      dir.dF = sol.tail(mf);
      dir.dZ = sym(Rd - red_.adjoint(dir.dy));
      dir.dX = sym(RKR - W * dir.dZ * W);
      dir.dz = rds - red_.ineq_part(dir.dy);
      dir.ds = (kc - x.s.cwiseProduct(dir.dz)).cwiseQuotient(x.z);
      return dir;
    };
    const auto step_lengths = [&](const Direction& dir) {
      const double ap = std::min(psd_step(llt_x, dir.dX), lp_step(x.s, dir.ds));
      const double ad = std::min(psd_step(llt_z, dir.dZ), lp_step(x.z, dir.dz));
      return std::pair{ap, ad};
    };

    // Predictor.
    const MatrixXd D2 = d.cwiseProduct(d).asDiagonal();
    const Direction aff = solve_dir(-D2, -x.s.cwiseProduct(x.z));
    if (!aff.dy.allFinite() || !aff.dX.allFinite()) return StepOutcome::Breakdown;
    auto [ap_a, ad_a] = step_lengths(aff);
    ap_a = std::min(1.0, ap_a);
    ad_a = std::min(1.0, ad_a);
    const double mu_aff = (frob_inner(x.X + ap_a * aff.dX, x.Z + ad_a * aff.dZ) +
                           (x.s + ap_a * aff.ds).dot(x.z + ad_a * aff.dz)) /
                          std::max(nu(), 1);
    const double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);

    // Corrector.
    const MatrixXd dXs = Rinv * aff.dX * Rinv.transpose();
    const MatrixXd dZs = R.transpose() * aff.dZ * R;
    const MatrixXd Rc = sigma * mu * MatrixXd::Identity(n, n) - D2 - sym(dXs * dZs);
    const VectorXd kc =
        VectorXd::Constant(mi, sigma * mu) - x.s.cwiseProduct(x.z) - aff.ds.cwiseProduct(aff.dz);
    const Direction dir = solve_dir(Rc, kc);
    if (!dir.dy.allFinite() || !dir.dX.allFinite()) return StepOutcome::Breakdown;
    auto [ap, ad] = step_lengths(dir);
    const double gamma = 0.9 + 0.09 * std::min(ap_a, ad_a);
    ap = std::min(1.0, gamma * ap);
    ad = std::min(1.0, gamma * ad);
    if (ap < 1e-10 && ad < 1e-10) return StepOutcome::Tiny;

    it_.X = sym(x.X + ap * dir.dX);
    it_.s = x.s + ap * dir.ds;
    it_.F = x.F + ap * dir.dF;
    it_.Z = sym(x.Z + ad * dir.dZ);
    it_.z = x.z + ad * dir.dz;
    it_.y = x.y + ad * dir.dy;
    return StepOutcome::Ok;
  }

  const SdpStandardForm& sdp_;
  const Reduced& red_;
  SolverOptions opt_;
  Iterate it_;
};

}  // namespace

PrimalDualSolution InteriorPointSolver::solve(const SdpStandardForm& sdp, const SolverOptions& options) const {
  sdp.validate();
  if (!(options.tol > 0.0) || options.max_iter < 1) throw std::invalid_argument("invalid solver options");
  auto reduced = reduce(sdp);
  if (auto* fail = std::get_if<ReductionFailure>(&reduced)) {
    PrimalDualSolution sol;
    sol.status = fail->status;
    sol.message = fail->message;
    sol.F = VectorXd::Zero(sdp.f_dim);
    sol.G = MatrixXd::Zero(sdp.n, sdp.n);
    sol.multipliers = VectorXd::Zero(sdp.m());
    sol.slack = -sdp.obj_M;
    sol.tau = std::numeric_limits<double>::quiet_NaN();
    return sol;
  }
  Ipm ipm(sdp, std::get<Reduced>(reduced), options);
  return ipm.run();
}

PrimalDualSolution solve(const PepProblem& problem, const SdpSolver& solver, const SolverOptions& options) {
  if (!(options.tol > 0.0 && options.tol <= 1e-2)) throw std::invalid_argument("tol must lie in (0, 1e-2]");
  if (problem.init_atom() < 0) {
    PrimalDualSolution sol;
    sol.status = SolveStatus::Unbounded;
    sol.message = "problem has no initialization constraint; the worst case is unbounded";
    sol.tau = std::numeric_limits<double>::quiet_NaN();
    return sol;
  }
  return solver.solve(SdpStandardForm::from_problem(problem), options);
}

PrimalDualSolution solve(const PepProblem& problem, double tol, int max_iter) {
  return solve(problem, InteriorPointSolver{}, SolverOptions{tol, max_iter});
}

}  // namespace pepcert
