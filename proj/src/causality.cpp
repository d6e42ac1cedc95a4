#include "rqft/causality.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace rqft {

namespace {

void require_same_frame(const RelationalField& a, const RelationalField& b) {
  if (a.frame_ptr() != b.frame_ptr()) throw FrameMismatch("both preparations must use the same frame observable");
}

double comm(const Mat& A, const Mat& B) { return opnorm(A * B - B * A); }

Verdict decide(double r, double tol) { return r <= tol ? Verdict::verified : Verdict::failed; }

// Hermitian matrices <-> real coordinates in a Hilbert-Schmidt orthonormal basis
RVec herm_to_coords(const Mat& H) {
  const long d = H.rows();
  RVec x(d * d);
  long k = 0;
  for (long i = 0; i < d; ++i) x(k++) = H(i, i).real();
  for (long i = 0; i < d; ++i)
    for (long j = i + 1; j < d; ++j) {
      x(k++) = std::sqrt(2.0) * H(i, j).real();
      x(k++) = std::sqrt(2.0) * H(i, j).imag();
    }
  return x;
}

Mat coords_to_herm(const RVec& x, long d) {
  Mat H = Mat::Zero(d, d);
  long k = 0;
  for (long i = 0; i < d; ++i) H(i, i) = x(k++);
  for (long i = 0; i < d; ++i)
    for (long j = i + 1; j < d; ++j) {
      const double re = x(k++) / std::sqrt(2.0), im = x(k++) / std::sqrt(2.0);
      H(i, j) = cplx(re, im);
      H(j, i) = cplx(re, -im);
    }
  return H;
}

// coefficients of the real-linear functionals omega -> Re/Im Tr[omega C] in the coordinates above
void constraint_rows(const Mat& C, Eigen::Ref<RVec> re, Eigen::Ref<RVec> im) {
  const long d = C.rows();
  const double r2 = 1.0 / std::sqrt(2.0);
  long k = 0;
  for (long i = 0; i < d; ++i, ++k) {
    re(k) = C(i, i).real();
    im(k) = C(i, i).imag();
  }
  const cplx I(0.0, 1.0);
  for (long i = 0; i < d; ++i)
    for (long j = i + 1; j < d; ++j) {
      cplx a = (C(j, i) + C(i, j)) * r2;
      cplx b = (I * C(j, i) - I * C(i, j)) * r2;
      re(k) = a.real();
      im(k) = a.imag();
      ++k;
      re(k) = b.real();
      im(k) = b.imag();
      ++k;
    }
}

// Euclidean projection of a vector onto the probability simplex
RVec simplex_projection(const RVec& v) {
  std::vector<double> u(v.data(), v.data() + v.size());
  std::sort(u.begin(), u.end(), std::greater<>());
  double css = 0.0, theta = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    css += u[i];
    double t = (css - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0) theta = t;
  }
  return (v.array() - theta).cwiseMax(0.0).matrix();
}

Mat project_states(const Mat& H) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (H + H.adjoint()));
  RVec lam = simplex_projection(es.eigenvalues());
  return es.eigenvectors() * lam.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

bool r_spacelike(const OrientedFrame& of1, const OrientedFrame& of2, const Tolerances& tol) {
  if (of1.frame != of2.frame) throw FrameMismatch("both preparations must use the same frame observable");
  const Model& m = of1.frame->model();
  Region s1 = support(m, born_measure(of1), tol), s2 = support(m, born_measure(of2), tol);
  if (s1.empty() || s2.empty()) return false;
  return m.region_spacelike(s1, s2);
}

CausalReport check_r_causal(const RelationalField& rf1, const RelationalField& rf2, const Mat& omega1,
                            const Mat& omega2, const Tolerances& tol) {
  require_same_frame(rf1, rf2);
  CausalReport r{"r-causal"};
  r.premise_met = r_spacelike({rf1.frame_ptr(), omega1}, {rf2.frame_ptr(), omega2}, tol);
  Mat A = rf1.observable(omega1), B = rf2.observable(omega2);
  r.pairs_checked = 1;
  r.max_residual = comm(A, B);
  r.max_adjoint_residual = comm(A.adjoint(), B);
  r.verdict = r.premise_met ? decide(std::max(r.max_residual, r.max_adjoint_residual), tol.eq) : Verdict::vacuous;
  return r;
}

CausalReport check_r_microcausal(const RelationalField& rf1, const RelationalField& rf2, const Mat& omega1,
                                 const Mat& omega2, const Tolerances& tol) {
  require_same_frame(rf1, rf2);
  const Model& m = rf1.model();
  CausalReport r{"r-microcausal"};
  Disintegration D1 = disintegrate(m, born_measure(rf1.frame(), omega1), tol);
  Disintegration D2 = disintegrate(m, born_measure(rf2.frame(), omega2), tol);
  std::map<std::size_t, Mat> f2;
  for (const auto& [p2, c2] : D2.conditional) f2.emplace(p2, rf2.local_field(D2, m.point_at(p2)));
  for (const auto& [p1, c1] : D1.conditional) {
    Mat A;
    for (const auto& [p2, B] : f2) {
      if (!m.spacelike(m.point_at(p1), m.point_at(p2))) continue;
      if (A.size() == 0) A = rf1.local_field(D1, m.point_at(p1));
      ++r.pairs_checked;
      r.max_residual = std::max(r.max_residual, comm(A, B));
      r.max_adjoint_residual = std::max(r.max_adjoint_residual, comm(A.adjoint(), B));
    }
  }
  r.premise_met = r.pairs_checked > 0;
  r.verdict = r.premise_met ? decide(std::max(r.max_residual, r.max_adjoint_residual), tol.eq) : Verdict::vacuous;
  return r;
}

CausalReport check_frame_einstein_causal(const FrameObservable& E, const Tolerances& tol) {
  const Model& m = E.model();
  CausalReport r{"frame-einstein-causal"};
  std::vector<std::size_t> firsts;
  if (m.params().causal_mode == CausalMode::modular) {
    firsts.push_back(m.frame_index(m.base_frame()));
  } else {
    firsts.resize(m.num_frames());
    std::iota(firsts.begin(), firsts.end(), 0);
  }
  for (std::size_t i : firsts) {
    const FramePoint f1 = m.frame_at(i);
    for (std::size_t j = 0; j < m.num_frames(); ++j) {
      if (!m.spacelike(f1.x, m.frame_at(j).x)) continue;
      ++r.pairs_checked;
      r.max_residual = std::max(r.max_residual, comm(E.effects[i], E.effects[j]));
    }
  }
  r.max_adjoint_residual = r.max_residual;  // effects are self-adjoint
  r.premise_met = r.pairs_checked > 0;
  r.verdict = r.premise_met ? decide(r.max_residual, tol.eq) : Verdict::vacuous;
  return r;
}

double joint_state_residual(const FrameObservable& E, const Mat& omega, const Mat& omega1, const Mat& omega2) {
  RVec p1 = born_measure(E, omega1).pmf, p2 = born_measure(E, omega2).pmf;
  double r = 0.0;
  for (std::size_t p = 0; p < E.effects.size(); ++p) {
    Mat oEp = omega * E.effects[p];
    for (std::size_t q = 0; q < E.effects.size(); ++q) {
      cplx v = oEp.cwiseProduct(E.effects[q].transpose()).sum();
      r = std::max(r, std::abs(v - p1(static_cast<long>(p)) * p2(static_cast<long>(q))));
    }
  }
  return r;
}

JointStateResult find_joint_state(const FrameObservable& E, const Mat& omega1, const Mat& omega2,
                                  const Tolerances& tol) {
  require_state(omega1, tol);
  require_state(omega2, tol);
  const long d = E.dim();
  const long nc = d * d;
  RVec p1 = born_measure(E, omega1).pmf, p2 = born_measure(E, omega2).pmf;
  const std::size_t nf = E.effects.size();

  // stacked real constraint system M x = t, with the trace condition first
  std::vector<RVec> rows;
  std::vector<double> rhs;
  {
    RVec re(nc), im(nc);
    constraint_rows(Mat::Identity(d, d), re, im);
    rows.push_back(re);
    rhs.push_back(1.0);
  }
  double zero_violation = 0.0;
  for (std::size_t p = 0; p < nf; ++p)
    for (std::size_t q = 0; q < nf; ++q) {
      Mat C = E.effects[p] * E.effects[q];
      const double target = p1(static_cast<long>(p)) * p2(static_cast<long>(q));
      if (C.cwiseAbs().maxCoeff() <= tol.eq) {
        zero_violation = std::max(zero_violation, std::abs(target));
        continue;
      }
      RVec re(nc), im(nc);
      constraint_rows(C, re, im);
      rows.push_back(re);
      rhs.push_back(target);
      rows.push_back(im);
      rhs.push_back(0.0);
    }
  Eigen::MatrixXd M(static_cast<long>(rows.size()), nc);
  RVec t(static_cast<long>(rows.size()));
  for (std::size_t k = 0; k < rows.size(); ++k) {
    M.row(static_cast<long>(k)) = rows[k].transpose();
    t(static_cast<long>(k)) = rhs[k];
  }

  JointStateResult res;
  res.constraints = nf * nf;
  // affine projection through an orthonormal basis of the row space
  Eigen::BDCSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVec& sv = svd.singularValues();
  long rank = 0;
  while (rank < sv.size() && sv(rank) > tol.null_rel * sv(0)) ++rank;
  Eigen::MatrixXd Ur = svd.matrixU().leftCols(rank), Vr = svd.matrixV().leftCols(rank);
  RVec w = Ur.transpose() * t;
  RVec xstar = Vr * sv.head(rank).cwiseInverse().asDiagonal() * w;  // minimum-norm solution
  res.affine_inconsistency = std::max((M * xstar - t).cwiseAbs().maxCoeff(), zero_violation);
  if (res.affine_inconsistency > tol.feas) {
    res.residual = res.affine_inconsistency;
    res.verdict = Verdict::no_certificate;
    return res;
  }
  auto project_affine = [&](const RVec& x) -> RVec { return x - Vr * (Vr.transpose() * x) + xstar; };

  // Dykstra alternating projections between the affine set and the state set
  Mat X = Mat::Identity(d, d) / static_cast<double>(d);
  RVec x = herm_to_coords(X);
  RVec pa = RVec::Zero(nc);
  Mat qb = Mat::Zero(d, d);
  double best = std::numeric_limits<double>::infinity();
  Mat best_state = X;
  for (int it = 1; it <= tol.max_iter; ++it) {
    RVec y = project_affine(x + pa);
    pa = x + pa - y;
    Mat Y = coords_to_herm(y, d);
    Mat Xn = project_states(Y + qb);
    qb = Y + qb - Xn;
    x = herm_to_coords(Xn);
    res.iterations = it;
    if (it % 10 == 0 || it == tol.max_iter) {
      const double r = (M * x - t).cwiseAbs().maxCoeff();
      if (r < best) {
        best = r;
        best_state = Xn;
      }
      if (r <= 0.1 * tol.feas) break;
    }
  }
  res.residual = joint_state_residual(E, best_state, omega1, omega2);
  if (res.residual <= tol.feas) {
    res.state = best_state;
    res.verdict = Verdict::verified;
  }
  return res;
}

IntrinsicReport check_intrinsic_causality(const RelationalField& rf1, const RelationalField& rf2, const Mat& omega1,
                                          const Mat& omega2, const Tolerances& tol) {
  require_same_frame(rf1, rf2);
  IntrinsicReport r;
  r.spacelike = r_spacelike({rf1.frame_ptr(), omega1}, {rf2.frame_ptr(), omega2}, tol);
  r.einstein_causal = check_frame_einstein_causal(rf1.frame(), tol).verdict != Verdict::failed;
  r.joint = find_joint_state(rf1.frame(), omega1, omega2, tol);
  Mat A1 = rf1.observable(omega1), A2 = rf1.observable(omega2);
  Mat B1 = rf2.observable(omega1), B2 = rf2.observable(omega2);
  r.swap_residual = opnorm(A1 * B2 - A2 * B1);
  if (herm_residual(rf1.system().phi) <= tol.herm && herm_residual(rf2.system().phi) <= tol.herm)
    r.commutator_residual = comm(A1, B2);
  if (r.joint.verdict != Verdict::verified || !r.einstein_causal) {
    r.verdict = Verdict::no_certificate;
  } else if (!r.spacelike) {
    r.verdict = Verdict::vacuous;
  } else {
    r.verdict = decide(r.swap_residual, tol.eq);
  }
  return r;
}

VacuumConstancyReport check_vacuum_constancy(const std::vector<Mat>& field, const UnitaryRep& rep, const Vec& Omega,
                                             const Tolerances& tol) {
  const Model& m = rep.model();
  if (field.size() != m.num_points()) throw SizeError("field family must be indexed by lattice points");
  for (const auto& g : m.generators()) {
    if (g.boost != 1) continue;
    if ((rep(g) * Omega - Omega).norm() > tol.eq) throw InvarianceError("vacuum vector is not translation invariant");
  }
  VacuumConstancyReport r;
  const Vec v0 = field[m.point_index({0, 0})] * Omega;
  r.c = Omega.dot(v0) / Omega.squaredNorm();
  for (const auto& F : field) {
    Vec v = F * Omega;
    r.max_deviation = std::max(r.max_deviation, (v - v0).norm());
    r.scalar_residual = std::max(r.scalar_residual, (v - r.c * Omega).norm());
  }
  return r;
}

}  // namespace rqft
