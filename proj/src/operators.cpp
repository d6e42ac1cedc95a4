#include "rqft/operators.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <algorithm>
#include <cmath>
#include <deque>

namespace rqft {

namespace {
Eigen::Map<const Vec> vec(const Mat& X) { return {X.data(), X.size()}; }
Mat unvec(const Vec& v, long d) { return Eigen::Map<const Mat>(v.data(), d, d); }
}  // namespace

Mat tensor(const Mat& A, const Mat& B, long max_dim) {
  if (A.rows() * B.rows() > max_dim || A.cols() * B.cols() > max_dim)
    throw SizeError("tensor product exceeds the configured maximum dimension");
  return Eigen::kroneckerProduct(A, B).eval();
}

Mat partial_trace_frame(const Mat& O, long dimS, long dimR) {
  if (O.rows() != dimS * dimR || O.cols() != dimS * dimR)
    throw SizeError("partial_trace_frame: operator dimension does not factor as dimS*dimR");
  Mat out = Mat::Zero(dimS, dimS);
  for (long i = 0; i < dimS; ++i)
    for (long j = 0; j < dimS; ++j) out(i, j) = O.block(i * dimR, j * dimR, dimR, dimR).trace();
  return out;
}

Mat partial_trace_system(const Mat& O, long dimS, long dimR) {
  if (O.rows() != dimS * dimR || O.cols() != dimS * dimR)
    throw SizeError("partial_trace_system: operator dimension does not factor as dimS*dimR");
  Mat out = Mat::Zero(dimR, dimR);
  for (long i = 0; i < dimS; ++i) out += O.block(i * dimR, i * dimR, dimR, dimR);
  return out;
}

double opnorm(const Mat& A) {
  if (A.size() == 0) return 0.0;
  Eigen::BDCSVD<Mat> svd(A);
  return svd.singularValues()(0);
}

double hs_norm(const Mat& A) { return A.norm(); }

double herm_residual(const Mat& A) { return (A - A.adjoint()).norm() / 2.0; }

double psd_gap(const Mat& A, double tol_herm) {
  if (A.rows() != A.cols()) throw InvalidOperator("psd_gap: matrix is not square");
  if (herm_residual(A) > tol_herm * std::max(1.0, A.norm())) throw HermiticityError("psd_gap: input is not Hermitian");
  Mat H = (A + A.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(H, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

bool is_state(const Mat& A, const Tolerances& tol) {
  if (A.rows() != A.cols() || A.rows() == 0) return false;
  if (herm_residual(A) > tol.herm) return false;
  if (std::abs(A.trace() - cplx(1.0)) > tol.trace) return false;
  return psd_gap(A, tol.herm) >= -tol.psd;
}

bool is_effect(const Mat& A, const Tolerances& tol) {
  if (A.rows() != A.cols()) return false;
  if (herm_residual(A) > tol.herm) return false;
  Mat H = (A + A.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(H, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0) >= -tol.psd && es.eigenvalues()(es.eigenvalues().size() - 1) <= 1.0 + tol.psd;
}

void require_state(const Mat& A, const Tolerances& tol) {
  if (!is_state(A, tol)) throw InvalidOperator("operator is not a density matrix");
}

Mat psd_sqrt(const Mat& A) {
  Eigen::SelfAdjointEigenSolver<Mat> es((A + A.adjoint()) / 2.0);
  RVec ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

Mat psd_inv_sqrt(const Mat& A, double rel_cutoff) {
  Eigen::SelfAdjointEigenSolver<Mat> es((A + A.adjoint()) / 2.0);
  const RVec& ev = es.eigenvalues();
  double top = ev.cwiseAbs().maxCoeff();
  Eigen::VectorXcd d(ev.size());
  for (long i = 0; i < ev.size(); ++i) d(i) = ev(i) > rel_cutoff * top ? 1.0 / std::sqrt(ev(i)) : 0.0;
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

Mat projector_onto(const Mat& Q) { return Q * Q.adjoint(); }

Mat AlgebraSubspace::matrix() const {
  Mat M(dim * dim, static_cast<long>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) M.col(static_cast<long>(k)) = vec(basis[k]);
  return M;
}

bool SubspaceBuilder::add(const Mat& X) {
  double n0 = X.norm();
  if (n0 == 0.0) return false;
  Mat R = X / n0;
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& B : basis_) R -= (B.adjoint() * R).trace() * B;
  double n = R.norm();
  if (n <= rel_tol_) return false;
  basis_.push_back(R / n);
  return true;
}

AlgebraSubspace span_of(const std::vector<Mat>& ops, long d, double rel_tol) {
  if (ops.empty()) return {d, {}};
  Mat M(d * d, static_cast<long>(ops.size()));
  for (std::size_t k = 0; k < ops.size(); ++k) {
    double n = ops[k].norm();
    M.col(static_cast<long>(k)) = n > 0 ? Vec(vec(ops[k]) / n) : Vec::Zero(d * d);
  }
  Eigen::BDCSVD<Mat> svd(M, Eigen::ComputeThinU);
  const RVec& s = svd.singularValues();
  AlgebraSubspace out{d, {}};
  if (s.size() == 0 || s(0) == 0.0) return out;
  for (long k = 0; k < s.size(); ++k)
    if (s(k) > rel_tol * s(0)) out.basis.push_back(unvec(svd.matrixU().col(k), d));
  return out;
}

AlgebraSubspace full_algebra(long d) {
  AlgebraSubspace out{d, {}};
  for (long j = 0; j < d; ++j)
    for (long i = 0; i < d; ++i) {
      Mat E = Mat::Zero(d, d);
      E(i, j) = 1.0;
      out.basis.push_back(E);
    }
  return out;
}

AlgebraSubspace scalars(long d) { return {d, {Mat::Identity(d, d) / std::sqrt(static_cast<double>(d))}}; }

Mat nullspace(const Mat& M, double null_rel) {
  long n = M.cols();
  if (M.rows() == 0) return Mat::Identity(n, n);
  Eigen::BDCSVD<Mat> svd(M, Eigen::ComputeFullV);
  const RVec& s = svd.singularValues();
  double top = s.size() ? s(0) : 0.0;
  long rank = 0;
  for (long k = 0; k < s.size(); ++k)
    if (s(k) > null_rel * top && top > 0) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

AlgebraSubspace commutant(const std::vector<Mat>& S, long d, double null_rel) {
  AlgebraSubspace gens = span_of(S, d);
  if (gens.basis.empty()) return full_algebra(d);
  const long n = d * d;
  const Mat I = Mat::Identity(d, d);
  // Gram operator of the stacked commutator maps X -> XA - AX (column-major vec)
  Mat G = Mat::Zero(n, n);
  Mat sumAAd = Mat::Zero(d, d), sumAdA = Mat::Zero(d, d);
  for (const auto& A : gens.basis) {
    sumAAd += A * A.adjoint();
    sumAdA += A.adjoint() * A;
    G -= Eigen::kroneckerProduct(A.conjugate(), A).eval();
    G -= Eigen::kroneckerProduct(A.transpose(), A.adjoint()).eval();
  }
  G += Eigen::kroneckerProduct(sumAAd.conjugate(), I).eval();
  G += Eigen::kroneckerProduct(I, sumAdA).eval();
  Eigen::SelfAdjointEigenSolver<Mat> es((G + G.adjoint()) / 2.0);
  const RVec& ev = es.eigenvalues();
  double lmax = std::max(ev(n - 1), 0.0);
  if (lmax == 0.0) return full_algebra(d);
  std::vector<long> cand;
  for (long k = 0; k < n; ++k)
    if (ev(k) <= 1e-8 * lmax) cand.push_back(k);
  AlgebraSubspace out{d, {}};
  if (cand.empty()) return out;
  Mat Vc(n, static_cast<long>(cand.size()));
  for (std::size_t j = 0; j < cand.size(); ++j) Vc.col(static_cast<long>(j)) = es.eigenvectors().col(cand[j]);
  // refine with the stacked map itself on the candidate subspace
  const long m = static_cast<long>(gens.basis.size());
  Mat stacked(m * n, Vc.cols());
  for (long j = 0; j < Vc.cols(); ++j) {
    Mat X = unvec(Vc.col(j), d);
    for (long a = 0; a < m; ++a) {
      const Mat& A = gens.basis[a];
      Mat C = X * A - A * X;
      stacked.block(a * n, j, n, 1) = vec(C);
    }
  }
  double smax = std::sqrt(lmax);
  Eigen::BDCSVD<Mat> svd(stacked, Eigen::ComputeFullV);
  const RVec& s = svd.singularValues();
  long rank = 0;
  for (long k = 0; k < s.size(); ++k)
    if (s(k) > null_rel * smax) ++rank;
  Mat null = Vc * svd.matrixV().rightCols(Vc.cols() - rank);
  Eigen::HouseholderQR<Mat> qr(null);
  Mat Q = qr.householderQ() * Mat::Identity(n, null.cols());
  for (long j = 0; j < Q.cols(); ++j) out.basis.push_back(unvec(Q.col(j), d));
  return out;
}

AlgebraSubspace double_commutant(const std::vector<Mat>& S, long d, double null_rel) {
  AlgebraSubspace c1 = commutant(S, d, null_rel);
  return commutant(c1.basis, d, null_rel);
}

WordClosure generated_algebra(const std::vector<Mat>& S, long d, bool with_adjoints) {
  std::vector<Mat> gens;
  for (const auto& A : span_of(S, d).basis) {
    gens.push_back(A);
    if (with_adjoints) gens.push_back(A.adjoint());
  }
  SubspaceBuilder B(d);
  B.add(Mat::Identity(d, d));
  std::vector<Mat> frontier = {B.basis().front()};
  WordClosure wc;
  const int cap = static_cast<int>(d * d);
  int length = 0;
  while (!frontier.empty()) {
    if (length >= cap) {
      wc.capped = true;
      break;
    }
    ++length;
    std::vector<Mat> next;
    for (const auto& X : frontier)
      for (const auto& g : gens)
        if (B.add(X * g)) next.push_back(B.basis().back());
    if (next.empty()) {
      wc.stabilized_at = length - 1;
      break;
    }
    frontier = std::move(next);
  }
  wc.algebra = B.subspace();
  return wc;
}

double membership_residual(const Mat& X, const AlgebraSubspace& B) {
  Mat R = X;
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& b : B.basis) R -= (b.adjoint() * R).trace() * b;
  return R.norm();
}

double containment_residual(const AlgebraSubspace& A, const AlgebraSubspace& B) {
  double r = 0.0;
  for (const auto& a : A.basis) r = std::max(r, membership_residual(a / a.norm(), B));
  return r;
}

double equality_residual(const AlgebraSubspace& A, const AlgebraSubspace& B) {
  return std::max(containment_residual(A, B), containment_residual(B, A));
}

double closure_residual(const AlgebraSubspace& A, std::size_t max_pairs) {
  double r = membership_residual(Mat::Identity(A.dim, A.dim) / std::sqrt(double(A.dim)), A);
  for (const auto& a : A.basis) r = std::max(r, membership_residual(a.adjoint(), A));
  std::size_t count = 0;
  for (std::size_t i = 0; i < A.basis.size() && count < max_pairs; ++i)
    for (std::size_t j = 0; j < A.basis.size() && count < max_pairs; ++j, ++count)
      r = std::max(r, membership_residual(A.basis[i] * A.basis[j], A));
  return r;
}

AlgebraSubspace conjugate(const AlgebraSubspace& A, const Mat& U) {
  AlgebraSubspace out{A.dim, {}};
  for (const auto& a : A.basis) out.basis.push_back(U * a * U.adjoint());
  return out;
}

}  // namespace rqft
