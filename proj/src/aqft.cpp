#include "rqft/aqft.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace rqft {

Mat localized_subspace(const FrameObservable& E, const Region& U, const Tolerances& tol) {
  const Model& m = E.model();
  std::vector<Mat> F = spacetime_effects(E);
  Mat S = Mat::Zero(E.dim(), E.dim());
  for (std::size_t p = 0; p < m.num_points(); ++p)
    if (!U.contains(m.point_at(p))) S += F[p];
  // F_R(x) >= 0, so the common kernel is the kernel of the sum
  Eigen::SelfAdjointEigenSolver<Mat> es(S);
  std::vector<long> cols;
  for (long i = 0; i < E.dim(); ++i)
    if (es.eigenvalues()(i) <= tol.null_rel) cols.push_back(i);
  Mat Q(E.dim(), static_cast<long>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) Q.col(static_cast<long>(j)) = es.eigenvectors().col(cols[j]);
  return Q;
}

std::vector<Mat> states_supported_in(const FrameObservable& E, const Region& U, const Tolerances& tol) {
  Mat Q = localized_subspace(E, U, tol);
  std::vector<Mat> out;
  const long k = Q.cols();
  const cplx I(0.0, 1.0);
  for (long i = 0; i < k; ++i) out.push_back(Q.col(i) * Q.col(i).adjoint());
  for (long i = 0; i < k; ++i)
    for (long j = i + 1; j < k; ++j) {
      Vec a = (Q.col(i) + Q.col(j)) / std::sqrt(2.0);
      Vec b = (Q.col(i) + I * Q.col(j)) / std::sqrt(2.0);
      out.push_back(a * a.adjoint());
      out.push_back(b * b.adjoint());
    }
  return out;
}

LocalAlgebraNet::LocalAlgebraNet(std::vector<RelationalField> fields, Tolerances tol)
    : fields_(std::move(fields)), tol_(tol) {
  if (fields_.empty()) throw SizeError("a local algebra net needs at least one field");
  for (const auto& f : fields_)
    if (f.frame_ptr() != fields_.front().frame_ptr()) throw SizeError("all fields of a net must share the frame");
}

std::vector<Mat> LocalAlgebraNet::generators(const Region& U) const {
  const FrameObservable& E = fields_.front().frame();
  Mat Q = localized_subspace(E, U, tol_);
  std::vector<Mat> gens;
  if (Q.cols() == 0) return gens;
  // range of T -> (Tr[T Q^dag E(f) Q])_f through the Gram matrix of compressed effects
  std::vector<Mat> C;
  for (const auto& e : E.effects) C.push_back(Q.adjoint() * e * Q);
  const long nf = static_cast<long>(C.size());
  Mat G(nf, nf);
  for (long f = 0; f < nf; ++f)
    for (long g = f; g < nf; ++g) {
      G(f, g) = C[f].cwiseProduct(C[g].transpose()).sum();
      G(g, f) = std::conj(G(f, g));
    }
  Eigen::SelfAdjointEigenSolver<Mat> es(G);
  const double hi = es.eigenvalues().cwiseAbs().maxCoeff();
  if (hi == 0.0) return gens;
  for (const auto& rf : fields_)
    for (long k = 0; k < nf; ++k) {
      if (es.eigenvalues()(k) <= 1e-10 * hi) continue;
      Mat X = Mat::Zero(dimS(), dimS());
      for (long f = 0; f < nf; ++f) X += es.eigenvectors()(f, k) * rf.oriented(static_cast<std::size_t>(f));
      gens.push_back(X);
    }
  return gens;
}

const LocalAlgebra& LocalAlgebraNet::algebra(const Region& U) {
  auto it = cache_.find(U);
  if (it != cache_.end()) return it->second;
  std::vector<Mat> gens = generators(U);
  LocalAlgebra A;
  A.generators = gens.size();
  if (gens.empty()) {
    A.algebra = scalars(dimS());
    A.vacuous = true;
  } else {
    WordClosure wc = generated_algebra(gens, dimS(), true);
    A.algebra = std::move(wc.algebra);
    A.capped = wc.capped;
  }
  return cache_.emplace(U, std::move(A)).first->second;
}

const LocalAlgebra& LocalAlgebraNet::deterministic(const Region& U) { return algebra(model().causal_hull(U)); }

namespace {
Verdict decide(const AxiomReport& r, double tol) {
  if (r.instances == 0) return Verdict::vacuous;
  return r.max_residual <= tol ? Verdict::verified : Verdict::failed;
}

double max_commutator(const std::vector<Mat>& A, const std::vector<Mat>& B) {
  double r = 0.0;
  for (const auto& a : A)
    for (const auto& b : B) r = std::max(r, opnorm(a * b - b * a));
  return r;
}
}  // namespace

AxiomReport verify_isotony(LocalAlgebraNet& net, const std::vector<Region>& chain, double tol) {
  AxiomReport r{"isotony"};
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    if (!std::includes(chain[i + 1].begin(), chain[i + 1].end(), chain[i].begin(), chain[i].end()))
      throw SizeError("isotony chain must be increasing");
    ++r.instances;
    r.max_residual = std::max(r.max_residual,
                              containment_residual(net.algebra(chain[i]).algebra, net.algebra(chain[i + 1]).algebra));
  }
  r.verdict = decide(r, tol);
  return r;
}

AxiomReport verify_covariance(LocalAlgebraNet& net, const std::vector<Region>& regions,
                              const std::vector<GroupElement>& gs, double tol) {
  AxiomReport r{"covariance"};
  const UnitaryRep& rep = net.fields().front().system().rep;
  for (const auto& U : regions)
    for (const auto& g : gs) {
      AlgebraSubspace lhs = conjugate(net.algebra(U).algebra, rep(g));
      const AlgebraSubspace& rhs = net.algebra(net.model().act(g, U)).algebra;
      ++r.instances;
      r.max_residual = std::max(r.max_residual, equality_residual(lhs, rhs));
    }
  r.verdict = decide(r, tol);
  return r;
}

AxiomReport verify_causality(LocalAlgebraNet& net, const std::vector<std::pair<Region, Region>>& pairs, double tol) {
  AxiomReport r{"causality"};
  for (const auto& [U, V] : pairs) {
    if (!net.model().region_spacelike(U, V)) throw SizeError("causality pairs must be spacelike separated");
    // premise: the fields are R-causal for preparations localized in U and V
    if (max_commutator(net.generators(U), net.generators(V)) > tol) {
      ++r.premise_failures;
      continue;
    }
    ++r.instances;
    r.max_residual = std::max(r.max_residual, max_commutator(net.algebra(U).algebra.basis, net.algebra(V).algebra.basis));
  }
  r.verdict = decide(r, tol);
  return r;
}

AxiomReport verify_time_slice(LocalAlgebraNet& net, const Region& slice, const Region& region, double tol) {
  AxiomReport r{"time-slice"};
  r.instances = 1;
  r.max_residual = equality_residual(net.deterministic(slice).algebra, net.algebra(region).algebra);
  r.verdict = decide(r, tol);
  return r;
}

AxiomReport verify_closure(LocalAlgebraNet& net, const std::vector<Region>& regions, double tol) {
  AxiomReport r{"algebra-closure"};
  for (const auto& U : regions) {
    ++r.instances;
    r.max_residual = std::max(r.max_residual, closure_residual(net.algebra(U).algebra));
  }
  r.verdict = decide(r, tol);
  return r;
}

HaagDiagnostic haag_diagnostic(LocalAlgebraNet& net, const Region& U, long max_dim) {
  HaagDiagnostic h;
  if (net.dimS() > max_dim) return h;
  const Model& m = net.model();
  Region Up;
  for (const auto& x : m.points())
    if (m.region_spacelike({x}, U)) Up.insert(x);
  const AlgebraSubspace& Ac = net.algebra(Up).algebra;
  AlgebraSubspace comm = commutant(net.algebra(U).algebra.basis, net.dimS());
  h.computed = true;
  h.complement_dim = Ac.size();
  h.commutant_dim = comm.size();
  h.residual = equality_residual(Ac, comm);
  return h;
}

}  // namespace rqft
