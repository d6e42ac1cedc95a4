#pragma once

#include <map>

#include "rqft/relativization.hpp"
#include "rqft/verdict.hpp"

namespace rqft {

// orthonormal basis (columns) of the intersection of ker F_R(x) over x outside U
Mat localized_subspace(const FrameObservable& E, const Region& U, const Tolerances& tol = {});
// basis projectors of K_U and their pairwise superpositions
std::vector<Mat> states_supported_in(const FrameObservable& E, const Region& U, const Tolerances& tol = {});

struct LocalAlgebra {
  AlgebraSubspace algebra;
  std::size_t generators = 0;
  bool vacuous = false;  // no localized preparations, algebra is the scalars
  bool capped = false;
};

// Relational local algebras for fields that share one frame observable; the seeds form a *-closed operator basis.
class LocalAlgebraNet {
 public:
  explicit LocalAlgebraNet(std::vector<RelationalField> fields, Tolerances tol = {});

  const Model& model() const { return fields_.front().model(); }
  long dimS() const { return fields_.front().dimS(); }
  const std::vector<RelationalField>& fields() const { return fields_; }

  // generators Phi_phi(T) for T ranging over operators on K_U, reduced through the coefficient map
  std::vector<Mat> generators(const Region& U) const;
  const LocalAlgebra& algebra(const Region& U);
  const LocalAlgebra& deterministic(const Region& U);  // algebra of the causal hull

 private:
  std::vector<RelationalField> fields_;
  Tolerances tol_;
  std::map<Region, LocalAlgebra> cache_;
};

struct AxiomReport {
  std::string axiom;
  std::size_t instances = 0;
  double max_residual = 0.0;
  std::size_t premise_failures = 0;  // causality only: pairs whose generators fail to commute
  Verdict verdict = Verdict::vacuous;
};

AxiomReport verify_isotony(LocalAlgebraNet& net, const std::vector<Region>& chain, double tol);
AxiomReport verify_covariance(LocalAlgebraNet& net, const std::vector<Region>& regions,
                              const std::vector<GroupElement>& gs, double tol);
AxiomReport verify_causality(LocalAlgebraNet& net, const std::vector<std::pair<Region, Region>>& pairs, double tol);
// deterministic algebra of the slice against the algebra of the region it should determine
AxiomReport verify_time_slice(LocalAlgebraNet& net, const Region& slice, const Region& region, double tol);
AxiomReport verify_closure(LocalAlgebraNet& net, const std::vector<Region>& regions, double tol);

struct HaagDiagnostic {
  bool computed = false;
  double residual = 0.0;  // equality residual between A(U') and A(U)'
  std::size_t complement_dim = 0, commutant_dim = 0;
};
// U' is the set of points spacelike to all of U; skipped above the dimension limit
HaagDiagnostic haag_diagnostic(LocalAlgebraNet& net, const Region& U, long max_dim = 30);

}  // namespace rqft
