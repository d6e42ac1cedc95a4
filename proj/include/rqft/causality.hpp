#pragma once

#include <optional>
#include <string>

#include "rqft/relativization.hpp"
#include "rqft/verdict.hpp"

namespace rqft {

struct FrameMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CausalReport {
  std::string predicate;
  std::size_t pairs_checked = 0;
  double max_residual = 0.0;          // commutator
  double max_adjoint_residual = 0.0;  // commutator with the adjoint of the first entry
  Verdict verdict = Verdict::vacuous;
  bool premise_met = true;
};

bool r_spacelike(const OrientedFrame& of1, const OrientedFrame& of2, const Tolerances& tol = {});

// [Phi_1(omega_1), Phi_2(omega_2)] and the adjoint variant
CausalReport check_r_causal(const RelationalField& rf1, const RelationalField& rf2, const Mat& omega1,
                            const Mat& omega2, const Tolerances& tol = {});
// relational local fields at all spacelike supported pairs
CausalReport check_r_microcausal(const RelationalField& rf1, const RelationalField& rf2, const Mat& omega1,
                                 const Mat& omega2, const Tolerances& tol = {});
// Effect commutators over frame-point pairs with spacelike base points. In modular mode the relation and the
// frame are both invariant, so the first frame point can be fixed to the base frame.
CausalReport check_frame_einstein_causal(const FrameObservable& E, const Tolerances& tol = {});

struct JointStateResult {
  std::optional<Mat> state;
  double residual = 0.0;                // max_pq |Tr[omega E(p)E(q)] - pmf1(p) pmf2(q)|
  double affine_inconsistency = 0.0;    // distance of the targets from the range of the constraint map
  int iterations = 0;
  std::size_t constraints = 0;
  Verdict verdict = Verdict::no_certificate;
};
JointStateResult find_joint_state(const FrameObservable& E, const Mat& omega1, const Mat& omega2,
                                  const Tolerances& tol = {});
// independent re-evaluation of the statistical-independence constraints
double joint_state_residual(const FrameObservable& E, const Mat& omega, const Mat& omega1, const Mat& omega2);

struct IntrinsicReport {
  bool spacelike = false;
  bool einstein_causal = false;
  JointStateResult joint;
  double swap_residual = 0.0;
  std::optional<double> commutator_residual;  // only when both seeds are self-adjoint
  Verdict verdict = Verdict::vacuous;
};
IntrinsicReport check_intrinsic_causality(const RelationalField& rf1, const RelationalField& rf2, const Mat& omega1,
                                          const Mat& omega2, const Tolerances& tol = {});

struct VacuumConstancyReport {
  double max_deviation = 0.0;  // max_x ||field(x) Omega - field(0) Omega||
  cplx c = 0.0;                // <Omega|field(0)|Omega>
  double scalar_residual = 0.0;  // max_x ||field(x) Omega - c Omega||
};
VacuumConstancyReport check_vacuum_constancy(const std::vector<Mat>& field, const UnitaryRep& rep, const Vec& Omega,
                                             const Tolerances& tol = {});

}  // namespace rqft
