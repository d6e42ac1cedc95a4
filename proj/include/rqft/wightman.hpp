#pragma once

#include <memory>

#include "rqft/causality.hpp"

namespace rqft {

struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct VacuumModel {
  UnitaryRep rep;
  Mat Omega;
};
// throws InvarianceError unless Omega is a state fixed by every generator
void validate_vacuum(const VacuumModel& vac, const Tolerances& tol = {});

using FieldPtr = std::shared_ptr<const RelationalField>;
struct VevEntry {
  FieldPtr field;
  Mat omega;
};
using VevSpec = std::vector<VevEntry>;

// Tr[Omega Phi_1(omega_1) ... Phi_n(omega_n)]
cplx vev(const VacuumModel& vac, const VevSpec& spec);
// Tr[Omega phi_1(x_1) ... phi_n(x_n)] with relational local fields
cplx kernel(const VacuumModel& vac, const VevSpec& spec, const std::vector<LatticePoint>& xs,
            const Tolerances& tol = {});
// sum over supported tuples of prod_i marginal_i(x_i) W_n(x)
cplx vev_from_kernels(const VacuumModel& vac, const VevSpec& spec, const Tolerances& tol = {});

// Operators A_i = sum_lambda q_i(lambda) phi_i(0, lambda) for globally oriented entries with full spacetime support.
std::vector<Mat> difference_kernel_operators(const VevSpec& spec, const Tolerances& tol = {});
// Tr[Omega U(sum xi) A_1 U(xi_1)^dag A_2 ... U(xi_{n-1})^dag A_n]
cplx difference_kernel(const VacuumModel& vac, const VevSpec& spec, const std::vector<LatticePoint>& xis,
                       const Tolerances& tol = {});
cplx difference_kernel(const VacuumModel& vac, const std::vector<Mat>& A, const std::vector<LatticePoint>& xis);

struct SpectralReport {
  int n = 0;
  std::vector<LatticePoint> support;  // character support of the translation subrepresentation
  std::vector<cplx> table;            // transformed kernel, index over (q_1.u, q_1.v, q_2.u, ...) row-major
  double max_outside = 0.0;
  std::size_t outside_count = 0;
  double oracle_residual = 0.0;  // against direct summation
  Verdict verdict = Verdict::vacuous;
};
// sum_xi exp(+2 pi i sum_j q_j . xi_j / N) bold-W(xi)
std::vector<cplx> kernel_dft(const Model& m, int n, const std::vector<cplx>& values);
std::vector<cplx> kernel_dft_naive(const Model& m, int n, const std::vector<cplx>& values);
SpectralReport spectral_check(const VacuumModel& vac, const VevSpec& spec, const Tolerances& tol = {});

struct HermiticityReport {
  double vev_residual = 0.0;
  double kernel_residual = 0.0;
  std::size_t kernel_samples = 0;
};
// reversed spec with adjoint seeds
VevSpec adjoint_reversed(const VevSpec& spec);
HermiticityReport hermiticity_check(const VacuumModel& vac, const VevSpec& spec,
                                    const std::vector<std::vector<LatticePoint>>& samples, const Tolerances& tol = {});

struct PositivityReport {
  Mat gram;
  double psd_gap = 0.0;
  cplx all_ones_form = 0.0;
  double oracle_residual = 0.0;  // entrywise against the vector-norm construction
};
PositivityReport positivity_check(const VacuumModel& vac, const std::vector<VevSpec>& families);

double theta(int t);  // Heaviside step with theta(0) = 1/2
struct TimeOrderedResult {
  cplx value = 0.0;
  bool coincident_times = false;  // the theta(0) convention was used
};
// Theta-weighted permutation sum of operator products, then traced against Omega
TimeOrderedResult time_ordered(const VacuumModel& vac, const VevSpec& spec, const std::vector<LatticePoint>& xs,
                               const Tolerances& tol = {});
// same sum assembled from kernels of permuted specs
cplx time_ordered_from_kernels(const VacuumModel& vac, const VevSpec& spec, const std::vector<LatticePoint>& xs,
                               const Tolerances& tol = {});

struct IrreducibilityReport {
  std::size_t span_dim = 0;
  std::size_t commutant_dim = 0;       // literal commutant of the span
  std::size_t star_commutant_dim = 0;  // commutant of the span and its adjoints
  bool irreducible = false;
  bool star_irreducible = false;
  // vacuum premises and the implication
  bool has_vacuum = false;
  bool unique_invariant_vector = false;
  bool cyclic = false;
  std::size_t cyclic_dim = 0;
  int cyclic_stabilized_at = 0;
  bool spectrum_separated = false;  // sigma and -sigma meet only at 0
  bool premises_met = false;
  bool implication_holds = true;
};
std::vector<Mat> field_span(const RelationalField& rf);
IrreducibilityReport irreducibility_check(const RelationalField& rf, const Vec* Omega = nullptr,
                                          const Tolerances& tol = {});

RVec smearing_function(const OrientedFrame& of);

}  // namespace rqft
