#pragma once

#include <Eigen/Dense>
#include <complex>
#include <memory>
#include <stdexcept>
#include <vector>

#include "rqft/lattice.hpp"

namespace rqft {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

struct Tolerances {
  double eq = 1e-10;
  double herm = 1e-10;
  double psd = 1e-9;
  double trace = 1e-10;
  double supp = 1e-12;
  double null_rel = 1e-8;
  double feas = 1e-7;
  double dft = 1e-9;
  int max_iter = 5000;
  long max_dim = 4096;
};

struct SizeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct HermiticityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidOperator : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Mat tensor(const Mat& A, const Mat& B, long max_dim = Tolerances{}.max_dim);
Mat partial_trace_frame(const Mat& O, long dimS, long dimR);
Mat partial_trace_system(const Mat& O, long dimS, long dimR);

double opnorm(const Mat& A);
double hs_norm(const Mat& A);
double herm_residual(const Mat& A);
// minimum eigenvalue of a Hermitian matrix
double psd_gap(const Mat& A, double tol_herm = Tolerances{}.herm);
bool is_state(const Mat& A, const Tolerances& tol = {});
bool is_effect(const Mat& A, const Tolerances& tol = {});
void require_state(const Mat& A, const Tolerances& tol = {});

Mat psd_sqrt(const Mat& A);
Mat psd_inv_sqrt(const Mat& A, double rel_cutoff = 1e-12);
Mat projector_onto(const Mat& columns);

// Hilbert-Schmidt orthonormal basis of a matrix subspace
struct AlgebraSubspace {
  long dim = 0;
  std::vector<Mat> basis;
  std::size_t size() const { return basis.size(); }
  Mat matrix() const;  // d^2 x m, columns are vectorised basis elements
};

// incremental modified Gram-Schmidt in the Hilbert-Schmidt inner product
class SubspaceBuilder {
 public:
  explicit SubspaceBuilder(long d, double rel_tol = 1e-8) : d_(d), rel_tol_(rel_tol) {}
  bool add(const Mat& X);
  const std::vector<Mat>& basis() const { return basis_; }
  AlgebraSubspace subspace() const { return {d_, basis_}; }

 private:
  long d_;
  double rel_tol_;
  std::vector<Mat> basis_;
};

AlgebraSubspace span_of(const std::vector<Mat>& ops, long d, double rel_tol = 1e-8);
AlgebraSubspace full_algebra(long d);
AlgebraSubspace scalars(long d);

AlgebraSubspace commutant(const std::vector<Mat>& S, long d, double null_rel = Tolerances{}.null_rel);
AlgebraSubspace double_commutant(const std::vector<Mat>& S, long d, double null_rel = Tolerances{}.null_rel);

struct WordClosure {
  AlgebraSubspace algebra;
  int stabilized_at = 0;  // word length after which the span stopped growing
  bool capped = false;
};
// unital algebra generated by S (and S^dagger when with_adjoints), by products up to length d^2
WordClosure generated_algebra(const std::vector<Mat>& S, long d, bool with_adjoints = true);

// max over basis elements a of A of ||a - P_B a||
double containment_residual(const AlgebraSubspace& A, const AlgebraSubspace& B);
double equality_residual(const AlgebraSubspace& A, const AlgebraSubspace& B);
double membership_residual(const Mat& X, const AlgebraSubspace& B);
// identity membership, adjoint and product closure residuals
double closure_residual(const AlgebraSubspace& A, std::size_t max_pairs = 4096);

AlgebraSubspace conjugate(const AlgebraSubspace& A, const Mat& U);

// Orthonormal basis (columns) of the kernel of a matrix with relative singular-value cutoff
Mat nullspace(const Mat& M, double null_rel = Tolerances{}.null_rel);

// ---------------------------------------------------------------------------
class UnitaryRep {
 public:
  UnitaryRep() = default;
  UnitaryRep(std::shared_ptr<const Model> model, long dim, std::vector<Mat> mats);

  template <class Fn>
  static UnitaryRep from_function(std::shared_ptr<const Model> model, long dim, Fn&& fn) {
    std::vector<Mat> mats;
    mats.reserve(model->num_elements());
    for (std::size_t i = 0; i < model->num_elements(); ++i) mats.push_back(fn(model->element_at(i)));
    return UnitaryRep(std::move(model), dim, std::move(mats));
  }

  long dim() const { return dim_; }
  const Model& model() const { return *model_; }
  std::shared_ptr<const Model> model_ptr() const { return model_; }
  const Mat& operator()(const GroupElement& g) const { return mats_.at(model_->element_index(g)); }
  const Mat& at(std::size_t i) const { return mats_.at(i); }
  Mat conj(const GroupElement& g, const Mat& A) const;  // U A U^dagger

  double homomorphism_residual() const;  // exhaustive over all pairs
  double unitarity_residual() const;

 private:
  std::shared_ptr<const Model> model_;
  long dim_ = 0;
  std::vector<Mat> mats_;
};

UnitaryRep trivial_representation(std::shared_ptr<const Model> m, long dim = 1);
UnitaryRep regular_representation(std::shared_ptr<const Model> m);
UnitaryRep position_representation(std::shared_ptr<const Model> m);
UnitaryRep lorentz_representation(std::shared_ptr<const Model> m);
// induced representation on a boost-closed set of translation characters
UnitaryRep momentum_representation(std::shared_ptr<const Model> m, const std::vector<LatticePoint>& characters);
std::vector<LatticePoint> boost_closure(const Model& m, const std::vector<LatticePoint>& characters);
LatticePoint boost_character(const Model& m, int boost, const LatticePoint& k);
UnitaryRep direct_sum(const std::vector<UnitaryRep>& reps);
UnitaryRep tensor_rep(const UnitaryRep& A, const UnitaryRep& B);
UnitaryRep restrict_rep(const UnitaryRep& r, const Mat& Q);  // Q: orthonormal columns spanning an invariant subspace

cplx character(const Model& m, const LatticePoint& q, const LatticePoint& a);
Mat character_projector(const UnitaryRep& r, const LatticePoint& q);
std::vector<LatticePoint> character_support(const UnitaryRep& r, double tol = 1e-10);
Mat translation_fixed_projector(const UnitaryRep& r);
Mat invariant_projector(const UnitaryRep& r);
double state_invariance_residual(const UnitaryRep& r, const Mat& rho, bool translations_only = false);

}  // namespace rqft
