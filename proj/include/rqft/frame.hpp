#pragma once

#include <functional>
#include <map>
#include <memory>

#include "rqft/operators.hpp"
#include "rqft/rng.hpp"

namespace rqft {

struct DegenerateSeed : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ChannelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvarianceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Covariant POVM on F; effects are indexed by Model::frame_index.
struct FrameObservable {
  UnitaryRep rep;
  std::vector<Mat> effects;

  long dim() const { return rep.dim(); }
  const Model& model() const { return rep.model(); }
  const Mat& operator()(const FramePoint& f) const { return effects.at(model().frame_index(f)); }
  double normalization_residual() const;
  // max over group generators (or all elements) and frame points
  double covariance_residual(bool all_elements = false) const;
};
using FramePtr = std::shared_ptr<const FrameObservable>;

struct OrientedFrame {
  FramePtr frame;
  Mat omega;
};

// pmf over F (indexed by frame_index)
struct BornMeasure {
  RVec pmf;
};

struct Disintegration {
  RVec marginal;                          // over points (point_index)
  std::map<std::size_t, RVec> conditional;  // point_index -> pmf over C (boost index)
};

struct Marginals {
  RVec spacetime;  // over points
  RVec lorentz;    // over C
  std::vector<Mat> F;  // spacetime marginal effects F_R(x)
  std::vector<Mat> G;  // Lorentz marginal effects G_R(lambda)
};

FrameObservable build_frame(const UnitaryRep& rep, const Mat& seed, const Tolerances& tol = {});
FrameObservable uniform_frame(const UnitaryRep& rep);
FrameObservable sharp_regular_frame(std::shared_ptr<const Model> m);
// H_R = l2(M) (x) C^k, E(x,lambda) = |x><x| (x) 1/(|C|) ; Einstein causal, Lorentz-blind
FrameObservable position_frame(std::shared_ptr<const Model> m, long internal_dim = 1);
// l2(F) compressed to the complement of translation-invariant vectors
FrameObservable vacuum_complement_frame(std::shared_ptr<const Model> m);

BornMeasure born_measure(const OrientedFrame& of);
BornMeasure born_measure(const FrameObservable& E, const Mat& omega);
Eigen::VectorXcd complex_measure(const FrameObservable& E, const Mat& T);
std::vector<Mat> spacetime_effects(const FrameObservable& E);
std::vector<Mat> lorentz_effects(const FrameObservable& E);
Marginals marginals(const OrientedFrame& of);
RVec spacetime_marginal(const Model& m, const RVec& pmf);
RVec lorentz_marginal(const Model& m, const RVec& pmf);

Disintegration disintegrate(const Model& m, const BornMeasure& mu, const Tolerances& tol = {});
Region support(const Model& m, const BornMeasure& mu, const Tolerances& tol = {});
std::vector<std::size_t> frame_support(const BornMeasure& mu, const Tolerances& tol = {});

// sum over F of weight(f) * value(f), computed fibre-then-base through the disintegration
Mat iterated_sum(const Model& m, const Disintegration& D, const std::function<Mat(const FramePoint&)>& value);

// Generic operator-valued measure on a finite sample space {0..n-1}
struct Ovm {
  long dim = 0;
  std::vector<Mat> effects;
};
Ovm as_ovm(const FrameObservable& E);
Ovm pushforward(const Ovm& E, const std::vector<std::size_t>& map, std::size_t n_out);
Eigen::VectorXcd ovm_born(const Ovm& E, const Mat& omega);
RVec pushforward_measure(const RVec& mu, const std::vector<std::size_t>& map, std::size_t n_out);
struct ProductOvm {
  Ovm ovm;             // index i * n2 + j
  double min_psd_gap;  // most negative eigenvalue over all products (Hermitian parts)
  double max_herm_residual;
};
ProductOvm product_ovm(const Ovm& E1, const Ovm& E2);

// Heisenberg-picture channel B(H_in) -> B(H_out) as a superoperator on column-major vectorisations
struct Channel {
  long din = 0, dout = 0;
  Mat S;  // dout^2 x din^2
  std::vector<Mat> kraus;  // optional Kraus form, K_i : H_out -> H_in
  Mat apply(const Mat& X) const;
  Mat apply_predual(const Mat& rho) const;  // D(H_out) -> D(H_in), uses S^dagger
  Mat choi() const;
};
// psi(X) = sum_i K_i^dagger X K_i with K_i : H_out -> H_in (din x dout)
Channel channel_from_kraus(const std::vector<Mat>& kraus);
Channel conjugation_channel(const Mat& U);  // psi(X) = U X U^dagger
Channel random_channel(CounterRng& rng, long din, long dout, int n_kraus);
// group average making psi equivariant: psi(U_in X U_in^dag) = U_out psi(X) U_out^dag
Channel equivariant_average(const Channel& psi, const UnitaryRep& rep_in, const UnitaryRep& rep_out);
double channel_cp_gap(const Channel& psi, double tol_herm = 1e-8);
double channel_unitality_residual(const Channel& psi);
double channel_equivariance_residual(const Channel& psi, const UnitaryRep& rep_in, const UnitaryRep& rep_out);
void validate_channel(const Channel& psi, const Tolerances& tol = {});
FrameObservable channel_compose(const Channel& psi, const FrameObservable& E, const UnitaryRep& rep_out,
                                const Tolerances& tol = {});

struct ScanRow {
  int N;
  double mu;
  double expected;
};
using FrameFamily = std::function<std::pair<FrameObservable, Mat>(int N)>;
std::vector<ScanRow> vacuum_orthogonality_scan(const FrameFamily& family, const Region& region,
                                               const std::vector<int>& Ns, const Tolerances& tol = {});

struct StrictVacuumReport {
  bool holds = false;
  bool vacuous = false;  // no translation-invariant vectors at all
  double residual = 0.0;
  long vacuum_dim = 0;
};
StrictVacuumReport strict_vacuum_orthogonality_check(const FrameObservable& E, const Tolerances& tol = {});

}  // namespace rqft
