#pragma once

#include "rqft/frame.hpp"

namespace rqft {

struct GlobalOrientationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SystemModel {
  UnitaryRep rep;
  Mat phi;
  long dim() const { return rep.dim(); }
};

// g . rho = U(g) rho U(g)^dag ; rho . g = U(g)^dag rho U(g)
Mat act_state(const UnitaryRep& r, const GroupElement& g, const Mat& rho);
Mat shift_state(const UnitaryRep& r, const Mat& rho, const GroupElement& g);

Mat oriented_field(const SystemModel& sys, const FramePoint& f, const FramePoint& base);
Mat oriented_field(const SystemModel& sys, const FramePoint& f);

// A system observable read through a frame. Oriented copies of phi are cached per frame point.
class RelationalField {
 public:
  RelationalField(SystemModel sys, FramePtr frame);
  RelationalField(SystemModel sys, FramePtr frame, const FramePoint& base);

  const SystemModel& system() const { return sys_; }
  const FrameObservable& frame() const { return *frame_; }
  FramePtr frame_ptr() const { return frame_; }
  const Model& model() const { return frame_->model(); }
  long dimS() const { return sys_.dim(); }
  long dimR() const { return frame_->dim(); }
  const Mat& oriented(std::size_t frame_index) const { return oriented_[frame_index]; }

  Mat observable(const Mat& omega) const;       // restricted relativisation at a state
  Mat extend(const Mat& T) const;               // complex-weighted version for any operator T on H_R
  Mat weighted(const RVec& pmf) const;          // sum_f pmf(f) phi_f
  Mat local_field(const Mat& omega, const LatticePoint& x, const Tolerances& tol = {}) const;
  Mat local_field(const Disintegration& D, const LatticePoint& x) const;
  Mat relativize(long max_dim = Tolerances{}.max_dim) const;

 private:
  SystemModel sys_;
  FramePtr frame_;
  std::vector<Mat> oriented_;
};

Mat relativize(const SystemModel& sys, const FrameObservable& frame, long max_dim = Tolerances{}.max_dim);
// Tr_R[(1 (x) omega) O]
Mat restrict_to_system(const Mat& O, const Mat& omega, long dimS, long dimR);
Mat relational_local_observable(const RelationalField& rf, const Mat& omega);
Mat relational_local_field(const RelationalField& rf, const Mat& omega, const LatticePoint& x,
                           const Tolerances& tol = {});
Mat extend_trace_class(const RelationalField& rf, const Mat& T);
// sum_f pmf_omega(f) U_S(g_f)^dag rho U_S(g_f)
Mat predual_polarization(const RelationalField& rf, const Mat& omega, const Mat& rho);

// E(x,lambda) = F(x) (x) G(lambda) on H_M (x) H_L, omega = omega_M (x) omega_L
struct GloballyOrientedSpec {
  UnitaryRep repM;
  std::vector<Mat> F;  // indexed by point_index
  Mat omegaM;
  UnitaryRep repL;
  std::vector<Mat> G;  // indexed by boost index
  Mat omegaL;
};
OrientedFrame build_globally_oriented(const GloballyOrientedSpec& spec, const Tolerances& tol = {});
// sharp position frame on l2(M) times sharp boost frame on l2(C)
GloballyOrientedSpec sharp_global_spec(std::shared_ptr<const Model> m, const Mat& omegaM, const Mat& omegaL);
// max over supported x of the distance between the conditional at x and the Lorentz marginal
double global_orientation_residual(const Model& m, const BornMeasure& mu, const Tolerances& tol = {});

}  // namespace rqft
