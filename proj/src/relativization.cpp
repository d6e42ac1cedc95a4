#include "rqft/relativization.hpp"

#include <algorithm>

namespace rqft {

Mat act_state(const UnitaryRep& r, const GroupElement& g, const Mat& rho) { return r.conj(g, rho); }

Mat shift_state(const UnitaryRep& r, const Mat& rho, const GroupElement& g) {
  const Mat& U = r(g);
  return U.adjoint() * rho * U;
}

Mat oriented_field(const SystemModel& sys, const FramePoint& f, const FramePoint& base) {
  const Model& m = sys.rep.model();
  return sys.rep.conj(m.element_to(f, base), sys.phi);
}

Mat oriented_field(const SystemModel& sys, const FramePoint& f) {
  return oriented_field(sys, f, sys.rep.model().base_frame());
}

RelationalField::RelationalField(SystemModel sys, FramePtr frame)
    : RelationalField(std::move(sys), frame, frame->model().base_frame()) {}

RelationalField::RelationalField(SystemModel sys, FramePtr frame, const FramePoint& base)
    : sys_(std::move(sys)), frame_(std::move(frame)) {
  if (sys_.phi.rows() != sys_.dim() || sys_.phi.cols() != sys_.dim())
    throw SizeError("seed observable does not match the system representation");
  if (sys_.rep.model().params().N != model().params().N || sys_.rep.model().params().s != model().params().s)
    throw ModelMismatch("system and frame use different models");
  const Model& m = model();
  oriented_.reserve(m.num_frames());
  for (std::size_t i = 0; i < m.num_frames(); ++i) oriented_.push_back(oriented_field(sys_, m.frame_at(i), base));
}

Mat RelationalField::weighted(const RVec& pmf) const {
  Mat out = Mat::Zero(dimS(), dimS());
  for (long i = 0; i < pmf.size(); ++i)
    if (pmf(i) != 0.0) out += pmf(i) * oriented_[static_cast<std::size_t>(i)];
  return out;
}

Mat RelationalField::observable(const Mat& omega) const { return weighted(born_measure(*frame_, omega).pmf); }

Mat RelationalField::extend(const Mat& T) const {
  Eigen::VectorXcd w = complex_measure(*frame_, T);
  Mat out = Mat::Zero(dimS(), dimS());
  for (long i = 0; i < w.size(); ++i) out += w(i) * oriented_[static_cast<std::size_t>(i)];
  return out;
}

Mat RelationalField::local_field(const Disintegration& D, const LatticePoint& x) const {
  const Model& m = model();
  Mat out = Mat::Zero(dimS(), dimS());
  auto it = D.conditional.find(m.point_index(x));
  if (it == D.conditional.end()) return out;
  for (int k = 0; k < m.order(); ++k) out += it->second(k) * oriented_[m.frame_index({x, m.boost_value(k)})];
  return out;
}

Mat RelationalField::local_field(const Mat& omega, const LatticePoint& x, const Tolerances& tol) const {
  return local_field(disintegrate(model(), born_measure(*frame_, omega), tol), x);
}

Mat RelationalField::relativize(long max_dim) const {
  const long d = dimS() * dimR();
  if (d > max_dim) throw SizeError("relativised operator exceeds the configured maximum dimension");
  Mat out = Mat::Zero(d, d);
  for (std::size_t i = 0; i < oriented_.size(); ++i) out += tensor(oriented_[i], frame_->effects[i], max_dim);
  return out;
}

Mat relativize(const SystemModel& sys, const FrameObservable& frame, long max_dim) {
  return RelationalField(sys, std::make_shared<const FrameObservable>(frame)).relativize(max_dim);
}

Mat restrict_to_system(const Mat& O, const Mat& omega, long dimS, long dimR) {
  if (O.rows() != dimS * dimR || O.cols() != dimS * dimR) throw SizeError("operator does not factor as dimS x dimR");
  if (omega.rows() != dimR || omega.cols() != dimR) throw SizeError("frame state has wrong dimension");
  Mat out = Mat::Zero(dimS, dimS);
  for (long i = 0; i < dimS; ++i)
    for (long j = 0; j < dimS; ++j) {
      // Tr[omega * O_ij] with O_ij the (i,j) block of O
      out(i, j) = omega.cwiseProduct(O.block(i * dimR, j * dimR, dimR, dimR).transpose()).sum();
    }
  return out;
}

Mat relational_local_observable(const RelationalField& rf, const Mat& omega) { return rf.observable(omega); }

Mat relational_local_field(const RelationalField& rf, const Mat& omega, const LatticePoint& x, const Tolerances& tol) {
  return rf.local_field(omega, x, tol);
}

Mat extend_trace_class(const RelationalField& rf, const Mat& T) { return rf.extend(T); }

Mat predual_polarization(const RelationalField& rf, const Mat& omega, const Mat& rho) {
  const Model& m = rf.model();
  RVec pmf = born_measure(rf.frame(), omega).pmf;
  Mat out = Mat::Zero(rf.dimS(), rf.dimS());
  for (std::size_t i = 0; i < m.num_frames(); ++i) {
    if (pmf(static_cast<long>(i)) == 0.0) continue;
    out += pmf(static_cast<long>(i)) * shift_state(rf.system().rep, rho, m.element_to(m.frame_at(i), m.base_frame()));
  }
  return out;
}

OrientedFrame build_globally_oriented(const GloballyOrientedSpec& spec, const Tolerances& tol) {
  const Model& m = spec.repM.model();
  if (spec.F.size() != m.num_points() || spec.G.size() != static_cast<std::size_t>(m.order()))
    throw GlobalOrientationError("component POVMs must be indexed by M and by C");
  for (const auto& g : m.generators()) {
    for (const auto& x : m.points())
      if ((spec.repM.conj(g, spec.F[m.point_index(x)]) - spec.F[m.point_index(m.act(g, x))]).cwiseAbs().maxCoeff() >
          tol.eq)
        throw GlobalOrientationError("spacetime component is not covariant");
    for (int k = 0; k < m.order(); ++k) {
      int lam = mod(static_cast<long long>(g.boost) * m.boost_value(k), m.N());
      if ((spec.repL.conj(g, spec.G[k]) - spec.G[m.boost_index(lam)]).cwiseAbs().maxCoeff() > tol.eq)
        throw GlobalOrientationError("Lorentz component is not boost covariant and translation invariant");
    }
  }
  require_state(spec.omegaM, tol);
  require_state(spec.omegaL, tol);
  auto E = std::make_shared<FrameObservable>();
  E->rep = tensor_rep(spec.repM, spec.repL);
  E->effects.reserve(m.num_frames());
  for (const auto& f : m.frames())
    E->effects.push_back(tensor(spec.F[m.point_index(f.x)], spec.G[m.boost_index(f.lam)], tol.max_dim));
  return {E, tensor(spec.omegaM, spec.omegaL, tol.max_dim)};
}

GloballyOrientedSpec sharp_global_spec(std::shared_ptr<const Model> m, const Mat& omegaM, const Mat& omegaL) {
  GloballyOrientedSpec s{position_representation(m), {}, omegaM, lorentz_representation(m), {}, omegaL};
  const long np = static_cast<long>(m->num_points());
  for (long i = 0; i < np; ++i) {
    Mat P = Mat::Zero(np, np);
    P(i, i) = 1.0;
    s.F.push_back(P);
  }
  for (int k = 0; k < m->order(); ++k) {
    Mat P = Mat::Zero(m->order(), m->order());
    P(k, k) = 1.0;
    s.G.push_back(P);
  }
  return s;
}

double global_orientation_residual(const Model& m, const BornMeasure& mu, const Tolerances& tol) {
  Disintegration D = disintegrate(m, mu, tol);
  RVec lor = lorentz_marginal(m, mu.pmf);
  double r = 0.0;
  for (const auto& [p, c] : D.conditional) r = std::max(r, (c - lor).cwiseAbs().maxCoeff());
  return r;
}

}  // namespace rqft
