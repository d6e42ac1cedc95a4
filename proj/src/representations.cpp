#include <algorithm>
#include <cmath>
#include <numbers>

#include "rqft/operators.hpp"

namespace rqft {

UnitaryRep::UnitaryRep(std::shared_ptr<const Model> model, long dim, std::vector<Mat> mats)
    : model_(std::move(model)), dim_(dim), mats_(std::move(mats)) {
  if (mats_.size() != model_->num_elements()) throw SizeError("representation must list every group element");
  for (const auto& U : mats_)
    if (U.rows() != dim_ || U.cols() != dim_) throw SizeError("representation matrix has wrong dimension");
}

Mat UnitaryRep::conj(const GroupElement& g, const Mat& A) const {
  const Mat& U = (*this)(g);
  return U * A * U.adjoint();
}

double UnitaryRep::homomorphism_residual() const {
  double r = 0.0;
  for (std::size_t i = 0; i < mats_.size(); ++i)
    for (std::size_t j = 0; j < mats_.size(); ++j) {
      auto gij = model_->compose(model_->element_at(i), model_->element_at(j));
      r = std::max(r, (mats_[i] * mats_[j] - (*this)(gij)).cwiseAbs().maxCoeff());
    }
  return r;
}

double UnitaryRep::unitarity_residual() const {
  double r = 0.0;
  for (const auto& U : mats_) r = std::max(r, (U * U.adjoint() - Mat::Identity(dim_, dim_)).cwiseAbs().maxCoeff());
  return r;
}

UnitaryRep trivial_representation(std::shared_ptr<const Model> m, long dim) {
  return UnitaryRep::from_function(m, dim, [dim](const GroupElement&) { return Mat(Mat::Identity(dim, dim)); });
}

UnitaryRep regular_representation(std::shared_ptr<const Model> m) {
  const long d = static_cast<long>(m->num_frames());
  const Model& mm = *m;
  return UnitaryRep::from_function(m, d, [&mm, d](const GroupElement& g) {
    Mat U = Mat::Zero(d, d);
    for (long i = 0; i < d; ++i) U(static_cast<long>(mm.frame_index(mm.act(g, mm.frame_at(i)))), i) = 1.0;
    return U;
  });
}

UnitaryRep position_representation(std::shared_ptr<const Model> m) {
  const long d = static_cast<long>(m->num_points());
  const Model& mm = *m;
  return UnitaryRep::from_function(m, d, [&mm, d](const GroupElement& g) {
    Mat U = Mat::Zero(d, d);
    for (long i = 0; i < d; ++i) U(static_cast<long>(mm.point_index(mm.act(g, mm.point_at(i)))), i) = 1.0;
    return U;
  });
}

UnitaryRep lorentz_representation(std::shared_ptr<const Model> m) {
  const long d = m->order();
  const Model& mm = *m;
  return UnitaryRep::from_function(m, d, [&mm, d](const GroupElement& g) {
    Mat U = Mat::Zero(d, d);
    for (long i = 0; i < d; ++i) {
      int lam = mm.boost_value(static_cast<int>(i));
      U(mm.boost_index(mod(static_cast<long long>(g.boost) * lam, mm.N())), i) = 1.0;
    }
    return U;
  });
}

cplx character(const Model& m, const LatticePoint& q, const LatticePoint& a) {
  long long phase = static_cast<long long>(q.u) * a.u + static_cast<long long>(q.v) * a.v;
  double ang = 2.0 * std::numbers::pi * mod(phase, m.N()) / m.N();
  return {std::cos(ang), std::sin(ang)};
}

LatticePoint boost_character(const Model& m, int boost, const LatticePoint& k) {
  // dual action keeping <Lambda k, Lambda . a> = <k, a>
  return {mod(static_cast<long long>(m.inv(boost)) * k.u, m.N()), mod(static_cast<long long>(boost) * k.v, m.N())};
}

std::vector<LatticePoint> boost_closure(const Model& m, const std::vector<LatticePoint>& characters) {
  std::set<LatticePoint> out;
  for (const auto& k : characters)
    for (int b : m.boosts()) out.insert(boost_character(m, b, {mod(k.u, m.N()), mod(k.v, m.N())}));
  return {out.begin(), out.end()};
}

UnitaryRep momentum_representation(std::shared_ptr<const Model> m, const std::vector<LatticePoint>& characters) {
  std::vector<LatticePoint> ks = boost_closure(*m, characters);
  const long d = static_cast<long>(ks.size());
  const Model& mm = *m;
  return UnitaryRep::from_function(m, d, [&mm, ks, d](const GroupElement& g) {
    Mat U = Mat::Zero(d, d);
    for (long i = 0; i < d; ++i) {
      LatticePoint lk = boost_character(mm, g.boost, ks[i]);
      long j = std::lower_bound(ks.begin(), ks.end(), lk) - ks.begin();
      U(j, i) = character(mm, lk, g.a);
    }
    return U;
  });
}

UnitaryRep direct_sum(const std::vector<UnitaryRep>& reps) {
  if (reps.empty()) throw SizeError("direct_sum of nothing");
  long d = 0;
  for (const auto& r : reps) d += r.dim();
  auto m = reps.front().model_ptr();
  std::vector<Mat> mats;
  for (std::size_t i = 0; i < m->num_elements(); ++i) {
    Mat U = Mat::Zero(d, d);
    long off = 0;
    for (const auto& r : reps) {
      U.block(off, off, r.dim(), r.dim()) = r.at(i);
      off += r.dim();
    }
    mats.push_back(U);
  }
  return UnitaryRep(m, d, std::move(mats));
}

UnitaryRep tensor_rep(const UnitaryRep& A, const UnitaryRep& B) {
  std::vector<Mat> mats;
  for (std::size_t i = 0; i < A.model().num_elements(); ++i) mats.push_back(tensor(A.at(i), B.at(i), 1L << 20));
  return UnitaryRep(A.model_ptr(), A.dim() * B.dim(), std::move(mats));
}

UnitaryRep restrict_rep(const UnitaryRep& r, const Mat& Q) {
  std::vector<Mat> mats;
  for (std::size_t i = 0; i < r.model().num_elements(); ++i) mats.push_back(Q.adjoint() * r.at(i) * Q);
  return UnitaryRep(r.model_ptr(), Q.cols(), std::move(mats));
}

Mat character_projector(const UnitaryRep& r, const LatticePoint& q) {
  const Model& m = r.model();
  Mat P = Mat::Zero(r.dim(), r.dim());
  for (const auto& a : m.points()) P += std::conj(character(m, q, a)) * r(m.translation(a));
  return P / static_cast<double>(m.num_points());
}

std::vector<LatticePoint> character_support(const UnitaryRep& r, double tol) {
  std::vector<LatticePoint> out;
  for (const auto& q : r.model().points())
    if (character_projector(r, q).norm() > tol) out.push_back(q);
  return out;
}

Mat translation_fixed_projector(const UnitaryRep& r) { return character_projector(r, {0, 0}); }

Mat invariant_projector(const UnitaryRep& r) {
  Mat P = Mat::Zero(r.dim(), r.dim());
  for (std::size_t i = 0; i < r.model().num_elements(); ++i) P += r.at(i);
  return P / static_cast<double>(r.model().num_elements());
}

double state_invariance_residual(const UnitaryRep& r, const Mat& rho, bool translations_only) {
  double res = 0.0;
  for (const auto& g : r.model().generators()) {
    if (translations_only && g.boost != 1) continue;
    res = std::max(res, (r.conj(g, rho) - rho).norm());
  }
  return res;
}

}  // namespace rqft
