#include "rqft/frame.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace rqft {

double FrameObservable::normalization_residual() const {
  Mat S = Mat::Zero(dim(), dim());
  for (const auto& E : effects) S += E;
  return (S - Mat::Identity(dim(), dim())).cwiseAbs().maxCoeff();
}

double FrameObservable::covariance_residual(bool all_elements) const {
  const Model& m = model();
  std::vector<GroupElement> gs = all_elements ? m.elements() : m.generators();
  double r = 0.0;
  for (const auto& g : gs)
    for (std::size_t i = 0; i < effects.size(); ++i) {
      FramePoint gf = m.act(g, m.frame_at(i));
      r = std::max(r, (rep.conj(g, effects[i]) - effects[m.frame_index(gf)]).cwiseAbs().maxCoeff());
    }
  return r;
}

FrameObservable build_frame(const UnitaryRep& rep, const Mat& seed, const Tolerances& tol) {
  if (seed.rows() != rep.dim() || seed.cols() != rep.dim()) throw SizeError("seed effect has wrong dimension");
  if (psd_gap(seed, tol.herm) < -tol.psd) throw InvalidOperator("seed effect is not positive");
  const Model& m = rep.model();
  std::vector<Mat> orbit;
  orbit.reserve(m.num_frames());
  Mat K = Mat::Zero(rep.dim(), rep.dim());
  for (std::size_t i = 0; i < m.num_frames(); ++i) {
    orbit.push_back(rep.conj(m.element_to(m.frame_at(i), m.base_frame()), seed));
    K += orbit.back();
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (K + K.adjoint()));
  const double hi = es.eigenvalues().cwiseAbs().maxCoeff();
  if (hi == 0.0 || es.eigenvalues().minCoeff() <= 1e-12 * hi) throw DegenerateSeed("orbit sum of the seed is not invertible");
  Mat Kih = es.eigenvectors() * es.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
  FrameObservable E{rep, {}};
  E.effects.reserve(orbit.size());
  for (const auto& O : orbit) {
    Mat e = Kih * O * Kih;
    E.effects.push_back(0.5 * (e + e.adjoint()));
  }
  return E;
}

FrameObservable uniform_frame(const UnitaryRep& rep) {
  const double w = 1.0 / static_cast<double>(rep.model().num_frames());
  return FrameObservable{rep, std::vector<Mat>(rep.model().num_frames(), w * Mat::Identity(rep.dim(), rep.dim()))};
}

FrameObservable sharp_regular_frame(std::shared_ptr<const Model> m) {
  const long d = static_cast<long>(m->num_frames());
  FrameObservable E{regular_representation(m), {}};
  for (long i = 0; i < d; ++i) {
    Mat P = Mat::Zero(d, d);
    P(i, i) = 1.0;
    E.effects.push_back(P);
  }
  return E;
}

FrameObservable position_frame(std::shared_ptr<const Model> m, long internal_dim) {
  const long np = static_cast<long>(m->num_points());
  const long d = np * internal_dim;
  FrameObservable E{tensor_rep(position_representation(m), trivial_representation(m, internal_dim)), {}};
  const double w = 1.0 / m->order();
  for (const auto& f : m->frames()) {
    Mat P = Mat::Zero(d, d);
    const long p = static_cast<long>(m->point_index(f.x));
    for (long k = 0; k < internal_dim; ++k) P(p * internal_dim + k, p * internal_dim + k) = w;
    E.effects.push_back(P);
  }
  return E;
}

FrameObservable vacuum_complement_frame(std::shared_ptr<const Model> m) {
  UnitaryRep reg = regular_representation(m);
  Mat P = translation_fixed_projector(reg);
  const long d = reg.dim();
  Eigen::SelfAdjointEigenSolver<Mat> es(Mat::Identity(d, d) - P);
  std::vector<long> cols;
  for (long i = 0; i < d; ++i)
    if (es.eigenvalues()(i) > 0.5) cols.push_back(i);
  Mat Q(d, static_cast<long>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) Q.col(static_cast<long>(j)) = es.eigenvectors().col(cols[j]);
  FrameObservable E{restrict_rep(reg, Q), {}};
  for (long i = 0; i < d; ++i) {
    Mat row = Q.row(i);
    E.effects.push_back(row.adjoint() * row);
  }
  return E;
}

BornMeasure born_measure(const FrameObservable& E, const Mat& omega) {
  if (omega.rows() != E.dim() || omega.cols() != E.dim()) throw SizeError("state dimension does not match frame");
  RVec p(E.effects.size());
  for (std::size_t i = 0; i < E.effects.size(); ++i)
    p(static_cast<long>(i)) = (omega.cwiseProduct(E.effects[i].transpose())).sum().real();
  return {p};
}

BornMeasure born_measure(const OrientedFrame& of) { return born_measure(*of.frame, of.omega); }

Eigen::VectorXcd complex_measure(const FrameObservable& E, const Mat& T) {
  if (T.rows() != E.dim() || T.cols() != E.dim()) throw SizeError("operator dimension does not match frame");
  Eigen::VectorXcd p(E.effects.size());
  for (std::size_t i = 0; i < E.effects.size(); ++i)
    p(static_cast<long>(i)) = (T.cwiseProduct(E.effects[i].transpose())).sum();
  return p;
}

std::vector<Mat> spacetime_effects(const FrameObservable& E) {
  const Model& m = E.model();
  std::vector<Mat> F(m.num_points(), Mat::Zero(E.dim(), E.dim()));
  for (std::size_t i = 0; i < E.effects.size(); ++i) F[m.point_index(m.frame_at(i).x)] += E.effects[i];
  return F;
}

std::vector<Mat> lorentz_effects(const FrameObservable& E) {
  const Model& m = E.model();
  std::vector<Mat> G(m.order(), Mat::Zero(E.dim(), E.dim()));
  for (std::size_t i = 0; i < E.effects.size(); ++i) G[m.boost_index(m.frame_at(i).lam)] += E.effects[i];
  return G;
}

RVec spacetime_marginal(const Model& m, const RVec& pmf) {
  RVec out = RVec::Zero(static_cast<long>(m.num_points()));
  for (long i = 0; i < pmf.size(); ++i) out(static_cast<long>(m.point_index(m.frame_at(i).x))) += pmf(i);
  return out;
}

RVec lorentz_marginal(const Model& m, const RVec& pmf) {
  RVec out = RVec::Zero(m.order());
  for (long i = 0; i < pmf.size(); ++i) out(m.boost_index(m.frame_at(i).lam)) += pmf(i);
  return out;
}

Marginals marginals(const OrientedFrame& of) {
  const Model& m = of.frame->model();
  BornMeasure mu = born_measure(of);
  return {spacetime_marginal(m, mu.pmf), lorentz_marginal(m, mu.pmf), spacetime_effects(*of.frame),
          lorentz_effects(*of.frame)};
}

Disintegration disintegrate(const Model& m, const BornMeasure& mu, const Tolerances& tol) {
  Disintegration D;
  D.marginal = spacetime_marginal(m, mu.pmf);
  for (std::size_t p = 0; p < m.num_points(); ++p) {
    const double w = D.marginal(static_cast<long>(p));
    if (w <= tol.supp) continue;
    RVec c(m.order());
    for (int k = 0; k < m.order(); ++k)
      c(k) = mu.pmf(static_cast<long>(m.frame_index({m.point_at(p), m.boost_value(k)}))) / w;
    D.conditional.emplace(p, c);
  }
  return D;
}

Region support(const Model& m, const BornMeasure& mu, const Tolerances& tol) {
  RVec marg = spacetime_marginal(m, mu.pmf);
  Region U;
  for (long p = 0; p < marg.size(); ++p)
    if (marg(p) > tol.supp) U.insert(m.point_at(static_cast<std::size_t>(p)));
  return U;
}

std::vector<std::size_t> frame_support(const BornMeasure& mu, const Tolerances& tol) {
  std::vector<std::size_t> out;
  for (long i = 0; i < mu.pmf.size(); ++i)
    if (mu.pmf(i) > tol.supp) out.push_back(static_cast<std::size_t>(i));
  return out;
}

Mat iterated_sum(const Model& m, const Disintegration& D, const std::function<Mat(const FramePoint&)>& value) {
  Mat total;
  for (const auto& [p, cond] : D.conditional) {
    Mat fibre;
    for (int k = 0; k < m.order(); ++k) {
      Mat v = cond(k) * value({m.point_at(p), m.boost_value(k)});
      fibre = fibre.size() ? Mat(fibre + v) : v;
    }
    Mat w = D.marginal(static_cast<long>(p)) * fibre;
    total = total.size() ? Mat(total + w) : w;
  }
  return total;
}

Ovm as_ovm(const FrameObservable& E) { return {E.dim(), E.effects}; }

Ovm pushforward(const Ovm& E, const std::vector<std::size_t>& map, std::size_t n_out) {
  if (map.size() != E.effects.size()) throw SizeError("push-forward map must be total on the sample space");
  Ovm out{E.dim, std::vector<Mat>(n_out, Mat::Zero(E.dim, E.dim))};
  for (std::size_t i = 0; i < map.size(); ++i) out.effects.at(map[i]) += E.effects[i];
  return out;
}

Eigen::VectorXcd ovm_born(const Ovm& E, const Mat& omega) {
  Eigen::VectorXcd p(E.effects.size());
  for (std::size_t i = 0; i < E.effects.size(); ++i) p(static_cast<long>(i)) = (omega * E.effects[i]).trace();
  return p;
}

RVec pushforward_measure(const RVec& mu, const std::vector<std::size_t>& map, std::size_t n_out) {
  RVec out = RVec::Zero(static_cast<long>(n_out));
  for (std::size_t i = 0; i < map.size(); ++i) out(static_cast<long>(map[i])) += mu(static_cast<long>(i));
  return out;
}

ProductOvm product_ovm(const Ovm& E1, const Ovm& E2) {
  if (E1.dim != E2.dim) throw SizeError("product OVM needs a common Hilbert space");
  ProductOvm P{{E1.dim, {}}, 0.0, 0.0};
  P.ovm.effects.reserve(E1.effects.size() * E2.effects.size());
  double gap = std::numeric_limits<double>::infinity();
  for (const auto& A : E1.effects)
    for (const auto& B : E2.effects) {
      Mat C = A * B;
      P.max_herm_residual = std::max(P.max_herm_residual, herm_residual(C));
      Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (C + C.adjoint()), Eigen::EigenvaluesOnly);
      gap = std::min(gap, es.eigenvalues().minCoeff());
      P.ovm.effects.push_back(std::move(C));
    }
  P.min_psd_gap = gap;
  return P;
}

namespace {
Vec vec(const Mat& X) { return Eigen::Map<const Vec>(X.data(), X.size()); }
Mat unvec(const Vec& v, long d) { return Eigen::Map<const Mat>(v.data(), d, d); }
}  // namespace

Mat Channel::apply(const Mat& X) const {
  if (X.rows() != din || X.cols() != din) throw SizeError("channel input has wrong dimension");
  return unvec(S * vec(X), dout);
}

Mat Channel::apply_predual(const Mat& rho) const {
  if (rho.rows() != dout || rho.cols() != dout) throw SizeError("predual input has wrong dimension");
  return unvec(S.adjoint() * vec(rho), din);
}

Mat Channel::choi() const {
  Mat C = Mat::Zero(din * dout, din * dout);
  for (long i = 0; i < din; ++i)
    for (long j = 0; j < din; ++j) {
      Mat Eij = Mat::Zero(din, din);
      Eij(i, j) = 1.0;
      C.block(i * dout, j * dout, dout, dout) = apply(Eij);
    }
  return C;
}

Channel channel_from_kraus(const std::vector<Mat>& kraus) {
  if (kraus.empty()) throw ChannelError("channel needs at least one Kraus operator");
  const long din = kraus.front().rows(), dout = kraus.front().cols();
  Channel c{din, dout, Mat::Zero(dout * dout, din * din), kraus};
  for (const auto& K : kraus) {
    if (K.rows() != din || K.cols() != dout) throw SizeError("Kraus operators must share a shape");
    c.S += tensor(K.transpose(), K.adjoint(), 1L << 20);
  }
  return c;
}

Channel conjugation_channel(const Mat& U) { return channel_from_kraus({U.adjoint()}); }

Channel random_channel(CounterRng& rng, long din, long dout, int n_kraus) {
  std::vector<Mat> G;
  Mat T = Mat::Zero(dout, dout);
  for (int i = 0; i < n_kraus; ++i) {
    G.push_back(random_matrix(rng, din, dout));
    T += G.back().adjoint() * G.back();
  }
  Mat Tih = psd_inv_sqrt(T);
  for (auto& K : G) K = K * Tih;
  return channel_from_kraus(G);
}

Channel equivariant_average(const Channel& psi, const UnitaryRep& rep_in, const UnitaryRep& rep_out) {
  if (psi.kraus.empty()) throw ChannelError("group averaging needs the Kraus form of the channel");
  if (rep_in.dim() != psi.din || rep_out.dim() != psi.dout) throw SizeError("representations do not match the channel");
  const std::size_t n = rep_in.model().num_elements();
  const double w = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<Mat> kraus;
  kraus.reserve(n * psi.kraus.size());
  for (std::size_t g = 0; g < n; ++g)
    for (const auto& K : psi.kraus) kraus.push_back(w * rep_in.at(g).adjoint() * K * rep_out.at(g));
  return channel_from_kraus(kraus);
}

double channel_cp_gap(const Channel& psi, double tol_herm) {
  Mat C = psi.choi();
  return psd_gap(C, tol_herm * std::max(1.0, C.cwiseAbs().maxCoeff()));
}

double channel_unitality_residual(const Channel& psi) {
  return (psi.apply(Mat::Identity(psi.din, psi.din)) - Mat::Identity(psi.dout, psi.dout)).cwiseAbs().maxCoeff();
}

double channel_equivariance_residual(const Channel& psi, const UnitaryRep& rep_in, const UnitaryRep& rep_out) {
  double r = 0.0;
  const Model& m = rep_in.model();
  for (const auto& g : m.generators())
    for (long i = 0; i < psi.din; ++i)
      for (long j = 0; j < psi.din; ++j) {
        Mat Eij = Mat::Zero(psi.din, psi.din);
        Eij(i, j) = 1.0;
        r = std::max(r, (psi.apply(rep_in.conj(g, Eij)) - rep_out.conj(g, psi.apply(Eij))).cwiseAbs().maxCoeff());
      }
  return r;
}

void validate_channel(const Channel& psi, const Tolerances& tol) {
  if (psi.S.rows() != psi.dout * psi.dout || psi.S.cols() != psi.din * psi.din)
    throw ChannelError("superoperator has wrong shape");
  if (channel_cp_gap(psi, 1e-8) < -tol.psd) throw ChannelError("channel is not completely positive");
  if (channel_unitality_residual(psi) > tol.eq) throw ChannelError("channel is not unital");
}

FrameObservable channel_compose(const Channel& psi, const FrameObservable& E, const UnitaryRep& rep_out,
                                const Tolerances& tol) {
  if (psi.din != E.dim() || psi.dout != rep_out.dim()) throw SizeError("channel does not match frame");
  validate_channel(psi, tol);
  FrameObservable out{rep_out, {}};
  out.effects.reserve(E.effects.size());
  for (const auto& e : E.effects) out.effects.push_back(psi.apply(e));
  return out;
}

std::vector<ScanRow> vacuum_orthogonality_scan(const FrameFamily& family, const Region& region,
                                               const std::vector<int>& Ns, const Tolerances& tol) {
  std::vector<ScanRow> rows;
  for (int N : Ns) {
    auto [E, Omega] = family(N);
    if (state_invariance_residual(E.rep, Omega, true) > tol.eq)
      throw InvarianceError("scan state is not translation invariant");
    const Model& m = E.model();
    std::vector<Mat> F = spacetime_effects(E);
    Region reduced;
    for (const auto& x : region) reduced.insert({mod(x.u, N), mod(x.v, N)});
    double mu = 0.0;
    for (const auto& x : reduced) mu += (Omega * F[m.point_index(x)]).trace().real();
    rows.push_back({N, mu, static_cast<double>(reduced.size()) / (static_cast<double>(N) * N)});
  }
  return rows;
}

StrictVacuumReport strict_vacuum_orthogonality_check(const FrameObservable& E, const Tolerances& tol) {
  StrictVacuumReport r;
  Mat P = translation_fixed_projector(E.rep);
  r.vacuum_dim = std::lround(P.trace().real());
  r.vacuous = r.vacuum_dim == 0;
  for (const auto& F : spacetime_effects(E)) r.residual = std::max(r.residual, opnorm(F * P));
  r.holds = r.residual <= tol.eq;
  return r;
}

}  // namespace rqft
