#include "doctest.h"
#include "rqft/relativization.hpp"

using namespace rqft;

namespace {
std::shared_ptr<const Model> make(int N, int s = 2) {
  return std::make_shared<const Model>(ModelParams{N, s, CausalMode::modular, {}});
}
double maxabs(const Mat& A) { return A.size() ? A.cwiseAbs().maxCoeff() : 0.0; }
Mat basis_state(long d, long i) {
  Mat P = Mat::Zero(d, d);
  P(i, i) = 1.0;
  return P;
}
}  // namespace

TEST_SUITE("relativization") {
  TEST_CASE("oriented fields") {
    auto m = make(5);
    CounterRng rng(21);
    SystemModel sys{momentum_representation(m, {{1, 1}}), random_matrix(rng, 4, 4)};
    CHECK(maxabs(oriented_field(sys, m->base_frame()) - sys.phi) == 0.0);
    SystemModel id{sys.rep, Mat::Identity(4, 4)};
    CHECK(maxabs(oriented_field(id, {{2, 1}, 3}) - Mat::Identity(4, 4)) < 1e-14);
    for (int t = 0; t < 10; ++t) {
      GroupElement g = m->element_at(rng.index(100));
      FramePoint f = m->frame_at(rng.index(100));
      CHECK(maxabs(sys.rep.conj(g, oriented_field(sys, f)) - oriented_field(sys, m->act(g, f))) < 1e-12);
    }
  }

  TEST_CASE("relativisation map") {
    auto m = make(3);
    CounterRng rng(22);
    UnitaryRep repS = lorentz_representation(m);
    FrameObservable S = sharp_regular_frame(m);
    SystemModel id{repS, Mat::Identity(2, 2)};
    CHECK(maxabs(relativize(id, S) - Mat::Identity(36, 36)) < 1e-12);
    Mat phi = random_matrix(rng, 2, 2);
    Mat Y = relativize({repS, phi}, S), Yd = relativize({repS, phi.adjoint()}, S);
    CHECK(maxabs(Yd - Y.adjoint()) < 1e-12);
    UnitaryRep diag = tensor_rep(repS, S.rep);
    for (const auto& g : m->generators()) CHECK(maxabs(diag.conj(g, Y) - Y) < 1e-10);
    CHECK_THROWS_AS(relativize({repS, phi}, S, 10), SizeError);
  }

  TEST_CASE("restriction") {
    CounterRng rng(23);
    Mat A = random_matrix(rng, 3, 3), B = random_matrix(rng, 4, 4), w = random_state(rng, 4);
    CHECK(maxabs(restrict_to_system(tensor(A, B), w, 3, 4) - (w * B).trace() * A) < 1e-12);
    CHECK(maxabs(restrict_to_system(Mat::Identity(12, 12), w, 3, 4) - Mat::Identity(3, 3)) < 1e-12);
    for (int t = 0; t < 20; ++t) {
      Mat rho = random_state(rng, 3), O = random_matrix(rng, 12, 12);
      CHECK(std::abs((rho * restrict_to_system(O, w, 3, 4)).trace() - (tensor(rho, w) * O).trace()) < 1e-12);
    }
    CHECK_THROWS_AS(restrict_to_system(Mat::Identity(12, 12), w, 4, 4), SizeError);
  }

  TEST_CASE("relational local observables") {
    auto m = make(3);
    CounterRng rng(24);
    UnitaryRep repS = lorentz_representation(m);
    auto S = std::make_shared<const FrameObservable>(sharp_regular_frame(m));
    Mat phi = random_matrix(rng, 2, 2);
    RelationalField rf({repS, phi}, S);
    const std::size_t f0 = m->frame_index({{1, 2}, 2});
    CHECK(maxabs(rf.observable(basis_state(18, f0)) - oriented_field({repS, phi}, m->frame_at(f0))) < 1e-14);
    RelationalField one({repS, Mat::Identity(2, 2)}, S);
    Mat w = random_state(rng, 18);
    CHECK(maxabs(one.observable(w) - Mat::Identity(2, 2)) < 1e-12);
    Mat avg = Mat::Zero(2, 2);
    for (const auto& g : m->elements()) avg += repS.conj(g, phi);
    avg /= static_cast<double>(m->num_elements());
    CHECK(maxabs(rf.observable(Mat::Identity(18, 18) / 18.0) - avg) < 1e-12);
    CHECK(maxabs(rf.observable(w) - restrict_to_system(rf.relativize(), w, 2, 18)) < 1e-12);
    CHECK(opnorm(rf.observable(w)) <= opnorm(phi) + 1e-12);
  }

  TEST_CASE("relational local fields") {
    auto m = make(5);
    CounterRng rng(25);
    UnitaryRep repS = momentum_representation(m, {{1, 1}});
    auto E = std::make_shared<const FrameObservable>(build_frame(lorentz_representation(m), random_psd(rng, 4)));
    RelationalField rf({repS, random_matrix(rng, 4, 4)}, E);
    Mat w = random_state(rng, 4);
    Disintegration D = disintegrate(*m, born_measure(*E, w));
    Mat total = Mat::Zero(4, 4);
    for (const auto& x : m->points()) total += D.marginal(m->point_index(x)) * rf.local_field(D, x);
    CHECK(maxabs(total - rf.observable(w)) < 1e-12);
    auto S = std::make_shared<const FrameObservable>(sharp_regular_frame(m));
    RelationalField rs({repS, rf.system().phi}, S);
    Mat delta = basis_state(100, m->frame_index({{1, 1}, 1}));
    CHECK(maxabs(rs.local_field(delta, {2, 2})) == 0.0);
    CHECK(maxabs(rs.local_field(delta, {1, 1}) - rs.oriented(m->frame_index({{1, 1}, 1}))) < 1e-14);
  }

  TEST_CASE("globally oriented frames") {
    auto m = make(5);
    CounterRng rng(26);
    Mat wM = random_state(rng, 25), wL = random_state(rng, 4);
    OrientedFrame of = build_globally_oriented(sharp_global_spec(m, wM, wL));
    CHECK(of.frame->normalization_residual() < 1e-12);
    CHECK(of.frame->covariance_residual() < 1e-12);
    BornMeasure mu = born_measure(of);
    RVec pM = spacetime_marginal(*m, mu.pmf), pL = lorentz_marginal(*m, mu.pmf);
    for (std::size_t i = 0; i < 100; ++i) {
      FramePoint f = m->frame_at(i);
      CHECK(mu.pmf(i) == doctest::Approx(pM(m->point_index(f.x)) * pL(m->boost_index(f.lam))));
    }
    CHECK(global_orientation_residual(*m, mu) < 1e-12);
    OrientedFrame uu = build_globally_oriented(
        sharp_global_spec(m, Mat::Identity(25, 25) / 25.0, Mat::Identity(4, 4) / 4.0));
    CHECK((born_measure(uu).pmf.array() - 0.01).abs().maxCoeff() < 1e-14);
    Mat dM = basis_state(25, 7);
    OrientedFrame dq = build_globally_oriented(sharp_global_spec(m, dM, wL));
    Disintegration D = disintegrate(*m, born_measure(dq));
    CHECK(D.conditional.size() == 1);
    CHECK((D.conditional.begin()->second - wL.diagonal().real()).cwiseAbs().maxCoeff() < 1e-12);

    // translation covariance of the relational local field
    UnitaryRep repS = momentum_representation(m, {{1, 1}});
    RelationalField rf({repS, random_matrix(rng, 4, 4)}, of.frame);
    Disintegration Dg = disintegrate(*m, mu);
    for (const auto& x : m->points()) {
      LatticePoint a{2, 4};
      CHECK(maxabs(repS.conj(m->translation(a), rf.local_field(Dg, x)) - rf.local_field(Dg, m->add(x, a))) < 1e-12);
    }
    GloballyOrientedSpec bad = sharp_global_spec(m, wM, wL);
    bad.G[0] = Mat::Identity(4, 4);
    CHECK_THROWS_AS(build_globally_oriented(bad), GlobalOrientationError);
  }

  TEST_CASE("trace-class extension and polarisation") {
    auto m = make(5);
    CounterRng rng(27);
    UnitaryRep repS = momentum_representation(m, {{1, 1}});
    auto E = std::make_shared<const FrameObservable>(build_frame(lorentz_representation(m), random_psd(rng, 4)));
    RelationalField rf({repS, random_matrix(rng, 4, 4)}, E);
    Mat w = random_state(rng, 4);
    CHECK(maxabs(rf.extend(w) - rf.observable(w)) < 1e-12);
    CHECK(maxabs(rf.extend(Mat::Zero(4, 4))) == 0.0);
    Mat T1 = random_matrix(rng, 4, 4), T2 = random_matrix(rng, 4, 4);
    cplx a(0.7, 0.2);
    CHECK(maxabs(rf.extend(a * T1 + T2) - (a * rf.extend(T1) + rf.extend(T2))) < 1e-12);

    Mat Omega = Mat::Identity(4, 4) / 4.0;
    CHECK(maxabs(predual_polarization(rf, w, Omega) - Omega) < 1e-14);
    Mat rho = random_state(rng, 4);
    Mat pol = predual_polarization(rf, w, rho);
    CHECK(is_state(pol));
    double worst = 0.0;
    for (const auto& B : full_algebra(4).basis) {
      RelationalField rb({repS, B}, E);
      worst = std::max(worst, std::abs((rho * rb.observable(w)).trace() - (pol * B).trace()));
    }
    CHECK(worst < 1e-12);
    auto S = std::make_shared<const FrameObservable>(sharp_regular_frame(m));
    RelationalField rs({repS, rf.system().phi}, S);
    const std::size_t f0 = m->frame_index({{3, 1}, 4});
    GroupElement g0 = m->element_to(m->frame_at(f0), m->base_frame());
    CHECK(maxabs(predual_polarization(rs, basis_state(100, f0), rho) - repS(g0).adjoint() * rho * repS(g0)) < 1e-14);
  }

  TEST_CASE("re-basing leaves relational observables unchanged") {
    auto m = make(5);
    CounterRng rng(28);
    UnitaryRep repS = momentum_representation(m, {{1, 1}});
    auto E = std::make_shared<const FrameObservable>(build_frame(lorentz_representation(m), random_psd(rng, 4)));
    Mat phi = random_matrix(rng, 4, 4);
    GroupElement h{{3, 2}, 4};
    RelationalField base({repS, phi}, E);
    RelationalField moved({repS, repS.conj(h, phi)}, E, m->act(h, m->base_frame()));
    Mat w = random_state(rng, 4);
    CHECK(maxabs(base.observable(w) - moved.observable(w)) < 1e-12);
  }
}
