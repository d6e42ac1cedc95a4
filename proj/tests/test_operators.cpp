#include "doctest.h"
#include "rqft/rng.hpp"

using namespace rqft;

namespace {
std::shared_ptr<const Model> make(int N, int s = 2) {
  return std::make_shared<const Model>(ModelParams{N, s, CausalMode::modular, {}});
}
double maxabs(const Mat& A) { return A.size() ? A.cwiseAbs().maxCoeff() : 0.0; }
}  // namespace

TEST_SUITE("operators") {
  TEST_CASE("tensor products") {
    CounterRng rng(1);
    CHECK(maxabs(tensor(Mat::Identity(2, 2), Mat::Identity(3, 3)) - Mat::Identity(6, 6)) == 0.0);
    Mat A = random_matrix(rng, 3, 3), A2 = random_matrix(rng, 3, 3), B = random_matrix(rng, 2, 2);
    cplx a(0.3, -1.2);
    CHECK(maxabs(tensor(a * A + A2, B) - (a * tensor(A, B) + tensor(A2, B))) < 1e-12);
    CHECK(std::abs(tensor(A, B).trace() - A.trace() * B.trace()) < 1e-12);
    CHECK_THROWS_AS(tensor(Mat::Identity(70, 70), Mat::Identity(70, 70)), SizeError);
  }

  TEST_CASE("partial traces") {
    CounterRng rng(2);
    Mat A = random_matrix(rng, 3, 3), B = random_matrix(rng, 2, 2);
    CHECK(maxabs(partial_trace_frame(tensor(A, B), 3, 2) - B.trace() * A) < 1e-12);
    Mat O = random_matrix(rng, 6, 6);
    CHECK(std::abs(partial_trace_frame(O, 3, 2).trace() - O.trace()) < 1e-12);
    Mat oracle = Mat::Zero(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 2; ++k) oracle(i, j) += O(i * 2 + k, j * 2 + k);
    CHECK(maxabs(partial_trace_frame(O, 3, 2) - oracle) < 1e-14);
    CHECK_THROWS_AS(partial_trace_frame(O, 4, 2), SizeError);
  }

  TEST_CASE("psd gap") {
    CHECK(psd_gap(Mat::Identity(3, 3)) == doctest::Approx(1.0));
    CHECK(psd_gap(Mat::Zero(3, 3)) == doctest::Approx(0.0));
    Mat D = Mat::Zero(2, 2);
    D(0, 0) = 2.0;
    D(1, 1) = -0.5;
    CHECK(psd_gap(D) == doctest::Approx(-0.5));
    Mat N = Mat::Zero(2, 2);
    N(0, 1) = 1.0;
    CHECK_THROWS_AS(psd_gap(N), HermiticityError);
  }

  TEST_CASE("commutant examples") {
    CHECK(commutant({Mat::Identity(3, 3)}, 3).size() == 9);
    CHECK(commutant(full_algebra(3).basis, 3).size() == 1);
    Mat D = Mat::Zero(4, 4);
    for (int i = 0; i < 4; ++i) D(i, i) = i + 1.0;
    AlgebraSubspace C = commutant({D}, 4);
    CHECK(C.size() == 4);
    // brute force: the kernel of X -> XD - DX written out entrywise
    Mat L = Mat::Zero(16, 16);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) L(i + 4 * j, i + 4 * j) = D(j, j) - D(i, i);
    CHECK(nullspace(L).cols() == 4);
    CHECK(membership_residual(Mat::Identity(4, 4), C) < 1e-12);
  }

  TEST_CASE("commutant is invariant under linear closure") {
    CounterRng rng(3);
    Mat A = random_hermitian(rng, 3), B = random_hermitian(rng, 3);
    AlgebraSubspace c1 = commutant({A}, 3), c2 = commutant({A, 2.0 * A + 0.0 * B}, 3);
    CHECK(equality_residual(c1, c2) < 1e-10);
  }

  TEST_CASE("double commutant and word closure") {
    CHECK(double_commutant({Mat::Identity(4, 4)}, 4).size() == 1);
    CounterRng rng(4);
    Mat P = Mat::Zero(4, 4);
    P.topLeftCorner(2, 2) = random_hermitian(rng, 2);
    Mat Q = Mat::Zero(4, 4);
    Q.bottomRightCorner(2, 2) = random_hermitian(rng, 2);
    std::vector<Mat> S{P, Q};
    AlgebraSubspace dc = double_commutant(S, 4);
    WordClosure wc = generated_algebra(S, 4);
    CHECK(equality_residual(dc, wc.algebra) < 1e-9);
    CHECK(containment_residual(span_of({P, Q, Mat::Identity(4, 4)}, 4), dc) < 1e-9);
    CHECK(equality_residual(double_commutant(dc.basis, 4), dc) < 1e-9);
    CHECK(closure_residual(dc) < 1e-9);
  }

  TEST_CASE("regular representation") {
    auto m = make(3);
    UnitaryRep r = regular_representation(m);
    CHECK(maxabs(r(m->identity()) - Mat::Identity(r.dim(), r.dim())) == 0.0);
    for (std::size_t i = 0; i < m->num_elements(); ++i) {
      const Mat& U = r.at(i);
      for (long c = 0; c < U.cols(); ++c) REQUIRE(U.col(c).cwiseAbs().sum() == doctest::Approx(1.0));
    }
    CHECK(r.homomorphism_residual() < 1e-14);
    CHECK(r.unitarity_residual() < 1e-14);
  }

  TEST_CASE("other representations are homomorphisms") {
    auto m = make(5);
    for (const auto& r : {position_representation(m), lorentz_representation(m),
                          momentum_representation(m, {{1, 1}}), momentum_representation(m, {{0, 0}, {1, 0}})}) {
      CHECK(r.homomorphism_residual() < 1e-12);
      CHECK(r.unitarity_residual() < 1e-12);
    }
    CounterRng rng(5);
    UnitaryRep r = regular_representation(m);
    Mat A = random_matrix(rng, r.dim(), r.dim());
    for (const auto& g : m->generators()) CHECK(r.conj(g, A).norm() == doctest::Approx(A.norm()));
  }

  TEST_CASE("character supports") {
    auto m = make(3);
    auto r = momentum_representation(m, {{0, 0}, {1, 0}});
    CHECK(r.dim() == 3);
    CHECK(character_support(r).size() == 3);
    CHECK(character_support(trivial_representation(m)).size() == 1);
    CHECK(character_support(regular_representation(m)).size() == 9);
  }

  TEST_CASE("random generator is deterministic") {
    CounterRng a(42, 7), b(42, 7), c(43, 7);
    for (int i = 0; i < 10; ++i) CHECK(a.next_u64() == b.next_u64());
    CHECK(CounterRng(42, 7).next_u64() != c.next_u64());
    CounterRng r(9);
    Mat rho = random_state(r, 5);
    CHECK(is_state(rho));
    Mat U = random_unitary(r, 4);
    CHECK(maxabs(U * U.adjoint() - Mat::Identity(4, 4)) < 1e-12);
    CHECK(random_pmf(r, 6).sum() == doctest::Approx(1.0));
  }
}
