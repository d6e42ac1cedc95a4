#include "doctest.h"
#include "rqft/wightman.hpp"

using namespace rqft;

namespace {
std::shared_ptr<const Model> make(int N, int s = 2, CausalMode mode = CausalMode::modular, std::optional<int> W = {}) {
  return std::make_shared<const Model>(ModelParams{N, s, mode, W});
}
Mat basis_state(long d, long i) {
  Mat P = Mat::Zero(d, d);
  P(i, i) = 1.0;
  return P;
}
FieldPtr field(const UnitaryRep& rep, const Mat& phi, FramePtr E) {
  return std::make_shared<const RelationalField>(SystemModel{rep, phi}, E);
}
Mat pure(const Vec& v) { return v * v.adjoint(); }

struct Setup {
  std::shared_ptr<const Model> m = make(3);
  UnitaryRep rep = momentum_representation(m, {{0, 0}, {1, 0}});
  VacuumModel vac{rep, basis_state(3, 0)};
  CounterRng rng{41};
};
}  // namespace

TEST_SUITE("wightman") {
  TEST_CASE("vacuum expectation values and kernels") {
    Setup s;
    validate_vacuum(s.vac);
    auto S = std::make_shared<const FrameObservable>(sharp_regular_frame(s.m));
    Mat w1 = random_state(s.rng, 18), w2 = random_state(s.rng, 18);
    FieldPtr one = field(s.rep, Mat::Identity(3, 3), S);
    CHECK(std::abs(vev(s.vac, {{one, w1}, {one, w2}}) - 1.0) < 1e-12);
    FieldPtr h = field(s.rep, random_hermitian(s.rng, 3), S);
    CHECK(std::abs(vev(s.vac, {{h, w1}}).imag()) < 1e-14);
    FieldPtr a = field(s.rep, random_matrix(s.rng, 3, 3), S), b = field(s.rep, random_matrix(s.rng, 3, 3), S);
    VevSpec spec{{a, w1}, {b, w2}};
    CHECK(std::abs(vev(s.vac, spec) - vev_from_kernels(s.vac, spec)) < 1e-12);
    const std::size_t f0 = s.m->frame_index({{1, 1}, 2});
    Mat d = basis_state(18, f0);
    CHECK(std::abs(kernel(s.vac, {{a, d}}, {{2, 2}})) == 0.0);
    CHECK(std::abs(kernel(s.vac, {{a, d}}, {{1, 1}}) - (s.vac.Omega * a->oriented(f0)).trace()) < 1e-14);
    VacuumModel badvac{s.rep, basis_state(3, 1)};
    CHECK_THROWS_AS(validate_vacuum(badvac), InvarianceError);
  }

  TEST_CASE("difference kernels") {
    Setup s;
    Mat wL = random_state(s.rng, 2);
    OrientedFrame of = build_globally_oriented(sharp_global_spec(s.m, Mat::Identity(9, 9) / 9.0, wL));
    OrientedFrame of2 = build_globally_oriented(sharp_global_spec(s.m, random_state(s.rng, 9), random_state(s.rng, 2)));
    FieldPtr a = field(s.rep, random_matrix(s.rng, 3, 3), of.frame), b = field(s.rep, random_matrix(s.rng, 3, 3), of.frame);
    Mat w2 = tensor(Mat::Identity(9, 9) / 9.0, random_state(s.rng, 2));
    VevSpec spec{{a, of.omega}, {b, w2}};
    for (const auto& x : s.m->points())
      for (const auto& y : s.m->points()) {
        cplx direct = kernel(s.vac, spec, {x, y});
        REQUIRE(std::abs(direct - difference_kernel(s.vac, spec, {s.m->sub(x, y)})) < 1e-12);
        REQUIRE(std::abs(direct - kernel(s.vac, spec, {s.m->neg(y), s.m->neg(x)})) < 1e-12);
      }
    cplx k0 = kernel(s.vac, {{a, of.omega}}, {{0, 0}});
    for (const auto& x : s.m->points()) CHECK(std::abs(kernel(s.vac, {{a, of.omega}}, {x}) - k0) < 1e-12);
    CHECK_THROWS_AS(difference_kernel(s.vac, VevSpec{{a, basis_state(18, 0)}, {b, w2}}, {{0, 0}}), PreconditionError);
    (void)of2;
  }

  TEST_CASE("spectral condition") {
    Setup s;
    OrientedFrame of = build_globally_oriented(sharp_global_spec(s.m, Mat::Identity(9, 9) / 9.0, random_state(s.rng, 2)));
    FieldPtr a = field(s.rep, random_matrix(s.rng, 3, 3), of.frame), b = field(s.rep, random_matrix(s.rng, 3, 3), of.frame);
    SpectralReport r = spectral_check(s.vac, {{a, of.omega}, {b, of.omega}});
    CHECK(r.support.size() == 3);
    CHECK(r.outside_count == 6);
    CHECK(r.verdict == Verdict::verified);
    CHECK(r.max_outside <= 1e-9);
    CHECK(r.oracle_residual <= 1e-9);
    // some transform value inside the support is nonzero, so the check is not trivial
    double inside = 0.0;
    for (const auto& v : r.table) inside = std::max(inside, std::abs(v));
    CHECK(inside > 1e-3);

    UnitaryRep triv = trivial_representation(s.m, 2);
    VacuumModel tv{triv, random_state(s.rng, 2)};
    FieldPtr ta = field(triv, random_matrix(s.rng, 2, 2), of.frame), tb = field(triv, random_matrix(s.rng, 2, 2), of.frame);
    SpectralReport rt = spectral_check(tv, {{ta, of.omega}, {tb, of.omega}});
    CHECK(rt.support.size() == 1);
    CHECK(rt.verdict == Verdict::verified);

    UnitaryRep reg = regular_representation(s.m);
    VacuumModel rv{reg, Mat::Identity(18, 18) / 18.0};
    FieldPtr ra = field(reg, random_matrix(s.rng, 18, 18), of.frame);
    CHECK(spectral_check(rv, {{ra, of.omega}, {ra, of.omega}}).verdict == Verdict::vacuous);

    std::vector<cplx> vals(81);
    for (auto& v : vals) v = s.rng.cnormal();
    auto f = kernel_dft(*s.m, 3, vals), g = kernel_dft_naive(*s.m, 3, vals);
    double diff = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) diff = std::max(diff, std::abs(f[i] - g[i]));
    CHECK(diff < 1e-10);
  }

  TEST_CASE("hermiticity and positivity") {
    Setup s;
    auto S = std::make_shared<const FrameObservable>(sharp_regular_frame(s.m));
    FieldPtr h = field(s.rep, random_hermitian(s.rng, 3), S);
    Mat w = random_state(s.rng, 18);
    CHECK(hermiticity_check(s.vac, {{h, w}}, {}).vev_residual < 1e-14);
    FieldPtr a = field(s.rep, random_matrix(s.rng, 3, 3), S), b = field(s.rep, random_matrix(s.rng, 3, 3), S);
    std::vector<std::vector<LatticePoint>> samples;
    for (int i = 0; i < 10; ++i) samples.push_back({s.m->point_at(s.rng.index(9)), s.m->point_at(s.rng.index(9))});
    HermiticityReport hr = hermiticity_check(s.vac, {{a, w}, {b, random_state(s.rng, 18)}}, samples);
    CHECK(hr.vev_residual <= 1e-12);
    CHECK(hr.kernel_residual <= 1e-12);

    VacuumModel mixed{s.rep, Mat::Identity(3, 3) / 3.0};
    PositivityReport single = positivity_check(mixed, {{{a, w}}});
    CHECK(single.gram(0, 0).real() >= 0.0);
    CHECK(std::abs(single.gram(0, 0) - vev(mixed, {{adjoint_reversed({{a, w}})[0]}, {a, w}})) < 1e-12);
    FieldPtr one = field(s.rep, Mat::Identity(3, 3), S);
    PositivityReport ones = positivity_check(mixed, {{{one, w}}, {{one, w}}});
    CHECK((ones.gram - Mat::Ones(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
    std::vector<VevSpec> fams;
    for (int j = 0; j < 3; ++j)
      fams.push_back({{a, random_state(s.rng, 18)}, {b, random_state(s.rng, 18)}});
    PositivityReport pr = positivity_check(mixed, fams);
    CHECK(pr.psd_gap >= -1e-10);
    CHECK(pr.oracle_residual < 1e-12);
  }

  TEST_CASE("time ordering") {
    auto m = make(5, 2, CausalMode::lifted, 1);
    UnitaryRep rep = momentum_representation(m, {{1, 1}});
    VacuumModel vac{rep, Mat::Identity(4, 4) / 4.0};
    auto S = std::make_shared<const FrameObservable>(sharp_regular_frame(m));
    CounterRng rng(42);
    FieldPtr a = field(rep, random_matrix(rng, 4, 4), S), b = field(rep, random_matrix(rng, 4, 4), S);
    Mat w1 = random_state(rng, 100), w2 = random_state(rng, 100);
    VevSpec spec{{a, w1}, {b, w2}}, rev{{b, w2}, {a, w1}};
    LatticePoint later{1, 0}, earlier{0, 0}, other{4, 1};
    CHECK(std::abs(time_ordered(vac, spec, {later, earlier}).value - kernel(vac, spec, {later, earlier})) < 1e-12);
    CHECK(std::abs(time_ordered(vac, spec, {earlier, later}).value - kernel(vac, rev, {later, earlier})) < 1e-12);
    for (const auto& x : {later, earlier, other})
      for (const auto& y : {later, earlier, other}) {
        TimeOrderedResult t = time_ordered(vac, spec, {x, y});
        int xi0 = m->time(x) - m->time(y);
        cplx split = theta(xi0) * kernel(vac, spec, {x, y}) + theta(-xi0) * kernel(vac, rev, {y, x});
        CHECK(std::abs(t.value - split) < 1e-12);
        CHECK(t.coincident_times == (xi0 == 0));
      }
    FieldPtr c = field(rep, random_matrix(rng, 4, 4), S);
    VevSpec three{{a, w1}, {b, w2}, {c, random_state(rng, 100)}};
    std::vector<LatticePoint> xs{{1, 0}, {0, 0}, {4, 1}};
    CHECK(std::abs(time_ordered(vac, three, xs).value - time_ordered_from_kernels(vac, three, xs)) < 1e-12);
    auto mm = make(5);
    UnitaryRep rm = momentum_representation(mm, {{1, 1}});
    auto Sm = std::make_shared<const FrameObservable>(sharp_regular_frame(mm));
    FieldPtr am = field(rm, Mat::Identity(4, 4), Sm);
    VacuumModel vm{rm, Mat::Identity(4, 4) / 4.0};
    CHECK_THROWS_AS(time_ordered(vm, {{am, w1}}, {{0, 0}}), PreconditionError);
  }

  TEST_CASE("irreducibility") {
    auto m = make(5);
    UnitaryRep rep = momentum_representation(m, {{1, 1}});
    auto S = std::make_shared<const FrameObservable>(sharp_regular_frame(m));
    CounterRng rng(43);
    RelationalField id({rep, Mat::Identity(4, 4)}, S);
    CHECK(irreducibility_check(id).commutant_dim == 16);
    RelationalField gen({rep, random_matrix(rng, 4, 4)}, S);
    IrreducibilityReport g = irreducibility_check(gen);
    CHECK(g.commutant_dim == 1);
    CHECK(g.irreducible);

    auto m3 = make(3);
    UnitaryRep reg = regular_representation(m3);
    auto S3 = std::make_shared<const FrameObservable>(sharp_regular_frame(m3));
    Vec v = random_vector(rng, 18);
    RelationalField r1({reg, v * v.adjoint()}, S3);
    std::vector<Mat> B = field_span(r1);
    Mat L(static_cast<long>(B.size()) * 324, 324);
    for (std::size_t k = 0; k < B.size(); ++k)
      L.middleRows(static_cast<long>(k) * 324, 324) =
          tensor(Mat::Identity(18, 18), B[k], 1 << 20) - tensor(B[k].transpose(), Mat::Identity(18, 18), 1 << 20);
    CHECK(static_cast<long>(irreducibility_check(r1).commutant_dim) == nullspace(L).cols());

    // N = 7: the boost orbit of (1,0) is not symmetric under k -> -k
    auto m7 = make(7);
    UnitaryRep rep7 = direct_sum({trivial_representation(m7), momentum_representation(m7, {{1, 0}})});
    auto S7 = std::make_shared<const FrameObservable>(sharp_regular_frame(m7));
    Vec Omega = Vec::Zero(4);
    Omega(0) = 1.0;
    RelationalField f7({rep7, random_hermitian(rng, 4)}, S7);
    IrreducibilityReport r7 = irreducibility_check(f7, &Omega);
    CHECK(r7.unique_invariant_vector);
    CHECK(r7.spectrum_separated);
    CHECK(r7.cyclic);
    CHECK(r7.premises_met);
    CHECK(r7.irreducible);
    CHECK(r7.implication_holds);
  }

  TEST_CASE("smearing functions") {
    auto m = make(3);
    auto S = std::make_shared<const FrameObservable>(sharp_regular_frame(m));
    RVec d = smearing_function({S, basis_state(18, m->frame_index({{2, 1}, 2}))});
    for (std::size_t p = 0; p < 9; ++p) CHECK(d(p) == (m->point_at(p) == LatticePoint{2, 1} ? 1.0 : 0.0));
    RVec u = smearing_function({S, Mat::Identity(18, 18) / 18.0});
    CHECK((u.array() - 1.0 / 9).abs().maxCoeff() < 1e-14);
    CounterRng rng(44);
    Mat w = random_state(rng, 18);
    RelationalField rf({lorentz_representation(m), random_matrix(rng, 2, 2)}, S);
    RVec f = smearing_function({S, w});
    Disintegration D = disintegrate(*m, born_measure(*S, w));
    Mat total = Mat::Zero(2, 2);
    for (const auto& x : m->points()) total += f(m->point_index(x)) * rf.local_field(D, x);
    CHECK((total - rf.observable(w)).cwiseAbs().maxCoeff() < 1e-12);
  }
}
