#include "rqft/wightman.hpp"

#include <fftw3.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace rqft {

namespace {

struct FieldTable {
  Disintegration D;
  std::map<std::size_t, Mat> at;  // supported point index -> relational local field
};

FieldTable field_table(const VevEntry& e, const Tolerances& tol) {
  const Model& m = e.field->model();
  FieldTable t{disintegrate(m, born_measure(e.field->frame(), e.omega), tol), {}};
  for (const auto& [p, c] : t.D.conditional) t.at.emplace(p, e.field->local_field(t.D, m.point_at(p)));
  return t;
}

const Model& spec_model(const VevSpec& spec) {
  if (spec.empty()) throw SizeError("empty vacuum expectation specification");
  return spec.front().field->model();
}

cplx trace_with(const Mat& Omega, const Mat& A) { return Omega.cwiseProduct(A.transpose()).sum(); }

// decode a row-major multi-index with 2(n-1) digits in base N into difference vectors
std::vector<LatticePoint> decode(std::size_t idx, int n, int N) {
  std::vector<LatticePoint> xs(static_cast<std::size_t>(n - 1));
  for (int j = n - 2; j >= 0; --j) {
    xs[j].v = static_cast<int>(idx % N);
    idx /= N;
    xs[j].u = static_cast<int>(idx % N);
    idx /= N;
  }
  return xs;
}

std::size_t table_size(int n, int N) {
  std::size_t s = 1;
  for (int i = 0; i < 2 * (n - 1); ++i) s *= static_cast<std::size_t>(N);
  return s;
}

}  // namespace

void validate_vacuum(const VacuumModel& vac, const Tolerances& tol) {
  require_state(vac.Omega, tol);
  if (state_invariance_residual(vac.rep, vac.Omega) > tol.eq) throw InvarianceError("vacuum state is not invariant");
}

cplx vev(const VacuumModel& vac, const VevSpec& spec) {
  Mat P = Mat::Identity(vac.Omega.rows(), vac.Omega.cols());
  for (const auto& e : spec) P = P * e.field->observable(e.omega);
  return trace_with(vac.Omega, P);
}

cplx kernel(const VacuumModel& vac, const VevSpec& spec, const std::vector<LatticePoint>& xs, const Tolerances& tol) {
  if (xs.size() != spec.size()) throw SizeError("one lattice point per field is required");
  Mat P = Mat::Identity(vac.Omega.rows(), vac.Omega.cols());
  for (std::size_t i = 0; i < spec.size(); ++i) P = P * spec[i].field->local_field(spec[i].omega, xs[i], tol);
  return trace_with(vac.Omega, P);
}

cplx vev_from_kernels(const VacuumModel& vac, const VevSpec& spec, const Tolerances& tol) {
  std::vector<FieldTable> tabs;
  for (const auto& e : spec) tabs.push_back(field_table(e, tol));
  cplx total = 0.0;
  const long d = vac.Omega.rows();
  // depth-first over supported tuples
  std::function<void(std::size_t, const Mat&, double)> rec = [&](std::size_t i, const Mat& P, double w) {
    if (i == tabs.size()) {
      total += w * trace_with(vac.Omega, P);
      return;
    }
    for (const auto& [p, F] : tabs[i].at) rec(i + 1, P * F, w * tabs[i].D.marginal(static_cast<long>(p)));
  };
  rec(0, Mat::Identity(d, d), 1.0);
  return total;
}

std::vector<Mat> difference_kernel_operators(const VevSpec& spec, const Tolerances& tol) {
  std::vector<Mat> A;
  for (const auto& e : spec) {
    const Model& m = e.field->model();
    BornMeasure mu = born_measure(e.field->frame(), e.omega);
    if (support(m, mu, tol).size() != m.num_points())
      throw PreconditionError("difference kernels need a full spacetime support");
    if (global_orientation_residual(m, mu, tol) > tol.eq)
      throw PreconditionError("difference kernels need a globally oriented preparation");
    RVec q = lorentz_marginal(m, mu.pmf);
    Mat a = Mat::Zero(e.field->dimS(), e.field->dimS());
    for (int k = 0; k < m.order(); ++k) a += q(k) * e.field->oriented(m.frame_index({{0, 0}, m.boost_value(k)}));
    A.push_back(a);
  }
  return A;
}

cplx difference_kernel(const VacuumModel& vac, const std::vector<Mat>& A, const std::vector<LatticePoint>& xis) {
  if (xis.size() + 1 != A.size()) throw SizeError("n fields need n-1 difference vectors");
  const Model& m = vac.rep.model();
  LatticePoint total{0, 0};
  for (const auto& x : xis) total = m.add(total, x);
  Mat P = vac.rep(m.translation(total)) * A[0];
  for (std::size_t j = 0; j < xis.size(); ++j) P = P * vac.rep(m.translation(xis[j])).adjoint() * A[j + 1];
  return trace_with(vac.Omega, P);
}

cplx difference_kernel(const VacuumModel& vac, const VevSpec& spec, const std::vector<LatticePoint>& xis,
                       const Tolerances& tol) {
  return difference_kernel(vac, difference_kernel_operators(spec, tol), xis);
}

std::vector<cplx> kernel_dft(const Model& m, int n, const std::vector<cplx>& values) {
  const int rank = 2 * (n - 1);
  if (values.size() != table_size(n, m.N())) throw SizeError("kernel table has wrong size");
  std::vector<int> dims(static_cast<std::size_t>(rank), m.N());
  std::vector<cplx> in(values), out(values.size());
  fftw_plan plan = fftw_plan_dft(rank, dims.data(), reinterpret_cast<fftw_complex*>(in.data()),
                                 reinterpret_cast<fftw_complex*>(out.data()), FFTW_BACKWARD, FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
  return out;
}

std::vector<cplx> kernel_dft_naive(const Model& m, int n, const std::vector<cplx>& values) {
  const std::size_t S = table_size(n, m.N());
  std::vector<cplx> out(S, 0.0);
  for (std::size_t qi = 0; qi < S; ++qi) {
    auto q = decode(qi, n, m.N());
    for (std::size_t xi = 0; xi < S; ++xi) {
      auto x = decode(xi, n, m.N());
      long long ph = 0;
      for (std::size_t j = 0; j < q.size(); ++j) ph += static_cast<long long>(q[j].u) * x[j].u + static_cast<long long>(q[j].v) * x[j].v;
      const double ang = 2.0 * std::numbers::pi * mod(ph, m.N()) / m.N();
      out[qi] += cplx(std::cos(ang), std::sin(ang)) * values[xi];
    }
  }
  return out;
}

SpectralReport spectral_check(const VacuumModel& vac, const VevSpec& spec, const Tolerances& tol) {
  const Model& m = spec_model(spec);
  SpectralReport r;
  r.n = static_cast<int>(spec.size());
  if (r.n < 2) throw PreconditionError("the spectral check needs at least two fields");
  std::vector<Mat> A = difference_kernel_operators(spec, tol);
  const std::size_t S = table_size(r.n, m.N());
  std::vector<cplx> W(S);
  for (std::size_t i = 0; i < S; ++i) W[i] = difference_kernel(vac, A, decode(i, r.n, m.N()));
  r.table = kernel_dft(m, r.n, W);
  std::vector<cplx> oracle = kernel_dft_naive(m, r.n, W);
  r.support = character_support(vac.rep);
  std::set<LatticePoint> sup(r.support.begin(), r.support.end());
  for (std::size_t i = 0; i < S; ++i) {
    r.oracle_residual = std::max(r.oracle_residual, std::abs(r.table[i] - oracle[i]));
    auto q = decode(i, r.n, m.N());
    bool outside = std::any_of(q.begin(), q.end(), [&](const LatticePoint& k) { return !sup.contains(k); });
    if (!outside) continue;
    ++r.outside_count;
    r.max_outside = std::max(r.max_outside, std::abs(r.table[i]));
  }
  if (r.outside_count == 0)
    r.verdict = Verdict::vacuous;
  else
    r.verdict = (r.max_outside <= tol.dft && r.oracle_residual <= tol.dft) ? Verdict::verified : Verdict::failed;
  return r;
}

VevSpec adjoint_reversed(const VevSpec& spec) {
  VevSpec out;
  for (auto it = spec.rbegin(); it != spec.rend(); ++it) {
    const RelationalField& f = *it->field;
    SystemModel s{f.system().rep, f.system().phi.adjoint()};
    out.push_back({std::make_shared<const RelationalField>(s, f.frame_ptr()), it->omega});
  }
  return out;
}

HermiticityReport hermiticity_check(const VacuumModel& vac, const VevSpec& spec,
                                    const std::vector<std::vector<LatticePoint>>& samples, const Tolerances& tol) {
  VevSpec rev = adjoint_reversed(spec);
  HermiticityReport r;
  r.vev_residual = std::abs(vev(vac, spec) - std::conj(vev(vac, rev)));
  for (const auto& xs : samples) {
    std::vector<LatticePoint> rx(xs.rbegin(), xs.rend());
    r.kernel_residual = std::max(r.kernel_residual, std::abs(kernel(vac, spec, xs, tol) - std::conj(kernel(vac, rev, rx, tol))));
    ++r.kernel_samples;
  }
  return r;
}

PositivityReport positivity_check(const VacuumModel& vac, const std::vector<VevSpec>& families) {
  const long d = vac.Omega.rows();
  const long J = static_cast<long>(families.size());
  std::vector<Mat> A;
  for (const auto& fam : families) {
    Mat P = Mat::Identity(d, d);
    for (const auto& e : fam) P = P * e.field->observable(e.omega);
    A.push_back(P);
  }
  PositivityReport r;
  r.gram = Mat(J, J);
  for (long j = 0; j < J; ++j)
    for (long k = 0; k < J; ++k) r.gram(j, k) = trace_with(vac.Omega, A[k].adjoint() * A[j]);
  Mat Gh = 0.5 * (r.gram + r.gram.adjoint());
  r.psd_gap = psd_gap(Gh);
  r.all_ones_form = r.gram.sum();
  // G_jk = sum_a p_a <A_k e_a, A_j e_a> from the spectral decomposition of Omega
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (vac.Omega + vac.Omega.adjoint()));
  Mat oracle = Mat::Zero(J, J);
  for (long a = 0; a < d; ++a) {
    const double p = es.eigenvalues()(a);
    if (p <= 0.0) continue;
    std::vector<Vec> v;
    for (long j = 0; j < J; ++j) v.push_back(A[j] * es.eigenvectors().col(a));
    for (long j = 0; j < J; ++j)
      for (long k = 0; k < J; ++k) oracle(j, k) += p * v[k].dot(v[j]);
  }
  r.oracle_residual = (oracle - r.gram).cwiseAbs().maxCoeff();
  return r;
}

double theta(int t) { return t > 0 ? 1.0 : (t == 0 ? 0.5 : 0.0); }

namespace {
void require_lifted(const Model& m) {
  if (m.params().causal_mode != CausalMode::lifted) throw PreconditionError("time ordering needs the lifted causal mode");
}
}  // namespace

TimeOrderedResult time_ordered(const VacuumModel& vac, const VevSpec& spec, const std::vector<LatticePoint>& xs,
                               const Tolerances& tol) {
  const Model& m = spec_model(spec);
  require_lifted(m);
  if (xs.size() != spec.size()) throw SizeError("one lattice point per field is required");
  const std::size_t n = spec.size();
  std::vector<Mat> F;
  std::vector<int> t;
  for (std::size_t i = 0; i < n; ++i) {
    F.push_back(spec[i].field->local_field(spec[i].omega, xs[i], tol));
    t.push_back(m.time(xs[i]));
  }
  TimeOrderedResult r;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) r.coincident_times = r.coincident_times || t[i] == t[j];
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  const long d = vac.Omega.rows();
  Mat T = Mat::Zero(d, d);
  do {
    double w = 1.0;
    for (std::size_t k = 0; k + 1 < n; ++k) w *= theta(t[perm[k]] - t[perm[k + 1]]);
    if (w == 0.0) continue;
    Mat P = Mat::Identity(d, d);
    for (std::size_t k = 0; k < n; ++k) P = P * F[perm[k]];
    T += w * P;
  } while (std::next_permutation(perm.begin(), perm.end()));
  r.value = trace_with(vac.Omega, T);
  return r;
}

cplx time_ordered_from_kernels(const VacuumModel& vac, const VevSpec& spec, const std::vector<LatticePoint>& xs,
                               const Tolerances& tol) {
  const Model& m = spec_model(spec);
  require_lifted(m);
  const std::size_t n = spec.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  cplx total = 0.0;
  do {
    double w = 1.0;
    for (std::size_t k = 0; k + 1 < n; ++k) w *= theta(m.time(xs[perm[k]]) - m.time(xs[perm[k + 1]]));
    if (w == 0.0) continue;
    VevSpec ps;
    std::vector<LatticePoint> px;
    for (std::size_t k : perm) {
      ps.push_back(spec[k]);
      px.push_back(xs[k]);
    }
    total += w * kernel(vac, ps, px, tol);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

std::vector<Mat> field_span(const RelationalField& rf) {
  const auto& E = rf.frame().effects;
  const long nf = static_cast<long>(E.size());
  // the range of T -> (Tr[T E(f)])_f equals the range of the Gram matrix Tr[E(f) E(g)]
  Mat G(nf, nf);
  for (long f = 0; f < nf; ++f)
    for (long g = f; g < nf; ++g) {
      G(f, g) = E[f].cwiseProduct(E[g].transpose()).sum();
      G(g, f) = std::conj(G(f, g));
    }
  Eigen::SelfAdjointEigenSolver<Mat> es(G);
  const double hi = es.eigenvalues().cwiseAbs().maxCoeff();
  std::vector<Mat> gens;
  for (long k = 0; k < nf; ++k) {
    if (es.eigenvalues()(k) <= 1e-10 * hi) continue;
    Mat X = Mat::Zero(rf.dimS(), rf.dimS());
    for (long f = 0; f < nf; ++f) X += es.eigenvectors()(f, k) * rf.oriented(static_cast<std::size_t>(f));
    gens.push_back(X);
  }
  return span_of(gens, rf.dimS()).basis;
}

IrreducibilityReport irreducibility_check(const RelationalField& rf, const Vec* Omega, const Tolerances& tol) {
  IrreducibilityReport r;
  const long d = rf.dimS();
  std::vector<Mat> B = field_span(rf);
  r.span_dim = B.size();
  r.commutant_dim = commutant(B, d, tol.null_rel).size();
  std::vector<Mat> Bs = B;
  for (const auto& X : B) Bs.push_back(X.adjoint());
  r.star_commutant_dim = commutant(Bs, d, tol.null_rel).size();
  r.irreducible = r.commutant_dim == 1;
  r.star_irreducible = r.star_commutant_dim == 1;
  if (Omega == nullptr) return r;

  r.has_vacuum = true;
  const UnitaryRep& rep = rf.system().rep;
  Mat P = translation_fixed_projector(rep);
  Vec w = *Omega / Omega->norm();
  r.unique_invariant_vector = std::lround(P.trace().real()) == 1 && (P * w - w).norm() <= tol.eq;

  // Krylov span of words applied to Omega
  std::vector<Vec> basis{w}, frontier{w};
  const int cap = static_cast<int>(d * d);
  int level = 0;
  while (!frontier.empty() && static_cast<long>(basis.size()) < d && level < cap) {
    ++level;
    std::vector<Vec> next;
    for (const auto& v : frontier)
      for (const auto& X : Bs) {
        Vec y = X * v;
        const double n0 = y.norm();
        for (int pass = 0; pass < 2; ++pass)
          for (const auto& b : basis) y -= b.dot(y) * b;
        if (y.norm() > 1e-10 * std::max(1.0, n0)) {
          y.normalize();
          basis.push_back(y);
          next.push_back(y);
        }
      }
    frontier = std::move(next);
  }
  r.cyclic_dim = basis.size();
  r.cyclic_stabilized_at = level;
  r.cyclic = static_cast<long>(basis.size()) == d;

  std::vector<LatticePoint> sigma = character_support(rep);
  std::set<LatticePoint> sig(sigma.begin(), sigma.end());
  const Model& m = rep.model();
  r.spectrum_separated = std::none_of(sigma.begin(), sigma.end(), [&](const LatticePoint& k) {
    return !(k.u == 0 && k.v == 0) && sig.contains(m.neg(k));
  });
  r.premises_met = r.unique_invariant_vector && r.cyclic && r.spectrum_separated;
  r.implication_holds = !r.premises_met || r.irreducible;
  return r;
}

RVec smearing_function(const OrientedFrame& of) {
  return spacetime_marginal(of.frame->model(), born_measure(of).pmf);
}

}  // namespace rqft
