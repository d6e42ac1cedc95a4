#include "rqft/lattice.hpp"

#include <algorithm>
#include <numeric>

namespace rqft {

int mod(long long k, int N) {
  long long r = k % N;
  return static_cast<int>(r < 0 ? r + N : r);
}

int centered_lift(long long k, int N) {
  int r = mod(k, N);
  return r > N / 2 ? r - N : r;
}

Model::Model(const ModelParams& p) : p_(p) {
  if (p_.N < 3 || p_.N % 2 == 0) throw ModelError("N must be an odd integer >= 3");
  if (std::gcd(mod(p_.s, p_.N), p_.N) != 1) throw ModelError("s must be a unit modulo N");
  p_.s = mod(p_.s, p_.N);
  int b = 1;
  do {
    boosts_.push_back(b);
    b = mod(static_cast<long long>(b) * p_.s, p_.N);
  } while (b != 1);
  boost_pos_.assign(p_.N, -1);
  for (int k = 0; k < order(); ++k) boost_pos_[boosts_[k]] = k;
  if (p_.window) {
    if (*p_.window < 0 || *p_.window > (p_.N - 1) / 2)
      throw ModelError("window radius must lie in [0, (N-1)/2]");
  }
}

int Model::boost_index(int value) const {
  if (value < 0 || value >= p_.N || boost_pos_[value] < 0)
    throw ModelMismatch("boost " + std::to_string(value) + " is not in <s>");
  return boost_pos_[value];
}

int Model::inv(int unit) const {
  for (int k = 1; k < p_.N; ++k)
    if (mod(static_cast<long long>(k) * unit, p_.N) == 1) return k;
  throw ModelError("not a unit");
}

std::size_t Model::point_index(const LatticePoint& x) const {
  validate(x);
  return static_cast<std::size_t>(x.u) * p_.N + x.v;
}

LatticePoint Model::point_at(std::size_t i) const {
  return {static_cast<int>(i / p_.N), static_cast<int>(i % p_.N)};
}

std::size_t Model::frame_index(const FramePoint& f) const {
  return point_index(f.x) * order() + boost_index(f.lam);
}

FramePoint Model::frame_at(std::size_t i) const {
  return {point_at(i / order()), boosts_.at(i % order())};
}

std::size_t Model::element_index(const GroupElement& g) const {
  return point_index(g.a) * order() + boost_index(g.boost);
}

GroupElement Model::element_at(std::size_t i) const {
  return {point_at(i / order()), boosts_.at(i % order())};
}

std::vector<LatticePoint> Model::points() const {
  std::vector<LatticePoint> out;
  for (std::size_t i = 0; i < num_points(); ++i) out.push_back(point_at(i));
  return out;
}

std::vector<FramePoint> Model::frames() const {
  std::vector<FramePoint> out;
  for (std::size_t i = 0; i < num_frames(); ++i) out.push_back(frame_at(i));
  return out;
}

std::vector<GroupElement> Model::elements() const {
  std::vector<GroupElement> out;
  for (std::size_t i = 0; i < num_elements(); ++i) out.push_back(element_at(i));
  return out;
}

std::vector<GroupElement> Model::generators() const {
  return {{{1, 0}, 1}, {{0, 1}, 1}, {{0, 0}, p_.s}};
}

void Model::validate(const LatticePoint& x) const {
  if (x.u < 0 || x.u >= p_.N || x.v < 0 || x.v >= p_.N)
    throw ModelMismatch("lattice point " + to_string(x) + " outside Z_N^2");
}

void Model::validate(const GroupElement& g) const {
  validate(g.a);
  boost_index(g.boost);
}

void Model::validate(const FramePoint& f) const {
  validate(f.x);
  boost_index(f.lam);
}

LatticePoint Model::boost_point(int boost, const LatticePoint& x) const {
  return {mod(static_cast<long long>(boost) * x.u, p_.N),
          mod(static_cast<long long>(inv(boost)) * x.v, p_.N)};
}

LatticePoint Model::add(const LatticePoint& x, const LatticePoint& y) const {
  return {mod(x.u + y.u, p_.N), mod(x.v + y.v, p_.N)};
}

LatticePoint Model::sub(const LatticePoint& x, const LatticePoint& y) const {
  return {mod(x.u - y.u, p_.N), mod(x.v - y.v, p_.N)};
}

LatticePoint Model::neg(const LatticePoint& x) const { return {mod(-x.u, p_.N), mod(-x.v, p_.N)}; }

GroupElement Model::compose(const GroupElement& g1, const GroupElement& g2) const {
  validate(g1);
  validate(g2);
  return {add(g1.a, boost_point(g1.boost, g2.a)),
          mod(static_cast<long long>(g1.boost) * g2.boost, p_.N)};
}

GroupElement Model::inverse(const GroupElement& g) const {
  validate(g);
  int bi = inv(g.boost);
  return {neg(boost_point(bi, g.a)), bi};
}

LatticePoint Model::act(const GroupElement& g, const LatticePoint& x) const {
  validate(g);
  validate(x);
  return add(boost_point(g.boost, x), g.a);
}

FramePoint Model::act(const GroupElement& g, const FramePoint& f) const {
  validate(f);
  return {act(g, f.x), mod(static_cast<long long>(g.boost) * f.lam, p_.N)};
}

Region Model::act(const GroupElement& g, const Region& U) const {
  Region out;
  for (const auto& x : U) out.insert(act(g, x));
  return out;
}

GroupElement Model::element_to(const FramePoint& f, const FramePoint& base) const {
  validate(f);
  validate(base);
  // g.base = f  <=>  boost = f.lam / base.lam and a = f.x - boost . base.x
  int b = mod(static_cast<long long>(f.lam) * inv(base.lam), p_.N);
  return {sub(f.x, boost_point(b, base.x)), b};
}

bool Model::spacelike(const LatticePoint& x, const LatticePoint& y) const {
  LatticePoint d = sub(x, y);
  if (p_.causal_mode == CausalMode::modular)
    return centered_lift(static_cast<long long>(d.u) * d.v, p_.N) < 0;
  return centered_lift(d.u, p_.N) * centered_lift(d.v, p_.N) < 0;
}

bool Model::region_spacelike(const Region& U, const Region& V) const {
  for (const auto& x : U)
    for (const auto& y : V)
      if (!spacelike(x, y)) return false;
  return true;
}

int Model::time(const LatticePoint& x) const {
  return centered_lift(x.u, p_.N) + centered_lift(x.v, p_.N);
}

void Model::require_lifted_window() const {
  if (p_.causal_mode != CausalMode::lifted || !p_.window)
    throw ModelError("operation requires lifted causal mode with a window");
}

int Model::window() const {
  require_lifted_window();
  return *p_.window;
}

bool Model::in_window(const LatticePoint& x) const {
  int W = window();
  return std::abs(centered_lift(x.u, p_.N)) <= W && std::abs(centered_lift(x.v, p_.N)) <= W;
}

Region Model::window_region() const {
  Region out;
  for (const auto& x : points())
    if (in_window(x)) out.insert(x);
  return out;
}

namespace {
struct Chart {
  int u, v;
};
Chart chart(const LatticePoint& x, int N) { return {centered_lift(x.u, N), centered_lift(x.v, N)}; }
}  // namespace

Region Model::causal_future(const Region& U) const {
  Region out;
  for (const auto& y : window_region()) {
    Chart cy = chart(y, p_.N);
    for (const auto& x : U) {
      Chart cx = chart(x, p_.N);
      if (cy.u >= cx.u && cy.v >= cx.v) {
        out.insert(y);
        break;
      }
    }
  }
  return out;
}

Region Model::causal_past(const Region& U) const {
  Region out;
  for (const auto& y : window_region()) {
    Chart cy = chart(y, p_.N);
    for (const auto& x : U) {
      Chart cx = chart(x, p_.N);
      if (cy.u <= cx.u && cy.v <= cx.v) {
        out.insert(y);
        break;
      }
    }
  }
  return out;
}

Region Model::domain_of_dependence(const Region& S) const {
  const int W = window();
  const int side = 2 * W + 1;
  auto idx = [&](int cu, int cv) { return (cu + W) * side + (cv + W); };
  std::vector<char> in_s(side * side, 0), plus(side * side, 0), minus(side * side, 0);
  for (const auto& x : S) {
    Chart c = chart(x, p_.N);
    if (std::abs(c.u) <= W && std::abs(c.v) <= W) in_s[idx(c.u, c.v)] = 1;
  }
  // D+ : every past-inextendible null path through y meets S
  for (int t = -2 * W; t <= 2 * W; ++t)
    for (int cu = -W; cu <= W; ++cu) {
      int cv = t - cu;
      if (std::abs(cv) > W) continue;
      int i = idx(cu, cv);
      if (in_s[i]) {
        plus[i] = 1;
        continue;
      }
      bool has_a = cu - 1 >= -W, has_b = cv - 1 >= -W;
      plus[i] = has_a && has_b && plus[idx(cu - 1, cv)] && plus[idx(cu, cv - 1)];
    }
  for (int t = 2 * W; t >= -2 * W; --t)
    for (int cu = -W; cu <= W; ++cu) {
      int cv = t - cu;
      if (std::abs(cv) > W) continue;
      int i = idx(cu, cv);
      if (in_s[i]) {
        minus[i] = 1;
        continue;
      }
      bool has_a = cu + 1 <= W, has_b = cv + 1 <= W;
      minus[i] = has_a && has_b && minus[idx(cu + 1, cv)] && minus[idx(cu, cv + 1)];
    }
  Region out;
  for (int cu = -W; cu <= W; ++cu)
    for (int cv = -W; cv <= W; ++cv)
      if (plus[idx(cu, cv)] || minus[idx(cu, cv)]) out.insert({mod(cu, p_.N), mod(cv, p_.N)});
  return out;
}

Region Model::causal_hull(const Region& U) const {
  require_lifted_window();
  for (const auto& x : U)
    if (!in_window(x)) throw WindowViolation("point " + to_string(x) + " escapes the causal window");
  Region fut = causal_future(U), past = causal_past(U), both;
  std::set_intersection(fut.begin(), fut.end(), past.begin(), past.end(), std::inserter(both, both.end()));
  return domain_of_dependence(both);
}

std::string to_string(const LatticePoint& x) {
  return "(" + std::to_string(x.u) + "," + std::to_string(x.v) + ")";
}
std::string to_string(const GroupElement& g) { return "(" + to_string(g.a) + "," + std::to_string(g.boost) + ")"; }
std::string to_string(const FramePoint& f) { return "(" + to_string(f.x) + "," + std::to_string(f.lam) + ")"; }
std::string to_string(CausalMode m) { return m == CausalMode::modular ? "modular" : "lifted"; }

}  // namespace rqft
