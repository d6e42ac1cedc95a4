#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace rqft {

enum class CausalMode { modular, lifted };

struct ModelParams {
  int N = 5;
  int s = 2;
  CausalMode causal_mode = CausalMode::modular;
  std::optional<int> window;
};

struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ModelMismatch : ModelError {
  using ModelError::ModelError;
};
struct WindowViolation : ModelError {
  using ModelError::ModelError;
};

struct LatticePoint {
  int u = 0;
  int v = 0;
  auto operator<=>(const LatticePoint&) const = default;
};

// boost is stored as its value in Z_N (an element of <s>), not as an exponent
struct GroupElement {
  LatticePoint a;
  int boost = 1;
  auto operator<=>(const GroupElement&) const = default;
};

struct FramePoint {
  LatticePoint x;
  int lam = 1;
  auto operator<=>(const FramePoint&) const = default;
};

using Region = std::set<LatticePoint>;

int mod(long long k, int N);
// representative of k mod N in [-(N-1)/2, (N-1)/2]; N odd
int centered_lift(long long k, int N);

class Model {
 public:
  explicit Model(const ModelParams& p);

  const ModelParams& params() const { return p_; }
  int N() const { return p_.N; }
  int order() const { return static_cast<int>(boosts_.size()); }
  const std::vector<int>& boosts() const { return boosts_; }
  int boost_value(int k) const { return boosts_.at(k); }
  int boost_index(int value) const;
  int inv(int unit) const;

  std::size_t num_points() const { return static_cast<std::size_t>(p_.N) * p_.N; }
  std::size_t num_frames() const { return num_points() * boosts_.size(); }
  std::size_t num_elements() const { return num_frames(); }

  std::size_t point_index(const LatticePoint& x) const;
  LatticePoint point_at(std::size_t i) const;
  std::size_t frame_index(const FramePoint& f) const;
  FramePoint frame_at(std::size_t i) const;
  std::size_t element_index(const GroupElement& g) const;
  GroupElement element_at(std::size_t i) const;

  std::vector<LatticePoint> points() const;
  std::vector<FramePoint> frames() const;
  std::vector<GroupElement> elements() const;
  // (1,0), (0,1) translations and the generating boost
  std::vector<GroupElement> generators() const;

  GroupElement identity() const { return {{0, 0}, 1}; }
  GroupElement compose(const GroupElement& g1, const GroupElement& g2) const;
  GroupElement inverse(const GroupElement& g) const;
  LatticePoint boost_point(int boost, const LatticePoint& x) const;
  LatticePoint act(const GroupElement& g, const LatticePoint& x) const;
  FramePoint act(const GroupElement& g, const FramePoint& f) const;
  Region act(const GroupElement& g, const Region& U) const;
  // the unique g with g . base = f
  GroupElement element_to(const FramePoint& f, const FramePoint& base) const;
  FramePoint base_frame() const { return {{0, 0}, 1}; }
  GroupElement translation(const LatticePoint& a) const { return {a, 1}; }

  void validate(const LatticePoint& x) const;
  void validate(const GroupElement& g) const;
  void validate(const FramePoint& f) const;

  LatticePoint sub(const LatticePoint& x, const LatticePoint& y) const;
  LatticePoint add(const LatticePoint& x, const LatticePoint& y) const;
  LatticePoint neg(const LatticePoint& x) const;

  bool spacelike(const LatticePoint& x, const LatticePoint& y) const;
  bool region_spacelike(const Region& U, const Region& V) const;

  // lifted-mode helpers
  int time(const LatticePoint& x) const;
  int window() const;
  bool in_window(const LatticePoint& x) const;
  Region window_region() const;
  Region causal_future(const Region& U) const;
  Region causal_past(const Region& U) const;
  Region domain_of_dependence(const Region& U) const;
  Region causal_hull(const Region& U) const;

 private:
  void require_lifted_window() const;
  ModelParams p_;
  std::vector<int> boosts_;
  std::vector<int> boost_pos_;
};

std::string to_string(const LatticePoint& x);
std::string to_string(const GroupElement& g);
std::string to_string(const FramePoint& f);
std::string to_string(CausalMode m);

}  // namespace rqft
