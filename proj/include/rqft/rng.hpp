#pragma once

#include <cstdint>

#include "rqft/operators.hpp"

namespace rqft {

// Counter-based generator: output i of stream s is a hash of (seed, s, i).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) : seed_(seed), stream_(stream) {}
  std::uint64_t next_u64();
  double uniform();  // [0,1)
  double normal();
  cplx cnormal();  // standard complex Gaussian, E|z|^2 = 1
  long index(long n);
  CounterRng split(std::uint64_t stream) const;
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_, stream_, counter_ = 0;
};

Mat random_matrix(CounterRng& rng, long rows, long cols);
Mat random_hermitian(CounterRng& rng, long d);
Mat random_unitary(CounterRng& rng, long d);
Mat random_psd(CounterRng& rng, long d, long rank = -1);
Mat random_state(CounterRng& rng, long d, long rank = -1);
Mat random_pure_state(CounterRng& rng, long d);
Vec random_vector(CounterRng& rng, long d);
// random probability vector of length n
RVec random_pmf(CounterRng& rng, long n);

}  // namespace rqft
