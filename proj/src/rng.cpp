#include "rqft/rng.hpp"

#include <cmath>
#include <numbers>

namespace rqft {

namespace {
std::uint64_t splitmix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace

std::uint64_t CounterRng::next_u64() {
  std::uint64_t k = splitmix(seed_ ^ splitmix(stream_ + 0x632be59bd9b4e019ULL));
  return splitmix(k + counter_++ * 0x9e3779b97f4a7c15ULL);
}

double CounterRng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double CounterRng::normal() {
  double u1 = uniform(), u2 = uniform();
  if (u1 < 1e-300) u1 = 1e-300;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

cplx CounterRng::cnormal() { return cplx(normal(), normal()) / std::sqrt(2.0); }

long CounterRng::index(long n) { return static_cast<long>(next_u64() % static_cast<std::uint64_t>(n)); }

CounterRng CounterRng::split(std::uint64_t stream) const {
  return CounterRng(splitmix(seed_ + stream_), splitmix(stream * 0xd1b54a32d192ed03ULL + counter_));
}

Mat random_matrix(CounterRng& rng, long rows, long cols) {
  Mat M(rows, cols);
  for (long j = 0; j < cols; ++j)
    for (long i = 0; i < rows; ++i) M(i, j) = rng.cnormal();
  return M;
}

Mat random_hermitian(CounterRng& rng, long d) {
  Mat M = random_matrix(rng, d, d);
  return (M + M.adjoint()) / 2.0;
}

Mat random_unitary(CounterRng& rng, long d) {
  Mat M = random_matrix(rng, d, d);
  Eigen::HouseholderQR<Mat> qr(M);
  Mat Q = qr.householderQ();
  Mat R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (long i = 0; i < d; ++i) {
    cplx r = R(i, i);
    Q.col(i) *= std::abs(r) > 0 ? r / std::abs(r) : cplx(1.0);
  }
  return Q;
}

Mat random_psd(CounterRng& rng, long d, long rank) {
  if (rank < 0) rank = d;
  Mat G = random_matrix(rng, d, rank);
  return G * G.adjoint();
}

Mat random_state(CounterRng& rng, long d, long rank) {
  Mat P = random_psd(rng, d, rank);
  return P / P.trace().real();
}

Vec random_vector(CounterRng& rng, long d) {
  Vec v = random_matrix(rng, d, 1).col(0);
  return v / v.norm();
}

Mat random_pure_state(CounterRng& rng, long d) {
  Vec v = random_vector(rng, d);
  return v * v.adjoint();
}

RVec random_pmf(CounterRng& rng, long n) {
  RVec p(n);
  for (long i = 0; i < n; ++i) p(i) = -std::log(std::max(rng.uniform(), 1e-300));
  return p / p.sum();
}

}  // namespace rqft
