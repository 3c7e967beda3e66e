#include "groupstat/groups/samplers.hpp"

#include <numeric>
#include <stdexcept>

namespace groupstat::groups {

namespace {

void check_positive(std::size_t n) {
  if (n == 0) throw std::invalid_argument("group sampler: dimension must be positive");
}

}  // namespace

SignVector sample_signs(std::size_t n, core::SeededStream& stream) {
  check_positive(n);
  SignVector g;
  g.signs.resize(n);
  for (std::size_t i = 0; i < n; ++i) g.signs[i] = stream.next_double() < 0.5 ? -1 : +1;
  return g;
}

Permutation sample_permutation(std::size_t n, core::SeededStream& stream) {
  check_positive(n);
  Permutation g;
  g.mapping.resize(n);
  std::iota(g.mapping.begin(), g.mapping.end(), 0u);
  for (std::size_t i = n - 1; i > 0; --i) {
    const std::size_t j = static_cast<std::size_t>(stream.next_index(i + 1));
    std::swap(g.mapping[i], g.mapping[j]);
  }
  return g;
}

Rotation sample_rotation(std::size_t n, core::SeededStream& stream) {
  check_positive(n);
  const auto dim = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd gauss(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j)
    for (Eigen::Index i = 0; i < dim; ++i) gauss(i, j) = stream.next_gaussian();

  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(gauss);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd& packed = qr.matrixQR();
  for (Eigen::Index j = 0; j < dim; ++j)
    if (packed(j, j) < 0.0) q.col(j) = -q.col(j);
  if (q.determinant() < 0.0) q.col(0) = -q.col(0);
  return Rotation{std::move(q)};
}

}  // namespace groupstat::groups
