#include "groupstat/groups/elements.hpp"

#include <stdexcept>

namespace groupstat::groups {

namespace {

constexpr std::size_t kEnumerationCap = 20;

void check_dimension(std::size_t expected, std::size_t got) {
  if (expected != got) throw std::invalid_argument("apply: dimension mismatch");
}

}  // namespace

std::size_t dimension(const GroupElement& g) {
  return std::visit([](const auto& e) { return e.size(); }, g);
}

void apply_into(const SignVector& g, std::span<const double> x, std::vector<double>& out) {
  check_dimension(g.size(), x.size());
  out.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = g.signs[i] * x[i];
}

void apply_into(const Permutation& g, std::span<const double> x, std::vector<double>& out) {
  check_dimension(g.size(), x.size());
  out.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[g.mapping[i]];
}

void apply_into(const Rotation& g, std::span<const double> x, std::vector<double>& out) {
  check_dimension(g.size(), x.size());
  out.resize(x.size());
  Eigen::Map<const Eigen::VectorXd> in(x.data(), static_cast<Eigen::Index>(x.size()));
  Eigen::Map<Eigen::VectorXd> result(out.data(), static_cast<Eigen::Index>(out.size()));
  result.noalias() = g.matrix * in;
}

void apply_into(const GroupElement& g, std::span<const double> x, std::vector<double>& out) {
  std::visit([&](const auto& e) { apply_into(e, x, out); }, g);
}

std::vector<double> apply(const GroupElement& g, std::span<const double> x) {
  std::vector<double> out;
  apply_into(g, x, out);
  return out;
}

SignEnumeration::SignEnumeration(std::size_t n) : n_(n) {
  if (n == 0) throw std::invalid_argument("SignEnumeration: dimension must be positive");
  if (n > kEnumerationCap) throw std::length_error("SignEnumeration: dimension capped at 20");
}

SignVector SignEnumeration::element(std::size_t k) const {
  SignVector g;
  g.signs.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) g.signs[i] = (k >> i) & 1 ? -1 : +1;
  return g;
}

void SignEnumeration::apply_element(std::size_t k, std::span<const double> x,
                                    std::vector<double>& out) const {
  check_dimension(n_, x.size());
  out.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = (k >> i) & 1 ? -x[i] : x[i];
}

std::vector<SignVector> enumerate_signs(std::size_t n) {
  const SignEnumeration enumeration(n);
  std::vector<SignVector> all;
  all.reserve(enumeration.size());
  for (std::size_t k = 0; k < enumeration.size(); ++k) all.push_back(enumeration.element(k));
  return all;
}

}  // namespace groupstat::groups
