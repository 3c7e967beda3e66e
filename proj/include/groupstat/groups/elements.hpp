#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

namespace groupstat::groups {

/// Element of {-1,+1}^n acting by coordinate sign flips.
struct SignVector {
  std::vector<std::int8_t> signs;  // entries are exactly -1 or +1
  std::size_t size() const { return signs.size(); }
};

/// Element of the symmetric group; acts by coordinate relabelling
/// y[i] = x[mapping[i]].
struct Permutation {
  std::vector<std::uint32_t> mapping;  // a bijection of 0..n-1
  std::size_t size() const { return mapping.size(); }
};

/// Element of SO(n).
struct Rotation {
  Eigen::MatrixXd matrix;
  std::size_t size() const { return static_cast<std::size_t>(matrix.rows()); }
};

/// One group element of any of the three supported groups.
using GroupElement = std::variant<SignVector, Permutation, Rotation>;

std::size_t dimension(const GroupElement& g);

void apply_into(const SignVector& g, std::span<const double> x, std::vector<double>& out);
void apply_into(const Permutation& g, std::span<const double> x, std::vector<double>& out);
void apply_into(const Rotation& g, std::span<const double> x, std::vector<double>& out);
void apply_into(const GroupElement& g, std::span<const double> x, std::vector<double>& out);

/// The action pi_g x.  All three actions are unitary.
std::vector<double> apply(const GroupElement& g, std::span<const double> x);

/// The full group {-1,+1}^n in a fixed order: element k flips coordinate i
/// iff bit i of k is set.  Capped at n <= 20.
class SignEnumeration {
 public:
  explicit SignEnumeration(std::size_t n);

  std::size_t dimension() const { return n_; }
  std::size_t size() const { return std::size_t{1} << n_; }
  SignVector element(std::size_t k) const;
  void apply_element(std::size_t k, std::span<const double> x, std::vector<double>& out) const;

 private:
  std::size_t n_;
};

/// All 2^n sign vectors, materialized in enumeration order.
std::vector<SignVector> enumerate_signs(std::size_t n);

}  // namespace groupstat::groups
