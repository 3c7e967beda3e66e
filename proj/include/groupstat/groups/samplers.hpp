#pragma once

#include "groupstat/core/stream.hpp"
#include "groupstat/groups/elements.hpp"

namespace groupstat::groups {

/// Haar draw from {-1,+1}^n: each coordinate independently +-1 with
/// probability 1/2.
SignVector sample_signs(std::size_t n, core::SeededStream& stream);

/// Uniform draw from the symmetric group (Fisher-Yates with unbiased
/// index draws).
Permutation sample_permutation(std::size_t n, core::SeededStream& stream);

/// Haar draw from SO(n): QR-factorize a Gaussian matrix, fix the column
/// signs against the R diagonal (Haar on O(n)), then flip one column when
/// the determinant is -1.
Rotation sample_rotation(std::size_t n, core::SeededStream& stream);

}  // namespace groupstat::groups
