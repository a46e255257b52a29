#pragma once

#include <cstddef>

#include "xyz/gf2.hpp"

namespace xyz {

enum class Boundary { Open, Periodic };

/// Parity checks of the length-n repetition code.
/// Open: (n-1) x n with row i = {i, i+1}. Periodic: n x n circulant with
/// row i = {i, (i+1) mod n}. Both have rank n-1.
struct RepetitionCheck {
  std::size_t n = 0;
  Boundary boundary = Boundary::Open;
  BitMatrix matrix;
};

/// Throws std::invalid_argument for n < 2.
RepetitionCheck repetition_check(std::size_t n, Boundary boundary);

}  // namespace xyz
