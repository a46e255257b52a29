#include "xyz/classical.hpp"

#include <stdexcept>
#include <string>

namespace xyz {

RepetitionCheck repetition_check(std::size_t n, Boundary boundary) {
  if (n < 2) throw std::invalid_argument("invalid repetition length " + std::to_string(n) + " (need n >= 2)");
  const std::size_t rows = boundary == Boundary::Periodic ? n : n - 1;
  BitMatrix h(rows, n);
  for (std::size_t i = 0; i < rows; ++i) {
    h.set(i, i);
    h.set(i, (i + 1) % n);
  }
  return {n, boundary, std::move(h)};
}

}  // namespace xyz
