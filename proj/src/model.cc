#include "einstein_barrier/model.h"

#include <stdexcept>

namespace einstein_barrier {

void require_dimensions(int d1, int d2) {
  if (d1 < 2 || d2 < 2) {
    throw std::invalid_argument("dimensions must satisfy d1, d2 >= 2 (got " + std::to_string(d1) + ", " +
                                std::to_string(d2) + ")");
  }
}

StructuralTriple StructuralTriple::make(int d1, int d2, Rational A) {
  require_dimensions(d1, d2);
  if (A < 0) throw std::invalid_argument("A must be nonnegative (got " + einstein_barrier::to_string(A) + ")");
  return StructuralTriple{d1, d2, std::move(A)};
}

std::string StructuralTriple::to_string() const {
  return "(" + std::to_string(d1) + ", " + std::to_string(d2) + ", " + einstein_barrier::to_string(A) + ")";
}

}  // namespace einstein_barrier
