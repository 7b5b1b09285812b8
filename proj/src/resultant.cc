#include "einstein_barrier/resultant.h"

#include <stdexcept>
#include <utility>

namespace einstein_barrier {

Rational determinant(std::vector<std::vector<Rational>> m) {
  const size_t n = m.size();
  Rational det(1);
  for (size_t col = 0; col < n; ++col) {
    size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      Rational f = m[r][col] / m[col][col];
      for (size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

std::vector<std::vector<Rational>> sylvester_matrix(const UniPoly& f, const UniPoly& g) {
  const int m = f.degree();
  const int n = g.degree();
  const int size = m + n;
  std::vector<std::vector<Rational>> s(static_cast<size_t>(size), std::vector<Rational>(static_cast<size_t>(size), 0));
  for (int row = 0; row < n; ++row) {
    for (int i = 0; i <= m; ++i) s[static_cast<size_t>(row)][static_cast<size_t>(row + i)] = f.coeff(m - i);
  }
  for (int row = 0; row < m; ++row) {
    for (int i = 0; i <= n; ++i) s[static_cast<size_t>(n + row)][static_cast<size_t>(row + i)] = g.coeff(n - i);
  }
  return s;
}

Rational sylvester_resultant(const UniPoly& f, const UniPoly& g) {
  if (f.is_zero() && g.is_zero()) throw std::invalid_argument("resultant of two zero polynomials");
  if (f.is_zero() || g.is_zero()) return 0;
  if (f.degree() == 0) return pow(f.leading(), static_cast<unsigned>(g.degree()));
  if (g.degree() == 0) return pow(g.leading(), static_cast<unsigned>(f.degree()));
  return determinant(sylvester_matrix(f, g));
}

Rational resultant_in_l(const QuadInL& f, const QuadInL& g) { return sylvester_resultant(f.as_poly(), g.as_poly()); }

}  // namespace einstein_barrier
