#include "weyllab/linalg.hpp"

#include <utility>

#include "weyllab/errors.hpp"

namespace weyllab {

std::vector<std::size_t> row_reduce(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  std::size_t rows = m.size(), cols = m[0].size(), r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Rational inv = 1 / m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(RatMatrix m) { return row_reduce(m).size(); }

namespace {

RatMatrix augmented(const RatMatrix& a, const RatVector& b) {
  if (a.size() != b.size()) throw InternalDataError("solve: dimension mismatch");
  RatMatrix m = a;
  for (std::size_t i = 0; i < m.size(); ++i) m[i].push_back(b[i]);
  return m;
}

}  // namespace

std::optional<RatVector> solve_any(const RatMatrix& a, const RatVector& b) {
  if (a.empty()) return RatVector{};
  std::size_t cols = a[0].size();
  RatMatrix m = augmented(a, b);
  auto pivots = row_reduce(m);
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
  RatVector x(cols, Rational(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = m[r][cols];
  return x;
}

std::optional<RatVector> solve_unique(const RatMatrix& a, const RatVector& b) {
  if (a.empty()) return RatVector{};
  std::size_t cols = a[0].size();
  if (rank(a) != cols) return std::nullopt;
  return solve_any(a, b);
}

RatMatrix transpose(const RatMatrix& m) {
  if (m.empty()) return {};
  RatMatrix t(m[0].size(), RatVector(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

RatVector mat_vec(const RatMatrix& m, const RatVector& v) {
  RatVector out(m.size(), Rational(0));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      if (m[i][j] != 0 && v[j] != 0) out[i] += m[i][j] * v[j];
  return out;
}

std::vector<std::size_t> independent_rows(const RatMatrix& rows) {
  std::vector<std::size_t> chosen;
  RatMatrix basis;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    RatMatrix trial = basis;
    trial.push_back(rows[i]);
    if (rank(trial) == trial.size()) {
      basis = std::move(trial);
      chosen.push_back(i);
    }
  }
  return chosen;
}

IntMatrix hermite_basis(IntMatrix rows) {
  IntMatrix out;
  if (rows.empty()) return out;
  std::size_t cols = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    // Euclid on column c among rows r..end.
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i)
        if (rows[i][c] != 0 && (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c]))) best = i;
      if (best == rows.size()) break;
      std::swap(rows[r], rows[best]);
      bool done = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
        for (std::size_t j = c; j < cols; ++j) rows[i][j] -= q * rows[r][j];
        if (rows[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (r < rows.size() && rows[r][c] != 0) {
      if (rows[r][c] < 0)
        for (auto& x : rows[r]) x = -x;
      for (std::size_t i = 0; i < r; ++i) {
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
        if (q != 0)
          for (std::size_t j = c; j < cols; ++j) rows[i][j] -= q * rows[r][j];
      }
      ++r;
    }
  }
  rows.resize(r);
  return rows;
}

HPoly bareiss_determinant(std::vector<std::vector<HPoly>> m) {
  std::size_t n = m.size();
  if (n == 0) return HPoly(1);
  HPoly prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t p = k + 1;
      while (p < n && m[p][k].is_zero()) ++p;
      if (p == n) return HPoly();
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        HPoly num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        auto q = num.exact_div(prev);
        if (!q) throw InternalDataError("Bareiss step not exact");
        m[i][j] = std::move(*q);
      }
      m[i][k] = HPoly();
    }
    prev = m[k][k];
  }
  HPoly det = m[n - 1][n - 1];
  return sign > 0 ? det : -det;
}

}  // namespace weyllab
