#include <stdexcept>

#include "frobpow/ff.hpp"

namespace frobpow {

MatrixFq MatrixFq::identity(std::size_t n) {
  MatrixFq m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = FieldElem{1};
  return m;
}

MatrixFq mat_mul(const Field& f, const MatrixFq& a, const MatrixFq& b) {
  if (a.cols != b.rows) throw std::invalid_argument("mat_mul: dimension mismatch");
  MatrixFq c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t k = 0; k < a.cols; ++k) {
      const FieldElem aik = a.at(i, k);
      if (aik.code == 0) continue;
      for (std::size_t j = 0; j < b.cols; ++j) {
        c.at(i, j) = f.add(c.at(i, j), f.mul(aik, b.at(k, j)));
      }
    }
  }
  return c;
}

VectorFq mat_vec(const Field& f, const MatrixFq& a, std::span<const FieldElem> v) {
  if (a.cols != v.size()) throw std::invalid_argument("mat_vec: dimension mismatch");
  VectorFq out(a.rows);
  for (std::size_t i = 0; i < a.rows; ++i) {
    FieldElem acc{};
    for (std::size_t j = 0; j < a.cols; ++j) acc = f.add(acc, f.mul(a.at(i, j), v[j]));
    out[i] = acc;
  }
  return out;
}

RowEchelon rref(const Field& f, MatrixFq m) {
  RowEchelon out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
    std::size_t piv = row;
    while (piv < m.rows && m.at(piv, col).code == 0) ++piv;
    if (piv == m.rows) continue;
    if (piv != row) {
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(row, j));
    }
    const FieldElem s = f.inv(m.at(row, col));
    for (std::size_t j = col; j < m.cols; ++j) m.at(row, j) = f.mul(m.at(row, j), s);
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == row) continue;
      const FieldElem c = m.at(i, col);
      if (c.code == 0) continue;
      for (std::size_t j = col; j < m.cols; ++j) {
        m.at(i, j) = f.sub(m.at(i, j), f.mul(c, m.at(row, j)));
      }
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

std::size_t rank(const Field& f, MatrixFq m) { return rref(f, std::move(m)).pivots.size(); }

FieldElem determinant(const Field& f, MatrixFq m) {
  if (m.rows != m.cols) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = m.rows;
  FieldElem det = f.one();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m.at(piv, col).code == 0) ++piv;
    if (piv == n) return f.zero();
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(col, j));
      det = f.neg(det);
    }
    const FieldElem d = m.at(col, col);
    det = f.mul(det, d);
    const FieldElem s = f.inv(d);
    for (std::size_t i = col + 1; i < n; ++i) {
      const FieldElem c = f.mul(m.at(i, col), s);
      if (c.code == 0) continue;
      for (std::size_t j = col; j < n; ++j) m.at(i, j) = f.sub(m.at(i, j), f.mul(c, m.at(col, j)));
    }
  }
  return det;
}

MatrixFq inverse(const Field& f, const MatrixFq& m) {
  if (m.rows != m.cols) throw std::invalid_argument("inverse of non-square matrix");
  const std::size_t n = m.rows;
  MatrixFq aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = f.one();
  }
  RowEchelon e = rref(f, std::move(aug));
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) {
    throw std::domain_error("matrix is singular");
  }
  MatrixFq inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = e.reduced.at(i, n + j);
  }
  return inv;
}

std::vector<VectorFq> nullspace(const Field& f, const MatrixFq& m) {
  const RowEchelon e = rref(f, m);
  std::vector<bool> is_pivot(m.cols, false);
  for (std::size_t c : e.pivots) is_pivot[c] = true;
  std::vector<VectorFq> basis;
  for (std::size_t free = 0; free < m.cols; ++free) {
    if (is_pivot[free]) continue;
    VectorFq v(m.cols);
    v[free] = f.one();
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = f.neg(e.reduced.at(i, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

// ---------------------------------------------------------------------------

EchelonBasis::EchelonBasis(Field f, std::size_t cols)
    : field_(std::move(f)), cols_(cols), row_of_pivot_(cols, -1) {}

bool EchelonBasis::insert(std::vector<FieldElem>& row) {
  if (row.size() != cols_) throw std::invalid_argument("EchelonBasis: row width mismatch");
  const Field& f = field_;
  std::size_t lead = cols_;
  for (std::size_t c = 0; c < cols_; ++c) {
    const FieldElem v = row[c];
    if (v.code == 0) continue;
    const std::int64_t r = row_of_pivot_[c];
    if (r < 0) {
      if (lead == cols_) lead = c;
      continue;
    }
    if (lead != cols_) continue;  // only the part before the new pivot needs clearing
    const auto& stored = rows_[static_cast<std::size_t>(r)];
    // stored[0] is column c (rows keep only their tail from the pivot on).
    const FieldElem s = f.neg(v);
    for (std::size_t j = 1; j < stored.size(); ++j) {
      if (stored[j].code != 0) row[c + j] = f.add(row[c + j], f.mul(s, stored[j]));
    }
    row[c] = FieldElem{};
  }
  if (lead == cols_) return false;
  const FieldElem s = f.inv(row[lead]);
  std::vector<FieldElem> tail(row.begin() + static_cast<std::ptrdiff_t>(lead), row.end());
  for (auto& x : tail) x = f.mul(x, s);
  row_of_pivot_[lead] = static_cast<std::int64_t>(rows_.size());
  rows_.push_back(std::move(tail));
  ++rank_;
  return true;
}

bool EchelonBasis::insert_sparse(std::span<const std::pair<std::size_t, FieldElem>> entries) {
  scratch_.assign(cols_, FieldElem{});
  for (const auto& [c, v] : entries) {
    if (c >= cols_) throw std::out_of_range("EchelonBasis: column out of range");
    scratch_[c] = v;
  }
  return insert(scratch_);
}

std::vector<VectorFq> EchelonBasis::nullspace() const {
  MatrixFq m(rows_.size(), cols_);
  for (std::size_t c = 0; c < cols_; ++c) {
    const std::int64_t r = row_of_pivot_[c];
    if (r < 0) continue;
    const auto& stored = rows_[static_cast<std::size_t>(r)];
    for (std::size_t j = 0; j < stored.size(); ++j) m.at(static_cast<std::size_t>(r), c + j) = stored[j];
  }
  return frobpow::nullspace(field_, m);
}

}  // namespace frobpow
