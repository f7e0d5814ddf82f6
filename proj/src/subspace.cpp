#include "qtcat/subspace.hpp"

#include <algorithm>

#include "qtcat/errors.hpp"

namespace qtcat {

std::vector<int32_t> pivot_map_of_rows(const std::vector<SparseRowModP>& rows,
                                       uint32_t dim, uint64_t prime) {
  std::vector<int32_t> pivots(dim, -1);
  for (size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.empty() || row.front().second != 1)
      throw Error("basis row is not pivot-normalized");
    for (size_t j = 0; j < row.size(); ++j) {
      if (row[j].first >= dim) throw Error("basis row column out of range");
      if (row[j].second == 0 || row[j].second >= prime)
        throw Error("basis row value out of range");
      if (j + 1 < row.size() && row[j].first >= row[j + 1].first)
        throw Error("basis row has unsorted columns");
    }
    if (pivots[row.front().first] != -1)
      throw Error("basis has duplicate pivots");
    pivots[row.front().first] = static_cast<int32_t>(i);
  }
  return pivots;
}

RrefBuilderModP::RrefBuilderModP(uint64_t prime, uint32_t dim)
    : p_(prime), dim_(dim), pivot_of_col_(dim, -1), acc_(dim, 0) {}

void RrefBuilderModP::attach_base(const std::vector<SparseRowModP>* rows,
                                  const std::vector<int32_t>* pivot_of_col) {
  if (!rows_.empty()) throw Error("attach_base on a non-empty builder");
  base_rows_ = rows;
  base_pivots_ = pivot_of_col;
}

bool RrefBuilderModP::full() const {
  size_t base = base_rows_ ? base_rows_->size() : 0;
  return base + rows_.size() == dim_;
}

const SparseRowModP* RrefBuilderModP::pivot_row(uint32_t col) const {
  if (base_pivots_ && (*base_pivots_)[col] >= 0)
    return &(*base_rows_)[size_t((*base_pivots_)[col])];
  if (pivot_of_col_[col] >= 0) return &rows_[size_t(pivot_of_col_[col])];
  return nullptr;
}

bool RrefBuilderModP::eliminate(const SparseRowModP& v, SparseRowModP* out,
                                bool keep) {
  heap_.clear();
  for (const auto& [c, val] : v) {
    if (c >= dim_) throw Error("row column out of range");
    uint64_t r = val % p_;
    if (r == 0) continue;
    if (acc_[c] == 0) heap_.push_back(c);
    acc_[c] = modp::add(acc_[c], r, p_);
  }
  std::make_heap(heap_.begin(), heap_.end(), std::greater<uint32_t>());
  SparseRowModP residual;
  while (!heap_.empty()) {
    std::pop_heap(heap_.begin(), heap_.end(), std::greater<uint32_t>());
    uint32_t c = heap_.back();
    heap_.pop_back();
    uint64_t val = acc_[c];
    if (val == 0) continue;
    const SparseRowModP* row = pivot_row(c);
    if (row == nullptr) {
      residual.emplace_back(c, val);
      acc_[c] = 0;
      continue;
    }
    acc_[c] = 0;  // the unit pivot cancels exactly
    for (size_t i = 1; i < row->size(); ++i) {
      uint32_t cc = (*row)[i].first;
      uint64_t before = acc_[cc];
      uint64_t after = modp::sub(before, modp::mul(val, (*row)[i].second, p_), p_);
      acc_[cc] = after;
      if (before == 0 && after != 0) {
        heap_.push_back(cc);
        std::push_heap(heap_.begin(), heap_.end(), std::greater<uint32_t>());
      }
    }
  }
  if (residual.empty()) {
    if (out) out->clear();
    return false;
  }
  if (keep) {
    uint64_t inv = modp::inv(residual.front().second, p_);
    for (auto& [c, val] : residual) val = modp::mul(val, inv, p_);
    pivot_of_col_[residual.front().first] = static_cast<int32_t>(rows_.size());
    rows_.push_back(std::move(residual));
    if (out) out->clear();
  } else if (out) {
    *out = std::move(residual);
  }
  return true;
}

bool RrefBuilderModP::eliminate_const(const SparseRowModP& v,
                                      SparseRowModP* out) const {
  // scratch members are mutable; pivot structure is untouched on this path
  return const_cast<RrefBuilderModP*>(this)->eliminate(v, out, false);
}

bool RrefBuilderModP::add_row(const SparseRowModP& row) {
  return eliminate(row, nullptr, true);
}

SparseRowModP RrefBuilderModP::reduce(const SparseRowModP& v) const {
  SparseRowModP out;
  eliminate_const(v, &out);
  return out;
}

void RrefBuilderModP::finalize() {
  std::vector<size_t> order(rows_.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return rows_[a].front().first < rows_[b].front().first;
  });
  std::vector<SparseRowModP> sorted;
  sorted.reserve(rows_.size());
  for (size_t i : order) sorted.push_back(std::move(rows_[i]));
  rows_ = std::move(sorted);
  for (size_t i = 0; i < rows_.size(); ++i)
    pivot_of_col_[rows_[i].front().first] = static_cast<int32_t>(i);
  // clear pivot columns from earlier rows, walking pivots downward; rows
  // with larger pivots are already in final form when they get used
  for (size_t i = rows_.size(); i-- > 0;) {
    SparseRowModP tail(rows_[i].begin() + 1, rows_[i].end());
    SparseRowModP reduced = reduce(tail);
    SparseRowModP full_row;
    full_row.reserve(reduced.size() + 1);
    full_row.push_back(rows_[i].front());
    full_row.insert(full_row.end(), reduced.begin(), reduced.end());
    rows_[i] = std::move(full_row);
  }
}

RrefBuilderExact::RrefBuilderExact(uint32_t dim)
    : dim_(dim), pivot_of_col_(dim, -1) {}

bool RrefBuilderExact::add_row(const SparseRowExact& row) {
  SparseRowExact res = reduce(row);
  if (res.empty()) return false;
  Rational inv = Rational(1) / res.front().second;
  for (auto& [c, val] : res) val *= inv;
  pivot_of_col_[res.front().first] = static_cast<int32_t>(rows_.size());
  rows_.push_back(std::move(res));
  return true;
}

SparseRowExact RrefBuilderExact::reduce(const SparseRowExact& v) const {
  std::vector<Rational> acc(dim_);
  std::vector<char> nonzero(dim_, 0);
  for (const auto& [c, val] : v) {
    if (c >= dim_) throw Error("row column out of range");
    acc[c] += val;
    nonzero[c] = 1;
  }
  SparseRowExact residual;
  for (uint32_t c = 0; c < dim_; ++c) {
    if (!nonzero[c] || acc[c].is_zero()) continue;
    int32_t r = pivot_of_col_[c];
    if (r < 0) {
      residual.emplace_back(c, acc[c]);
      continue;
    }
    Rational f = acc[c];
    const SparseRowExact& row = rows_[size_t(r)];
    for (const auto& [cc, val] : row) {
      acc[cc] -= f * val;
      nonzero[cc] = 1;
    }
  }
  return residual;
}

}  // namespace qtcat
