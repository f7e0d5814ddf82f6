#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qtcat/modular.hpp"
#include "qtcat/rational.hpp"

namespace qtcat {

/// Sparse mod-p row: (column, residue) pairs, columns strictly increasing,
/// residues in [1, p).
using SparseRowModP = std::vector<std::pair<uint32_t, uint64_t>>;

/// Validates an externally supplied reduced echelon basis (unit pivots,
/// sorted columns, distinct pivots) and returns its pivot-column map.
std::vector<int32_t> pivot_map_of_rows(const std::vector<SparseRowModP>& rows,
                                       uint32_t dim, uint64_t prime);

/// Incremental row-echelon elimination over F_p with sparse storage.
/// Rows are fed one at a time; finalize() back-substitutes to the unique
/// reduced row-echelon basis of the row space.  An optional borrowed base
/// layer lets callers reduce against an existing basis without copying it;
/// new pivot rows then describe the span *past* the base.
class RrefBuilderModP {
 public:
  RrefBuilderModP(uint64_t prime, uint32_t dim);

  /// The base rows are consulted as pivots but never modified; they must be
  /// reduced echelon rows over the same prime, and the builder's own pivots
  /// will always avoid their pivot columns.  Both pointers are borrowed.
  void attach_base(const std::vector<SparseRowModP>* rows,
                   const std::vector<int32_t>* pivot_of_col);

  uint64_t prime() const { return p_; }
  uint32_t dim() const { return dim_; }
  uint32_t rank() const { return static_cast<uint32_t>(rows_.size()); }
  bool full() const;

  /// Reduces the row against base + own pivots and keeps the residual as a
  /// new pivot row if nonzero.  Returns true when the rank grew.
  bool add_row(const SparseRowModP& row);

  /// Residual of a vector against base + own pivots (fully reduced).
  SparseRowModP reduce(const SparseRowModP& v) const;

  /// Back-substitute own rows so every own pivot column is cleared from the
  /// other own rows, and order them by pivot; canonical for the row space
  /// when no base is attached.
  void finalize();

  const std::vector<SparseRowModP>& rows() const { return rows_; }
  const std::vector<int32_t>& pivot_of_col() const { return pivot_of_col_; }

 private:
  uint64_t p_;
  uint32_t dim_;
  const std::vector<SparseRowModP>* base_rows_ = nullptr;
  const std::vector<int32_t>* base_pivots_ = nullptr;
  std::vector<SparseRowModP> rows_;     // pivot = first entry, value 1
  std::vector<int32_t> pivot_of_col_;   // -1 when no own pivot
  mutable std::vector<uint64_t> acc_;   // dense scratch, zero between uses
  mutable std::vector<uint32_t> heap_;  // column worklist

  const SparseRowModP* pivot_row(uint32_t col) const;
  bool eliminate(const SparseRowModP& v, SparseRowModP* out, bool keep);
  bool eliminate_const(const SparseRowModP& v, SparseRowModP* out) const;
};

/// Same elimination over exact rationals; used for the opt-in verification
/// backend on small slices.
using SparseRowExact = std::vector<std::pair<uint32_t, Rational>>;

class RrefBuilderExact {
 public:
  explicit RrefBuilderExact(uint32_t dim);
  uint32_t dim() const { return dim_; }
  uint32_t rank() const { return static_cast<uint32_t>(rows_.size()); }
  bool full() const { return rank() == dim_; }
  bool add_row(const SparseRowExact& row);
  SparseRowExact reduce(const SparseRowExact& v) const;

 private:
  uint32_t dim_;
  std::vector<SparseRowExact> rows_;
  std::vector<int32_t> pivot_of_col_;
};

}  // namespace qtcat
