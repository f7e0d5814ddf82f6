#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <vector>

#include "qtcat/alternant.hpp"
#include "qtcat/diagram.hpp"
#include "qtcat/subspace.hpp"

namespace qtcat {

/// Reduced row-echelon basis of the relation subspace R_{d1,d2} (the
/// alternating part of the degree-shifted ideal) inside the alternant
/// space at one bidegree, over one prime.
struct SubspaceBasis {
  int n = 0, d1 = 0, d2 = 0;
  uint64_t prime = 0;
  uint32_t dim = 0;  // number of basis diagrams of the ambient space
  std::vector<SparseRowModP> rows;  // canonical RREF, pivots ascending
  std::vector<int32_t> pivot_of_col;

  uint32_t rank() const { return static_cast<uint32_t>(rows.size()); }
};

/// One graded piece of the generator module: ambient dimension, relation
/// rank and their difference, with the backend that produced them.
struct ModuleSlice {
  int n = 0, d1 = 0, d2 = 0;
  long long dim_a = 0;
  long long rank_r = 0;
  long long dim_m = 0;
  uint64_t prime_a = 0, prime_b = 0;
  bool exact_checked = false;
};

/// Computes relation subspaces and module dimensions per bidegree.
/// Slices are memoized in memory and, when configured, on disk.  Distinct
/// bidegrees may be computed from different threads concurrently.
class ModuleCalculator {
 public:
  struct Options {
    uint64_t prime_a = kDefaultPrimeA;
    uint64_t prime_b = kDefaultPrimeB;
    bool disk_cache = false;
    std::string cache_dir;    // used when disk_cache is true
    bool exact_verify = false;  // rerun small slices over the rationals
    uint32_t exact_dim_limit = 2000;
  };

  ModuleCalculator() : ModuleCalculator(Options{}) {}
  explicit ModuleCalculator(Options opts);

  const Options& options() const { return opts_; }

  /// RREF basis of span{ p_{c,e} * delta(D') : c+e >= 1, D' of bidegree
  /// (d1-c, d2-e) }, streamed in (c+e, c, e) then enumeration order.
  std::shared_ptr<const SubspaceBasis> relation_subspace(int n, int d1, int d2,
                                                         uint64_t prime);

  ModuleSlice dim_m(int n, int d1, int d2);

  /// Residual of v against the relation subspace of its own bidegree.
  SparseRowModP image_coords(const AltVector& v, uint64_t prime);

  /// True iff the image of v in the quotient module vanishes; evaluated
  /// mod both primes, which must agree.
  bool image_is_zero(const AltVector& v);

  /// Rank of the images of the given vectors in the quotient at the stated
  /// bidegree; throws BidegreeMismatch when a vector lives elsewhere.
  int span_rank_in_m(std::span<const AltVector> vs, int n, int d1, int d2);

  /// Exact-rational rank of the relation subspace (guarded by
  /// exact_dim_limit); used by the opt-in verification backend.
  long long exact_rank(int n, int d1, int d2);

  /// Sparse mod-p coordinates of v in the diagram basis of its bidegree.
  static SparseRowModP to_sparse(const AltVector& v, uint64_t prime);

 private:
  Options opts_;
  std::mutex mu_;
  std::map<std::tuple<int, int, int, uint64_t>,
           std::shared_ptr<const SubspaceBasis>> memo_;

  static std::pair<uint64_t, uint64_t> fresh_primes(int attempt);
  std::shared_ptr<const SubspaceBasis> compute_subspace(int n, int d1, int d2,
                                                        uint64_t prime) const;
  std::string cache_path(int n, int d1, int d2, uint64_t prime) const;
  std::shared_ptr<const SubspaceBasis> load_cached(int n, int d1, int d2,
                                                   uint64_t prime) const;
  void store_cached(const SubspaceBasis& basis) const;
};

/// Shift pairs (c, e) with c + e >= 1, c <= d1, e <= d2, ordered by
/// increasing c + e then lexicographically.
std::vector<std::pair<int, int>> pieri_shifts(int d1, int d2);

/// Resolve the cache directory: ALTGEN_CACHE_DIR, else XDG cache, else
/// HOME/.cache, else a local fallback.
std::string default_cache_dir();

}  // namespace qtcat
