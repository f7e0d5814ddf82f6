#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qtcat/alternant.hpp"
#include "qtcat/diagram.hpp"
#include "qtcat/modular.hpp"

namespace qtcat {

/// Sparse multivariate polynomial in x_1,y_1,...,x_n,y_n with exact integer
/// coefficients.  Exponent layout: index 2i is the x_i exponent, 2i+1 the
/// y_i exponent.  Coefficient arithmetic is overflow-checked.
class MultiPoly {
 public:
  using Exponents = std::vector<uint8_t>;

  explicit MultiPoly(int n) : n_(n) {}

  int n() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }
  const std::map<Exponents, long long>& terms() const { return terms_; }

  void add_term(const Exponents& e, long long c);

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  MultiPoly operator-() const;

  /// Product with a single monomial.
  MultiPoly times_monomial(const Exponents& e, long long c) const;

  /// x-degree and y-degree when bihomogeneous; nullopt otherwise (the zero
  /// polynomial reports (0,0)).
  std::optional<std::pair<int, int>> bidegree() const;

  /// Image under the coordinate swap x_i <-> x_j, y_i <-> y_j (0-based).
  MultiPoly swap_indices(int i, int j) const;

  bool operator==(const MultiPoly& o) const {
    return n_ == o.n_ && terms_ == o.terms_;
  }

  std::string to_string() const;

 private:
  int n_;
  std::map<Exponents, long long> terms_;
};

/// sigma(f) = sgn(sigma) f for every transposition.
bool is_alternating(const MultiPoly& f);

/// Full signed expansion of the n x n determinant attached to a diagram.
/// Throws SizeGuard beyond the permutation budget.
MultiPoly expand_delta(const Diagram& d, int size_guard = 7);

/// Expansion of a basis combination; requires integer coefficients.
MultiPoly expand_altvector(const AltVector& v, int size_guard = 7);

/// Which coordinate differences get extracted first per column.
enum class ReducePolicy { XFirst, YFirst };

/// The structured matrix produced by column reduction of the determinant:
/// entry (i,j) vanishes for i <= s_j and is otherwise the product of
/// factors a_{i,l} for l = 1..s_j, where the column word says whether the
/// l-th factor is x_i - x_l or y_i - y_l.
class StaircaseMatrix {
 public:
  static StaircaseMatrix from_policy(const Diagram& d, ReducePolicy policy);
  /// Custom per-column factor words; word j must have length s_j with
  /// exactly alpha_j letters 'x'.
  static StaircaseMatrix from_words(const Diagram& d,
                                    std::vector<std::string> words);

  int n() const { return diagram_.n(); }
  const Diagram& diagram() const { return diagram_; }
  const std::vector<std::string>& words() const { return words_; }
  bool block_masked() const { return block_masked_; }

  /// 1-based indices.
  bool is_zero_entry(int i, int j) const;
  /// "0", "1", or a factor word like "x31y32".
  std::string entry_string(int i, int j) const;
  MultiPoly entry_poly(int i, int j) const;

  /// Matrix with entries outside the diagonal blocks cleared; needs the
  /// diagram to be sub-staircase.
  StaircaseMatrix block_diagonal() const;

 private:
  Diagram diagram_;
  std::vector<std::string> words_;
  bool block_masked_ = false;
  std::vector<int> block_of_;  // 1-based block id per index when masked
};

StaircaseMatrix staircase_reduce(const Diagram& d,
                                 ReducePolicy policy = ReducePolicy::XFirst);
StaircaseMatrix block_diagonal(const StaircaseMatrix& s);

/// Determinant over the nonzero pattern.  Throws SizeGuard for n beyond
/// the budget.
MultiPoly det_staircase(const StaircaseMatrix& s, int size_guard = 6);

/// Antisymmetrization normalized by 1/n!, regrouped in the determinant
/// basis; monomials with a repeated exponent pair vanish.
AltVector alt_project(const MultiPoly& f, int size_guard = 7);

enum class MembershipMode {
  kAuto,        // FullMonomial, except Alternating for alternating n = 5 input
  kFullMonomial,
  kAlternating,
};

/// Reusable brute-force membership test at one bidegree: the spanning set
/// { monomial * expanded basis determinant : monomial degree >= 1 } is
/// eliminated over the full monomial basis once (per prime); queries then
/// reduce against it.
class MonomialMembershipOracle {
 public:
  MonomialMembershipOracle(int n, int d1, int d2,
                           uint64_t prime_a = kDefaultPrimeA,
                           uint64_t prime_b = kDefaultPrimeB);
  ~MonomialMembershipOracle();
  MonomialMembershipOracle(MonomialMembershipOracle&&) noexcept;

  int n() const { return n_; }
  bool contains(const MultiPoly& f) const;
  /// Rank of the alternating part of the spanning set, in determinant
  /// coordinates; an independent check against the pipeline's rank.
  uint32_t alternating_rank() const;

 private:
  struct Impl;
  int n_, d1_, d2_;
  std::unique_ptr<Impl> impl_;
};

/// Decides membership of a bihomogeneous f of bidegree (d1, d2) in the
/// degree-(d1,d2) part of the shifted ideal, using the spanning set
/// { monomial * expanded basis determinant } over the full monomial basis.
/// The alternating mode projects that same spanning set to the alternating
/// component, which preserves the verdict for alternating inputs (the span
/// is permutation-stable, so an alternating member is a member of the
/// projected span and conversely).  Verdicts are computed mod both primes
/// and must agree.  Guarded at n <= 5.
bool membership_bruteforce(const MultiPoly& f, int n, int d1, int d2,
                           MembershipMode mode = MembershipMode::kAuto,
                           uint64_t prime_a = kDefaultPrimeA,
                           uint64_t prime_b = kDefaultPrimeB);

}  // namespace qtcat
