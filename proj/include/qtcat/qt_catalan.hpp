#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qtcat/diagram.hpp"

namespace qtcat {

class ModuleCalculator;

/// A sub-staircase partition: lambda_1 >= ... >= lambda_n = 0 with
/// lambda_i <= n - i.  These index the Catalan-many Dyck paths.
struct StaircaseLambda {
  std::vector<int> parts;
  int n() const { return static_cast<int>(parts.size()); }
  bool operator==(const StaircaseLambda&) const = default;
  auto operator<=>(const StaircaseLambda&) const = default;
  std::string to_string() const;
};

/// Throws Error when the sequence violates the defining inequalities.
StaircaseLambda make_lambda(std::vector<int> parts);

/// All lambda for the given n, in ascending lexicographic order; the count
/// is the n-th Catalan number.
std::vector<StaircaseLambda> enumerate_lambda(int n);

/// a(lambda) = sum_i (n - i - lambda_i).
int stat_a(const StaircaseLambda& l);
/// b(lambda) = #{(i,j) : i < j, lambda_i - lambda_j + i - j in {0,1}}.
int stat_b(const StaircaseLambda& l);

/// Sparse bigraded table with natural-number coefficients; the key is
/// (d1, d2) with d1 the t-exponent and d2 the q-exponent.
class QtPolynomial {
 public:
  using Coeffs = std::map<std::pair<int, int>, long long>;

  void add(int d1, int d2, long long c);
  long long coeff(int d1, int d2) const;
  const Coeffs& coeffs() const { return coeffs_; }
  long long total() const;  // evaluation at q = t = 1

  /// Swap of the two exponents.
  QtPolynomial transposed() const;
  bool operator==(const QtPolynomial&) const = default;

  /// Human form like "q^3 + q^2*t + q*t^2 + q*t + t^3".
  std::string to_string() const;

 private:
  Coeffs coeffs_;
};

/// The bigraded Catalan table from the path statistics: coefficient at
/// (d1, d2) counts lambda with b(lambda) = d1 and a(lambda) = d2.
QtPolynomial qt_catalan(int n);

long long catalan_number(int n);

/// Number of partitions of k.
long long p_of(int k);
/// Number of partitions of k into at most delta parts; p_bounded(d,0)=1,
/// p_bounded(0,k)=0 for k>0.
long long p_bounded(int delta, int k);

/// Deterministic search for a diagram with s_i in {i-1, i-2}, the given
/// partition type and bidegree.  Throws Infeasible when none exists
/// (requires d1 + d2 = n(n-1)/2 - weight(mu)).
Diagram construct_minimal_staircase(int n, int d1, int d2,
                                    const PartitionType& mu);

/// Solutions of the zero-one system: subsets E of {0..u-1} with |E| = k
/// and sum k(k+1)/2, returned as 0/1 vectors in deterministic order.
std::vector<std::vector<int>> zero_one_solutions(int u, int k);

/// The lambda built from each zero-one solution, with the trailing zeros
/// filled in; throws PreconditionViolation unless k <= u <= n-2 and
/// u >= 2k (below that threshold the solution count falls short of p(k)).
/// Each returned lambda is post-checked to have b = u(u+1)/2 and
/// a = v(v+1)/2 + uv - k with v = n-1-u.
std::vector<StaircaseLambda> zero_one_lambdas(int u, int k, int n);

struct PdkEntry {
  int d1 = 0, d2 = 0, k = 0;
  long long dim_m = 0;
  long long expected = 0;  // p(min(d1,d2), k)
  bool match = false;
};

struct PdkReport {
  int n = 0;
  bool pass = false;
  std::vector<PdkEntry> entries;     // all checked bidegrees
  std::vector<PdkEntry> mismatches;  // expected empty
};

/// Checks dim M_{d1,d2} = p(min(d1,d2), k) for every bidegree with
/// deficit 0 <= k <= n-3.
PdkReport conjecture_pdk_check(int n, ModuleCalculator& calc);

}  // namespace qtcat
