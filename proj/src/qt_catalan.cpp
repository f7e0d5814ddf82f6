#include "qtcat/qt_catalan.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>

#include "qtcat/graded_module.hpp"

namespace qtcat {

std::string StaircaseLambda::to_string() const {
  std::string s = "(";
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(parts[i]);
  }
  return s + ")";
}

StaircaseLambda make_lambda(std::vector<int> parts) {
  const int n = static_cast<int>(parts.size());
  if (n == 0) throw Error("lambda must have positive length");
  if (parts[size_t(n - 1)] != 0) throw Error("lambda_n must be 0");
  for (int i = 0; i < n; ++i) {
    if (parts[size_t(i)] < 0 || parts[size_t(i)] > n - i - 1)
      throw Error("lambda_i must satisfy 0 <= lambda_i <= n-i");
    if (i + 1 < n && parts[size_t(i)] < parts[size_t(i + 1)])
      throw Error("lambda must be weakly decreasing");
  }
  return StaircaseLambda{std::move(parts)};
}

std::vector<StaircaseLambda> enumerate_lambda(int n) {
  if (n < 1) throw Error("enumerate_lambda needs n >= 1");
  std::vector<StaircaseLambda> out;
  std::vector<int> cur(size_t(n), 0);
  auto rec = [&](auto&& self, int i) -> void {
    if (i == n - 1) {  // lambda_n = 0 fixed
      out.push_back(StaircaseLambda{cur});
      return;
    }
    int hi = n - i - 1;                      // lambda_{i+1} <= n-(i+1)
    if (i > 0) hi = std::min(hi, cur[size_t(i - 1)]);
    for (int v = 0; v <= hi; ++v) {
      cur[size_t(i)] = v;
      self(self, i + 1);
    }
    cur[size_t(i)] = 0;
  };
  rec(rec, 0);
  return out;
}

int stat_a(const StaircaseLambda& l) {
  int n = l.n(), a = 0;
  for (int i = 1; i <= n; ++i) a += n - i - l.parts[size_t(i - 1)];
  return a;
}

int stat_b(const StaircaseLambda& l) {
  int n = l.n(), b = 0;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      int v = l.parts[size_t(i - 1)] - l.parts[size_t(j - 1)] + i - j;
      if (v == 0 || v == 1) ++b;
    }
  }
  return b;
}

void QtPolynomial::add(int d1, int d2, long long c) {
  if (c == 0) return;
  auto key = std::make_pair(d1, d2);
  auto [it, fresh] = coeffs_.emplace(key, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) coeffs_.erase(it);
  }
}

long long QtPolynomial::coeff(int d1, int d2) const {
  auto it = coeffs_.find({d1, d2});
  return it == coeffs_.end() ? 0 : it->second;
}

long long QtPolynomial::total() const {
  long long t = 0;
  for (const auto& [k, c] : coeffs_) t += c;
  return t;
}

QtPolynomial QtPolynomial::transposed() const {
  QtPolynomial out;
  for (const auto& [k, c] : coeffs_) out.add(k.second, k.first, c);
  return out;
}

std::string QtPolynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  // sort by total degree then q-exponent for a readable polynomial
  std::vector<std::pair<std::pair<int, int>, long long>> v(coeffs_.begin(),
                                                           coeffs_.end());
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
    int da = a.first.first + a.first.second, db = b.first.first + b.first.second;
    if (da != db) return da > db;
    return a.first.second > b.first.second;  // higher q power first
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : v) {
    auto [t_exp, q_exp] = k;
    if (!first) os << " + ";
    first = false;
    std::vector<std::string> factors;
    if (c != 1 || (t_exp == 0 && q_exp == 0)) factors.push_back(std::to_string(c));
    if (q_exp == 1) factors.push_back("q");
    if (q_exp > 1) factors.push_back("q^" + std::to_string(q_exp));
    if (t_exp == 1) factors.push_back("t");
    if (t_exp > 1) factors.push_back("t^" + std::to_string(t_exp));
    for (size_t i = 0; i < factors.size(); ++i) {
      if (i) os << "*";
      os << factors[i];
    }
  }
  return os.str();
}

QtPolynomial qt_catalan(int n) {
  QtPolynomial out;
  for (const StaircaseLambda& l : enumerate_lambda(n)) {
    out.add(stat_b(l), stat_a(l), 1);
  }
  return out;
}

long long catalan_number(int n) {
  // n <= 30 or so; exact in 64 bits
  long long c = 1;
  for (int i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

long long p_bounded(int delta, int k) {
  if (k < 0 || delta < 0) throw Error("partition counters need k, delta >= 0");
  if (k == 0) return 1;
  if (delta == 0) return 0;
  // partitions of k into at most delta parts
  std::vector<std::vector<long long>> dp(size_t(delta) + 1,
                                         std::vector<long long>(size_t(k) + 1, 0));
  for (int d = 0; d <= delta; ++d) dp[size_t(d)][0] = 1;
  for (int d = 1; d <= delta; ++d) {
    for (int m = 1; m <= k; ++m) {
      dp[size_t(d)][size_t(m)] = dp[size_t(d - 1)][size_t(m)];
      if (m >= d) dp[size_t(d)][size_t(m)] += dp[size_t(d)][size_t(m - d)];
    }
  }
  return dp[size_t(delta)][size_t(k)];
}

long long p_of(int k) { return p_bounded(k, k); }

namespace {

// Positions {i : s_i = i-2} of a minimal staircase s-vector, grouped into
// maximal runs; run lengths are the per-block deficits.  Placing type mu
// means choosing disjoint runs with lengths mu_1..mu_m inside {2..n},
// separated by at least one non-run position.
struct GapPlacement {
  std::vector<std::pair<int, int>> runs;  // (start, length), starts ascending
};

void placements_rec(int n, const std::vector<int>& parts, size_t idx,
                    int min_start, std::vector<std::pair<int, int>>& cur,
                    std::vector<GapPlacement>& out) {
  if (idx == parts.size()) {
    out.push_back(GapPlacement{cur});
    return;
  }
  int len = parts[idx];
  for (int start = min_start; start + len - 1 <= n; ++start) {
    cur.emplace_back(start, len);
    placements_rec(n, parts, idx + 1, start + len + 1, cur, out);
    cur.pop_back();
  }
}

// All ways to lay the runs left to right.  Run lengths are placed in every
// distinct multiset order; to keep the count finite we fix the order in
// which lengths appear and enumerate distinct orderings of mu.
std::vector<GapPlacement> gap_placements(int n, const PartitionType& mu) {
  std::vector<int> parts = mu.parts;
  std::sort(parts.begin(), parts.end());
  std::vector<GapPlacement> out;
  do {
    std::vector<std::pair<int, int>> cur;
    placements_rec(n, parts, 0, 2, cur, out);
  } while (std::next_permutation(parts.begin(), parts.end()));
  return out;
}

std::vector<int> svector_of_placement(int n, const GapPlacement& g) {
  std::vector<char> in_run(size_t(n) + 1, 0);
  for (auto [start, len] : g.runs)
    for (int i = start; i < start + len; ++i) in_run[size_t(i)] = 1;
  std::vector<int> s(static_cast<size_t>(n));
  for (int i = 1; i <= n; ++i) s[size_t(i - 1)] = in_run[size_t(i)] ? i - 2 : i - 1;
  return s;
}

// Assign x-exponents to an s-vector: x_i in [0, s_i], strictly increasing
// within equal-degree pairs, total d1.  Largest-first, deterministic.
bool assign_x(const std::vector<int>& s, int d1, std::vector<int>& x) {
  const int n = static_cast<int>(s.size());
  x.assign(size_t(n), 0);
  // pair constraint: positions sharing a degree need strictly increasing x
  std::vector<char> tied_to_next(size_t(n), 0);
  for (int i = 0; i + 1 < n; ++i)
    if (s[size_t(i)] == s[size_t(i + 1)]) tied_to_next[size_t(i)] = 1;
  std::vector<long long> max_suffix(size_t(n) + 1, 0);
  for (int i = n - 1; i >= 0; --i)
    max_suffix[size_t(i)] = s[size_t(i)] + max_suffix[size_t(i + 1)];
  auto rec = [&](auto&& self, int i, int rem) -> bool {
    if (i == n) return rem == 0;
    if (rem < 0 || rem > max_suffix[size_t(i)]) return false;
    int lo = 0, hi = s[size_t(i)];
    if (i > 0 && s[size_t(i - 1)] == s[size_t(i)]) lo = x[size_t(i - 1)] + 1;
    if (tied_to_next[size_t(i)]) hi = std::min(hi, s[size_t(i)] - 1);
    for (int v = std::min<long long>(hi, rem); v >= lo; --v) {
      x[size_t(i)] = int(v);
      if (self(self, i + 1, rem - int(v))) return true;
    }
    return false;
  };
  return rec(rec, 0, d1);
}

}  // namespace

Diagram construct_minimal_staircase(int n, int d1, int d2,
                                    const PartitionType& mu) {
  if (n < 1 || d1 < 0 || d2 < 0)
    throw Infeasible("need n >= 1 and nonnegative bidegree");
  if (d1 + d2 != n * (n - 1) / 2 - mu.weight())
    throw Infeasible("bidegree does not match the requested deficit: d1+d2 "
                     "must be n(n-1)/2 - |mu|");
  for (const GapPlacement& g : gap_placements(n, mu)) {
    std::vector<int> s = svector_of_placement(n, g);
    std::vector<int> x;
    if (!assign_x(s, d1, x)) continue;
    std::vector<Point> pts(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
      pts[size_t(i)] = Point{x[size_t(i)], s[size_t(i)] - x[size_t(i)]};
    Diagram d = Diagram::from_standard(pts);
    if (!d.minimal_staircase() || !(partition_type(d) == mu) ||
        d.d1() != d1 || d.d2() != d2)
      throw Error("minimal staircase construction failed its postcondition");
    return d;
  }
  throw Infeasible("no minimal staircase form with n=" + std::to_string(n) +
                   ", bidegree (" + std::to_string(d1) + "," +
                   std::to_string(d2) + "), type " + mu.to_string());
}

std::vector<std::vector<int>> zero_one_solutions(int u, int k) {
  if (u < 0 || k < 0) throw PreconditionViolation("zero-one system needs u, k >= 0");
  std::vector<std::vector<int>> out;
  std::vector<int> eps(size_t(u), 0);
  long long target = (long long)k * (k + 1) / 2;
  auto rec = [&](auto&& self, int i, int ones_left, long long sum_left) -> void {
    if (ones_left == 0) {
      if (sum_left == 0) out.push_back(eps);
      return;
    }
    if (i >= u) return;
    // remaining indices i..u-1: check attainable range for the weighted sum
    long long lo = 0, hi = 0;
    for (int t = 0; t < ones_left; ++t) {
      lo += i + t;
      hi += u - 1 - t;
    }
    if (sum_left < lo || sum_left > hi) return;
    eps[size_t(i)] = 1;
    self(self, i + 1, ones_left - 1, sum_left - i);
    eps[size_t(i)] = 0;
    self(self, i + 1, ones_left, sum_left);
  };
  rec(rec, 0, k, target);
  return out;
}

std::vector<StaircaseLambda> zero_one_lambdas(int u, int k, int n) {
  if (!(k >= 0 && k <= u && u <= n - 2))
    throw PreconditionViolation("zero-one lambdas need k <= u <= n-2");
  if (u < 2 * k)
    throw PreconditionViolation(
        "zero-one lambdas need u >= 2k; below that threshold the system has "
        "fewer than p(k) solutions");
  const int v = n - 1 - u;
  std::vector<StaircaseLambda> out;
  for (const auto& eps : zero_one_solutions(u, k)) {
    std::vector<int> parts(size_t(n), 0);
    for (int i = 0; i < u; ++i) parts[size_t(i)] = u - i + eps[size_t(i)];
    StaircaseLambda l = make_lambda(std::move(parts));
    if (stat_b(l) != u * (u + 1) / 2 || stat_a(l) != v * (v + 1) / 2 + u * v - k)
      throw Error("zero-one lambda failed its statistics post-check");
    out.push_back(std::move(l));
  }
  return out;
}

PdkReport conjecture_pdk_check(int n, ModuleCalculator& calc) {
  PdkReport report;
  report.n = n;
  const int total = n * (n - 1) / 2;
  for (int k = 0; k <= n - 3; ++k) {
    int d = total - k;
    if (d < 0) break;
    for (int d1 = 0; d1 <= d; ++d1) {
      int d2 = d - d1;
      PdkEntry e;
      e.d1 = d1;
      e.d2 = d2;
      e.k = k;
      e.dim_m = calc.dim_m(n, d1, d2).dim_m;
      e.expected = p_bounded(std::min(d1, d2), k);
      e.match = e.dim_m == e.expected;
      if (!e.match) report.mismatches.push_back(e);
      report.entries.push_back(e);
    }
  }
  report.pass = report.mismatches.empty();
  return report;
}

}  // namespace qtcat
