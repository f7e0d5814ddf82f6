#include "qtcat/diagram.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace qtcat {

std::optional<CanonicalForm> canonicalize(std::vector<Point> pts) {
  const size_t n = pts.size();
  std::vector<size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
    return order_key(pts[a]) < order_key(pts[b]);
  });
  for (size_t i = 0; i + 1 < n; ++i) {
    if (pts[idx[i]] == pts[idx[i + 1]]) return std::nullopt;
  }
  // parity of the sorting permutation = parity of inversions of idx
  long long inversions = 0;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (idx[i] > idx[j]) ++inversions;
  std::vector<Point> sorted;
  sorted.reserve(n);
  for (size_t i : idx) sorted.push_back(pts[i]);
  return CanonicalForm{Diagram::from_standard(std::move(sorted)),
                       (inversions % 2 == 0) ? 1 : -1};
}

Diagram Diagram::from_standard(std::vector<Point> pts) {
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    if (!(order_key(pts[i]) < order_key(pts[i + 1])))
      throw Error("Diagram::from_standard: list not in standard order");
  }
  for (const Point& p : pts) {
    if (p.x < 0 || p.y < 0)
      throw Error("Diagram::from_standard: negative exponent");
  }
  Diagram d;
  d.pts_ = std::move(pts);
  return d;
}

std::vector<int> Diagram::degrees() const {
  std::vector<int> s;
  s.reserve(pts_.size());
  for (const Point& p : pts_) s.push_back(p.degree());
  return s;
}

int Diagram::d1() const {
  int s = 0;
  for (const Point& p : pts_) s += p.x;
  return s;
}

int Diagram::d2() const {
  int s = 0;
  for (const Point& p : pts_) s += p.y;
  return s;
}

int Diagram::degree() const { return d1() + d2(); }

int Diagram::deficit() const { return n() * (n() - 1) / 2 - degree(); }

bool Diagram::sub_staircase() const {
  for (int j = 0; j < n(); ++j) {
    if (pts_[size_t(j)].degree() > j) return false;
  }
  return true;
}

bool Diagram::minimal_staircase() const {
  for (int i = 0; i < n(); ++i) {
    int s = pts_[size_t(i)].degree();
    if (s != i && s != i - 1) return false;  // 0-based: {i-1, i-2} 1-based
  }
  return true;
}

std::strong_ordering Diagram::operator<=>(const Diagram& o) const {
  size_t m = std::min(pts_.size(), o.pts_.size());
  for (size_t i = 0; i < m; ++i) {
    if (auto c = pts_[i].x <=> o.pts_[i].x; c != 0) return c;
    if (auto c = pts_[i].y <=> o.pts_[i].y; c != 0) return c;
  }
  return pts_.size() <=> o.pts_.size();
}

std::string Diagram::to_string() const {
  std::ostringstream os;
  os << "{";
  for (size_t i = 0; i < pts_.size(); ++i) {
    if (i) os << ",";
    os << "(" << pts_[i].x << "," << pts_[i].y << ")";
  }
  os << "}";
  return os.str();
}

PartitionType::PartitionType(std::vector<int> p) : parts(std::move(p)) {
  for (int v : parts) {
    if (v <= 0) throw Error("PartitionType: parts must be positive");
  }
  if (!std::is_sorted(parts.rbegin(), parts.rend()))
    throw Error("PartitionType: parts must be weakly decreasing");
}

int PartitionType::weight() const {
  return std::accumulate(parts.begin(), parts.end(), 0);
}

std::string PartitionType::to_string() const {
  std::string s = "(";
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(parts[i]);
  }
  s += ")";
  return s;
}

BlockStructure block_structure_of_degrees(std::span<const int> degrees) {
  const int n = static_cast<int>(degrees.size());
  for (int j = 1; j <= n; ++j) {
    if (degrees[size_t(j - 1)] > j - 1)
      throw NotSubStaircase("block structure needs s_j <= j-1 for all j, "
                            "violated at j=" + std::to_string(j));
  }
  BlockStructure b;
  for (int j = 1; j <= n; ++j) {
    if (degrees[size_t(j - 1)] == j - 1) b.starts.push_back(j);
  }
  for (size_t t = 0; t < b.starts.size(); ++t) {
    int next = (t + 1 < b.starts.size()) ? b.starts[t + 1] : n + 1;
    b.sizes.push_back(next - b.starts[t]);
    int def = 0;
    for (int j = b.starts[t]; j < next; ++j) def += (j - 1) - degrees[size_t(j - 1)];
    b.deficits.push_back(def);
  }
  return b;
}

BlockStructure block_structure(const Diagram& d) {
  auto s = d.degrees();
  return block_structure_of_degrees(s);
}

PartitionType partition_type_of_degrees(std::span<const int> degrees) {
  BlockStructure b = block_structure_of_degrees(degrees);
  std::vector<int> parts;
  for (int v : b.deficits) {
    if (v > 0) parts.push_back(v);
  }
  std::sort(parts.rbegin(), parts.rend());
  return PartitionType(std::move(parts));
}

PartitionType partition_type(const Diagram& d) {
  auto s = d.degrees();
  return partition_type_of_degrees(s);
}

bool is_minimal_staircase(const Diagram& d) { return d.minimal_staircase(); }

namespace {

// Can the multiset `avail` be split into groups with the given sums?
// Groups are filled one target at a time; within a target, equal parts are
// deduplicated so each multiset choice is tried once.
bool fill_target(std::vector<int>& avail, std::vector<char>& used,
                 int target, size_t from, std::vector<int>& rest_targets);

bool split_into(std::vector<int>& avail, std::vector<char>& used,
                std::vector<int>& targets) {
  if (targets.empty()) return true;
  int target = targets.back();
  targets.pop_back();
  bool ok = fill_target(avail, used, target, 0, targets);
  targets.push_back(target);
  return ok;
}

bool fill_target(std::vector<int>& avail, std::vector<char>& used,
                 int target, size_t from, std::vector<int>& rest_targets) {
  if (target == 0) return split_into(avail, used, rest_targets);
  for (size_t i = from; i < avail.size(); ++i) {
    if (used[i] || avail[i] > target) continue;
    if (i > from && avail[i] == avail[i - 1] && !used[i - 1]) continue;  // dedupe
    used[i] = 1;
    if (fill_target(avail, used, target - avail[i], i + 1, rest_targets))
      return true;
    used[i] = 0;
  }
  return false;
}

}  // namespace

bool partition_leq(const PartitionType& mu, const PartitionType& nu) {
  if (mu.weight() != nu.weight())
    throw WeightMismatch("subpartition order compares partitions of the same "
                         "integer: " + std::to_string(mu.weight()) + " vs " +
                         std::to_string(nu.weight()));
  if (mu == nu) return true;
  std::vector<int> avail = mu.parts;         // descending
  std::vector<int> targets = nu.parts;       // descending; consumed from back
  std::reverse(targets.begin(), targets.end());
  std::vector<char> used(avail.size(), 0);
  return split_into(avail, used, targets);
}

bool partition_lt(const PartitionType& mu, const PartitionType& nu) {
  return !(mu == nu) && partition_leq(mu, nu);
}

std::vector<PartitionType> partitions_of(int k) {
  std::vector<PartitionType> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int rem, int maxpart) -> void {
    if (rem == 0) {
      out.push_back(PartitionType(cur));
      return;
    }
    for (int p = std::min(rem, maxpart); p >= 1; --p) {
      cur.push_back(p);
      self(self, rem - p, p);
      cur.pop_back();
    }
  };
  if (k >= 0) rec(rec, k, k == 0 ? 1 : k);
  return out;
}

int min_total_degree(int n) {
  int total = 0, taken = 0;
  for (int s = 0; taken < n; ++s) {
    int cap = std::min(n - taken, s + 1);
    total += cap * s;
    taken += cap;
  }
  return total;
}

namespace {

// Minimal degree-sum of `count` points strictly after key (s, x) in the
// standard order chain.
int min_future_sum(int s, int x, int count) {
  int total = 0;
  int cur_s = s, cur_cap = s - x;  // points of degree s with x' > x
  while (count > 0) {
    int take = std::min(count, cur_cap);
    total += take * cur_s;
    count -= take;
    ++cur_s;
    cur_cap = cur_s + 1;
  }
  return total;
}

void enumerate_rec(int n, int pos, int last_s, int last_x, int rem1, int rem2,
                   bool sub_only, std::vector<Point>& cur,
                   std::vector<Diagram>& out) {
  if (pos == n) {
    if (rem1 == 0 && rem2 == 0) out.push_back(Diagram::from_standard(cur));
    return;
  }
  const int remaining_after = n - pos - 1;
  const int rem_total = rem1 + rem2;
  int s_hi = rem_total;
  if (sub_only) s_hi = std::min(s_hi, pos);  // s_{pos+1} <= pos (1-based j-1)
  for (int s = last_s; s <= s_hi; ++s) {
    int x_lo = std::max(s == last_s ? last_x + 1 : 0, s - rem2);
    int x_hi = std::min(s, rem1);
    for (int x = x_lo; x <= x_hi; ++x) {
      if (min_future_sum(s, x, remaining_after) > rem_total - s) continue;
      cur.push_back(Point{x, s - x});
      enumerate_rec(n, pos + 1, s, x, rem1 - x, rem2 - (s - x), sub_only, cur,
                    out);
      cur.pop_back();
    }
  }
}

}  // namespace

std::vector<Diagram> enumerate_diagrams(int n, int d1, int d2,
                                        bool sub_staircase_only) {
  std::vector<Diagram> out;
  if (n <= 0) {
    if (n == 0 && d1 == 0 && d2 == 0) out.push_back(Diagram());
    return out;
  }
  if (d1 < 0 || d2 < 0) return out;
  if (d1 + d2 < min_total_degree(n)) return out;
  if (sub_staircase_only && d1 + d2 > n * (n - 1) / 2) return out;
  std::vector<Point> cur;
  cur.reserve(size_t(n));
  enumerate_rec(n, 0, 0, -1, d1, d2, sub_staircase_only, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

const std::vector<Diagram>& diagram_basis(int n, int d1, int d2) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, std::vector<Diagram>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(n, d1, d2);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, enumerate_diagrams(n, d1, d2, false)).first;
  }
  return it->second;
}

}  // namespace qtcat
