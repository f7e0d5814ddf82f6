#include "qtcat/poly_expand.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "qtcat/subspace.hpp"

namespace qtcat {

namespace {

long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r))
    throw Error("integer coefficient overflow");
  return r;
}

long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r))
    throw Error("integer coefficient overflow");
  return r;
}

int perm_sign(const std::vector<int>& perm) {
  int inv = 0;
  for (size_t i = 0; i < perm.size(); ++i)
    for (size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

}  // namespace

void MultiPoly::add_term(const Exponents& e, long long c) {
  if (c == 0) return;
  if (e.size() != size_t(2 * n_)) throw Error("exponent vector length mismatch");
  auto [it, fresh] = terms_.emplace(e, c);
  if (!fresh) {
    it->second = checked_add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
  if (a.n_ != b.n_) throw Error("polynomials over different variable sets");
  MultiPoly out = a;
  for (const auto& [e, c] : b.terms_) out.add_term(e, c);
  return out;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
  if (a.n_ != b.n_) throw Error("polynomials over different variable sets");
  MultiPoly out = a;
  for (const auto& [e, c] : b.terms_) out.add_term(e, -c);
  return out;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out(n_);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
  return out;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.n_ != b.n_) throw Error("polynomials over different variable sets");
  MultiPoly out(a.n_);
  MultiPoly::Exponents e(size_t(2 * a.n_));
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (size_t i = 0; i < e.size(); ++i) {
        int sum = int(ea[i]) + int(eb[i]);
        if (sum > 255) throw Error("exponent overflow");
        e[i] = uint8_t(sum);
      }
      out.add_term(e, checked_mul(ca, cb));
    }
  }
  return out;
}

MultiPoly MultiPoly::times_monomial(const Exponents& m, long long c) const {
  if (m.size() != size_t(2 * n_)) throw Error("exponent vector length mismatch");
  MultiPoly out(n_);
  Exponents e(size_t(2 * n_));
  for (const auto& [ea, ca] : terms_) {
    for (size_t i = 0; i < e.size(); ++i) {
      int sum = int(ea[i]) + int(m[i]);
      if (sum > 255) throw Error("exponent overflow");
      e[i] = uint8_t(sum);
    }
    out.add_term(e, checked_mul(ca, c));
  }
  return out;
}

std::optional<std::pair<int, int>> MultiPoly::bidegree() const {
  if (terms_.empty()) return std::make_pair(0, 0);
  std::optional<std::pair<int, int>> result;
  for (const auto& [e, c] : terms_) {
    int dx = 0, dy = 0;
    for (int i = 0; i < n_; ++i) {
      dx += e[size_t(2 * i)];
      dy += e[size_t(2 * i + 1)];
    }
    if (!result) {
      result = std::make_pair(dx, dy);
    } else if (*result != std::make_pair(dx, dy)) {
      return std::nullopt;
    }
  }
  return result;
}

MultiPoly MultiPoly::swap_indices(int i, int j) const {
  MultiPoly out(n_);
  for (const auto& [e, c] : terms_) {
    Exponents f = e;
    std::swap(f[size_t(2 * i)], f[size_t(2 * j)]);
    std::swap(f[size_t(2 * i + 1)], f[size_t(2 * j + 1)]);
    out.add_term(f, c);
  }
  return out;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << (c >= 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    first = false;
    long long a = c < 0 ? -c : c;
    bool printed = false;
    if (a != 1) {
      os << a;
      printed = true;
    }
    for (int i = 0; i < n_; ++i) {
      for (int xy = 0; xy < 2; ++xy) {
        int exp = e[size_t(2 * i + xy)];
        if (exp == 0) continue;
        if (printed) os << "*";
        os << (xy == 0 ? "x" : "y") << (i + 1);
        if (exp > 1) os << "^" << exp;
        printed = true;
      }
    }
    if (!printed) os << "1";
  }
  return os.str();
}

bool is_alternating(const MultiPoly& f) {
  for (int i = 0; i + 1 < f.n(); ++i) {
    if (!(f.swap_indices(i, i + 1) == -f)) return false;
  }
  return true;
}

MultiPoly expand_delta(const Diagram& d, int size_guard) {
  const int n = d.n();
  if (n > size_guard)
    throw SizeGuard("determinant expansion guarded at n <= " +
                    std::to_string(size_guard));
  MultiPoly out(n);
  std::vector<int> perm(static_cast<size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  MultiPoly::Exponents e(size_t(2 * n));
  do {
    for (int j = 0; j < n; ++j) {
      const Point& p = d.point(j);
      e[size_t(2 * perm[size_t(j)])] = uint8_t(p.x);
      e[size_t(2 * perm[size_t(j)] + 1)] = uint8_t(p.y);
    }
    out.add_term(e, perm_sign(perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

MultiPoly expand_altvector(const AltVector& v, int size_guard) {
  MultiPoly out(v.n());
  for (const auto& [d, c] : v.terms()) {
    if (!(c.den() == BigInt(1)) || !c.num().fits_ll())
      throw Error("expansion needs integer coefficients");
    MultiPoly piece = expand_delta(d, size_guard);
    for (const auto& [e, pc] : piece.terms())
      out.add_term(e, checked_mul(pc, c.num().to_ll()));
  }
  return out;
}

StaircaseMatrix StaircaseMatrix::from_words(const Diagram& d,
                                            std::vector<std::string> words) {
  if (int(words.size()) != d.n()) throw Error("need one word per column");
  for (int j = 0; j < d.n(); ++j) {
    const Point& p = d.point(j);
    const std::string& w = words[size_t(j)];
    if (int(w.size()) != p.degree())
      throw Error("column word length must be the column degree");
    int xs = 0;
    for (char ch : w) {
      if (ch == 'x') ++xs;
      else if (ch != 'y') throw Error("column words use letters x and y");
    }
    if (xs != p.x)
      throw Error("column word must extract exactly the x-exponent");
  }
  StaircaseMatrix s;
  s.diagram_ = d;
  s.words_ = std::move(words);
  return s;
}

StaircaseMatrix StaircaseMatrix::from_policy(const Diagram& d,
                                             ReducePolicy policy) {
  std::vector<std::string> words;
  words.reserve(size_t(d.n()));
  for (int j = 0; j < d.n(); ++j) {
    const Point& p = d.point(j);
    std::string w;
    if (policy == ReducePolicy::XFirst) {
      w.append(size_t(p.x), 'x');
      w.append(size_t(p.y), 'y');
    } else {
      w.append(size_t(p.y), 'y');
      w.append(size_t(p.x), 'x');
    }
    words.push_back(std::move(w));
  }
  return from_words(d, std::move(words));
}

bool StaircaseMatrix::is_zero_entry(int i, int j) const {
  int sj = diagram_.point(j - 1).degree();
  if (i <= sj) return true;
  if (block_masked_ && block_of_[size_t(i - 1)] != block_of_[size_t(j - 1)])
    return true;
  return false;
}

std::string StaircaseMatrix::entry_string(int i, int j) const {
  if (is_zero_entry(i, j)) return "0";
  const std::string& w = words_[size_t(j - 1)];
  if (w.empty()) return "1";
  std::string out;
  for (size_t l = 0; l < w.size(); ++l) {
    out.push_back(w[l]);
    out += std::to_string(i);
    out += std::to_string(l + 1);
  }
  return out;
}

MultiPoly StaircaseMatrix::entry_poly(int i, int j) const {
  const int n = diagram_.n();
  MultiPoly one(n);
  MultiPoly::Exponents e(size_t(2 * n), 0);
  one.add_term(e, 1);
  if (is_zero_entry(i, j)) return MultiPoly(n);
  const std::string& w = words_[size_t(j - 1)];
  MultiPoly acc = one;
  for (size_t l = 0; l < w.size(); ++l) {
    // factor v_i - v_{l+1} with v = x or y
    MultiPoly factor(n);
    MultiPoly::Exponents hi(size_t(2 * n), 0), lo(size_t(2 * n), 0);
    int off = w[l] == 'x' ? 0 : 1;
    hi[size_t(2 * (i - 1) + off)] = 1;
    lo[size_t(2 * int(l) + off)] = 1;
    factor.add_term(hi, 1);
    factor.add_term(lo, -1);
    acc = acc * factor;
  }
  return acc;
}

StaircaseMatrix StaircaseMatrix::block_diagonal() const {
  BlockStructure b = block_structure(diagram_);  // throws NotSubStaircase
  StaircaseMatrix out = *this;
  out.block_masked_ = true;
  out.block_of_.assign(size_t(diagram_.n()), 0);
  for (size_t t = 0; t < b.starts.size(); ++t) {
    int next = (t + 1 < b.starts.size()) ? b.starts[t + 1]
                                         : diagram_.n() + 1;
    for (int i = b.starts[t]; i < next; ++i)
      out.block_of_[size_t(i - 1)] = int(t) + 1;
  }
  return out;
}

StaircaseMatrix staircase_reduce(const Diagram& d, ReducePolicy policy) {
  return StaircaseMatrix::from_policy(d, policy);
}

StaircaseMatrix block_diagonal(const StaircaseMatrix& s) {
  return s.block_diagonal();
}

MultiPoly det_staircase(const StaircaseMatrix& s, int size_guard) {
  const int n = s.n();
  if (n > size_guard)
    throw SizeGuard("staircase determinant guarded at n <= " +
                    std::to_string(size_guard));
  // candidate rows per column under the zero pattern
  std::vector<std::vector<int>> candidates(static_cast<size_t>(n));
  for (int j = 1; j <= n; ++j)
    for (int i = 1; i <= n; ++i)
      if (!s.is_zero_entry(i, j)) candidates[size_t(j - 1)].push_back(i);
  // process columns scarcest-first
  std::vector<int> col_order(static_cast<size_t>(n));
  std::iota(col_order.begin(), col_order.end(), 1);
  std::sort(col_order.begin(), col_order.end(), [&](int a, int b) {
    return candidates[size_t(a - 1)].size() < candidates[size_t(b - 1)].size();
  });
  // entry polynomials on demand
  std::vector<std::vector<std::optional<MultiPoly>>> entry(
      static_cast<size_t>(n),
      std::vector<std::optional<MultiPoly>>(static_cast<size_t>(n)));
  auto entry_at = [&](int i, int j) -> const MultiPoly& {
    auto& slot = entry[size_t(i - 1)][size_t(j - 1)];
    if (!slot) slot = s.entry_poly(i, j);
    return *slot;
  };
  MultiPoly total(n);
  std::vector<int> row_of_col(static_cast<size_t>(n), 0);
  std::vector<char> used(size_t(n) + 1, 0);
  auto rec = [&](auto&& self, size_t level, const MultiPoly& acc) -> void {
    if (level == size_t(n)) {
      // permutation sign: row_of_col as a function of column index
      std::vector<int> perm(static_cast<size_t>(n));
      for (int j = 1; j <= n; ++j) perm[size_t(j - 1)] = row_of_col[size_t(j - 1)];
      total = total + (perm_sign(perm) == 1 ? acc : -acc);
      return;
    }
    int j = col_order[level];
    for (int i : candidates[size_t(j - 1)]) {
      if (used[size_t(i)]) continue;
      const MultiPoly& cell = entry_at(i, j);
      if (cell.is_zero()) continue;
      used[size_t(i)] = 1;
      row_of_col[size_t(j - 1)] = i;
      self(self, level + 1, acc * cell);
      used[size_t(i)] = 0;
    }
  };
  MultiPoly one(n);
  MultiPoly::Exponents e(size_t(2 * n), 0);
  one.add_term(e, 1);
  rec(rec, 0, one);
  return total;
}

AltVector alt_project(const MultiPoly& f, int size_guard) {
  const int n = f.n();
  if (n > size_guard)
    throw SizeGuard("antisymmetrizer guarded at n <= " +
                    std::to_string(size_guard));
  auto bideg = f.bidegree();
  if (!bideg) throw Error("antisymmetrizer needs a bihomogeneous input");
  AltVector out = AltVector::zero(n, bideg->first, bideg->second);
  long long factorial = 1;
  for (int i = 2; i <= n; ++i) factorial *= i;
  const Rational inv_fact(BigInt(1), BigInt(factorial));
  for (const auto& [e, c] : f.terms()) {
    std::vector<Point> pts(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
      pts[size_t(i)] = Point{int(e[size_t(2 * i)]), int(e[size_t(2 * i + 1)])};
    if (auto canon = canonicalize(pts)) {
      out.add_term(canon->diagram,
                   Rational(c * canon->sign) * inv_fact);
    }
  }
  return out;
}

namespace {

// All exponent vectors over 2n slots with x-sum c and y-sum e, emitted in
// lexicographic order.
std::vector<MultiPoly::Exponents> monomials_of_bidegree(int n, int c, int e) {
  std::vector<MultiPoly::Exponents> xs, out;
  MultiPoly::Exponents cur(size_t(n), 0);
  auto compose = [&](auto&& self, int pos, int left,
                     std::vector<MultiPoly::Exponents>& sink) -> void {
    if (pos == n - 1) {
      cur[size_t(pos)] = uint8_t(left);
      sink.push_back(cur);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      cur[size_t(pos)] = uint8_t(v);
      self(self, pos + 1, left - v, sink);
    }
  };
  if (n == 0) return out;
  compose(compose, 0, c, xs);
  std::vector<MultiPoly::Exponents> ys;
  compose(compose, 0, e, ys);
  out.reserve(xs.size() * ys.size());
  for (const auto& a : xs) {
    for (const auto& b : ys) {
      MultiPoly::Exponents m(size_t(2 * n));
      for (int i = 0; i < n; ++i) {
        m[size_t(2 * i)] = a[size_t(i)];
        m[size_t(2 * i + 1)] = b[size_t(i)];
      }
      out.push_back(std::move(m));
    }
  }
  return out;
}

// One representative per coordinate-permutation orbit: the pair list
// ((x_i, y_i)) must be non-increasing.
bool is_orbit_representative(const MultiPoly::Exponents& m, int n) {
  for (int i = 0; i + 1 < n; ++i) {
    auto a = std::make_pair(int(m[size_t(2 * i)]), int(m[size_t(2 * i + 1)]));
    auto b = std::make_pair(int(m[size_t(2 * i + 2)]),
                            int(m[size_t(2 * i + 3)]));
    if (a < b) return false;
  }
  return true;
}

}  // namespace

struct MonomialMembershipOracle::Impl {
  std::map<MultiPoly::Exponents, uint32_t> col_of;
  uint64_t primes[2];
  std::vector<RrefBuilderModP> builders;  // one per prime
  uint32_t alt_rank = 0;

  SparseRowModP to_row(const MultiPoly& p, uint64_t prime) const {
    SparseRowModP row;
    row.reserve(p.term_count());
    for (const auto& [e, c] : p.terms()) {
      auto it = col_of.find(e);
      if (it == col_of.end()) throw Error("monomial outside the graded piece");
      uint64_t r = residue_of_ll(c, prime);
      if (r != 0) row.emplace_back(it->second, r);
    }
    return row;
  }
};

MonomialMembershipOracle::MonomialMembershipOracle(int n, int d1, int d2,
                                                   uint64_t prime_a,
                                                   uint64_t prime_b)
    : n_(n), d1_(d1), d2_(d2), impl_(std::make_unique<Impl>()) {
  if (n > 5) throw SizeGuard("brute-force membership guarded at n <= 5");
  auto columns = monomials_of_bidegree(n, d1, d2);
  for (uint32_t i = 0; i < columns.size(); ++i)
    impl_->col_of.emplace(columns[i], i);
  impl_->primes[0] = prime_a;
  impl_->primes[1] = prime_b;
  impl_->builders.emplace_back(prime_a, uint32_t(columns.size()));
  impl_->builders.emplace_back(prime_b, uint32_t(columns.size()));
  const auto& alt_basis = diagram_basis(n, d1, d2);
  RrefBuilderModP alt_builder(prime_a, uint32_t(alt_basis.size()));
  for (int c = 0; c <= d1; ++c) {
    for (int e = 0; e <= d2; ++e) {
      if (c + e < 1) continue;
      if (d1 - c + d2 - e < min_total_degree(n)) continue;
      const auto& sources = diagram_basis(n, d1 - c, d2 - e);
      if (sources.empty()) continue;
      auto shifts = monomials_of_bidegree(n, c, e);
      for (const Diagram& src : sources) {
        MultiPoly base = expand_delta(src);
        for (const auto& m : shifts) {
          MultiPoly row = base.times_monomial(m, 1);
          for (int which = 0; which < 2; ++which)
            impl_->builders[size_t(which)].add_row(
                impl_->to_row(row, impl_->primes[which]));
          if (!alt_builder.full() && is_orbit_representative(m, n)) {
            AltVector proj = alt_project(row, n);
            if (!proj.is_zero()) {
              SparseRowModP sparse;
              for (const auto& [dg, coeff] : proj.terms()) {
                auto it = std::lower_bound(alt_basis.begin(), alt_basis.end(),
                                           dg);
                uint64_t r = residue_of(coeff, prime_a);
                if (r != 0)
                  sparse.emplace_back(uint32_t(it - alt_basis.begin()), r);
              }
              alt_builder.add_row(sparse);
            }
          }
        }
      }
    }
  }
  impl_->alt_rank = alt_builder.rank();
}

MonomialMembershipOracle::~MonomialMembershipOracle() = default;
MonomialMembershipOracle::MonomialMembershipOracle(
    MonomialMembershipOracle&&) noexcept = default;

bool MonomialMembershipOracle::contains(const MultiPoly& f) const {
  if (f.n() != n_) throw Error("variable count mismatch");
  if (f.is_zero()) return true;
  auto bideg = f.bidegree();
  if (!bideg || !(bideg->first == d1_ && bideg->second == d2_))
    throw BidegreeMismatch("membership input must be bihomogeneous of the "
                           "stated bidegree");
  int verdicts = 0;
  for (int which = 0; which < 2; ++which) {
    if (impl_->builders[size_t(which)]
            .reduce(impl_->to_row(f, impl_->primes[which]))
            .empty())
      ++verdicts;
  }
  if (verdicts == 1)
    throw BackendFailure("full-monomial membership verdicts disagree "
                         "between the two moduli");
  return verdicts == 2;
}

uint32_t MonomialMembershipOracle::alternating_rank() const {
  return impl_->alt_rank;
}

namespace {

bool membership_full_monomial(const MultiPoly& f, int n, int d1, int d2,
                              uint64_t prime_a, uint64_t prime_b) {
  MonomialMembershipOracle oracle(n, d1, d2, prime_a, prime_b);
  return oracle.contains(f);
}

bool membership_alternating(const MultiPoly& f, int n, int d1, int d2,
                            uint64_t prime_a, uint64_t prime_b) {
  if (!is_alternating(f))
    throw PreconditionViolation(
        "alternating membership path needs an alternating input");
  AltVector target = alt_project(f, n);
  const auto& basis = diagram_basis(n, d1, d2);
  auto to_row = [&](const AltVector& v, uint64_t prime) {
    SparseRowModP row;
    for (const auto& [dg, c] : v.terms()) {
      auto it = std::lower_bound(basis.begin(), basis.end(), dg);
      uint64_t r = residue_of(c, prime);
      if (r != 0)
        row.emplace_back(uint32_t(it - basis.begin()), r);
    }
    return row;
  };
  int verdicts = 0;
  for (uint64_t prime : {prime_a, prime_b}) {
    RrefBuilderModP builder(prime, uint32_t(basis.size()));
    for (int c = 0; c <= d1 && !builder.full(); ++c) {
      for (int e = 0; e <= d2 && !builder.full(); ++e) {
        if (c + e < 1) continue;
        if (d1 - c + d2 - e < min_total_degree(n)) continue;
        const auto& sources = diagram_basis(n, d1 - c, d2 - e);
        if (sources.empty()) continue;
        auto shifts = monomials_of_bidegree(n, c, e);
        for (const Diagram& src : sources) {
          MultiPoly base = expand_delta(src);
          for (const auto& m : shifts) {
            if (!is_orbit_representative(m, n)) continue;
            AltVector row = alt_project(base.times_monomial(m, 1), n);
            if (!row.is_zero()) builder.add_row(to_row(row, prime));
            if (builder.full()) break;
          }
          if (builder.full()) break;
        }
      }
    }
    if (builder.reduce(to_row(target, prime)).empty()) ++verdicts;
  }
  if (verdicts == 1)
    throw BackendFailure("alternating membership verdicts disagree between "
                         "the two moduli");
  return verdicts == 2;
}

}  // namespace

bool membership_bruteforce(const MultiPoly& f, int n, int d1, int d2,
                           MembershipMode mode, uint64_t prime_a,
                           uint64_t prime_b) {
  if (f.n() != n) throw Error("variable count mismatch");
  auto bideg = f.bidegree();
  if (!bideg || (!f.is_zero() && !(bideg->first == d1 && bideg->second == d2)))
    throw BidegreeMismatch("membership input must be bihomogeneous of the "
                           "stated bidegree");
  if (f.is_zero()) return true;
  if (n > 5) throw SizeGuard("brute-force membership guarded at n <= 5");
  if (mode == MembershipMode::kAuto)
    mode = (n == 5 && is_alternating(f)) ? MembershipMode::kAlternating
                                         : MembershipMode::kFullMonomial;
  if (mode == MembershipMode::kFullMonomial)
    return membership_full_monomial(f, n, d1, d2, prime_a, prime_b);
  return membership_alternating(f, n, d1, d2, prime_a, prime_b);
}

}  // namespace qtcat
