#include "qtcat/graded_module.hpp"

#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>

namespace qtcat {

namespace {

constexpr uint32_t kCacheMagic = 0x4c535451u;  // "QTSL"
constexpr uint32_t kCacheVersion = 1;

template <typename T>
void put_le(std::string& out, T v) {
  for (size_t i = 0; i < sizeof(T); ++i)
    out.push_back(char((uint64_t(v) >> (8 * i)) & 0xff));
}

template <typename T>
bool get_le(const std::string& in, size_t& pos, T& v) {
  if (pos + sizeof(T) > in.size()) return false;
  uint64_t acc = 0;
  for (size_t i = 0; i < sizeof(T); ++i)
    acc |= uint64_t(uint8_t(in[pos + i])) << (8 * i);
  v = static_cast<T>(acc);
  pos += sizeof(T);
  return true;
}

uint32_t column_of(const std::vector<Diagram>& basis, const Diagram& d) {
  auto it = std::lower_bound(basis.begin(), basis.end(), d);
  if (it == basis.end() || !(*it == d))
    throw Error("diagram is not a basis column of its bidegree");
  return static_cast<uint32_t>(it - basis.begin());
}

}  // namespace

std::vector<std::pair<int, int>> pieri_shifts(int d1, int d2) {
  std::vector<std::pair<int, int>> out;
  for (int total = 1; total <= d1 + d2; ++total) {
    for (int c = std::max(0, total - d2); c <= std::min(total, d1); ++c) {
      out.emplace_back(c, total - c);
    }
  }
  return out;
}

std::string default_cache_dir() {
  if (const char* env = std::getenv("ALTGEN_CACHE_DIR")) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"))
    return std::string(xdg) + "/qtcat";
  if (const char* home = std::getenv("HOME"))
    return std::string(home) + "/.cache/qtcat";
  return ".qtcat-cache";
}

ModuleCalculator::ModuleCalculator(Options opts) : opts_(std::move(opts)) {
  if (!is_prime_u64(opts_.prime_a) || !is_prime_u64(opts_.prime_b))
    throw Error("backend moduli must be prime");
  if (opts_.prime_a == opts_.prime_b)
    throw Error("backend needs two distinct primes");
  if (opts_.disk_cache && opts_.cache_dir.empty())
    opts_.cache_dir = default_cache_dir();
}

SparseRowModP ModuleCalculator::to_sparse(const AltVector& v, uint64_t prime) {
  const auto& basis = diagram_basis(v.n(), v.d1(), v.d2());
  SparseRowModP row;
  row.reserve(v.term_count());
  for (const auto& [d, c] : v.terms()) {
    uint64_t r = residue_of(c, prime);
    if (r != 0) row.emplace_back(column_of(basis, d), r);
  }
  // map iteration is already in column (lexicographic diagram) order
  return row;
}

std::shared_ptr<const SubspaceBasis> ModuleCalculator::compute_subspace(
    int n, int d1, int d2, uint64_t prime) const {
  const auto& basis = diagram_basis(n, d1, d2);
  auto out = std::make_shared<SubspaceBasis>();
  out->n = n;
  out->d1 = d1;
  out->d2 = d2;
  out->prime = prime;
  out->dim = static_cast<uint32_t>(basis.size());
  RrefBuilderModP builder(prime, out->dim);
  if (out->dim > 0) {
    for (auto [c, e] : pieri_shifts(d1, d2)) {
      if (builder.full()) break;
      if (d1 - c + d2 - e < min_total_degree(n)) continue;
      for (const Diagram& src : diagram_basis(n, d1 - c, d2 - e)) {
        AltVector row = pieri_multiply(c, e, AltVector::delta(src));
        if (row.is_zero()) continue;
        builder.add_row(to_sparse(row, prime));
        if (builder.full()) break;
      }
    }
    builder.finalize();
  }
  out->rows = builder.rows();
  out->pivot_of_col = builder.pivot_of_col();
  return out;
}

std::string ModuleCalculator::cache_path(int n, int d1, int d2,
                                         uint64_t prime) const {
  char name[128];
  std::snprintf(name, sizeof(name), "slice_v%u_n%d_%d_%d_p%llu.bin",
                kCacheVersion, n, d1, d2, (unsigned long long)prime);
  return opts_.cache_dir + "/" + name;
}

std::shared_ptr<const SubspaceBasis> ModuleCalculator::load_cached(
    int n, int d1, int d2, uint64_t prime) const {
  std::ifstream in(cache_path(n, d1, d2, prime), std::ios::binary);
  if (!in) return nullptr;
  std::string blob((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  size_t pos = 0;
  uint32_t magic = 0, version = 0, fn = 0, fd1 = 0, fd2 = 0;
  uint64_t fprime = 0, ncols = 0, nrows = 0;
  if (!get_le(blob, pos, magic) || magic != kCacheMagic) return nullptr;
  if (!get_le(blob, pos, version) || version != kCacheVersion) return nullptr;
  if (!get_le(blob, pos, fn) || !get_le(blob, pos, fd1) ||
      !get_le(blob, pos, fd2) || !get_le(blob, pos, fprime))
    return nullptr;
  if (int(fn) != n || int(fd1) != d1 || int(fd2) != d2 || fprime != prime)
    return nullptr;
  if (!get_le(blob, pos, ncols) || !get_le(blob, pos, nrows)) return nullptr;
  auto out = std::make_shared<SubspaceBasis>();
  out->n = n;
  out->d1 = d1;
  out->d2 = d2;
  out->prime = prime;
  out->dim = static_cast<uint32_t>(ncols);
  if (out->dim != diagram_basis(n, d1, d2).size()) return nullptr;
  std::vector<SparseRowModP> rows;
  rows.reserve(size_t(nrows));
  for (uint64_t r = 0; r < nrows; ++r) {
    uint64_t nnz = 0;
    if (!get_le(blob, pos, nnz)) return nullptr;
    SparseRowModP row;
    row.reserve(size_t(nnz));
    for (uint64_t i = 0; i < nnz; ++i) {
      uint32_t col = 0;
      uint64_t val = 0;
      if (!get_le(blob, pos, col) || !get_le(blob, pos, val)) return nullptr;
      if (col >= ncols || val == 0 || val >= prime) return nullptr;
      row.emplace_back(col, val);
    }
    rows.push_back(std::move(row));
  }
  try {
    out->pivot_of_col = pivot_map_of_rows(rows, out->dim, prime);
  } catch (const Error&) {
    return nullptr;
  }
  out->rows = std::move(rows);
  return out;
}

void ModuleCalculator::store_cached(const SubspaceBasis& basis) const {
  std::error_code ec;
  std::filesystem::create_directories(opts_.cache_dir, ec);
  std::string blob;
  put_le(blob, kCacheMagic);
  put_le(blob, kCacheVersion);
  put_le(blob, uint32_t(basis.n));
  put_le(blob, uint32_t(basis.d1));
  put_le(blob, uint32_t(basis.d2));
  put_le(blob, uint64_t(basis.prime));
  put_le(blob, uint64_t(basis.dim));
  put_le(blob, uint64_t(basis.rows.size()));
  for (const auto& row : basis.rows) {
    put_le(blob, uint64_t(row.size()));
    for (const auto& [c, v] : row) {
      put_le(blob, c);
      put_le(blob, v);
    }
  }
  // write-to-temporary then atomic rename so concurrent writers are safe
  std::string final_path = cache_path(basis.n, basis.d1, basis.d2, basis.prime);
  std::string tmp_path =
      final_path + ".tmp." + std::to_string(uint64_t(::getpid()));
  {
    std::ofstream outf(tmp_path, std::ios::binary | std::ios::trunc);
    if (!outf) return;
    outf.write(blob.data(), std::streamsize(blob.size()));
    if (!outf) {
      outf.close();
      std::filesystem::remove(tmp_path, ec);
      return;
    }
  }
  std::filesystem::rename(tmp_path, final_path, ec);
  if (ec) std::filesystem::remove(tmp_path, ec);
}

std::shared_ptr<const SubspaceBasis> ModuleCalculator::relation_subspace(
    int n, int d1, int d2, uint64_t prime) {
  auto key = std::make_tuple(n, d1, d2, prime);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  std::shared_ptr<const SubspaceBasis> result;
  if (opts_.disk_cache) result = load_cached(n, d1, d2, prime);
  bool fresh = false;
  if (!result) {
    result = compute_subspace(n, d1, d2, prime);
    fresh = true;
  }
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;  // another thread won the race
    memo_.emplace(key, result);
  }
  if (fresh && opts_.disk_cache) store_cached(*result);
  return result;
}

std::pair<uint64_t, uint64_t> ModuleCalculator::fresh_primes(int attempt) {
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull + uint64_t(attempt) * 0x100000001b3ull);
  uint64_t a = random_prime_62(rng);
  uint64_t b = a;
  while (b == a) b = random_prime_62(rng);
  return {a, b};
}

ModuleSlice ModuleCalculator::dim_m(int n, int d1, int d2) {
  uint64_t pa = opts_.prime_a, pb = opts_.prime_b;
  for (int attempt = 0; attempt < 3; ++attempt) {
    auto a = relation_subspace(n, d1, d2, pa);
    auto b = relation_subspace(n, d1, d2, pb);
    if (a->rank() == b->rank()) {
      ModuleSlice s;
      s.n = n;
      s.d1 = d1;
      s.d2 = d2;
      s.dim_a = static_cast<long long>(a->dim);
      s.rank_r = a->rank();
      s.dim_m = s.dim_a - s.rank_r;
      s.prime_a = pa;
      s.prime_b = pb;
      if (opts_.exact_verify && a->dim <= opts_.exact_dim_limit) {
        if (exact_rank(n, d1, d2) != s.rank_r)
          throw BackendFailure("exact elimination disagrees with the modular "
                               "rank; both primes unlucky?");
        s.exact_checked = true;
      }
      return s;
    }
    // unlucky prime: retry the slice under a fresh pair
    std::tie(pa, pb) = fresh_primes(attempt);
  }
  throw BackendFailure("relation ranks keep disagreeing at n=" +
                       std::to_string(n) + " (" + std::to_string(d1) + "," +
                       std::to_string(d2) + ") after prime retries");
}

SparseRowModP ModuleCalculator::image_coords(const AltVector& v,
                                             uint64_t prime) {
  auto basis = relation_subspace(v.n(), v.d1(), v.d2(), prime);
  RrefBuilderModP builder(prime, basis->dim);
  builder.attach_base(&basis->rows, &basis->pivot_of_col);
  return builder.reduce(to_sparse(v, prime));
}

bool ModuleCalculator::image_is_zero(const AltVector& v) {
  if (v.is_zero()) return true;
  uint64_t pa = opts_.prime_a, pb = opts_.prime_b;
  for (int attempt = 0; attempt < 3; ++attempt) {
    bool za = image_coords(v, pa).empty();
    bool zb = image_coords(v, pb).empty();
    if (za == zb) return za;
    std::tie(pa, pb) = fresh_primes(attempt);
  }
  throw BackendFailure("membership verdicts keep disagreeing between "
                       "moduli after prime retries");
}

int ModuleCalculator::span_rank_in_m(std::span<const AltVector> vs, int n,
                                     int d1, int d2) {
  for (const AltVector& v : vs) {
    if (v.n() != n || v.d1() != d1 || v.d2() != d2)
      throw BidegreeMismatch("span_rank_in_m: vector of bidegree (" +
                             std::to_string(v.d1()) + "," +
                             std::to_string(v.d2()) + ") in slice (" +
                             std::to_string(d1) + "," + std::to_string(d2) +
                             ")");
  }
  int ranks[2];
  int which = 0;
  for (uint64_t prime : {opts_.prime_a, opts_.prime_b}) {
    auto basis = relation_subspace(n, d1, d2, prime);
    RrefBuilderModP builder(prime, basis->dim);
    builder.attach_base(&basis->rows, &basis->pivot_of_col);
    for (const AltVector& v : vs) builder.add_row(to_sparse(v, prime));
    ranks[which++] = int(builder.rank());
  }
  if (ranks[0] != ranks[1])
    throw BackendFailure("span ranks disagree between the two moduli");
  return ranks[0];
}

long long ModuleCalculator::exact_rank(int n, int d1, int d2) {
  const auto& basis = diagram_basis(n, d1, d2);
  if (basis.size() > opts_.exact_dim_limit)
    throw SizeGuard("exact elimination limited to dim <= " +
                    std::to_string(opts_.exact_dim_limit));
  RrefBuilderExact builder(static_cast<uint32_t>(basis.size()));
  if (!basis.empty()) {
    for (auto [c, e] : pieri_shifts(d1, d2)) {
      if (builder.full()) break;
      if (d1 - c + d2 - e < min_total_degree(n)) continue;
      for (const Diagram& src : diagram_basis(n, d1 - c, d2 - e)) {
        AltVector row = pieri_multiply(c, e, AltVector::delta(src));
        if (row.is_zero()) continue;
        SparseRowExact sparse;
        sparse.reserve(row.term_count());
        for (const auto& [d, coeff] : row.terms())
          sparse.emplace_back(column_of(basis, d), coeff);
        builder.add_row(sparse);
        if (builder.full()) break;
      }
    }
  }
  return builder.rank();
}

}  // namespace qtcat
