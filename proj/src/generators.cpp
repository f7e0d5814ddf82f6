#include "qtcat/generators.hpp"

#include <atomic>
#include <map>
#include <set>
#include <thread>

namespace qtcat {

Diagram d_of_lambda(const StaircaseLambda& lambda) {
  const int n = lambda.n();
  std::vector<Point> pts(static_cast<size_t>(n));
  for (int i = 1; i <= n; ++i) {
    int a = n - i - lambda.parts[size_t(i - 1)];
    int b = 0;
    for (int j = i + 1; j <= n; ++j) {
      int v = lambda.parts[size_t(i - 1)] - lambda.parts[size_t(j - 1)] + i - j;
      if (v == 0 || v == 1) ++b;
    }
    pts[size_t(i - 1)] = Point{a, b};
  }
  auto canon = canonicalize(pts);
  if (!canon)
    throw DegenerateConjectureInstance(
        "two generator points coincide for lambda " + lambda.to_string());
  const Diagram& d = canon->diagram;
  if (d.d1() != stat_a(lambda) || d.d2() != stat_b(lambda))
    throw Error("generator bidegree must equal the path statistics");
  return d;
}

Conjecture41Report conjecture_41_check(int n, ModuleCalculator& calc,
                                       int jobs) {
  Conjecture41Report report;
  report.n = n;

  std::map<std::pair<int, int>, std::vector<AltVector>> groups;
  std::set<Diagram> seen;
  for (const StaircaseLambda& l : enumerate_lambda(n)) {
    Diagram d = d_of_lambda(l);
    if (!seen.insert(d).second) report.injective = false;
    groups[{d.d1(), d.d2()}].push_back(AltVector::delta(d));
  }
  // every bidegree of the module is checked, including any the generator
  // set misses (those must then have dimension zero to pass)
  for (int d = 0; d <= n * (n - 1) / 2; ++d)
    for (int d1 = 0; d1 <= d; ++d1) groups.try_emplace({d1, d - d1});

  std::vector<std::pair<std::pair<int, int>, std::vector<AltVector>>> work(
      groups.begin(), groups.end());
  std::vector<Conjecture41Slice> slices(work.size());
  if (jobs <= 0) jobs = int(std::thread::hardware_concurrency());
  if (jobs < 1) jobs = 1;
  std::atomic<size_t> next{0};
  auto run = [&]() {
    while (true) {
      size_t idx = next.fetch_add(1);
      if (idx >= work.size()) break;
      const auto& [key, vectors] = work[idx];
      Conjecture41Slice s;
      s.d1 = key.first;
      s.d2 = key.second;
      s.count = int(vectors.size());
      s.dim_m = calc.dim_m(n, s.d1, s.d2).dim_m;
      s.rank = calc.span_rank_in_m(vectors, n, s.d1, s.d2);
      slices[idx] = s;
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < jobs; ++w) pool.emplace_back(run);
  run();
  for (auto& th : pool) th.join();

  report.pass = true;
  for (const auto& s : slices) {
    if (!s.full()) report.pass = false;
    if (s.count != s.dim_m) report.counts_match = false;
    if (s.count > 0 || s.dim_m > 0) report.slices.push_back(s);
  }
  return report;
}

}  // namespace qtcat
