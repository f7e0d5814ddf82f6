#include "qtcat/lemma_engine.hpp"

#include <algorithm>
#include <random>

namespace qtcat {

namespace {

void require(bool ok, const std::string& clause) {
  if (!ok) throw PreconditionViolation("hypothesis failed: " + clause);
}

int degree_at(const std::vector<Point>& pts, int idx1) {
  // s_{n+1} = n by convention
  const int n = static_cast<int>(pts.size());
  if (idx1 == n + 1) return n;
  return pts[size_t(idx1 - 1)].degree();
}

void check_same_bidegree(const AltVector& a, int d1, int d2,
                         const std::string& what) {
  if (a.d1() != d1 || a.d2() != d2)
    throw Error(what + " changed the bidegree; relation is malformed");
}

std::pair<int, int> bidegree_of(const std::vector<Point>& pts) {
  int d1 = 0, d2 = 0;
  for (const Point& p : pts) {
    d1 += p.x;
    d2 += p.y;
  }
  return {d1, d2};
}

}  // namespace

bool EquivalenceVerifier::verify(
    const AltVector& v, const std::optional<PartitionType>& lower_types_than) {
  if (v.is_zero()) return true;
  if (!lower_types_than) return calc_.image_is_zero(v);
  int agree = 0;
  const auto& opts = calc_.options();
  for (uint64_t prime : {opts.prime_a, opts.prime_b}) {
    auto aug = augmented(v.n(), v.d1(), v.d2(), *lower_types_than, prime);
    RrefBuilderModP builder(prime, uint32_t(aug->pivot_of_col.size()));
    builder.attach_base(&aug->rows, &aug->pivot_of_col);
    if (builder.reduce(ModuleCalculator::to_sparse(v, prime)).empty()) ++agree;
  }
  if (agree == 1)
    throw BackendFailure("augmented membership verdicts disagree between "
                         "the two moduli");
  return agree == 2;
}

std::shared_ptr<const EquivalenceVerifier::AugmentedBasis>
EquivalenceVerifier::augmented(int n, int d1, int d2,
                               const PartitionType& type, uint64_t prime) {
  auto key = std::make_tuple(n, d1, d2, type.parts, prime);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  auto base = calc_.relation_subspace(n, d1, d2, prime);
  RrefBuilderModP builder(prime, base->dim);
  builder.attach_base(&base->rows, &base->pivot_of_col);
  for (const Diagram& e : diagram_basis(n, d1, d2)) {
    if (!e.sub_staircase()) continue;
    if (!partition_lt(partition_type(e), type)) continue;
    builder.add_row(
        ModuleCalculator::to_sparse(AltVector::delta(e), prime));
  }
  auto out = std::make_shared<AugmentedBasis>();
  out->rows = base->rows;
  out->rows.insert(out->rows.end(), builder.rows().begin(),
                   builder.rows().end());
  out->pivot_of_col = base->pivot_of_col;
  for (uint32_t c = 0; c < base->dim; ++c) {
    if (builder.pivot_of_col()[c] >= 0)
      out->pivot_of_col[c] = int32_t(base->rows.size()) +
                             builder.pivot_of_col()[c];
  }
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, fresh] = memo_.emplace(key, std::move(out));
  (void)fresh;
  return it->second;
}

bool verify_equivalence(const AltVector& v,
                        const std::optional<PartitionType>& lower_types_than,
                        ModuleCalculator& calc) {
  EquivalenceVerifier verifier(calc);
  return verifier.verify(v, lower_types_than);
}

MoveOutcome transfactor_move(const Diagram& d, int i, int j,
                             EquivalenceVerifier& verifier) {
  const auto& pts = d.points();
  const int n = d.n();
  require(i >= 1 && i <= n && j >= 1 && j <= n, "1 <= i, j <= n");
  require(i != j, "i != j");
  require(degree_at(pts, i) == i - 1, "s_i = i-1");
  require(degree_at(pts, i + 1) == i, "s_{i+1} = i");
  require(degree_at(pts, j) == j - 1, "s_j = j-1");
  require(degree_at(pts, j + 1) == j, "s_{j+1} = j");
  require(pts[size_t(i - 1)].y > 0, "beta_i > 0");
  require(pts[size_t(j - 1)].x > 0, "alpha_j > 0");

  std::vector<Point> moved = pts;
  moved[size_t(i - 1)].x += 1;
  moved[size_t(i - 1)].y -= 1;
  moved[size_t(j - 1)].x -= 1;
  moved[size_t(j - 1)].y += 1;

  MoveOutcome out;
  out.move = "transfactor";
  out.input_points = pts;
  out.params = {{"i", i}, {"j", j}};
  out.produced = {moved};
  out.relation = AltVector::delta(d) - AltVector::delta_of_points(moved);
  check_same_bidegree(out.relation, d.d1(), d.d2(), "transfactor move");
  out.verdict = verifier.verify(out.relation, std::nullopt);
  out.modulus = "relation subspace at the bidegree";
  return out;
}

MoveOutcome permute_blocks_move(const Diagram& d, int h, int l, int m,
                                EquivalenceVerifier& verifier) {
  const auto& pts = d.points();
  const int n = d.n();
  require(h >= 2, "h >= 2");
  require(l >= 1 && m >= 1, "l, m >= 1");
  require(h + l + m <= n + 1, "h + l + m <= n+1");
  require(degree_at(pts, h) == h - 1, "s_h = h-1");
  require(degree_at(pts, h + l) == h + l - 1, "s_{h+l} = h+l-1");
  require(degree_at(pts, h + l + m) == h + l + m - 1,
          "s_{h+l+m} = h+l+m-1");
  for (int v = h + l; v <= h + l + m - 1; ++v)
    require(pts[size_t(v - 1)].x >= l, "alpha_v >= l for the moved block");

  std::vector<Point> moved;
  moved.reserve(size_t(n));
  for (int idx = 1; idx <= h - 1; ++idx) moved.push_back(pts[size_t(idx - 1)]);
  for (int idx = h + l; idx <= h + l + m - 1; ++idx) {
    Point p = pts[size_t(idx - 1)];
    p.x -= l;
    moved.push_back(p);
  }
  for (int idx = h; idx <= h + l - 1; ++idx) {
    Point p = pts[size_t(idx - 1)];
    p.x += m;
    moved.push_back(p);
  }
  for (int idx = h + l + m; idx <= n; ++idx) moved.push_back(pts[size_t(idx - 1)]);

  MoveOutcome out;
  out.move = "permute";
  out.input_points = pts;
  out.params = {{"h", h}, {"l", l}, {"m", m}};
  out.produced = {moved};
  out.relation = AltVector::delta(d) - AltVector::delta_of_points(moved);
  check_same_bidegree(out.relation, d.d1(), d.d2(), "block permuting move");
  out.verdict = verifier.verify(out.relation, std::nullopt);
  out.modulus = "relation subspace at the bidegree";
  return out;
}

MoveOutcome powerful_relation_raw(const std::vector<Point>& points, int t,
                                  EquivalenceVerifier& verifier) {
  const int n = static_cast<int>(points.size());
  require(n >= 1, "n >= 1");
  std::vector<int> s;
  s.reserve(size_t(n));
  for (const Point& p : points) s.push_back(p.degree());
  for (int idx = 0; idx + 1 < n; ++idx)
    require(s[size_t(idx)] <= s[size_t(idx + 1)],
            "degrees weakly increasing");
  for (int idx = 1; idx <= n; ++idx)
    require(s[size_t(idx - 1)] <= idx - 1, "s_j <= j-1 (staircase pattern)");

  BlockStructure blocks = block_structure_of_degrees(s);
  const int t0 = blocks.sizes.back();
  const int jr = blocks.deficits.back();
  require(jr + 3 <= n, "j_r + 3 <= n");
  for (int idx = 1; idx <= jr + 3; ++idx)
    require(s[size_t(idx - 1)] == idx - 1,
            "s_i = i-1 for i <= j_r+3 (first j_r+2 blocks have size 1)");
  require(points[1] == Point{1, 0}, "P_2 = (1,0)");
  require(t >= 1 && t <= t0, "1 <= t <= t0");
  const int b = n - t + 1;  // 1-based index of the point moved in both lists
  require(points[size_t(b - 1)].x >= 1, "alpha_{n-t+1} >= 1");
  require(points[size_t(b - 1)].y >= 1, "beta_{n-t+1} >= 1");
  require(points[size_t(jr + 1)].y >= 1,
          "beta_{j_r+2} >= 1 (northwest move stays in the grid)");
  require(jr + 2 < b, "j_r + 2 < n-t+1");

  std::vector<Point> nw = points;
  nw[size_t(jr + 1)].x += 1;
  nw[size_t(jr + 1)].y -= 1;
  nw[size_t(b - 1)].x -= 1;
  nw[size_t(b - 1)].y += 1;

  std::vector<Point> se = points;
  se[1] = Point{0, 1};
  se[size_t(b - 1)].x += 1;
  se[size_t(b - 1)].y -= 1;

  auto [d1, d2] = bidegree_of(points);
  MoveOutcome out;
  out.move = "powerful";
  out.input_points = points;
  out.params = {{"t", t}, {"t0", t0}, {"jr", jr}};
  out.produced = {nw, se};
  out.relation = scale(Rational(2), AltVector::delta_of_points(points)) -
                 AltVector::delta_of_points(nw) -
                 AltVector::delta_of_points(se);
  check_same_bidegree(out.relation, d1, d2, "powerful relation");
  PartitionType type = partition_type_of_degrees(s);
  out.verdict = verifier.verify(out.relation, type);
  out.modulus = "relation subspace + staircase images of types below " +
                type.to_string();

  // one-sided claim: last block not minimal, or the moved point's degree
  // exceeds n - t0
  bool last_not_minimal = false;
  int last_start = blocks.starts.back();
  for (int idx = last_start; idx <= n; ++idx)
    if (s[size_t(idx - 1)] < idx - 2) last_not_minimal = true;
  if (last_not_minimal || s[size_t(b - 1)] > n - t0) {
    AltVector one_sided = AltVector::delta_of_points(points) -
                          AltVector::delta_of_points(se);
    out.strengthened = verifier.verify(one_sided, type);
  }
  return out;
}

MoveOutcome powerful_relation(const Diagram& d, int t,
                              EquivalenceVerifier& verifier) {
  return powerful_relation_raw(d.points(), t, verifier);
}

std::vector<std::pair<int, int>> legal_transfactor_params(const Diagram& d) {
  std::vector<std::pair<int, int>> out;
  const auto& pts = d.points();
  const int n = d.n();
  for (int i = 1; i <= n; ++i) {
    if (degree_at(pts, i) != i - 1 || degree_at(pts, i + 1) != i) continue;
    if (pts[size_t(i - 1)].y <= 0) continue;
    for (int j = 1; j <= n; ++j) {
      if (j == i) continue;
      if (degree_at(pts, j) != j - 1 || degree_at(pts, j + 1) != j) continue;
      if (pts[size_t(j - 1)].x <= 0) continue;
      out.emplace_back(i, j);
    }
  }
  return out;
}

std::vector<std::array<int, 3>> legal_permute_params(const Diagram& d) {
  std::vector<std::array<int, 3>> out;
  const auto& pts = d.points();
  const int n = d.n();
  for (int h = 2; h <= n; ++h) {
    if (degree_at(pts, h) != h - 1) continue;
    for (int l = 1; h + l <= n; ++l) {
      if (degree_at(pts, h + l) != h + l - 1) continue;
      for (int m = 1; h + l + m <= n + 1; ++m) {
        if (degree_at(pts, h + l + m) != h + l + m - 1) continue;
        bool ok = true;
        for (int v = h + l; v <= h + l + m - 1; ++v)
          if (pts[size_t(v - 1)].x < l) ok = false;
        if (ok) out.push_back({h, l, m});
      }
    }
  }
  return out;
}

std::vector<int> legal_powerful_params(const Diagram& d) {
  std::vector<int> out;
  const auto& pts = d.points();
  const int n = d.n();
  if (!d.sub_staircase()) return out;
  auto s = d.degrees();
  BlockStructure blocks = block_structure_of_degrees(s);
  const int t0 = blocks.sizes.back();
  const int jr = blocks.deficits.back();
  if (jr + 3 > n) return out;
  for (int idx = 1; idx <= jr + 3; ++idx)
    if (s[size_t(idx - 1)] != idx - 1) return out;
  if (!(pts[1] == Point{1, 0})) return out;
  if (pts[size_t(jr + 1)].y < 1) return out;
  for (int t = 1; t <= t0; ++t) {
    int b = n - t + 1;
    if (jr + 2 >= b) continue;
    if (pts[size_t(b - 1)].x >= 1 && pts[size_t(b - 1)].y >= 1)
      out.push_back(t);
  }
  return out;
}

std::vector<Diagram> all_sub_staircase_diagrams(int n, int max_deficit) {
  std::vector<Diagram> out;
  const int total = n * (n - 1) / 2;
  int lo_deficit = 0;
  int hi_deficit = max_deficit < 0 ? total - min_total_degree(n) : max_deficit;
  for (int k = lo_deficit; k <= hi_deficit; ++k) {
    int d = total - k;
    if (d < 0) break;
    for (int d1 = 0; d1 <= d; ++d1) {
      auto part = enumerate_diagrams(n, d1, d - d1, true);
      out.insert(out.end(), part.begin(), part.end());
    }
  }
  return out;
}

RelationScanReport scan_relation(const std::string& relation, int n,
                                 EquivalenceVerifier& verifier, int samples,
                                 uint64_t seed, int max_deficit) {
  RelationScanReport report;
  report.relation = relation;
  report.n = n;
  report.exhaustive = samples < 0;
  report.seed = seed;

  struct Instance {
    Diagram d;
    std::array<int, 3> params;  // unused slots zero
  };
  std::vector<Instance> instances;
  for (const Diagram& d : all_sub_staircase_diagrams(n, max_deficit)) {
    if (relation == "transfactor") {
      for (auto [i, j] : legal_transfactor_params(d))
        instances.push_back({d, {i, j, 0}});
    } else if (relation == "permute") {
      for (auto [h, l, m] : legal_permute_params(d))
        instances.push_back({d, {h, l, m}});
    } else if (relation == "powerful") {
      for (int t : legal_powerful_params(d)) instances.push_back({d, {t, 0, 0}});
    } else {
      throw Error("unknown relation: " + relation);
    }
  }
  if (!report.exhaustive && instances.size() > size_t(samples)) {
    std::mt19937_64 rng(seed);
    std::shuffle(instances.begin(), instances.end(), rng);
    instances.resize(size_t(samples));
  }
  for (const Instance& inst : instances) {
    MoveOutcome outcome;
    if (relation == "transfactor") {
      outcome = transfactor_move(inst.d, inst.params[0], inst.params[1],
                                 verifier);
    } else if (relation == "permute") {
      outcome = permute_blocks_move(inst.d, inst.params[0], inst.params[1],
                                    inst.params[2], verifier);
    } else {
      outcome = powerful_relation(inst.d, inst.params[0], verifier);
    }
    ++report.instances;
    bool ok = outcome.verdict &&
              (!outcome.strengthened || *outcome.strengthened);
    if (ok) {
      ++report.verified;
    } else {
      if (report.failures.size() < 32) report.failures.push_back(outcome);
    }
  }
  return report;
}

}  // namespace qtcat
