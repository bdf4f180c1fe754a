#include "poslim/vector_space.hpp"

#include "poslim/enum_oracle.hpp"

#include <algorithm>
#include <bitset>

namespace poslim {

std::string to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::Eta: return "eta";
    case FamilyKind::Lambda: return "lambda";
    case FamilyKind::Nu: return "nu";
    case FamilyKind::Theta: return "theta";
    case FamilyKind::Bhs: return "bhs";
  }
  return "?";
}

namespace {

Strategy pattern_at(int n, const std::vector<std::pair<int, std::int64_t>>& cells) {
  IntVector u = IntVector::Zero(n);
  for (auto [i, v] : cells) u[i] = v;
  return Strategy(std::move(u));
}

}  // namespace

OrthFamily gen_family(FamilyKind kind, int n) {
  OrthFamily f{kind, n, {}};
  switch (kind) {
    case FamilyKind::Eta:
      if (n < 2) throw ValidationError("eta family needs n >= 2");
      for (int e = 0; e <= (n - 2) / 2; ++e) f.members.push_back(pattern_at(n, {{e, 1}, {n - 1 - e, -1}}));
      break;
    case FamilyKind::Lambda:
      if (n < 4) throw ValidationError("lambda family needs n >= 4");
      for (int l = 0; l < n / 4; ++l) {
        const int a = 2 * l, b = n - 2 - 2 * l;
        f.members.push_back(pattern_at(n, {{a, 1}, {a + 1, -1}, {b, -1}, {b + 1, 1}}));
      }
      break;
    case FamilyKind::Nu:
      if (n < 6) throw ValidationError("nu family needs n >= 6");
      for (int v = 0; v <= (n - 6) / 6; ++v) {
        const int a = 3 * v, b = n - 3 - 3 * v;
        f.members.push_back(pattern_at(n, {{a, 1}, {a + 1, -2}, {a + 2, 1}, {b, 1}, {b + 1, -2}, {b + 2, 1}}));
      }
      break;
    case FamilyKind::Theta: {
      if (n < 3 || n % 2 == 0) throw ValidationError("theta vector needs an odd n >= 3");
      const int c = (n - 1) / 2;
      f.members.push_back(pattern_at(n, {{c - 1, 1}, {c, -2}, {c + 1, 1}}));
      break;
    }
    case FamilyKind::Bhs:
      return gen_bhs_basis(n);
  }
  return f;
}

OrthFamily gen_bhs_basis(int n) {
  if (n < 2) throw ValidationError("buy-hold-sell basis needs n >= 2");
  OrthFamily f{FamilyKind::Bhs, n, {}};
  for (int i = 0; i < n - 1; ++i) f.members.push_back(pattern_at(n, {{i, 1}, {n - 1, -1}}));
  return f;
}

IntMatrix as_matrix(const std::vector<Strategy>& strategies) {
  if (strategies.empty()) return IntMatrix(0, 0);
  IntMatrix m(strategies.front().size(), Eigen::Index(strategies.size()));
  for (std::size_t j = 0; j < strategies.size(); ++j) {
    if (strategies[j].size() != m.rows()) throw StructuralError("strategies have different lengths");
    m.col(Eigen::Index(j)) = strategies[j].actions();
  }
  return m;
}

bool ExactSpan::insert(const IntVector& v) {
  if (v.size() != dim_) throw StructuralError("vector dimension differs from the span");
  Eigen::Matrix<Rational, Eigen::Dynamic, 1> r = v.cast<Rational>();
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const auto p = pivots_[k];
    if (r[p] != 0) r -= r[p] * rows_[k];
  }
  Eigen::Index p = 0;
  while (p < dim_ && r[p] == 0) ++p;
  if (p == dim_) return false;
  r /= r[p];
  // Keep the basis fully reduced so later pivots do not disturb earlier rows.
  for (std::size_t k = 0; k < rows_.size(); ++k)
    if (rows_[k][p] != 0) rows_[k] -= rows_[k][p] * r;
  rows_.push_back(std::move(r));
  pivots_.push_back(p);
  return true;
}

RankReport rank_report(int n, int limit, std::uint64_t budget) {
  RankReport rep;
  rep.bhs_rank = int(exact_rank(as_matrix(gen_bhs_basis(n).members)));
  const UniverseParams p(limit, n);
  if (p.size() <= budget) {
    ExactSpan span(n);
    for (UniverseIterator it(p); !it.done(); it.next()) {
      if (it.actions().sum() != 0) rep.flat_orthogonal = false;
      if (span.rank() < n) span.insert(it.actions());
    }
    rep.swept = true;
    rep.rank = int(span.rank());
  } else {
    // Every member has zero net action, so the all-ones vector is orthogonal
    // to the span and the rank cannot exceed n-1.
    rep.rank = rep.bhs_rank;
  }
  return rep;
}

int rank_of_universe(int n, int limit) { return rank_report(n, limit).rank; }

namespace {

constexpr std::size_t kMaxVertices = 4096;
using Bits = std::bitset<kMaxVertices>;

struct CliqueSearch {
  std::vector<Bits> adjacent;
  std::vector<int> current, best;
  std::uint64_t nodes = 0;
  std::uint64_t budget = 0;

  void expand(Bits candidates) {
    if (++nodes > budget) throw BudgetExceeded(nodes, budget);
    if (candidates.none()) {
      if (current.size() > best.size()) best = current;
      return;
    }
    for (std::size_t v = candidates._Find_first(); v < kMaxVertices; v = candidates._Find_next(v)) {
      if (current.size() + candidates.count() <= best.size()) return;
      current.push_back(int(v));
      expand(candidates & adjacent[v]);
      current.pop_back();
      candidates.reset(v);
    }
    if (current.size() > best.size()) best = current;
  }
};

}  // namespace

OrthogonalSubset max_orthogonal_subset(int n, std::uint64_t budget) {
  const UniverseParams p(1, n);
  std::vector<IntVector> vertices;
  for (UniverseIterator it(p); !it.done(); it.next()) {
    const auto& u = it.actions();
    Eigen::Index first = 0;
    while (first < u.size() && u[first] == 0) ++first;
    if (first < u.size() && u[first] > 0) vertices.push_back(u);
  }
  if (vertices.size() > kMaxVertices) throw BudgetExceeded(vertices.size(), kMaxVertices);
  CliqueSearch s;
  s.budget = budget;
  s.adjacent.assign(vertices.size(), Bits{});
  for (std::size_t a = 0; a < vertices.size(); ++a)
    for (std::size_t b = a + 1; b < vertices.size(); ++b)
      if (vertices[a].dot(vertices[b]) == 0) {
        s.adjacent[a].set(b);
        s.adjacent[b].set(a);
      }
  Bits all;
  for (std::size_t v = 0; v < vertices.size(); ++v) all.set(v);
  s.expand(all);
  OrthogonalSubset out;
  out.size = int(s.best.size());
  out.nodes = s.nodes;
  for (int v : s.best) out.witness.emplace_back(vertices[std::size_t(v)]);
  return out;
}

IntMatrix rotation_matrix(int n) {
  if (n < 2) throw ValidationError("rotation needs n >= 2");
  IntMatrix r = IntMatrix::Zero(n, n);
  r(0, n - 1) = 1;
  for (int i = 1; i < n; ++i) r(i, i - 1) = 1;
  return r;
}

IntMatrix cycle_laplacian(int n) {
  const IntMatrix r = rotation_matrix(n);
  return 2 * IntMatrix::Identity(n, n) - r - r.transpose();
}

}  // namespace poslim
