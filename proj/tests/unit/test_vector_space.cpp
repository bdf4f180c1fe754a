#include "oracle.hpp"

#include "poslim/enum_oracle.hpp"
#include "poslim/vector_space.hpp"

#include <doctest.h>

#include <Eigen/LU>

#include <optional>

using namespace poslim;

namespace {

std::optional<OrthFamily> family(FamilyKind k, int n) {
  try {
    return gen_family(k, n);
  } catch (const ValidationError&) {
    return std::nullopt;
  }
}

/// nullopt when either family is undefined at n, else whether every cross dot product vanishes.
std::optional<bool> perpendicular(FamilyKind a, FamilyKind b, int n) {
  const auto fa = family(a, n), fb = family(b, n);
  if (!fa || !fb) return std::nullopt;
  for (const auto& x : fa->members)
    for (const auto& y : fb->members)
      if (x.actions().dot(y.actions()) != 0) return false;
  return true;
}

Eigen::Index float_rank(const IntMatrix& m) {
  return Eigen::FullPivLU<Eigen::MatrixXd>(m.cast<double>()).rank();
}

}  // namespace

TEST_CASE("family examples") {
  const auto eta5 = gen_family(FamilyKind::Eta, 5);
  REQUIRE(eta5.members.size() == 2);
  CHECK(eta5.members[0] == Strategy{1, 0, 0, 0, -1});
  CHECK(eta5.members[1] == Strategy{0, 1, 0, -1, 0});
  CHECK(gen_family(FamilyKind::Theta, 5).members.at(0) == Strategy{0, 1, -2, 1, 0});
  const auto lam8 = gen_family(FamilyKind::Lambda, 8);
  REQUIRE(lam8.members.size() == 2);
  CHECK(lam8.members[0] == Strategy{1, -1, 0, 0, 0, 0, -1, 1});
  CHECK(lam8.members[1] == Strategy{0, 0, 1, -1, -1, 1, 0, 0});
  CHECK(gen_family(FamilyKind::Eta, 2).members == std::vector<Strategy>{Strategy{1, -1}});
  CHECK(gen_family(FamilyKind::Nu, 7).members.at(0) == Strategy{1, -2, 1, 0, 1, -2, 1});
  CHECK(gen_family(FamilyKind::Nu, 8).members.at(0) == Strategy{1, -2, 1, 0, 0, 1, -2, 1});
  CHECK_THROWS_AS(gen_family(FamilyKind::Lambda, 3), ValidationError);
  CHECK_THROWS_AS(gen_family(FamilyKind::Nu, 5), ValidationError);
  CHECK_THROWS_AS(gen_family(FamilyKind::Theta, 6), ValidationError);
  CHECK_THROWS_AS(gen_family(FamilyKind::Eta, 1), ValidationError);
}

TEST_CASE("family sizes, membership and internal orthogonality") {
  for (int n = 2; n <= 12; ++n) {
    for (auto k : {FamilyKind::Eta, FamilyKind::Lambda, FamilyKind::Nu, FamilyKind::Theta}) {
      const auto f = family(k, n);
      if (!f) continue;
      std::size_t want = 1;
      if (k == FamilyKind::Eta) want = std::size_t((n - 2) / 2 + 1);
      if (k == FamilyKind::Lambda) want = std::size_t(n / 4);
      if (k == FamilyKind::Nu) want = std::size_t((n - 6) / 6 + 1);
      CHECK(f->members.size() == want);
      for (std::size_t i = 0; i < f->members.size(); ++i) {
        CHECK(validate_membership(f->members[i], 1));
        for (std::size_t j = i + 1; j < f->members.size(); ++j)
          CHECK(f->members[i].actions().dot(f->members[j].actions()) == 0);
      }
    }
  }
}

TEST_CASE("cross-family orthogonality table") {
  using K = FamilyKind;
  for (int n = 2; n <= 12; ++n) {
    CAPTURE(n);
    // Eta vectors are antisymmetric under reversal, the others symmetric.
    for (auto k : {K::Lambda, K::Nu, K::Theta}) {
      const auto r = perpendicular(K::Eta, k, n);
      if (r) CHECK(*r);
    }
    if (auto r = perpendicular(K::Lambda, K::Nu, n)) CHECK_FALSE(*r);
    // Theta meets lambda only where n = 3 mod 4 and nu only at n = 7.
    if (auto r = perpendicular(K::Theta, K::Lambda, n)) CHECK(*r == (n % 4 == 3));
    if (auto r = perpendicular(K::Theta, K::Nu, n)) CHECK(*r == (n != 7));
  }
  CHECK(gen_family(K::Theta, 5).members[0].actions().dot(gen_family(K::Lambda, 5).members[0].actions()) == -2);
}

TEST_CASE("buy-hold-sell basis") {
  const auto b3 = gen_bhs_basis(3);
  REQUIRE(b3.members.size() == 2);
  CHECK(b3.members[0] == Strategy{1, 0, -1});
  CHECK(b3.members[1] == Strategy{0, 1, -1});
  CHECK(gen_bhs_basis(2).members == std::vector<Strategy>{Strategy{1, -1}});
  CHECK(Strategy(b3.members[0].actions() - 2 * b3.members[1].actions()) == Strategy{1, -2, 1});
  for (int n = 2; n <= 9; ++n) {
    const auto b = gen_bhs_basis(n);
    CHECK(b.members.size() == std::size_t(n - 1));
    for (const auto& s : b.members) CHECK(s.actions().squaredNorm() == 2);
    CHECK(exact_rank(as_matrix(b.members)) == n - 1);
  }
  // Every member expands with coefficients U_1..U_{n-1}.
  for (int n = 2; n <= 5; ++n) {
    const auto b = gen_bhs_basis(n);
    oracle::for_each_member(2, n, [&](const oracle::Actions& u) {
      IntVector sum = IntVector::Zero(n);
      for (int i = 0; i < n - 1; ++i) sum += u[std::size_t(i)] * b.members[std::size_t(i)].actions();
      CHECK(sum == oracle::strategy(u).actions());
    });
  }
}

TEST_CASE("rank of the universe") {
  for (int n = 2; n <= 8; ++n) {
    CHECK(rank_of_universe(n) == n - 1);
    const auto r = rank_report(n, 1);
    CHECK(r.swept);
    CHECK(r.flat_orthogonal);
    CHECK(r.bhs_rank == n - 1);
    // Independent double-precision check of the full universe matrix.
    const auto all = oracle::members(1, n);
    IntMatrix m(n, Eigen::Index(all.size()));
    for (std::size_t j = 0; j < all.size(); ++j)
      for (int i = 0; i < n; ++i) m(i, Eigen::Index(j)) = all[j][std::size_t(i)];
    CHECK(float_rank(m) == n - 1);
    if (n <= 5) CHECK(exact_rank(gram(m)) == n - 1);
    CHECK((IntVector::Ones(n).transpose() * m).isZero());
  }
  CHECK(rank_report(4, 2).rank == 3);
  const auto big = rank_report(20, 1, 1000);
  CHECK_FALSE(big.swept);
  CHECK(big.rank == 19);
  // The orthogonal n=3 basis.
  CHECK(Strategy{1, 0, -1}.actions().dot(Strategy{1, -2, 1}.actions()) == 0);
}

TEST_CASE("maximum orthogonal subsets") {
  auto check_witness = [](const OrthogonalSubset& s, int n) {
    CHECK(s.witness.size() == std::size_t(s.size));
    for (std::size_t i = 0; i < s.witness.size(); ++i) {
      CHECK(validate_membership(s.witness[i], 1));
      CHECK(s.witness[i].size() == n);
      for (std::size_t j = i + 1; j < s.witness.size(); ++j)
        CHECK(s.witness[i].actions().dot(s.witness[j].actions()) == 0);
    }
  };
  for (int n = 2; n <= 7; ++n) {
    const auto s = max_orthogonal_subset(n);
    CAPTURE(n);
    const int want[] = {1, 2, 3, 3, 5, 5};
    CHECK(s.size == want[n - 2]);
    check_witness(s, n);
  }
  // A five-member n=6 set that is orthogonal and full rank.
  const std::vector<Strategy> six{{1, 0, 0, 0, 0, -1}, {0, 1, 0, 0, -1, 0}, {0, 0, 1, -1, 0, 0},
                                  {1, 0, -1, -1, 0, 1}, {1, -2, 1, 1, -2, 1}};
  const auto g = gram(as_matrix(six));
  CHECK(g.isDiagonal());
  CHECK(exact_rank(as_matrix(six)) == 5);
  CHECK_THROWS_AS(max_orthogonal_subset(6, 10), BudgetExceeded);
}

TEST_CASE("rotation and the cycle Laplacian") {
  for (int n = 2; n <= 8; ++n) {
    const IntMatrix r = rotation_matrix(n);
    CHECK(r * r.transpose() == IntMatrix::Identity(n, n));
    CHECK(Eigen::FullPivLU<Eigen::MatrixXd>(r.cast<double>()).determinant() ==
          doctest::Approx(n % 2 == 0 ? -1.0 : 1.0));
    const IntMatrix l = cycle_laplacian(n);
    CHECK(l == IntMatrix(2 * IntMatrix::Identity(n, n) - r - r.transpose()));
    CHECK(l.rowwise().sum().isZero());
    CHECK(l.colwise().sum().isZero());
    if (n >= 3) {
      CHECK(l(0, 0) == 2);
      CHECK(l(0, 1) == -1);
      CHECK(l(1, 0) == -1);
      CHECK(l(0, n - 1) == -1);
      CHECK(l(n - 1, 0) == -1);
    }
  }
  // U = (I - R) W on every decoded position column.
  for (int n = 2; n <= 5; ++n) {
    const UniverseParams p(1, n);
    const IntMatrix r = rotation_matrix(n);
    IntMatrix w(n, std::int64_t(p.size())), u(n, std::int64_t(p.size()));
    Eigen::Index j = 0;
    for (UniverseIterator it(p); !it.done(); it.next(), ++j) {
      w.col(j) = it.positions();
      u.col(j) = it.actions();
      CHECK(IntVector(it.positions() - r * it.positions()) == it.actions());
    }
    CHECK(gram(u) == IntMatrix(w.transpose() * cycle_laplacian(n) * w));
    if (n <= 4) CHECK(exact_rank(gram(u)) == n - 1);
  }
}

TEST_CASE("exact span") {
  ExactSpan span(3);
  CHECK(span.insert((IntVector(3) << 1, 0, -1).finished()));
  CHECK(span.insert((IntVector(3) << 0, 1, -1).finished()));
  CHECK_FALSE(span.insert((IntVector(3) << 1, -2, 1).finished()));
  CHECK(span.rank() == 2);
  CHECK_THROWS_AS(span.insert(IntVector::Zero(2)), StructuralError);
}
