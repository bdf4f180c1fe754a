#pragma once

#include "poslim/core_model.hpp"
#include "poslim/errors.hpp"
#include "poslim/exact.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

namespace poslim {

enum class FamilyKind { Eta, Lambda, Nu, Theta, Bhs };

std::string to_string(FamilyKind k);

struct OrthFamily {
  FamilyKind kind;
  int n;
  std::vector<Strategy> members;
};

/// Structured unit-limit strategies. Eta needs n >= 2, lambda n >= 4, nu n >= 6,
/// theta an odd n >= 3; anything else throws ValidationError.
OrthFamily gen_family(FamilyKind kind, int n);

/// Buy one at tick i, sell it at the last tick, for i = 1..n-1.
OrthFamily gen_bhs_basis(int n);

/// Columns are the family members.
IntMatrix as_matrix(const std::vector<Strategy>& strategies);

/// Rank over the rationals by Gaussian elimination. No floating point is involved.
template <typename Derived>
Eigen::Index exact_rank(const Eigen::MatrixBase<Derived>& m) {
  using RMat = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
  RMat a = m.template cast<Rational>();
  Eigen::Index rank = 0;
  for (Eigen::Index col = 0; col < a.cols() && rank < a.rows(); ++col) {
    Eigen::Index pivot = rank;
    while (pivot < a.rows() && a(pivot, col) == 0) ++pivot;
    if (pivot == a.rows()) continue;
    a.row(pivot).swap(a.row(rank));
    for (Eigen::Index r = rank + 1; r < a.rows(); ++r) {
      if (a(r, col) == 0) continue;
      const Rational f = a(r, col) / a(rank, col);
      a.row(r) -= f * a.row(rank);
    }
    ++rank;
  }
  return rank;
}

/// Incremental row-echelon basis over the rationals.
class ExactSpan {
 public:
  explicit ExactSpan(Eigen::Index dim) : dim_(dim) {}
  /// Adds v to the span; true if it was independent of what came before.
  bool insert(const IntVector& v);
  Eigen::Index rank() const { return Eigen::Index(rows_.size()); }

 private:
  Eigen::Index dim_;
  std::vector<Eigen::Matrix<Rational, Eigen::Dynamic, 1>> rows_;
  std::vector<Eigen::Index> pivots_;
};

struct RankReport {
  int rank = 0;             ///< rank of the whole universe
  int bhs_rank = 0;         ///< lower bound exhibited by the buy-hold-sell strategies
  bool swept = false;       ///< true if every member was fed through elimination
  bool flat_orthogonal = true;  ///< every swept member is orthogonal to a constant price
};

/// Rank of the universe. The buy-hold-sell set gives n-1 from below and the
/// zero net action of every member caps it at n-1; when the universe fits in
/// `budget` every member is also checked directly.
RankReport rank_report(int n, int limit = 1, std::uint64_t budget = 200'000);
int rank_of_universe(int n, int limit = 1);

struct OrthogonalSubset {
  int size = 0;
  std::vector<Strategy> witness;
  std::uint64_t nodes = 0;  ///< search nodes visited
};

/// Largest set of mutually orthogonal nonzero strategies in the unit-limit
/// universe. Exhaustive branch and bound over one representative per +-
/// pair; the witness is the lexicographically first maximum in index order.
/// `budget` caps the number of search nodes.
OrthogonalSubset max_orthogonal_subset(int n, std::uint64_t budget = 50'000'000);

/// Cyclic shift with (R w)_i = w_{i-1} and (R w)_1 = w_n.
IntMatrix rotation_matrix(int n);

/// 2I - R - R^T, the cycle Laplacian.
IntMatrix cycle_laplacian(int n);

template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> gram(const Eigen::MatrixBase<Derived>& u) {
  return u.transpose() * u;
}

}  // namespace poslim
