#include "poslim/magma.hpp"

#include "poslim/errors.hpp"

#include <algorithm>
#include <cstdlib>

namespace poslim {

namespace {

void same_limit(CappedInt a, CappedInt b) {
  if (a.limit() != b.limit()) throw ValidationError("operands have different position limits");
}

std::int64_t clamp(std::int64_t v, std::int64_t limit) { return std::clamp(v, -limit, limit); }

}  // namespace

CappedInt::CappedInt(std::int64_t value, std::int64_t limit) : value_(value), limit_(limit) {
  if (limit < 1) throw ValidationError("position limit must be at least 1");
  if (value < -limit || value > limit)
    throw ValidationError(std::to_string(value) + " is outside [-" + std::to_string(limit) + ", " +
                          std::to_string(limit) + "]");
}

CappedInt oplus(CappedInt a, CappedInt b) {
  same_limit(a, b);
  return {clamp(a.value() + b.value(), a.limit()), a.limit()};
}

std::optional<CappedInt> ominus(CappedInt a, CappedInt b) {
  same_limit(a, b);
  const auto d = a.value() - b.value();
  if (std::abs(d) > a.limit()) return std::nullopt;
  return CappedInt(d, a.limit());
}

std::vector<CappedInt> solution_set(CappedInt b, CappedInt c) {
  same_limit(b, c);
  const auto w = b.limit();
  std::vector<CappedInt> out;
  if (std::abs(c.value() - b.value()) > w) return out;
  if (std::abs(c.value()) < w) {
    out.emplace_back(c.value() - b.value(), w);
    return out;
  }
  // On the boundary every x past the exact difference clamps to c.
  const auto lo = c.value() == w ? w - b.value() : -w;
  const auto hi = c.value() == w ? w : -w - b.value();
  for (auto x = lo; x <= hi; ++x) out.emplace_back(x, w);
  return out;
}

CayleyStats cayley_stats(std::int64_t limit) {
  CayleyStats s;
  for (auto a = -limit; a <= limit; ++a)
    for (auto b = -limit; b <= limit; ++b) {
      ++s.pairs;
      if (std::abs(a + b) > limit) ++s.clamped;
      else ++s.ordinary;
      if (!ominus({a, limit}, {b, limit})) ++s.undefined_sub;
    }
  return s;
}

std::string cayley_table(std::int64_t limit, MagmaOp op, char delimiter) {
  std::string out = op == MagmaOp::Plus ? "(+)" : "(-)";
  for (auto b = -limit; b <= limit; ++b) out += delimiter + std::to_string(b);
  out += '\n';
  for (auto a = -limit; a <= limit; ++a) {
    out += std::to_string(a);
    for (auto b = -limit; b <= limit; ++b) {
      out += delimiter;
      if (op == MagmaOp::Plus) {
        out += std::to_string(oplus({a, limit}, {b, limit}).value());
      } else {
        const auto r = ominus({a, limit}, {b, limit});
        out += r ? std::to_string(r->value()) : "n/a";
      }
    }
    out += '\n';
  }
  return out;
}

PositionSeries positions_oplus(const PositionSeries& a, const PositionSeries& b, std::int64_t limit) {
  if (a.size() != b.size()) throw StructuralError("position series lengths differ");
  if (!validate_membership(a, limit) || !validate_membership(b, limit))
    throw ValidationError("positions_oplus operands must be closed position series within the limit");
  IntVector w(a.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) w[i] = clamp(a[i] + b[i], limit);
  return PositionSeries(std::move(w));
}

Strategy strategies_compose(const Strategy& a, const Strategy& b, std::int64_t limit) {
  if (a.size() != b.size()) throw StructuralError("strategy lengths differ");
  if (!validate_membership(a, limit) || !validate_membership(b, limit))
    throw ValidationError("strategies_compose operands must belong to the universe");
  IntVector u(a.size());
  std::int64_t held_a = 0, held_b = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const auto next_a = held_a + a[i];
    const auto next_b = held_b + b[i];
    u[i] = clamp(next_a + next_b, limit) - clamp(held_a + held_b, limit);
    held_a = next_a;
    held_b = next_b;
  }
  return Strategy(std::move(u));
}

std::optional<AssociativityWitness> find_non_associative(std::int64_t limit) {
  for (auto a = -limit; a <= limit; ++a)
    for (auto b = -limit; b <= limit; ++b)
      for (auto c = -limit; c <= limit; ++c) {
        const CappedInt x(a, limit), y(b, limit), z(c, limit);
        if (oplus(oplus(x, y), z) != oplus(x, oplus(y, z))) return AssociativityWitness{a, b, c};
      }
  return std::nullopt;
}

}  // namespace poslim
