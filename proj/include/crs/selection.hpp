#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "crs/separating.hpp"

namespace crs {

/// A finite subset of the state space. Storage order is preserved but
/// carries no meaning; construction rejects exact duplicates so the
/// value really is a set.
template <class P>
class FinitePointSet {
 public:
  FinitePointSet() = default;

  explicit FinitePointSet(std::vector<P> pts) : pts_(std::move(pts)) {
    std::vector<P> sorted = pts_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument("duplicate point in finite point set");
    }
  }

  bool empty() const { return pts_.empty(); }
  std::size_t size() const { return pts_.size(); }
  const std::vector<P>& points() const { return pts_; }

  bool contains(const P& x) const {
    return std::find(pts_.begin(), pts_.end(), x) != pts_.end();
  }

 private:
  std::vector<P> pts_;
};

/// The nested binary partition generated by a separating family,
///
///   Z_{1,1} = E_1,  Z_{1,2} = E_1^c,
///   Z_{n,2k-1} = Z_{n-1,k} & E_n,  Z_{n,2k} = Z_{n-1,k} \ E_n,
///
/// with complements taken inside the family window and empty cells
/// retained so indices keep their meaning. Materializing level n costs
/// 2^n cells; selection below never does that.
template <class Family>
std::vector<typename Family::set_type> ztree_level(const Family& fam, int level) {
  if (level < 1 || level > 20) throw std::invalid_argument("ztree level must be in [1, 20]");
  std::vector<typename Family::set_type> cells{fam.window()};
  for (int n = 1; n <= level; ++n) {
    const auto e = fam.set(static_cast<std::uint64_t>(n));
    std::vector<typename Family::set_type> next;
    next.reserve(cells.size() * 2);
    for (const auto& c : cells) {
      next.push_back(intersect(c, e));
      next.push_back(subtract(c, e));
    }
    cells = std::move(next);
  }
  return cells;
}

/// The point of M the Z-tree descent isolates: descending to the least
/// indexed cell that meets M is the same as keeping the points whose
/// membership profile over (E_1, E_2, ...) is lexicographically smallest
/// (member sorts before non-member), so the descent reduces to repeated
/// filtering at the first index where the surviving points disagree.
/// Depends only on the set M and on the family, never on storage order.
template <class Family>
typename Family::point_type canonical_point(
    const FinitePointSet<typename Family::point_type>& m, const Family& fam) {
  using P = typename Family::point_type;
  if (m.empty()) throw std::invalid_argument("empty set has no canonical point");
  std::vector<P> cand = m.points();
  for (const P& x : cand) {
    if (!fam.in_window(x)) throw std::invalid_argument("point outside the family window");
  }
  while (cand.size() > 1) {
    std::uint64_t n = 0;
    for (std::size_t i = 0; i < cand.size(); ++i) {
      for (std::size_t j = i + 1; j < cand.size(); ++j) {
        const std::uint64_t s = fam.separation_index(cand[i], cand[j]);
        if (s == 0) {
          throw std::runtime_error("separating family generation cap exceeded");
        }
        if (n == 0 || s < n) n = s;
      }
    }
    std::vector<P> keep;
    for (const P& x : cand) {
      if (fam.point_in_set(x, n)) keep.push_back(x);
    }
    cand = std::move(keep);  // nonempty: n is a disagreement index
  }
  return cand.front();
}

/// y on the empty set, the canonical point otherwise.
template <class Family>
typename Family::point_type select_with_fallback(
    const FinitePointSet<typename Family::point_type>& m,
    const typename Family::point_type& y, const Family& fam) {
  return m.empty() ? y : canonical_point(m, fam);
}

/// First `count` terms of the enumeration X_1 = select(M, y),
/// X_n = select(M \ {X_1..X_{n-1}}, X_1): the first |M| terms list M
/// without repetition, afterwards the sequence repeats X_1.
template <class Family>
std::vector<typename Family::point_type> enumerate_finite(
    const FinitePointSet<typename Family::point_type>& m,
    const typename Family::point_type& y, const Family& fam, std::size_t count) {
  using P = typename Family::point_type;
  std::vector<P> out;
  if (count == 0) return out;
  std::vector<P> remaining = m.points();
  const P x1 = select_with_fallback(m, y, fam);
  out.push_back(x1);
  std::erase(remaining, x1);
  while (out.size() < count) {
    if (remaining.empty()) {
      out.push_back(x1);
    } else {
      const P x = canonical_point(FinitePointSet<P>(remaining), fam);
      out.push_back(x);
      std::erase(remaining, x);
    }
  }
  return out;
}

/// Doubly indexed enumeration of a constructive union of finite sets:
/// component n enumerates itself when nonempty; empty components repeat
/// the global selector (canonical point of the first nonempty component,
/// or y when all are empty). Flattening uses the diagonal pairing
/// flat(0), flat(1), ... = (0,0), (0,1), (1,0), (0,2), (1,1), (2,0), ...
template <class Family>
class ConstructiveEnumeration {
 public:
  using P = typename Family::point_type;

  ConstructiveEnumeration(const std::vector<FinitePointSet<P>>& components, const P& y,
                          const Family& fam) {
    global_ = y;
    for (const auto& comp : components) {
      if (!comp.empty()) {
        global_ = canonical_point(comp, fam);
        break;
      }
    }
    orders_.reserve(components.size());
    for (const auto& comp : components) {
      orders_.push_back(comp.empty()
                            ? std::vector<P>{}
                            : enumerate_finite(comp, global_, fam, comp.size()));
    }
  }

  std::size_t component_count() const { return orders_.size(); }
  const P& global_selector() const { return global_; }

  /// X_{n,k}, both indices 0-based. Components beyond the stored list
  /// are empty by convention and repeat the global selector.
  P term(std::size_t n, std::size_t k) const {
    if (n >= orders_.size() || orders_[n].empty()) return global_;
    const auto& ord = orders_[n];
    return k < ord.size() ? ord[k] : ord.front();
  }

  P flat(std::size_t i) const {
    std::size_t d = 0;
    while ((d + 1) * (d + 2) / 2 <= i) ++d;
    const std::size_t r = i - d * (d + 1) / 2;
    return term(r, d - r);
  }

 private:
  std::vector<std::vector<P>> orders_;
  P global_{};
};

}  // namespace crs
