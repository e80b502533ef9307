#pragma once

#include <vector>

#include "imprint/semiring.hpp"

namespace imprint {

/// Downward-closed subset of a rating set, stored as the antichain of its
/// maximal elements; membership is r <= some generator.
class ImprintSet {
 public:
  ImprintSet() = default;
  explicit ImprintSet(Semiring r) : r_(std::move(r)) {}
  ImprintSet(Semiring r, const std::vector<Elem>& generators);

  const Semiring& semiring() const noexcept { return r_; }
  /// Maximal elements, sorted.
  const std::vector<Elem>& maximal() const noexcept { return max_; }

  /// Adds x and its downset; returns false when x was already a member.
  bool insert(const Elem& x);
  bool contains(const Elem& x) const;
  bool subset_of(const ImprintSet& o) const;
  bool operator==(const ImprintSet& o) const { return max_ == o.max_; }
  bool empty() const noexcept { return max_.empty(); }

  /// Explicit members (the whole downset); throws CapExceeded beyond `cap`.
  std::vector<Elem> members(std::size_t cap) const;

 private:
  Semiring r_;
  std::vector<Elem> max_;
};

/// Subset of M x R, downward closed in the R component: one ImprintSet per monoid element.
class PointedImprintSet {
 public:
  PointedImprintSet() = default;
  PointedImprintSet(std::size_t monoid_size, const Semiring& r);

  std::size_t monoid_size() const noexcept { return per_.size(); }
  const Semiring& semiring() const noexcept { return r_; }
  const ImprintSet& at(std::size_t s) const { return per_.at(s); }
  bool insert(std::size_t s, const Elem& x) { return per_.at(s).insert(x); }
  bool contains(std::size_t s, const Elem& x) const { return per_.at(s).contains(x); }
  bool subset_of(const PointedImprintSet& o) const;
  bool operator==(const PointedImprintSet& o) const;
  std::size_t generator_count() const;

 private:
  Semiring r_;
  std::vector<ImprintSet> per_;
};

}  // namespace imprint
