#include "imprint/imprint_set.hpp"

#include <algorithm>
#include <unordered_set>

#include "imprint/error.hpp"

namespace imprint {

ImprintSet::ImprintSet(Semiring r, const std::vector<Elem>& generators) : r_(std::move(r)) {
  for (const auto& g : generators) insert(g);
}

bool ImprintSet::insert(const Elem& x) {
  if (contains(x)) return false;
  std::erase_if(max_, [&](const Elem& m) { return r_.leq(m, x); });
  max_.insert(std::lower_bound(max_.begin(), max_.end(), x), x);
  return true;
}

bool ImprintSet::contains(const Elem& x) const {
  return std::any_of(max_.begin(), max_.end(), [&](const Elem& m) { return r_.leq(x, m); });
}

bool ImprintSet::subset_of(const ImprintSet& o) const {
  return std::all_of(max_.begin(), max_.end(), [&](const Elem& m) { return o.contains(m); });
}

std::vector<Elem> ImprintSet::members(std::size_t cap) const {
  std::unordered_set<Elem, ElemHash> seen;
  std::vector<Elem> out;
  for (const auto& m : max_) {
    r_.for_each_below(m, cap, [&](const Elem& e) {
      if (seen.insert(e).second) {
        if (out.size() >= cap) throw CapExceeded("max-elements", cap, "imprint enumeration");
        out.push_back(e);
      }
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

PointedImprintSet::PointedImprintSet(std::size_t monoid_size, const Semiring& r)
    : r_(r), per_(monoid_size, ImprintSet(r)) {}

bool PointedImprintSet::subset_of(const PointedImprintSet& o) const {
  if (o.per_.size() != per_.size()) return false;
  for (std::size_t s = 0; s < per_.size(); ++s)
    if (!per_[s].subset_of(o.per_[s])) return false;
  return true;
}

bool PointedImprintSet::operator==(const PointedImprintSet& o) const {
  if (o.per_.size() != per_.size()) return false;
  for (std::size_t s = 0; s < per_.size(); ++s)
    if (!(per_[s] == o.per_[s])) return false;
  return true;
}

std::size_t PointedImprintSet::generator_count() const {
  std::size_t n = 0;
  for (const auto& p : per_) n += p.maximal().size();
  return n;
}

}  // namespace imprint
