#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "imprint/imprint_set.hpp"
#include "imprint/rating_map.hpp"

namespace imprint {

enum class ClassId { AT, Sigma1, BSigma1, Sigma2, FO2, FO };

std::string class_name(ClassId c);
ClassId parse_class(std::string_view name);
/// Sigma1 and Sigma2 run on the pointed engine.
bool is_pointed(ClassId c) noexcept;
/// Classes whose pipeline needs an alphabet compatible map.
bool needs_cont(ClassId c) noexcept;
/// Classes with a cover synthesizer.
bool synthesizable(ClassId c) noexcept;

inline constexpr std::size_t kDefaultMaxElements = 200000;

struct SaturationOptions {
  std::size_t max_elements = kDefaultMaxElements;
  /// Process the worklist LIFO instead of FIFO (the result must not change).
  bool reverse_order = false;
};

struct SaturationStats {
  std::size_t iterations = 0;  // worklist pops
  std::size_t products = 0;
  std::size_t inserted = 0;    // elements that were not dominated on arrival
  std::size_t generators = 0;  // final antichain size
};

/// rho(B*) and rho(B^⊛) for every sub-alphabet B, indexed by the bitmask of B.
std::vector<Elem> star_images(const RatingMap& rho);
std::vector<Elem> exact_images(const RatingMap& rho);

/// Least BSIGMA1-, FO2- or FO-saturated subset of R (AT is delegated to at_imprint).
ImprintSet saturate_universal(const RatingMap& rho, ClassId cls, const SaturationOptions& opts = {},
                              SaturationStats* stats = nullptr);
/// Least SIGMA1- or SIGMA2-saturated subset of M x R.
PointedImprintSet saturate_pointed(const MonoidMorphism& alpha, const RatingMap& rho, ClassId cls,
                                   const SaturationOptions& opts = {}, SaturationStats* stats = nullptr);

/// Down-closure of {rho(B^⊛) : B ⊆ A}.
ImprintSet at_imprint(const RatingMap& rho);
/// Down-closure of {rho(B^⊛) : B^⊛ meets L}; {0} when L is empty.
ImprintSet at_imprint(const RatingMap& rho, const Nfa& language);

/// Post-hoc structural checks: antichain shape, 1_R, closure under products of
/// generators, trivial imprint inclusion and the class rule. Empty when fine.
std::vector<std::string> check_imprint(const ImprintSet& s, const RatingMap& rho, ClassId cls,
                                       std::size_t cap = kDefaultMaxElements);
std::vector<std::string> check_pointed_imprint(const PointedImprintSet& p, const MonoidMorphism& alpha,
                                               const RatingMap& rho, ClassId cls,
                                               std::size_t cap = kDefaultMaxElements);

/// Subsets are bitmasks over language indices.
using LangMask = std::uint64_t;

/// All masks below some mask of `maxima`, sorted.
std::vector<LangMask> mask_downset(const std::vector<LangMask>& maxima, std::size_t cap);

struct CoveringDecision {
  ClassId cls = ClassId::AT;
  bool coverable = false;
  /// Raw imprint over the rating set actually saturated (augmented for FO2/SIGMA2).
  std::optional<ImprintSet> imprint;
  std::optional<PointedImprintSet> pointed;
  /// Down-closure of delta(imprint) over the multiset (pointed: union over F_M).
  std::vector<LangMask> pulled;
  /// Subsets H of the `against` languages that cannot be separated from.
  std::vector<LangMask> noncoverable;
  SaturationStats stats;
  /// The extension that was saturated (after augmentation when needed).
  std::optional<Extension> used;
};

/// Universal route. With `target_index` the multiset is {L} ∪ 𝐋 and L sits at
/// that index; masks in `noncoverable` then range over the remaining languages
/// in order. FO2 augments the map first.
CoveringDecision decide_universal_covering(const Extension& ext, ClassId cls,
                                           std::optional<std::size_t> target_index = std::nullopt,
                                           const SaturationOptions& opts = {});

/// Pointed route: coverable iff (F_M x F_R) misses P. SIGMA2 augments first.
CoveringDecision decide_pointed_covering(const RecognizingMorphism& alpha, const Extension& ext, ClassId cls,
                                         const SaturationOptions& opts = {});

}  // namespace imprint
