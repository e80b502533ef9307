#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "imprint/cover.hpp"
#include "imprint/saturation.hpp"

namespace imprint {

struct PipelineOptions {
  std::size_t max_elements = kDefaultMaxElements;
  std::optional<std::size_t> max_k;
  std::size_t max_states = kDefaultMaxDfaStates;
  std::uint64_t seed = 0;
  bool emit_cover = false;
  bool verify = false;

  nlohmann::json to_json() const;
  static PipelineOptions from_json(const nlohmann::json& j);
};

/// A regex, "%universal", or an automaton in JSON (text starting with '{').
Nfa parse_language(const std::string& text, const Alphabet& a);

struct Instance {
  Alphabet alphabet;
  ClassId cls = ClassId::AT;
  std::string target_text = "%universal";
  std::vector<std::string> against_text;
  PipelineOptions options;

  bool target_universal() const { return target_text == "%universal"; }
  Nfa target() const { return parse_language(target_text, alphabet); }
  std::vector<Nfa> against() const;

  /// {"alphabet","class","target","against","options"}; languages may be strings or NFA objects.
  static Instance from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

/// Subsets of a language list, as sorted index lists.
using IndexSets = std::vector<std::vector<std::size_t>>;
IndexSets masks_to_sets(const std::vector<LangMask>& masks);

struct VerdictStats {
  double rating_bits = 0;  // log2 |R| of the saturated rating set
  std::size_t generators = 0;
  std::size_t iterations = 0;
  std::optional<std::size_t> monoid_size;
  double wall_ms = 0;

  bool operator==(const VerdictStats&) const = default;
};

struct Verdict {
  ClassId cls = ClassId::AT;
  bool coverable = false;
  /// Pulled-back imprint. Indices refer to `against`, shifted by one when the
  /// target takes index 0 (universal classes with a proper target).
  IndexSets imprint;
  bool target_indexed = false;
  /// Subsets of `against` that cannot be separated from the target.
  IndexSets noncoverable;
  std::optional<nlohmann::json> cover;
  std::optional<nlohmann::json> verification;
  std::optional<std::string> separator;
  std::optional<bool> member;
  std::string note;
  VerdictStats stats;

  nlohmann::json to_json() const;
  static Verdict from_json(const nlohmann::json& j);
  bool operator==(const Verdict&) const = default;
};

Verdict cmd_cover(const Instance& inst);
Verdict cmd_separate(ClassId cls, const Alphabet& a, const std::string& l1, const std::string& l2,
                     PipelineOptions opts = {});
Verdict cmd_member(ClassId cls, const Alphabet& a, const std::string& l, PipelineOptions opts = {});

struct ImprintDump {
  ClassId cls = ClassId::AT;
  std::size_t languages = 0;
  IndexSets imprint;
  std::size_t raw_generators = 0;
  double rating_bits = 0;
  /// Pairwise inclusions of the pulled-back imprints of the universal classes.
  std::map<std::string, bool> chain;

  nlohmann::json to_json() const;
};

ImprintDump cmd_imprint(ClassId cls, const Alphabet& a, const std::vector<std::string>& multiset,
                        const PipelineOptions& opts = {}, bool chain = false);

/// "sigma1-sep" (args: L1, L2), "pt-k" (args: k [, L]) or "at" (args: multiset).
nlohmann::json cmd_oracle(const std::string& which, const Alphabet& a, const std::vector<std::string>& args,
                          const PipelineOptions& opts = {});

/// Human-readable rendering of a verdict.
std::string verdict_text(const Verdict& v);

}  // namespace imprint
