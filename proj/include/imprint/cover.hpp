#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "imprint/imprint_set.hpp"
#include "imprint/monoid.hpp"
#include "imprint/nfa.hpp"
#include "imprint/rating_map.hpp"
#include "imprint/regex.hpp"
#include "imprint/saturation.hpp"

namespace imprint {

struct CoverPiece {
  Nfa nfa;
  /// Present when the piece has a (reasonably small) regular expression.
  std::optional<Regex> regex;
  std::string label;
};

struct Cover {
  ClassId cls = ClassId::AT;
  Nfa target;
  std::vector<CoverPiece> pieces;
  std::string provenance;
  /// Piece length bound for BSIGMA1 covers built from ~k classes.
  std::optional<std::size_t> k;
  /// False when a synthesizer stopped at a cap before reaching the goal imprint.
  bool optimal = true;

  nlohmann::json to_json() const;
  static Cover from_json(const nlohmann::json& j);
};

/// State elimination; nullopt when an intermediate expression exceeds `max_size` nodes.
std::optional<Regex> nfa_to_regex(const Nfa& n, std::size_t max_size = 4000);

/// Piece built from a regex (the automaton is derived).
CoverPiece piece_from_regex(const Regex& r, const Alphabet& a, std::string label = {});
/// Piece built from an automaton; a regex is attached when state elimination stays small.
CoverPiece piece_from_nfa(const Nfa& n, std::string label = {});

/// Drops empty pieces and pieces equal to an earlier one.
void cover_prune(Cover& c);

// ---- AT ---------------------------------------------------------------------

/// The atoms B^⊛ for every B ⊆ A (all of them nonempty).
Cover at_cover(const Alphabet& a);
/// The atoms meeting `language`.
Cover at_cover(const Alphabet& a, const Nfa& language);

// ---- SIGMA1 -----------------------------------------------------------------

inline constexpr std::size_t kDefaultSigma1Words = std::size_t{1} << 20;

/// {A*a1A*...A*anA* : a1...an in alpha^-1(F), n <= |M|}, keeping only pieces
/// not included in another one. Covers alpha^-1(F).
Cover sigma1_cover(const MonoidMorphism& alpha, const std::vector<MonoidElem>& elements,
                   std::size_t max_words = kDefaultSigma1Words);

// ---- BSIGMA1 ----------------------------------------------------------------

/// Deterministic automaton whose states are the sets of pieces of length <= k.
struct PieceAutomaton {
  std::size_t k = 0;
  Dfa dfa;
  /// All words of length <= k, ordered by length then lexicographically.
  std::vector<Word> universe;
  /// For each state, a bitset over `universe`.
  std::vector<std::vector<std::uint64_t>> sets;

  std::size_t size() const noexcept { return dfa.states; }
  std::vector<Word> pieces_of(State q) const;
  /// The ~k class of state q.
  Nfa class_of(State q) const;
  /// Maximal pieces of state q for the subword order.
  std::vector<Word> maximal_pieces(State q) const;
};

inline constexpr std::size_t kDefaultPieceStates = 200000;

/// Default deepening bound: 4 for |A| <= 2, 3 for |A| = 3, 2 beyond.
std::size_t default_max_k(const Alphabet& a) noexcept;

PieceAutomaton pt_partition(std::size_t k, const Alphabet& a, std::size_t max_states = kDefaultPieceStates);

/// True when L(n) is a union of ~k classes.
bool is_pt_k(const Nfa& n, std::size_t k, std::size_t max_states = kDefaultPieceStates);

struct BSigma1Options {
  std::optional<std::size_t> max_k;
  std::size_t max_states = kDefaultPieceStates;
};

/// Smallest k <= max_k whose ~k partition has imprint `goal`; the partition at
/// max_k flagged non-optimal otherwise. `achieved` receives the partition imprint.
Cover bsigma1_cover(const RatingMap& rho, const ImprintSet& goal, const BSigma1Options& opts = {},
                    ImprintSet* achieved = nullptr);

/// A single letter (letters == 0) or a triple (b, B, c).
struct Unit {
  Symbol b = 0;
  LetterSet letters = 0;
  Symbol c = 0;

  bool is_letter() const noexcept { return letters == 0; }
  static Unit letter(Symbol a) { return Unit{a, 0, a}; }
  static Unit triple(Symbol b, LetterSet letters, Symbol c) { return Unit{b, letters, c}; }
  bool operator==(const Unit&) const = default;
};

using Template = std::vector<Unit>;

bool template_unambiguous(const Template& t);
/// K_{n,T}: letters stay letters, a triple (b,B,c) becomes B* b (B^⊛)^n c B*.
Regex template_regex(const Template& t, std::size_t n);
std::string template_to_string(const Template& t, const Alphabet& a);
/// (n+2)^|B| - 1.
std::size_t template_bound(std::size_t n, LetterSet letters);

struct TemplateWitness {
  Template units;
  Regex regex;
};

/// Unambiguous template T with w in K_{n,T} and |T| <= (n+2)^|alph(w)| - 1.
TemplateWitness bsigma1_template_witness(const Word& w, std::size_t n);

// ---- FO2 --------------------------------------------------------------------

struct Fo2Options {
  std::size_t max_pieces = 10000;
  /// Bound on the explicit sets S_B.
  std::size_t max_submonoid = 100000;
};

/// Cover of B* whose pieces K satisfy K ⊆ B* and tl·rho(K)·tr ∈ S.
Cover fo2_cover(const RatingMap& rho, const ImprintSet& s, LetterSet letters, const Elem& tl, const Elem& tr,
                const Fo2Options& opts = {});
/// Universal cover: B = A and tl = tr = 1_R.
Cover fo2_cover(const RatingMap& rho, const ImprintSet& s, const Fo2Options& opts = {});

// ---- assembly and verification ----------------------------------------------

/// Keeps the pieces meeting `target`.
Cover cover_restrict(const Cover& c, const Nfa& target);
/// Concatenated piece lists with `target` as the covered language.
Cover cover_union(const std::vector<Cover>& parts, const Nfa& target);

/// Down-closure of {rho(K) : K in c}.
ImprintSet cover_imprint(const Cover& c, const RatingMap& rho);

struct PieceReport {
  bool empty = false;
  /// Index of an `against` language the piece misses.
  std::optional<std::size_t> misses;
  /// Result of the class check, when it was run.
  std::optional<bool> class_ok;
};

struct CoverReport {
  bool covers_target = false;
  bool separating = false;
  bool class_ok = true;
  /// "checked", "by-construction, unchecked" or "off".
  std::string class_check;
  std::vector<PieceReport> pieces;
  std::optional<ImprintSet> imprint;

  bool ok() const noexcept { return covers_target && separating && class_ok; }
  nlohmann::json to_json() const;
};

CoverReport verify_cover(const Cover& c, const Nfa& target, const std::vector<Nfa>& against, bool class_check = true,
                         const RatingMap* rho = nullptr);

}  // namespace imprint
