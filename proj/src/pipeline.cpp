#include "imprint/pipeline.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <sstream>

#include "imprint/error.hpp"

namespace imprint {

using nlohmann::json;

// ---- instances ----------------------------------------------------------------

json PipelineOptions::to_json() const {
  json j{{"max_elements", max_elements}, {"max_states", max_states}, {"seed", seed},
         {"emit_cover", emit_cover},     {"verify", verify}};
  j["max_k"] = max_k ? json(*max_k) : json(nullptr);
  return j;
}

PipelineOptions PipelineOptions::from_json(const json& j) {
  PipelineOptions o;
  o.max_elements = j.value("max_elements", o.max_elements);
  o.max_states = j.value("max_states", o.max_states);
  o.seed = j.value("seed", o.seed);
  o.emit_cover = j.value("emit_cover", o.emit_cover);
  o.verify = j.value("verify", o.verify);
  if (j.contains("max_k") && !j.at("max_k").is_null()) o.max_k = j.at("max_k").get<std::size_t>();
  return o;
}

Nfa parse_language(const std::string& text, const Alphabet& a) {
  auto first = text.find_first_not_of(" \t\n");
  if (first != std::string::npos && text[first] == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      throw InputError(std::string("malformed automaton JSON: ") + e.what());
    }
    Nfa n = Nfa::from_json(j);
    if (!(n.alphabet() == a)) throw InputError("automaton alphabet differs from the instance alphabet");
    return n;
  }
  if (text == "%universal") return Nfa::universal(a);
  return regex_to_nfa(regex_parse(text, a), a);
}

std::vector<Nfa> Instance::against() const {
  std::vector<Nfa> out;
  for (const auto& t : against_text) out.push_back(parse_language(t, alphabet));
  return out;
}

namespace {

std::string language_text(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_object()) return j.dump();
  throw InputError("a language must be a regex string or an automaton object");
}

json language_json(const std::string& text) {
  auto first = text.find_first_not_of(" \t\n");
  if (first != std::string::npos && text[first] == '{') return json::parse(text);
  return text;
}

}  // namespace

Instance Instance::from_json(const json& j) {
  try {
    Instance inst;
    inst.alphabet = Alphabet(j.at("alphabet").get<std::string>());
    inst.cls = parse_class(j.at("class").get<std::string>());
    if (j.contains("target")) inst.target_text = language_text(j.at("target"));
    for (const auto& l : j.at("against")) inst.against_text.push_back(language_text(l));
    if (j.contains("options")) inst.options = PipelineOptions::from_json(j.at("options"));
    return inst;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed instance: ") + e.what());
  }
}

json Instance::to_json() const {
  json against_json = json::array();
  for (const auto& t : against_text) against_json.push_back(language_json(t));
  return json{{"alphabet", alphabet.symbols()},
              {"class", class_name(cls)},
              {"target", language_json(target_text)},
              {"against", std::move(against_json)},
              {"options", options.to_json()}};
}

IndexSets masks_to_sets(const std::vector<LangMask>& masks) {
  IndexSets out;
  for (LangMask m : masks) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < 64; ++i)
      if (m >> i & 1u) s.push_back(i);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---- verdicts -----------------------------------------------------------------

namespace {

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> optional_from(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

}  // namespace

json Verdict::to_json() const {
  json stats_json{{"rating_bits", stats.rating_bits},
                  {"generators", stats.generators},
                  {"iterations", stats.iterations},
                  {"monoid_size", optional_json(stats.monoid_size)},
                  {"wall_ms", stats.wall_ms}};
  return json{{"class", class_name(cls)},
              {"coverable", coverable},
              {"imprint", imprint},
              {"target_indexed", target_indexed},
              {"noncoverable_subsets", noncoverable},
              {"cover", cover ? *cover : json(nullptr)},
              {"verification", verification ? *verification : json(nullptr)},
              {"separator", optional_json(separator)},
              {"member", optional_json(member)},
              {"note", note},
              {"stats", std::move(stats_json)}};
}

Verdict Verdict::from_json(const json& j) {
  try {
    Verdict v;
    v.cls = parse_class(j.at("class").get<std::string>());
    v.coverable = j.at("coverable").get<bool>();
    v.imprint = j.at("imprint").get<IndexSets>();
    v.target_indexed = j.value("target_indexed", false);
    v.noncoverable = j.at("noncoverable_subsets").get<IndexSets>();
    if (j.contains("cover") && !j.at("cover").is_null()) v.cover = j.at("cover");
    if (j.contains("verification") && !j.at("verification").is_null()) v.verification = j.at("verification");
    v.separator = optional_from<std::string>(j, "separator");
    v.member = optional_from<bool>(j, "member");
    v.note = j.value("note", std::string{});
    const json& s = j.at("stats");
    v.stats.rating_bits = s.at("rating_bits").get<double>();
    v.stats.generators = s.at("generators").get<std::size_t>();
    v.stats.iterations = s.at("iterations").get<std::size_t>();
    v.stats.monoid_size = optional_from<std::size_t>(s, "monoid_size");
    v.stats.wall_ms = s.at("wall_ms").get<double>();
    return v;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed verdict: ") + e.what());
  }
}

// ---- cover ----------------------------------------------------------------------

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

SaturationOptions saturation_options(const PipelineOptions& o) {
  SaturationOptions s;
  s.max_elements = o.max_elements;
  return s;
}

std::vector<LanguageSpec> as_specs(const std::vector<Nfa>& ls) { return {ls.begin(), ls.end()}; }

// Synthesizes the cover of the target, or nullopt for decision-only classes.
std::optional<Cover> synthesize(const Instance& inst, const CoveringDecision& d, const Nfa& target,
                                const RecognizingMorphism* alpha) {
  const PipelineOptions& o = inst.options;
  switch (inst.cls) {
    case ClassId::AT: return cover_restrict(at_cover(inst.alphabet), target);
    case ClassId::BSigma1: {
      BSigma1Options b;
      b.max_k = o.max_k;
      b.max_states = std::min(o.max_states, kDefaultPieceStates);
      return cover_restrict(bsigma1_cover(d.used->tau, *d.imprint, b), target);
    }
    case ClassId::FO2: return cover_restrict(fo2_cover(d.used->tau, *d.imprint), target);
    case ClassId::Sigma1: {
      std::vector<Cover> parts;
      for (MonoidElem s : alpha->accepting_elements()) parts.push_back(sigma1_cover(alpha->morphism, {s}));
      Cover c = cover_union(parts, target);
      c.cls = ClassId::Sigma1;
      return c;
    }
    default: return std::nullopt;
  }
}

}  // namespace

Verdict cmd_cover(const Instance& inst) {
  const auto start = Clock::now();
  const Nfa target = inst.target();
  const std::vector<Nfa> against = inst.against();
  if (against.empty()) throw InputError("the multiset needs at least one language");
  Verdict v;
  v.cls = inst.cls;
  CoveringDecision d;
  std::optional<RecognizingMorphism> alpha;
  if (is_pointed(inst.cls)) {
    alpha = transition_monoid(target, 4096, inst.options.max_states);
    d = decide_pointed_covering(*alpha, rm_from_multiset(as_specs(against)), inst.cls,
                                saturation_options(inst.options));
    v.stats.monoid_size = alpha->morphism.size();
  } else if (inst.target_universal()) {
    d = decide_universal_covering(rm_from_multiset(as_specs(against)), inst.cls, std::nullopt,
                                  saturation_options(inst.options));
  } else {
    std::vector<Nfa> all{target};
    all.insert(all.end(), against.begin(), against.end());
    d = decide_universal_covering(rm_from_multiset(as_specs(all)), inst.cls, 0, saturation_options(inst.options));
    v.target_indexed = true;
  }
  v.coverable = d.coverable;
  v.imprint = masks_to_sets(d.pulled);
  v.noncoverable = masks_to_sets(d.noncoverable);
  v.stats.rating_bits = d.used->tau.R.log2_size();
  v.stats.generators = d.stats.generators;
  v.stats.iterations = d.stats.iterations;

  if (inst.options.emit_cover || inst.options.verify) {
    if (!synthesizable(inst.cls)) {
      v.note = "decision-only: no cover synthesizer for " + class_name(inst.cls);
    } else if (!v.coverable) {
      v.note = "not coverable: no separating cover exists";
    } else {
      Cover c = *synthesize(inst, d, target, alpha ? &*alpha : nullptr);
      CoverReport report = verify_cover(c, target, against);
      if (report.ok()) {
        if (inst.options.emit_cover) v.cover = c.to_json();
        if (inst.options.verify) v.verification = report.to_json();
      } else {
        v.note = "synthesized cover failed verification";
        v.verification = report.to_json();
      }
      if (!c.optimal) v.note += (v.note.empty() ? "" : "; ") + std::string("cover not proven optimal (k cap)");
    }
  }
  v.stats.wall_ms = elapsed_ms(start);
  return v;
}

// ---- separate / member ----------------------------------------------------------

namespace {

Verdict separate_impl(ClassId cls, const Alphabet& a, const std::string& l1_text, const Nfa& l1,
                      const std::string& l2_text, const Nfa& l2, PipelineOptions opts) {
  Instance inst;
  inst.alphabet = a;
  inst.cls = cls;
  inst.target_text = l1_text;
  inst.against_text = {l2_text};
  opts.emit_cover = synthesizable(cls);
  inst.options = opts;
  Verdict v = cmd_cover(inst);
  if (v.cover) {
    Cover c = Cover::from_json(*v.cover);
    Nfa u = Nfa::empty_language(a);
    std::optional<Regex> regex = Regex::empty();
    for (const auto& p : c.pieces) {
      u = nfa_union(u, p.nfa);
      if (regex && p.regex)
        regex = Regex::alt_simplified(*regex, *p.regex);
      else
        regex.reset();
    }
    if (!regex) regex = nfa_to_regex(u);
    if (nfa_includes(l1, u) && !nfa_intersects(u, l2)) {
      if (regex) v.separator = regex->to_string(a);
    } else {
      v.note += (v.note.empty() ? "" : "; ") + std::string("separator failed verification");
    }
  }
  return v;
}

}  // namespace

Verdict cmd_separate(ClassId cls, const Alphabet& a, const std::string& l1, const std::string& l2,
                     PipelineOptions opts) {
  return separate_impl(cls, a, l1, parse_language(l1, a), l2, parse_language(l2, a), opts);
}

Verdict cmd_member(ClassId cls, const Alphabet& a, const std::string& l, PipelineOptions opts) {
  Nfa n = parse_language(l, a);
  Nfa complement = nfa_trim(nfa_complement(n, opts.max_states));
  Verdict v = separate_impl(cls, a, l, n, complement.to_json().dump(), complement, opts);
  v.member = v.coverable;
  return v;
}

// ---- imprint dump ---------------------------------------------------------------

json ImprintDump::to_json() const {
  json j{{"class", class_name(cls)},
         {"languages", languages},
         {"imprint", imprint},
         {"raw_generators", raw_generators},
         {"rating_bits", rating_bits}};
  if (!chain.empty()) j["chain"] = chain;
  return j;
}

namespace {

CoveringDecision decide_multiset(ClassId cls, const Alphabet& a, const std::vector<Nfa>& langs,
                                 const PipelineOptions& opts) {
  Extension ext = rm_from_multiset(as_specs(langs));
  if (!is_pointed(cls)) return decide_universal_covering(ext, cls, std::nullopt, saturation_options(opts));
  auto alpha = transition_monoid(Nfa::universal(a));
  return decide_pointed_covering(alpha, ext, cls, saturation_options(opts));
}

bool sets_included(const std::vector<LangMask>& a, const std::vector<LangMask>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

ImprintDump cmd_imprint(ClassId cls, const Alphabet& a, const std::vector<std::string>& multiset,
                        const PipelineOptions& opts, bool chain) {
  if (multiset.empty()) throw InputError("the multiset needs at least one language");
  std::vector<Nfa> langs;
  for (const auto& t : multiset) langs.push_back(parse_language(t, a));
  CoveringDecision d = decide_multiset(cls, a, langs, opts);
  ImprintDump out;
  out.cls = cls;
  out.languages = langs.size();
  out.imprint = masks_to_sets(d.pulled);
  out.raw_generators = d.stats.generators;
  out.rating_bits = d.used->tau.R.log2_size();
  if (chain) {
    std::map<ClassId, std::vector<LangMask>> pulled;
    for (ClassId c : {ClassId::AT, ClassId::BSigma1, ClassId::FO2, ClassId::FO})
      pulled[c] = decide_multiset(c, a, langs, opts).pulled;
    out.chain["fo<=fo2"] = sets_included(pulled[ClassId::FO], pulled[ClassId::FO2]);
    out.chain["fo2<=at"] = sets_included(pulled[ClassId::FO2], pulled[ClassId::AT]);
    out.chain["fo<=bsigma1"] = sets_included(pulled[ClassId::FO], pulled[ClassId::BSigma1]);
    out.chain["bsigma1<=at"] = sets_included(pulled[ClassId::BSigma1], pulled[ClassId::AT]);
  }
  return out;
}

// ---- oracles --------------------------------------------------------------------

json cmd_oracle(const std::string& which, const Alphabet& a, const std::vector<std::string>& args,
                const PipelineOptions& opts) {
  if (which == "sigma1-sep") {
    if (args.size() != 2) throw InputError("sigma1-sep expects two languages");
    Nfa l1 = parse_language(args[0], a), l2 = parse_language(args[1], a);
    return json{{"oracle", which}, {"separable", !nfa_intersects(upward_closure(l1), l2)}};
  }
  if (which == "pt-k") {
    if (args.empty() || args.size() > 2) throw InputError("pt-k expects k and an optional language");
    std::size_t k = 0;
    try {
      k = std::stoul(args[0]);
    } catch (const std::exception&) {
      throw InputError("pt-k: k must be a natural number");
    }
    PieceAutomaton pa = pt_partition(k, a, std::min(opts.max_states, kDefaultPieceStates));
    json j{{"oracle", which}, {"k", k}, {"classes", pa.size()}};
    if (pa.size() <= 64) {
      json classes = json::array();
      for (State q = 0; q < pa.size(); ++q) {
        json pieces = json::array();
        for (const auto& w : pa.maximal_pieces(q)) pieces.push_back(a.format(w));
        classes.push_back(std::move(pieces));
      }
      j["maximal_pieces"] = std::move(classes);
    }
    if (args.size() == 2) j["member"] = is_pt_k(parse_language(args[1], a), k, opts.max_states);
    return j;
  }
  if (which == "at") {
    if (args.empty()) throw InputError("at expects a multiset of languages");
    std::vector<Nfa> langs;
    for (const auto& t : args) langs.push_back(parse_language(t, a));
    std::vector<LangMask> atoms;
    for (LetterSet b = 0; b <= a.full(); ++b) {
      Nfa atom = alphabet_languages(a, b).exact;
      LangMask m = 0;
      for (std::size_t i = 0; i < langs.size(); ++i)
        if (nfa_intersects(atom, langs[i])) m |= LangMask{1} << i;
      atoms.push_back(m);
    }
    return json{{"oracle", which}, {"imprint", masks_to_sets(mask_downset(atoms, opts.max_elements))}};
  }
  throw InputError("unknown oracle '" + which + "' (expected sigma1-sep, pt-k or at)");
}

// ---- text rendering ---------------------------------------------------------------

namespace {

std::string sets_text(const IndexSets& sets) {
  std::ostringstream out;
  out << "{";
  for (std::size_t i = 0; i < sets.size(); ++i) {
    out << (i ? ", " : "") << "{";
    for (std::size_t j = 0; j < sets[i].size(); ++j) out << (j ? "," : "") << sets[i][j];
    out << "}";
  }
  out << "}";
  return out.str();
}

}  // namespace

std::string verdict_text(const Verdict& v) {
  std::ostringstream out;
  out << "class: " << class_name(v.cls) << "\n";
  out << "coverable: " << (v.coverable ? "yes" : "no") << "\n";
  if (v.member) out << "member: " << (*v.member ? "yes" : "no") << "\n";
  out << "imprint" << (v.target_indexed ? " (0 = target, i+1 = against[i])" : "") << ": " << sets_text(v.imprint)
      << "\n";
  out << "noncoverable subsets: " << sets_text(v.noncoverable) << "\n";
  if (v.separator) out << "separator: " << *v.separator << "\n";
  if (v.cover) {
    out << "cover:\n";
    for (const auto& p : v.cover->at("pieces")) {
      out << "  " << (p.contains("regex") ? p.at("regex").get<std::string>() : std::string("<automaton>"));
      if (p.contains("label")) out << "    [" << p.at("label").get<std::string>() << "]";
      out << "\n";
    }
  }
  if (v.verification) out << "verification: " << v.verification->dump() << "\n";
  if (!v.note.empty()) out << "note: " << v.note << "\n";
  out << "stats: rating bits " << v.stats.rating_bits << ", generators " << v.stats.generators << ", iterations "
      << v.stats.iterations;
  if (v.stats.monoid_size) out << ", |M| " << *v.stats.monoid_size;
  out << ", " << v.stats.wall_ms << " ms\n";
  return out.str();
}

}  // namespace imprint
