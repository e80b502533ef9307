// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "imprint/cover.hpp"
#include "imprint/error.hpp"
#include "imprint/pipeline.hpp"
#include "support.hpp"

using namespace imprint;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Structural violations collected from every saturation run below.
std::vector<std::string> structural;

void audit(const ImprintSet& s, const RatingMap& rho, ClassId cls, const std::string& where) {
  for (const auto& v : check_imprint(s, rho, cls)) structural.push_back(where + ": " + v);
}

void audit(const PointedImprintSet& p, const MonoidMorphism& alpha, const RatingMap& rho, ClassId cls,
           const std::string& where) {
  for (const auto& v : check_pointed_imprint(p, alpha, rho, cls)) structural.push_back(where + ": " + v);
}

std::vector<LanguageSpec> specs(const std::vector<Nfa>& ls) { return {ls.begin(), ls.end()}; }

// Target first, then one or two languages to cover against.
struct Multiset {
  Nfa target;
  std::vector<Nfa> against;
};

std::vector<Multiset> random_instances(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  const Alphabet ab("ab");
  std::vector<Multiset> out;
  for (std::size_t i = 0; i < count; ++i) {
    Multiset m{testsupport::random_nfa(rng, ab, 3), {}};
    std::size_t n = 1 + rng() % 2;
    for (std::size_t j = 0; j < n; ++j) m.against.push_back(testsupport::random_nfa(rng, ab, 3));
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<Nfa> with_target(const Multiset& m) {
  std::vector<Nfa> all{m.target};
  all.insert(all.end(), m.against.begin(), m.against.end());
  return all;
}

IndexSets sets(std::vector<std::vector<std::size_t>> s) {
  std::sort(s.begin(), s.end());
  return s;
}

Outcome criterion1() {
  const Alphabet a("abc");
  ImprintDump d = cmd_imprint(ClassId::AT, a, {"(ab)+", "b(ab)+", "c(ac)+"});
  IndexSets expected = sets({{0, 1}, {0}, {1}, {2}, {}});
  Outcome o{d.imprint == expected, ""};
  o.detail = std::to_string(d.imprint.size()) + " subsets";
  return o;
}

Outcome criterion2() {
  const std::string target = "a+|b+", l1 = "b+|c+", l2 = "c+|a+";
  auto run = [&](std::vector<std::string> against) {
    Instance inst;
    inst.alphabet = Alphabet("abc");
    inst.cls = ClassId::AT;
    inst.target_text = target;
    inst.against_text = std::move(against);
    inst.options.emit_cover = true;
    inst.options.verify = true;
    return cmd_cover(inst);
  };
  Verdict only1 = run({l1}), only2 = run({l2}), both = run({l1, l2});
  bool cover_ok = both.cover && both.verification && both.verification->at("covers_target").get<bool>() &&
                  both.verification->at("separating").get<bool>();
  Outcome o;
  o.pass = !only1.coverable && !only2.coverable && both.coverable && cover_ok;
  o.detail = std::string("{L1}: ") + (only1.coverable ? "coverable" : "not coverable") +
             ", {L2}: " + (only2.coverable ? "coverable" : "not coverable") +
             ", {L1,L2}: " + (both.coverable ? "coverable" : "not coverable") +
             (cover_ok ? ", cover verified" : ", no verified cover");
  return o;
}

Outcome criterion3() {
  std::mt19937_64 rng(3);
  const Alphabet ab("ab");
  std::size_t mismatches = 0, separable = 0;
  for (int i = 0; i < 50; ++i) {
    Regex r1 = testsupport::random_regex(rng, 2, 3), r2 = testsupport::random_regex(rng, 2, 3);
    Nfa up = regex_to_nfa(r1, ab);
    for (State q = 0; q < up.state_count(); ++q)
      for (Symbol s = 0; s < 2; ++s) up.add_transition(q, s, q);
    bool expected = !nfa_intersects(up, regex_to_nfa(r2, ab));
    Verdict v = cmd_separate(ClassId::Sigma1, ab, r1.to_string(ab), r2.to_string(ab));
    if (v.coverable != expected) ++mismatches;
    separable += expected;
  }
  return {mismatches == 0, std::to_string(mismatches) + " mismatches, " + std::to_string(separable) +
                               "/50 separable"};
}

Outcome criterion4(const std::vector<Multiset>& instances) {
  std::size_t failures = 0, coverable = 0;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& m = instances[i];
    Extension ext = rm_from_multiset(specs(with_target(m)));
    CoveringDecision d = decide_universal_covering(ext, ClassId::BSigma1, 0);
    audit(*d.imprint, d.used->tau, ClassId::BSigma1, "bsigma1 #" + std::to_string(i));
    Cover c = cover_restrict(bsigma1_cover(d.used->tau, *d.imprint), m.target);
    CoverReport r = verify_cover(c, m.target, m.against);
    bool ok = r.covers_target && r.class_ok && r.class_check == "checked" && r.separating == d.coverable;
    if (d.coverable) {
      ++coverable;
      ok = ok && r.ok() && c.optimal;
    }
    failures += !ok;
  }
  return {failures == 0, std::to_string(coverable) + "/" + std::to_string(instances.size()) +
                             " coverable, " + std::to_string(failures) + " failures"};
}

bool masks_subset(const std::vector<LangMask>& a, const std::vector<LangMask>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

Outcome criterion5(const std::vector<Multiset>& instances) {
  std::size_t violations = 0;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& m = instances[i];
    Extension ext = rm_from_multiset(specs(with_target(m)));
    std::map<ClassId, std::vector<LangMask>> pulled;
    for (ClassId c : {ClassId::AT, ClassId::BSigma1, ClassId::FO2, ClassId::FO}) {
      CoveringDecision d = decide_universal_covering(ext, c, 0);
      audit(*d.imprint, d.used->tau, c, class_name(c) + " #" + std::to_string(i));
      pulled[c] = d.pulled;
    }
    violations += !masks_subset(pulled[ClassId::FO], pulled[ClassId::FO2]);
    violations += !masks_subset(pulled[ClassId::FO2], pulled[ClassId::AT]);
    violations += !masks_subset(pulled[ClassId::FO], pulled[ClassId::BSigma1]);
    violations += !masks_subset(pulled[ClassId::BSigma1], pulled[ClassId::AT]);

    RecognizingMorphism alpha = transition_monoid(m.target);
    Extension against = rm_from_multiset(specs(m.against));
    CoveringDecision s1 = decide_pointed_covering(alpha, against, ClassId::Sigma1);
    CoveringDecision s2 = decide_pointed_covering(alpha, against, ClassId::Sigma2);
    audit(*s1.pointed, alpha.morphism, s1.used->tau, ClassId::Sigma1, "sigma1 #" + std::to_string(i));
    audit(*s2.pointed, alpha.morphism, s2.used->tau, ClassId::Sigma2, "sigma2 #" + std::to_string(i));
    for (std::size_t s = 0; s < alpha.morphism.size(); ++s) {
      std::vector<LangMask> p1, p2;
      for (const auto& x : s1.pointed->at(s).maximal()) p1.push_back(s1.used->flags(x));
      for (const auto& x : s2.pointed->at(s).maximal()) p2.push_back(s2.used->flags(x));
      violations += !masks_subset(mask_downset(p2, 64), mask_downset(p1, 64));
    }
  }
  return {violations == 0, std::to_string(violations) + " violations over " + std::to_string(instances.size()) +
                               " instances"};
}

Outcome criterion7() {
  std::mt19937_64 rng(7);
  const Alphabet ab("ab");
  std::size_t done = 0, mismatches = 0, attempts = 0;
  while (done < 15 && attempts < 1000) {
    ++attempts;
    std::vector<Nfa> ls;
    std::size_t n = 1 + rng() % 2;
    for (std::size_t j = 0; j < n; ++j) ls.push_back(testsupport::random_nfa(rng, ab, 2));
    Extension e = rm_augment_extension(rm_from_multiset(specs(ls)));
    if (std::exp2(e.tau.R.log2_size()) > 5000) continue;
    ImprintSet sat = saturate_universal(e.tau, ClassId::FO2);
    audit(sat, e.tau, ClassId::FO2, "fo2 cover #" + std::to_string(done));
    Cover c = fo2_cover(e.tau, sat);
    mismatches += !(cover_imprint(c, e.tau) == sat);
    ++done;
  }
  return {done == 15 && mismatches == 0,
          std::to_string(done) + " instances, " + std::to_string(mismatches) + " mismatches"};
}

Outcome criterion8() {
  std::mt19937_64 rng(8);
  const Alphabet ab("ab");
  std::size_t mismatches = 0;
  for (int i = 0; i < 20; ++i) {
    Nfa l = regex_to_nfa(testsupport::random_regex(rng, 2, 3), ab);
    // direct: the flags map sends B^⊛ to 1 exactly when it meets L
    std::vector<LangMask> direct;
    for (LetterSet b = 0; b <= ab.full(); ++b)
      direct.push_back(nfa_intersects(l, alphabet_languages(ab, b).exact) ? 1 : 0);
    Extension ext = rm_from_multiset({l});
    ImprintSet at = at_imprint(ext.tau);
    audit(at, ext.tau, ClassId::AT, "at extension #" + std::to_string(i));
    std::vector<LangMask> via;
    for (const auto& x : at.maximal()) via.push_back(ext.flags(x));
    mismatches += mask_downset(via, 64) != mask_downset(direct, 64);
  }
  return {mismatches == 0, std::to_string(mismatches) + " mismatches"};
}

Outcome criterion9() {
  std::mt19937_64 rng(9);
  std::size_t violations = 0;
  for (int i = 0; i < 100; ++i) {
    std::size_t letters = 1 + rng() % 2, n = 1 + rng() % 3;
    Word w = testsupport::random_word(rng, letters, 20);
    TemplateWitness t = bsigma1_template_witness(w, n);
    bool ok = template_unambiguous(t.units) && testsupport::matches(t.regex, w) &&
              t.units.size() <= template_bound(n, letters_of(w));
    violations += !ok;
  }
  return {violations == 0, std::to_string(violations) + " violations"};
}

}  // namespace

int main() {
  using Clock = std::chrono::steady_clock;
  const auto instances = random_instances(4, 30);
  struct Criterion {
    int id;
    const char* name;
    double limit_s;  // 0 when untimed
    std::function<Outcome()> run;
  };
  std::vector<Criterion> criteria{
      {1, "AT imprint of (ab)+, b(ab)+, c(ac)+", 1, criterion1},
      {2, "pairwise-intersection covering under AT", 1, criterion2},
      {3, "SIGMA1 separation against the upward-closure oracle", 30, criterion3},
      {4, "BSIGMA1 covers verified on 30 random instances", 300, [&] { return criterion4(instances); }},
      {5, "imprint inclusions between classes", 0, [&] { return criterion5(instances); }},
      {7, "FO2 cover imprint equals the saturated set", 300, criterion7},
      {8, "AT imprint through the extension", 0, criterion8},
      {9, "BSIGMA1 template witnesses", 0, criterion9},
  };
  bool all = true;
  std::vector<std::string> lines(10);
  for (auto& c : criteria) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (c.limit_s > 0 && secs >= c.limit_s) {
      o.pass = false;
      o.detail += ", over the time limit";
    }
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.3f s", secs);
    lines[c.id] = std::string(o.pass ? "PASS" : "FAIL") + " criterion " + std::to_string(c.id) + ": " + c.name +
                  " (" + o.detail + "; " + timing + ")";
    all = all && o.pass;
  }
  bool structural_ok = structural.empty();
  lines[6] = std::string(structural_ok ? "PASS" : "FAIL") +
             " criterion 6: structural checks on every imprint above (" + std::to_string(structural.size()) +
             " violations" + (structural_ok ? "" : ", first: " + structural.front()) + ")";
  all = all && structural_ok;
  for (int i = 1; i <= 9; ++i) std::puts(lines[i].c_str());
  return all ? 0 : 1;
}
