#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "imprint/error.hpp"
#include "imprint/pipeline.hpp"

namespace {

using nlohmann::json;

constexpr int kExitDecided = 0;
constexpr int kExitInput = 2;
constexpr int kExitCap = 3;

struct Shared {
  std::string cls = "at";
  std::string alphabet;
  std::string target = "%universal";
  std::vector<std::string> against;
  std::string instance;
  bool emit_cover = false;
  bool verify = false;
  bool json_output = false;
  std::size_t max_elements = imprint::kDefaultMaxElements;
  std::optional<std::size_t> max_k;
  std::size_t max_states = imprint::kDefaultMaxDfaStates;
  std::uint64_t seed = 0;

  imprint::PipelineOptions options() const {
    imprint::PipelineOptions o;
    o.max_elements = max_elements;
    o.max_k = max_k;
    o.max_states = max_states;
    o.seed = seed;
    o.emit_cover = emit_cover;
    o.verify = verify;
    return o;
  }
};

void add_shared(CLI::App* app, Shared& s) {
  app->add_option("--class", s.cls, "at, bsigma1, fo2, fo, sigma1 or sigma2");
  app->add_option("--alphabet", s.alphabet, "alphabet symbols, e.g. abc");
  app->add_option("--target", s.target, "target language (regex, automaton JSON or %universal)");
  app->add_option("--against", s.against, "language of the multiset (repeatable)");
  app->add_flag("--emit-cover", s.emit_cover, "emit a verified cover when one is synthesizable");
  app->add_flag("--verify", s.verify, "attach the verification report");
  app->add_flag("--json", s.json_output, "print JSON instead of text");
  app->add_option("--max-elements", s.max_elements, "cap on imprint elements");
  app->add_option("--max-k", s.max_k, "deepest piece length for BSigma1 covers");
  app->add_option("--max-states", s.max_states, "cap on automaton states");
  app->add_option("--seed", s.seed, "recorded seed (the pipeline is deterministic)");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw imprint::InputError("cannot open '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// Language arguments of the form @file read an automaton or regex from a file.
std::string language_arg(const std::string& arg) {
  if (arg.size() > 1 && arg[0] == '@') return read_file(arg.substr(1));
  return arg;
}

std::vector<std::string> language_args(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  for (const auto& a : args) out.push_back(language_arg(a));
  return out;
}

imprint::Alphabet alphabet_of(const Shared& s) {
  if (s.alphabet.empty()) throw imprint::InputError("--alphabet is required");
  return imprint::Alphabet(s.alphabet);
}

void print_verdict(const imprint::Verdict& v, bool as_json) {
  if (as_json)
    std::cout << v.to_json().dump(2) << "\n";
  else
    std::cout << imprint::verdict_text(v);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Covering and separation for regular languages"};
  app.require_subcommand(1);

  Shared cover_args, separate_args, member_args, imprint_args, oracle_args;

  auto* cover = app.add_subcommand("cover", "decide (L, multiset) coverability and synthesize covers");
  add_shared(cover, cover_args);
  cover->add_option("--instance", cover_args.instance, "instance JSON file");

  std::vector<std::string> separate_langs;
  auto* separate = app.add_subcommand("separate", "decide whether L1 is separable from L2");
  add_shared(separate, separate_args);
  separate->add_option("languages", separate_langs, "L1 L2")->expected(2);

  std::string member_lang;
  auto* member = app.add_subcommand("member", "decide whether L belongs to the class");
  add_shared(member, member_args);
  member->add_option("language", member_lang, "L")->required();

  std::vector<std::string> imprint_langs;
  bool chain = false;
  auto* imprint_cmd = app.add_subcommand("imprint", "dump the optimal imprint of a multiset");
  add_shared(imprint_cmd, imprint_args);
  imprint_cmd->add_option("languages", imprint_langs, "languages of the multiset");
  imprint_cmd->add_flag("--chain", chain, "report inclusions between the universal classes");

  std::string which;
  std::vector<std::string> oracle_rest;
  auto* oracle = app.add_subcommand("oracle", "independent validators: sigma1-sep, pt-k, at");
  add_shared(oracle, oracle_args);
  oracle->add_option("which", which, "sigma1-sep, pt-k or at")->required();
  oracle->add_option("args", oracle_rest, "oracle arguments");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitDecided : kExitInput;
  }

  try {
    if (cover->parsed()) {
      imprint::Instance inst;
      if (!cover_args.instance.empty()) {
        json j;
        try {
          j = json::parse(read_file(cover_args.instance));
        } catch (const json::exception& e) {
          throw imprint::InputError(std::string("instance file: ") + e.what());
        }
        inst = imprint::Instance::from_json(j);
        if (cover->count("--emit-cover")) inst.options.emit_cover = true;
        if (cover->count("--verify")) inst.options.verify = true;
      } else {
        inst.alphabet = alphabet_of(cover_args);
        inst.cls = imprint::parse_class(cover_args.cls);
        inst.target_text = language_arg(cover_args.target);
        inst.against_text = language_args(cover_args.against);
        inst.options = cover_args.options();
      }
      print_verdict(imprint::cmd_cover(inst), cover_args.json_output);
    } else if (separate->parsed()) {
      auto langs = language_args(separate_langs);
      print_verdict(imprint::cmd_separate(imprint::parse_class(separate_args.cls), alphabet_of(separate_args),
                                          langs.at(0), langs.at(1), separate_args.options()),
                    separate_args.json_output);
    } else if (member->parsed()) {
      print_verdict(imprint::cmd_member(imprint::parse_class(member_args.cls), alphabet_of(member_args),
                                        language_arg(member_lang), member_args.options()),
                    member_args.json_output);
    } else if (imprint_cmd->parsed()) {
      auto langs = language_args(imprint_langs);
      for (const auto& l : language_args(imprint_args.against)) langs.push_back(l);
      auto dump = imprint::cmd_imprint(imprint::parse_class(imprint_args.cls), alphabet_of(imprint_args), langs,
                                       imprint_args.options(), chain);
      std::cout << dump.to_json().dump(imprint_args.json_output ? 2 : -1) << "\n";
    } else if (oracle->parsed()) {
      auto report =
          imprint::cmd_oracle(which, alphabet_of(oracle_args), language_args(oracle_rest), oracle_args.options());
      std::cout << report.dump(oracle_args.json_output ? 2 : -1) << "\n";
    }
  } catch (const imprint::CapExceeded& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kExitCap;
  } catch (const imprint::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitDecided;
}
