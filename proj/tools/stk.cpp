/*  Copyright 2026 The stk authors.

    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        https://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License. */

// stk — command-line front end for the surface-clue toolkit.
//
// Subcommands: tokenize, tag, chunk, catalog check, match, annotate,
// relevance, stats. The environment variable STK_CONFIG may name an options
// file of `key value` lines (catalog, lexicon, rules, skip, all-matches,
// inline, out, open-mark, close-mark); command-line flags win over it.
//
// Exit codes: 0 clean, 1 partial failure (some inputs failed or lint found
// problems), 2 configuration error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stk/stk.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitClean = 0;
constexpr int kExitPartial = 1;
constexpr int kExitConfig = 2;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::map<std::string, std::string> load_env_config() {
  std::map<std::string, std::string> cfg;
  const char* path = std::getenv("STK_CONFIG");
  if (!path || !*path) return cfg;
  std::string text;
  try {
    text = stk::read_file(path);
  } catch (const stk::Error& e) {
    throw ConfigError(std::string("STK_CONFIG: ") + e.what());
  }
  static const std::vector<std::string> known = {"catalog",     "lexicon", "rules",
                                                 "skip",        "out",     "all-matches",
                                                 "inline",      "open-mark", "close-mark",
                                                 "judgments"};
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string line = text.substr(pos, eol == std::string::npos ? eol : eol - pos);
    pos = eol == std::string::npos ? text.size() + 1 : eol + 1;
    ++lineno;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
      line.pop_back();
    std::size_t b = 0;
    while (b < line.size() && (line[b] == ' ' || line[b] == '\t')) ++b;
    if (b == line.size() || line[b] == '#') continue;
    std::size_t e = b;
    while (e < line.size() && line[e] != ' ' && line[e] != '\t') ++e;
    const std::string key = line.substr(b, e - b);
    while (e < line.size() && (line[e] == ' ' || line[e] == '\t')) ++e;
    const std::string value = line.substr(e);
    bool ok = false;
    for (const std::string& k : known) ok = ok || k == key;
    if (!ok)
      throw ConfigError("STK_CONFIG line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    cfg[key] = value;
  }
  return cfg;
}

// Flag value if given on the command line, else the config value, else empty.
std::string pick(const CLI::Option* opt, const std::string& flag_value,
                 const std::map<std::string, std::string>& cfg, const std::string& key) {
  if (opt && opt->count() > 0) return flag_value;
  const auto it = cfg.find(key);
  return it == cfg.end() ? flag_value : it->second;
}

bool pick_flag(const CLI::Option* opt, bool flag_value,
               const std::map<std::string, std::string>& cfg, const std::string& key) {
  if (opt && opt->count() > 0) return flag_value;
  const auto it = cfg.find(key);
  if (it == cfg.end()) return flag_value;
  const std::string& v = it->second;
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("STK_CONFIG: '" + key + "' wants true/false, got '" + v + "'");
}

stk::SkipSet parse_skip_list(const std::string& csv) {
  stk::SkipSet skip = stk::SkipSet::nothing();
  std::size_t p = 0;
  while (p <= csv.size()) {
    std::size_t comma = csv.find(',', p);
    if (comma == std::string::npos) comma = csv.size();
    std::string item = csv.substr(p, comma - p);
    while (!item.empty() && item.front() == ' ') item.erase(item.begin());
    while (!item.empty() && item.back() == ' ') item.pop_back();
    if (!item.empty() && !stk::add_skip_item(skip, item))
      throw ConfigError("unknown skip item '" + item + "'");
    p = comma + 1;
  }
  return skip;
}

void write_output(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ConfigError("cannot write output file: " + out_path);
  out << content;
}

// Shared pipeline inputs for tag/chunk/match/annotate.
struct PipelineInputs {
  stk::Lexicon lexicon;
  std::vector<stk::TransformationRule> rules;
  bool have_lexicon = false;
};

PipelineInputs load_pipeline_inputs(const std::string& lexicon_path, const std::string& rules_path,
                                    bool required) {
  PipelineInputs in;
  if (lexicon_path.empty()) {
    if (required) throw ConfigError("missing --lexicon (or 'lexicon' in STK_CONFIG)");
    return in;
  }
  try {
    in.lexicon = stk::load_lexicon(lexicon_path);
    if (!rules_path.empty()) in.rules = stk::load_rules(rules_path);
  } catch (const stk::Error& e) {
    throw ConfigError(e.what());
  }
  in.have_lexicon = true;
  return in;
}

std::vector<std::vector<stk::TaggedToken>> tag_document(const std::string& text,
                                                        const PipelineInputs& in) {
  std::vector<std::vector<stk::TaggedToken>> sentences;
  for (const stk::Sentence& s : stk::tokenize_document(text).sentences)
    sentences.push_back(stk::tag(s.tokens, in.lexicon, in.rules));
  return sentences;
}

int run_tokenize(const std::vector<std::string>& files) {
  bool failed = false;
  for (const std::string& path : files) {
    try {
      const std::string text = stk::read_file(path);
      std::string out;
      for (const stk::Sentence& s : stk::tokenize_document(text).sentences)
        for (const stk::Token& t : s.tokens) {
          out += std::to_string(t.span.start) + '\t' + std::to_string(t.span.length()) + '\t';
          out += stk::to_string(t.kind);
          out += '\t' + t.surface + '\n';
        }
      std::cout << out;
    } catch (const stk::Error& e) {
      std::cerr << "stk: " << e.what() << "\n";
      failed = true;
    }
  }
  return failed ? kExitPartial : kExitClean;
}

int run_tag(const std::vector<std::string>& files, const PipelineInputs& in) {
  bool failed = false;
  bool first = true;
  for (const std::string& path : files) {
    try {
      const std::string text = stk::read_file(path);
      const auto sentences = tag_document(text, in);
      if (!first) std::cout << '\n';
      first = false;
      std::cout << stk::format_tagged_document(sentences);
    } catch (const stk::Error& e) {
      std::cerr << "stk: " << e.what() << "\n";
      failed = true;
    }
  }
  return failed ? kExitPartial : kExitClean;
}

int run_chunk(const std::vector<std::string>& files, const PipelineInputs& in, bool tagged_input) {
  bool failed = false;
  bool first = true;
  for (const std::string& path : files) {
    try {
      const std::string text = stk::read_file(path);
      const auto sentences = tagged_input ? stk::parse_tagged(text) : tag_document(text, in);
      for (const auto& sentence : sentences) {
        if (!first) std::cout << '\n';
        first = false;
        for (const stk::Unit& u : stk::chunk(sentence)) {
          std::string line(stk::to_string(u.kind));
          line += '\t' + u.head().token.surface;
          for (const stk::TaggedToken& tt : u.tokens) line += '\t' + tt.token.surface;
          std::cout << line << '\n';
        }
      }
    } catch (const stk::Error& e) {
      std::cerr << "stk: " << e.what() << "\n";
      failed = true;
    }
  }
  return failed ? kExitPartial : kExitClean;
}

int run_catalog_check(const std::string& path, bool strict) {
  std::string text;
  try {
    text = stk::read_file(path);
  } catch (const stk::Error& e) {
    std::cerr << "stk: " << e.what() << "\n";
    return kExitConfig;
  }
  std::vector<stk::Diagnostic> warnings;
  try {
    stk::parse_catalog(text, &warnings);
  } catch (const stk::ParseError& e) {
    std::cout << path << ": error: " << e.what() << "\n";
    return kExitPartial;
  }
  for (const stk::Diagnostic& d : warnings) std::cout << path << ": " << stk::to_string(d) << "\n";
  if (warnings.empty()) std::cout << path << ": ok\n";
  return strict && !warnings.empty() ? kExitPartial : kExitClean;
}

struct MatchArgs {
  std::string catalog_path;
  std::string lexicon_path;
  std::string rules_path;
  std::string skip_list;
  bool skip_given = false;
  bool all_matches = false;
  bool tagged_input = false;
  bool inline_marks = false;
  std::string out_path;
  std::string open_mark;
  std::string close_mark;
  std::vector<std::string> files;
};

int run_match(const MatchArgs& a, bool with_inline) {
  if (a.catalog_path.empty()) throw ConfigError("missing --catalog (or 'catalog' in STK_CONFIG)");
  std::vector<stk::Diagnostic> warnings;
  stk::Catalog catalog;
  try {
    catalog = stk::load_catalog(a.catalog_path, &warnings);
  } catch (const stk::Error& e) {
    throw ConfigError(e.what());
  }
  for (const stk::Diagnostic& d : warnings)
    std::cerr << a.catalog_path << ": " << stk::to_string(d) << "\n";

  stk::AnnotateOptions options;
  options.all_matches = a.all_matches;
  if (a.skip_given) options.skip = parse_skip_list(a.skip_list);
  if (!a.open_mark.empty()) options.delims.open = a.open_mark;
  if (!a.close_mark.empty()) options.delims.close = a.close_mark;

  const PipelineInputs in =
      load_pipeline_inputs(a.lexicon_path, a.rules_path, /*required=*/!a.tagged_input);

  const bool inline_mode = with_inline && a.inline_marks;
  if (inline_mode && a.files.size() > 1) {
    if (a.out_path.empty())
      throw ConfigError("--inline with several inputs needs --out DIRECTORY");
    std::error_code ec;
    fs::create_directories(a.out_path, ec);
    if (ec) throw ConfigError("cannot create output directory: " + a.out_path);
  }

  bool failed = false;
  std::vector<stk::AnnotationRecord> all_records;
  for (const std::string& path : a.files) {
    try {
      const std::string raw = stk::read_file(path);
      std::vector<std::vector<stk::TaggedToken>> sentences =
          a.tagged_input ? stk::parse_tagged(raw) : tag_document(raw, in);
      const std::string text = a.tagged_input ? stk::reconstruct_text(sentences) : raw;
      auto records = stk::annotate_tagged(path, sentences, catalog, options);
      if (inline_mode) {
        std::vector<std::string> mark_warnings;
        const std::string marked = stk::mark_inline(text, records, options.delims, &mark_warnings);
        for (const std::string& w : mark_warnings) std::cerr << "stk: " << path << ": " << w << "\n";
        if (a.files.size() > 1) {
          const fs::path out = fs::path(a.out_path) / (fs::path(path).filename().string() + ".marked");
          std::ofstream f(out, std::ios::binary);
          if (!f) throw stk::Error("cannot write " + out.string());
          f << marked;
        } else {
          write_output(a.out_path, marked);
        }
      }
      all_records.insert(all_records.end(), records.begin(), records.end());
    } catch (const stk::Error& e) {
      std::cerr << "stk: " << path << ": " << e.what() << "\n";
      failed = true;
    }
  }
  if (!inline_mode) {
    std::stable_sort(all_records.begin(), all_records.end(),
                     [](const stk::AnnotationRecord& x, const stk::AnnotationRecord& y) {
                       if (x.doc_id != y.doc_id) return x.doc_id < y.doc_id;
                       if (x.sentence_index != y.sentence_index)
                         return x.sentence_index < y.sentence_index;
                       return x.match_span.start < y.match_span.start;
                     });
    write_output(a.out_path, stk::format_standoff(all_records));
  }
  return failed ? kExitPartial : kExitClean;
}

int run_relevance(const std::string& catalog_path, const std::string& judgments_path) {
  if (catalog_path.empty()) throw ConfigError("missing --catalog (or 'catalog' in STK_CONFIG)");
  stk::Catalog catalog;
  std::vector<stk::Diagnostic> warnings;
  std::vector<stk::Judgment> judgments;
  try {
    catalog = stk::load_catalog(catalog_path, &warnings);
    if (!judgments_path.empty()) judgments = stk::load_judgments(judgments_path);
  } catch (const stk::Error& e) {
    throw ConfigError(e.what());
  }

  std::cout << "name\toccurrences\tconv\tnew\tctx\ttotal\tratio\twarnings\n";
  for (const stk::ClueDefinition& clue : catalog.clues) {
    stk::RelevanceRecord record;
    std::string note = "-";
    const stk::RelevanceRecord computed = stk::compute_relevance(judgments, clue.name);
    if (computed.occurrences > 0) {
      record = computed;  // fresh judgments win over recorded history
    } else if (clue.relevance) {
      record = *clue.relevance;
      const long long sum = record.conventional + record.new_metaphors + record.metaphoric_contexts;
      if (sum != record.total) note = "sum-mismatch";
    }
    const auto ratio = stk::relevance_ratio(record);
    std::cout << clue.name << '\t' << record.occurrences << '\t' << record.conventional << '\t'
              << record.new_metaphors << '\t' << record.metaphoric_contexts << '\t' << record.total
              << '\t' << (ratio ? ratio->render() : "n/a") << '\t' << note << "\n";
  }
  return kExitClean;
}

int run_stats(const std::string& records_path) {
  std::string text;
  try {
    if (records_path.empty() || records_path == "-") {
      std::ostringstream ss;
      ss << std::cin.rdbuf();
      text = std::move(ss).str();
    } else {
      text = stk::read_file(records_path);
    }
    const auto records = stk::parse_standoff(text);
    std::cout << "clue\tdocuments\toccurrences\tmin_per_doc\tmax_per_doc\n";
    for (const stk::ClueStats& s : stk::corpus_stats(records))
      std::cout << s.clue_name << '\t' << s.documents << '\t' << s.occurrences << '\t'
                << s.min_per_document << '\t' << s.max_per_document << "\n";
  } catch (const stk::Error& e) {
    std::cerr << "stk: " << e.what() << "\n";
    return kExitPartial;
  }
  return kExitClean;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"surface-clue toolkit: spot metaphor/analogy clues in text"};
  app.require_subcommand(1);

  // tokenize
  auto* cmd_tokenize = app.add_subcommand("tokenize", "emit offset/length/kind/surface per token");
  std::vector<std::string> tokenize_files;
  cmd_tokenize->add_option("files", tokenize_files, "input text files")->required();

  // tag
  auto* cmd_tag = app.add_subcommand("tag", "emit tagged tokens (surface<TAB>tag<TAB>lemma)");
  std::string tag_lexicon, tag_rules;
  std::vector<std::string> tag_files;
  auto* tag_lex_opt = cmd_tag->add_option("--lexicon", tag_lexicon, "lexicon file");
  auto* tag_rules_opt = cmd_tag->add_option("--rules", tag_rules, "transformation rules file");
  cmd_tag->add_option("files", tag_files, "input text files")->required();

  // chunk
  auto* cmd_chunk = app.add_subcommand("chunk", "emit one unit per line (KIND, head, tokens)");
  std::string chunk_lexicon, chunk_rules;
  bool chunk_tagged = false;
  std::vector<std::string> chunk_files;
  auto* chunk_lex_opt = cmd_chunk->add_option("--lexicon", chunk_lexicon, "lexicon file");
  auto* chunk_rules_opt = cmd_chunk->add_option("--rules", chunk_rules, "transformation rules file");
  cmd_chunk->add_flag("--tagged", chunk_tagged, "inputs are pre-tagged files");
  cmd_chunk->add_option("files", chunk_files, "input files")->required();

  // catalog check
  auto* cmd_catalog = app.add_subcommand("catalog", "catalog utilities");
  cmd_catalog->require_subcommand(1);
  auto* cmd_check = cmd_catalog->add_subcommand("check", "validate a catalog file");
  std::string check_file;
  bool check_strict = false;
  cmd_check->add_option("file", check_file, "catalog file")->required();
  cmd_check->add_flag("--strict", check_strict, "treat warnings as failures");

  // match / annotate share their options
  MatchArgs match_args, annotate_args;
  CLI::Option *match_cat_opt, *match_lex_opt, *match_rules_opt, *match_skip_opt, *match_all_opt,
      *match_out_opt;
  CLI::Option *ann_cat_opt, *ann_lex_opt, *ann_rules_opt, *ann_skip_opt, *ann_all_opt,
      *ann_out_opt, *ann_inline_opt, *ann_open_opt, *ann_close_opt;

  auto* cmd_match = app.add_subcommand("match", "emit standoff records for catalog matches");
  match_cat_opt = cmd_match->add_option("--catalog", match_args.catalog_path, "clue catalog file");
  match_lex_opt = cmd_match->add_option("--lexicon", match_args.lexicon_path, "lexicon file");
  match_rules_opt = cmd_match->add_option("--rules", match_args.rules_path, "rules file");
  match_skip_opt = cmd_match->add_option("--skip", match_args.skip_list,
                                         "comma-separated skip set (overrides catalog)");
  match_all_opt = cmd_match->add_flag("--all-matches", match_args.all_matches,
                                      "report the best candidate at every start unit");
  cmd_match->add_flag("--tagged", match_args.tagged_input, "inputs are pre-tagged files");
  match_out_opt = cmd_match->add_option("--out", match_args.out_path, "output file");
  cmd_match->add_option("files", match_args.files, "input files")->required();

  auto* cmd_annotate = app.add_subcommand("annotate", "full pipeline; standoff or inline marks");
  ann_cat_opt = cmd_annotate->add_option("--catalog", annotate_args.catalog_path, "clue catalog file");
  ann_lex_opt = cmd_annotate->add_option("--lexicon", annotate_args.lexicon_path, "lexicon file");
  ann_rules_opt = cmd_annotate->add_option("--rules", annotate_args.rules_path, "rules file");
  ann_skip_opt = cmd_annotate->add_option("--skip", annotate_args.skip_list,
                                          "comma-separated skip set (overrides catalog)");
  ann_all_opt = cmd_annotate->add_flag("--all-matches", annotate_args.all_matches,
                                       "report the best candidate at every start unit");
  cmd_annotate->add_flag("--tagged", annotate_args.tagged_input, "inputs are pre-tagged files");
  ann_inline_opt = cmd_annotate->add_flag("--inline", annotate_args.inline_marks,
                                          "emit marked text instead of standoff records");
  ann_out_opt = cmd_annotate->add_option("--out", annotate_args.out_path,
                                         "output file (directory with --inline and several inputs)");
  ann_open_opt = cmd_annotate->add_option("--open-mark", annotate_args.open_mark, "open delimiter");
  ann_close_opt = cmd_annotate->add_option("--close-mark", annotate_args.close_mark, "close delimiter");
  cmd_annotate->add_option("files", annotate_args.files, "input files")->required();

  // relevance
  auto* cmd_relevance = app.add_subcommand("relevance", "per-clue relevance table");
  std::string rel_catalog, rel_judgments;
  auto* rel_cat_opt = cmd_relevance->add_option("--catalog", rel_catalog, "clue catalog file");
  auto* rel_jud_opt = cmd_relevance->add_option("--judgments", rel_judgments, "judgment file");

  // stats
  auto* cmd_stats = app.add_subcommand("stats", "per-clue corpus statistics from standoff records");
  std::string stats_file;
  cmd_stats->add_option("file", stats_file, "standoff records file ('-' or absent: stdin)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitClean : kExitConfig;
  }

  try {
    const auto cfg = load_env_config();

    if (*cmd_tokenize) return run_tokenize(tokenize_files);

    if (*cmd_tag) {
      const PipelineInputs in = load_pipeline_inputs(pick(tag_lex_opt, tag_lexicon, cfg, "lexicon"),
                                                     pick(tag_rules_opt, tag_rules, cfg, "rules"),
                                                     /*required=*/true);
      return run_tag(tag_files, in);
    }

    if (*cmd_chunk) {
      const PipelineInputs in =
          load_pipeline_inputs(pick(chunk_lex_opt, chunk_lexicon, cfg, "lexicon"),
                               pick(chunk_rules_opt, chunk_rules, cfg, "rules"),
                               /*required=*/!chunk_tagged);
      return run_chunk(chunk_files, in, chunk_tagged);
    }

    if (*cmd_check) return run_catalog_check(check_file, check_strict);

    if (*cmd_match) {
      MatchArgs a = match_args;
      a.catalog_path = pick(match_cat_opt, a.catalog_path, cfg, "catalog");
      a.lexicon_path = pick(match_lex_opt, a.lexicon_path, cfg, "lexicon");
      a.rules_path = pick(match_rules_opt, a.rules_path, cfg, "rules");
      a.skip_list = pick(match_skip_opt, a.skip_list, cfg, "skip");
      a.skip_given = match_skip_opt->count() > 0 || cfg.contains("skip");
      a.all_matches = pick_flag(match_all_opt, a.all_matches, cfg, "all-matches");
      a.out_path = pick(match_out_opt, a.out_path, cfg, "out");
      return run_match(a, /*with_inline=*/false);
    }

    if (*cmd_annotate) {
      MatchArgs a = annotate_args;
      a.catalog_path = pick(ann_cat_opt, a.catalog_path, cfg, "catalog");
      a.lexicon_path = pick(ann_lex_opt, a.lexicon_path, cfg, "lexicon");
      a.rules_path = pick(ann_rules_opt, a.rules_path, cfg, "rules");
      a.skip_list = pick(ann_skip_opt, a.skip_list, cfg, "skip");
      a.skip_given = ann_skip_opt->count() > 0 || cfg.contains("skip");
      a.all_matches = pick_flag(ann_all_opt, a.all_matches, cfg, "all-matches");
      a.inline_marks = pick_flag(ann_inline_opt, a.inline_marks, cfg, "inline");
      a.out_path = pick(ann_out_opt, a.out_path, cfg, "out");
      a.open_mark = pick(ann_open_opt, a.open_mark, cfg, "open-mark");
      a.close_mark = pick(ann_close_opt, a.close_mark, cfg, "close-mark");
      return run_match(a, /*with_inline=*/true);
    }

    if (*cmd_relevance)
      return run_relevance(pick(rel_cat_opt, rel_catalog, cfg, "catalog"),
                           pick(rel_jud_opt, rel_judgments, cfg, "judgments"));

    if (*cmd_stats) return run_stats(stats_file);
  } catch (const ConfigError& e) {
    std::cerr << "stk: " << e.what() << "\n";
    return kExitConfig;
  } catch (const stk::Error& e) {
    std::cerr << "stk: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitClean;
}
