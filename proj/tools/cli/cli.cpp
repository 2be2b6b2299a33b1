#include "cli/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "cli/manifest.hpp"
#include "cli/presets.hpp"
#include "refgame/association.hpp"
#include "refgame/error.hpp"
#include "refgame/evaluation.hpp"
#include "refgame/format.hpp"
#include "refgame/lexicon.hpp"
#include "refgame/oed.hpp"
#include "refgame/records.hpp"
#include "refgame/rsa.hpp"
#include "refgame_cli/version.hpp"

namespace refgame::cli {

namespace {

// A column-labelled table rendered either as TSV with a "#" header line or as
// space-aligned text.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void write(std::ostream& out, bool aligned) const {
    if (!aligned) {
      out << "#";
      for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "\t" : " ") << columns[i];
      out << '\n';
      for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "\t" : "") << row[i];
        out << '\n';
      }
      return;
    }
    std::vector<std::size_t> widths(columns.size(), 0);
    for (std::size_t i = 0; i < columns.size(); ++i) widths[i] = columns[i].size();
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], row[i].size());
    }
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        out << std::left << std::setw(static_cast<int>(widths[i] + 2)) << cells[i];
      }
      out << '\n';
    };
    line(columns);
    for (const auto& row : rows) line(row);
  }
};

// Shared flags. Output is buffered and written once the command succeeds.
struct Common {
  std::string lexicon;
  std::vector<std::string> matrices;
  std::string output;
  std::string manifest;
  std::string format = "tsv";
};

void add_common(CLI::App* app, Common& common, bool with_matrices) {
  app->add_option("--lexicon", common.lexicon, "Lexicon file ([nouns]/[adjectives] sections)");
  if (with_matrices) {
    app->add_option("--matrix", common.matrices,
                    "Normalized association table, as label=path or path (repeatable)");
  }
  app->add_option("-o,--output", common.output, "Write the result here instead of stdout");
  app->add_option("--manifest", common.manifest,
                  "Run manifest path (default: <output>.manifest.json when --output is set)");
  app->add_option("--format", common.format, "Table format")
      ->check(CLI::IsMember({"tsv", "table"}));
}

bool aligned(const Common& common) { return common.format == "table"; }

void emit(const Common& common, const RunManifest& manifest, const std::string& text,
          std::ostream& out) {
  if (common.output.empty()) {
    out << text;
  } else {
    std::ofstream file(common.output, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot write " + common.output);
    file << text;
  }
  std::string manifest_path = common.manifest;
  if (manifest_path.empty() && !common.output.empty()) manifest_path = common.output + ".manifest.json";
  if (!manifest_path.empty()) {
    std::ofstream file(manifest_path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot write " + manifest_path);
    file << manifest.to_json();
  }
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

unsigned thread_limit() {
  const char* value = std::getenv("REFGAME_THREADS");
  if (!value || !*value) return 0;
  try {
    std::size_t used = 0;
    const auto parsed = std::stoul(value, &used);
    if (used != std::string(value).size()) throw std::invalid_argument("trailing text");
    return static_cast<unsigned>(parsed);
  } catch (const std::exception&) {
    throw UsageError(std::string("REFGAME_THREADS must be a non-negative integer, got '") +
                     value + "'");
  }
}

std::shared_ptr<const Lexicon> optional_lexicon(const Common& common, RunManifest& manifest) {
  manifest.set("lexicon", common.lexicon);
  if (common.lexicon.empty()) return nullptr;
  manifest.add_input(common.lexicon);
  return std::make_shared<const Lexicon>(load_lexicon(std::filesystem::path(common.lexicon)));
}

AssociationSet load_matrices(const Common& common, RunManifest& manifest) {
  auto lexicon = optional_lexicon(common, manifest);
  if (common.matrices.empty()) throw UsageError("at least one --matrix is required");
  AssociationSet set(lexicon);
  std::vector<std::string> resolved;
  for (const auto& entry : common.matrices) {
    std::string label;
    std::string path = entry;
    if (const auto eq = entry.find('='); eq != std::string::npos) {
      label = entry.substr(0, eq);
      path = entry.substr(eq + 1);
      if (label.empty()) throw UsageError("empty label in --matrix " + entry);
    }
    auto in = open_input(path);
    manifest.add_input(path);
    auto table = read_normalized(in, set.lexicon());
    if (label.empty()) label = std::string(to_string(table.metric));
    resolved.push_back(label + "=" + path);
    set.add(label, std::move(table));
  }
  manifest.set("matrix", join(resolved, ","));
  return set;
}

// Lexicon from --lexicon, else from the first --matrix file.
std::shared_ptr<const Lexicon> resolve_lexicon(const Common& common, RunManifest& manifest) {
  if (!common.lexicon.empty() || common.matrices.empty()) {
    auto lexicon = optional_lexicon(common, manifest);
    if (!lexicon) throw UsageError("--lexicon or --matrix is required to resolve words");
    return lexicon;
  }
  return load_matrices(common, manifest).lexicon();
}

std::vector<ModelSpec> parse_models(const std::vector<std::string>& texts, Role role) {
  std::vector<ModelSpec> out;
  for (const auto& text : texts) out.push_back(parse_model_spec(text, role));
  return out;
}

template <typename Reader>
auto read_records(const std::string& path, RunManifest& manifest, Reader reader) {
  auto in = open_input(path);
  manifest.add_input(path);
  return reader(in);
}

std::string fixed3(double value) {
  std::ostringstream text;
  text << std::fixed << std::setprecision(3) << value;
  return text.str();
}

// ---------------------------------------------------------------- ingest

struct IngestOptions {
  Common common;
  std::string kind;
  std::string input;
};

std::string cmd_ingest(const IngestOptions& options, RunManifest& manifest, std::ostream& err) {
  if (options.common.lexicon.empty()) throw UsageError("ingest requires --lexicon");
  auto lexicon = optional_lexicon(options.common, manifest);
  manifest.set("kind", options.kind);
  manifest.set("input", options.input);
  auto in = open_input(options.input);
  manifest.add_input(options.input);

  IngestWarnings warnings;
  AssociationMatrix matrix;
  if (options.kind == "counts") {
    auto counts = load_counts(in, *lexicon, std::filesystem::path(options.input).stem().string(),
                              &warnings);
    matrix = bigram_association(counts, lexicon);
  } else if (options.kind == "embeddings") {
    matrix = cosine_association(load_embeddings(in, *lexicon, &warnings), lexicon);
  } else if (options.kind == "relatedness") {
    matrix = relatedness_association(load_relatedness(in, *lexicon, &warnings), lexicon);
  } else {
    matrix = topic_association(load_topics(in, *lexicon, &warnings), lexicon);
  }
  if (warnings.ignored_words > 0) {
    err << "refgame: ignored " << warnings.ignored_words << " words not in the lexicon\n";
  }
  std::ostringstream text;
  write_association(text, matrix);
  return text.str();
}

// ---------------------------------------------------------------- normalize

struct NormalizeOptions {
  Common common;
  std::string input;
};

std::string cmd_normalize(const NormalizeOptions& options, RunManifest& manifest) {
  auto lexicon = optional_lexicon(options.common, manifest);
  manifest.set("input", options.input);
  auto in = open_input(options.input);
  manifest.add_input(options.input);
  const auto raw = read_association(in, lexicon);
  std::ostringstream text;
  write_association(text, quantile_normalize(raw));
  return text.str();
}

// ---------------------------------------------------------------- predict

struct PredictOptions {
  Common common;
  std::string configs;
  std::vector<std::string> models;
};

std::string cmd_predict(const PredictOptions& options, RunManifest& manifest) {
  const auto set = load_matrices(options.common, manifest);
  const auto& lexicon = *set.lexicon();
  manifest.set("config", options.configs);
  manifest.set("model", join(options.models, ","));
  const auto configs = read_records(options.configs, manifest, [&](std::istream& in) {
    return read_configurations(in, lexicon);
  });
  // validate every spec before any output
  parse_models(options.models, Role::listener);

  Table table{{"config", "role", "model", "answer", "probability"}, {}};
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const auto& config = configs[i];
    for (const auto& text : options.models) {
      const auto spec = parse_model_spec(text, config.role());
      const auto prediction = predict(set, config, spec);
      for (std::size_t y = 0; y < prediction.support.size(); ++y) {
        table.rows.push_back({std::to_string(i), std::string(to_string(config.role())),
                              to_string(spec),
                              answer_label(prediction.support[y], config.scenario(), lexicon),
                              format_double(prediction.probs[y])});
      }
    }
  }
  std::ostringstream text;
  table.write(text, aligned(options.common));
  return text.str();
}

// ---------------------------------------------------------------- oed

struct OedOptions {
  Common common;
  std::vector<std::string> models;
  std::string preset;
  std::size_t nouns = 3;
  std::size_t adjectives = 4;
  std::size_t iterations = 100000;
  std::string mode;
  std::uint64_t seed = kDefaultSeed;
  std::size_t top = 500;
  bool filter = false;
  std::size_t min_word_diff = 2;
  std::size_t max_word_occurrence = 20;

  CLI::Option* nouns_flag = nullptr;
  CLI::Option* adjectives_flag = nullptr;
  CLI::Option* iterations_flag = nullptr;
  CLI::Option* top_flag = nullptr;
  CLI::Option* min_diff_flag = nullptr;
  CLI::Option* cap_flag = nullptr;
};

std::string cmd_oed(const OedOptions& options, RunManifest& manifest) {
  SearchSettings settings;
  settings.nouns = options.nouns;
  settings.adjectives = options.adjectives;
  settings.iterations = options.iterations;
  settings.top_k = options.top;
  settings.seed = options.seed;
  settings.threads = thread_limit();
  FilterSettings filter{options.min_word_diff, options.max_word_occurrence};
  bool apply_filter = options.filter;
  std::vector<std::string> model_texts = options.models;
  std::optional<SearchMode> mode;

  if (!options.preset.empty()) {
    const auto& preset = find_preset(options.preset);
    if (!preset.mode) {
      throw UsageError("preset " + preset.name +
                       " uses heuristic designs without OED; use `refgame scenarios --preset " +
                       preset.name + "`");
    }
    mode = preset.mode;
    if (!options.nouns_flag->count()) settings.nouns = preset.nouns;
    if (!options.adjectives_flag->count()) settings.adjectives = preset.adjectives;
    if (!options.iterations_flag->count()) settings.iterations = preset.iterations;
    if (!options.top_flag->count()) settings.top_k = preset.top_k;
    if (!options.min_diff_flag->count()) filter.min_word_difference = preset.filter.min_word_difference;
    if (!options.cap_flag->count()) filter.max_word_occurrence = preset.filter.max_word_occurrence;
    if (model_texts.empty()) model_texts = preset.models;
    apply_filter = true;
  }
  if (!options.mode.empty()) mode = parse_search_mode(options.mode);
  if (!mode) throw UsageError("oed requires --mode or --preset");
  if (model_texts.empty()) throw UsageError("oed requires --model or --preset");
  settings.mode = *mode;

  const auto set = load_matrices(options.common, manifest);
  const auto models = parse_models(model_texts, Role::listener);

  manifest.set("preset", options.preset);
  manifest.set("model", join(model_texts, ","));
  manifest.set("nouns", std::to_string(settings.nouns));
  manifest.set("adjectives", std::to_string(settings.adjectives));
  manifest.set("iterations", std::to_string(settings.iterations));
  manifest.set("mode", std::string(to_string(settings.mode)));
  manifest.set("top", std::to_string(settings.top_k));
  manifest.set("filter", apply_filter ? "true" : "false");
  manifest.set("min-word-diff", std::to_string(filter.min_word_difference));
  manifest.set("max-word-occurrence", std::to_string(filter.max_word_occurrence));
  manifest.set_seed(settings.seed);

  auto candidates = monte_carlo_search(set, models, settings);
  if (apply_filter) candidates = filter_candidates(candidates, filter);
  std::ostringstream text;
  write_candidates(text, candidates, *set.lexicon());
  return text.str();
}

// ---------------------------------------------------------------- filter

struct FilterOptions {
  Common common;
  std::string input;
  std::size_t min_word_diff = 2;
  std::size_t max_word_occurrence = 20;
};

std::string cmd_filter(const FilterOptions& options, RunManifest& manifest) {
  const auto lexicon = resolve_lexicon(options.common, manifest);
  manifest.set("input", options.input);
  manifest.set("min-word-diff", std::to_string(options.min_word_diff));
  manifest.set("max-word-occurrence", std::to_string(options.max_word_occurrence));
  const auto candidates = read_records(options.input, manifest, [&](std::istream& in) {
    return read_candidates(in, *lexicon);
  });
  const auto kept =
      filter_candidates(candidates, {options.min_word_diff, options.max_word_occurrence});
  std::ostringstream text;
  write_candidates(text, kept, *lexicon);
  return text.str();
}

// ---------------------------------------------------------------- scenarios

struct ScenariosOptions {
  Common common;
  std::string preset;
  std::size_t nouns = 5;
  std::size_t adjectives = 8;
  std::size_t count = 100;
  std::uint64_t seed = kDefaultSeed;
  CLI::Option* nouns_flag = nullptr;
  CLI::Option* adjectives_flag = nullptr;
};

std::string cmd_scenarios(const ScenariosOptions& options, RunManifest& manifest) {
  std::size_t nouns = options.nouns;
  std::size_t adjectives = options.adjectives;
  if (!options.preset.empty()) {
    const auto& preset = find_preset(options.preset);
    if (!options.nouns_flag->count()) nouns = preset.nouns;
    if (!options.adjectives_flag->count()) adjectives = preset.adjectives;
  }
  const auto lexicon = resolve_lexicon(options.common, manifest);
  manifest.set("preset", options.preset);
  manifest.set("nouns", std::to_string(nouns));
  manifest.set("adjectives", std::to_string(adjectives));
  manifest.set("count", std::to_string(options.count));
  manifest.set_seed(options.seed);
  const auto scenarios = sample_scenarios(*lexicon, nouns, adjectives, options.count, options.seed);
  std::ostringstream text;
  write_scenarios(text, scenarios, *lexicon);
  return text.str();
}

// ---------------------------------------------------------------- score

struct ScoreOptions {
  Common common;
  std::string responses;
  std::vector<std::string> models;
};

std::string cmd_score(const ScoreOptions& options, RunManifest& manifest) {
  if (options.models.empty()) throw UsageError("score requires at least one --model");
  parse_models(options.models, Role::listener);
  const auto set = load_matrices(options.common, manifest);
  manifest.set("responses", options.responses);
  manifest.set("model", join(options.models, ","));
  const auto responses = read_records(options.responses, manifest, [&](std::istream& in) {
    return read_responses(in, *set.lexicon());
  });

  struct Row {
    Role role;
    std::string model;
    ScoreReport report;
  };
  std::vector<Row> rows;
  for (auto role : {Role::listener, Role::speaker}) {
    std::vector<ResponseRecord> group;
    for (const auto& r : responses) {
      if (r.configuration.role() == role) group.push_back(r);
    }
    if (group.size() < 2) continue;
    for (const auto& text : options.models) {
      const auto spec = parse_model_spec(text, role);
      rows.push_back({role, to_string(spec), score_model(set, spec, group)});
    }
  }
  if (rows.empty()) throw DomainError("need at least two response records for one role");

  std::ostringstream text;
  if (!aligned(options.common)) {
    Table table{{"role", "model", "n", "top_answer_mean", "top_answer_sem",
                 "rank_correlation_mean", "rank_correlation_sem"},
                {}};
    for (const auto& row : rows) {
      const auto& top = row.report.top_answer_summary;
      const auto& rank = row.report.rank_correlation_summary;
      table.rows.push_back({std::string(to_string(row.role)), row.model, std::to_string(top.n),
                            format_double(top.mean), format_double(top.sem),
                            format_double(rank.mean), format_double(rank.sem)});
    }
    table.write(text, false);
    return text.str();
  }

  std::size_t width = 12;
  for (const auto& row : rows) width = std::max(width, row.model.size() + 4);
  auto pad = [&](const std::string& s, std::size_t w) {
    return s + std::string(w > s.size() ? w - s.size() : 1, ' ');
  };
  text << pad("", width) << pad("Top answer", 22) << "Rank correlation\n";
  text << pad("", width) << pad("Mean", 9) << pad("SEM", 13) << pad("Mean", 9) << "SEM\n";
  std::optional<Role> current;
  for (const auto& row : rows) {
    if (current != row.role) {
      text << (row.role == Role::listener ? "Listener" : "Speaker") << '\n';
      current = row.role;
    }
    const auto& top = row.report.top_answer_summary;
    const auto& rank = row.report.rank_correlation_summary;
    text << pad("  " + row.model, width) << pad(fixed3(top.mean), 9)
         << pad("± " + fixed3(top.sem), 13) << pad(fixed3(rank.mean), 9) << "± "
         << fixed3(rank.sem) << '\n';
  }
  return text.str();
}

// ---------------------------------------------------------------- compare

struct CompareOptions {
  Common common;
  std::string configs;
  std::vector<std::string> models;
};

std::string cmd_compare(const CompareOptions& options, RunManifest& manifest) {
  const auto set = load_matrices(options.common, manifest);
  const auto labels = set.labels();
  std::ostringstream text;
  const bool pretty = aligned(options.common);

  Table metrics{{"metric"}, {}};
  for (const auto& label : labels) metrics.columns.push_back(label);
  for (const auto& a : labels) {
    std::vector<std::string> row{a};
    for (const auto& b : labels) {
      row.push_back(format_double(metric_rank_correlation(set.at(a), set.at(b))));
    }
    metrics.rows.push_back(std::move(row));
  }
  metrics.write(text, pretty);

  if (options.configs.empty()) return text.str();
  manifest.set("configs", options.configs);
  const auto configs = read_records(options.configs, manifest, [&](std::istream& in) {
    return read_configurations(in, *set.lexicon());
  });
  std::vector<std::string> model_texts = options.models;
  if (model_texts.empty()) {
    for (const auto& label : labels) model_texts.push_back(label + ":literal");
  }
  manifest.set("model", join(model_texts, ","));

  for (auto role : {Role::listener, Role::speaker}) {
    std::vector<Configuration> group;
    for (const auto& c : configs) {
      if (c.role() == role) group.push_back(c);
    }
    if (group.empty()) continue;
    const auto specs = parse_models(model_texts, role);
    const std::string role_name(to_string(role));
    Table top{{"top_answer:" + role_name}, {}};
    Table rank{{"rank_correlation:" + role_name}, {}};
    for (const auto& spec : specs) {
      top.columns.push_back(to_string(spec));
      rank.columns.push_back(to_string(spec));
    }
    for (const auto& a : specs) {
      std::vector<std::string> top_row{to_string(a)};
      std::vector<std::string> rank_row{to_string(a)};
      for (const auto& b : specs) {
        const auto agreement = model_agreement(a, b, set, group);
        top_row.push_back(format_double(agreement.top_answer));
        rank_row.push_back(format_double(agreement.rank_correlation));
      }
      top.rows.push_back(std::move(top_row));
      rank.rows.push_back(std::move(rank_row));
    }
    text << '\n';
    top.write(text, pretty);
    text << '\n';
    rank.write(text, pretty);
  }
  return text.str();
}

// ---------------------------------------------------------------- simulate

struct SimulateOptions {
  Common common;
  std::string scenarios;
  std::string responses;
  std::string speaker;
  std::string listener;
};

std::string cmd_simulate(const SimulateOptions& options, RunManifest& manifest) {
  GameplayResult result;
  std::shared_ptr<const Lexicon> lexicon;
  if (!options.responses.empty()) {
    lexicon = resolve_lexicon(options.common, manifest);
    manifest.set("responses", options.responses);
    const auto responses = read_records(options.responses, manifest, [&](std::istream& in) {
      return read_responses(in, *lexicon);
    });
    result = empirical_gameplay(responses);
  } else {
    if (options.scenarios.empty()) throw UsageError("simulate requires --scenarios or --responses");
    if (options.speaker.empty() || options.listener.empty()) {
      throw UsageError("simulate requires --speaker and --listener model specs");
    }
    const auto speaker = parse_model_spec(options.speaker, Role::speaker);
    const auto listener = parse_model_spec(options.listener, Role::listener);
    AssociationSet set;
    if (options.common.matrices.empty()) {
      // uniform agents need no association table
      lexicon = optional_lexicon(options.common, manifest);
      if (!lexicon) throw UsageError("--lexicon or --matrix is required to resolve words");
      set = AssociationSet(lexicon);
    } else {
      set = load_matrices(options.common, manifest);
      lexicon = set.lexicon();
    }
    manifest.set("scenarios", options.scenarios);
    manifest.set("speaker", to_string(speaker));
    manifest.set("listener", to_string(listener));
    const auto scenarios = read_records(options.scenarios, manifest, [&](std::istream& in) {
      return read_scenarios(in, *lexicon);
    });
    result = simulate_gameplay(set, scenarios, speaker, listener);
  }

  Table per_config{{"scenario_nouns", "adjectives", "target_pair", "success"}, {}};
  for (std::size_t i = 0; i < result.configurations.size(); ++i) {
    const auto& config = result.configurations[i];
    const auto& scenario = config.scenario();
    std::vector<std::string> nouns;
    std::vector<std::string> adjectives;
    for (auto n : scenario.nouns) nouns.push_back(lexicon->nouns()[n]);
    for (auto a : scenario.adjectives) adjectives.push_back(lexicon->adjectives()[a]);
    per_config.rows.push_back({join(nouns, ","), join(adjectives, ","),
                               answer_label(Answer{config.target()}, scenario, *lexicon),
                               format_double(result.per_configuration[i])});
  }
  Table summary{{"configurations", "scenarios", "mean_success", "sem"},
                {{std::to_string(result.summary.n), std::to_string(result.per_scenario.size()),
                  format_double(result.summary.mean), format_double(result.summary.sem)}}};
  std::ostringstream text;
  per_config.write(text, aligned(options.common));
  text << '\n';
  summary.write(text, aligned(options.common));
  return text.str();
}

// ---------------------------------------------------------------- sparsity

struct SparsityOptions {
  Common common;
  std::string configs;
};

std::string cmd_sparsity(const SparsityOptions& options, RunManifest& manifest) {
  const auto set = load_matrices(options.common, manifest);
  manifest.set("configs", options.configs);
  const auto scenarios = read_records(options.configs, manifest, [&](std::istream& in) {
    return read_scenarios(in, *set.lexicon());
  });
  std::vector<Configuration> configs;
  for (const auto& scenario : scenarios) configs.push_back(Configuration::listener(scenario, 0));
  Table table{{"matrix", "referenced_cells", "sparsity"}, {}};
  for (const auto& label : set.labels()) {
    std::size_t cells = 0;
    for (const auto& s : scenarios) cells += s.nouns.size() * s.adjectives.size();
    table.rows.push_back(
        {label, std::to_string(cells), format_double(sparsity_report(set.at(label), configs))});
  }
  std::ostringstream text;
  table.write(text, aligned(options.common));
  return text.str();
}

// ---------------------------------------------------------------- confidence

struct ConfidenceOptions {
  Common common;
  std::string responses;
};

std::string cmd_confidence(const ConfidenceOptions& options, RunManifest& manifest) {
  const auto lexicon = resolve_lexicon(options.common, manifest);
  manifest.set("responses", options.responses);
  const auto responses = read_records(options.responses, manifest, [&](std::istream& in) {
    return read_responses(in, *lexicon);
  });
  std::vector<double> speaker;
  std::vector<double> listener;
  std::vector<double> means;
  for (const auto& r : responses) {
    auto& group = r.configuration.role() == Role::speaker ? speaker : listener;
    for (int c : r.confidences) group.push_back(c);
    means.push_back(r.mean_confidence());
  }
  const auto test = confidence_ttest(speaker, listener);
  const auto retained = confidence_filter(means);

  const bool pretty = aligned(options.common);
  Table comparison{{"comparison", "n_speaker", "n_listener", "t", "df", "p"},
                   {{"speaker-vs-listener", std::to_string(speaker.size()),
                     std::to_string(listener.size()), format_double(test.t),
                     format_double(test.degrees_of_freedom), format_double(test.p)}}};
  Table kept{{"record", "role", "mean_confidence"}, {}};
  for (auto i : retained) {
    kept.rows.push_back({std::to_string(i), std::string(to_string(responses[i].configuration.role())),
                         format_double(means[i])});
  }
  std::ostringstream text;
  comparison.write(text, pretty);
  text << '\n';
  kept.write(text, pretty);
  return text.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Associative reference game toolkit: association metrics, RSA agents, "
               "optimal design search and evaluation",
               "refgame"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  IngestOptions ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Build a raw association matrix from a resource file");
  add_common(ingest_cmd, ingest.common, false);
  ingest_cmd->add_option("--kind", ingest.kind, "Resource kind")
      ->required()
      ->check(CLI::IsMember({"counts", "embeddings", "relatedness", "topics"}));
  ingest_cmd->add_option("-i,--input", ingest.input, "Resource file")->required();

  NormalizeOptions normalize;
  auto* normalize_cmd = app.add_subcommand("normalize", "Quantile-normalize a raw association matrix");
  add_common(normalize_cmd, normalize.common, false);
  normalize_cmd->add_option("-i,--input", normalize.input, "Raw association matrix")->required();

  PredictOptions predict_opts;
  auto* predict_cmd = app.add_subcommand("predict", "Print model distributions for configurations");
  add_common(predict_cmd, predict_opts.common, true);
  predict_cmd->add_option("--config", predict_opts.configs, "Configuration records (JSON lines)")
      ->required();
  predict_cmd->add_option("--model", predict_opts.models, "metric:depth[:alpha] (repeatable)")
      ->required();

  OedOptions oed;
  auto* oed_cmd = app.add_subcommand("oed", "Monte Carlo search for model-discriminating designs");
  add_common(oed_cmd, oed.common, true);
  oed_cmd->add_option("--model", oed.models, "metric:depth[:alpha] (repeatable)");
  oed_cmd->add_option("--preset", oed.preset, "exp2-speaker, exp2-listener, exp3 or exp4");
  oed.nouns_flag = oed_cmd->add_option("--nouns", oed.nouns, "Nouns per scenario");
  oed.adjectives_flag = oed_cmd->add_option("--adjectives", oed.adjectives, "Adjectives per scenario");
  oed.iterations_flag = oed_cmd->add_option("--iterations", oed.iterations, "Sampling iterations");
  oed_cmd->add_option("--mode", oed.mode, "separate-speaker, separate-listener or joint");
  oed_cmd->add_option("--seed", oed.seed, "Random seed");
  oed.top_flag = oed_cmd->add_option("--top", oed.top, "Candidates to retain");
  oed_cmd->add_flag("--filter", oed.filter, "Apply word-difference and occurrence filtering");
  oed.min_diff_flag = oed_cmd->add_option("--min-word-diff", oed.min_word_diff,
                                          "Minimum words by which kept designs differ");
  oed.cap_flag = oed_cmd->add_option("--max-word-occurrence", oed.max_word_occurrence,
                                     "Maximum designs any word may appear in");

  FilterOptions filter;
  auto* filter_cmd = app.add_subcommand("filter", "Filter a candidate list");
  add_common(filter_cmd, filter.common, true);
  filter_cmd->add_option("-i,--input", filter.input, "Candidate records (JSON lines)")->required();
  filter_cmd->add_option("--min-word-diff", filter.min_word_diff, "Minimum word difference");
  filter_cmd->add_option("--max-word-occurrence", filter.max_word_occurrence, "Occurrence cap");

  ScenariosOptions scenarios;
  auto* scenarios_cmd = app.add_subcommand("scenarios", "Sample uniform random scenarios");
  add_common(scenarios_cmd, scenarios.common, true);
  scenarios_cmd->add_option("--preset", scenarios.preset, "Take the shape from a preset");
  scenarios.nouns_flag = scenarios_cmd->add_option("--nouns", scenarios.nouns, "Nouns per scenario");
  scenarios.adjectives_flag =
      scenarios_cmd->add_option("--adjectives", scenarios.adjectives, "Adjectives per scenario");
  scenarios_cmd->add_option("--count", scenarios.count, "Number of scenarios");
  scenarios_cmd->add_option("--seed", scenarios.seed, "Random seed");

  ScoreOptions score;
  auto* score_cmd = app.add_subcommand("score", "Score models against response data");
  add_common(score_cmd, score.common, true);
  score_cmd->add_option("--responses", score.responses, "Response records (JSON lines)")->required();
  score_cmd->add_option("--model", score.models, "metric:depth[:alpha] (repeatable)");

  CompareOptions compare;
  auto* compare_cmd = app.add_subcommand("compare", "Cross-metric and cross-model agreement matrices");
  add_common(compare_cmd, compare.common, true);
  compare_cmd->add_option("--configs", compare.configs, "Configuration records (JSON lines)");
  compare_cmd->add_option("--model", compare.models, "Models to compare (default: literal per matrix)");

  SimulateOptions simulate;
  auto* simulate_cmd = app.add_subcommand("simulate", "Average speaker-listener success");
  add_common(simulate_cmd, simulate.common, true);
  simulate_cmd->add_option("--scenarios", simulate.scenarios, "Scenario records (JSON lines)");
  simulate_cmd->add_option("--responses", simulate.responses,
                           "Estimate from response frequencies instead of models");
  simulate_cmd->add_option("--speaker", simulate.speaker, "Speaker model spec");
  simulate_cmd->add_option("--listener", simulate.listener, "Listener model spec");

  SparsityOptions sparsity;
  auto* sparsity_cmd = app.add_subcommand("sparsity", "Fraction of floored cells used by designs");
  add_common(sparsity_cmd, sparsity.common, true);
  sparsity_cmd->add_option("--configs", sparsity.configs, "Configuration, candidate or scenario records")
      ->required();

  ConfidenceOptions confidence;
  auto* confidence_cmd = app.add_subcommand(
      "confidence", "Speaker vs listener confidence t-test and above-mean filtering");
  add_common(confidence_cmd, confidence.common, true);
  confidence_cmd->add_option("--responses", confidence.responses, "Response records (JSON lines)")
      ->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsageError;
  }

  auto* chosen = app.get_subcommands().front();
  RunManifest manifest(chosen->get_name());
  try {
    const Common* common = nullptr;
    std::string text;
    if (chosen == ingest_cmd) {
      common = &ingest.common;
      text = cmd_ingest(ingest, manifest, err);
    } else if (chosen == normalize_cmd) {
      common = &normalize.common;
      text = cmd_normalize(normalize, manifest);
    } else if (chosen == predict_cmd) {
      common = &predict_opts.common;
      text = cmd_predict(predict_opts, manifest);
    } else if (chosen == oed_cmd) {
      common = &oed.common;
      text = cmd_oed(oed, manifest);
    } else if (chosen == filter_cmd) {
      common = &filter.common;
      text = cmd_filter(filter, manifest);
    } else if (chosen == scenarios_cmd) {
      common = &scenarios.common;
      text = cmd_scenarios(scenarios, manifest);
    } else if (chosen == score_cmd) {
      common = &score.common;
      text = cmd_score(score, manifest);
    } else if (chosen == compare_cmd) {
      common = &compare.common;
      text = cmd_compare(compare, manifest);
    } else if (chosen == simulate_cmd) {
      common = &simulate.common;
      text = cmd_simulate(simulate, manifest);
    } else if (chosen == sparsity_cmd) {
      common = &sparsity.common;
      text = cmd_sparsity(sparsity, manifest);
    } else {
      common = &confidence.common;
      text = cmd_confidence(confidence, manifest);
    }
    manifest.set("format", common->format);
    manifest.set("output", common->output);
    emit(*common, manifest, text, out);
    return kExitOk;
  } catch (const UsageError& e) {
    err << "refgame " << chosen->get_name() << ": " << e.what() << '\n';
    return kExitUsageError;
  } catch (const std::invalid_argument& e) {
    err << "refgame " << chosen->get_name() << ": " << e.what() << '\n';
    return kExitUsageError;
  } catch (const IoError& e) {
    err << "refgame " << chosen->get_name() << ": " << e.what() << '\n';
    return kExitUsageError;
  } catch (const std::exception& e) {
    err << "refgame " << chosen->get_name() << ": " << e.what() << '\n';
    return kExitDomainError;
  }
}

}  // namespace refgame::cli
