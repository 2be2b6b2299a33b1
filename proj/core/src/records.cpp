#include "refgame/records.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "refgame/error.hpp"

namespace refgame {

using nlohmann::json;

namespace {

std::size_t noun_of(const Lexicon& lexicon, const std::string& word) {
  const auto index = lexicon.noun_index(to_lower(word));
  if (!index) throw DomainError("unknown noun '" + word + "'");
  return *index;
}

std::size_t adjective_of(const Lexicon& lexicon, const std::string& word) {
  const auto index = lexicon.adjective_index(to_lower(word));
  if (!index) throw DomainError("unknown adjective '" + word + "'");
  return *index;
}

std::size_t position_in(const std::vector<std::size_t>& list, std::size_t index,
                        const std::string& word) {
  const auto it = std::find(list.begin(), list.end(), index);
  if (it == list.end()) throw DomainError("'" + word + "' is not part of the scenario");
  return static_cast<std::size_t>(it - list.begin());
}

json scenario_json(const Scenario& scenario, const Lexicon& lexicon) {
  json nouns = json::array();
  json adjectives = json::array();
  for (auto n : scenario.nouns) nouns.push_back(lexicon.nouns().at(n));
  for (auto a : scenario.adjectives) adjectives.push_back(lexicon.adjectives().at(a));
  return json{{"nouns", nouns}, {"adjectives", adjectives}};
}

Scenario scenario_from(const json& node, const Lexicon& lexicon) {
  Scenario scenario;
  for (const auto& word : node.at("nouns")) {
    scenario.nouns.push_back(noun_of(lexicon, word.get<std::string>()));
  }
  for (const auto& word : node.at("adjectives")) {
    scenario.adjectives.push_back(adjective_of(lexicon, word.get<std::string>()));
  }
  scenario.validate(lexicon);
  return scenario;
}

void put_index(json& record, const Configuration& config, const Lexicon& lexicon) {
  const auto& scenario = config.scenario();
  record["role"] = std::string(to_string(config.role()));
  if (config.role() == Role::speaker) {
    const auto target = config.target();
    record["target_pair"] = {lexicon.nouns().at(scenario.nouns[target.first]),
                             lexicon.nouns().at(scenario.nouns[target.second])};
  } else {
    record["clue"] = lexicon.adjectives().at(scenario.adjectives[config.clue()]);
  }
}

json configuration_json(const Configuration& config, const Lexicon& lexicon) {
  json record{{"scenario", scenario_json(config.scenario(), lexicon)}};
  put_index(record, config, lexicon);
  return record;
}

Configuration configuration_from(const json& record, const Lexicon& lexicon) {
  auto scenario = scenario_from(record.at("scenario"), lexicon);
  const auto role = parse_role(record.at("role").get<std::string>());
  if (role == Role::speaker) {
    const auto& pair = record.at("target_pair");
    if (!pair.is_array() || pair.size() != 2) throw DomainError("target_pair must list two nouns");
    const auto w1 = pair[0].get<std::string>();
    const auto w2 = pair[1].get<std::string>();
    const auto p1 = position_in(scenario.nouns, noun_of(lexicon, w1), w1);
    const auto p2 = position_in(scenario.nouns, noun_of(lexicon, w2), w2);
    return Configuration::speaker(std::move(scenario), {std::min(p1, p2), std::max(p1, p2)});
  }
  const auto clue = record.at("clue").get<std::string>();
  const auto position = position_in(scenario.adjectives, adjective_of(lexicon, clue), clue);
  return Configuration::listener(std::move(scenario), position);
}

// Calls fn(record) for each JSON line, translating parse failures into
// DomainError with the line number.
template <typename Fn>
void for_each_record(std::istream& in, Fn fn) {
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      fn(json::parse(line));
    } catch (const json::exception& e) {
      throw DomainError("record " + std::to_string(line_number) + ": " + e.what());
    } catch (const DomainError& e) {
      throw DomainError("record " + std::to_string(line_number) + ": " + e.what());
    }
  }
}

void write_lines(std::ostream& out, const std::vector<json>& records) {
  for (const auto& record : records) out << record.dump() << '\n';
}

}  // namespace

std::string answer_label(const Answer& answer, const Scenario& scenario, const Lexicon& lexicon) {
  if (const auto* pair = std::get_if<NounPair>(&answer)) {
    return lexicon.nouns().at(scenario.nouns.at(pair->first)) + "+" +
           lexicon.nouns().at(scenario.nouns.at(pair->second));
  }
  return lexicon.adjectives().at(scenario.adjectives.at(std::get<std::size_t>(answer)));
}

std::vector<Configuration> read_configurations(std::istream& in, const Lexicon& lexicon) {
  std::vector<Configuration> out;
  for_each_record(in, [&](const json& record) { out.push_back(configuration_from(record, lexicon)); });
  return out;
}

void write_configurations(std::ostream& out, std::span<const Configuration> configurations,
                          const Lexicon& lexicon) {
  std::vector<json> records;
  for (const auto& config : configurations) records.push_back(configuration_json(config, lexicon));
  write_lines(out, records);
}

std::vector<Scenario> read_scenarios(std::istream& in, const Lexicon& lexicon) {
  std::vector<Scenario> out;
  for_each_record(in, [&](const json& record) {
    out.push_back(scenario_from(record.at("scenario"), lexicon));
  });
  return out;
}

void write_scenarios(std::ostream& out, std::span<const Scenario> scenarios,
                     const Lexicon& lexicon) {
  std::vector<json> records;
  for (const auto& scenario : scenarios) {
    records.push_back(json{{"scenario", scenario_json(scenario, lexicon)}});
  }
  write_lines(out, records);
}

std::vector<DesignCandidate> read_candidates(std::istream& in, const Lexicon& lexicon) {
  std::vector<DesignCandidate> out;
  for_each_record(in, [&](const json& record) {
    DesignCandidate candidate;
    if (record.contains("role")) {
      candidate.configuration = configuration_from(record, lexicon);
      candidate.scenario = candidate.configuration->scenario();
    } else {
      candidate.scenario = scenario_from(record.at("scenario"), lexicon);
    }
    candidate.utility = record.at("utility").get<double>();
    if (!(candidate.utility >= 0.0)) throw DomainError("utility must be non-negative");
    out.push_back(std::move(candidate));
  });
  return out;
}

void write_candidates(std::ostream& out, std::span<const DesignCandidate> candidates,
                      const Lexicon& lexicon) {
  std::vector<json> records;
  for (const auto& candidate : candidates) {
    json record{{"scenario", scenario_json(candidate.scenario, lexicon)},
                {"utility", candidate.utility}};
    if (candidate.configuration) put_index(record, *candidate.configuration, lexicon);
    records.push_back(std::move(record));
  }
  write_lines(out, records);
}

std::vector<ResponseRecord> read_responses(std::istream& in, const Lexicon& lexicon) {
  std::vector<ResponseRecord> out;
  for_each_record(in, [&](const json& record) {
    auto config = configuration_from(record, lexicon);
    const auto support = answer_support(config);
    std::vector<std::uint64_t> counts(support.size(), 0);
    for (const auto& [label, count] : record.at("answers").items()) {
      std::size_t slot = support.size();
      for (std::size_t i = 0; i < support.size(); ++i) {
        const auto& scenario = config.scenario();
        auto name = answer_label(support[i], scenario, lexicon);
        if (name == to_lower(label)) slot = i;
        if (const auto* pair = std::get_if<NounPair>(&support[i])) {
          const auto swapped = lexicon.nouns().at(scenario.nouns[pair->second]) + "+" +
                               lexicon.nouns().at(scenario.nouns[pair->first]);
          if (swapped == to_lower(label)) slot = i;
        }
      }
      if (slot == support.size()) throw DomainError("answer '" + label + "' is not a possible answer");
      const auto value = count.get<std::int64_t>();
      if (value < 0) throw DomainError("negative count for answer '" + label + "'");
      counts[slot] += static_cast<std::uint64_t>(value);
    }
    std::vector<int> confidences;
    if (record.contains("confidence")) confidences = record.at("confidence").get<std::vector<int>>();
    ResponseRecord response{std::move(config), std::move(counts), std::move(confidences)};
    response.validate();
    out.push_back(std::move(response));
  });
  return out;
}

void write_responses(std::ostream& out, std::span<const ResponseRecord> responses,
                     const Lexicon& lexicon) {
  std::vector<json> records;
  for (const auto& response : responses) {
    auto record = configuration_json(response.configuration, lexicon);
    json answers = json::object();
    const auto support = answer_support(response.configuration);
    for (std::size_t i = 0; i < support.size(); ++i) {
      if (response.counts.at(i) == 0) continue;
      answers[answer_label(support[i], response.configuration.scenario(), lexicon)] =
          response.counts[i];
    }
    record["answers"] = answers;
    record["confidence"] = response.confidences;
    records.push_back(std::move(record));
  }
  write_lines(out, records);
}

}  // namespace refgame
