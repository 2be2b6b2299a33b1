#pragma once

// Line-delimited JSON records for configurations, scenarios, design
// candidates and response data. Words, not indices, appear in the files:
//
//   {"role":"speaker","scenario":{"adjectives":[...],"nouns":[...]},"target_pair":["heart","phone"]}
//   {"clue":"empty","role":"listener","scenario":{...}}
//   {"role":"listener","clue":"empty","scenario":{...},"answers":{"heart+phone":3},"confidence":[4,5]}
//   {"scenario":{...},"utility":0.93}

#include <iosfwd>
#include <string>
#include <vector>

#include "refgame/evaluation.hpp"
#include "refgame/game.hpp"
#include "refgame/lexicon.hpp"
#include "refgame/oed.hpp"

namespace refgame {

std::vector<Configuration> read_configurations(std::istream& in, const Lexicon& lexicon);
void write_configurations(std::ostream& out, std::span<const Configuration> configurations,
                          const Lexicon& lexicon);

// Accepts bare scenario records as well as configuration or candidate
// records, whose scenario part is used.
std::vector<Scenario> read_scenarios(std::istream& in, const Lexicon& lexicon);
void write_scenarios(std::ostream& out, std::span<const Scenario> scenarios,
                     const Lexicon& lexicon);

std::vector<DesignCandidate> read_candidates(std::istream& in, const Lexicon& lexicon);
void write_candidates(std::ostream& out, std::span<const DesignCandidate> candidates,
                      const Lexicon& lexicon);

std::vector<ResponseRecord> read_responses(std::istream& in, const Lexicon& lexicon);
void write_responses(std::ostream& out, std::span<const ResponseRecord> responses,
                     const Lexicon& lexicon);

// "heart+phone" for a pair, the adjective itself otherwise.
std::string answer_label(const Answer& answer, const Scenario& scenario, const Lexicon& lexicon);

}  // namespace refgame
