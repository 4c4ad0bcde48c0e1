#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace mti {

/// Topic-level stance vocabulary. Pro/con pattern lists are scenario data
/// (each opinion-pressure topic ships its own); the battery-level set only
/// provides generic hedge patterns shared by all topics.
struct StanceMarkers {
  std::vector<std::string> pro_patterns;
  std::vector<std::string> con_patterns;
  std::vector<std::string> hedge_patterns;

  bool empty() const {
    return pro_patterns.empty() && con_patterns.empty() && hedge_patterns.empty();
  }
};

/// All word/phrase lists used by the deterministic scorers. Entries are
/// stored lowercase; matching is case-insensitive on word boundaries.
struct LexiconSet {
  std::vector<std::string> social_keywords;
  std::vector<std::string> spontaneous_markers;
  std::vector<std::string> stopwords;
  StanceMarkers stance_markers;
};

/// The seed lists bundled with the default battery.
LexiconSet default_lexicons();

/// Lowercases all entries in place (entries are defined lowercase; this
/// normalizes hand-edited battery files).
void normalize_lexicons(LexiconSet& lex);

void to_json(nlohmann::json& j, const StanceMarkers& m);
void from_json(const nlohmann::json& j, StanceMarkers& m);
void to_json(nlohmann::json& j, const LexiconSet& lex);
void from_json(const nlohmann::json& j, LexiconSet& lex);

} // namespace mti
