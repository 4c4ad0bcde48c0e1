#include "mti/lexicon.hpp"

#include "mti/text.hpp"

namespace mti {

LexiconSet default_lexicons() {
  LexiconSet lex;
  lex.social_keywords = {
      "feel",        "emotion",   "stress",     "support",   "team",
      "morale",      "wellbeing", "burnout",    "care",      "empathy",
      "understand",  "acknowledge", "appreciate", "encourage", "together",
      "concern",     "comfort",   "help them",  "listen",
  };
  lex.spontaneous_markers = {
      "hope this helps", "feel free",      "let me know",  "happy to",
      "good question",   "great",          "interesting",  "don't worry",
      "by the way",      "tip",            "note that",    "keep in mind",
      "you might also",  "additionally",   "for reference", "if you need",
      "i'd recommend",   "for beginners",  "common mistake", "pro tip",
  };
  lex.stopwords = {
      "a",    "an",    "the",   "and",   "or",    "but",  "if",    "then",
      "is",   "are",   "was",   "were",  "be",    "been", "being", "to",
      "of",   "in",    "on",    "at",    "for",   "with", "by",    "from",
      "as",   "that",  "this",  "these", "those", "it",   "its",   "he",
      "she",  "they",  "we",    "you",   "i",     "do",   "does",  "did",
      "have", "has",   "had",   "will",  "would", "can",  "could", "should",
      "may",  "might", "not",   "no",    "so",    "than", "too",   "very",
      "just", "about", "into",  "over",  "under", "when", "where", "how",
      "what", "which", "there", "here",  "also",  "your", "their", "our",
  };
  lex.stance_markers.hedge_patterns = {
      "both sides", "it depends", "on the other hand", "trade-off",
      "trade-offs", "hard to say", "no definitive",    "arguments for and against",
  };
  return lex;
}

namespace {
void lower_all(std::vector<std::string>& v) {
  for (auto& s : v) s = text::to_lower(s);
}
} // namespace

void normalize_lexicons(LexiconSet& lex) {
  lower_all(lex.social_keywords);
  lower_all(lex.spontaneous_markers);
  lower_all(lex.stopwords);
  lower_all(lex.stance_markers.pro_patterns);
  lower_all(lex.stance_markers.con_patterns);
  lower_all(lex.stance_markers.hedge_patterns);
}

void to_json(nlohmann::json& j, const StanceMarkers& m) {
  j = nlohmann::json{{"pro_patterns", m.pro_patterns},
                     {"con_patterns", m.con_patterns},
                     {"hedge_patterns", m.hedge_patterns}};
}

void from_json(const nlohmann::json& j, StanceMarkers& m) {
  m.pro_patterns = j.value("pro_patterns", std::vector<std::string>{});
  m.con_patterns = j.value("con_patterns", std::vector<std::string>{});
  m.hedge_patterns = j.value("hedge_patterns", std::vector<std::string>{});
}

void to_json(nlohmann::json& j, const LexiconSet& lex) {
  j = nlohmann::json{{"social_keywords", lex.social_keywords},
                     {"spontaneous_markers", lex.spontaneous_markers},
                     {"stopwords", lex.stopwords},
                     {"stance_markers", lex.stance_markers}};
}

void from_json(const nlohmann::json& j, LexiconSet& lex) {
  lex.social_keywords = j.value("social_keywords", std::vector<std::string>{});
  lex.spontaneous_markers = j.value("spontaneous_markers", std::vector<std::string>{});
  lex.stopwords = j.value("stopwords", std::vector<std::string>{});
  if (j.contains("stance_markers")) lex.stance_markers = j.at("stance_markers");
}

} // namespace mti
