#include "mti/text.hpp"

#include <algorithm>
#include <cctype>

namespace mti::text {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
char lower(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

} // namespace

std::vector<std::string_view> whitespace_tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    std::size_t start = i;
    while (i < s.size() && !is_space(s[i])) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

std::size_t token_count(std::string_view s) { return whitespace_tokens(s).size(); }

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), lower);
  return out;
}

std::string normalize(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : s) {
    if (is_alnum(c)) {
      if (pending_space && !out.empty()) out.push_back(' ');
      pending_space = false;
      out.push_back(lower(c));
    } else {
      pending_space = true;
    }
  }
  return out;
}

std::vector<std::string> normalized_tokens(std::string_view s) {
  std::vector<std::string> out;
  for (auto tok : whitespace_tokens(normalize(s))) out.emplace_back(tok);
  return out;
}

std::vector<std::string> keyword_tokens(std::string_view s,
                                        const std::vector<std::string>& stopwords) {
  std::unordered_set<std::string> stop(stopwords.begin(), stopwords.end());
  std::vector<std::string> out;
  for (const auto& tok : normalized_tokens(s)) {
    if (stop.find(tok) == stop.end()) out.push_back(tok);
  }
  return out;
}

std::unordered_set<std::string> keyword_set(std::string_view s,
                                            const std::vector<std::string>& stopwords) {
  auto toks = keyword_tokens(s, stopwords);
  return {toks.begin(), toks.end()};
}

std::vector<std::size_t> phrase_positions(std::string_view s, std::string_view phrase) {
  std::vector<std::size_t> out;
  auto text_toks = normalized_tokens(s);
  auto phrase_toks = normalized_tokens(phrase);
  if (phrase_toks.empty() || text_toks.size() < phrase_toks.size()) return out;
  std::size_t i = 0;
  while (i + phrase_toks.size() <= text_toks.size()) {
    bool hit = std::equal(phrase_toks.begin(), phrase_toks.end(), text_toks.begin() + i);
    if (hit) {
      out.push_back(i);
      i += phrase_toks.size(); // non-overlapping
    } else {
      ++i;
    }
  }
  return out;
}

int count_phrase(std::string_view s, std::string_view phrase) {
  return static_cast<int>(phrase_positions(s, phrase).size());
}

bool contains_phrase(std::string_view s, std::string_view phrase) {
  return count_phrase(s, phrase) > 0;
}

std::vector<std::string> split_sentences(std::string_view s) {
  std::vector<std::string> out;
  std::string current;
  auto flush = [&] {
    std::size_t a = current.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) {
      current.clear();
      return;
    }
    std::size_t b = current.find_last_not_of(" \t\r\n");
    out.push_back(current.substr(a, b - a + 1));
    current.clear();
  };
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '.' || c == '!' || c == '?') {
      current.push_back(c);
      while (i + 1 < s.size() && (s[i + 1] == '.' || s[i + 1] == '!' || s[i + 1] == '?'))
        current.push_back(s[++i]);
      flush();
    } else {
      current.push_back(c);
    }
  }
  flush();
  return out;
}

} // namespace mti::text
