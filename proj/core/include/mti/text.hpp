#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

// Deterministic text primitives shared by all scorers. Every rule here is
// pure string processing: no locale, no Unicode segmentation, ASCII casing
// only. Phrase matching treats any run of non-alphanumeric characters as a
// single word boundary, so "don't worry" matches "Don't worry!" and "great"
// never matches inside "greatest".

namespace mti::text {

/// Splits on runs of ASCII whitespace. The unit of "length" everywhere.
std::vector<std::string_view> whitespace_tokens(std::string_view s);

std::size_t token_count(std::string_view s);

std::string to_lower(std::string_view s);

/// Lowercases and collapses every run of non-alphanumeric characters to a
/// single space, trimming the ends. "I'd recommend X." -> "i d recommend x".
std::string normalize(std::string_view s);

/// Normalized word tokens of `s` (the tokens of normalize(s)).
std::vector<std::string> normalized_tokens(std::string_view s);

/// Lowercased whitespace tokens with punctuation trimmed and stopwords
/// removed; the keyword universe of keyword_delta.
std::vector<std::string> keyword_tokens(std::string_view s,
                                        const std::vector<std::string>& stopwords);

std::unordered_set<std::string> keyword_set(std::string_view s,
                                            const std::vector<std::string>& stopwords);

/// Number of non-overlapping occurrences of `phrase` in `s`, matched on word
/// boundaries after normalization. Multi-word phrases match across any
/// punctuation that normalization collapses.
int count_phrase(std::string_view s, std::string_view phrase);

bool contains_phrase(std::string_view s, std::string_view phrase);

/// Position (token index into normalized_tokens(s)) of each occurrence of
/// `phrase`; used for negation-window checks.
std::vector<std::size_t> phrase_positions(std::string_view s, std::string_view phrase);

/// Sentence split on terminal punctuation runs (. ! ?); discards empties.
std::vector<std::string> split_sentences(std::string_view s);

} // namespace mti::text
