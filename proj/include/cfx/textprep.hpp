#pragma once

#include <map>
#include <optional>
#include <regex>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace cfx {

/// Lemma dictionary entry. POS is optional; the enterprise-term summarizer
/// drops entries tagged with a non-noun POS and accepts everything else.
struct LemmaEntry {
    std::string lemma;
    std::string pos;  // "", "noun", "verb", ...
};

/// Configuration for the five-stage description normalizer, loaded from a
/// JSON file with keys `acronyms`, `stopwords`, `lemmas`, `code_patterns`.
///
/// Acronym keys match case-insensitively and tolerate trailing periods
/// ("E.S.", "e.s" and "E.S" all hit the "e.s." entry). Lemma lookup is total:
/// unknown surface forms fall back to a rule-based Spanish plural stripper
/// and finally to identity.
struct NormalizationConfig {
    std::unordered_map<std::string, std::string> acronyms;  // normalized key -> expansion
    std::unordered_set<std::string> stopwords;
    std::unordered_map<std::string, LemmaEntry> lemmas;
    std::vector<std::string> code_patterns;  // ECMAScript regexes, full-match

    std::uint64_t hash = 0;  // fingerprint of the canonicalized JSON

    const std::vector<std::regex>& compiled_code_patterns() const;

    /// Normalizes an acronym key/candidate: lowercase, strip trailing '.'.
    static std::string acronym_key(std::string_view token);

  private:
    mutable std::vector<std::regex> compiled_;
    mutable bool compiled_ready_ = false;
};

/// Built-in configuration used when no JSON file is given: the two
/// paper-attested acronyms, the shipped Spanish stopword list, a small lemma
/// dictionary, and the default mixed-alphanumeric code pattern.
const NormalizationConfig& default_normalization_config();

NormalizationConfig load_normalization_config(const std::string& path);

/// Ordered lemma sequence produced by preprocess(). Tokens are lowercase,
/// ASCII-folded, digit-free and stopword-free.
struct ProcessedDoc {
    std::string source_id;
    std::vector<std::string> lemmas;

    bool empty() const { return lemmas.empty(); }
};

namespace textprep {

/// Removes standalone numbers, digit runs and code-like tokens (by default a
/// token mixing letters and digits with length >= 4). Other tokens keep their
/// text and order; separators collapse to single spaces.
std::string strip_numeric_and_codes(const std::string& text, const NormalizationConfig& cfg);

/// Expands every acronym-table hit into its natural-language form.
std::string expand_abbreviations(const std::string& text, const NormalizationConfig& cfg);

/// Replaces symbols and punctuation with spaces, folds diacritics to base
/// ASCII letters, lowercases, and collapses whitespace.
std::string strip_symbols_diacritics(const std::string& text);

std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const NormalizationConfig& cfg);

std::vector<std::string> lemmatize(const std::vector<std::string>& tokens,
                                   const NormalizationConfig& cfg);

std::vector<std::string> tokenize(const std::string& text);

/// Full pipeline, in fixed order: expand_abbreviations ->
/// strip_symbols_diacritics -> strip_numeric_and_codes -> tokenize ->
/// remove_stopwords -> lemmatize. Expansion runs first so dotted acronyms
/// survive symbol stripping. Fully-stopworded input yields an empty doc.
std::vector<std::string> preprocess(const std::string& text, const NormalizationConfig& cfg);

ProcessedDoc preprocess_doc(const std::string& source_id, const std::string& text,
                            const NormalizationConfig& cfg);

}  // namespace textprep
}  // namespace cfx
