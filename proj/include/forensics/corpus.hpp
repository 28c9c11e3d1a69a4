#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "forensics/dates.hpp"

namespace forensics {

// Normalized (surname, first initial) author identity. The raw surname is
// retained for display; key comparisons use the normalized form.
struct AuthorKey {
    std::string surname;       // raw form as ingested
    char initial = '?';        // upper-case letter, or '?' = unknown

    // Canonical comparison key: case-folded, diacritic-stripped,
    // hyphens removed, plus the initial.
    std::string key() const;

    bool same_person(const AuthorKey& other) const { return key() == other.key(); }
};

// Case-folds, strips common Latin diacritics and drops hyphens.
std::string normalize_surname(const std::string& raw);

struct ReferenceEntry {
    // Empty when the reference could not be parsed; such entries still
    // count toward the reference total but can never match an editor.
    std::vector<AuthorKey> authors;
};

struct ArticleRecord {
    std::string doi;
    std::string editor_id;
    Date received;
    Date accepted;
    int year = 0;
    std::vector<AuthorKey> authors;
    std::vector<std::string> keywords;
    std::vector<int> top_level_classes;  // 1..10
    std::vector<ReferenceEntry> references;
    std::int64_t citation_count = 0;

    std::int64_t duration_days() const { return days_between(received, accepted); }
};

struct EditorIdentity {
    std::string editor_id;
    AuthorKey name;
    bool degenerate = false;  // abbreviated name shared with >=2 editors
};

struct Corpus {
    std::vector<ArticleRecord> articles;
    std::vector<EditorIdentity> editors;
    Date census_date;

    const EditorIdentity* find_editor(const std::string& editor_id) const;
    std::unordered_map<std::string, std::size_t> editor_index() const;
};

// One rejected input line with the reason.
struct IngestDiagnostic {
    std::size_t line = 0;       // 1-based line number in the source file
    std::string file;
    std::string message;
};

struct IngestResult {
    Corpus corpus;
    std::vector<IngestDiagnostic> diagnostics;
};

class CorpusError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Reads the JSONL pair (articles, editors). Invalid lines are rejected
// with per-line diagnostics; valid lines are kept in file order.
IngestResult ingest(const std::string& articles_path, const std::string& editors_path,
                    std::optional<Date> census_date = std::nullopt);

// Same, from in-memory streams (used by tests and the cache layer).
IngestResult ingest_streams(std::istream& articles, std::istream& editors,
                            std::optional<Date> census_date = std::nullopt);

// Sets degenerate = true iff the normalized (surname, initial) key occurs
// on >=2 editors. Idempotent and order-independent.
void mark_degenerate_editors(std::vector<EditorIdentity>& editors);

inline std::int64_t article_duration(const ArticleRecord& a) { return a.duration_days(); }

// Versioned cache representation (corpus.bin). JSON inside; the name is
// historical.
void save_corpus(const Corpus& corpus, const std::string& path);
Corpus load_corpus(const std::string& path);

// Serializes one article back to its JSONL form (round-trip stable for
// valid records).
std::string article_to_jsonl(const ArticleRecord& a);
std::string editor_to_jsonl(const EditorIdentity& e);

}  // namespace forensics
