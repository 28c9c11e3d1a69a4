#pragma once

#include <set>
#include <string>
#include <vector>

#include "forensics/corpus.hpp"
#include "forensics/metrics.hpp"

namespace forensics {

// Normalized surnames excluded from repeat-author tallies.
struct SurnameBlacklist {
    std::set<std::string> surnames;

    bool contains(const AuthorKey& a) const {
        return surnames.count(normalize_surname(a.surname)) > 0;
    }
};

// Surnames of all degenerate editor keys, initial-independent.
SurnameBlacklist build_blacklist(const std::vector<EditorIdentity>& editors);

SurnameBlacklist load_blacklist(const std::string& path);
void save_blacklist(const SurnameBlacklist& bl, const std::string& path);

struct TieAnnotation {
    std::string editor_id;
    std::int64_t repeat_author_count = 0;            // K2_E
    double repeat_article_fraction = 0;              // rho_E
    std::vector<std::size_t> flagged_articles;       // corpus indices with R = 1
    std::vector<bool> article_repeat_flags;          // parallel to profile.articles
};

// Tags authors appearing on >= 2 articles within each editor's set.
// An author key contributes at most once per article; blacklisted
// surnames never count.
std::vector<TieAnnotation> tag_repeat_authors(const Corpus& corpus,
                                              const std::vector<EditorProfile>& profiles,
                                              const SurnameBlacklist& blacklist);

}  // namespace forensics
