#pragma once

#include <string>
#include <vector>

#include "forensics/corpus.hpp"

namespace testutil {

inline forensics::AuthorKey author(const std::string& surname, char initial = 'A') {
    return forensics::AuthorKey{surname, initial};
}

inline forensics::ArticleRecord make_article(
    const std::string& doi, const std::string& editor_id, const std::string& received,
    const std::string& accepted, std::vector<forensics::AuthorKey> authors,
    std::vector<std::string> keywords, std::vector<int> classes,
    std::vector<std::vector<forensics::AuthorKey>> refs, std::int64_t citations) {
    forensics::ArticleRecord a;
    a.doi = doi;
    a.editor_id = editor_id;
    a.received = forensics::parse_date(received);
    a.accepted = forensics::parse_date(accepted);
    a.year = forensics::date_year(a.accepted);
    a.authors = std::move(authors);
    a.keywords = std::move(keywords);
    a.top_level_classes = std::move(classes);
    for (auto& r : refs) {
        forensics::ReferenceEntry e;
        e.authors = std::move(r);
        a.references.push_back(std::move(e));
    }
    a.citation_count = citations;
    return a;
}

inline forensics::EditorIdentity make_editor(const std::string& id, const std::string& surname,
                                             char initial) {
    forensics::EditorIdentity e;
    e.editor_id = id;
    e.name = {surname, initial};
    return e;
}

// Seals a hand-built corpus: marks degenerate editors and sets the census
// date to the latest accepted date.
inline forensics::Corpus seal(std::vector<forensics::EditorIdentity> editors,
                              std::vector<forensics::ArticleRecord> articles) {
    forensics::Corpus c;
    c.editors = std::move(editors);
    c.articles = std::move(articles);
    forensics::mark_degenerate_editors(c.editors);
    for (const auto& a : c.articles)
        c.census_date = std::max(c.census_date, a.accepted);
    return c;
}

}  // namespace testutil
