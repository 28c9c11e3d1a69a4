#include "forensics/social.hpp"

#include <fstream>
#include <unordered_map>
#include <unordered_set>

namespace forensics {

SurnameBlacklist build_blacklist(const std::vector<EditorIdentity>& editors) {
    std::unordered_map<std::string, int> key_counts;
    for (const auto& e : editors) ++key_counts[e.name.key()];
    SurnameBlacklist bl;
    for (const auto& e : editors)
        if (key_counts[e.name.key()] >= 2) bl.surnames.insert(normalize_surname(e.name.surname));
    return bl;
}

SurnameBlacklist load_blacklist(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CorpusError("cannot open blacklist file: " + path);
    SurnameBlacklist bl;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) bl.surnames.insert(normalize_surname(line));
    }
    return bl;
}

void save_blacklist(const SurnameBlacklist& bl, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw CorpusError("cannot write blacklist file: " + path);
    for (const auto& s : bl.surnames) out << s << '\n';
}

std::vector<TieAnnotation> tag_repeat_authors(const Corpus& corpus,
                                              const std::vector<EditorProfile>& profiles,
                                              const SurnameBlacklist& blacklist) {
    std::vector<TieAnnotation> out;
    out.reserve(profiles.size());
    for (const auto& p : profiles) {
        TieAnnotation tie;
        tie.editor_id = p.editor_id;

        // A_{E,k}: articles per author key, one count per article
        std::unordered_map<std::string, std::int64_t> tallies;
        std::vector<std::vector<std::string>> article_keys(p.articles.size());
        for (std::size_t ai = 0; ai < p.articles.size(); ++ai) {
            const auto& art = corpus.articles[p.articles[ai].article_index];
            std::unordered_set<std::string> seen;
            for (const auto& au : art.authors) {
                if (blacklist.contains(au)) continue;
                const std::string k = au.key();
                if (seen.insert(k).second) {
                    ++tallies[k];
                    article_keys[ai].push_back(k);
                }
            }
        }

        std::unordered_set<std::string> repeat_keys;
        for (const auto& [k, count] : tallies)
            if (count >= 2) repeat_keys.insert(k);
        tie.repeat_author_count = static_cast<std::int64_t>(repeat_keys.size());

        tie.article_repeat_flags.resize(p.articles.size(), false);
        std::int64_t flagged = 0;
        for (std::size_t ai = 0; ai < p.articles.size(); ++ai) {
            for (const auto& k : article_keys[ai]) {
                if (repeat_keys.count(k)) {
                    tie.article_repeat_flags[ai] = true;
                    tie.flagged_articles.push_back(p.articles[ai].article_index);
                    ++flagged;
                    break;
                }
            }
        }
        tie.repeat_article_fraction =
            p.articles.empty() ? 0.0
                               : static_cast<double>(flagged) / static_cast<double>(p.articles.size());
        out.push_back(std::move(tie));
    }
    return out;
}

}  // namespace forensics
