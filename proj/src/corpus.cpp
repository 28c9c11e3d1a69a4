#include "forensics/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace forensics {

using nlohmann::json;

Date parse_date(const std::string& iso) {
    int y, m, d;
    char dash1, dash2;
    std::istringstream ss(iso);
    ss >> y >> dash1 >> m >> dash2 >> d;
    if (!ss || dash1 != '-' || dash2 != '-' || iso.size() != 10 ||
        m < 1 || m > 12 || d < 1 || d > 31) {
        throw CorpusError("invalid ISO date: '" + iso + "'");
    }
    return Date{days_from_civil(y, m, d)};
}

std::string format_date(const Date& d) {
    int y, m, day;
    civil_from_days(d.days_since_epoch, y, m, day);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", y, m, day);
    return buf;
}

namespace {

// Minimal Latin diacritic folding for the UTF-8 sequences that show up in
// editor/author surnames. Unmapped multibyte sequences pass through.
void append_folded(std::string& out, unsigned cp) {
    struct Range { unsigned lo, hi; char c; };
    static const Range kRanges[] = {
        {0x00C0, 0x00C5, 'a'}, {0x00E0, 0x00E5, 'a'},
        {0x00C8, 0x00CB, 'e'}, {0x00E8, 0x00EB, 'e'},
        {0x00CC, 0x00CF, 'i'}, {0x00EC, 0x00EF, 'i'},
        {0x00D2, 0x00D6, 'o'}, {0x00F2, 0x00F6, 'o'},
        {0x00D8, 0x00D8, 'o'}, {0x00F8, 0x00F8, 'o'},
        {0x00D9, 0x00DC, 'u'}, {0x00F9, 0x00FC, 'u'},
        {0x00C7, 0x00C7, 'c'}, {0x00E7, 0x00E7, 'c'},
        {0x00D1, 0x00D1, 'n'}, {0x00F1, 0x00F1, 'n'},
        {0x00DD, 0x00DD, 'y'}, {0x00FD, 0x00FD, 'y'}, {0x00FF, 0x00FF, 'y'},
        {0x0100, 0x0105, 'a'}, {0x0106, 0x010D, 'c'},
        {0x010E, 0x0111, 'd'}, {0x0112, 0x011B, 'e'},
        {0x011C, 0x0123, 'g'}, {0x0139, 0x0142, 'l'},
        {0x0143, 0x0148, 'n'}, {0x014C, 0x0151, 'o'},
        {0x0154, 0x0159, 'r'}, {0x015A, 0x0161, 's'},
        {0x0162, 0x0167, 't'}, {0x0168, 0x0173, 'u'},
        {0x0179, 0x017E, 'z'},
    };
    for (const auto& r : kRanges) {
        if (cp >= r.lo && cp <= r.hi) {
            out.push_back(r.c);
            return;
        }
    }
    if (cp == 0x00DF) { out += "ss"; return; }   // sharp s
    if (cp == 0x00C6 || cp == 0x00E6) { out += "ae"; return; }
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    }
    // otherwise dropped: non-Latin codepoints do not contribute to keys
}

}  // namespace

std::string normalize_surname(const std::string& raw) {
    std::string out;
    out.reserve(raw.size());
    std::size_t i = 0;
    while (i < raw.size()) {
        unsigned char c = static_cast<unsigned char>(raw[i]);
        unsigned cp = 0;
        if (c < 0x80) {
            cp = c;
            ++i;
        } else if ((c >> 5) == 0x6 && i + 1 < raw.size()) {
            cp = ((c & 0x1F) << 6) | (static_cast<unsigned char>(raw[i + 1]) & 0x3F);
            i += 2;
        } else if ((c >> 4) == 0xE && i + 2 < raw.size()) {
            cp = ((c & 0x0F) << 12) |
                 ((static_cast<unsigned char>(raw[i + 1]) & 0x3F) << 6) |
                 (static_cast<unsigned char>(raw[i + 2]) & 0x3F);
            i += 3;
        } else {
            ++i;  // skip malformed byte
            continue;
        }
        if (cp == '-' || cp == '\'' || cp == ' ') continue;
        append_folded(out, cp);
    }
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    return out;
}

std::string AuthorKey::key() const {
    std::string k = normalize_surname(surname);
    k.push_back('|');
    k.push_back(initial == '?' ? '?' : static_cast<char>(std::toupper(static_cast<unsigned char>(initial))));
    return k;
}

const EditorIdentity* Corpus::find_editor(const std::string& editor_id) const {
    for (const auto& e : editors)
        if (e.editor_id == editor_id) return &e;
    return nullptr;
}

std::unordered_map<std::string, std::size_t> Corpus::editor_index() const {
    std::unordered_map<std::string, std::size_t> idx;
    idx.reserve(editors.size());
    for (std::size_t i = 0; i < editors.size(); ++i) idx.emplace(editors[i].editor_id, i);
    return idx;
}

void mark_degenerate_editors(std::vector<EditorIdentity>& editors) {
    std::unordered_map<std::string, int> counts;
    for (const auto& e : editors) ++counts[e.name.key()];
    for (auto& e : editors) e.degenerate = counts[e.name.key()] >= 2;
}

namespace {

AuthorKey author_from_json(const json& j) {
    AuthorKey a;
    a.surname = j.at("surname").get<std::string>();
    const auto ini = j.at("initial").get<std::string>();
    a.initial = ini.empty() ? '?' : static_cast<char>(std::toupper(static_cast<unsigned char>(ini[0])));
    if (a.surname.empty()) throw CorpusError("empty surname");
    return a;
}

json author_to_json(const AuthorKey& a) {
    return json{{"surname", a.surname}, {"initial", std::string(1, a.initial)}};
}

ArticleRecord article_from_json(const json& j) {
    ArticleRecord a;
    a.doi = j.at("doi").get<std::string>();
    a.editor_id = j.at("editor_id").get<std::string>();
    a.received = parse_date(j.at("received").get<std::string>());
    a.accepted = parse_date(j.at("accepted").get<std::string>());
    a.year = j.at("year").get<int>();
    for (const auto& aj : j.at("authors")) a.authors.push_back(author_from_json(aj));
    if (a.authors.empty()) throw CorpusError("article has no authors");
    for (const auto& k : j.at("keywords")) a.keywords.push_back(k.get<std::string>());
    for (const auto& c : j.at("top_level_classes")) {
        int cls = c.get<int>();
        if (cls < 1 || cls > 10) throw CorpusError("top_level_class out of range 1..10");
        a.top_level_classes.push_back(cls);
    }
    for (const auto& rj : j.at("references")) {
        ReferenceEntry ref;
        for (const auto& aj : rj) ref.authors.push_back(author_from_json(aj));
        a.references.push_back(std::move(ref));
    }
    a.citation_count = j.at("citation_count").get<std::int64_t>();
    if (a.citation_count < 0) throw CorpusError("negative citation_count");
    if (a.accepted < a.received) throw CorpusError("accepted date before received date");
    return a;
}

json article_to_json(const ArticleRecord& a) {
    json refs = json::array();
    for (const auto& r : a.references) {
        json rj = json::array();
        for (const auto& au : r.authors) rj.push_back(author_to_json(au));
        refs.push_back(std::move(rj));
    }
    json authors = json::array();
    for (const auto& au : a.authors) authors.push_back(author_to_json(au));
    return json{{"doi", a.doi},
                {"editor_id", a.editor_id},
                {"received", format_date(a.received)},
                {"accepted", format_date(a.accepted)},
                {"year", a.year},
                {"authors", authors},
                {"keywords", a.keywords},
                {"top_level_classes", a.top_level_classes},
                {"references", refs},
                {"citation_count", a.citation_count}};
}

}  // namespace

std::string article_to_jsonl(const ArticleRecord& a) { return article_to_json(a).dump(); }

std::string editor_to_jsonl(const EditorIdentity& e) {
    return json{{"editor_id", e.editor_id},
                {"surname", e.name.surname},
                {"initial", std::string(1, e.name.initial)}}
        .dump();
}

IngestResult ingest_streams(std::istream& articles, std::istream& editors,
                            std::optional<Date> census_date) {
    IngestResult res;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(editors, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            json j = json::parse(line);
            EditorIdentity e;
            e.editor_id = j.at("editor_id").get<std::string>();
            e.name.surname = j.at("surname").get<std::string>();
            const auto ini = j.at("initial").get<std::string>();
            e.name.initial = ini.empty() ? '?' : static_cast<char>(std::toupper(static_cast<unsigned char>(ini[0])));
            if (e.name.surname.empty()) throw CorpusError("empty surname");
            res.corpus.editors.push_back(std::move(e));
        } catch (const std::exception& ex) {
            res.diagnostics.push_back({lineno, "editors", ex.what()});
        }
    }
    mark_degenerate_editors(res.corpus.editors);
    auto idx = res.corpus.editor_index();

    Date max_accepted{0};
    lineno = 0;
    while (std::getline(articles, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            ArticleRecord a = article_from_json(json::parse(line));
            if (!idx.count(a.editor_id))
                throw CorpusError("dangling editor_id '" + a.editor_id + "'");
            max_accepted = std::max(max_accepted, a.accepted);
            res.corpus.articles.push_back(std::move(a));
        } catch (const std::exception& ex) {
            res.diagnostics.push_back({lineno, "articles", ex.what()});
        }
    }
    res.corpus.census_date = census_date.value_or(max_accepted);
    if (res.corpus.census_date < max_accepted)
        throw CorpusError("census date precedes latest accepted date");
    return res;
}

IngestResult ingest(const std::string& articles_path, const std::string& editors_path,
                    std::optional<Date> census_date) {
    std::ifstream af(articles_path);
    if (!af) throw CorpusError("cannot open articles file: " + articles_path);
    std::ifstream ef(editors_path);
    if (!ef) throw CorpusError("cannot open editors file: " + editors_path);
    return ingest_streams(af, ef, census_date);
}

void save_corpus(const Corpus& corpus, const std::string& path) {
    json editors = json::array();
    for (const auto& e : corpus.editors)
        editors.push_back(json{{"editor_id", e.editor_id},
                               {"surname", e.name.surname},
                               {"initial", std::string(1, e.name.initial)},
                               {"degenerate", e.degenerate}});
    json articles = json::array();
    for (const auto& a : corpus.articles) articles.push_back(article_to_json(a));
    json root{{"format_version", 1},
              {"census_date", format_date(corpus.census_date)},
              {"editors", std::move(editors)},
              {"articles", std::move(articles)}};
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CorpusError("cannot write corpus file: " + path);
    out << root.dump() << '\n';
}

Corpus load_corpus(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CorpusError("cannot open corpus file: " + path);
    json root = json::parse(in);
    if (root.at("format_version").get<int>() != 1)
        throw CorpusError("unsupported corpus format version");
    Corpus c;
    c.census_date = parse_date(root.at("census_date").get<std::string>());
    for (const auto& ej : root.at("editors")) {
        EditorIdentity e;
        e.editor_id = ej.at("editor_id").get<std::string>();
        e.name.surname = ej.at("surname").get<std::string>();
        const auto ini = ej.at("initial").get<std::string>();
        e.name.initial = ini.empty() ? '?' : ini[0];
        e.degenerate = ej.at("degenerate").get<bool>();
        c.editors.push_back(std::move(e));
    }
    for (const auto& aj : root.at("articles")) c.articles.push_back(article_from_json(aj));
    return c;
}

}  // namespace forensics
