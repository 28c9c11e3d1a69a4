#include <doctest.h>

#include <algorithm>
#include <random>

#include "forensics/impact.hpp"
#include "forensics/metrics.hpp"
#include "forensics/taxonomy.hpp"
#include "helpers.hpp"

using namespace forensics;
using testutil::author;
using testutil::make_article;
using testutil::make_editor;

namespace {

std::vector<EditorProfile> profiles_of(const Corpus& c) {
    const auto table = build_weight_table(c);
    const auto impact = normalize(c, classify_all(c, table));
    return build_profiles(c, impact);
}

double gini_pairwise_oracle(std::vector<double> v) {
    double num = 0, total = 0;
    for (double a : v) total += a;
    for (double a : v)
        for (double b : v) num += std::abs(a - b);
    const double n = static_cast<double>(v.size());
    return num / (2.0 * n * n * (total / n));
}

}  // namespace

TEST_CASE("single-article editor has zero service period and no cov") {
    const Corpus c = testutil::seal(
        {make_editor("E1", "Alpha", 'A')},
        {make_article("d1", "E1", "2010-01-01", "2010-02-01", {author("S")}, {"kw"}, {2}, {}, 0)});
    const auto profiles = profiles_of(c);
    REQUIRE(profiles.size() == 1);
    CHECK(profiles[0].article_count == 1);
    CHECK(profiles[0].service_days == 0);
    CHECK_FALSE(profiles[0].duration_cov.has_value());
    CHECK(profiles[0].articles[0].service_age_years == 0.0);
}

TEST_CASE("two articles 100 days apart give d_E = 50") {
    const Corpus c = testutil::seal(
        {make_editor("E1", "Alpha", 'A')},
        {make_article("d1", "E1", "2010-01-01", "2010-01-11", {author("S")}, {"kw"}, {2}, {}, 0),
         make_article("d2", "E1", "2010-03-01", "2010-04-21", {author("S")}, {"kw"}, {2}, {}, 0)});
    const auto profiles = profiles_of(c);
    REQUIRE(profiles.size() == 1);
    CHECK(profiles[0].service_days == 100);
    CHECK(profiles[0].days_per_article == doctest::Approx(50.0));
    CHECK(profiles[0].mean_duration == doctest::Approx((10.0 + 51.0) / 2.0));
    // tau in 365.25-day years, first article at 0
    CHECK(profiles[0].articles[0].service_age_years == 0.0);
    CHECK(profiles[0].articles[1].service_age_years == doctest::Approx(100.0 / 365.25));
}

TEST_CASE("editor citation rate counts one match per reference") {
    ArticleRecord a = make_article(
        "d1", "E1", "2010-01-01", "2010-02-01", {author("S")}, {"kw"}, {2},
        {{author("Alpha", 'A'), author("Alpha", 'A')},  // duplicate key inside one reference
         {author("Other", 'O')},
         {author("Alpha", 'A'), author("Other", 'O')},
         {}},  // unparseable reference still counts toward the total
        0);
    EditorIdentity ed = make_editor("E1", "Alpha", 'A');
    auto [cnt, rate] = editor_citation_rate(a, ed);
    CHECK(cnt == 2);
    CHECK(rate == doctest::Approx(0.5));
}

TEST_CASE("a 30-reference article with one editor match gives f about 1/30") {
    std::vector<std::vector<AuthorKey>> refs;
    refs.push_back({author("Alpha", 'A')});
    for (int i = 0; i < 29; ++i) refs.push_back({author("Filler" + std::to_string(i), 'F')});
    ArticleRecord a = make_article("d1", "E1", "2010-01-01", "2010-02-01", {author("S")}, {"kw"},
                                   {2}, std::move(refs), 0);
    auto [cnt, rate] = editor_citation_rate(a, make_editor("E1", "Alpha", 'A'));
    CHECK(cnt == 1);
    CHECK(rate == doctest::Approx(1.0 / 30.0));
}

TEST_CASE("degenerate editors never accrue citing references") {
    ArticleRecord a = make_article("d1", "E1", "2010-01-01", "2010-02-01", {author("S")}, {"kw"},
                                   {2}, {{author("Singh", 'S')}}, 0);
    EditorIdentity ed = make_editor("E1", "Singh", 'S');
    ed.degenerate = true;
    auto [cnt, rate] = editor_citation_rate(a, ed);
    CHECK(cnt == 0);
    CHECK(rate == 0.0);
}

TEST_CASE("zero-reference article has f = 0") {
    ArticleRecord a = make_article("d1", "E1", "2010-01-01", "2010-02-01", {author("S")}, {"kw"},
                                   {2}, {}, 0);
    auto [cnt, rate] = editor_citation_rate(a, make_editor("E1", "Alpha", 'A'));
    CHECK(cnt == 0);
    CHECK(rate == 0.0);
}

TEST_CASE("f_E equals the reference-weighted mean of per-article f_A") {
    std::mt19937 gen(13);
    std::vector<ArticleRecord> arts;
    std::uniform_int_distribution<int> nrefs(1, 20);
    int seq = 0;
    for (int i = 0; i < 12; ++i) {
        std::vector<std::vector<AuthorKey>> refs;
        const int n = nrefs(gen);
        for (int r = 0; r < n; ++r) {
            if (gen() % 5 == 0)
                refs.push_back({author("Alpha", 'A')});
            else
                refs.push_back({author("x" + std::to_string(seq++), 'B')});
        }
        arts.push_back(make_article("d" + std::to_string(i), "E1", "2010-01-01", "2010-02-01",
                                    {author("S")}, {"kw"}, {2}, std::move(refs), 0));
    }
    const Corpus c = testutil::seal({make_editor("E1", "Alpha", 'A')}, std::move(arts));
    const auto profiles = profiles_of(c);
    double weighted = 0;
    for (const auto& a : profiles[0].articles)
        weighted += a.editor_cite_rate * static_cast<double>(a.total_refs);
    CHECK(profiles[0].editor_cite_rate ==
          doctest::Approx(weighted / static_cast<double>(profiles[0].total_refs)).epsilon(1e-12));
}

TEST_CASE("gini is zero for equal values and matches the pairwise oracle") {
    CHECK(lorenz_gini({5, 5, 5, 5}).gini == doctest::Approx(0.0).epsilon(1e-12));

    const std::vector<double> v = {1, 1, 1, 97};
    CHECK(lorenz_gini(v).gini == doctest::Approx(gini_pairwise_oracle(v)).epsilon(1e-12));

    std::mt19937 gen(21);
    std::uniform_real_distribution<double> u(0.0, 100.0);
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<double> vals;
        const int n = 3 + static_cast<int>(gen() % 498);
        for (int i = 0; i < n; ++i) vals.push_back(u(gen));
        CHECK(std::abs(lorenz_gini(vals).gini - gini_pairwise_oracle(vals)) < 1e-12);
    }
}

TEST_CASE("gini is scale invariant and bounded") {
    const std::vector<double> v = {1, 4, 9, 2, 60, 3};
    const double g = lorenz_gini(v).gini;
    std::vector<double> scaled;
    for (double x : v) scaled.push_back(x * 17.5);
    CHECK(lorenz_gini(scaled).gini == doctest::Approx(g).epsilon(1e-12));
    CHECK(g >= 0.0);
    CHECK(g < 1.0);
}

TEST_CASE("gini rejects degenerate inputs") {
    CHECK_THROWS(lorenz_gini({1.0}));
    CHECK_THROWS(lorenz_gini({0.0, 0.0}));
    CHECK_THROWS(lorenz_gini({-1.0, 2.0}));
}

TEST_CASE("lorenz curve is a normalized non-decreasing path") {
    const auto s = lorenz_gini({3, 1, 4, 1, 5});
    CHECK(s.lorenz.front() == std::pair<double, double>{0.0, 0.0});
    CHECK(s.lorenz.back().first == doctest::Approx(1.0));
    CHECK(s.lorenz.back().second == doctest::Approx(1.0));
    for (std::size_t i = 1; i < s.lorenz.size(); ++i) {
        CHECK(s.lorenz[i].first >= s.lorenz[i - 1].first);
        CHECK(s.lorenz[i].second >= s.lorenz[i - 1].second);
    }
}

TEST_CASE("rank table orders by count with id tie-break and caps top10") {
    std::vector<ArticleRecord> arts;
    const std::vector<std::pair<std::string, int>> spec = {
        {"E1", 5}, {"E2", 5}, {"E3", 2}, {"E4", 9}};
    int seq = 0;
    for (const auto& [ed, n] : spec)
        for (int i = 0; i < n; ++i)
            arts.push_back(make_article("d" + std::to_string(seq++), ed, "2010-01-01",
                                        "2010-02-01", {author("S")}, {"kw"}, {2}, {}, 0));
    const Corpus c = testutil::seal({make_editor("E1", "A", 'A'), make_editor("E2", "B", 'B'),
                                     make_editor("E3", "C", 'C'), make_editor("E4", "D", 'D')},
                                    std::move(arts));
    const auto profiles = profiles_of(c);
    const auto rows = rank_table(profiles, 3);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].editor_id == "E4");
    CHECK(rows[1].editor_id == "E1");  // tie with E2 broken by id
    CHECK(rows[2].editor_id == "E2");
    for (const auto& p : profiles) CHECK(p.top10);  // only 4 editors, all in top 10
}

TEST_CASE("histogram covers the data range and preserves counts") {
    const std::vector<double> v = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    const auto h = histogram("x", v, 5);
    std::int64_t total = 0;
    for (auto cnt : h.counts) total += cnt;
    CHECK(total == 10);
    CHECK(h.bin_edges.front() == doctest::Approx(0.0));
    CHECK(h.bin_edges.back() == doctest::Approx(9.0));
    CHECK(h.mean == doctest::Approx(4.5));

    const auto single = histogram("x", {3.0, 3.0}, 4);
    std::int64_t stotal = 0;
    for (auto cnt : single.counts) stotal += cnt;
    CHECK(stotal == 2);
}

TEST_CASE("distribution tables apply the editor-level threshold") {
    std::vector<ArticleRecord> arts;
    int seq = 0;
    for (int i = 0; i < 12; ++i)
        arts.push_back(make_article("d" + std::to_string(seq++), "E1", "2010-01-01",
                                    "2010-02-01", {author("S")}, {"kw"}, {2}, {}, 0));
    arts.push_back(make_article("d" + std::to_string(seq++), "E2", "2010-01-01", "2010-02-01",
                                {author("S")}, {"kw"}, {2}, {}, 0));
    const Corpus c = testutil::seal({make_editor("E1", "A", 'A'), make_editor("E2", "B", 'B')},
                                    std::move(arts));
    const auto profiles = profiles_of(c);
    const auto tables = distribution_tables(profiles, {}, 10);
    REQUIRE(tables.size() == 8);
    CHECK(tables[0].name == "N_E");
    CHECK(tables[0].n == 2);        // population panel keeps everyone
    CHECK(tables[1].name == "Delta_A");
    CHECK(tables[1].n == 13);       // article-level panel keeps everything
    CHECK(tables[2].name == "d_E");
    CHECK(tables[2].n == 1);        // editor-level panel drops N_E < 10
}

TEST_CASE("tau ordering matches acceptance-date ordering") {
    std::vector<ArticleRecord> arts = {
        make_article("b", "E1", "2010-01-01", "2010-06-01", {author("S")}, {"kw"}, {2}, {}, 0),
        make_article("a", "E1", "2010-01-01", "2010-02-01", {author("S")}, {"kw"}, {2}, {}, 0),
        make_article("c", "E1", "2010-01-01", "2011-01-01", {author("S")}, {"kw"}, {2}, {}, 0),
    };
    const Corpus c = testutil::seal({make_editor("E1", "A", 'A')}, std::move(arts));
    const auto profiles = profiles_of(c);
    const auto& pa = profiles[0].articles;
    REQUIRE(pa.size() == 3);
    for (std::size_t i = 1; i < pa.size(); ++i) {
        CHECK(pa[i].service_age_years >= pa[i - 1].service_age_years);
        CHECK(c.articles[pa[i].article_index].accepted.days_since_epoch >=
              c.articles[pa[i - 1].article_index].accepted.days_since_epoch);
    }
}
