#include "forensics/taxonomy.hpp"

namespace forensics {

const std::array<std::string, kNumTopLevelClasses>& top_level_class_names() {
    static const std::array<std::string, kNumTopLevelClasses> kNames = {
        "Biology and life sciences",
        "Medicine and health sciences",
        "Physical sciences",
        "People and places",
        "Social sciences",
        "Engineering and technology",
        "Computer and information sciences",
        "Ecology and environmental sciences",
        "Earth sciences",
        "Science policy",
    };
    return kNames;
}

const std::array<std::string, kNumRefinedSubjectAreas>& refined_sa_labels() {
    static const std::array<std::string, kNumRefinedSubjectAreas> kLabels = {
        "Biology and life sciences",
        "Medicine and health sciences",
        "Physical sciences",
        "People and places / Social sciences",
        "Engineering and technology / Computer and information sciences",
        "Ecology and environmental sciences / Earth sciences",
    };
    return kLabels;
}

int refined_sa_for_class(int top_level_class) {
    switch (top_level_class) {
        case 1: return 1;
        case 2: return 2;
        case 3: return 3;
        case 4:
        case 5: return 4;
        case 6:
        case 7: return 5;
        case 8:
        case 9: return 6;
        default: return 0;  // class 10 (and invalid) has no refined area
    }
}

KeywordWeightTable build_weight_table(const Corpus& corpus) {
    std::unordered_map<std::string, std::array<double, kNumTopLevelClasses>> counts;
    for (const auto& a : corpus.articles) {
        for (const auto& kw : a.keywords) {
            auto& row = counts[kw];  // value-initialized to zeros
            for (int cls : a.top_level_classes) row[cls - 1] += 1.0;
        }
    }
    KeywordWeightTable table;
    for (auto& [kw, row] : counts) {
        double sum = 0;
        for (double w : row) sum += w;
        if (sum > 0)
            for (double& w : row) w /= sum;
        table.weights.emplace(kw, row);
    }
    return table;
}

Classification classify(const ArticleRecord& article, const KeywordWeightTable& table) {
    std::array<double, kNumTopLevelClasses> total{};
    for (const auto& kw : article.keywords) {
        if (const auto* row = table.find(kw))
            for (int c = 0; c < kNumTopLevelClasses; ++c) total[c] += (*row)[c];
    }
    // argmax with lowest-index tie-break
    int best = -1, second = -1;
    for (int c = 0; c < kNumTopLevelClasses; ++c) {
        if (total[c] <= 0) continue;
        if (best < 0 || total[c] > total[best]) {
            second = best;
            best = c;
        } else if (second < 0 || total[c] > total[second]) {
            second = c;
        }
    }
    Classification cls;
    if (best < 0) return cls;  // all keywords unseen: unresolved
    cls.pre_exception_class = best + 1;
    cls.principal_class = best + 1;
    // Exception rule: class (1) yields to the second-ranked class when one
    // exists with nonzero weight.
    if (cls.principal_class == 1 && second >= 0) cls.principal_class = second + 1;
    cls.refined_sa = refined_sa_for_class(cls.principal_class);
    // Principal on class 10 has no refined area; the whole article is
    // unresolved so histogram totals stay consistent across stages.
    if (cls.refined_sa == 0) cls = Classification{};
    return cls;
}

std::vector<Classification> classify_all(const Corpus& corpus, const KeywordWeightTable& table) {
    std::vector<Classification> out;
    out.reserve(corpus.articles.size());
    for (const auto& a : corpus.articles) out.push_back(classify(a, table));
    return out;
}

std::vector<std::int64_t> sa_histogram(const std::vector<Classification>& classifications,
                                       HistogramStage stage) {
    const std::size_t n = stage == HistogramStage::Refined ? kNumRefinedSubjectAreas
                                                           : kNumTopLevelClasses;
    std::vector<std::int64_t> counts(n, 0);
    for (const auto& c : classifications) {
        int bucket = 0;
        switch (stage) {
            case HistogramStage::PreException: bucket = c.pre_exception_class; break;
            case HistogramStage::PostException: bucket = c.principal_class; break;
            case HistogramStage::Refined: bucket = c.refined_sa; break;
        }
        if (bucket >= 1 && bucket <= static_cast<int>(n)) ++counts[bucket - 1];
    }
    return counts;
}

}  // namespace forensics
