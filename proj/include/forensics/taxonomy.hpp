#pragma once

#include <array>
#include <string>
#include <unordered_map>
#include <vector>

#include "forensics/corpus.hpp"

namespace forensics {

inline constexpr int kNumTopLevelClasses = 10;
inline constexpr int kNumRefinedSubjectAreas = 6;

// Top-level class names, frequency-ordered (index 0 = class 1).
const std::array<std::string, kNumTopLevelClasses>& top_level_class_names();

// Refined subject-area labels. Classes 4+5, 6+7 and 8+9 are merged;
// class 10 never appears as principal.
const std::array<std::string, kNumRefinedSubjectAreas>& refined_sa_labels();

// Maps a principal top-level class (1..9) to the refined area 1..6.
int refined_sa_for_class(int top_level_class);

// Per-keyword weight vector over the 10 top-level classes. Row-normalized
// co-occurrence counts; all-zero for keywords never seen with any class.
struct KeywordWeightTable {
    std::unordered_map<std::string, std::array<double, kNumTopLevelClasses>> weights;

    const std::array<double, kNumTopLevelClasses>* find(const std::string& keyword) const {
        auto it = weights.find(keyword);
        return it == weights.end() ? nullptr : &it->second;
    }
};

struct Classification {
    int pre_exception_class = 0;  // argmax before the class-(1) exception rule
    int principal_class = 0;      // 1..10; 0 = unresolved
    int refined_sa = 0;           // 1..6; 0 = unresolved
    bool resolved() const { return principal_class != 0; }
};

KeywordWeightTable build_weight_table(const Corpus& corpus);

// Sums the article's keyword vectors; argmax with lowest-index tie-break.
// If the top class is (1) and the second-ranked weight is nonzero, the
// second-ranked class becomes principal; then the merge rule maps to s.
Classification classify(const ArticleRecord& article, const KeywordWeightTable& table);

std::vector<Classification> classify_all(const Corpus& corpus, const KeywordWeightTable& table);

enum class HistogramStage { PreException, PostException, Refined };

// Counts per class (size 10 for the class stages, 6 for refined).
// Unresolved articles are not counted.
std::vector<std::int64_t> sa_histogram(const std::vector<Classification>& classifications,
                                       HistogramStage stage);

}  // namespace forensics
