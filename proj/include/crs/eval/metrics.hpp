#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crs/core/crs.hpp"
#include "crs/core/types.hpp"
#include "crs/eval/matcher.hpp"
#include "crs/llm/backend.hpp"

namespace crs {

// Percentages are in [0, 100]; nullopt means "not applicable" (no scoreable
// items), which is reported distinctly from 0 unless the compatibility flag
// coerces it.
struct EvalCounts {
    std::size_t matched_characters = 0;
    std::size_t gt_characters = 0;
    std::size_t roles_scored = 0;
    long group_tp = 0;
    long group_fp = 0;
    long group_fn = 0;
    std::size_t group_name_characters = 0;
    std::size_t relation_pairs_matched = 0;
    std::size_t gt_relation_pairs = 0;
    std::size_t explicit_pairs_scored = 0;
    std::size_t implicit_pairs_scored = 0;

    bool operator==(const EvalCounts&) const = default;
};

struct EvalReport {
    std::optional<double> character_recall;
    std::optional<double> role_similarity;
    std::optional<double> group_match_precision;
    std::optional<double> group_match_recall;
    std::optional<double> group_match_f1;
    std::optional<double> group_name_similarity;
    std::optional<double> character_relation_recall;
    std::optional<double> explicit_relation_similarity;
    std::optional<double> implicit_relation_similarity;
    EvalCounts counts;
    bool na_as_zero = false;

    bool operator==(const EvalReport&) const = default;
};

// matched / |GT characters| * 100. Throws EmptyGroundTruthError when the GT
// character list is empty.
double character_recall(const MatchMap& match, const GroundTruth& gt);

// Mean over matched characters that have at least one GT role: best cosine
// similarity between the predicted role and the GT roles (clamped to [0,1]),
// x100. A matched character with a GT role but no predicted role counts 0.
// nullopt when no matched character has a GT role.
std::optional<double> role_similarity(const Crs& crs, const MatchMap& match,
                                      const GroundTruth& gt, LlmBackend& embedder,
                                      EvalCounts* counts = nullptr);

struct GroupF1 {
    double precision = 0.0;  // percent; TP+FP == 0 reports 0 by convention
    double recall = 0.0;
    double f1 = 0.0;
    long tp = 0, fp = 0, fn = 0;
};

// Pairwise clustering agreement over matched characters: a pair counts TP
// when grouped together on both sides, FP when together only in the
// prediction, FN when together only in the GT. Ungrouped characters join no
// same-group pair.
GroupF1 group_match_f1(const Crs& crs, const MatchMap& match, const GroundTruth& gt);

// Mean similarity of predicted vs GT group name over characters that take
// part in at least one TP pair; nullopt when there are none.
std::optional<double> group_name_similarity(const Crs& crs, const MatchMap& match,
                                            const GroundTruth& gt, LlmBackend& embedder,
                                            EvalCounts* counts = nullptr);

// Share of distinct GT key-relation pairs whose endpoints are both matched
// and connected by a stored relation in either direction. nullopt when the
// GT lists no key relations.
std::optional<double> character_relation_recall(const Crs& crs, const MatchMap& match,
                                                const GroundTruth& gt,
                                                EvalCounts* counts = nullptr);

enum class RelationKind { Explicit, Implicit };

// Mean best-pair similarity of relation labels over matched GT pairs that
// carry the requested label kind; a matched pair without a predicted label
// counts 0. nullopt when no matched pair carries the kind in the GT.
std::optional<double> relation_similarity(const Crs& crs, const MatchMap& match,
                                          const GroundTruth& gt, LlmBackend& embedder,
                                          RelationKind kind, EvalCounts* counts = nullptr);

struct SelectionPr {
    std::optional<double> precision;  // nullopt when nothing was selected
    double recall = 0.0;
    double f1 = 0.0;
    std::size_t matched = 0;

    bool operator==(const SelectionPr&) const = default;
};

// Selection quality against the GT character list via alias matching.
SelectionPr selection_pr(const CharacterGraph& graph, const std::vector<NodeId>& selected,
                         const GroundTruth& gt);

// Runs every metric. Throws EmptyGroundTruthError on an empty GT character
// list. With na_as_zero, not-applicable metrics are coerced to 0.0 in the
// report for table parity.
EvalReport evaluate(const Crs& crs, const GroundTruth& gt, LlmBackend& embedder,
                    bool na_as_zero = false);

}  // namespace crs
