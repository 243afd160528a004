#include "crs/eval/metrics.hpp"

#include <algorithm>
#include <set>

#include "crs/errors.hpp"
#include "crs/text.hpp"

namespace crs {

namespace {

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

// Similarity of two label strings through the embedder, clamped to [0,1].
double label_similarity(LlmBackend& embedder, const std::string& a, const std::string& b) {
    return clamp01(cosine_similarity(embedder.embed(a), embedder.embed(b)));
}

// Inverse view of the match map: GT character name -> predicted node.
std::map<std::string, NodeId> invert(const MatchMap& match) {
    std::map<std::string, NodeId> out;
    for (const auto& [node, gt_name] : match.pairs) out.emplace(gt_name, node);
    return out;
}

std::optional<std::string> gt_group_of(const GroundTruth& gt, const std::string& name) {
    const auto it = gt.groups.find(name);
    if (it == gt.groups.end()) return std::nullopt;
    return it->second;
}

// Distinct unordered GT key-relation pairs, keyed by normalized names.
std::vector<std::pair<std::string, std::string>> gt_relation_pairs(const GroundTruth& gt) {
    std::set<std::pair<std::string, std::string>> seen;
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& rel : gt.key_relations) {
        const GtCharacter* s = gt.find_by_alias(rel.subject);
        const GtCharacter* o = gt.find_by_alias(rel.object);
        const std::string a = s ? s->name : text::normalize_name(rel.subject);
        const std::string b = o ? o->name : text::normalize_name(rel.object);
        auto key = a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
        if (seen.insert(key).second) out.push_back(std::move(key));
    }
    return out;
}

}  // namespace

double character_recall(const MatchMap& match, const GroundTruth& gt) {
    if (gt.characters.empty()) {
        throw EmptyGroundTruthError("ground truth lists no characters");
    }
    return 100.0 * static_cast<double>(match.size()) /
           static_cast<double>(gt.characters.size());
}

std::optional<double> role_similarity(const Crs& crs, const MatchMap& match,
                                      const GroundTruth& gt, LlmBackend& embedder,
                                      EvalCounts* counts) {
    double sum = 0.0;
    std::size_t included = 0;
    for (const auto& [node_id, gt_name] : match.pairs) {
        const auto roles_it = gt.roles.find(gt_name);
        if (roles_it == gt.roles.end() || roles_it->second.empty()) continue;  // excluded
        ++included;
        const auto& predicted = crs.graph.node(node_id).role;
        if (!predicted) continue;  // counts zero
        double best = 0.0;
        for (const auto& gt_role : roles_it->second) {
            best = std::max(best, label_similarity(embedder, *predicted, gt_role));
        }
        sum += best;
    }
    if (counts != nullptr) counts->roles_scored = included;
    if (included == 0) return std::nullopt;
    return 100.0 * sum / static_cast<double>(included);
}

GroupF1 group_match_f1(const Crs& crs, const MatchMap& match, const GroundTruth& gt) {
    std::vector<NodeId> ids;
    for (const auto& [id, gt_name] : match.pairs) {
        (void)gt_name;
        ids.push_back(id);
    }
    std::sort(ids.begin(), ids.end());

    GroupF1 out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        for (std::size_t j = i + 1; j < ids.size(); ++j) {
            const auto& ga = crs.graph.node(ids[i]).group;
            const auto& gb = crs.graph.node(ids[j]).group;
            const bool same_pred = ga && gb && *ga == *gb;

            const auto gta = gt_group_of(gt, match.pairs.at(ids[i]));
            const auto gtb = gt_group_of(gt, match.pairs.at(ids[j]));
            const bool same_gt = gta && gtb && *gta == *gtb;

            if (same_pred && same_gt) ++out.tp;
            else if (same_pred) ++out.fp;
            else if (same_gt) ++out.fn;
        }
    }
    out.precision = (out.tp + out.fp) == 0
                        ? 0.0
                        : 100.0 * static_cast<double>(out.tp) /
                              static_cast<double>(out.tp + out.fp);
    out.recall = (out.tp + out.fn) == 0
                     ? 0.0
                     : 100.0 * static_cast<double>(out.tp) /
                           static_cast<double>(out.tp + out.fn);
    out.f1 = (out.precision + out.recall) == 0.0
                 ? 0.0
                 : 2.0 * out.precision * out.recall / (out.precision + out.recall);
    return out;
}

std::optional<double> group_name_similarity(const Crs& crs, const MatchMap& match,
                                            const GroundTruth& gt, LlmBackend& embedder,
                                            EvalCounts* counts) {
    // Characters taking part in at least one TP pair.
    std::vector<NodeId> ids;
    for (const auto& [id, gt_name] : match.pairs) {
        (void)gt_name;
        ids.push_back(id);
    }
    std::sort(ids.begin(), ids.end());

    std::set<NodeId> tp_characters;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        for (std::size_t j = i + 1; j < ids.size(); ++j) {
            const auto& ga = crs.graph.node(ids[i]).group;
            const auto& gb = crs.graph.node(ids[j]).group;
            const bool same_pred = ga && gb && *ga == *gb;
            const auto gta = gt_group_of(gt, match.pairs.at(ids[i]));
            const auto gtb = gt_group_of(gt, match.pairs.at(ids[j]));
            const bool same_gt = gta && gtb && *gta == *gtb;
            if (same_pred && same_gt) {
                tp_characters.insert(ids[i]);
                tp_characters.insert(ids[j]);
            }
        }
    }
    if (counts != nullptr) counts->group_name_characters = tp_characters.size();
    if (tp_characters.empty()) return std::nullopt;

    double sum = 0.0;
    for (const NodeId id : tp_characters) {
        const auto& predicted = crs.graph.node(id).group;
        const auto gt_group = gt_group_of(gt, match.pairs.at(id));
        // TP membership implies both sides are grouped.
        sum += label_similarity(embedder, *predicted, *gt_group);
    }
    return 100.0 * sum / static_cast<double>(tp_characters.size());
}

std::optional<double> character_relation_recall(const Crs& crs, const MatchMap& match,
                                                const GroundTruth& gt, EvalCounts* counts) {
    const auto pairs = gt_relation_pairs(gt);
    if (counts != nullptr) counts->gt_relation_pairs = pairs.size();
    if (pairs.empty()) return std::nullopt;

    const auto by_gt_name = invert(match);
    std::size_t matched = 0;
    for (const auto& [a, b] : pairs) {
        const auto na = by_gt_name.find(a);
        const auto nb = by_gt_name.find(b);
        if (na == by_gt_name.end() || nb == by_gt_name.end()) continue;
        const bool connected = std::any_of(
            crs.relations.begin(), crs.relations.end(), [&](const Relation& r) {
                return (r.subject == na->second && r.object == nb->second) ||
                       (r.subject == nb->second && r.object == na->second);
            });
        if (connected) ++matched;
    }
    if (counts != nullptr) counts->relation_pairs_matched = matched;
    return 100.0 * static_cast<double>(matched) / static_cast<double>(pairs.size());
}

std::optional<double> relation_similarity(const Crs& crs, const MatchMap& match,
                                          const GroundTruth& gt, LlmBackend& embedder,
                                          RelationKind kind, EvalCounts* counts) {
    const auto by_gt_name = invert(match);

    const auto labels_of = [&](const GtRelation& rel) -> const std::vector<std::string>& {
        return kind == RelationKind::Explicit ? rel.explicit_labels : rel.implicit_labels;
    };

    // Group GT labels by matched unordered node pair; pairs lacking the
    // requested kind in the GT are excluded entirely.
    std::map<std::pair<NodeId, NodeId>, std::vector<std::string>> gt_labels;
    for (const auto& rel : gt.key_relations) {
        if (labels_of(rel).empty()) continue;
        const GtCharacter* s = gt.find_by_alias(rel.subject);
        const GtCharacter* o = gt.find_by_alias(rel.object);
        if (s == nullptr || o == nullptr) continue;
        const auto ns = by_gt_name.find(s->name);
        const auto no = by_gt_name.find(o->name);
        if (ns == by_gt_name.end() || no == by_gt_name.end()) continue;
        auto key = ns->second <= no->second ? std::make_pair(ns->second, no->second)
                                            : std::make_pair(no->second, ns->second);
        auto& bucket = gt_labels[key];
        for (const auto& label : labels_of(rel)) bucket.push_back(label);
    }

    double sum = 0.0;
    std::size_t included = 0;
    for (const auto& [key, labels] : gt_labels) {
        // Only matched pairs score: the structure must hold some relation
        // between the two nodes. A pair without any stored relation is a
        // recall miss, not a zero-similarity entry.
        bool connected = false;
        std::vector<std::string> predicted;
        for (const auto& rel : crs.relations) {
            const bool hits = (rel.subject == key.first && rel.object == key.second) ||
                              (rel.subject == key.second && rel.object == key.first);
            if (!hits) continue;
            connected = true;
            if (kind == RelationKind::Explicit && rel.explicit_label) {
                predicted.push_back(*rel.explicit_label);
            }
            if (kind == RelationKind::Implicit && rel.implicit_label) {
                predicted.push_back(*rel.implicit_label);
            }
        }
        if (!connected) continue;
        ++included;
        // A relation lacking the requested label kind contributes zero but
        // stays in the denominator.
        double best = 0.0;
        for (const auto& p : predicted) {
            for (const auto& g : labels) {
                best = std::max(best, label_similarity(embedder, p, g));
            }
        }
        sum += best;
    }
    if (counts != nullptr) {
        if (kind == RelationKind::Explicit) counts->explicit_pairs_scored = included;
        else counts->implicit_pairs_scored = included;
    }
    if (included == 0) return std::nullopt;
    return 100.0 * sum / static_cast<double>(included);
}

SelectionPr selection_pr(const CharacterGraph& graph, const std::vector<NodeId>& selected,
                         const GroundTruth& gt) {
    if (gt.characters.empty()) {
        throw EmptyGroundTruthError("ground truth lists no characters");
    }
    const MatchMap match = match_subset(graph, selected, gt);
    SelectionPr out;
    out.matched = match.size();
    if (!selected.empty()) {
        out.precision = 100.0 * static_cast<double>(out.matched) /
                        static_cast<double>(selected.size());
    }
    out.recall = 100.0 * static_cast<double>(out.matched) /
                 static_cast<double>(gt.characters.size());
    const double p = out.precision.value_or(0.0);
    out.f1 = (p + out.recall) == 0.0 ? 0.0 : 2.0 * p * out.recall / (p + out.recall);
    return out;
}

EvalReport evaluate(const Crs& crs, const GroundTruth& gt, LlmBackend& embedder,
                    bool na_as_zero) {
    const MatchMap match = match_characters(crs, gt);

    EvalReport report;
    report.na_as_zero = na_as_zero;
    report.counts.matched_characters = match.size();
    report.counts.gt_characters = gt.characters.size();

    report.character_recall = character_recall(match, gt);
    report.role_similarity = role_similarity(crs, match, gt, embedder, &report.counts);

    const GroupF1 group = group_match_f1(crs, match, gt);
    report.group_match_precision = group.precision;
    report.group_match_recall = group.recall;
    report.group_match_f1 = group.f1;
    report.counts.group_tp = group.tp;
    report.counts.group_fp = group.fp;
    report.counts.group_fn = group.fn;

    report.group_name_similarity = group_name_similarity(crs, match, gt, embedder, &report.counts);
    report.character_relation_recall = character_relation_recall(crs, match, gt, &report.counts);
    report.explicit_relation_similarity =
        relation_similarity(crs, match, gt, embedder, RelationKind::Explicit, &report.counts);
    report.implicit_relation_similarity =
        relation_similarity(crs, match, gt, embedder, RelationKind::Implicit, &report.counts);

    if (na_as_zero) {
        for (auto* metric : {&report.role_similarity, &report.group_name_similarity,
                             &report.character_relation_recall,
                             &report.explicit_relation_similarity,
                             &report.implicit_relation_similarity}) {
            if (!metric->has_value()) *metric = 0.0;
        }
    }
    return report;
}

}  // namespace crs
