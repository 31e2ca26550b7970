#pragma once

#include <optional>
#include <string>
#include <vector>

#include "henson/bitnode.hpp"
#include "henson/coding_tree.hpp"

namespace henson {

// Least ℓ < min(|s|,|t|) with s(ℓ)=t(ℓ)=1.
inline std::optional<std::size_t> linked(const BitNode& s, const BitNode& t) {
    return s.first_joint_one(t);
}

// Linked with meet outside 0^{<ω}.
inline bool base_linked(const BitNode& s, const BitNode& t) {
    return linked(s, t).has_value() && !s.meet(t).all_zero();
}

struct LinkEvent {
    int level = 0;
    std::vector<BitNode> members; // distinct (level+1)-restrictions carrying 1
    bool essential = false;
    bool is_pair() const { return members.size() == 2; }
    std::string to_json() const;
};

// Joint levels of a node set: every ℓ whose restricted 1-set A_{ℓ,1} has at
// least two distinct members, in increasing level order. `essential` is set
// per §4.1 (exclusive pair, never jointly 1 below, not base-linked).
std::vector<LinkEvent> joint_levels(const std::vector<BitNode>& nodes);

// Minimal levels of new mutually linked sets (Def. of new mutually linked
// set: no earlier level carries all members).
std::vector<LinkEvent> new_mutually_linked_levels(const std::vector<BitNode>& nodes);
std::vector<LinkEvent> new_mutually_linked_levels(const CodingTree& t);

// Essential pairs: new levels with exactly two restricted 1-carriers.
std::vector<LinkEvent> essential_pairs(const std::vector<BitNode>& nodes);
std::vector<LinkEvent> essential_pairs(const CodingTree& t);

struct PocReport {
    bool ok = true;
    int violating_level = -1;
    std::string reason;
};

// Parallel-1s criterion: every mutually linked configuration (pairs of
// maximal nodes and the full set of every new mutually linked level) has a
// witnessing coding node, with no critical node strictly between the first
// joint level and the witness.
PocReport check_POC(const CodingTree& t);

// Strong criterion on subtrees: per new mutually linked level ℓ, the next
// critical node at-or-above ℓ is a coding node c, no terminal node ends in
// [ℓ,|c|), and c witnesses exactly A_{ℓ,1}.
PocReport check_SPOC(const CodingTree& t);

// Lexicographic order on node sets (§4.2): elementwise on the increasing
// enumerations, a proper prefix sorts first.
bool set_lex_less(const std::vector<BitNode>& a, const std::vector<BitNode>& b);

// Maximal pairwise linked subsets of a level set.
std::vector<std::vector<std::size_t>> maximal_linked_sets(const std::vector<BitNode>& level_set);

struct CompletionResult {
    std::vector<BitNode> level_set;
    std::vector<LinkEvent> events;
};

// Canonical completion of a level set whose top level carries a linked pair:
// for every maximal pairwise linked set M in x and every P ⊆ M with
// 3 <= |P| <= |M|, a mutually linked level end-extending exactly P, emitted
// size-by-size in lexicographic order at strictly increasing fresh levels of
// the host. Throws with a required-depth estimate if the host is too short.
CompletionResult canonical_completion(const std::vector<BitNode>& x, const HensonTree& host);

} // namespace henson
