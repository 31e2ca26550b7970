#pragma once

#include <optional>
#include <string>
#include <vector>

#include "henson/bitnode.hpp"
#include "henson/coding_tree.hpp"
#include "henson/linkage.hpp"
#include "henson/tfgraph.hpp"

namespace henson {

// A strongly skew canonically linked coding subtree of bS, together with the
// witnessing coding nodes of the host (one per deliberate link event: the
// host's own coding node at that level) and, when built by the D-capable
// builder, the antichain plan for build_D.
struct CanonicallyLinkedTree {
    CodingTree tree;                 // recorded critical levels + coding nodes
    std::vector<BitNode> witnesses;  // W: host coding nodes at event levels
    std::vector<LinkEvent> events;   // deliberate joint-1 events, by level
    std::vector<BitNode> tips;       // final branch nodes
    EnumGraph graph;                 // the backing enumerated graph, extended
    std::vector<BitNode> d_plan;     // c^D_n candidates, when co-built

    std::string to_json() const;
};

// Mirrors the host skeleton (one split per newly realizable 1-type per vertex
// interval, reserve branch unsplit after the two base splits, coding node on
// the branch coding N(v_n)) for exactly `critical_levels` critical nodes,
// with the full pre-coding link cascade. Pure skeleton: no antichain plan.
CanonicallyLinkedTree build_canonically_linked(const EnumGraph& g, int critical_levels);

struct VerifyReport {
    bool pass = true;
    std::vector<std::string> violations;
    std::string first() const { return violations.empty() ? "" : violations.front(); }
};

// Checks the hereditary consequences of canonical linkage: strong skewness,
// every coding level's 1-set fully pre-linked subset-by-subset inside its
// critical interval (new pairs in lex order), and incrementality of every
// new mutually linked level of size >= 3.
VerifyReport verify_canonically_linked(const CodingTree& t);

struct DAntichain {
    Antichain antichain;             // the coding nodes c^D_n, by length
    const std::vector<BitNode>& coding_nodes() const { return antichain.coding_nodes; }
};

// Builds a canonically linked tree with capacity for `coding_count` antichain
// coding nodes (thinned branch schedule) and the antichain itself.
struct DBuild {
    CanonicallyLinkedTree s;
    DAntichain d;
};
DBuild build_d(const EnumGraph& g, int coding_count);

// Extracts the antichain from a tree built with capacity; throws with a
// depth estimate when the tree lacks it.
DAntichain build_D(const CanonicallyLinkedTree& s, int coding_count);

} // namespace henson
