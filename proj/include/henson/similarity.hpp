#pragma once

#include <optional>
#include <string>
#include <vector>

#include "henson/bitnode.hpp"
#include "henson/coding_tree.hpp"
#include "henson/linkage.hpp"

namespace henson {

// Structure of a meet-closed, strongly skew node set with designated coding
// nodes: members sorted by length (all lengths distinct), parent links,
// divergence bits, and the ordered essential pair events.
struct ClosureAnalysis {
    std::vector<BitNode> nodes;   // rank order = length order
    std::vector<int> parent;      // rank of the longest proper prefix, -1 at root
    std::vector<int> child_bit;   // node(|parent|), -1 at root
    std::vector<bool> is_coding;  // designated coding node
    std::vector<int> coding_ranks;

    struct Event {
        int level = 0;
        int anchor_rank = 0;                 // least rank with length > level
        std::vector<BitNode> pair;           // the two restrictions at the anchor length
        std::vector<std::vector<int>> leafsets; // coding indices above each part
    };
    std::vector<Event> events; // by increasing level

    int rank_of(const BitNode& b) const;
};

// Throws std::invalid_argument if the set is not meet-closed, has repeated
// lengths, or is not strongly skew.
ClosureAnalysis analyze_closure(const std::vector<BitNode>& closed,
                                const std::vector<BitNode>& coding);

// The unique candidate strong similarity (clauses 1-7) between two analyzed
// sets, or nullopt. Deterministic synchronized descent: ranks pair by length
// order, every clause checked explicitly.
std::optional<std::vector<std::pair<BitNode, BitNode>>> strong_similarity(
    const std::vector<BitNode>& s_closed, const std::vector<BitNode>& s_coding,
    const std::vector<BitNode>& t_closed, const std::vector<BitNode>& t_coding);

// Essential pair similarity of antichains: strong similarity of the meet
// closures plus order-preserving correspondence of essential pair events.
bool ep_similar(const Antichain& a, const Antichain& b);

struct EpFingerprint {
    std::string bytes; // canonical, stable across runs and platforms
    bool operator==(const EpFingerprint& o) const { return bytes == o.bytes; }
    bool operator<(const EpFingerprint& o) const { return bytes < o.bytes; }
    std::string to_json() const;
};

// Canonical form of the ep-class: fingerprint(a) == fingerprint(b) iff
// ep_similar(a, b). Encodes shape, kinds, divergence bits, passing matrix
// and the essential event sequence; never absolute lengths.
EpFingerprint fingerprint(const Antichain& a);

// Incremental linked sets: every new mutually linked level of size >= 3 has
// each proper subset (size >= 2) exclusively linked at its own level inside
// the same critical interval. Antichains drawn from a canonically linked
// tree always satisfy this; raw bS also realizes types that do not.
bool is_incremental(const std::vector<BitNode>& closed);

} // namespace henson
