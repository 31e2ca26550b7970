#pragma once

#include <optional>
#include <string>
#include <vector>

#include "henson/bitnode.hpp"
#include "henson/tfgraph.hpp"

namespace henson {

// A level-structured set of nodes with distinguished coding nodes. Level
// lengths need not be contiguous: an induced tree records only the lengths
// of its meet closure, the full bS truncation records every length below its
// depth. Nodes carry their entire bit history, so linkage questions never
// need the missing levels.
struct CodingTree {
    struct Level {
        int length = 0;
        std::vector<BitNode> nodes; // sorted lexicographically
    };
    std::vector<Level> levels;   // sorted by length
    std::vector<BitNode> coding; // c_0, c_1, ... strictly increasing lengths

    const Level* level_at(int length) const;
    std::vector<BitNode> all_nodes() const;
    int max_length() const { return levels.empty() ? 0 : levels.back().length; }
    bool is_coding(const BitNode& b) const;

    // Splitting node: both immediate extensions have an extension recorded.
    bool splits(const BitNode& b) const;

    std::string to_json() const; // {"depth":d,"coding":[...],"nodes":[...]}
    std::string to_dot() const;  // coding nodes doublecircle, splitting boxed
    std::string to_ascii() const;
};

// passing number t(|c|); requires |t| > |c|
int passing_number(const BitNode& t, const BitNode& c);

std::vector<BitNode> meet_closure(const std::vector<BitNode>& nodes);

// Strong skewness of a level-structured node set: every recorded level holds
// exactly one critical node (coding or splitting, not both), and every node
// passing a splitting node without extending it carries 0 there.
struct SkewReport {
    bool ok = true;
    std::string reason;
};
SkewReport check_strongly_skew(const CodingTree& t);
bool is_strongly_skew(const CodingTree& t);

// A finite antichain of coding nodes, kept sorted by length.
struct Antichain {
    std::vector<BitNode> coding_nodes;
    static Antichain of(std::vector<BitNode> nodes); // validates pairwise ⊄
    std::vector<BitNode> closure() const { return meet_closure(coding_nodes); }
};

// Tree induced by an antichain: {s↾|u| : s ∈ A, u ∈ cl(A), |u| <= |s|},
// with A's members as its coding nodes.
CodingTree induced_tree(const Antichain& a);

// The strong triangle-free coding tree bS over an enumerated Henson graph,
// truncated to `depth` levels. Stored level m holds {c_k↾m : m <= k < horizon}
// where the horizon is the graph's vertex count; existence questions about
// the untruncated tree go through member()/successors(), which use the exact
// characterization: s ∈ bS iff the vertex set {i : s(i)=1} is independent.
class HensonTree {
public:
    HensonTree(const EnumGraph& g, int depth);

    const CodingTree& tree() const { return tree_; }
    const EnumGraph& graph() const { return *g_; }
    int depth() const { return depth_; }

    const BitNode& coding_node(int n) const { return tree_.coding[n]; }

    bool member(const BitNode& s) const;
    bool extendable(const BitNode& s, bool b) const;
    std::vector<BitNode> successors(const BitNode& s) const;

private:
    const EnumGraph* g_;
    int depth_;
    CodingTree tree_;
};

// build_bS: pre depth >= 1 and g has at least depth vertices.
HensonTree build_bS(const EnumGraph& g, int depth);

} // namespace henson
