#include "henson/coding_tree.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace henson {

const CodingTree::Level* CodingTree::level_at(int length) const {
    for (const auto& lv : levels)
        if (lv.length == length) return &lv;
    return nullptr;
}

std::vector<BitNode> CodingTree::all_nodes() const {
    std::vector<BitNode> out;
    for (const auto& lv : levels)
        out.insert(out.end(), lv.nodes.begin(), lv.nodes.end());
    return out;
}

bool CodingTree::is_coding(const BitNode& b) const {
    for (const auto& c : coding)
        if (c == b) return true;
    return false;
}

bool CodingTree::splits(const BitNode& b) const {
    bool saw0 = false, saw1 = false;
    for (const auto& lv : levels) {
        if (lv.length <= int(b.size())) continue;
        for (const auto& n : lv.nodes) {
            if (!b.is_prefix_of(n)) continue;
            (n.bit(b.size()) ? saw1 : saw0) = true;
            if (saw0 && saw1) return true;
        }
    }
    return false;
}

std::string CodingTree::to_json() const {
    nlohmann::json j;
    j["depth"] = levels.empty() ? 0 : levels.back().length + 1;
    auto cs = nlohmann::json::array();
    for (const auto& c : coding) cs.push_back(c.to_string());
    j["coding"] = cs;
    auto ns = nlohmann::json::array();
    for (const auto& lv : levels)
        for (const auto& n : lv.nodes) ns.push_back(n.to_string());
    j["nodes"] = ns;
    return j.dump();
}

namespace {
std::string dot_id(const BitNode& b) {
    std::string s = b.to_string();
    return s.empty() ? "root" : "n" + s;
}
std::string dot_label(const BitNode& b) {
    std::string s = b.to_string();
    return s.empty() ? "()" : s;
}
} // namespace

std::string CodingTree::to_dot() const {
    std::ostringstream out;
    out << "digraph tree {\n  rankdir=BT;\n  node [fontname=monospace];\n";
    std::vector<BitNode> nodes = all_nodes();
    std::sort(nodes.begin(), nodes.end(), [](const BitNode& a, const BitNode& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    for (const auto& n : nodes) {
        std::string shape = "ellipse";
        if (is_coding(n)) shape = "doublecircle";
        else if (splits(n)) shape = "box";
        out << "  " << dot_id(n) << " [label=\"" << dot_label(n) << "\", shape=" << shape
            << "];\n";
    }
    // edge to the longest recorded proper prefix
    for (const auto& n : nodes) {
        const BitNode* parent = nullptr;
        for (const auto& p : nodes)
            if (p.size() < n.size() && p.is_prefix_of(n))
                if (!parent || p.size() > parent->size()) parent = &p;
        if (parent) out << "  " << dot_id(*parent) << " -> " << dot_id(n) << ";\n";
    }
    out << "}\n";
    return out.str();
}

std::string CodingTree::to_ascii() const {
    std::ostringstream out;
    for (const auto& lv : levels) {
        out << "level " << lv.length << ":";
        for (const auto& n : lv.nodes) {
            out << " " << (n.empty() ? "()" : n.to_string());
            if (is_coding(n)) {
                for (std::size_t i = 0; i < coding.size(); ++i)
                    if (coding[i] == n) out << "[c" << i << "]";
            }
        }
        out << "\n";
    }
    return out.str();
}

int passing_number(const BitNode& t, const BitNode& c) {
    if (t.size() <= c.size())
        throw std::invalid_argument("passing_number: |t| must exceed |c|");
    return t.bit(c.size()) ? 1 : 0;
}

std::vector<BitNode> meet_closure(const std::vector<BitNode>& nodes) {
    std::vector<BitNode> out = nodes;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j)
            out.push_back(nodes[i].meet(nodes[j]));
    std::sort(out.begin(), out.end(), [](const BitNode& a, const BitNode& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

SkewReport check_strongly_skew(const CodingTree& t) {
    SkewReport rep;
    std::vector<BitNode> nodes = t.all_nodes();
    auto fail = [&](std::string why) {
        rep.ok = false;
        rep.reason = std::move(why);
        return rep;
    };
    for (const auto& lv : t.levels) {
        int critical = 0;
        for (const auto& n : lv.nodes) {
            bool cod = t.is_coding(n), spl = t.splits(n);
            if (cod && spl)
                return fail("node " + n.to_string() + " at level " +
                            std::to_string(lv.length) + " is both coding and splitting");
            if (cod || spl) ++critical;
        }
        if (critical != 1)
            return fail("level " + std::to_string(lv.length) + " holds " +
                        std::to_string(critical) + " critical nodes");
    }
    // strong skewness: nodes passing a splitting node without extending it are 0 there
    for (const auto& s : nodes) {
        if (!t.splits(s)) continue;
        for (const auto& u : nodes) {
            if (u.size() <= s.size() || s.is_prefix_of(u)) continue;
            if (u.bit(s.size()))
                return fail("node " + u.to_string() + " passes splitting node " +
                            s.to_string() + " with bit 1");
        }
    }
    return rep;
}

bool is_strongly_skew(const CodingTree& t) { return check_strongly_skew(t).ok; }

Antichain Antichain::of(std::vector<BitNode> nodes) {
    std::sort(nodes.begin(), nodes.end(), [](const BitNode& a, const BitNode& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j)
            if (nodes[i].is_prefix_of(nodes[j]) || nodes[i] == nodes[j])
                throw std::invalid_argument("not an antichain: " + nodes[i].to_string() +
                                            " below " + nodes[j].to_string());
    Antichain a;
    a.coding_nodes = std::move(nodes);
    return a;
}

CodingTree induced_tree(const Antichain& a) {
    CodingTree t;
    std::vector<BitNode> cl = meet_closure(a.coding_nodes);
    std::set<int> lengths;
    for (const auto& u : cl) lengths.insert(int(u.size()));
    for (int len : lengths) {
        CodingTree::Level lv;
        lv.length = len;
        std::set<std::string> seen;
        for (const auto& s : a.coding_nodes) {
            if (int(s.size()) < len) continue;
            BitNode r = s.prefix(len);
            if (seen.insert(r.to_string()).second) lv.nodes.push_back(r);
        }
        std::sort(lv.nodes.begin(), lv.nodes.end());
        t.levels.push_back(std::move(lv));
    }
    t.coding = a.coding_nodes;
    return t;
}

HensonTree::HensonTree(const EnumGraph& g, int depth) : g_(&g), depth_(depth) {
    if (depth < 1) throw std::invalid_argument("build_bS: depth must be >= 1");
    if (g.size() < depth)
        throw std::invalid_argument("build_bS: graph has fewer than depth vertices");
    int horizon = g.size();
    std::vector<BitNode> rows(horizon);
    for (int v = 0; v < horizon; ++v) {
        BitNode row = BitNode::zeros(v);
        for (int u : g.earlier_neighbors(v)) row.set(u);
        rows[v] = std::move(row);
    }
    for (int m = 0; m < depth; ++m) {
        CodingTree::Level lv;
        lv.length = m;
        std::set<std::string> seen;
        for (int k = m; k < horizon; ++k) {
            BitNode r = rows[k].prefix(m);
            if (seen.insert(r.to_string()).second) lv.nodes.push_back(r);
        }
        std::sort(lv.nodes.begin(), lv.nodes.end());
        tree_.levels.push_back(std::move(lv));
    }
    for (int n = 0; n < depth; ++n) tree_.coding.push_back(rows[n]);
}

bool HensonTree::member(const BitNode& s) const {
    if (int(s.size()) > g_->size()) return false;
    std::vector<std::size_t> ones = s.ones();
    std::vector<int> vs(ones.begin(), ones.end());
    return g_->independent(vs);
}

bool HensonTree::extendable(const BitNode& s, bool b) const {
    if (!b) return int(s.size()) < g_->size();
    if (int(s.size()) >= g_->size()) return false;
    int v = int(s.size());
    for (std::size_t u : s.ones())
        if (g_->edge(int(u), v)) return false;
    return member(s);
}

std::vector<BitNode> HensonTree::successors(const BitNode& s) const {
    std::vector<BitNode> out;
    if (!member(s)) return out;
    if (extendable(s, false)) out.push_back(s.extended(false));
    if (extendable(s, true)) out.push_back(s.extended(true));
    return out;
}

HensonTree build_bS(const EnumGraph& g, int depth) { return HensonTree(g, depth); }

} // namespace henson
