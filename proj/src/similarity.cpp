#include "henson/similarity.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace henson {

int ClosureAnalysis::rank_of(const BitNode& b) const {
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i] == b) return int(i);
    return -1;
}

namespace {

bool set_splits(const std::vector<BitNode>& nodes, const BitNode& u) {
    bool s0 = false, s1 = false;
    for (const auto& x : nodes) {
        if (x.size() <= u.size() || !u.is_prefix_of(x)) continue;
        (x.bit(u.size()) ? s1 : s0) = true;
    }
    return s0 && s1;
}

} // namespace

ClosureAnalysis analyze_closure(const std::vector<BitNode>& closed,
                                const std::vector<BitNode>& coding) {
    ClosureAnalysis a;
    a.nodes = closed;
    std::sort(a.nodes.begin(), a.nodes.end(), [](const BitNode& x, const BitNode& y) {
        if (x.size() != y.size()) return x.size() < y.size();
        return x < y;
    });
    a.nodes.erase(std::unique(a.nodes.begin(), a.nodes.end()), a.nodes.end());
    std::size_t n = a.nodes.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (a.nodes[i].size() == a.nodes[i + 1].size())
            throw std::invalid_argument("analyze_closure: two members of equal length " +
                                        std::to_string(a.nodes[i].size()));
    // meet closure
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            BitNode m = a.nodes[i].meet(a.nodes[j]);
            bool found = false;
            for (const auto& x : a.nodes)
                if (x == m) { found = true; break; }
            if (!found)
                throw std::invalid_argument("analyze_closure: set not meet-closed");
        }
    // kinds and strong skewness
    a.is_coding.assign(n, false);
    for (const auto& c : coding) {
        int r = a.rank_of(c);
        if (r < 0) throw std::invalid_argument("analyze_closure: coding node not a member");
        a.is_coding[r] = true;
        a.coding_ranks.push_back(r);
    }
    std::sort(a.coding_ranks.begin(), a.coding_ranks.end());
    for (std::size_t i = 0; i < n; ++i) {
        bool spl = set_splits(a.nodes, a.nodes[i]);
        if (spl && a.is_coding[i])
            throw std::invalid_argument("analyze_closure: node both coding and splitting");
        if (!spl && !a.is_coding[i])
            throw std::invalid_argument("analyze_closure: member neither coding nor splitting");
        if (spl)
            for (const auto& u : a.nodes)
                if (u.size() > a.nodes[i].size() && !a.nodes[i].is_prefix_of(u) &&
                    u.bit(a.nodes[i].size()))
                    throw std::invalid_argument("analyze_closure: not strongly skew at level " +
                                                std::to_string(a.nodes[i].size()));
    }
    // parents and divergence bits
    a.parent.assign(n, -1);
    a.child_bit.assign(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        for (int j = int(i) - 1; j >= 0; --j)
            if (a.nodes[j].is_prefix_of(a.nodes[i])) {
                a.parent[i] = j;
                a.child_bit[i] = a.nodes[i].bit(a.nodes[j].size()) ? 1 : 0;
                break;
            }
    }
    // essential events with anchors
    for (const auto& ev : essential_pairs(a.nodes)) {
        ClosureAnalysis::Event e;
        e.level = ev.level;
        int anchor = -1;
        for (std::size_t i = 0; i < n; ++i)
            if (int(a.nodes[i].size()) > ev.level) { anchor = int(i); break; }
        if (anchor < 0) continue; // cannot happen: participants are longer
        e.anchor_rank = anchor;
        std::size_t dlen = a.nodes[anchor].size();
        std::set<std::string> seen;
        for (const auto& x : a.nodes) {
            if (x.size() < dlen || !x.bit(e.level)) continue;
            BitNode r = x.prefix(dlen);
            if (seen.insert(r.to_string()).second) e.pair.push_back(r);
        }
        std::sort(e.pair.begin(), e.pair.end());
        for (const auto& part : e.pair) {
            std::vector<int> leaves;
            for (std::size_t ci = 0; ci < a.coding_ranks.size(); ++ci)
                if (part.is_prefix_of(a.nodes[a.coding_ranks[ci]])) leaves.push_back(int(ci));
            e.leafsets.push_back(std::move(leaves));
        }
        a.events.push_back(std::move(e));
    }
    std::sort(a.events.begin(), a.events.end(),
              [](const auto& x, const auto& y) { return x.level < y.level; });
    return a;
}

std::optional<std::vector<std::pair<BitNode, BitNode>>> strong_similarity(
    const std::vector<BitNode>& s_closed, const std::vector<BitNode>& s_coding,
    const std::vector<BitNode>& t_closed, const std::vector<BitNode>& t_coding) {
    ClosureAnalysis S = analyze_closure(s_closed, s_coding);
    ClosureAnalysis T = analyze_closure(t_closed, t_coding);
    std::size_t n = S.nodes.size();
    if (T.nodes.size() != n) return std::nullopt;
    // (6) coding nodes correspond, in order
    if (S.coding_ranks != T.coding_ranks) return std::nullopt;
    // tree shape: parents and divergence bits pin (2),(3),(4) together with
    // the explicit pairwise checks below
    if (S.parent != T.parent || S.child_bit != T.child_bit) return std::nullopt;
    for (std::size_t i = 0; i < n; ++i)
        if (S.is_coding[i] != T.is_coding[i]) return std::nullopt;
    // (3),(4): meets map to meets
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            int ms = S.rank_of(S.nodes[i].meet(S.nodes[j]));
            int mt = T.rank_of(T.nodes[i].meet(T.nodes[j]));
            if (ms != mt) return std::nullopt;
        }
    // (2): lexicographic order
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            bool cs = S.nodes[i].is_prefix_of(S.nodes[j]);
            bool ct = T.nodes[i].is_prefix_of(T.nodes[j]);
            if (cs != ct) return std::nullopt;
            if (cs) continue;
            if ((S.nodes[i] < S.nodes[j]) != (T.nodes[i] < T.nodes[j])) return std::nullopt;
        }
    // (7): passing numbers at coding nodes
    for (int cr : S.coding_ranks) {
        std::size_t clen_s = S.nodes[cr].size(), clen_t = T.nodes[cr].size();
        for (std::size_t i = 0; i < n; ++i) {
            if (S.nodes[i].size() <= clen_s) continue;
            if (T.nodes[i].size() <= clen_t) return std::nullopt;
            if (S.nodes[i].bit(clen_s) != T.nodes[i].bit(clen_t)) return std::nullopt;
        }
    }
    std::vector<std::pair<BitNode, BitNode>> map;
    for (std::size_t i = 0; i < n; ++i) map.emplace_back(S.nodes[i], T.nodes[i]);
    return map;
}

bool ep_similar(const Antichain& a, const Antichain& b) {
    auto cla = a.closure();
    auto clb = b.closure();
    auto f = strong_similarity(cla, a.coding_nodes, clb, b.coding_nodes);
    if (!f) return false;
    ClosureAnalysis S = analyze_closure(cla, a.coding_nodes);
    ClosureAnalysis T = analyze_closure(clb, b.coding_nodes);
    if (S.events.size() != T.events.size()) return false;
    for (std::size_t i = 0; i < S.events.size(); ++i) {
        const auto& es = S.events[i];
        const auto& et = T.events[i];
        if (es.anchor_rank != et.anchor_rank) return false;
        // image of the S pair under the rank map, compared as a set
        std::size_t dlen_t = T.nodes[et.anchor_rank].size();
        std::vector<BitNode> image;
        for (const auto& part : es.pair) {
            int host = -1;
            for (std::size_t r = 0; r < S.nodes.size(); ++r)
                if (S.nodes[r].size() >= part.size() && part.is_prefix_of(S.nodes[r])) {
                    host = int(r);
                    break;
                }
            if (host < 0) return false;
            image.push_back(T.nodes[host].prefix(dlen_t));
        }
        std::sort(image.begin(), image.end());
        image.erase(std::unique(image.begin(), image.end()), image.end());
        if (image != et.pair) return false;
    }
    return true;
}

EpFingerprint fingerprint(const Antichain& a) {
    ClosureAnalysis an = analyze_closure(a.closure(), a.coding_nodes);
    std::ostringstream out;
    out << "ep1|n=" << an.nodes.size() << "|";
    for (std::size_t i = 0; i < an.nodes.size(); ++i) {
        out << (an.is_coding[i] ? 'c' : 's') << an.parent[i] << ":";
        out << an.child_bit[i] << ";";
    }
    out << "|pass=";
    for (int cr : an.coding_ranks) {
        std::size_t clen = an.nodes[cr].size();
        out << "[";
        for (std::size_t i = 0; i < an.nodes.size(); ++i)
            if (an.nodes[i].size() > clen) out << (an.nodes[i].bit(clen) ? '1' : '0');
        out << "]";
    }
    out << "|ev=";
    for (const auto& e : an.events) {
        out << "(a" << e.anchor_rank;
        for (const auto& ls : e.leafsets) {
            out << ";{";
            for (std::size_t i = 0; i < ls.size(); ++i) out << (i ? "," : "") << ls[i];
            out << "}";
        }
        out << ")";
    }
    return EpFingerprint{out.str()};
}

std::string EpFingerprint::to_json() const {
    nlohmann::json j;
    j["fingerprint"] = bytes;
    return j.dump();
}

bool is_incremental(const std::vector<BitNode>& closed) {
    std::vector<int> member_lengths;
    for (const auto& x : closed) member_lengths.push_back(int(x.size()));
    std::sort(member_lengths.begin(), member_lengths.end());
    auto all_joint = joint_levels(closed);
    for (const auto& ev : new_mutually_linked_levels(closed)) {
        std::size_t z = ev.members.size();
        if (z < 3) continue;
        // longest critical node strictly below the level
        int interval_floor = -1;
        for (int ml : member_lengths)
            if (ml < ev.level) interval_floor = ml;
        // every proper subset of size >= 2 exclusively linked inside the interval
        for (unsigned mask = 1; mask < (1u << z); ++mask) {
            int pc = std::popcount(mask);
            if (pc < 2 || pc == int(z)) continue;
            bool found = false;
            for (const auto& jl : all_joint) {
                if (jl.level <= interval_floor || jl.level >= ev.level) continue;
                if (jl.members.size() != std::size_t(pc)) continue;
                // the subset's restrictions must be exactly the linked set
                std::vector<BitNode> restr;
                for (std::size_t b = 0; b < z; ++b)
                    if (mask & (1u << b)) restr.push_back(ev.members[b].prefix(jl.level + 1));
                std::sort(restr.begin(), restr.end());
                restr.erase(std::unique(restr.begin(), restr.end()), restr.end());
                if (restr == jl.members) { found = true; break; }
            }
            if (!found) return false;
        }
    }
    return true;
}

} // namespace henson
