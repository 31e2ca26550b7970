#include "henson/linkage.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace henson {

std::string LinkEvent::to_json() const {
    nlohmann::json j;
    j["level"] = level;
    auto ms = nlohmann::json::array();
    for (const auto& m : members) ms.push_back(m.to_string());
    j["members"] = ms;
    j["essential"] = essential;
    return j.dump();
}

namespace {

// distinct (ℓ+1)-restrictions of nodes with bit 1 at ℓ
std::vector<BitNode> restricted_one_set(const std::vector<BitNode>& nodes, int level) {
    std::vector<BitNode> out;
    std::set<std::string> seen;
    for (const auto& n : nodes) {
        if (int(n.size()) <= level || !n.bit(level)) continue;
        BitNode r = n.prefix(level + 1);
        if (seen.insert(r.to_string()).second) out.push_back(std::move(r));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// no earlier level carries every member of `members`
bool is_new_at(const std::vector<BitNode>& members, int level) {
    for (int l2 = 0; l2 < level; ++l2) {
        bool all = true;
        for (const auto& m : members)
            if (!m.bit(l2)) { all = false; break; }
        if (all) return false;
    }
    return true;
}

std::vector<int> candidate_levels(const std::vector<BitNode>& nodes) {
    std::map<int, int> count;
    for (const auto& n : nodes)
        for (std::size_t o : n.ones()) ++count[int(o)];
    std::vector<int> out;
    for (auto [lvl, c] : count)
        if (c >= 2) out.push_back(lvl);
    return out;
}

} // namespace

std::vector<LinkEvent> joint_levels(const std::vector<BitNode>& nodes) {
    std::vector<LinkEvent> out;
    for (int lvl : candidate_levels(nodes)) {
        std::vector<BitNode> members = restricted_one_set(nodes, lvl);
        if (members.size() < 2) continue;
        LinkEvent ev;
        ev.level = lvl;
        ev.essential = members.size() == 2 && is_new_at(members, lvl) &&
                       members[0].meet(members[1]).all_zero();
        ev.members = std::move(members);
        out.push_back(std::move(ev));
    }
    return out;
}

std::vector<LinkEvent> new_mutually_linked_levels(const std::vector<BitNode>& nodes) {
    std::vector<LinkEvent> out;
    for (auto& ev : joint_levels(nodes))
        if (is_new_at(ev.members, ev.level)) out.push_back(std::move(ev));
    return out;
}

std::vector<LinkEvent> new_mutually_linked_levels(const CodingTree& t) {
    return new_mutually_linked_levels(t.all_nodes());
}

std::vector<LinkEvent> essential_pairs(const std::vector<BitNode>& nodes) {
    std::vector<LinkEvent> out;
    for (auto& ev : new_mutually_linked_levels(nodes))
        if (ev.essential) out.push_back(std::move(ev));
    return out;
}

std::vector<LinkEvent> essential_pairs(const CodingTree& t) {
    return essential_pairs(t.all_nodes());
}

namespace {

std::vector<BitNode> maximal_nodes(const CodingTree& t) {
    std::vector<BitNode> all = t.all_nodes(), out;
    for (const auto& n : all) {
        bool extended = false;
        for (const auto& m : all)
            if (m.size() > n.size() && n.is_prefix_of(m)) { extended = true; break; }
        if (!extended) out.push_back(n);
    }
    return out;
}

std::vector<int> critical_lengths(const CodingTree& t) {
    std::set<int> ls;
    for (const auto& c : t.coding) ls.insert(int(c.size()));
    for (const auto& n : t.all_nodes())
        if (t.splits(n)) ls.insert(int(n.size()));
    return {ls.begin(), ls.end()};
}

// clause (1)+(2) for one mutually linked configuration
bool poc_config(const CodingTree& t, const std::vector<BitNode>& members, int first_joint,
                const std::vector<int>& criticals, PocReport& rep) {
    int witness_len = -1;
    for (const auto& c : t.coding) {
        bool all = true;
        for (const auto& m : members) {
            if (m.size() <= c.size() || !m.bit(c.size())) { all = false; break; }
        }
        if (all) { witness_len = int(c.size()); break; }
    }
    if (witness_len < 0) {
        rep.ok = false;
        rep.violating_level = first_joint;
        rep.reason = "no witnessing coding node for the set mutually linked at level " +
                     std::to_string(first_joint);
        return false;
    }
    for (int cl : criticals)
        if (cl > first_joint && cl < witness_len) {
            rep.ok = false;
            rep.violating_level = cl;
            rep.reason = "critical node at level " + std::to_string(cl) +
                         " strictly between linked level " + std::to_string(first_joint) +
                         " and witness at " + std::to_string(witness_len);
            return false;
        }
    return true;
}

} // namespace

PocReport check_POC(const CodingTree& t) {
    PocReport rep;
    std::vector<int> criticals = critical_lengths(t);
    // pairs of maximal nodes
    std::vector<BitNode> mx = maximal_nodes(t);
    for (std::size_t i = 0; i < mx.size(); ++i)
        for (std::size_t j = i + 1; j < mx.size(); ++j) {
            auto l = linked(mx[i], mx[j]);
            if (!l) continue;
            std::vector<BitNode> pair{mx[i].prefix(*l + 1), mx[j].prefix(*l + 1)};
            if (pair[0] == pair[1]) continue;
            if (!poc_config(t, pair, int(*l), criticals, rep)) return rep;
        }
    // full new mutually linked sets
    for (const auto& ev : new_mutually_linked_levels(t))
        if (!poc_config(t, ev.members, ev.level, criticals, rep)) return rep;
    return rep;
}

PocReport check_SPOC(const CodingTree& t) {
    PocReport rep;
    std::vector<BitNode> all = t.all_nodes();
    std::vector<BitNode> terminals = maximal_nodes(t);
    for (const auto& ev : new_mutually_linked_levels(t)) {
        // (1) the first critical node at-or-above the level is a coding node
        const BitNode* crit = nullptr;
        bool crit_coding = false;
        for (const auto& n : all) {
            bool cod = t.is_coding(n), spl = t.splits(n);
            if (!cod && !spl) continue;
            if (int(n.size()) < ev.level) continue;
            if (!crit || n.size() < crit->size()) {
                crit = &n;
                crit_coding = cod;
            }
        }
        if (!crit || !crit_coding) {
            rep.ok = false;
            rep.violating_level = ev.level;
            rep.reason = "new mutually linked level " + std::to_string(ev.level) +
                         (crit ? " is followed by a splitting node first"
                               : " has no critical node above it");
            return rep;
        }
        int clen = int(crit->size());
        // (2) no terminal node ends in [ℓ, |c|)
        for (const auto& u : terminals)
            if (int(u.size()) >= ev.level && int(u.size()) < clen) {
                rep.ok = false;
                rep.violating_level = int(u.size());
                rep.reason = "terminal node " + u.to_string() + " inside [" +
                             std::to_string(ev.level) + "," + std::to_string(clen) + ")";
                return rep;
            }
        // (3) c witnesses the set: A_{ℓ,1} = restrictions of A_{|c|,1}
        std::vector<BitNode> at_c;
        std::set<std::string> seen;
        for (const auto& n : all) {
            if (int(n.size()) <= clen || !n.bit(clen)) continue;
            BitNode r = n.prefix(ev.level + 1);
            if (seen.insert(r.to_string()).second) at_c.push_back(r);
        }
        std::sort(at_c.begin(), at_c.end());
        if (at_c != ev.members) {
            rep.ok = false;
            rep.violating_level = ev.level;
            rep.reason = "coding node at " + std::to_string(clen) +
                         " does not witness the set linked at " + std::to_string(ev.level);
            return rep;
        }
    }
    return rep;
}

bool set_lex_less(const std::vector<BitNode>& a, const std::vector<BitNode>& b) {
    std::vector<BitNode> sa = a, sb = b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    for (std::size_t i = 0; i < sa.size() && i < sb.size(); ++i) {
        if (sa[i] == sb[i]) continue;
        return sa[i] < sb[i];
    }
    return sa.size() < sb.size();
}

std::vector<std::vector<std::size_t>> maximal_linked_sets(const std::vector<BitNode>& level_set) {
    std::size_t n = level_set.size();
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            adj[i][j] = adj[j][i] = linked(level_set[i], level_set[j]).has_value();
    // Bron-Kerbosch without pivoting; level sets here are small
    std::vector<std::vector<std::size_t>> cliques;
    std::vector<std::size_t> R, P(n), X;
    for (std::size_t i = 0; i < n; ++i) P[i] = i;
    auto bk = [&](auto&& self, std::vector<std::size_t> r, std::vector<std::size_t> p,
                  std::vector<std::size_t> x) -> void {
        if (p.empty() && x.empty()) {
            if (r.size() >= 2) cliques.push_back(r);
            return;
        }
        std::vector<std::size_t> pcopy = p;
        for (std::size_t v : pcopy) {
            std::vector<std::size_t> r2 = r, p2, x2;
            r2.push_back(v);
            for (std::size_t u : p)
                if (adj[u][v]) p2.push_back(u);
            for (std::size_t u : x)
                if (adj[u][v]) x2.push_back(u);
            self(self, r2, p2, x2);
            p.erase(std::find(p.begin(), p.end(), v));
            x.push_back(v);
        }
    };
    bk(bk, R, P, X);
    for (auto& c : cliques) std::sort(c.begin(), c.end());
    std::sort(cliques.begin(), cliques.end());
    cliques.erase(std::unique(cliques.begin(), cliques.end()), cliques.end());
    return cliques;
}

CompletionResult canonical_completion(const std::vector<BitNode>& x, const HensonTree& host) {
    if (x.empty()) throw std::invalid_argument("canonical_completion: empty level set");
    std::size_t len = x[0].size();
    for (const auto& n : x)
        if (n.size() != len)
            throw std::invalid_argument("canonical_completion: not a level set");
    int top = int(len) - 1;
    bool has_pair = false;
    for (std::size_t i = 0; i < x.size() && !has_pair; ++i)
        for (std::size_t j = i + 1; j < x.size() && !has_pair; ++j)
            if (top >= 0 && x[i].bit(top) && x[j].bit(top) && x[i] != x[j]) has_pair = true;
    if (!has_pair)
        throw std::invalid_argument("canonical_completion: no linked pair at the top level");

    auto cliques = maximal_linked_sets(x);
    // all subsets of size >= 3 of any maximal set, deduplicated, ordered by
    // size then set-lex
    std::vector<std::vector<std::size_t>> subsets;
    std::set<std::vector<std::size_t>> seen;
    for (const auto& m : cliques) {
        if (m.size() < 3) continue;
        for (unsigned mask = 1; mask < (1u << m.size()); ++mask) {
            if (std::popcount(mask) < 3) continue;
            std::vector<std::size_t> p;
            for (std::size_t b = 0; b < m.size(); ++b)
                if (mask & (1u << b)) p.push_back(m[b]);
            if (seen.insert(p).second) subsets.push_back(p);
        }
    }
    std::sort(subsets.begin(), subsets.end(),
              [&](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
                  if (a.size() != b.size()) return a.size() < b.size();
                  std::vector<BitNode> na, nb;
                  for (auto i : a) na.push_back(x[i]);
                  for (auto i : b) nb.push_back(x[i]);
                  if (set_lex_less(na, nb)) return true;
                  if (set_lex_less(nb, na)) return false;
                  return a < b;
              });

    CompletionResult res;
    res.level_set = x;
    for (const auto& p : subsets) {
        // next level where every participant can take a 1
        int lvl = int(res.level_set[0].size());
        for (;; ++lvl) {
            if (lvl >= host.graph().size()) {
                int need = lvl + int(subsets.size()) - int(res.events.size());
                throw std::runtime_error(
                    "canonical_completion: host too shallow, need depth about " +
                    std::to_string(need));
            }
            bool ok = true;
            for (std::size_t i : p)
                if (!host.extendable(res.level_set[i].zero_extended(lvl), true)) {
                    ok = false;
                    break;
                }
            if (ok) break;
        }
        std::set<std::size_t> in(p.begin(), p.end());
        LinkEvent ev;
        ev.level = lvl;
        for (std::size_t i = 0; i < res.level_set.size(); ++i) {
            BitNode ext = res.level_set[i].zero_extended(lvl);
            ext.push_back(in.count(i) > 0);
            res.level_set[i] = std::move(ext);
        }
        for (std::size_t i : p) ev.members.push_back(res.level_set[i]);
        std::sort(ev.members.begin(), ev.members.end());
        res.events.push_back(std::move(ev));
    }
    return res;
}

} // namespace henson
