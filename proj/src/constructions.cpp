#include "henson/constructions.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace henson {

namespace {

// Grows a strongly skew subtree of bS over an enumerated graph. All
// deliberate structure (splits, link events, coding levels) sits at fresh odd
// host levels: an odd vertex has the single earlier neighbor v_{ℓ-1}, so any
// branch whose 1s are confined to odd levels can always take another 1, and
// the host's own coding node c_ℓ witnesses the event at ℓ while being linked
// with no branch.
class ClBuilder {
public:
    explicit ClBuilder(EnumGraph g) : g_(std::move(g)) {
        branches_.push_back(BitNode());
    }

    EnumGraph& graph() { return g_; }
    int length() const { return len_; }
    std::size_t branch_count() const { return branches_.size(); }
    const BitNode& node(int id) const { return branches_[id]; }

    // lexicographic order of two live branches, stable under extension
    bool lex_before(int a, int b) const { return branches_[a] < branches_[b]; }

    int split(int id) {
        int L = alloc();
        fill_to(L);
        snapshot(L);
        check_one(id, L);
        int child = int(branches_.size());
        branches_.push_back(branches_[id].extended(true));
        for (int i = 0; i < child; ++i)
            branches_[i].push_back(i == id);
        // the splitter takes the 0 side; the new branch is the 1 child
        branches_[id].set(L, false);
        len_ = L + 1;
        return child;
    }

    void link(const std::vector<int>& participants) {
        int L = alloc();
        fill_to(L);
        for (int id : participants) check_one(id, L);
        std::set<int> in(participants.begin(), participants.end());
        for (std::size_t i = 0; i < branches_.size(); ++i)
            branches_[i].push_back(in.count(int(i)) > 0);
        len_ = L + 1;
        LinkEvent ev;
        ev.level = L;
        for (int id : participants) ev.members.push_back(branches_[id]);
        std::sort(ev.members.begin(), ev.members.end());
        ev.essential = ev.members.size() == 2 && fresh_joint(participants, L);
        events_.push_back(std::move(ev));
        witness(L);
    }

    // all pairs in lex order, then all larger subsets size-by-size in set-lex
    // order, each at its own exclusive level
    void cascade(std::vector<int> t) {
        if (t.size() < 2) return;
        std::sort(t.begin(), t.end(), [&](int a, int b) { return lex_before(a, b); });
        std::vector<std::vector<int>> subsets;
        for (std::size_t sz = 2; sz <= t.size(); ++sz) {
            std::vector<std::vector<int>> of_size;
            std::vector<std::size_t> idx(sz);
            for (std::size_t i = 0; i < sz; ++i) idx[i] = i;
            for (;;) {
                std::vector<int> p;
                for (std::size_t i : idx) p.push_back(t[i]);
                of_size.push_back(p);
                std::size_t k = sz;
                while (k > 0 && idx[k - 1] == t.size() - (sz - k) - 1) --k;
                if (k == 0) break;
                ++idx[k - 1];
                for (std::size_t i = k; i < sz; ++i) idx[i] = idx[i - 1] + 1;
            }
            // combinations over a lex-sorted base enumerate in set-lex order
            subsets.insert(subsets.end(), of_size.begin(), of_size.end());
        }
        for (const auto& p : subsets) link(p);
    }

    void emit_coding(const std::vector<int>& destined, int carrier) {
        cascade(destined);
        int L = alloc();
        fill_to(L);
        snapshot(L);
        coding_.push_back(branches_[carrier].prefix(L));
        std::set<int> in(destined.begin(), destined.end());
        if (in.count(carrier))
            throw std::logic_error("coding carrier cannot be destined at its own level");
        for (int id : destined) check_one(id, L);
        for (std::size_t i = 0; i < branches_.size(); ++i)
            branches_[i].push_back(in.count(int(i)) > 0);
        len_ = L + 1;
        coding_levels_.push_back(L);
    }

    int last_coding_level() const { return coding_levels_.back(); }

    bool joint_below(int a, int b) const {
        return branches_[a].first_joint_one(branches_[b]).has_value();
    }

    CanonicallyLinkedTree finish() {
        CanonicallyLinkedTree out;
        out.tree.levels = levels_;
        out.tree.coding = coding_;
        out.events = events_;
        out.witnesses = witnesses_;
        out.tips = branches_;
        out.graph = std::move(g_);
        return out;
    }

private:
    int alloc() {
        int L = (len_ % 2 == 0) ? len_ + 1 : len_ + 2;
        g_.extend(L + 2);
        return L;
    }

    void fill_to(int L) {
        for (auto& b : branches_)
            if (int(b.size()) < L) b = b.zero_extended(L);
        len_ = L;
    }

    void snapshot(int L) {
        CodingTree::Level lv;
        lv.length = L;
        for (const auto& b : branches_) lv.nodes.push_back(b.prefix(L));
        std::sort(lv.nodes.begin(), lv.nodes.end());
        lv.nodes.erase(std::unique(lv.nodes.begin(), lv.nodes.end()), lv.nodes.end());
        levels_.push_back(std::move(lv));
    }

    void check_one(int id, int L) {
        for (std::size_t u : branches_[id].ones())
            if (g_.edge(int(u), L))
                throw std::logic_error("builder: level " + std::to_string(L) +
                                       " conflicts with earlier 1 at " + std::to_string(u));
    }

    bool fresh_joint(const std::vector<int>& participants, int L) const {
        // no level below L where all participants already carry 1
        const BitNode& first = branches_[participants[0]];
        for (std::size_t o : first.ones()) {
            if (int(o) >= L) continue;
            bool all = true;
            for (std::size_t i = 1; i < participants.size() && all; ++i)
                if (!branches_[participants[i]].bit(o)) all = false;
            if (all) return false;
        }
        return true;
    }

    void witness(int L) {
        // the host coding node c_L: v_L's adjacency row
        BitNode row = BitNode::zeros(L);
        for (int u : g_.earlier_neighbors(L)) row.set(u);
        witnesses_.push_back(std::move(row));
    }

    EnumGraph g_;
    std::vector<BitNode> branches_;
    int len_ = 0;
    std::vector<CodingTree::Level> levels_;
    std::vector<BitNode> coding_;
    std::vector<int> coding_levels_;
    std::vector<LinkEvent> events_;
    std::vector<BitNode> witnesses_;
};

} // namespace

CanonicallyLinkedTree build_canonically_linked(const EnumGraph& g, int critical_levels) {
    if (critical_levels < 1)
        throw std::invalid_argument("build_canonically_linked: need at least one level");
    ClBuilder b(g);
    int criticals = 0;
    // branch bookkeeping: 1-type over the coded vertices, reserve flag
    std::vector<std::vector<int>> type(1);
    std::vector<char> is_reserve(1, 1);
    auto add_branch = [&](std::vector<int> t) {
        type.push_back(std::move(t));
        is_reserve.push_back(0);
    };
    // base: two splits in 0^{<ω}, then c_0
    int proto_a = b.split(0);
    add_branch({});
    ++criticals;
    if (criticals < critical_levels) {
        int proto_b = b.split(0);
        add_branch({});
        ++criticals;
        if (criticals < critical_levels) {
            type[proto_a] = {0};
            b.emit_coding({proto_a}, proto_b);
            ++criticals;
            for (int n = 1; criticals < critical_levels; ++n) {
                b.graph().extend(n + 1);
                // one split per newly realizable 1-type, splitters in lex order
                std::vector<int> splitters;
                for (std::size_t i = 0; i < b.branch_count(); ++i) {
                    if (is_reserve[i]) continue;
                    std::vector<int> with = type[i];
                    with.push_back(n);
                    if (b.graph().independent(with)) splitters.push_back(int(i));
                }
                std::sort(splitters.begin(), splitters.end(),
                          [&](int x, int y) { return b.lex_before(x, y); });
                std::vector<int> children;
                for (int id : splitters) {
                    if (criticals >= critical_levels) break;
                    int c1 = b.split(id);
                    std::vector<int> t = type[id];
                    t.push_back(n);
                    add_branch(std::move(t));
                    children.push_back(c1);
                    ++criticals;
                }
                if (criticals >= critical_levels) break;
                // coding node on the branch coding N(v_n)
                std::vector<int> fn = b.graph().earlier_neighbors(n);
                int carrier = -1;
                for (std::size_t i = 0; i < b.branch_count(); ++i)
                    if (!is_reserve[i] && type[i] == fn) { carrier = int(i); break; }
                if (carrier < 0) throw std::logic_error("type completeness lost");
                b.emit_coding(children, carrier);
                ++criticals;
            }
        }
    }
    return b.finish();
}

namespace {

std::vector<int> tree_critical_lengths(const CodingTree& t) {
    std::set<int> ls;
    for (const auto& c : t.coding) ls.insert(int(c.size()));
    for (const auto& n : t.all_nodes())
        if (t.splits(n)) ls.insert(int(n.size()));
    return {ls.begin(), ls.end()};
}

} // namespace

VerifyReport verify_canonically_linked(const CodingTree& t) {
    VerifyReport rep;
    auto bad = [&](std::string why) {
        rep.pass = false;
        rep.violations.push_back(std::move(why));
    };
    SkewReport skew = check_strongly_skew(t);
    if (!skew.ok) {
        bad("not strongly skew: " + skew.reason);
        return rep;
    }
    std::vector<BitNode> nodes = t.all_nodes();
    std::vector<int> criticals = tree_critical_lengths(t);
    auto floor_below = [&](int level) {
        int f = -1;
        for (int c : criticals)
            if (c < level) f = c;
        return f;
    };
    std::vector<LinkEvent> joints = joint_levels(nodes);

    // coding-level discipline: every subset of the 1-set at a coding level is
    // exclusively linked at its own level inside the interval, fresh pairs in
    // lex order
    for (const auto& c : t.coding) {
        int L = int(c.size());
        std::vector<BitNode> tset;
        {
            std::set<std::string> seen;
            for (const auto& n : nodes) {
                if (int(n.size()) <= L || !n.bit(L)) continue;
                BitNode r = n.prefix(L + 1);
                if (seen.insert(r.to_string()).second) tset.push_back(r);
            }
            std::sort(tset.begin(), tset.end());
        }
        if (tset.size() < 2) continue;
        if (tset.size() > 20) {
            bad("coding level " + std::to_string(L) + " has an implausibly wide 1-set");
            continue;
        }
        int floor = floor_below(L);
        // which subsets are covered by an exclusive in-interval event
        std::set<std::vector<int>> covered;
        std::map<std::vector<int>, int> first_level; // subset -> least event level
        for (const auto& e : joints) {
            if (e.level <= floor || e.level >= L) continue;
            std::vector<int> sub;
            bool clean = true;
            std::set<std::string> mem;
            for (const auto& m : e.members) mem.insert(m.to_string());
            std::set<std::string> hit;
            for (std::size_t i = 0; i < tset.size(); ++i) {
                std::string p = tset[i].prefix(e.level + 1).to_string();
                if (mem.count(p)) {
                    sub.push_back(int(i));
                    if (!hit.insert(p).second) clean = false; // collapse
                }
            }
            if (!clean || sub.size() != mem.size()) continue; // outsiders or collapse
            if (sub.size() >= 2) {
                if (covered.insert(sub).second) first_level[sub] = e.level;
            }
        }
        for (unsigned mask = 1; mask < (1u << tset.size()); ++mask) {
            if (std::popcount(mask) < 2) continue;
            std::vector<int> sub;
            for (std::size_t i = 0; i < tset.size(); ++i)
                if (mask & (1u << i)) sub.push_back(int(i));
            if (!covered.count(sub)) {
                bad("coding level " + std::to_string(L) + ": 1-set subset {" +
                    std::to_string(mask) + "} has no exclusive linked level in its interval");
                return rep;
            }
        }
        // fresh pairs in lex order of the pair sets
        std::vector<std::pair<std::vector<int>, int>> fresh;
        for (std::size_t i = 0; i < tset.size(); ++i)
            for (std::size_t j = i + 1; j < tset.size(); ++j) {
                bool pre = false;
                for (int l2 = 0; l2 <= floor && !pre; ++l2)
                    if (tset[i].bit(l2) && tset[j].bit(l2)) pre = true;
                if (pre) continue;
                std::vector<int> key{int(i), int(j)};
                fresh.emplace_back(key, first_level.at(key));
            }
        std::sort(fresh.begin(), fresh.end(), [&](const auto& a, const auto& b) {
            std::vector<BitNode> na{tset[a.first[0]], tset[a.first[1]]};
            std::vector<BitNode> nb{tset[b.first[0]], tset[b.first[1]]};
            return set_lex_less(na, nb);
        });
        for (std::size_t i = 1; i < fresh.size(); ++i)
            if (fresh[i - 1].second > fresh[i].second) {
                bad("coding level " + std::to_string(L) +
                    ": fresh pair links out of lexicographic order");
                return rep;
            }
    }
    // incremental linked sets globally: every new mutually linked level of
    // size >= 3 has each proper subset exclusively linked within its interval
    std::vector<LinkEvent> newsets = new_mutually_linked_levels(nodes);
    for (const auto& ev : newsets) {
        std::size_t z = ev.members.size();
        if (z < 3) continue;
        if (z > 20) {
            bad("new mutually linked set at " + std::to_string(ev.level) + " too wide");
            return rep;
        }
        int floor = floor_below(ev.level);
        for (unsigned mask = 1; mask < (1u << z); ++mask) {
            int pc = std::popcount(mask);
            if (pc < 2 || pc == int(z)) continue;
            bool found = false;
            for (const auto& jl : joints) {
                if (jl.level <= floor || jl.level >= ev.level) continue;
                if (jl.members.size() != std::size_t(pc)) continue;
                std::vector<BitNode> restr;
                for (std::size_t bb = 0; bb < z; ++bb)
                    if (mask & (1u << bb)) restr.push_back(ev.members[bb].prefix(jl.level + 1));
                std::sort(restr.begin(), restr.end());
                restr.erase(std::unique(restr.begin(), restr.end()), restr.end());
                if (restr == jl.members) { found = true; break; }
            }
            if (!found) {
                bad("new mutually linked set at level " + std::to_string(ev.level) +
                    " has a subset never exclusively linked in its interval");
                return rep;
            }
        }
    }
    return rep;
}

namespace {

struct DState {
    // branch id hosting each uncrowned lineage
    std::vector<int> host;
    std::vector<char> crowned;
};

} // namespace

DBuild build_d(const EnumGraph& g, int coding_count) {
    if (coding_count < 1) throw std::invalid_argument("build_d: coding_count must be >= 1");
    EnumGraph gg = g;
    gg.extend(coding_count + 1);
    ClBuilder b(gg);
    const int N = coding_count;

    // S's own coded-pattern branches: one carrier per needed neighborhood
    // prefix, born as the 1-child of its parent prefix at max(P)
    std::map<std::vector<int>, int> prefix_carrier;
    // base: two splits off the reserve
    int proto_a = b.split(0); // will carry prefix {0} if needed
    int proto_b = b.split(0); // the empty-prefix carrier
    prefix_carrier[{}] = proto_b;

    // needed prefixes of the coded neighborhoods
    std::set<std::vector<int>> family;
    for (int k = 0; k < N; ++k) {
        std::vector<int> fk = b.graph().earlier_neighbors(k);
        for (std::size_t i = 1; i <= fk.size(); ++i)
            family.insert(std::vector<int>(fk.begin(), fk.begin() + i));
    }
    bool proto_a_used = false;

    DState d;
    d.host.assign(N, 0); // every lineage starts on the reserve
    d.crowned.assign(N, 0);
    std::vector<BitNode> crowns;

    auto adjacent = [&](int a, int bb) { return b.graph().edge(a, bb); };

    for (int j = 0; j < N; ++j) {
        // (a) births of neighborhood prefixes maxing at j
        std::vector<std::vector<int>> births;
        for (const auto& p : family)
            if (p.back() == j) births.push_back(p);
        std::sort(births.begin(), births.end());
        std::vector<int> destined;
        for (const auto& p : births) {
            std::vector<int> parent(p.begin(), p.end() - 1);
            int pid;
            if (parent.empty() && !proto_a_used && p == std::vector<int>{0}) {
                pid = proto_a; // reuse the base branch as the {0} carrier
                proto_a_used = true;
                prefix_carrier[p] = pid;
                destined.push_back(pid);
                continue;
            }
            auto it = prefix_carrier.find(parent);
            if (it == prefix_carrier.end()) throw std::logic_error("missing prefix carrier");
            int child = b.split(it->second);
            prefix_carrier[p] = child;
            destined.push_back(child);
        }
        // (b) divergences at virtual level j: first peel lineage j solo, then
        // split every mixed host by adjacency to j
        int solo = -1;
        {
            int hb = d.host[j];
            bool alone = true;
            for (int k = 0; k < N; ++k)
                if (k != j && !d.crowned[k] && d.host[k] == hb) { alone = false; break; }
            if (alone && hb != 0) {
                solo = hb;
            } else {
                solo = b.split(hb);
                d.host[j] = solo;
            }
        }
        std::map<int, std::vector<int>> groups;
        for (int k = j + 1; k < N; ++k)
            if (!d.crowned[k]) groups[d.host[k]].push_back(k);
        std::vector<int> riders;
        for (auto& [hb, ks] : groups) {
            bool any1 = false, any0 = false;
            for (int k : ks) (adjacent(j, k) ? any1 : any0) = true;
            if (any1 && (any0 || hb == 0)) {
                int wagon = b.split(hb);
                for (int k : ks)
                    if (adjacent(j, k)) d.host[k] = wagon;
                riders.push_back(wagon);
            } else if (any1) {
                riders.push_back(hb);
            }
        }
        // (c) zigzag: link the antichain node to every nonadjacent unlinked
        // lineage host, peeling the reserve when it is the host
        {
            std::map<int, std::vector<int>> g2;
            for (int k = j + 1; k < N; ++k)
                if (!d.crowned[k] && !adjacent(j, k)) g2[d.host[k]].push_back(k);
            for (auto& [hb, ks] : g2) {
                int target = hb;
                if (hb == 0) {
                    target = b.split(0);
                    for (int k : ks) d.host[k] = target;
                }
                if (!b.joint_below(solo, target)) b.link({solo, target});
            }
        }
        // (d) the coding level: S's own coding node plus the crown
        std::vector<int> all_destined = destined;
        all_destined.insert(all_destined.end(), riders.begin(), riders.end());
        std::vector<int> fj = b.graph().earlier_neighbors(j);
        auto it = prefix_carrier.find(fj);
        if (it == prefix_carrier.end()) throw std::logic_error("missing coding carrier");
        b.emit_coding(all_destined, it->second);
        crowns.push_back(b.node(solo).prefix(b.last_coding_level()));
        d.crowned[j] = 1;
    }

    DBuild out;
    out.s = b.finish();
    out.s.d_plan = crowns;
    out.d.antichain = Antichain::of(crowns);
    return out;
}

DAntichain build_D(const CanonicallyLinkedTree& s, int coding_count) {
    if (coding_count < 1) throw std::invalid_argument("build_D: coding_count must be >= 1");
    if (int(s.d_plan.size()) < coding_count)
        throw std::runtime_error("build_D: tree lacks antichain capacity (has " +
                                 std::to_string(s.d_plan.size()) + ", need " +
                                 std::to_string(coding_count) +
                                 "); rebuild with build_d(graph, " +
                                 std::to_string(coding_count) + ")");
    std::vector<BitNode> take(s.d_plan.begin(), s.d_plan.begin() + coding_count);
    DAntichain d;
    d.antichain = Antichain::of(take);
    return d;
}

std::string CanonicallyLinkedTree::to_json() const {
    nlohmann::json j;
    j["tree"] = nlohmann::json::parse(tree.to_json());
    auto ws = nlohmann::json::array();
    for (const auto& w : witnesses) ws.push_back(w.to_string());
    j["witnesses"] = ws;
    auto es = nlohmann::json::array();
    for (const auto& e : events) es.push_back(nlohmann::json::parse(e.to_json()));
    j["events"] = es;
    auto ds = nlohmann::json::array();
    for (const auto& c : d_plan) ds.push_back(c.to_string());
    j["antichain"] = ds;
    return j.dump();
}

} // namespace henson
