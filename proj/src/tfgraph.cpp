#include "henson/tfgraph.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace henson {

FiniteGraph FiniteGraph::from_edges(int nv, const std::vector<std::pair<int, int>>& edges) {
    FiniteGraph g(nv);
    for (auto [i, j] : edges) {
        if (i < 0 || j < 0 || i >= nv || j >= nv || i == j)
            throw std::invalid_argument("bad edge " + std::to_string(i) + "-" + std::to_string(j));
        g.add_edge(i, j);
    }
    return g;
}

int FiniteGraph::edge_count() const {
    int c = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (adj[i][j]) ++c;
    return c;
}

std::vector<std::pair<int, int>> FiniteGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (adj[i][j]) out.emplace_back(i, j);
    return out;
}

std::string FiniteGraph::to_json() const {
    nlohmann::json j;
    j["n"] = n;
    auto es = nlohmann::json::array();
    for (auto [a, b] : edges()) es.push_back({a, b});
    j["edges"] = es;
    return j.dump();
}

FiniteGraph FiniteGraph::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    int nv = j.at("n").get<int>();
    std::vector<std::pair<int, int>> es;
    for (const auto& e : j.at("edges"))
        es.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    return from_edges(nv, es);
}

FiniteGraph FiniteGraph::from_adjacency_rows(const std::string& text) {
    std::vector<std::string> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::string row;
        for (char c : line)
            if (c == '0' || c == '1') row.push_back(c);
        if (!row.empty()) rows.push_back(row);
    }
    int nv = int(rows.size());
    FiniteGraph g(nv);
    for (int i = 0; i < nv; ++i) {
        if (int(rows[i].size()) != nv)
            throw std::invalid_argument("adjacency row " + std::to_string(i) + " has wrong length");
        for (int j = 0; j < nv; ++j)
            if (rows[i][j] == '1') {
                if (i == j) throw std::invalid_argument("self-loop at " + std::to_string(i));
                g.adj[i][j] = true;
            }
    }
    for (int i = 0; i < nv; ++i)
        for (int j = 0; j < nv; ++j)
            if (g.adj[i][j] != g.adj[j][i])
                throw std::invalid_argument("adjacency not symmetric");
    return g;
}

FiniteGraph FiniteGraph::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    auto pos = text.find_first_not_of(" \t\r\n");
    if (pos != std::string::npos && text[pos] == '{') return from_json(text);
    return from_adjacency_rows(text);
}

std::optional<std::array<int, 3>> find_triangle(const FiniteGraph& g) {
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j) {
            if (!g.adj[i][j]) continue;
            for (int k = j + 1; k < g.n; ++k)
                if (g.adj[i][k] && g.adj[j][k]) return std::array<int, 3>{i, j, k};
        }
    return std::nullopt;
}

bool is_triangle_free(const FiniteGraph& g) { return !find_triangle(g).has_value(); }

std::string canonical_form(const FiniteGraph& g) {
    if (g.n > 8) throw std::invalid_argument("canonical_form: n > 8 unsupported");
    std::vector<int> perm(g.n);
    std::iota(perm.begin(), perm.end(), 0);
    std::string best;
    // degree refinement: only consider permutations sorting degrees descending
    std::vector<int> deg(g.n, 0);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            if (g.adj[i][j]) ++deg[i];
    do {
        bool mono = true;
        for (int i = 0; i + 1 < g.n && mono; ++i)
            if (deg[perm[i]] < deg[perm[i + 1]]) mono = false;
        if (!mono) continue;
        std::string enc;
        enc.reserve(g.n * (g.n - 1) / 2);
        for (int i = 0; i < g.n; ++i)
            for (int j = i + 1; j < g.n; ++j)
                enc.push_back(g.adj[perm[i]][perm[j]] ? '1' : '0');
        if (best.empty() || enc < best) best = enc;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return "n" + std::to_string(g.n) + ":" + best;
}

std::vector<FiniteGraph> enumerate_small_graphs(int n) {
    if (n < 1 || n > 6) throw std::invalid_argument("enumerate_small_graphs: n must be in [1,6]");
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
    std::vector<std::pair<std::string, FiniteGraph>> keyed;
    for (unsigned mask = 0; mask < (1u << slots.size()); ++mask) {
        FiniteGraph g(n);
        for (std::size_t b = 0; b < slots.size(); ++b)
            if (mask & (1u << b)) g.add_edge(slots[b].first, slots[b].second);
        if (!is_triangle_free(g)) continue;
        std::string key = canonical_form(g);
        bool seen = false;
        for (auto& [k, _] : keyed)
            if (k == key) { seen = true; break; }
        if (!seen) keyed.emplace_back(key, g);
    }
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
        int ea = a.second.edge_count(), eb = b.second.edge_count();
        if (ea != eb) return ea < eb;
        return a.first < b.first;
    });
    std::vector<FiniteGraph> out;
    for (auto& [_, g] : keyed) out.push_back(g);
    return out;
}

bool EnumGraph::edge(int i, int j) const {
    if (i == j) return false;
    if (i > j) std::swap(i, j);
    const auto& nb = nbrs_[j];
    return std::binary_search(nb.begin(), nb.end(), i);
}

bool EnumGraph::independent(const std::vector<int>& vs) const {
    for (std::size_t a = 0; a < vs.size(); ++a)
        for (std::size_t b = a + 1; b < vs.size(); ++b)
            if (edge(vs[a], vs[b])) return false;
    return true;
}

std::vector<int> EnumGraph::raw_next() {
    // All finite subsets in (max element, size, lex) order; the empty set first.
    if (gen_fresh_) {
        gen_fresh_ = false;
        return {};
    }
    if (gen_max_ == -1) {
        gen_max_ = 0;
        gen_size_ = 1;
        gen_comb_.clear();
        return {0};
    }
    int k = gen_size_ - 1; // combination size over {0..gen_max_-1}
    bool advanced = false;
    for (int i = k - 1; i >= 0; --i) {
        if (gen_comb_[i] < gen_max_ - (k - i)) {
            ++gen_comb_[i];
            for (int j = i + 1; j < k; ++j) gen_comb_[j] = gen_comb_[j - 1] + 1;
            advanced = true;
            break;
        }
    }
    if (!advanced) {
        if (gen_size_ <= gen_max_) {
            ++gen_size_;
        } else {
            ++gen_max_;
            gen_size_ = 1;
        }
        gen_comb_.resize(gen_size_ - 1);
        std::iota(gen_comb_.begin(), gen_comb_.end(), 0);
    }
    std::vector<int> f = gen_comb_;
    f.push_back(gen_max_);
    return f;
}

std::vector<int> EnumGraph::next_candidate() {
    for (;;) {
        std::vector<int> f = raw_next();
        if (independent(f)) return f;
    }
}

void EnumGraph::extend(int depth) {
    while (size() < depth) {
        int v = size();
        std::vector<int> nb;
        if (v == 0) {
            // v_0: no earlier neighbors
        } else if (v % 2 == 1) {
            // (ii): v_{2n+1} E v_i iff i = 2n
            nb.push_back(v - 1);
        } else {
            // v_{2n+2}: forced neighbor v_{2n+1}, plus the earliest pending
            // requirement compatible with it
            int forced = v - 1;
            int blocked = v - 2; // v_{2n} ∈ F would close a triangle via (i)
            std::size_t pick = SIZE_MAX;
            for (std::size_t q = 0; q < sched_.size(); ++q) {
                const auto& r = sched_[q];
                if (r.realized_by != -1) continue;
                if (std::find(r.members.begin(), r.members.end(), blocked) != r.members.end())
                    continue;
                std::vector<int> with = r.members;
                with.push_back(forced);
                if (!independent(with)) continue;
                pick = q;
                break;
            }
            while (pick == SIZE_MAX) {
                // pull fresh candidates while their max stays below v
                if (!lookahead_valid_) { lookahead_ = next_candidate(); lookahead_valid_ = true; }
                int mx = lookahead_.empty() ? -1 : lookahead_.back();
                if (mx >= v) break;
                sched_.push_back({lookahead_, -1});
                lookahead_valid_ = false;
                const auto& r = sched_.back();
                if (std::find(r.members.begin(), r.members.end(), blocked) != r.members.end())
                    continue;
                std::vector<int> with = r.members;
                with.push_back(forced);
                if (!independent(with)) continue;
                pick = sched_.size() - 1;
            }
            nb.push_back(forced);
            if (pick != SIZE_MAX) {
                sched_[pick].realized_by = v;
                for (int u : sched_[pick].members)
                    if (u != forced) nb.push_back(u);
            }
            std::sort(nb.begin(), nb.end());
            nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
        }
        nbrs_.push_back(std::move(nb));
    }
}

FiniteGraph EnumGraph::restriction(int n) const {
    FiniteGraph g(n);
    for (int v = 0; v < n; ++v)
        for (int u : nbrs_[v])
            if (u < n) g.add_edge(u, v);
    return g;
}

EnumGraph build_enum_graph(int depth) {
    if (depth < 1) throw std::invalid_argument("build_enum_graph: depth must be >= 1");
    return EnumGraph(depth);
}

} // namespace henson
