#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace henson {

// Finite simple graph on {0..n-1}, symmetric adjacency, no loops.
struct FiniteGraph {
    int n = 0;
    std::vector<std::vector<bool>> adj;

    FiniteGraph() = default;
    explicit FiniteGraph(int nv) : n(nv), adj(nv, std::vector<bool>(nv, false)) {}

    static FiniteGraph from_edges(int nv, const std::vector<std::pair<int, int>>& edges);

    bool edge(int i, int j) const { return i != j && adj[i][j]; }
    void add_edge(int i, int j) {
        adj[i][j] = adj[j][i] = true;
    }
    int edge_count() const;
    std::vector<std::pair<int, int>> edges() const;

    bool operator==(const FiniteGraph& o) const { return n == o.n && adj == o.adj; }

    std::string to_json() const;
    static FiniteGraph from_json(const std::string& text);
    // One 0/1 row per line, whitespace ignored.
    static FiniteGraph from_adjacency_rows(const std::string& text);
    static FiniteGraph parse_file(const std::string& path);
};

std::optional<std::array<int, 3>> find_triangle(const FiniteGraph& g);
bool is_triangle_free(const FiniteGraph& g);

// All triangle-free graphs on n labeled vertices, one representative per
// isomorphism class, in a deterministic order. 1 <= n <= 6.
std::vector<FiniteGraph> enumerate_small_graphs(int n);

// Degree-sequence-refined lexicographic minimum adjacency encoding; used as
// the cache key and for isomorphism dedup at small n.
std::string canonical_form(const FiniteGraph& g);

// The enumerated triangle-free Henson graph ⟨v_n⟩:
//   (i)  v_n E v_{n+1}
//   (ii) v_{2n+1} E v_i iff i = 2n, for i <= 2n
// Even vertices v_{2n+2} additionally realize the earliest pending
// requirement F from the dovetailed queue of finite independent subsets of
// earlier vertices, ordered by (max element, size, lex); F is skipped and
// retried while v_{2n} ∈ F. Prefix-stable: the first d vertices never depend
// on the horizon.
class EnumGraph {
public:
    explicit EnumGraph(int depth) { extend(depth); }

    void extend(int depth); // grow to at least `depth` vertices
    int size() const { return int(nbrs_.size()); }

    bool edge(int i, int j) const;
    // Earlier neighbors of v, sorted.
    const std::vector<int>& earlier_neighbors(int v) const { return nbrs_[v]; }

    // True iff the vertex set is independent (pairwise non-adjacent).
    bool independent(const std::vector<int>& vs) const;

    struct Requirement {
        std::vector<int> members; // the set F
        int realized_by = -1;     // vertex that realized it, -1 if pending
    };
    // Requirements pulled from the queue so far, in queue order.
    const std::vector<Requirement>& schedule() const { return sched_; }

    FiniteGraph restriction(int n) const; // induced graph on v_0..v_{n-1}

private:
    std::vector<int> raw_next();        // next set in (max, size, lex) order
    std::vector<int> next_candidate();  // next independent set in that order

    std::vector<std::vector<int>> nbrs_;   // earlier neighbors per vertex
    std::vector<Requirement> sched_;       // pulled requirements, realized or pending
    // generator state: last emitted (max, size, combination)
    int gen_max_ = -1;
    int gen_size_ = 0;
    std::vector<int> gen_comb_;
    bool gen_fresh_ = true;
    std::vector<int> lookahead_;
    bool lookahead_valid_ = false;
};

// Schedule identifier recorded in reports and cache keys.
inline const char* schedule_id() { return "odd-forced/dovetail-max-size-lex/v1"; }

EnumGraph build_enum_graph(int depth);

} // namespace henson
