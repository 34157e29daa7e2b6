#include "integrax/trees.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace integrax::trees {

void PlaneTree::validate() const {
    int V = vertex_count();
    if (V < 1 || static_cast<int>(color.size()) != V)
        throw std::invalid_argument("tree: inconsistent vertex data");
    if (root < 0 || root >= V) throw std::invalid_argument("tree: root out of range");
    std::vector<int> indeg(V, 0);
    for (int v = 0; v < V; ++v)
        for (int c : children[v]) {
            if (c < 0 || c >= V) throw std::invalid_argument("tree: child id out of range");
            if (color[c] == color[v]) throw std::invalid_argument("tree: adjacent vertices share a color");
            ++indeg[c];
        }
    for (int v = 0; v < V; ++v) {
        int expect = (v == root) ? 0 : 1;
        if (indeg[v] != expect) throw std::invalid_argument("tree: not a rooted tree");
    }
}

namespace {

struct AdjBuilder {
    std::vector<std::vector<int>> adj;
    explicit AdjBuilder(int V) : adj(V) {}
    void add_edge(int a, int b) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
};

// Inductive construction for plain trees: strip the lowest-index unit part, lower
// the lowest-index non-unit part, recurse, then glue the unit back as a leaf.
void build_tree(AdjBuilder& out, std::vector<int> ids, std::vector<int> vals) {
    if (ids.size() == 2) {
        out.add_edge(ids[0], ids[1]);
        return;
    }
    std::size_t unit = vals.size(), big = vals.size();
    for (std::size_t i = 0; i < vals.size(); ++i) {
        if (unit == vals.size() && vals[i] == 1) unit = i;
        if (big == vals.size() && vals[i] > 1) big = i;
    }
    int leaf = ids[unit], parent = ids[big];
    vals[big] -= 1;
    ids.erase(ids.begin() + unit);
    vals.erase(vals.begin() + unit);
    build_tree(out, std::move(ids), std::move(vals));
    out.add_edge(parent, leaf);
}

// Bicolored variant: a unit leaf of one color is glued to a lowered
// non-unit vertex of the other color.
void build_bicolored(AdjBuilder& out, std::vector<int> wIds, std::vector<int> wVals,
                     std::vector<int> bIds, std::vector<int> bVals) {
    if (wIds.size() == 1 && bIds.size() == 1) {
        out.add_edge(wIds[0], bIds[0]);
        return;
    }
    std::size_t wUnit = wVals.size();
    for (std::size_t i = 0; i < wVals.size(); ++i)
        if (wVals[i] == 1) { wUnit = i; break; }
    if (wUnit < wVals.size()) {
        std::size_t big = bVals.size();
        for (std::size_t i = 0; i < bVals.size(); ++i)
            if (bVals[i] > 1) { big = i; break; }
        int leaf = wIds[wUnit], parent = bIds[big];
        bVals[big] -= 1;
        wIds.erase(wIds.begin() + wUnit);
        wVals.erase(wVals.begin() + wUnit);
        build_bicolored(out, std::move(wIds), std::move(wVals), std::move(bIds), std::move(bVals));
        out.add_edge(parent, leaf);
        return;
    }
    std::size_t bUnit = bVals.size();
    for (std::size_t i = 0; i < bVals.size(); ++i)
        if (bVals[i] == 1) { bUnit = i; break; }
    std::size_t big = wVals.size();
    for (std::size_t i = 0; i < wVals.size(); ++i)
        if (wVals[i] > 1) { big = i; break; }
    int leaf = bIds[bUnit], parent = wIds[big];
    wVals[big] -= 1;
    bIds.erase(bIds.begin() + bUnit);
    bVals.erase(bVals.begin() + bUnit);
    build_bicolored(out, std::move(wIds), std::move(wVals), std::move(bIds), std::move(bVals));
    out.add_edge(parent, leaf);
}

// Orients the undirected adjacency away from the root, keeping the
// insertion order of each neighbor list.
PlaneTree orient(const AdjBuilder& builder, int root) {
    int V = static_cast<int>(builder.adj.size());
    PlaneTree t;
    t.root = root;
    t.children.assign(V, {});
    t.color.assign(V, Color::White);
    std::vector<int> parent(V, -1), order;
    order.push_back(root);
    parent[root] = root;
    for (std::size_t i = 0; i < order.size(); ++i) {
        int v = order[i];
        for (int w : builder.adj[v]) {
            if (w == parent[v] && v != root) continue;
            if (v == root && parent[w] != -1) continue;
            parent[w] = v;
            t.children[v].push_back(w);
            order.push_back(w);
        }
    }
    if (static_cast<int>(order.size()) != V)
        throw std::logic_error("tree construction produced a disconnected graph");
    return t;
}

void check_partition(const Partition& p, const char* what) {
    if (p.empty()) throw std::invalid_argument(std::string(what) + ": empty partition");
    for (int x : p)
        if (x < 1) throw std::invalid_argument(std::string(what) + ": parts must be positive");
}

}  // namespace

PlaneTree tree_from_partition(const Partition& gamma) {
    check_partition(gamma, "tree_from_partition");
    int n = static_cast<int>(gamma.size()) - 1;
    int sum = std::accumulate(gamma.begin(), gamma.end(), 0);
    if (n < 1 || sum != 2 * n)
        throw std::invalid_argument("tree_from_partition: need n+1 parts summing to 2n");
    AdjBuilder builder(n + 1);
    std::vector<int> ids(n + 1);
    std::iota(ids.begin(), ids.end(), 0);
    build_tree(builder, std::move(ids), gamma);
    PlaneTree t = orient(builder, 0);
    // arbitrary proper bicoloring: white at even depth from the root
    std::vector<std::pair<int, Color>> stack{{0, Color::White}};
    while (!stack.empty()) {
        auto [v, c] = stack.back();
        stack.pop_back();
        t.color[v] = c;
        Color next = (c == Color::White) ? Color::Black : Color::White;
        for (int w : t.children[v]) stack.emplace_back(w, next);
    }
    return t;
}

PlaneTree bicolored_from_partitions(const Partition& alpha, const Partition& beta) {
    check_partition(alpha, "bicolored_from_partitions");
    check_partition(beta, "bicolored_from_partitions");
    int p = static_cast<int>(alpha.size()), q = static_cast<int>(beta.size());
    int n = std::accumulate(alpha.begin(), alpha.end(), 0);
    if (std::accumulate(beta.begin(), beta.end(), 0) != n || p + q != n + 1)
        throw std::invalid_argument(
            "bicolored_from_partitions: need two partitions of n with p + q = n + 1");
    AdjBuilder builder(n + 1);
    std::vector<int> wIds(p), bIds(q);
    std::iota(wIds.begin(), wIds.end(), 0);
    std::iota(bIds.begin(), bIds.end(), p);
    build_bicolored(builder, std::move(wIds), alpha, std::move(bIds), beta);
    PlaneTree t = orient(builder, 0);
    for (int v = 0; v < n + 1; ++v) t.color[v] = v < p ? Color::White : Color::Black;
    return t;
}

PlaneTree bicolored_with_white_prefix(const Partition& gamma, int l) {
    check_partition(gamma, "bicolored_with_white_prefix");
    int n = static_cast<int>(gamma.size()) - 1;
    int sum = std::accumulate(gamma.begin(), gamma.end(), 0);
    if (n < 1 || sum != 2 * n)
        throw std::invalid_argument("bicolored_with_white_prefix: need n+1 parts summing to 2n");
    if (l < 1 || l > n) throw std::invalid_argument("bicolored_with_white_prefix: l out of range");
    int prefix_sum = std::accumulate(gamma.begin(), gamma.begin() + l, 0);
    if (prefix_sum > n)
        throw std::invalid_argument("bicolored_with_white_prefix: white prefix weight exceeds n");

    // The white class must extend the prefix to total weight exactly n
    // (white and black valencies each sum to the edge count), so complete it
    // by an exact subset choice over the remaining parts.
    int target = n - prefix_sum;
    int rest = static_cast<int>(gamma.size()) - l;
    std::vector<std::vector<char>> reach(rest + 1, std::vector<char>(target + 1, 0));
    reach[rest][0] = 1;
    for (int i = rest - 1; i >= 0; --i)
        for (int s = 0; s <= target; ++s)
            reach[i][s] =
                reach[i + 1][s] || (gamma[l + i] <= s && reach[i + 1][s - gamma[l + i]]);
    if (!reach[0][target])
        throw std::invalid_argument(
            "bicolored_with_white_prefix: no balanced bicoloring extends the white prefix");
    Partition white(gamma.begin(), gamma.begin() + l), black;
    int s = target;
    for (int i = 0; i < rest; ++i) {
        if (gamma[l + i] <= s && reach[i + 1][s - gamma[l + i]]) {
            white.push_back(gamma[l + i]);
            s -= gamma[l + i];
        } else {
            black.push_back(gamma[l + i]);
        }
    }
    return bicolored_from_partitions(white, black);
}

std::pair<Partition, Partition> valency_sequences(const PlaneTree& t) {
    Partition white, black;
    for (int v = 0; v < t.vertex_count(); ++v)
        (t.color[v] == Color::White ? white : black).push_back(t.valency(v));
    return {white, black};
}

std::string encode(const PlaneTree& t) {
    t.validate();
    std::string result;
    auto rec = [&](auto&& self, int v) -> void {
        result += (t.color[v] == Color::White) ? 'w' : 'b';
        if (t.children[v].empty()) return;
        result += '(';
        for (std::size_t i = 0; i < t.children[v].size(); ++i) {
            if (i) result += ',';
            self(self, t.children[v][i]);
        }
        result += ')';
    };
    rec(rec, t.root);
    return result;
}

PlaneTree decode(const std::string& s) {
    PlaneTree t;
    std::size_t pos = 0;
    auto fail = [&]() { throw std::invalid_argument("malformed tree encoding: '" + s + "'"); };
    auto rec = [&](auto&& self) -> int {
        if (pos >= s.size()) fail();
        char c = s[pos];
        if (c != 'w' && c != 'b') fail();
        ++pos;
        int id = t.vertex_count();
        t.children.emplace_back();
        t.color.push_back(c == 'w' ? Color::White : Color::Black);
        if (pos < s.size() && s[pos] == '(') {
            ++pos;
            while (true) {
                int child = self(self);
                t.children[id].push_back(child);
                if (pos >= s.size()) fail();
                if (s[pos] == ',') { ++pos; continue; }
                if (s[pos] == ')') { ++pos; break; }
                fail();
            }
        }
        return id;
    };
    int root = rec(rec);
    if (pos != s.size()) fail();
    t.root = root;
    t.validate();
    return t;
}

}  // namespace integrax::trees
