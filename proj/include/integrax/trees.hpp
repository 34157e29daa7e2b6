#pragma once

#include <string>
#include <vector>

namespace integrax::trees {

enum class Color { White, Black };

// Bicolored plane tree as a rotation system: vertex ids 0..V-1, ordered
// child lists, proper 2-coloring.
struct PlaneTree {
    int root = 0;
    std::vector<std::vector<int>> children;
    std::vector<Color> color;

    int vertex_count() const { return static_cast<int>(children.size()); }
    int edge_count() const { return vertex_count() - 1; }
    int valency(int v) const {
        return static_cast<int>(children[v].size()) + (v == root ? 0 : 1);
    }
    void validate() const;
};

using Partition = std::vector<int>;

// Plane tree with valency sequence gamma (a partition of 2n with n+1 parts),
// root = vertex 0, root colored white. Vertex i has valency gamma[i].
PlaneTree tree_from_partition(const Partition& gamma);

// Bicolored plane tree with white valency sequence alpha and black valency
// sequence beta (both partitions of n, p + q = n + 1 parts). White vertices
// get ids 0..p-1 in alpha order, black vertices p..p+q-1 in beta order.
PlaneTree bicolored_from_partitions(const Partition& alpha, const Partition& beta);

// Bicolored plane tree with n edges, total valency multiset gamma, whose
// white valency sequence starts with (gamma_1..gamma_l). Requires
// gamma_1 + .. + gamma_l <= n; throws when no balanced white completion of
// the prefix exists.
PlaneTree bicolored_with_white_prefix(const Partition& gamma, int l);

// White and black valency sequences in vertex-id order.
std::pair<Partition, Partition> valency_sequences(const PlaneTree& t);

// Canonical nested encoding: color letter plus parenthesized children in
// rotation order, e.g. "w(b(w(b)),b)".
std::string encode(const PlaneTree& t);
PlaneTree decode(const std::string& s);

}  // namespace integrax::trees
