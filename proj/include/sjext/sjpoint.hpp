#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace sjext {

/// Binary-tree representative of an element of the iterated squeezed join over
/// a finite ground alphabet. Immutable; subtrees are shared, so copies are cheap
/// and a node pointer is a stable identity usable as a memoization key.
class SJPoint {
  public:
    static SJPoint leaf(std::string id);
    /// Throws std::domain_error if t is outside [0,1].
    static SJPoint join(SJPoint left, SJPoint right, double t);

    bool is_leaf() const;
    const std::string& id() const;      // leaf only
    const SJPoint& left() const;        // join only
    const SJPoint& right() const;       // join only
    double t() const;                   // join only

    /// Leaf depth 0; join depth 1 + max of subtree depths.
    int depth() const;
    std::size_t node_count() const;

    /// Structural equality of trees (exact t comparison).
    bool same_tree(const SJPoint& other) const;

    /// Stable identity of the root node, for memo tables.
    const void* key() const;

    /// Render as e.g. "[x0,[x1,x2;0.5];0.25]" for witnesses and diagnostics.
    std::string to_string() const;

  private:
    struct Node;
    explicit SJPoint(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

/// Unique rewrite normal form of the collapse rules [l,r;0]->l, [l,r;1]->r,
/// [u,u;t]->u applied bottom-up. Two SJPoints represent the same element of
/// SJ^n(X) iff their canonical forms are structurally equal.
SJPoint canonicalize(const SJPoint& u);

/// Ground ids the point depends on, computed on the canonical form.
/// Sorted lexicographically.
std::vector<std::string> support(const SJPoint& u);

/// Convex weights of the point against ground leaves: for every p and ground x,
/// sj_eval(p, u, Leaf(x)) equals the weighted sum of p(x_i, x). Zero-weight
/// entries are dropped; entries are sorted by id.
std::vector<std::pair<std::string, double>> base_weights(const SJPoint& u);

/// Rename every leaf through `f`, keeping the tree shape.
SJPoint relabel(const SJPoint& u, const std::function<std::string(const std::string&)>& f);

}  // namespace sjext
