#include "sjext/sjpoint.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace sjext {

struct SJPoint::Node {
    bool leaf;
    std::string id;        // leaf
    SJPoint lhs, rhs;      // join
    double t = 0.0;        // join
    int depth = 0;
    std::size_t nodes = 1;

    explicit Node(std::string point_id)
        : leaf(true), id(std::move(point_id)), lhs(nullptr), rhs(nullptr) {}
    Node(SJPoint l, SJPoint r, double tv)
        : leaf(false), lhs(std::move(l)), rhs(std::move(r)), t(tv) {
        depth = 1 + std::max(lhs.depth(), rhs.depth());
        nodes = 1 + lhs.node_count() + rhs.node_count();
    }
};

SJPoint SJPoint::leaf(std::string id) {
    return SJPoint(std::make_shared<const Node>(std::move(id)));
}

SJPoint SJPoint::join(SJPoint left, SJPoint right, double t) {
    if (!(t >= 0.0 && t <= 1.0))
        throw std::domain_error("join parameter t must lie in [0,1]");
    return SJPoint(std::make_shared<const Node>(std::move(left), std::move(right), t));
}

bool SJPoint::is_leaf() const { return node_->leaf; }

const std::string& SJPoint::id() const {
    if (!node_->leaf) throw std::logic_error("id() called on a join node");
    return node_->id;
}

const SJPoint& SJPoint::left() const {
    if (node_->leaf) throw std::logic_error("left() called on a leaf");
    return node_->lhs;
}

const SJPoint& SJPoint::right() const {
    if (node_->leaf) throw std::logic_error("right() called on a leaf");
    return node_->rhs;
}

double SJPoint::t() const {
    if (node_->leaf) throw std::logic_error("t() called on a leaf");
    return node_->t;
}

int SJPoint::depth() const { return node_->depth; }

std::size_t SJPoint::node_count() const { return node_->nodes; }

bool SJPoint::same_tree(const SJPoint& other) const {
    if (node_ == other.node_) return true;
    if (node_->leaf != other.node_->leaf) return false;
    if (node_->leaf) return node_->id == other.node_->id;
    return node_->t == other.node_->t && node_->lhs.same_tree(other.node_->lhs) &&
           node_->rhs.same_tree(other.node_->rhs);
}

const void* SJPoint::key() const { return node_.get(); }

std::string SJPoint::to_string() const {
    if (node_->leaf) return node_->id;
    std::ostringstream out;
    out << '[' << node_->lhs.to_string() << ',' << node_->rhs.to_string() << ';'
        << node_->t << ']';
    return out.str();
}

SJPoint canonicalize(const SJPoint& u) {
    if (u.is_leaf()) return u;
    SJPoint l = canonicalize(u.left());
    SJPoint r = canonicalize(u.right());
    const double t = u.t();
    if (t == 0.0) return l;
    if (t == 1.0) return r;
    if (l.same_tree(r)) return l;
    if (l.key() == u.left().key() && r.key() == u.right().key()) return u;
    return SJPoint::join(std::move(l), std::move(r), t);
}

namespace {

void collect_leaves(const SJPoint& u, std::set<std::string>& out) {
    if (u.is_leaf()) {
        out.insert(u.id());
        return;
    }
    collect_leaves(u.left(), out);
    collect_leaves(u.right(), out);
}

void accumulate_weights(const SJPoint& u, double factor, std::map<std::string, double>& out) {
    if (factor == 0.0) return;
    if (u.is_leaf()) {
        out[u.id()] += factor;
        return;
    }
    accumulate_weights(u.left(), factor * (1.0 - u.t()), out);
    accumulate_weights(u.right(), factor * u.t(), out);
}

}  // namespace

std::vector<std::string> support(const SJPoint& u) {
    std::set<std::string> ids;
    collect_leaves(canonicalize(u), ids);
    return {ids.begin(), ids.end()};
}

std::vector<std::pair<std::string, double>> base_weights(const SJPoint& u) {
    std::map<std::string, double> acc;
    accumulate_weights(u, 1.0, acc);
    std::vector<std::pair<std::string, double>> out;
    out.reserve(acc.size());
    for (const auto& [id, w] : acc)
        if (w != 0.0) out.emplace_back(id, w);
    return out;
}

SJPoint relabel(const SJPoint& u, const std::function<std::string(const std::string&)>& f) {
    if (u.is_leaf()) return SJPoint::leaf(f(u.id()));
    return SJPoint::join(relabel(u.left(), f), relabel(u.right(), f), u.t());
}

}  // namespace sjext
