#include "dllearn/interp.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <sstream>

namespace dllearn {

std::vector<Elem> Interpretation::successors(Elem d, const Role& r) const {
    std::vector<Elem> out;
    auto it = roles.find(r.name);
    if (it == roles.end()) return out;
    for (auto& [x, y] : it->second) {
        if (!r.inverted && x == d) out.push_back(y);
        if (r.inverted && y == d) out.push_back(x);
    }
    return out;
}

std::vector<std::pair<Role, Elem>> Interpretation::incident(Elem d) const {
    std::vector<std::pair<Role, Elem>> out;
    for (auto& [name, pairs] : roles) {
        for (auto& [x, y] : pairs) {
            if (x == d) out.emplace_back(Role(name), y);
            if (y == d) out.emplace_back(Role(name, true), x);
        }
    }
    return out;
}

std::string Interpretation::dump() const {
    std::ostringstream out;
    for (Elem d = 0; d < size(); ++d) {
        out << d << " {";
        bool first = true;
        for (const auto& n : labels[d]) {
            if (!first) out << ",";
            out << n;
            first = false;
        }
        out << "}\n";
    }
    for (auto& [name, pairs] : roles)
        for (auto& [x, y] : pairs) out << x << " -" << name << "-> " << y << "\n";
    return out.str();
}

void DitreeInterpretation::check_valid() const {
    int n = interp.size();
    if (n == 0) throw std::logic_error("empty ditree");
    std::vector<int> indeg(n, 0);
    std::set<std::pair<Elem, Elem>> seen_pairs;
    for (auto& [name, pairs] : interp.roles) {
        for (auto& [x, y] : pairs) {
            if (x < 0 || x >= n || y < 0 || y >= n) throw std::logic_error("edge out of range");
            if (!seen_pairs.insert({x, y}).second)
                throw std::logic_error("role extensions not disjoint");
            indeg[y]++;
        }
    }
    if (indeg[root] != 0) throw std::logic_error("root has an incoming edge");
    for (Elem d = 0; d < n; ++d) {
        if (d == root) continue;
        if (indeg[d] != 1) throw std::logic_error("non-root element without unique parent");
    }
    // Connectivity from the root.
    std::set<Elem> reach{root};
    std::deque<Elem> q{root};
    while (!q.empty()) {
        Elem d = q.front();
        q.pop_front();
        for (auto& [r, e] : children(d))
            if (reach.insert(e).second) q.push_back(e);
    }
    if (static_cast<int>(reach.size()) != n) throw std::logic_error("ditree not connected");
}

std::vector<std::pair<Role, Elem>> DitreeInterpretation::children(Elem d) const {
    std::vector<std::pair<Role, Elem>> out;
    for (auto& [name, pairs] : interp.roles)
        for (auto& [x, y] : pairs)
            if (x == d) out.emplace_back(Role(name), y);
    return out;
}

ConceptTree DitreeInterpretation::to_tree(Elem from) const {
    ConceptTree t;
    std::function<void(Elem, NodeId)> rec = [&](Elem d, NodeId at) {
        t.nodes[at].label = interp.labels[d];
        for (auto& [r, e] : children(d)) {
            NodeId ch = t.add_child(at, r);
            rec(e, ch);
        }
    };
    rec(from, t.root());
    return t;
}

ConceptRef DitreeInterpretation::to_concept() const { return tree_to_concept(to_tree(root)); }

std::string DitreeInterpretation::dump() const {
    return "root " + std::to_string(root) + "\n" + interp.dump();
}

Interpretation tree_as_interpretation(const ConceptTree& t) {
    Interpretation i;
    for (NodeId d = 0; d < t.node_count(); ++d) {
        i.add_element();
        i.labels[d] = t.nodes[d].label;
    }
    for (NodeId d = 0; d < t.node_count(); ++d)
        for (auto& [r, ch] : t.nodes[d].children) i.add_edge(d, ch, r);
    return i;
}

DitreeInterpretation tree_as_ditree(const ConceptTree& t) {
    for (NodeId d = 0; d < t.node_count(); ++d)
        for (auto& [r, ch] : t.nodes[d].children)
            if (r.inverted) throw std::logic_error("inverse-role edge in a ditree");
    DitreeInterpretation di{tree_as_interpretation(t), 0};
    di.check_valid();
    return di;
}

std::set<Elem> extension(const ConceptRef& c, const Interpretation& i) {
    std::set<Elem> out;
    switch (c->kind) {
        case Concept::Kind::Top:
            for (Elem d = 0; d < i.size(); ++d) out.insert(d);
            break;
        case Concept::Kind::Name:
            for (Elem d = 0; d < i.size(); ++d)
                if (i.has_label(d, c->name)) out.insert(d);
            break;
        case Concept::Kind::And: {
            std::set<Elem> l = extension(c->left, i);
            std::set<Elem> r = extension(c->right, i);
            std::set_intersection(l.begin(), l.end(), r.begin(), r.end(),
                                  std::inserter(out, out.begin()));
            break;
        }
        case Concept::Kind::Exists: {
            std::set<Elem> b = extension(c->body, i);
            auto it = i.roles.find(c->role.name);
            if (it == i.roles.end()) break;
            for (auto& [x, y] : it->second) {
                Elem from = c->role.inverted ? y : x;
                Elem to = c->role.inverted ? x : y;
                if (b.count(to)) out.insert(from);
            }
            break;
        }
    }
    return out;
}

bool satisfies(const Interpretation& i, const Inclusion& inc) {
    if (std::holds_alternative<RI>(inc)) {
        const RI& ri = std::get<RI>(inc);
        for (Elem d = 0; d < i.size(); ++d)
            for (Elem e : i.successors(d, ri.lhs))
                if (!i.has_edge(d, e, ri.rhs)) return false;
        return true;
    }
    const CI& ci = std::get<CI>(inc);
    std::set<Elem> l = extension(ci.lhs, i);
    std::set<Elem> r = extension(ci.rhs, i);
    return std::includes(r.begin(), r.end(), l.begin(), l.end());
}

bool satisfies(const Interpretation& i, const TBox& t) {
    for (const auto& a : t.axioms)
        if (!satisfies(i, a)) return false;
    return true;
}

// ── Homomorphism search ─────────────────────────────────────────────────────

namespace {

// Memoised feasibility of mapping tree node d to element e. Because children
// of a tree node are independent, feasibility decomposes node-wise and the
// search is polynomial in |tree| * |interp|.
class HomSearch {
public:
    HomSearch(const ConceptTree& t, const Interpretation& i) : t_(t), i_(i) {}

    bool feasible(NodeId d, Elem e) {
        auto key = std::make_pair(d, e);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        memo_[key] = false;  // guard; trees are acyclic so never revisited
        bool ok = true;
        for (const auto& name : t_.nodes[d].label) {
            if (!i_.has_label(e, name)) {
                ok = false;
                break;
            }
        }
        if (ok) {
            for (auto& [r, ch] : t_.nodes[d].children) {
                bool found = false;
                for (Elem e2 : i_.successors(e, r)) {
                    if (feasible(ch, e2)) {
                        found = true;
                        break;
                    }
                }
                if (!found) {
                    ok = false;
                    break;
                }
            }
        }
        memo_[key] = ok;
        return ok;
    }

    void extract(NodeId d, Elem e, Homomorphism& h) {
        h.mapping[d] = e;
        for (auto& [r, ch] : t_.nodes[d].children) {
            for (Elem e2 : i_.successors(e, r)) {
                if (feasible(ch, e2)) {
                    extract(ch, e2, h);
                    break;
                }
            }
        }
    }

private:
    const ConceptTree& t_;
    const Interpretation& i_;
    std::map<std::pair<NodeId, Elem>, bool> memo_;
};

}  // namespace

std::optional<Homomorphism> hom_tree_to_interp(const ConceptTree& t, const Interpretation& i,
                                               Elem target) {
    HomSearch search(t, i);
    if (!search.feasible(t.root(), target)) return std::nullopt;
    Homomorphism h;
    search.extract(t.root(), target, h);
    return h;
}

std::optional<Homomorphism> hom_tree_to_tree(const ConceptTree& src, const ConceptTree& dst) {
    return hom_tree_to_interp(src, tree_as_interpretation(dst), dst.root());
}

bool hom_ditree(const DitreeInterpretation& src, const DitreeInterpretation& dst) {
    return hom_tree_to_interp(src.to_tree(src.root), dst.interp, dst.root).has_value();
}

std::vector<Homomorphism> all_homs_tree_to_interp(const ConceptTree& t, const Interpretation& i,
                                                  Elem target, size_t cap) {
    std::vector<Homomorphism> out;
    std::vector<NodeId> order = t.bfs_order();
    Homomorphism partial;
    std::function<void(size_t)> rec = [&](size_t idx) {
        if (out.size() >= cap) return;
        if (idx == order.size()) {
            out.push_back(partial);
            return;
        }
        NodeId d = order[idx];
        std::vector<Elem> candidates;
        if (d == t.root()) {
            candidates.push_back(target);
        } else {
            NodeId p = t.nodes[d].parent;
            candidates = i.successors(partial.mapping[p], t.nodes[d].parent_role);
        }
        for (Elem e : candidates) {
            bool ok = true;
            for (const auto& name : t.nodes[d].label)
                if (!i.has_label(e, name)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            partial.mapping[d] = e;
            rec(idx + 1);
            partial.mapping.erase(d);
        }
    };
    rec(0);
    return out;
}

// ── Products ────────────────────────────────────────────────────────────────

Interpretation product(const Interpretation& i, const Interpretation& j) {
    Interpretation p;
    int nj = j.size();
    for (Elem d = 0; d < i.size(); ++d) {
        for (Elem e = 0; e < nj; ++e) {
            Elem x = p.add_element();
            for (const auto& name : i.labels[d])
                if (j.has_label(e, name)) p.add_label(x, name);
        }
    }
    for (auto& [name, pairs_i] : i.roles) {
        auto it = j.roles.find(name);
        if (it == j.roles.end()) continue;
        for (auto& [d, d2] : pairs_i)
            for (auto& [e, e2] : it->second)
                p.roles[name].insert({d * nj + e, d2 * nj + e2});
    }
    return p;
}

DitreeInterpretation rooted_product(const DitreeInterpretation& i, const DitreeInterpretation& j) {
    DitreeInterpretation out;
    out.interp.add_element();
    out.root = 0;
    // BFS over reachable pairs only.
    std::map<std::pair<Elem, Elem>, Elem> index{{{i.root, j.root}, 0}};
    std::deque<std::pair<Elem, Elem>> q{{i.root, j.root}};
    while (!q.empty()) {
        auto [d, e] = q.front();
        q.pop_front();
        Elem here = index[{d, e}];
        for (const auto& name : i.interp.labels[d])
            if (j.interp.has_label(e, name)) out.interp.add_label(here, name);
        for (auto& [rd, d2] : i.children(d)) {
            for (auto& [re, e2] : j.children(e)) {
                if (rd.name != re.name) continue;
                auto key = std::make_pair(d2, e2);
                auto it = index.find(key);
                Elem child;
                if (it == index.end()) {
                    child = out.interp.add_element();
                    index[key] = child;
                    q.push_back(key);
                } else {
                    child = it->second;
                }
                out.interp.add_edge(here, child, rd);
            }
        }
    }
    out.check_valid();
    return out;
}

// ── Surgery ─────────────────────────────────────────────────────────────────

namespace {

DitreeInterpretation copy_from(const DitreeInterpretation& i, Elem from,
                               const std::set<Elem>& dropped) {
    DitreeInterpretation out;
    out.interp.add_element();
    out.root = 0;
    std::function<void(Elem, Elem)> rec = [&](Elem src, Elem dst) {
        out.interp.labels[dst] = i.interp.labels[src];
        for (auto& [r, e] : i.children(src)) {
            if (dropped.count(e)) continue;
            Elem c = out.interp.add_element();
            out.interp.add_edge(dst, c, r);
            rec(e, c);
        }
    };
    rec(from, 0);
    return out;
}

}  // namespace

Interpretation remove_root(const DitreeInterpretation& i) {
    Interpretation out;
    std::map<Elem, Elem> to_new;
    for (Elem d = 0; d < i.size(); ++d) {
        if (d == i.root) continue;
        to_new[d] = out.add_element();
        out.labels[to_new[d]] = i.interp.labels[d];
    }
    for (auto& [name, pairs] : i.interp.roles)
        for (auto& [x, y] : pairs)
            if (x != i.root && y != i.root) out.roles[name].insert({to_new[x], to_new[y]});
    return out;
}

DitreeInterpretation remove_subtree(const DitreeInterpretation& i, Elem d) {
    if (d < 0 || d >= i.size()) throw std::logic_error("invalid element index");
    if (d == i.root) throw std::logic_error("cannot remove the subtree at the root");
    std::set<Elem> dropped;
    std::deque<Elem> q{d};
    while (!q.empty()) {
        Elem x = q.front();
        q.pop_front();
        dropped.insert(x);
        for (auto& [r, e] : i.children(x)) q.push_back(e);
    }
    return copy_from(i, i.root, dropped);
}

DitreeInterpretation subtree_at(const DitreeInterpretation& i, Elem d) {
    if (d < 0 || d >= i.size()) throw std::logic_error("invalid element index");
    if (d == i.root) throw std::logic_error("subtree_at expects a non-root element");
    return copy_from(i, d, {});
}

std::set<BasicConcept> one_neighbourhood(const Interpretation& i, Elem d) {
    std::set<BasicConcept> out;
    for (const auto& name : i.labels[d]) out.insert(BasicConcept::of_name(name));
    for (auto& [r, e] : i.incident(d)) out.insert(BasicConcept::of_role(r));
    return out;
}

bool isomorphic(const Interpretation& a, const Interpretation& b) {
    if (a.size() != b.size()) return false;
    int n = a.size();
    std::vector<Elem> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    auto edges_match = [&]() {
        std::set<std::string> ra, rb;
        for (auto& [name, pairs] : a.roles)
            if (!pairs.empty()) ra.insert(name);
        for (auto& [name, pairs] : b.roles)
            if (!pairs.empty()) rb.insert(name);
        if (ra != rb) return false;
        for (auto& [name, pairs] : a.roles) {
            auto it = b.roles.find(name);
            std::set<std::pair<Elem, Elem>> mapped;
            for (auto& [x, y] : pairs) mapped.insert({perm[x], perm[y]});
            std::set<std::pair<Elem, Elem>> target = (it == b.roles.end())
                                                         ? std::set<std::pair<Elem, Elem>>{}
                                                         : it->second;
            if (mapped != target) return false;
        }
        return true;
    };
    do {
        bool ok = true;
        for (Elem d = 0; d < n && ok; ++d)
            if (a.labels[d] != b.labels[perm[d]]) ok = false;
        if (ok && edges_match()) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

}  // namespace dllearn
