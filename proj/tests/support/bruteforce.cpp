#include "support/bruteforce.hpp"

#include <deque>
#include <functional>
#include <map>
#include <set>

namespace dllearn::testsupport {

namespace {

// Plain recursive assignment search, children tried in stored order.
bool hom_rec(const ConceptTree& t, const Interpretation& i, NodeId d, Elem e,
             std::map<NodeId, Elem>& h) {
    for (const auto& name : t.nodes[d].label)
        if (!i.has_label(e, name)) return false;
    h[d] = e;
    std::function<bool(size_t)> kids = [&](size_t idx) {
        if (idx == t.nodes[d].children.size()) return true;
        auto& [r, ch] = t.nodes[d].children[idx];
        for (Elem e2 : i.successors(e, r)) {
            std::map<NodeId, Elem> saved = h;
            if (hom_rec(t, i, ch, e2, h) && kids(idx + 1)) return true;
            h = saved;
        }
        return false;
    };
    return kids(0);
}

}  // namespace

bool naive_hom_exists(const ConceptTree& t, const Interpretation& i, Elem target) {
    std::map<NodeId, Elem> h;
    return hom_rec(t, i, t.root(), target, h);
}

NaiveModel naive_canonical(const ConceptRef& c, const TBox& t, int depth) {
    NaiveModel m;
    std::vector<int> dist;
    ConceptTree base = concept_to_tree(c);
    std::map<NodeId, Elem> to_elem;
    for (NodeId n : base.bfs_order()) {
        Elem e = m.interp.add_element();
        to_elem[n] = e;
        dist.push_back(n == base.root() ? 0 : dist[to_elem[base.nodes[n].parent]] + 1);
    }
    for (NodeId n : base.bfs_order()) {
        for (const auto& name : base.nodes[n].label) m.interp.add_label(to_elem[n], name);
        for (auto& [r, ch] : base.nodes[n].children) m.interp.add_edge(to_elem[n], to_elem[ch], r);
    }
    m.root = to_elem[base.root()];

    auto attach = [&](Elem at, const ConceptTree& rhs) {
        std::map<NodeId, Elem> em{{rhs.root(), at}};
        for (NodeId n : rhs.bfs_order()) {
            Elem here = em[n];
            for (const auto& name : rhs.nodes[n].label) m.interp.add_label(here, name);
            for (auto& [r, ch] : rhs.nodes[n].children) {
                Elem e2 = m.interp.add_element();
                dist.push_back(dist[here] + 1);
                em[ch] = e2;
                m.interp.add_edge(here, e2, r);
            }
        }
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& a : t.axioms) {
            if (std::holds_alternative<RI>(a)) {
                const RI& ri = std::get<RI>(a);
                int n = m.interp.size();
                for (Elem d = 0; d < n; ++d) {
                    for (Elem e : m.interp.successors(d, ri.lhs)) {
                        if (!m.interp.has_edge(d, e, ri.rhs)) {
                            m.interp.add_edge(d, e, ri.rhs);
                            changed = true;
                        }
                    }
                }
            } else {
                const CI& ci = std::get<CI>(a);
                std::set<Elem> lhs_ext = extension(ci.lhs, m.interp);
                std::set<Elem> rhs_ext = extension(ci.rhs, m.interp);
                for (Elem d : lhs_ext) {
                    if (rhs_ext.count(d)) continue;
                    if (dist[d] >= depth) continue;
                    attach(d, concept_to_tree(ci.rhs));
                    changed = true;
                    break;  // extensions are stale after an attachment
                }
                if (changed) break;
            }
        }
    }
    return m;
}

bool bf_entails_ri(const TBox& t, const RI& ri) {
    std::set<std::pair<std::string, bool>> reach{{ri.lhs.name, ri.lhs.inverted}};
    bool grown = true;
    while (grown) {
        grown = false;
        for (const auto& a : t.axioms) {
            if (!std::holds_alternative<RI>(a)) continue;
            const RI& ax = std::get<RI>(a);
            // forwards
            if (reach.count({ax.lhs.name, ax.lhs.inverted}))
                grown |= reach.insert({ax.rhs.name, ax.rhs.inverted}).second;
            // inverted on both sides
            if (reach.count({ax.lhs.name, !ax.lhs.inverted}))
                grown |= reach.insert({ax.rhs.name, !ax.rhs.inverted}).second;
        }
    }
    return reach.count({ri.rhs.name, ri.rhs.inverted}) > 0;
}

bool bf_entails_ci(const TBox& t, const CI& ci) {
    ConceptTree rhs = concept_to_tree(ci.rhs);
    NaiveModel m = naive_canonical(ci.lhs, t, concept_size(ci.rhs));
    return naive_hom_exists(rhs, m.interp, m.root);
}

bool bf_entails(const TBox& t, const Inclusion& inc) {
    if (std::holds_alternative<RI>(inc)) return bf_entails_ri(t, std::get<RI>(inc));
    return bf_entails_ci(t, std::get<CI>(inc));
}

bool bf_equiv(const TBox& a, const TBox& b) {
    for (const auto& ax : a.axioms)
        if (!bf_entails(b, ax)) return false;
    for (const auto& ax : b.axioms)
        if (!bf_entails(a, ax)) return false;
    return true;
}

}  // namespace dllearn::testsupport
