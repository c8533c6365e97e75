#include "dllearn/named_form.hpp"

#include <algorithm>
#include <functional>

#include "dllearn/reasoner.hpp"

namespace dllearn {

Role RoleRenaming::apply(const Role& r) const {
    auto it = to_representative.find(r.name);
    if (it == to_representative.end()) return r;
    Role rep = it->second;
    if (r.inverted) rep = rep.inverse();
    return rep;
}

ConceptRef RoleRenaming::apply(const ConceptRef& c) const {
    switch (c->kind) {
        case Concept::Kind::Top:
        case Concept::Kind::Name: return c;
        case Concept::Kind::And: return Concept::conj(apply(c->left), apply(c->right));
        case Concept::Kind::Exists: return Concept::exists(apply(c->role), apply(c->body));
    }
    return c;
}

Inclusion RoleRenaming::apply(const Inclusion& inc) const {
    if (std::holds_alternative<RI>(inc)) {
        const RI& ri = std::get<RI>(inc);
        return RI{apply(ri.lhs), apply(ri.rhs)};
    }
    const CI& ci = std::get<CI>(inc);
    return CI{apply(ci.lhs), apply(ci.rhs)};
}

TBox RoleRenaming::equivalences() const {
    TBox t;
    for (auto& [name, rep] : to_representative) {
        t.add_ri(Role(name), rep);
        t.add_ri(rep, Role(name));
    }
    return t;
}

namespace {

// Replaces each role expression through the renaming and prunes axioms that
// become trivial.
TBox rename_tbox(const TBox& t, const RoleRenaming& ren) {
    TBox out;
    for (const auto& a : t.axioms) {
        Inclusion b = ren.apply(a);
        if (std::holds_alternative<RI>(b)) {
            const RI& ri = std::get<RI>(b);
            if (ri.lhs == ri.rhs) continue;
        }
        if (!out.contains(b)) out.add(b);
    }
    return out;
}

}  // namespace

NamedFormResult named_form_preprocess(const TBox& t) {
    NamedFormResult res;

    // 1. Role equivalence classes, via the role-inclusion chain closure.
    Reasoner r0(t);
    std::set<std::string> role_names = t.signature().role_names;
    std::map<std::string, Role> rep;
    std::set<std::string> assigned;
    for (const auto& name : role_names) {
        if (assigned.count(name)) continue;
        Role r(name);
        // Members of [r]: every expression equivalent to r. A class may mix a
        // name with inverses of other names.
        std::vector<Role> members{r};
        for (const Role& s : r0.role_supers(r))
            if (!(s == r) && r0.entails_ri(RI{s, r})) members.push_back(s);
        // Representative: lexicographically least non-inverted member.
        Role best = r;
        for (const Role& m : members)
            if (!m.inverted && m.name < best.name) best = m;
        for (const Role& m : members) {
            assigned.insert(m.name);
            Role target = m.inverted ? best.inverse() : best;
            if (!(target == Role(m.name)))
                res.renaming.to_representative.emplace(m.name, target);
        }
    }
    TBox renamed = rename_tbox(t, res.renaming);

    // 2. Defining names for unqualified existentials. Existing names are
    // reused; otherwise a reserved name is introduced.
    Reasoner r1(renamed);
    std::set<std::string> names = renamed.signature().concept_names;
    auto find_existing = [&](const Role& role) -> std::string {
        ConceptRef ex = Concept::exists(role, Concept::top());
        for (const auto& n : names) {
            ConceptRef nc = Concept::make_name(n);
            if (r1.entails_ci(nc, ex) && r1.entails_ci(ex, nc)) return n;
        }
        return "";
    };
    TBox result = renamed;
    for (const auto& name : renamed.signature().role_names) {
        Role role(name);
        std::string existing = find_existing(role);
        if (!existing.empty()) {
            res.role_name[role] = existing;
            continue;
        }
        std::string fresh = named_form_name(role);
        ConceptRef ex = Concept::exists(role, Concept::top());
        result.add_ci(Concept::make_name(fresh), ex);
        result.add_ci(ex, Concept::make_name(fresh));
        res.role_name[role] = fresh;
    }

    // 3. Reduced form: a CI whose right-hand side is not basic must not have
    // unqualified existentials on the left. Inverse expressions get a name on
    // demand.
    TBox reduced;
    auto name_for = [&](const Role& role) -> std::string {
        auto it = res.role_name.find(role);
        if (it != res.role_name.end()) return it->second;
        std::string fresh = named_form_name(role);
        ConceptRef ex = Concept::exists(role, Concept::top());
        reduced.add_ci(Concept::make_name(fresh), ex);
        reduced.add_ci(ex, Concept::make_name(fresh));
        res.role_name[role] = fresh;
        return fresh;
    };
    for (const auto& a : result.axioms) {
        if (std::holds_alternative<RI>(a)) {
            reduced.add(a);
            continue;
        }
        const CI& ci = std::get<CI>(a);
        bool rhs_basic = as_basic(ci.rhs).has_value();
        if (rhs_basic && as_basic(ci.lhs)) {
            reduced.add(a);
            continue;
        }
        std::vector<ConceptRef> parts;
        for (const auto& part : top_level_conjuncts(ci.lhs)) {
            if (part->kind == Concept::Kind::Top) continue;
            auto b = as_basic(part);
            if (b && !b->is_name) parts.push_back(Concept::make_name(name_for(b->role)));
            else parts.push_back(part);
        }
        reduced.add_ci(Concept::conj_all(parts), ci.rhs);
    }
    res.tbox = reduced;
    return res;
}

ConceptRef strip_reserved(const ConceptRef& c) {
    switch (c->kind) {
        case Concept::Kind::Top: return c;
        case Concept::Kind::Name: {
            if (!is_reserved(c->name)) return c;
            // "@ex_r" stands for some r.top, "@ex_i_r" for some r-.top.
            std::string rest = c->name.substr(std::string(kNamedFormPrefix).size());
            bool inv = false;
            if (rest.rfind("i_", 0) == 0) {
                inv = true;
                rest = rest.substr(2);
            }
            return Concept::exists(Role(rest, inv), Concept::top());
        }
        case Concept::Kind::And: return Concept::conj(strip_reserved(c->left), strip_reserved(c->right));
        case Concept::Kind::Exists: return Concept::exists(c->role, strip_reserved(c->body));
    }
    return c;
}

TBox strip_reserved(const TBox& t) {
    TBox out;
    for (const auto& a : t.axioms) {
        if (std::holds_alternative<RI>(a)) {
            out.add(a);
            continue;
        }
        const CI& ci = std::get<CI>(a);
        ConceptRef l = strip_reserved(ci.lhs);
        ConceptRef r = strip_reserved(ci.rhs);
        if (tree_equal(concept_to_tree(l), concept_to_tree(r))) continue;
        Inclusion b = CI{l, r};
        if (!out.contains(b)) out.add(b);
    }
    return out;
}

}  // namespace dllearn
