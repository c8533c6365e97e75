// The teacher: answers membership and equivalence queries for a hidden
// target TBox, logs query complexity, and converts counterexamples to the
// forms the learners assume.

#ifndef DLLEARN_ORACLE_HPP
#define DLLEARN_ORACLE_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "dllearn/core.hpp"
#include "dllearn/named_form.hpp"
#include "dllearn/reasoner.hpp"

namespace dllearn {

struct QueryRecord {
    char kind = 'm';  // 'm' membership, 'e' equivalence
    int size = 0;
    bool yes = false;
    int counterexample_size = 0;
};

struct QueryLog {
    long membership_count = 0;
    long equivalence_count = 0;
    long total_input_size = 0;
    long membership_total_size = 0;
    long equivalence_total_size = 0;
    int max_counterexample_size = 0;
    std::vector<QueryRecord> trace;

    std::string to_jsonl() const;
};

enum class StrategyKind { FirstViolatedAxiom, PaddedUnfold, Scripted };

struct CounterexampleStrategy {
    StrategyKind kind = StrategyKind::FirstViolatedAxiom;
    std::uint64_t seed = 0;
    int budget = 0;  // PaddedUnfold: maximum number of unfolding steps
    std::vector<Inclusion> script;

    static CounterexampleStrategy first_violated() { return {}; }
    static CounterexampleStrategy padded_unfold(std::uint64_t seed, int budget) {
        CounterexampleStrategy s;
        s.kind = StrategyKind::PaddedUnfold;
        s.seed = seed;
        s.budget = budget;
        return s;
    }
    static CounterexampleStrategy scripted(std::vector<Inclusion> script) {
        CounterexampleStrategy s;
        s.kind = StrategyKind::Scripted;
        s.script = std::move(script);
        return s;
    }
};

// The learner broke the query protocol (hypothesis not entailed by the
// target while the strategy requires positive counterexamples, or a query
// outside the advertised signature).
struct ProtocolViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A session exceeded its query or wall-clock budget.
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SessionBudget {
    long max_membership = 1000000;
    long max_equivalence = 10000;
    double wall_limit_ms = 120000.0;
};

struct EquivalenceAnswer {
    bool yes = false;
    Inclusion counterexample = RI{Role(""), Role("")};
};

class Teacher {
public:
    Teacher(TBox target, Fragment fragment,
            CounterexampleStrategy strategy = CounterexampleStrategy::first_violated(),
            SessionBudget budget = SessionBudget{});

    Fragment fragment() const { return fragment_; }
    const Signature& signature() const { return advertised_; }
    const QueryLog& log() const { return log_; }

    bool membership(const Inclusion& q);
    EquivalenceAnswer equivalence(const TBox& h);

    // Reduced form relative to the target's named-form bookkeeping: the
    // left-hand side of a CI becomes a conjunction of concept names unless
    // the CI is between basic concepts.
    std::vector<CI> to_reduced_form(const CI& ci) const;

    // Hidden state, for audits and benchmarks only; learners must not touch.
    const TBox& working_target() const { return working_; }
    const TBox& effective_target() const { return stripped_; }
    const RoleRenaming& renaming() const { return renaming_; }
    const Reasoner& target_reasoner() const { return *reasoner_; }

private:
    Inclusion pick_counterexample(const TBox& h, const Reasoner& hyp);
    Inclusion first_violated(const Reasoner& hyp) const;
    Inclusion padded(const Reasoner& hyp);
    void bump(char kind, int size);
    void validate_signature(const Inclusion& q) const;

    Fragment fragment_;
    CounterexampleStrategy strategy_;
    SessionBudget budget_;
    TBox working_;   // named-form target for the DL-Lite dialects
    TBox stripped_;  // working target with reserved names substituted away
    RoleRenaming renaming_;
    std::map<Role, std::string> role_name_;
    Signature advertised_;
    std::unique_ptr<Reasoner> reasoner_;  // over working_
    QueryLog log_;
    size_t script_pos_ = 0;
};

}  // namespace dllearn

#endif  // DLLEARN_ORACLE_HPP
