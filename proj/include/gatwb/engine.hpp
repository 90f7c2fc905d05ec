#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gatwb/signature.hpp"

namespace gatwb {

struct Budget {
    int depth = 3;
    int max_nodes = 20000;
    bool operator<(const Budget& o) const {
        return depth != o.depth ? depth < o.depth : max_nodes < o.max_nodes;
    }
};

// Exactly the well-typed terms of the given sort with App-nesting <= depth,
// in depth-then-lexicographic order. Throws BudgetError past size_cap.
std::vector<Term> enumerate_terms(const Signature& sig, const Context& ctx, const SortExpr& sort,
                                  int depth, std::size_t size_cap = 100000);

struct DerivationStep {
    enum class Kind { Equation, Congruence } kind = Kind::Equation;
    Term lhs;
    Term rhs;
    std::string equation;            // Kind::Equation
    std::vector<Arg> instantiation;  // telescope instantiation, Kind::Equation
};

struct Derivation {
    std::vector<DerivationStep> steps;
};

enum class EqVerdict { Equal, DistinctWithinBudget, Unknown };

const char* to_string(EqVerdict v);

struct EqResult {
    EqVerdict verdict = EqVerdict::Unknown;
    std::shared_ptr<const Derivation> derivation; // present on Equal
};

// Checks a derivation step by step: every step must be a valid equation
// instantiation or a congruence consequence of the steps before it, and the
// final partition must relate a and b. Independent of the closure engine.
bool replay_derivation(const Signature& sig, const Context& gens, const Term& a, const Term& b,
                       const Derivation& d, std::string* error = nullptr);

// A finitely presented model: elements are terms over the generator context,
// equality is bounded congruence closure over the instantiated equations.
class TermModel {
public:
    TermModel(Signature sig, Context generators);

    const Signature& signature() const { return sig_; }
    const Context& generators() const { return gens_; }

    EqResult decide_equal(const Term& a, const Term& b, const Budget& budget);

    // Universe representatives of the given sort at this budget: one least
    // term per equivalence class, in deterministic order.
    std::vector<Term> class_representatives(const SortExpr& sort, const Budget& budget);

    // Least representative of the class of t (t itself if unseen).
    Term representative(const Term& t, const Budget& budget);

    // Optional normalization accelerator (e.g. reassociation for strict
    // monoidal theories). Must agree with the closure wherever both decide;
    // disagreement is reported by decide_equal as an internal error.
    using Normalizer = Term (*)(const Signature&, const Term&);
    void set_normalizer(Normalizer n) { normalizer_ = n; }
    Normalizer normalizer() const { return normalizer_; }

private:
    struct Closure;
    Signature sig_;
    Context gens_;
    Normalizer normalizer_ = nullptr;
    std::map<Budget, std::shared_ptr<Closure>> closures_;

    Closure& closure_for(const Budget& budget, const std::vector<Term>& seeds);
};

TermModel free_model(const Signature& sig, const Context& generators);

// Right-associates tensor products and erases units; accelerator for
// strictified monoidal theories.
Term strmoncat_object_normalizer(const Signature& sig, const Term& t);

} // namespace gatwb
