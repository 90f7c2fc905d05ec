#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gatwb/congruence.hpp"
#include "gatwb/engine.hpp"
#include "gatwb/model.hpp"
#include "gatwb/signature.hpp"

namespace gatwb {

// Per generating sort S: a telescope H_S extending (sigma : dS, x : S, y : S)
// and a reflexivity filling hrefl_S over (sigma, x).
struct HomotopyRelations {
    struct SortHomotopy {
        std::string sort;
        Telescope telescope;     // in context (boundary, x, y)
        std::vector<Arg> hrefl;  // in context (boundary, x), one per entry
    };
    std::string name;
    std::vector<SortHomotopy> per_sort;

    const SortHomotopy* find(const std::string& sort) const;
};

// Validates H against sig: telescopes typecheck, hrefl fills H_S(sigma,x,x)
// up to the theory's equations.
struct HomotopyCheckResult {
    bool ok = true;
    std::string error;
};
HomotopyCheckResult check_homotopy_relations(const Signature& sig, const HomotopyRelations& h,
                                             const Budget& budget = {});

// Built-in homotopy relations: Cat-iso, ECat-iso, MonCat-iso, Id-equiv.
std::optional<HomotopyRelations> builtin_homotopy(const std::string& name);
// The theory a built-in homotopy is stated over.
std::optional<std::string> builtin_homotopy_theory(const std::string& name);

struct MarkedHomotopy {
    std::string name;
    Context context;
    std::string sort;
    std::vector<Term> boundary; // sigma, in context
    Term lhs;                   // x
    Term rhs;                   // y
    std::vector<Arg> witness;   // p, filling H_S(sigma, x, y)
};

struct MarkCheckResult {
    bool ok = true;
    std::string error;
};
MarkCheckResult check_mark(const Signature& sig, const HomotopyRelations& h, const MarkedHomotopy& m,
                           const Budget& budget = {});

// T -> T_E: per mark one endpoint equation plus one equation per witness
// component equating it with the corresponding hrefl component.
struct ExtensionResult {
    Signature signature;
    ValidationReport report;
    bool ok() const { return report.ok(); }
};
ExtensionResult equational_extension(const Signature& sig, const HomotopyRelations& h,
                                     const std::vector<MarkedHomotopy>& marks);

// Transitivity of homotopy relations: bounded search for composite tuples.
struct TransitivityResult {
    bool found = false;
    // per sort, the composite tuple (over boundary, x, y, z, H(x,y), H(y,z))
    std::map<std::string, std::vector<Arg>> composites;
};
TransitivityResult check_transitive(const Signature& sig, const HomotopyRelations& h,
                                    const Budget& budget);

// Lifting checkers over finite models.
enum class LiftAnswer { Yes, No, Unknown };
const char* to_string(LiftAnswer a);

struct LiftVerdict {
    LiftAnswer answer = LiftAnswer::Unknown;
    // yes: witness table entries; no: least failing instance
    std::vector<std::string> witness;
    std::string failing;
};

// Surjectivity of every per-sort-instance action.
LiftVerdict check_trivial_fibration(const ModelMorphism& f);

// Path lifting with fixed left endpoint (isofibrations for categories).
LiftVerdict check_fibration(const ModelMorphism& f, const HomotopyRelations& h);

// Weak lifting: every target element lifts up to a homotopy.
LiftVerdict check_weak_equivalence(const ModelMorphism& f, const HomotopyRelations& h);

// Bounded Morita check for an equational extension: every extension-side
// class of terms admits a base-side lift up to an H-homotopy.
LiftVerdict check_morita_bounded(const Signature& base, const HomotopyRelations& h,
                                 const Signature& extension, const Context& generators,
                                 const Budget& budget);

struct TwoOutOfThreeReport {
    LiftVerdict f;
    LiftVerdict g;
    LiftVerdict gf;
    bool transitivity_available = false;
    bool right_cancellation_ok = true; // (G we & GF we) => F we
    bool composition_ok = true;        // transitive & F,G we => GF we
    bool ok() const { return right_cancellation_ok && composition_ok; }
};

TwoOutOfThreeReport two_out_of_three_suite(const ModelMorphism& f, const ModelMorphism& g,
                                           const HomotopyRelations& h);

// Homotopy tuples between two elements in a finite model: all fillings of
// H_S(sigma, x, y) by model elements, deterministic order.
std::vector<ElemTuple> homotopy_tuples(const FiniteModel& m, const HomotopyRelations& h,
                                       const std::string& sort, const ElemTuple& boundary,
                                       const Elem& x, const Elem& y);

} // namespace gatwb
