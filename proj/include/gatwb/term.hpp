#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gatwb {

struct Term;

// A sort expression: a generating sort applied to argument terms,
// e.g. Hom(x, y) or Tm(Id(A, x, y)).
struct SortExpr {
    std::string head;
    std::vector<Term> args;

    SortExpr() = default;
    explicit SortExpr(std::string h) : head(std::move(h)) {}
    SortExpr(std::string h, std::vector<Term> a);
};

// One entry of a telescope or context. `binder` is empty for first-order
// entries; a non-empty binder marks a second-order parameter, e.g.
// [y: Tm(A), p: Tm(Id(A,x,y))] P : Ty.
struct Binding;
using Telescope = std::vector<Binding>;

// An operation argument: a plain term, or a term under a binder telescope.
struct Arg;

struct Term {
    enum class Kind : uint8_t { Var, App };

    Kind kind = Kind::Var;
    int index = -1;        // Var: de Bruijn index, innermost binding = 0
    std::string op;        // App: operation name
    std::vector<Arg> args; // App arguments; Var meta-arguments (second-order)

    Term() = default;
    static Term var(int i);
    static Term var(int i, std::vector<Arg> as);
    static Term app(std::string op, std::vector<Arg> as);
    static Term app(std::string op, std::vector<Term> as);
};

struct Arg {
    Telescope binder; // empty for first-order arguments
    Term body;

    Arg() = default;
    Arg(Term t) : body(std::move(t)) {}
    Arg(Telescope b, Term t) : binder(std::move(b)), body(std::move(t)) {}
};

struct Binding {
    std::string name; // name hint only; indices are authoritative
    Telescope binder;
    SortExpr sort;

    Binding() = default;
    Binding(std::string n, SortExpr s) : name(std::move(n)), sort(std::move(s)) {}
    Binding(std::string n, Telescope b, SortExpr s)
        : name(std::move(n)), binder(std::move(b)), sort(std::move(s)) {}
};

using Context = Telescope;

bool operator==(const Term& a, const Term& b);
bool operator==(const Arg& a, const Arg& b);
bool operator==(const Binding& a, const Binding& b);
bool operator==(const SortExpr& a, const SortExpr& b);
inline bool operator!=(const Term& a, const Term& b) { return !(a == b); }
inline bool operator!=(const SortExpr& a, const SortExpr& b) { return !(a == b); }

// Total order used wherever deterministic iteration or least witnesses are
// required. Lexicographic on the tree structure.
int compare(const Term& a, const Term& b);
int compare(const SortExpr& a, const SortExpr& b);
bool term_less(const Term& a, const Term& b);
inline bool operator<(const Term& a, const Term& b) { return compare(a, b) < 0; }
inline bool operator<(const SortExpr& a, const SortExpr& b) { return compare(a, b) < 0; }

std::size_t hash_value(const Term& t);
std::size_t hash_value(const SortExpr& s);

// Number of App nodes along the deepest path. Var = 0, nullary App = 1.
int app_nesting(const Term& t);
// Total node count (App and Var nodes, including binder bodies).
int node_count(const Term& t);

// Shift free variables >= cutoff by d.
Term shift_term(const Term& t, int d, int cutoff = 0);
SortExpr shift_sort(const SortExpr& s, int d, int cutoff = 0);
Telescope shift_telescope(const Telescope& tele, int d, int cutoff = 0);

// Simultaneous substitution: replaces the innermost `subs.size()` variables.
// subs is in telescope order (subs[0] = outermost replaced variable); indices
// above are shifted down by subs.size(). Each substituens lives in the outer
// context. Meta-applications Var(k)(ts) beta-reduce when the replacement
// carries a binder.
Term subst_term(const Term& t, const std::vector<Arg>& subs);
SortExpr subst_sort(const SortExpr& s, const std::vector<Arg>& subs);
Telescope subst_telescope(const Telescope& tele, const std::vector<Arg>& subs);

// Substitute a prefix-instantiation inside a telescope tail: given a
// telescope entry sort written in (prefix ++ [0..i-1]) and arguments for the
// prefix positions, produce the sort in the ambient context.
std::string term_to_string(const Term& t, const std::vector<std::string>& names);
std::string sort_to_string(const SortExpr& s, const std::vector<std::string>& names);
std::vector<std::string> context_names(const Context& ctx);

} // namespace gatwb
