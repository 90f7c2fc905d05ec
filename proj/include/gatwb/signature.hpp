#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gatwb/term.hpp"

namespace gatwb {

struct SortDecl {
    std::string name;
    Telescope boundary;
    bool representable = false;
};

struct OpDecl {
    std::string name;
    Telescope telescope; // parameters; entries may carry binder telescopes
    SortExpr result;
};

struct EqDecl {
    std::string name;
    Telescope telescope;
    Term lhs;
    Term rhs;
    SortExpr at;
};

using Decl = std::variant<SortDecl, OpDecl, EqDecl>;

const std::string& decl_name(const Decl& d);

struct Signature {
    std::vector<Decl> declarations;

    const SortDecl* find_sort(const std::string& name) const;
    const OpDecl* find_op(const std::string& name) const;
    const EqDecl* find_eq(const std::string& name) const;
    bool has_name(const std::string& name) const;

    std::vector<const SortDecl*> sorts() const;
    std::vector<const OpDecl*> ops() const;
    std::vector<const EqDecl*> eqs() const;

    // Second-order iff any binder telescope or representable sort occurs.
    bool is_second_order() const;
    bool is_first_order() const { return !is_second_order(); }
};

struct ValidationError {
    std::string decl;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationError> errors;
    bool ok() const { return errors.empty(); }
    std::string to_string() const;
};

struct TypeError {
    std::string message;
};

// Typechecks `t` in `ctx` against the prefix of `sig` ending before
// declaration index `limit` (SIZE_MAX = whole signature). Sort-expression
// comparison is syntactic.
std::optional<SortExpr> infer_sort(const Signature& sig, const Context& ctx, const Term& t,
                                   TypeError* err = nullptr, std::size_t limit = SIZE_MAX);

// Convenience: infer and compare against an expected sort (syntactic).
bool check_sort(const Signature& sig, const Context& ctx, const Term& t, const SortExpr& expected,
                TypeError* err = nullptr);

// Telescope well-formation: each entry's binder and sort must typecheck in
// its prefix; binder entries must be of representable sorts.
bool check_telescope(const Signature& sig, const Context& outer, const Telescope& tele,
                     TypeError* err = nullptr, std::size_t limit = SIZE_MAX);

ValidationReport validate_signature(const Signature& sig);

// Appends `decl` and validates the result. On failure the errors refer to
// the appended declaration.
struct ExtendResult {
    Signature signature;
    ValidationReport report;
    bool ok() const { return report.ok(); }
};
ExtendResult extend_signature(const Signature& sig, Decl decl);

// Declared argument telescope of a generating sort.
std::optional<Telescope> boundary(const Signature& sig, const std::string& sort);

// Built-in theories: Cat, ECat, MonCat, StrMonCat, Id, IdStrict.
std::optional<Signature> builtin_signature(const std::string& name);
std::vector<std::string> builtin_names();

// True when lhs/rhs sorts of every equation agree syntactically or modulo
// earlier equations (used by the validator for dependent-sort equations).
bool sorts_equal_modulo(const Signature& sig, const Telescope& tele, const SortExpr& a,
                        const SortExpr& b, std::size_t eq_limit);

} // namespace gatwb
