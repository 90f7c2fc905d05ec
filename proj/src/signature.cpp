#include "gatwb/signature.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace gatwb {

const std::string& decl_name(const Decl& d) {
    return std::visit([](const auto& x) -> const std::string& { return x.name; }, d);
}

const SortDecl* Signature::find_sort(const std::string& name) const {
    for (const auto& d : declarations)
        if (const auto* s = std::get_if<SortDecl>(&d); s && s->name == name) return s;
    return nullptr;
}

const OpDecl* Signature::find_op(const std::string& name) const {
    for (const auto& d : declarations)
        if (const auto* o = std::get_if<OpDecl>(&d); o && o->name == name) return o;
    return nullptr;
}

const EqDecl* Signature::find_eq(const std::string& name) const {
    for (const auto& d : declarations)
        if (const auto* e = std::get_if<EqDecl>(&d); e && e->name == name) return e;
    return nullptr;
}

bool Signature::has_name(const std::string& name) const {
    for (const auto& d : declarations)
        if (decl_name(d) == name) return true;
    return false;
}

std::vector<const SortDecl*> Signature::sorts() const {
    std::vector<const SortDecl*> r;
    for (const auto& d : declarations)
        if (const auto* s = std::get_if<SortDecl>(&d)) r.push_back(s);
    return r;
}

std::vector<const OpDecl*> Signature::ops() const {
    std::vector<const OpDecl*> r;
    for (const auto& d : declarations)
        if (const auto* o = std::get_if<OpDecl>(&d)) r.push_back(o);
    return r;
}

std::vector<const EqDecl*> Signature::eqs() const {
    std::vector<const EqDecl*> r;
    for (const auto& d : declarations)
        if (const auto* e = std::get_if<EqDecl>(&d)) r.push_back(e);
    return r;
}

static bool telescope_has_binder(const Telescope& tele) {
    for (const auto& b : tele)
        if (!b.binder.empty()) return true;
    return false;
}

bool Signature::is_second_order() const {
    for (const auto& d : declarations) {
        if (const auto* s = std::get_if<SortDecl>(&d)) {
            if (s->representable || telescope_has_binder(s->boundary)) return true;
        } else if (const auto* o = std::get_if<OpDecl>(&d)) {
            if (telescope_has_binder(o->telescope)) return true;
        } else if (const auto* e = std::get_if<EqDecl>(&d)) {
            if (telescope_has_binder(e->telescope)) return true;
        }
    }
    return false;
}

std::string ValidationReport::to_string() const {
    if (ok()) return "ok";
    std::ostringstream os;
    for (const auto& e : errors) os << e.decl << ": " << e.message << "\n";
    return os.str();
}

namespace {

struct Checker {
    const Signature& sig;
    std::size_t limit;

    const SortDecl* sort_before(const std::string& name) const {
        for (std::size_t i = 0; i < sig.declarations.size() && i < limit; ++i)
            if (const auto* s = std::get_if<SortDecl>(&sig.declarations[i]); s && s->name == name)
                return s;
        return nullptr;
    }

    const OpDecl* op_before(const std::string& name) const {
        for (std::size_t i = 0; i < sig.declarations.size() && i < limit; ++i)
            if (const auto* o = std::get_if<OpDecl>(&sig.declarations[i]); o && o->name == name)
                return o;
        return nullptr;
    }

    bool fail(TypeError* err, std::string msg) const {
        if (err && err->message.empty()) err->message = std::move(msg);
        return false;
    }

    // Check the argument list `args` (in ctx) against a closed telescope
    // `tele` whose entries may depend on earlier ones. On success the
    // instantiated args are left in `checked`.
    bool check_args(const Context& ctx, const Telescope& tele, const std::vector<Arg>& args,
                    std::vector<Arg>& checked, const std::string& what, TypeError* err) {
        if (args.size() != tele.size())
            return fail(err, what + ": expected " + std::to_string(tele.size()) + " arguments, got " +
                                 std::to_string(args.size()));
        for (std::size_t i = 0; i < tele.size(); ++i) {
            Telescope binder_inst = subst_telescope(tele[i].binder, checked);
            if (binder_inst.empty()) {
                if (!args[i].binder.empty())
                    return fail(err, what + ": argument " + std::to_string(i + 1) +
                                         " has an unexpected binder");
                SortExpr expected = subst_sort_under(tele[i].sort, checked, 0);
                std::optional<SortExpr> got = infer(ctx, args[i].body, err);
                if (!got) return false;
                if (!(*got == expected))
                    return fail(err, what + ": argument " + std::to_string(i + 1) + " has sort " +
                                         sort_to_string(*got, context_names(ctx)) + ", expected " +
                                         sort_to_string(expected, context_names(ctx)));
            } else {
                if (args[i].binder.size() != binder_inst.size())
                    return fail(err, what + ": argument " + std::to_string(i + 1) +
                                         " binder length mismatch");
                for (std::size_t j = 0; j < binder_inst.size(); ++j)
                    if (!(args[i].binder[j] == binder_inst[j]))
                        return fail(err, what + ": argument " + std::to_string(i + 1) +
                                             " binder sort mismatch");
                Context inner = ctx;
                for (const auto& b : binder_inst) inner.push_back(b);
                SortExpr expected = subst_sort_under(tele[i].sort, checked,
                                                     static_cast<int>(binder_inst.size()));
                std::optional<SortExpr> got = infer(inner, args[i].body, err);
                if (!got) return false;
                if (!(*got == expected))
                    return fail(err, what + ": argument " + std::to_string(i + 1) +
                                         " body sort mismatch: got " +
                                         sort_to_string(*got, context_names(inner)) + ", expected " +
                                         sort_to_string(expected, context_names(inner)));
            }
            checked.push_back(args[i]);
        }
        return true;
    }

    SortExpr subst_sort_under(const SortExpr& s, const std::vector<Arg>& subs, int depth) const {
        if (depth == 0) return subst_sort(s, subs);
        // Substitute the variables sitting just above `depth` binders.
        SortExpr r;
        r.head = s.head;
        for (const auto& t : s.args) r.args.push_back(subst_under(t, subs, depth));
        return r;
    }

    static Term subst_under(const Term& t, const std::vector<Arg>& subs, int depth) {
        // Replace Var(depth .. depth+subs.size()-1); keep bound vars below.
        // Implemented via a shift/substitute/unshift dance to reuse subst_term.
        // shift subs by depth, then build a full substitution covering the
        // depth innermost vars with themselves.
        std::vector<Arg> full;
        full.reserve(subs.size() + depth);
        for (const auto& a : subs) {
            Arg na = a;
            na.binder = shift_telescope(a.binder, depth, 0);
            na.body = shift_term(a.body, depth, 0);
            full.push_back(std::move(na));
        }
        for (int j = depth - 1; j >= 0; --j) full.emplace_back(Term::var(j));
        Term r = subst_term(t, full);
        return r;
    }

    std::optional<SortExpr> infer(const Context& ctx, const Term& t, TypeError* err) {
        if (t.kind == Term::Kind::Var) {
            if (t.index < 0 || t.index >= static_cast<int>(ctx.size())) {
                fail(err, "variable index " + std::to_string(t.index) + " out of range");
                return std::nullopt;
            }
            const Binding& b = ctx[ctx.size() - 1 - static_cast<std::size_t>(t.index)];
            int d = t.index + 1;
            if (b.binder.empty()) {
                if (!t.args.empty()) {
                    fail(err, "first-order variable applied to arguments");
                    return std::nullopt;
                }
                return shift_sort(b.sort, d, 0);
            }
            Telescope binder = shift_telescope(b.binder, d, 0);
            SortExpr body_sort = shift_sort(b.sort, d, static_cast<int>(b.binder.size()));
            std::vector<Arg> checked;
            // Second-order variable: the meta-arguments fill its binder.
            if (t.args.size() != binder.size()) {
                fail(err, "second-order variable expects " + std::to_string(binder.size()) +
                              " arguments, got " + std::to_string(t.args.size()));
                return std::nullopt;
            }
            for (std::size_t i = 0; i < binder.size(); ++i) {
                if (!t.args[i].binder.empty()) {
                    fail(err, "binder argument applied to a second-order variable");
                    return std::nullopt;
                }
                SortExpr expected = subst_sort(binder[i].sort, checked);
                std::optional<SortExpr> got = infer(ctx, t.args[i].body, err);
                if (!got) return std::nullopt;
                if (!(*got == expected)) {
                    fail(err, "meta-argument " + std::to_string(i + 1) + " has sort " +
                                  sort_to_string(*got, context_names(ctx)) + ", expected " +
                                  sort_to_string(expected, context_names(ctx)));
                    return std::nullopt;
                }
                checked.push_back(t.args[i]);
            }
            return subst_sort_under(body_sort, checked, 0);
        }
        const OpDecl* op = op_before(t.op);
        if (!op) {
            fail(err, "unknown operation '" + t.op + "'");
            return std::nullopt;
        }
        std::vector<Arg> checked;
        if (!check_args(ctx, op->telescope, t.args, checked, "op " + t.op, err))
            return std::nullopt;
        return subst_sort(op->result, checked);
    }

    bool check_sort_expr(const Context& ctx, const SortExpr& s, TypeError* err) {
        const SortDecl* sd = sort_before(s.head);
        if (!sd) return fail(err, "unknown sort '" + s.head + "'");
        std::vector<Arg> args;
        args.reserve(s.args.size());
        for (const auto& t : s.args) args.emplace_back(t);
        std::vector<Arg> checked;
        return check_args(ctx, sd->boundary, args, checked, "sort " + s.head, err);
    }

    bool check_tele(const Context& outer, const Telescope& tele, TypeError* err) {
        Context ctx = outer;
        for (const auto& b : tele) {
            // binder entries must be first-order and of representable sorts
            Context inner = ctx;
            for (const auto& bb : b.binder) {
                if (!bb.binder.empty()) return fail(err, "nested binder telescopes not allowed");
                if (!check_sort_expr(inner, bb.sort, err)) return false;
                const SortDecl* sd = sort_before(bb.sort.head);
                if (sd && !sd->representable)
                    return fail(err, "binder telescope entry '" + bb.name +
                                         "' has non-representable sort " + bb.sort.head);
                inner.push_back(bb);
            }
            if (!check_sort_expr(inner, b.sort, err)) return false;
            ctx.push_back(b);
        }
        return true;
    }
};

} // namespace

std::optional<SortExpr> infer_sort(const Signature& sig, const Context& ctx, const Term& t,
                                   TypeError* err, std::size_t limit) {
    Checker c{sig, limit};
    return c.infer(ctx, t, err);
}

bool check_sort(const Signature& sig, const Context& ctx, const Term& t, const SortExpr& expected,
                TypeError* err) {
    Checker c{sig, SIZE_MAX};
    std::optional<SortExpr> got = c.infer(ctx, t, err);
    if (!got) return false;
    if (*got == expected) return true;
    if (err && err->message.empty())
        err->message = "sort mismatch: got " + sort_to_string(*got, context_names(ctx)) +
                       ", expected " + sort_to_string(expected, context_names(ctx));
    return false;
}

bool check_telescope(const Signature& sig, const Context& outer, const Telescope& tele,
                     TypeError* err, std::size_t limit) {
    Checker c{sig, limit};
    return c.check_tele(outer, tele, err);
}

// ---------------------------------------------------------------------------
// Equality of sort expressions modulo earlier equations (bounded closure).
// ---------------------------------------------------------------------------

namespace {

struct MiniClosure {
    const Signature& sig;
    const Telescope& tele;
    std::size_t eq_limit;
    std::vector<Term> universe{};
    std::vector<int> parent{};
    std::vector<std::optional<SortExpr>> sorts{};
    std::size_t node_cap = 4000;

    int find(int i) {
        while (parent[i] != i) {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        return i;
    }

    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);
        parent[b] = a;
    }

    int index_of(const Term& t) const {
        for (std::size_t i = 0; i < universe.size(); ++i)
            if (universe[i] == t) return static_cast<int>(i);
        return -1;
    }

    int add(const Term& t) {
        int i = index_of(t);
        if (i >= 0) return i;
        if (node_count(t) + static_cast<int>(universe.size()) > static_cast<int>(node_cap))
            return -1;
        for (const auto& a : t.args)
            if (a.binder.empty()) add(a.body);
        universe.push_back(t);
        parent.push_back(static_cast<int>(universe.size()) - 1);
        TypeError err;
        Context ctx(tele.begin(), tele.end());
        sorts.push_back(infer_sort(sig, ctx, t, &err, eq_limit));
        return static_cast<int>(universe.size()) - 1;
    }

    bool same_class(const Term& a, const Term& b) {
        int ia = index_of(a), ib = index_of(b);
        if (ia < 0 || ib < 0) return a == b;
        return find(ia) == find(ib);
    }

    // First-order matching with an eta-pattern case for second-order
    // variables. Pattern variables are the equation telescope's entries.
    bool match_term(const Term& pat, const Term& cand, int depth, std::vector<std::optional<Arg>>& sub) {
        if (pat.kind == Term::Kind::Var) {
            if (pat.index < depth) {
                // bound variable: must match exactly
                if (cand.kind != Term::Kind::Var || cand.index != pat.index) return false;
                return cand.args.empty() && pat.args.empty();
            }
            int v = pat.index - depth;
            if (v >= static_cast<int>(sub.size())) return false;
            std::size_t pos = sub.size() - 1 - static_cast<std::size_t>(v);
            if (pat.args.empty()) {
                if (has_free_below(cand, depth)) return false;
                Term lowered = shift_term(cand, -depth, depth);
                if (sub[pos]) return sub[pos]->binder.empty() && same_class(sub[pos]->body, lowered);
                sub[pos] = Arg(lowered);
                return true;
            }
            // eta-pattern: args are exactly the innermost bound variables
            if (static_cast<int>(pat.args.size()) > depth) return false;
            for (std::size_t i = 0; i < pat.args.size(); ++i) {
                const Term& a = pat.args[i].body;
                if (!pat.args[i].binder.empty() || a.kind != Term::Kind::Var || !a.args.empty())
                    return false;
                if (a.index != static_cast<int>(pat.args.size() - 1 - i)) return false;
            }
            int m = static_cast<int>(pat.args.size());
            if (has_free_in_range(cand, m, depth)) return false;
            Term lowered = shift_term(cand, -(depth - m), depth);
            if (sub[pos]) return false; // repeated higher-order patterns unsupported
            const Binding& bnd = tele[pos];
            if (static_cast<int>(bnd.binder.size()) != m) return false;
            sub[pos] = Arg(bnd.binder, lowered);
            return true;
        }
        if (cand.kind != Term::Kind::App || cand.op != pat.op || cand.args.size() != pat.args.size())
            return false;
        for (std::size_t i = 0; i < pat.args.size(); ++i) {
            if (pat.args[i].binder.size() != cand.args[i].binder.size()) return false;
            int d2 = depth + static_cast<int>(pat.args[i].binder.size());
            if (!match_term(pat.args[i].body, cand.args[i].body, d2, sub)) return false;
        }
        return true;
    }

    static bool has_free_below(const Term& t, int depth) {
        if (t.kind == Term::Kind::Var && t.index < depth) return true;
        for (const auto& a : t.args)
            if (has_free_below(a.body, depth + static_cast<int>(a.binder.size()))) return true;
        return false;
    }

    static bool has_free_in_range(const Term& t, int lo, int hi) {
        if (t.kind == Term::Kind::Var && t.index >= lo && t.index < hi) return true;
        for (const auto& a : t.args) {
            int k = static_cast<int>(a.binder.size());
            if (has_free_in_range(a.body, lo + k, hi + k)) return true;
        }
        return false;
    }

    std::size_t work_budget = 60000; // global across the whole run

    // Matching is untyped; reject instantiations whose bindings do not carry
    // the telescope's declared sorts (up to the current classes).
    bool instantiation_well_sorted(const EqDecl& eq, const std::vector<Arg>& subs) {
        Context ctx(tele.begin(), tele.end());
        std::vector<Arg> prefix;
        for (std::size_t j = 0; j < subs.size(); ++j) {
            const Binding& bnd = eq.telescope[j];
            if (!bnd.binder.empty()) {
                prefix.push_back(subs[j]);
                continue; // binder bindings come from structural matching
            }
            SortExpr expected = subst_sort(bnd.sort, prefix);
            std::optional<SortExpr> got;
            int idx = index_of(subs[j].body);
            if (idx >= 0) {
                got = sorts[static_cast<std::size_t>(idx)];
            } else {
                TypeError err;
                got = infer_sort(sig, ctx, subs[j].body, &err, eq_limit);
            }
            if (!got) return false;
            if (got->head != expected.head || got->args.size() != expected.args.size()) return false;
            for (std::size_t k = 0; k < got->args.size(); ++k)
                if (!same_class(got->args[k], expected.args[k])) return false;
            prefix.push_back(subs[j]);
        }
        return true;
    }

    // Fills the remaining telescope slots (in order) with sort-compatible
    // universe members and applies the instantiated equation.
    void enumerate_and_apply(const EqDecl& eq, std::vector<std::optional<Arg>>& sub, std::size_t i,
                             int matched, const Term& other, bool& changed, std::size_t& attempts) {
        if (attempts > 2000 || work_budget == 0) return;
        --work_budget;
        if (i == sub.size()) {
            ++attempts;
            std::vector<Arg> subs;
            subs.reserve(sub.size());
            for (auto& s : sub) subs.push_back(*s);
            if (!instantiation_well_sorted(eq, subs)) return;
            Term inst = subst_term(other, subs);
            int b = add(inst);
            if (b < 0) return;
            if (find(matched) != find(b)) {
                unite(matched, b);
                changed = true;
            }
            return;
        }
        if (sub[i]) {
            enumerate_and_apply(eq, sub, i + 1, matched, other, changed, attempts);
            return;
        }
        const Binding& bnd = eq.telescope[i];
        if (!bnd.binder.empty()) return; // binder slots must come from matching
        // expected sort under the partial instantiation
        std::vector<Arg> prefix;
        for (std::size_t j = 0; j < i; ++j) {
            if (!sub[j]) return; // later-bound prefix: unsupported, bail out
            prefix.push_back(*sub[j]);
        }
        SortExpr expected = subst_sort(bnd.sort, prefix);
        std::size_t usize = universe.size();
        for (std::size_t u = 0; u < usize && attempts <= 2000 && work_budget > 0; ++u) {
            if (!sorts[u]) continue;
            const SortExpr& got = *sorts[u];
            if (got.head != expected.head || got.args.size() != expected.args.size()) continue;
            bool ok = true;
            for (std::size_t k = 0; k < got.args.size() && ok; ++k)
                ok = same_class(got.args[k], expected.args[k]) ||
                     (index_of(expected.args[k]) < 0 && got.args[k] == expected.args[k]);
            if (!ok) continue;
            sub[i] = Arg(universe[u]);
            enumerate_and_apply(eq, sub, i + 1, matched, other, changed, attempts);
            sub[i] = std::nullopt;
        }
    }

    void run(const std::function<bool()>& goal_met) {
        bool changed = true;
        int passes = 0;
        while (changed && passes++ < 8 && work_budget > 0) {
            if (goal_met()) return;
            changed = false;
            // congruence
            for (std::size_t i = 0; i < universe.size(); ++i) {
                for (std::size_t j = i + 1; j < universe.size(); ++j) {
                    const Term& a = universe[i];
                    const Term& b = universe[j];
                    if (find(static_cast<int>(i)) == find(static_cast<int>(j))) continue;
                    if (a.kind != b.kind || a.args.size() != b.args.size()) continue;
                    if (a.kind == Term::Kind::Var && a.index != b.index) continue;
                    if (a.kind == Term::Kind::App && a.op != b.op) continue;
                    bool all = true;
                    for (std::size_t k = 0; k < a.args.size(); ++k) {
                        if (!a.args[k].binder.empty() || !b.args[k].binder.empty()) {
                            if (!(a.args[k] == b.args[k])) all = false;
                        } else if (!same_class(a.args[k].body, b.args[k].body)) {
                            all = false;
                        }
                        if (!all) break;
                    }
                    if (all) {
                        unite(static_cast<int>(i), static_cast<int>(j));
                        changed = true;
                    }
                }
            }
            // equation instances found by matching lhs or rhs in the universe;
            // telescope variables the match leaves unbound are enumerated over
            // sort-compatible universe members (bounded)
            for (std::size_t ei = 0; ei < sig.declarations.size() && ei < eq_limit; ++ei) {
                const auto* eq = std::get_if<EqDecl>(&sig.declarations[ei]);
                if (!eq) continue;
                for (int side = 0; side < 2; ++side) {
                    const Term& pat = side == 0 ? eq->lhs : eq->rhs;
                    const Term& other = side == 0 ? eq->rhs : eq->lhs;
                    std::size_t usize = universe.size();
                    for (std::size_t u = 0; u < usize && work_budget > 0; ++u) {
                        std::vector<std::optional<Arg>> sub(eq->telescope.size());
                        if (!match_term(pat, universe[u], 0, sub)) continue;
                        std::size_t attempts = 0;
                        enumerate_and_apply(*eq, sub, 0, static_cast<int>(u), other, changed,
                                            attempts);
                    }
                    if (goal_met()) return;
                }
            }
        }
    }
};

} // namespace

bool sorts_equal_modulo(const Signature& sig, const Telescope& tele, const SortExpr& a,
                        const SortExpr& b, std::size_t eq_limit) {
    if (a == b) return true;
    if (a.head != b.head || a.args.size() != b.args.size()) return false;
    MiniClosure mc{sig, tele, eq_limit};
    for (std::size_t i = 0; i < tele.size(); ++i) {
        if (tele[i].binder.empty())
            mc.add(Term::var(static_cast<int>(tele.size() - 1 - i)));
    }
    for (const auto& t : a.args) mc.add(t);
    for (const auto& t : b.args) mc.add(t);
    auto goal = [&]() {
        for (std::size_t i = 0; i < a.args.size(); ++i)
            if (!mc.same_class(a.args[i], b.args[i])) return false;
        return true;
    };
    mc.run(goal);
    return goal();
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

ValidationReport validate_signature(const Signature& sig) {
    ValidationReport report;
    std::set<std::string> names;
    for (std::size_t i = 0; i < sig.declarations.size(); ++i) {
        const Decl& d = sig.declarations[i];
        const std::string& name = decl_name(d);
        if (!names.insert(name).second) {
            report.errors.push_back({name, "duplicate declaration name"});
            continue;
        }
        TypeError err;
        if (const auto* s = std::get_if<SortDecl>(&d)) {
            if (!check_telescope(sig, {}, s->boundary, &err, i))
                report.errors.push_back({name, err.message});
        } else if (const auto* o = std::get_if<OpDecl>(&d)) {
            if (!check_telescope(sig, {}, o->telescope, &err, i)) {
                report.errors.push_back({name, err.message});
                continue;
            }
            Checker c{sig, i};
            Context ctx(o->telescope.begin(), o->telescope.end());
            if (!c.check_sort_expr(ctx, o->result, &err))
                report.errors.push_back({name, err.message});
        } else if (const auto* e = std::get_if<EqDecl>(&d)) {
            if (!check_telescope(sig, {}, e->telescope, &err, i)) {
                report.errors.push_back({name, err.message});
                continue;
            }
            Checker c{sig, i};
            Context ctx(e->telescope.begin(), e->telescope.end());
            if (!c.check_sort_expr(ctx, e->at, &err)) {
                report.errors.push_back({name, err.message});
                continue;
            }
            for (const Term* side : {&e->lhs, &e->rhs}) {
                TypeError serr;
                std::optional<SortExpr> got = c.infer(ctx, *side, &serr);
                if (!got) {
                    report.errors.push_back({name, serr.message});
                    continue;
                }
                if (!(*got == e->at) && !sorts_equal_modulo(sig, e->telescope, *got, e->at, i)) {
                    report.errors.push_back(
                        {name, std::string(side == &e->lhs ? "lhs" : "rhs") + " sort mismatch: got " +
                                   sort_to_string(*got, context_names(ctx)) + ", expected " +
                                   sort_to_string(e->at, context_names(ctx))});
                }
            }
        }
    }
    return report;
}

ExtendResult extend_signature(const Signature& sig, Decl decl) {
    ExtendResult r;
    r.signature = sig;
    r.signature.declarations.push_back(std::move(decl));
    ValidationReport full = validate_signature(r.signature);
    // Only report errors introduced by the appended declaration.
    const std::string& new_name = decl_name(r.signature.declarations.back());
    ValidationReport base = validate_signature(sig);
    for (const auto& e : full.errors) {
        bool preexisting = false;
        for (const auto& b : base.errors)
            if (b.decl == e.decl && b.message == e.message) preexisting = true;
        if (!preexisting || e.decl == new_name) r.report.errors.push_back(e);
    }
    return r;
}

std::optional<Telescope> boundary(const Signature& sig, const std::string& sort) {
    const SortDecl* s = sig.find_sort(sort);
    if (!s) return std::nullopt;
    return s->boundary;
}

} // namespace gatwb
