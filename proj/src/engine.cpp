#include "gatwb/engine.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

#include "gatwb/errors.hpp"

namespace gatwb {

const char* to_string(EqVerdict v) {
    switch (v) {
        case EqVerdict::Equal: return "equal";
        case EqVerdict::DistinctWithinBudget: return "distinct-within-budget";
        default: return "unknown";
    }
}

namespace {

struct TermHash {
    std::size_t operator()(const Term& t) const { return hash_value(t); }
};

struct SortKey {
    std::string head;
    std::vector<int> arg_classes;
    bool operator<(const SortKey& o) const {
        if (head != o.head) return head < o.head;
        return arg_classes < o.arg_classes;
    }
    bool operator==(const SortKey& o) const {
        return head == o.head && arg_classes == o.arg_classes;
    }
};

} // namespace

// ---------------------------------------------------------------------------
// enumerate_terms
// ---------------------------------------------------------------------------

std::vector<Term> enumerate_terms(const Signature& sig, const Context& ctx, const SortExpr& sort,
                                  int depth, std::size_t size_cap) {
    if (sig.is_second_order())
        throw UnsupportedSignatureError("enumerate_terms requires a first-order signature");
    std::vector<Term> universe;
    std::unordered_map<Term, int, TermHash> index;
    std::map<SortExpr, std::vector<int>> by_sort;
    std::vector<int> nesting;
    std::vector<SortExpr> sorts;

    auto add = [&](const Term& t, const SortExpr& s, int n) {
        if (index.count(t)) return;
        if (universe.size() >= size_cap)
            throw BudgetError("enumerate_terms: universe exceeds the size cap");
        index[t] = static_cast<int>(universe.size());
        universe.push_back(t);
        sorts.push_back(s);
        nesting.push_back(n);
        by_sort[s].push_back(static_cast<int>(universe.size() - 1));
    };

    for (std::size_t i = 0; i < ctx.size(); ++i) {
        Term v = Term::var(static_cast<int>(ctx.size() - 1 - i));
        std::optional<SortExpr> s = infer_sort(sig, ctx, v);
        if (s) add(v, *s, 0);
    }

    for (int d = 1; d <= depth; ++d) {
        std::size_t before = universe.size();
        for (const OpDecl* op : sig.ops()) {
            std::vector<Arg> prefix;
            std::function<void(std::size_t, int)> rec = [&](std::size_t i, int maxn) {
                if (i == op->telescope.size()) {
                    if (!op->telescope.empty() && maxn != d - 1) return;
                    std::vector<Arg> args = prefix;
                    Term t = Term::app(op->name, args);
                    SortExpr s = subst_sort(op->result, args);
                    add(t, s, d);
                    return;
                }
                SortExpr expected = subst_sort(op->telescope[i].sort, prefix);
                auto it = by_sort.find(expected);
                if (it == by_sort.end()) return;
                std::vector<int> cands = it->second; // snapshot
                for (int c : cands) {
                    if (nesting[static_cast<std::size_t>(c)] > d - 1) continue;
                    prefix.emplace_back(universe[static_cast<std::size_t>(c)]);
                    rec(i + 1, std::max(maxn, nesting[static_cast<std::size_t>(c)]));
                    prefix.pop_back();
                }
            };
            rec(0, 0);
        }
        if (universe.size() == before) break;
    }

    std::vector<Term> out;
    for (std::size_t i = 0; i < universe.size(); ++i)
        if (sorts[i] == sort) out.push_back(universe[i]);
    return out;
}

// ---------------------------------------------------------------------------
// Closure
// ---------------------------------------------------------------------------

struct TermModel::Closure {
    const Signature& sig;
    const Context& gens;
    Budget budget;

    std::vector<Term> terms;
    std::unordered_map<Term, int, TermHash> index;
    std::vector<SortExpr> sorts;
    std::vector<int> parent;
    bool truncated = false;
    std::shared_ptr<Derivation> log = std::make_shared<Derivation>();

    Closure(const Signature& s, const Context& g, Budget b) : sig(s), gens(g), budget(b) {}

    int find(int i) {
        while (parent[static_cast<std::size_t>(i)] != i) {
            parent[static_cast<std::size_t>(i)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
            i = parent[static_cast<std::size_t>(i)];
        }
        return i;
    }

    void unite(int a, int b, DerivationStep step) {
        int ra = find(a), rb = find(b);
        if (ra == rb) return;
        if (ra > rb) std::swap(ra, rb);
        parent[static_cast<std::size_t>(rb)] = ra;
        log->steps.push_back(std::move(step));
    }

    // Adds a term, its subterms, and its sort's argument terms.
    int add(const Term& t) {
        auto it = index.find(t);
        if (it != index.end()) return it->second;
        if (static_cast<int>(terms.size()) >= budget.max_nodes) {
            truncated = true;
            return -1;
        }
        std::optional<SortExpr> s = infer_sort(sig, gens, t);
        if (!s) return -1;
        for (const auto& a : s->args)
            if (add(a) < 0) return -1;
        for (const auto& a : t.args) {
            if (!a.binder.empty()) continue;
            if (add(a.body) < 0) return -1;
        }
        it = index.find(t);
        if (it != index.end()) return it->second;
        if (static_cast<int>(terms.size()) >= budget.max_nodes) {
            truncated = true;
            return -1;
        }
        int id = static_cast<int>(terms.size());
        terms.push_back(t);
        sorts.push_back(*s);
        parent.push_back(id);
        index[t] = id;
        return id;
    }

    std::optional<SortKey> key_of_sort(const SortExpr& s) {
        SortKey k;
        k.head = s.head;
        for (const auto& a : s.args) {
            auto it = index.find(a);
            int id = it != index.end() ? it->second : add(a);
            if (id < 0) return std::nullopt;
            k.arg_classes.push_back(find(id));
        }
        return k;
    }

    void grow() {
        for (std::size_t i = 0; i < gens.size(); ++i)
            add(Term::var(static_cast<int>(gens.size() - 1 - i)));
        for (int d = 1; d <= budget.depth && !truncated; ++d) {
            std::map<SortExpr, std::vector<int>> by_sort;
            for (std::size_t i = 0; i < terms.size(); ++i)
                by_sort[sorts[i]].push_back(static_cast<int>(i));
            std::size_t before = terms.size();
            for (const OpDecl* op : sig.ops()) {
                std::vector<Arg> prefix;
                std::function<void(std::size_t, int)> rec = [&](std::size_t i, int maxn) {
                    if (truncated) return;
                    if (i == op->telescope.size()) {
                        if (!op->telescope.empty() && maxn != d - 1) return;
                        Term t = Term::app(op->name, prefix);
                        add(t);
                        return;
                    }
                    SortExpr expected = subst_sort(op->telescope[i].sort, prefix);
                    auto it = by_sort.find(expected);
                    if (it == by_sort.end()) return;
                    for (int c : it->second) {
                        int n = app_nesting(terms[static_cast<std::size_t>(c)]);
                        if (n > d - 1) continue;
                        prefix.emplace_back(terms[static_cast<std::size_t>(c)]);
                        rec(i + 1, std::max(maxn, n));
                        prefix.pop_back();
                    }
                };
                rec(0, 0);
            }
            if (terms.size() == before) break;
        }
    }

    void close() {
        bool changed = true;
        int guard = 0;
        while (changed && guard++ < 100000) {
            changed = false;
            if (congruence_pass()) changed = true;
            if (equation_pass()) changed = true;
        }
    }

    bool congruence_pass() {
        bool changed = false;
        bool local = true;
        while (local) {
            local = false;
            std::map<std::pair<std::string, std::vector<int>>, int> buckets;
            for (std::size_t i = 0; i < terms.size(); ++i) {
                const Term& t = terms[i];
                if (t.kind != Term::Kind::App) continue;
                bool simple = true;
                std::vector<int> arg_classes;
                for (const auto& a : t.args) {
                    if (!a.binder.empty()) {
                        simple = false;
                        break;
                    }
                    auto it = index.find(a.body);
                    if (it == index.end()) {
                        simple = false;
                        break;
                    }
                    arg_classes.push_back(find(it->second));
                }
                if (!simple) continue;
                auto key = std::make_pair(t.op, std::move(arg_classes));
                auto [it, inserted] = buckets.try_emplace(key, static_cast<int>(i));
                if (!inserted) {
                    int j = it->second;
                    if (find(static_cast<int>(i)) != find(j)) {
                        DerivationStep step;
                        step.kind = DerivationStep::Kind::Congruence;
                        step.lhs = terms[static_cast<std::size_t>(j)];
                        step.rhs = terms[i];
                        unite(j, static_cast<int>(i), std::move(step));
                        local = true;
                        changed = true;
                    }
                }
            }
        }
        return changed;
    }

    bool same_class_terms(const Term& a, const Term& b) {
        if (a == b) return true;
        auto ia = index.find(a);
        auto ib = index.find(b);
        if (ia == index.end() || ib == index.end()) return false;
        return find(ia->second) == find(ib->second);
    }

    bool match(const Term& pat, const Term& cand, int depth, std::vector<std::optional<Arg>>& sub) {
        if (pat.kind == Term::Kind::Var) {
            if (pat.index < depth) {
                return cand.kind == Term::Kind::Var && cand.index == pat.index && cand.args.empty() &&
                       pat.args.empty();
            }
            int v = pat.index - depth;
            if (v >= static_cast<int>(sub.size())) return false;
            std::size_t pos = sub.size() - 1 - static_cast<std::size_t>(v);
            if (!pat.args.empty()) return false;
            if (has_free_below(cand, depth)) return false;
            Term lowered = shift_term(cand, -depth, depth);
            if (sub[pos]) return sub[pos]->binder.empty() && sub[pos]->body == lowered;
            sub[pos] = Arg(lowered);
            return true;
        }
        if (cand.kind != Term::Kind::App || cand.op != pat.op || cand.args.size() != pat.args.size())
            return false;
        for (std::size_t i = 0; i < pat.args.size(); ++i) {
            if (pat.args[i].binder.size() != cand.args[i].binder.size()) return false;
            int d2 = depth + static_cast<int>(pat.args[i].binder.size());
            if (!match(pat.args[i].body, cand.args[i].body, d2, sub)) return false;
        }
        return true;
    }

    static bool has_free_below(const Term& t, int depth) {
        if (t.kind == Term::Kind::Var && t.index < depth) return true;
        for (const auto& a : t.args)
            if (has_free_below(a.body, depth + static_cast<int>(a.binder.size()))) return true;
        return false;
    }

    bool sort_matches(const SortExpr& got, const SortExpr& expected) {
        if (got.head != expected.head || got.args.size() != expected.args.size()) return false;
        for (std::size_t i = 0; i < got.args.size(); ++i)
            if (!same_class_terms(got.args[i], expected.args[i])) return false;
        return true;
    }

    bool instantiation_well_sorted(const EqDecl& eq, const std::vector<Arg>& subs) {
        std::vector<Arg> prefix;
        for (std::size_t j = 0; j < subs.size(); ++j) {
            const Binding& bnd = eq.telescope[j];
            if (!bnd.binder.empty()) return false; // first-order models only
            SortExpr expected = subst_sort(bnd.sort, prefix);
            auto it = index.find(subs[j].body);
            std::optional<SortExpr> got;
            if (it != index.end())
                got = sorts[static_cast<std::size_t>(it->second)];
            else
                got = infer_sort(sig, gens, subs[j].body);
            if (!got || !sort_matches(*got, expected)) return false;
            prefix.push_back(subs[j]);
        }
        return true;
    }

    bool apply_equation_instance(const EqDecl& eq, const std::vector<Arg>& subs) {
        if (!instantiation_well_sorted(eq, subs)) return false;
        Term l = subst_term(eq.lhs, subs);
        Term r = subst_term(eq.rhs, subs);
        auto il = index.find(l);
        auto ir = index.find(r);
        if (il == index.end() || ir == index.end()) return false;
        if (find(il->second) == find(ir->second)) return false;
        DerivationStep step;
        step.kind = DerivationStep::Kind::Equation;
        step.equation = eq.name;
        step.instantiation = subs;
        step.lhs = l;
        step.rhs = r;
        unite(il->second, ir->second, std::move(step));
        return true;
    }

    bool enumerate_unbound(const EqDecl& eq, std::vector<std::optional<Arg>>& sub, std::size_t i,
                           const std::map<SortKey, std::vector<int>>& by_key) {
        if (i == sub.size()) {
            std::vector<Arg> subs;
            subs.reserve(sub.size());
            for (auto& s : sub) subs.push_back(*s);
            return apply_equation_instance(eq, subs);
        }
        if (sub[i]) return enumerate_unbound(eq, sub, i + 1, by_key);
        const Binding& bnd = eq.telescope[i];
        if (!bnd.binder.empty()) return false;
        std::vector<Arg> prefix;
        for (std::size_t j = 0; j < i; ++j) {
            if (!sub[j]) return false;
            prefix.push_back(*sub[j]);
        }
        SortExpr expected = subst_sort(bnd.sort, prefix);
        std::optional<SortKey> key = key_of_sort(expected);
        if (!key) return false;
        auto it = by_key.find(*key);
        if (it == by_key.end()) return false;
        bool changed = false;
        std::vector<int> cands = it->second; // snapshot
        for (int c : cands) {
            sub[i] = Arg(terms[static_cast<std::size_t>(c)]);
            if (enumerate_unbound(eq, sub, i + 1, by_key)) changed = true;
        }
        sub[i] = std::nullopt;
        return changed;
    }

    bool equation_pass() {
        bool changed = false;
        std::map<SortKey, std::vector<int>> by_key;
        for (std::size_t i = 0; i < terms.size(); ++i) {
            std::optional<SortKey> k = key_of_sort(sorts[i]);
            if (k) by_key[*k].push_back(static_cast<int>(i));
        }
        for (const EqDecl* eq : sig.eqs()) {
            bool has_binder = false;
            for (const auto& b : eq->telescope)
                if (!b.binder.empty()) has_binder = true;
            if (has_binder) continue;
            for (int side = 0; side < 2; ++side) {
                const Term& pat = side == 0 ? eq->lhs : eq->rhs;
                std::size_t usize = terms.size();
                for (std::size_t u = 0; u < usize; ++u) {
                    std::vector<std::optional<Arg>> sub(eq->telescope.size());
                    if (!match(pat, terms[u], 0, sub)) continue;
                    if (enumerate_unbound(*eq, sub, 0, by_key)) changed = true;
                }
            }
        }
        return changed;
    }

    EqVerdict verdict(const Term& a, const Term& b) {
        auto ia = index.find(a);
        auto ib = index.find(b);
        if (ia == index.end() || ib == index.end()) return EqVerdict::Unknown;
        if (find(ia->second) == find(ib->second)) return EqVerdict::Equal;
        return truncated ? EqVerdict::Unknown : EqVerdict::DistinctWithinBudget;
    }
};

// ---------------------------------------------------------------------------
// TermModel
// ---------------------------------------------------------------------------

TermModel::TermModel(Signature sig, Context generators)
    : sig_(std::move(sig)), gens_(std::move(generators)) {
    if (sig_.is_second_order())
        throw UnsupportedSignatureError("term models require a first-order signature");
    TypeError err;
    if (!check_telescope(sig_, {}, gens_, &err))
        throw PreconditionError("ill-formed generator context: " + err.message);
}

TermModel::Closure& TermModel::closure_for(const Budget& budget, const std::vector<Term>& seeds) {
    auto it = closures_.find(budget);
    if (it == closures_.end()) {
        auto c = std::make_shared<Closure>(sig_, gens_, budget);
        c->grow();
        c->close();
        it = closures_.emplace(budget, std::move(c)).first;
    }
    Closure& c = *it->second;
    bool added = false;
    for (const Term& s : seeds)
        if (!c.index.count(s) && c.add(s) >= 0) added = true;
    if (added) c.close();
    return c;
}

EqResult TermModel::decide_equal(const Term& a, const Term& b, const Budget& budget) {
    TypeError err;
    std::optional<SortExpr> sa = infer_sort(sig_, gens_, a, &err);
    if (!sa) throw PreconditionError("decide_equal: left term ill-sorted: " + err.message);
    std::optional<SortExpr> sb = infer_sort(sig_, gens_, b, &err);
    if (!sb) throw PreconditionError("decide_equal: right term ill-sorted: " + err.message);

    Closure& c = closure_for(budget, {a, b});
    if (!c.sort_matches(*sa, *sb))
        throw PreconditionError("decide_equal: terms do not share a sort instance");

    EqResult r;
    r.verdict = c.verdict(a, b);
    if (r.verdict == EqVerdict::Equal) r.derivation = c.log;
    return r;
}

std::vector<Term> TermModel::class_representatives(const SortExpr& sort, const Budget& budget) {
    Closure& c = closure_for(budget, {});
    std::optional<SortKey> want = c.key_of_sort(sort);
    if (!want) return {};
    std::map<int, Term> reps;
    for (std::size_t i = 0; i < c.terms.size(); ++i) {
        std::optional<SortKey> k = c.key_of_sort(c.sorts[i]);
        if (!k || !(*k == *want)) continue;
        int root = c.find(static_cast<int>(i));
        auto it = reps.find(root);
        if (it == reps.end() || term_less(c.terms[i], it->second)) reps[root] = c.terms[i];
    }
    std::vector<Term> out;
    out.reserve(reps.size());
    for (auto& [root, t] : reps) out.push_back(t);
    std::sort(out.begin(), out.end(), term_less);
    return out;
}

Term TermModel::representative(const Term& t, const Budget& budget) {
    Closure& c = closure_for(budget, {t});
    auto it = c.index.find(t);
    if (it == c.index.end()) return t;
    int root = c.find(it->second);
    Term best = t;
    for (std::size_t i = 0; i < c.terms.size(); ++i)
        if (c.find(static_cast<int>(i)) == root && term_less(c.terms[i], best)) best = c.terms[i];
    return best;
}

TermModel free_model(const Signature& sig, const Context& generators) {
    return TermModel(sig, generators);
}

// ---------------------------------------------------------------------------
// Derivation replay (independent checker)
// ---------------------------------------------------------------------------

namespace {

struct ReplayState {
    std::map<Term, int> cls;
    std::vector<int> parent;

    int id(const Term& t) {
        auto it = cls.find(t);
        if (it != cls.end()) return it->second;
        int i = static_cast<int>(parent.size());
        parent.push_back(i);
        cls.emplace(t, i);
        return i;
    }
    int find(int i) {
        while (parent[static_cast<std::size_t>(i)] != i) i = parent[static_cast<std::size_t>(i)];
        return i;
    }
    void unite(const Term& a, const Term& b) {
        int ra = find(id(a)), rb = find(id(b));
        if (ra != rb) parent[static_cast<std::size_t>(rb)] = ra;
    }
    bool same(const Term& a, const Term& b) {
        if (a == b) return true;
        auto ia = cls.find(a);
        auto ib = cls.find(b);
        if (ia == cls.end() || ib == cls.end()) return false;
        return find(ia->second) == find(ib->second);
    }
};

} // namespace

bool replay_derivation(const Signature& sig, const Context& gens, const Term& a, const Term& b,
                       const Derivation& d, std::string* error) {
    ReplayState st;
    auto fail = [&](const std::string& msg) {
        if (error) *error = msg;
        return false;
    };
    for (std::size_t si = 0; si < d.steps.size(); ++si) {
        const DerivationStep& step = d.steps[si];
        if (step.kind == DerivationStep::Kind::Equation) {
            const EqDecl* eq = sig.find_eq(step.equation);
            if (!eq)
                return fail("step " + std::to_string(si) + ": unknown equation " + step.equation);
            if (step.instantiation.size() != eq->telescope.size())
                return fail("step " + std::to_string(si) + ": wrong instantiation arity");
            std::vector<Arg> prefix;
            for (std::size_t j = 0; j < step.instantiation.size(); ++j) {
                const Arg& arg = step.instantiation[j];
                if (!arg.binder.empty())
                    return fail("step " + std::to_string(si) + ": binder instantiation unsupported");
                SortExpr expected = subst_sort(eq->telescope[j].sort, prefix);
                std::optional<SortExpr> got = infer_sort(sig, gens, arg.body);
                if (!got)
                    return fail("step " + std::to_string(si) + ": instantiation term ill-sorted");
                if (got->head != expected.head || got->args.size() != expected.args.size())
                    return fail("step " + std::to_string(si) + ": instantiation sort mismatch");
                for (std::size_t k = 0; k < got->args.size(); ++k)
                    if (!st.same(got->args[k], expected.args[k]))
                        return fail("step " + std::to_string(si) +
                                    ": instantiation boundary not related");
                prefix.push_back(arg);
            }
            Term l = subst_term(eq->lhs, step.instantiation);
            Term r = subst_term(eq->rhs, step.instantiation);
            if (!(l == step.lhs) || !(r == step.rhs))
                return fail("step " + std::to_string(si) + ": endpoints do not instantiate " +
                            step.equation);
            st.unite(l, r);
        } else {
            const Term& l = step.lhs;
            const Term& r = step.rhs;
            if (l.kind != Term::Kind::App || r.kind != Term::Kind::App || l.op != r.op ||
                l.args.size() != r.args.size())
                return fail("step " + std::to_string(si) + ": malformed congruence step");
            for (std::size_t k = 0; k < l.args.size(); ++k) {
                if (!l.args[k].binder.empty() || !r.args[k].binder.empty())
                    return fail("step " + std::to_string(si) + ": binder congruence unsupported");
                if (!st.same(l.args[k].body, r.args[k].body))
                    return fail("step " + std::to_string(si) + ": congruence premises not related");
            }
            st.unite(l, r);
        }
    }
    if (!st.same(a, b)) return fail("derivation does not relate the queried terms");
    return true;
}

// ---------------------------------------------------------------------------
// Normalizers
// ---------------------------------------------------------------------------

// Right-associates tens and erases unit factors in object terms; accelerator
// for strictified monoidal theories. Morphism-level operations only get
// their object arguments normalized.
static void flatten_tens(const Signature& sig, const Term& t, std::vector<Term>& atoms) {
    if (t.kind == Term::Kind::App && t.op == "tens") {
        flatten_tens(sig, t.args[0].body, atoms);
        flatten_tens(sig, t.args[1].body, atoms);
        return;
    }
    if (t.kind == Term::Kind::App && t.op == "I") return;
    atoms.push_back(strmoncat_object_normalizer(sig, t));
}

Term strmoncat_object_normalizer(const Signature& sig, const Term& t) {
    if (t.kind != Term::Kind::App) return t;
    if (t.op == "tens" || t.op == "I") {
        std::vector<Term> atoms;
        flatten_tens(sig, t, atoms);
        if (atoms.empty()) return Term::app("I", std::vector<Term>{});
        Term r = atoms.back();
        for (std::size_t i = atoms.size() - 1; i-- > 0;)
            r = Term::app("tens", std::vector<Term>{atoms[i], r});
        return r;
    }
    Term r = t;
    for (std::size_t i = 0; i < r.args.size(); ++i)
        if (r.args[i].binder.empty())
            r.args[i].body = strmoncat_object_normalizer(sig, t.args[i].body);
    return r;
}

} // namespace gatwb
