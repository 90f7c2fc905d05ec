#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <map>
#include <random>
#include <set>

#include "gatwb/engine.hpp"
#include "gatwb/errors.hpp"

using namespace gatwb;

// ---------------------------------------------------------------------------
// Independent oracle: naive fixpoint of equation instances + congruence over
// the same fixed ground universe. No union-find, no matching: plain partition
// refinement by repeated scanning.
// ---------------------------------------------------------------------------

namespace {

struct OraclePartition {
    std::vector<Term> universe;
    std::vector<int> cls; // class id per term

    int index_of(const Term& t) const {
        for (std::size_t i = 0; i < universe.size(); ++i)
            if (universe[i] == t) return static_cast<int>(i);
        return -1;
    }
    bool same(const Term& a, const Term& b) const {
        int ia = index_of(a), ib = index_of(b);
        if (ia < 0 || ib < 0) return a == b;
        return cls[static_cast<std::size_t>(ia)] == cls[static_cast<std::size_t>(ib)];
    }
    bool merge(int a, int b) {
        int ca = cls[static_cast<std::size_t>(a)], cb = cls[static_cast<std::size_t>(b)];
        if (ca == cb) return false;
        for (auto& c : cls)
            if (c == cb) c = ca;
        return true;
    }
};

// All well-typed terms over gens with app-nesting <= depth (all sorts).
std::vector<Term> oracle_universe(const Signature& sig, const Context& gens, int depth) {
    std::vector<Term> out;
    auto add = [&](const Term& t) {
        for (const auto& u : out)
            if (u == t) return;
        out.push_back(t);
    };
    for (std::size_t i = 0; i < gens.size(); ++i) {
        Term v = Term::var(static_cast<int>(gens.size() - 1 - i));
        if (infer_sort(sig, gens, v)) add(v);
    }
    for (int d = 1; d <= depth; ++d) {
        std::vector<Term> snapshot = out;
        for (const OpDecl* op : sig.ops()) {
            std::vector<Arg> prefix;
            std::function<void(std::size_t)> rec = [&](std::size_t i) {
                if (i == op->telescope.size()) {
                    Term t = Term::app(op->name, prefix);
                    if (app_nesting(t) <= depth && infer_sort(sig, gens, t)) add(t);
                    return;
                }
                SortExpr expected = subst_sort(op->telescope[i].sort, prefix);
                for (const auto& cand : snapshot) {
                    auto s = infer_sort(sig, gens, cand);
                    if (!s || !(*s == expected)) continue;
                    prefix.emplace_back(cand);
                    rec(i + 1);
                    prefix.pop_back();
                }
            };
            rec(0);
        }
    }
    return out;
}

OraclePartition oracle_closure(const Signature& sig, const Context& gens,
                               const std::vector<Term>& universe) {
    OraclePartition p;
    p.universe = universe;
    p.cls.resize(universe.size());
    for (std::size_t i = 0; i < universe.size(); ++i) p.cls[i] = static_cast<int>(i);

    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < universe.size(); ++i) {
            for (std::size_t j = i + 1; j < universe.size(); ++j) {
                const Term& a = universe[i];
                const Term& b = universe[j];
                if (a.kind != Term::Kind::App || b.kind != Term::Kind::App) continue;
                if (a.op != b.op || a.args.size() != b.args.size()) continue;
                bool all = true;
                for (std::size_t k = 0; k < a.args.size() && all; ++k)
                    all = p.same(a.args[k].body, b.args[k].body);
                if (all && p.merge(static_cast<int>(i), static_cast<int>(j))) changed = true;
            }
        }
        for (const EqDecl* eq : sig.eqs()) {
            std::vector<Arg> subs;
            std::function<void(std::size_t)> rec = [&](std::size_t i) {
                if (i == eq->telescope.size()) {
                    Term l = subst_term(eq->lhs, subs);
                    Term r = subst_term(eq->rhs, subs);
                    int il = p.index_of(l), ir = p.index_of(r);
                    if (il < 0 || ir < 0) return;
                    if (p.merge(il, ir)) changed = true;
                    return;
                }
                SortExpr expected = subst_sort(eq->telescope[i].sort, subs);
                for (const auto& cand : universe) {
                    auto s = infer_sort(sig, gens, cand);
                    if (!s) continue;
                    if (s->head != expected.head || s->args.size() != expected.args.size()) continue;
                    bool ok = true;
                    for (std::size_t k = 0; k < s->args.size() && ok; ++k)
                        ok = p.same(s->args[k], expected.args[k]);
                    if (!ok) continue;
                    subs.emplace_back(cand);
                    rec(i + 1);
                    subs.pop_back();
                }
            };
            rec(0);
        }
    }
    return p;
}

Context cat_gens_ab_f() {
    Context gens;
    gens.emplace_back("a", SortExpr("Ob"));
    gens.emplace_back("b", SortExpr("Ob"));
    gens.emplace_back("f", SortExpr("Hom", {Term::var(1), Term::var(0)}));
    return gens;
}

} // namespace

TEST_CASE("enumerate_terms on Cat") {
    Signature cat = *builtin_signature("Cat");
    Context ctx;
    ctx.emplace_back("x", SortExpr("Ob"));
    SortExpr homxx("Hom", {Term::var(0), Term::var(0)});

    std::vector<Term> d1 = enumerate_terms(cat, ctx, homxx, 1);
    REQUIRE(d1.size() == 1);
    CHECK(d1[0] == Term::app("iid", std::vector<Term>{Term::var(0)}));

    std::vector<Term> d2 = enumerate_terms(cat, ctx, homxx, 2);
    REQUIRE(d2.size() == 2);
    Term iid = Term::app("iid", std::vector<Term>{Term::var(0)});
    Term comp2 = Term::app("comp", std::vector<Term>{Term::var(0), Term::var(0), Term::var(0), iid, iid});
    CHECK(d2[0] == iid);
    CHECK(d2[1] == comp2);

    std::vector<Term> d3 = enumerate_terms(cat, ctx, homxx, 3);
    for (const auto& t : d2) {
        bool found = false;
        for (const auto& u : d3) found = found || u == t;
        CHECK(found);
    }
}

TEST_CASE("enumerate_terms on MonCat objects") {
    Signature mon = *builtin_signature("MonCat");
    Context ctx;
    ctx.emplace_back("a", SortExpr("Ob"));
    ctx.emplace_back("b", SortExpr("Ob"));
    std::vector<Term> d2 = enumerate_terms(mon, ctx, SortExpr("Ob"), 2);
    auto has = [&](const Term& t) {
        for (const auto& u : d2)
            if (u == t) return true;
        return false;
    };
    Term a = Term::var(1), b = Term::var(0), I = Term::app("I", std::vector<Term>{});
    CHECK(has(a));
    CHECK(has(b));
    CHECK(has(I));
    for (const Term& l : {a, b})
        for (const Term& r : {a, b}) CHECK(has(Term::app("tens", std::vector<Term>{l, r})));
    CHECK(has(Term::app("tens", std::vector<Term>{a, I})));
    CHECK(has(Term::app("tens", std::vector<Term>{I, I})));
    // agrees with the exhaustive oracle
    std::vector<Term> oracle = oracle_universe(mon, ctx, 2);
    std::size_t obs = 0;
    for (const auto& t : oracle) {
        auto s = infer_sort(mon, ctx, t);
        if (s && s->head == "Ob") {
            ++obs;
            CHECK(has(t));
        }
    }
    CHECK(d2.size() == obs);

    CHECK_THROWS_AS(enumerate_terms(mon, ctx, SortExpr("Ob"), 4, 50), BudgetError);
    CHECK_THROWS_AS(enumerate_terms(*builtin_signature("Id"), {}, SortExpr("Ty"), 1),
                    UnsupportedSignatureError);
}

TEST_CASE("decide_equal basic verdicts in free Cat") {
    Signature cat = *builtin_signature("Cat");
    TermModel m = free_model(cat, cat_gens_ab_f());
    Budget budget{3, 4000};

    Term f = Term::var(0);
    Term a = Term::var(2);
    Term iid_a = Term::app("iid", std::vector<Term>{a});
    Term padded = Term::app("comp", std::vector<Term>{a, a, Term::var(1), iid_a, f});

    EqResult r = m.decide_equal(padded, f, budget);
    CHECK(r.verdict == EqVerdict::Equal);
    REQUIRE(r.derivation != nullptr);
    std::string err;
    CHECK_MESSAGE(replay_derivation(cat, m.generators(), padded, f, *r.derivation, &err), err);
}

TEST_CASE("parallel generators stay distinct") {
    Signature cat = *builtin_signature("Cat");
    Context gens;
    gens.emplace_back("a", SortExpr("Ob"));
    gens.emplace_back("b", SortExpr("Ob"));
    gens.emplace_back("f", SortExpr("Hom", {Term::var(1), Term::var(0)}));
    gens.emplace_back("g", SortExpr("Hom", {Term::var(2), Term::var(1)}));
    TermModel m = free_model(cat, gens);
    EqResult r = m.decide_equal(Term::var(1), Term::var(0), Budget{2, 2000});
    CHECK(r.verdict == EqVerdict::DistinctWithinBudget);
}

TEST_CASE("ill-sorted pair is refused") {
    Signature cat = *builtin_signature("Cat");
    TermModel m = free_model(cat, cat_gens_ab_f());
    CHECK_THROWS_AS(m.decide_equal(Term::var(2), Term::var(0), Budget{2, 2000}),
                    PreconditionError);
}

TEST_CASE("free_model requires first order") {
    CHECK_THROWS_AS(free_model(*builtin_signature("Id"), {}), UnsupportedSignatureError);
}

TEST_CASE("StrMonCat canonical objects merge") {
    Signature str = *builtin_signature("StrMonCat");
    Context gens;
    gens.emplace_back("a", SortExpr("Ob"));
    gens.emplace_back("b", SortExpr("Ob"));
    gens.emplace_back("c", SortExpr("Ob"));
    gens.emplace_back("d", SortExpr("Ob"));
    TermModel m = free_model(str, gens);
    Term a = Term::var(3), b = Term::var(2), c = Term::var(1), d = Term::var(0);
    auto tens = [](const Term& l, const Term& r) {
        return Term::app("tens", std::vector<Term>{l, r});
    };
    Term left = tens(tens(tens(a, b), c), d);
    Term right = tens(a, tens(b, tens(c, d)));
    EqResult r = m.decide_equal(left, right, Budget{3, 6000});
    CHECK(r.verdict == EqVerdict::Equal);
    REQUIRE(r.derivation);
    std::string err;
    CHECK_MESSAGE(replay_derivation(str, gens, left, right, *r.derivation, &err), err);
    CHECK(strmoncat_object_normalizer(str, left) == strmoncat_object_normalizer(str, right));
}

TEST_CASE("free MonCat objects do not merge") {
    Signature mon = *builtin_signature("MonCat");
    Context gens;
    gens.emplace_back("a", SortExpr("Ob"));
    TermModel m = free_model(mon, gens);
    Term a = Term::var(0);
    auto tens = [](const Term& l, const Term& r) {
        return Term::app("tens", std::vector<Term>{l, r});
    };
    EqResult r = m.decide_equal(tens(a, tens(a, a)), tens(tens(a, a), a), Budget{2, 4000});
    CHECK(r.verdict == EqVerdict::DistinctWithinBudget);
}

TEST_CASE("oracle equivalence on free Cat universes") {
    Signature cat = *builtin_signature("Cat");
    Context gens = cat_gens_ab_f();
    int depth = 2;
    std::vector<Term> universe = oracle_universe(cat, gens, depth);
    REQUIRE(universe.size() > 4);
    OraclePartition oracle = oracle_closure(cat, gens, universe);

    TermModel m = free_model(cat, gens);
    Budget budget{depth, 4000};
    int pairs = 0;
    for (std::size_t i = 0; i < universe.size(); ++i) {
        for (std::size_t j = i + 1; j < universe.size(); ++j) {
            auto si = infer_sort(cat, gens, universe[i]);
            auto sj = infer_sort(cat, gens, universe[j]);
            if (!si || !sj || !(*si == *sj)) continue;
            ++pairs;
            EqResult r = m.decide_equal(universe[i], universe[j], budget);
            bool oracle_equal = oracle.same(universe[i], universe[j]);
            CAPTURE(term_to_string(universe[i], context_names(gens)));
            CAPTURE(term_to_string(universe[j], context_names(gens)));
            CHECK(r.verdict == (oracle_equal ? EqVerdict::Equal : EqVerdict::DistinctWithinBudget));
        }
    }
    CHECK(pairs > 20);
}

TEST_CASE("equal verdict reachable at larger budgets too") {
    Signature cat = *builtin_signature("Cat");
    Context gens = cat_gens_ab_f();
    TermModel m1 = free_model(cat, gens);
    TermModel m2 = free_model(cat, gens);
    Term f = Term::var(0);
    Term padded = Term::app(
        "comp", std::vector<Term>{Term::var(2), Term::var(2), Term::var(1),
                                  Term::app("iid", std::vector<Term>{Term::var(2)}), f});
    EqResult small = m1.decide_equal(padded, f, Budget{2, 3000});
    EqResult big = m2.decide_equal(padded, f, Budget{3, 6000});
    CHECK(small.verdict == EqVerdict::Equal);
    CHECK(big.verdict == EqVerdict::Equal);
}

TEST_CASE("class representatives for MonCat objects") {
    Signature mon = *builtin_signature("MonCat");
    Context gens;
    gens.emplace_back("a", SortExpr("Ob"));
    TermModel m = free_model(mon, gens);
    std::vector<Term> reps = m.class_representatives(SortExpr("Ob"), Budget{2, 4000});
    std::vector<Term> enumd = enumerate_terms(mon, gens, SortExpr("Ob"), 2);
    CHECK(reps.size() == enumd.size());
}
