#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gatwb/signature.hpp"

using namespace gatwb;

TEST_CASE("shift and unshift are inverse") {
    Term t = Term::app("comp", std::vector<Term>{Term::var(0), Term::var(2),
                                                 Term::app("iid", std::vector<Term>{Term::var(1)})});
    Term up = shift_term(t, 3, 1);
    Term down = shift_term(up, -3, 1);
    CHECK(down == t);
}

TEST_CASE("ordering is consistent on samples") {
    std::vector<Term> ts = {
        Term::var(0),
        Term::var(1),
        Term::app("iid", std::vector<Term>{Term::var(0)}),
        Term::app("comp", std::vector<Term>{Term::var(0), Term::var(1)}),
        Term::app("comp", std::vector<Term>{Term::var(1), Term::var(0)}),
    };
    for (const auto& a : ts) {
        CHECK(compare(a, a) == 0);
        for (const auto& b : ts) {
            CHECK(compare(a, b) == -compare(b, a));
            if (compare(a, b) == 0) CHECK(a == b);
        }
    }
}

TEST_CASE("app_nesting and node_count") {
    Term v = Term::var(0);
    CHECK(app_nesting(v) == 0);
    CHECK(node_count(v) == 1);
    Term i = Term::app("I", std::vector<Term>{});
    CHECK(app_nesting(i) == 1);
    Term ii = Term::app("tens", std::vector<Term>{i, i});
    CHECK(app_nesting(ii) == 2);
    CHECK(node_count(ii) == 3);
    Term vv = Term::app("tens", std::vector<Term>{v, v});
    CHECK(app_nesting(vv) == 1);
}

static Term random_hom_term(std::mt19937& rng, int depth) {
    // over ctx = (x, y : Ob, f : Hom(x,y), g : Hom(y,y))
    if (depth == 0 || rng() % 3 == 0) {
        return rng() % 2 ? Term::var(1) : Term::var(0);
    }
    switch (rng() % 3) {
        case 0:
            return Term::app("iid", std::vector<Term>{Term::var(2)});
        case 1: {
            Term g = random_hom_term(rng, depth - 1);
            return Term::app("comp", std::vector<Term>{Term::var(2), Term::var(2), Term::var(2),
                                                       g, random_hom_term(rng, depth - 1)});
        }
        default:
            return Term::var(0);
    }
}

TEST_CASE("substitution lemma, property style") {
    Signature cat = *builtin_signature("Cat");
    Context tgt;
    tgt.emplace_back("x", SortExpr("Ob"));
    tgt.emplace_back("y", SortExpr("Ob"));
    tgt.emplace_back("f", SortExpr("Hom", {Term::var(1), Term::var(0)}));
    tgt.emplace_back("g", SortExpr("Hom", {Term::var(1), Term::var(1)}));
    Context src;
    src.emplace_back("a", SortExpr("Ob"));
    std::vector<Arg> subs;
    subs.emplace_back(Term::var(0));
    subs.emplace_back(Term::var(0));
    subs.emplace_back(Term::app("iid", std::vector<Term>{Term::var(0)}));
    subs.emplace_back(Term::app("iid", std::vector<Term>{Term::var(0)}));

    std::mt19937 rng(12345);
    int checked = 0;
    for (int i = 0; i < 200; ++i) {
        Term t = random_hom_term(rng, 3);
        TypeError err;
        auto s = infer_sort(cat, tgt, t, &err);
        if (!s) continue; // only well-typed samples participate
        ++checked;
        Term t2 = subst_term(t, subs);
        auto s2 = infer_sort(cat, src, t2);
        REQUIRE(s2.has_value());
        CHECK(*s2 == subst_sort(*s, subs));
    }
    CHECK(checked > 50);
}

TEST_CASE("capture-free substitution under binders") {
    // binder [y : Tm(A), p : Tm(Id(A,x,y))], body Id(A, x, y) over (A, x)
    Telescope binder;
    binder.emplace_back("y", SortExpr("Tm", {Term::var(1)}));
    binder.emplace_back(
        "p", SortExpr("Tm", {Term::app("Id", std::vector<Term>{Term::var(2), Term::var(1),
                                                               Term::var(0)})}));
    Term body = Term::app("Id", std::vector<Term>{Term::var(3), Term::var(2), Term::var(1)});

    // substitute (A := Var(1), x := Var(0)) into the wrapped binder
    std::vector<Arg> subs;
    subs.emplace_back(Term::var(1));
    subs.emplace_back(Term::var(0));
    Term sub_body = subst_term(Term::app("probe", {Arg(binder, body)}), subs);
    REQUIRE(sub_body.args.size() == 1);
    const Term& b2 = sub_body.args[0].body;
    // bound variables still point at the binder; free ones were remapped
    CHECK(b2 == Term::app("Id", std::vector<Term>{Term::var(3), Term::var(2), Term::var(1)}));
}

TEST_CASE("meta-application beta-reduces on substitution") {
    // P := [y, p] iid(y); substituting P into P(a, b) yields iid(a).
    Telescope binder;
    binder.emplace_back("y", SortExpr("Ob"));
    binder.emplace_back("p", SortExpr("Ob"));
    Term body = Term::app("iid", std::vector<Term>{Term::var(1)}); // iid(y)
    // term: Var(0)(a, b) over context (a, b, P)
    Term t = Term::var(0, {Arg(Term::var(2)), Arg(Term::var(1))});
    std::vector<Arg> subs;
    subs.emplace_back(Term::var(1)); // a
    subs.emplace_back(Term::var(0)); // b
    subs.emplace_back(binder, body); // P
    Term r = subst_term(t, subs);
    CHECK(r == Term::app("iid", std::vector<Term>{Term::var(1)}));
}
