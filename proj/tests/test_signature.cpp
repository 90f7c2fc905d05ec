#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gatwb/signature.hpp"

using namespace gatwb;

TEST_CASE("builtins validate") {
    for (const auto& name : builtin_names()) {
        CAPTURE(name);
        auto sig = builtin_signature(name);
        REQUIRE(sig.has_value());
        ValidationReport r = validate_signature(*sig);
        INFO(r.to_string());
        CHECK(r.ok());
    }
    CHECK_FALSE(builtin_signature("NoSuchTheory").has_value());
}

TEST_CASE("Cat has the expected declarations") {
    Signature cat = *builtin_signature("Cat");
    CHECK(cat.sorts().size() == 3);
    CHECK(cat.ops().size() == 3);
    CHECK(cat.eqs().size() == 5);
    CHECK(cat.is_first_order());

    auto b_ob = boundary(cat, "Ob");
    REQUIRE(b_ob.has_value());
    CHECK(b_ob->empty());

    auto b_hom = boundary(cat, "Hom");
    REQUIRE(b_hom.has_value());
    REQUIRE(b_hom->size() == 2);
    CHECK((*b_hom)[0].sort.head == "Ob");
    CHECK((*b_hom)[1].sort.head == "Ob");

    auto b_eqhom = boundary(cat, "EqHom");
    REQUIRE(b_eqhom.has_value());
    REQUIRE(b_eqhom->size() == 4);
    CHECK((*b_eqhom)[2].sort.head == "Hom");
    // f, g : Hom(x, y) with x = Var(1), y = Var(0) in their prefix
    CHECK((*b_eqhom)[2].sort.args[0] == Term::var(1));
    CHECK((*b_eqhom)[2].sort.args[1] == Term::var(0));
    CHECK((*b_eqhom)[3].sort.args[0] == Term::var(2));
    CHECK((*b_eqhom)[3].sort.args[1] == Term::var(1));

    CHECK_FALSE(boundary(cat, "NoSort").has_value());
}

TEST_CASE("second-order detection") {
    CHECK(builtin_signature("Id")->is_second_order());
    CHECK(builtin_signature("IdStrict")->is_second_order());
    CHECK(builtin_signature("MonCat")->is_first_order());
    CHECK(builtin_signature("StrMonCat")->is_first_order());
    CHECK(builtin_signature("ECat")->is_first_order());
}

TEST_CASE("typechecking in Cat") {
    Signature cat = *builtin_signature("Cat");
    // ctx = (x : Ob)
    Context ctx;
    ctx.emplace_back("x", SortExpr("Ob"));

    SUBCASE("iid(x) : Hom(x, x)") {
        Term t = Term::app("iid", std::vector<Term>{Term::var(0)});
        auto s = infer_sort(cat, ctx, t);
        REQUIRE(s.has_value());
        CHECK(s->head == "Hom");
        CHECK(s->args[0] == Term::var(0));
        CHECK(s->args[1] == Term::var(0));
    }

    SUBCASE("Var(0) : Ob") {
        auto s = infer_sort(cat, ctx, Term::var(0));
        REQUIRE(s.has_value());
        CHECK(s->head == "Ob");
        CHECK(s->args.empty());
    }

    SUBCASE("ill-sorted composition is rejected") {
        // ctx = (x, y : Ob, f : Hom(x, y)); comp(x, y, x, f, f) must fail:
        // the second morphism argument needs sort Hom(y, x).
        Context c2;
        c2.emplace_back("x", SortExpr("Ob"));
        c2.emplace_back("y", SortExpr("Ob"));
        c2.emplace_back("f", SortExpr("Hom", {Term::var(1), Term::var(0)}));
        Term bad = Term::app("comp", std::vector<Term>{Term::var(2), Term::var(1), Term::var(2),
                                                       Term::var(0), Term::var(0)});
        TypeError err;
        auto s = infer_sort(cat, c2, bad, &err);
        CHECK_FALSE(s.has_value());
        CHECK(err.message.find("argument") != std::string::npos);
    }

    SUBCASE("unknown op") {
        TypeError err;
        auto s = infer_sort(cat, ctx, Term::app("nope", std::vector<Term>{}), &err);
        CHECK_FALSE(s.has_value());
    }

    SUBCASE("out of range variable") {
        TypeError err;
        auto s = infer_sort(cat, ctx, Term::var(3), &err);
        CHECK_FALSE(s.has_value());
    }
}

TEST_CASE("substitution") {
    Signature cat = *builtin_signature("Cat");
    // substitute(Var(0), [a]) = a
    Term a = Term::app("iid", std::vector<Term>{Term::var(0)});
    CHECK(subst_term(Term::var(0), {Arg(a)}) == a);
    // substitute(iid(Var(0)), [b]) = iid(b)
    Term t = Term::app("iid", std::vector<Term>{Term::var(0)});
    Term b = Term::var(4);
    Term r = subst_term(t, {Arg(b)});
    CHECK(r == Term::app("iid", std::vector<Term>{Term::var(4)}));
}

TEST_CASE("substitution lemma on nested comps") {
    Signature cat = *builtin_signature("Cat");
    // ctx = (x, y : Ob, f : Hom(x, y)); t = comp(x,x,y,iid(x),f)
    Context ctx;
    ctx.emplace_back("x", SortExpr("Ob"));
    ctx.emplace_back("y", SortExpr("Ob"));
    ctx.emplace_back("f", SortExpr("Hom", {Term::var(1), Term::var(0)}));
    Term t = Term::app("comp", std::vector<Term>{Term::var(2), Term::var(2), Term::var(1),
                                                 Term::app("iid", std::vector<Term>{Term::var(2)}),
                                                 Term::var(0)});
    auto s = infer_sort(cat, ctx, t);
    REQUIRE(s.has_value());

    // substitute x := a, y := a, f := iid(a) over ctx2 = (a : Ob)
    Context ctx2;
    ctx2.emplace_back("a", SortExpr("Ob"));
    std::vector<Arg> subs;
    subs.emplace_back(Term::var(0));
    subs.emplace_back(Term::var(0));
    subs.emplace_back(Term::app("iid", std::vector<Term>{Term::var(0)}));
    Term t2 = subst_term(t, subs);
    auto s2 = infer_sort(cat, ctx2, t2);
    REQUIRE(s2.has_value());
    CHECK(*s2 == subst_sort(*s, subs));
}

TEST_CASE("validate rejects forward references") {
    // Hom declared before Ob
    Signature sig;
    SortDecl hom;
    hom.name = "Hom";
    hom.boundary.emplace_back("x", SortExpr("Ob"));
    hom.boundary.emplace_back("y", SortExpr("Ob"));
    sig.declarations.emplace_back(hom);
    sig.declarations.emplace_back(SortDecl{"Ob", {}, false});
    ValidationReport r = validate_signature(sig);
    REQUIRE_FALSE(r.ok());
    CHECK(r.errors[0].decl == "Hom");
    CHECK(r.errors[0].message.find("unknown sort") != std::string::npos);
    CHECK(r.errors[0].message.find("Ob") != std::string::npos);
}

TEST_CASE("validate rejects sort mismatches in mutated equations") {
    // mutate MonCat's pentagon: swap lhs to a wrong Hom instance by replacing
    // the equation's at-sort with a mismatching one
    Signature mon = *builtin_signature("MonCat");
    for (auto& d : mon.declarations) {
        if (auto* e = std::get_if<EqDecl>(&d); e && e->name == "pentagon") {
            std::swap(e->at.args[0], e->at.args[1]);
        }
    }
    ValidationReport r = validate_signature(mon);
    REQUIRE_FALSE(r.ok());
    CHECK(r.errors[0].decl == "pentagon");
    CHECK(r.errors[0].message.find("mismatch") != std::string::npos);
}

TEST_CASE("extend_signature") {
    Signature cat = *builtin_signature("Cat");

    SUBCASE("name clash is rejected") {
        ExtendResult r = extend_signature(cat, SortDecl{"Ob", {}, false});
        CHECK_FALSE(r.ok());
    }

    SUBCASE("groupoid inverse op validates") {
        OpDecl inv;
        inv.name = "inv";
        inv.telescope.emplace_back("x", SortExpr("Ob"));
        inv.telescope.emplace_back("y", SortExpr("Ob"));
        inv.telescope.emplace_back("f", SortExpr("Hom", {Term::var(1), Term::var(0)}));
        inv.result = SortExpr("Hom", {Term::var(1), Term::var(2)});
        ExtendResult r = extend_signature(cat, inv);
        INFO(r.report.to_string());
        CHECK(r.ok());
        CHECK(r.signature.find_op("inv") != nullptr);
        CHECK(r.signature.is_first_order());
    }

    SUBCASE("sequencing extensions equals appending both") {
        OpDecl inv;
        inv.name = "inv";
        inv.telescope.emplace_back("x", SortExpr("Ob"));
        inv.telescope.emplace_back("y", SortExpr("Ob"));
        inv.telescope.emplace_back("f", SortExpr("Hom", {Term::var(1), Term::var(0)}));
        inv.result = SortExpr("Hom", {Term::var(1), Term::var(2)});
        OpDecl dup = inv;
        dup.name = "inv2";
        Signature s1 = extend_signature(extend_signature(cat, inv).signature, dup).signature;
        Signature s2 = cat;
        s2.declarations.emplace_back(inv);
        s2.declarations.emplace_back(dup);
        REQUIRE(s1.declarations.size() == s2.declarations.size());
        CHECK(validate_signature(s2).ok());
    }
}

TEST_CASE("ECat plus reflection equations has ECat count plus two") {
    Signature ecat = *builtin_signature("ECat");
    std::size_t base = ecat.declarations.size();

    EqDecl reflect;
    reflect.name = "eqhom_reflect";
    reflect.telescope.emplace_back("x", SortExpr("Ob"));
    reflect.telescope.emplace_back("y", SortExpr("Ob"));
    reflect.telescope.emplace_back("f", SortExpr("Hom", {Term::var(1), Term::var(0)}));
    reflect.telescope.emplace_back("g", SortExpr("Hom", {Term::var(2), Term::var(1)}));
    reflect.telescope.emplace_back(
        "p", SortExpr("EqHom", {Term::var(3), Term::var(2), Term::var(1), Term::var(0)}));
    reflect.lhs = Term::var(2);
    reflect.rhs = Term::var(1);
    reflect.at = SortExpr("Hom", {Term::var(4), Term::var(3)});
    ExtendResult r1 = extend_signature(ecat, reflect);
    INFO(r1.report.to_string());
    REQUIRE(r1.ok());

    EqDecl prop;
    prop.name = "eqhom_uip";
    prop.telescope = reflect.telescope;
    prop.lhs = Term::var(0);
    prop.rhs = Term::app("refl", std::vector<Term>{Term::var(4), Term::var(3), Term::var(2)});
    prop.at = SortExpr("EqHom", {Term::var(4), Term::var(3), Term::var(2), Term::var(1)});
    ExtendResult r2 = extend_signature(r1.signature, prop);
    INFO(r2.report.to_string());
    REQUIRE(r2.ok());
    CHECK(r2.signature.declarations.size() == base + 2);
}

TEST_CASE("IdStrict second equation needs modulo-sort comparison") {
    // The rhs of the Jbeta strictness equation typechecks only modulo the
    // first strictness equation; validation of the builtin exercises it.
    Signature ids = *builtin_signature("IdStrict");
    CHECK(validate_signature(ids).ok());
}
