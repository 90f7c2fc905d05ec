#include <map>

#include "gatwb/dsl.hpp"
#include "gatwb/errors.hpp"
#include "gatwb/signature.hpp"

namespace gatwb {

namespace {

const char* kCat = R"(
theory Cat {
  sort Ob;
  sort Hom(x, y: Ob);
  sort EqHom(x, y: Ob, f, g: Hom(x, y));
  op iid(x: Ob): Hom(x, x);
  op comp(x, y, z: Ob, f: Hom(x, y), g: Hom(y, z)): Hom(x, z);
  op refl(x, y: Ob, f: Hom(x, y)): EqHom(f, f);
  eq idl(x, y: Ob, f: Hom(x, y)): comp(iid(x), f) = f : Hom(x, y);
  eq idr(x, y: Ob, f: Hom(x, y)): comp(f, iid(y)) = f : Hom(x, y);
  eq assoc(x, y, z, w: Ob, f: Hom(x, y), g: Hom(y, z), h: Hom(z, w)):
      comp(comp(f, g), h) = comp(f, comp(g, h)) : Hom(x, w);
  eq eqhom_prop(x, y: Ob, f, g: Hom(x, y), p, q: EqHom(f, g)): p = q : EqHom(f, g);
  eq eqhom_reflect(x, y: Ob, f, g: Hom(x, y), p: EqHom(f, g)): f = g : Hom(x, y);
}
)";

const char* kECat = R"(
theory ECat {
  sort Ob;
  sort Hom(x, y: Ob);
  sort EqHom(x, y: Ob, f, g: Hom(x, y));
  op iid(x: Ob): Hom(x, x);
  op comp(x, y, z: Ob, f: Hom(x, y), g: Hom(y, z)): Hom(x, z);
  op refl(x, y: Ob, f: Hom(x, y)): EqHom(f, f);
  op sym(x, y: Ob, f, g: Hom(x, y), p: EqHom(f, g)): EqHom(g, f);
  op trans(x, y: Ob, f, g, h: Hom(x, y), p: EqHom(f, g), q: EqHom(g, h)): EqHom(f, h);
  op assoc(x, y, z, w: Ob, f: Hom(x, y), g: Hom(y, z), h: Hom(z, w)):
      EqHom(comp(comp(f, g), h), comp(f, comp(g, h)));
  op idl(x, y: Ob, f: Hom(x, y)): EqHom(comp(iid(x), f), f);
  op idr(x, y: Ob, f: Hom(x, y)): EqHom(comp(f, iid(y)), f);
  op congcomp(x, y, z: Ob, f, h: Hom(x, y), g, i: Hom(y, z), p: EqHom(f, h), q: EqHom(g, i)):
      EqHom(comp(f, g), comp(h, i));
}
)";

const char* kMonCat = R"(
theory MonCat extends Cat {
  op I: Ob;
  op tens(x, y: Ob): Ob;
  op tensh(x, x2, y, y2: Ob, f: Hom(x, x2), g: Hom(y, y2)): Hom(tens(x, y), tens(x2, y2));
  op alpha(x, y, z: Ob): Hom(tens(x, tens(y, z)), tens(tens(x, y), z));
  op alphainv(x, y, z: Ob): Hom(tens(tens(x, y), z), tens(x, tens(y, z)));
  op lambda(x: Ob): Hom(tens(x, I), x);
  op lambdainv(x: Ob): Hom(x, tens(x, I));
  op rho(x: Ob): Hom(tens(I, x), x);
  op rhoinv(x: Ob): Hom(x, tens(I, x));
  eq tensh_id(x, y: Ob): tensh(iid(x), iid(y)) = iid(tens(x, y)) : Hom(tens(x, y), tens(x, y));
  eq tensh_comp(x, x2, x3, y, y2, y3: Ob, f: Hom(x, x2), f2: Hom(x2, x3), g: Hom(y, y2), g2: Hom(y2, y3)):
      comp(tensh(f, g), tensh(f2, g2)) = tensh(comp(f, f2), comp(g, g2))
      : Hom(tens(x, y), tens(x3, y3));
  eq alpha_nat(x, x2, y, y2, z, z2: Ob, f: Hom(x, x2), g: Hom(y, y2), h: Hom(z, z2)):
      comp(tensh(f, tensh(g, h)), alpha(x2, y2, z2))
    = comp(alpha(x, y, z), tensh(tensh(f, g), h))
      : Hom(tens(x, tens(y, z)), tens(tens(x2, y2), z2));
  eq lambda_nat(x, x2: Ob, f: Hom(x, x2)):
      comp(tensh(f, iid(I)), lambda(x2)) = comp(lambda(x), f) : Hom(tens(x, I), x2);
  eq rho_nat(x, x2: Ob, f: Hom(x, x2)):
      comp(tensh(iid(I), f), rho(x2)) = comp(rho(x), f) : Hom(tens(I, x), x2);
  eq alpha_iso1(x, y, z: Ob):
      comp(alpha(x, y, z), alphainv(x, y, z)) = iid(tens(x, tens(y, z)))
      : Hom(tens(x, tens(y, z)), tens(x, tens(y, z)));
  eq alpha_iso2(x, y, z: Ob):
      comp(alphainv(x, y, z), alpha(x, y, z)) = iid(tens(tens(x, y), z))
      : Hom(tens(tens(x, y), z), tens(tens(x, y), z));
  eq lambda_iso1(x: Ob): comp(lambda(x), lambdainv(x)) = iid(tens(x, I)) : Hom(tens(x, I), tens(x, I));
  eq lambda_iso2(x: Ob): comp(lambdainv(x), lambda(x)) = iid(x) : Hom(x, x);
  eq rho_iso1(x: Ob): comp(rho(x), rhoinv(x)) = iid(tens(I, x)) : Hom(tens(I, x), tens(I, x));
  eq rho_iso2(x: Ob): comp(rhoinv(x), rho(x)) = iid(x) : Hom(x, x);
  eq pentagon(w, x, y, z: Ob):
      comp(alpha(w, x, tens(y, z)), alpha(tens(w, x), y, z))
    = comp(tensh(iid(w), alpha(x, y, z)), comp(alpha(w, tens(x, y), z), tensh(alpha(w, x, y), iid(z))))
      : Hom(tens(w, tens(x, tens(y, z))), tens(tens(tens(w, x), y), z));
  eq triangle(x, y: Ob):
      tensh(iid(x), rho(y)) = comp(alpha(x, I, y), tensh(lambda(x), iid(y)))
      : Hom(tens(x, tens(I, y)), tens(x, y));
}
)";

const char* kStrMonCat = R"(
theory StrMonCat extends MonCat {
  eq str_assoc(x, y, z: Ob): tens(x, tens(y, z)) = tens(tens(x, y), z) : Ob;
  eq str_alpha(x, y, z: Ob):
      alpha(x, y, z) = iid(tens(x, tens(y, z))) : Hom(tens(x, tens(y, z)), tens(tens(x, y), z));
  eq str_lunit(x: Ob): tens(x, I) = x : Ob;
  eq str_lambda(x: Ob): lambda(x) = iid(tens(x, I)) : Hom(tens(x, I), x);
  eq str_runit(x: Ob): tens(I, x) = x : Ob;
  eq str_rho(x: Ob): rho(x) = iid(tens(I, x)) : Hom(tens(I, x), x);
}
)";

const char* kId = R"(
theory Id {
  sort Ty;
  sort rep Tm(A: Ty);
  op Id(A: Ty, x: Tm(A), y: Tm(A)): Ty;
  op refl(A: Ty, x: Tm(A)): Tm(Id(A, x, x));
  op J(A: Ty, x: Tm(A), [y: Tm(A), p: Tm(Id(A, x, y))] P: Ty,
       d: Tm(P(x, refl(A, x))), y: Tm(A), p: Tm(Id(A, x, y))): Tm(P(y, p));
  op Jbeta(A: Ty, x: Tm(A), [y: Tm(A), p: Tm(Id(A, x, y))] P: Ty,
       d: Tm(P(x, refl(A, x)))): Tm(Id(P(x, refl(A, x)), J(A, x, P, d, x, refl(A, x)), d));
}
)";

const char* kIdStrict = R"(
theory IdStrict extends Id {
  eq Jrefl(A: Ty, x: Tm(A), [y: Tm(A), p: Tm(Id(A, x, y))] P: Ty, d: Tm(P(x, refl(A, x)))):
      J(A, x, P, d, x, refl(A, x)) = d : Tm(P(x, refl(A, x)));
  eq Jbetarefl(A: Ty, x: Tm(A), [y: Tm(A), p: Tm(Id(A, x, y))] P: Ty, d: Tm(P(x, refl(A, x)))):
      Jbeta(A, x, P, d) = refl(P(x, refl(A, x)), d)
      : Tm(Id(P(x, refl(A, x)), J(A, x, P, d, x, refl(A, x)), d));
}
)";

// Resolves `extends` against the builtins registered so far; avoids
// re-entering builtin_signature during static initialization.
class PartialResolver : public dsl::TheoryResolver {
public:
    explicit PartialResolver(const std::map<std::string, Signature>& t) : table_(t) {}
    std::optional<Signature> resolve(const std::string& name) const override {
        auto it = table_.find(name);
        if (it == table_.end()) return std::nullopt;
        return it->second;
    }

private:
    const std::map<std::string, Signature>& table_;
};

struct BuiltinTable {
    std::map<std::string, Signature> sigs;

    BuiltinTable() {
        // Order matters: MonCat extends Cat, StrMonCat extends MonCat.
        add("Cat", kCat);
        add("ECat", kECat);
        add("MonCat", kMonCat);
        add("StrMonCat", kStrMonCat);
        add("Id", kId);
        add("IdStrict", kIdStrict);
    }

    void add(const std::string& name, const char* text) {
        dsl::SourceFile src{name, text, dsl::FileKind::Theory};
        PartialResolver resolver(sigs);
        dsl::ParseResult<Signature> r = dsl::parse_theory(src, &resolver);
        if (!r.ok()) {
            std::string msg = "builtin theory " + name + " failed to parse:";
            for (const auto& d : r.diagnostics) msg += "\n  " + d.to_string();
            throw Error(msg);
        }
        sigs[name] = std::move(*r.value);
    }
};

} // namespace

std::optional<Signature> builtin_signature(const std::string& name) {
    static const BuiltinTable table;
    auto it = table.sigs.find(name);
    if (it == table.sigs.end()) return std::nullopt;
    return it->second;
}

std::vector<std::string> builtin_names() {
    return {"Cat", "ECat", "MonCat", "StrMonCat", "Id", "IdStrict"};
}

} // namespace gatwb
