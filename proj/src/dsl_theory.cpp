#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "dsl_lexer.hpp"
#include "gatwb/dsl.hpp"

namespace gatwb::dsl {

std::string Diagnostic::to_string() const {
    std::ostringstream os;
    os << (severity == Severity::Error ? "error" : "warning") << " at " << line << ":" << col << ": "
       << message;
    return os.str();
}

std::vector<Token> lex(const std::string& text, std::vector<Diagnostic>& diags) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto push = [&](Tok k, std::string s, int l, int c) { out.push_back({k, std::move(s), l, c}); };
    while (i < text.size()) {
        char ch = text[i];
        if (ch == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (ch == ' ' || ch == '\t' || ch == '\r') {
            ++col;
            ++i;
            continue;
        }
        if (ch == '#') {
            while (i < text.size() && text[i] != '\n') ++i;
            continue;
        }
        int l = line, c = col;
        auto two = [&](char a, char b) {
            return ch == a && i + 1 < text.size() && text[i + 1] == b;
        };
        if (two('-', '>')) {
            push(Tok::Arrow, "->", l, c);
            i += 2;
            col += 2;
            continue;
        }
        if (ch == '|' && i + 2 < text.size() && text[i + 1] == '-' && text[i + 2] == '>') {
            push(Tok::MapsTo, "|->", l, c);
            i += 3;
            col += 3;
            continue;
        }
        switch (ch) {
            case '(': push(Tok::LParen, "(", l, c); ++i; ++col; continue;
            case ')': push(Tok::RParen, ")", l, c); ++i; ++col; continue;
            case '{': push(Tok::LBrace, "{", l, c); ++i; ++col; continue;
            case '}': push(Tok::RBrace, "}", l, c); ++i; ++col; continue;
            case '[': push(Tok::LBracket, "[", l, c); ++i; ++col; continue;
            case ']': push(Tok::RBracket, "]", l, c); ++i; ++col; continue;
            case ',': push(Tok::Comma, ",", l, c); ++i; ++col; continue;
            case ':': push(Tok::Colon, ":", l, c); ++i; ++col; continue;
            case ';': push(Tok::Semi, ";", l, c); ++i; ++col; continue;
            case '=': push(Tok::Equals, "=", l, c); ++i; ++col; continue;
            case '~': push(Tok::Tilde, "~", l, c); ++i; ++col; continue;
            default: break;
        }
        if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '\'' || ch == '*' ||
            ch == '.' || ch == '/' || ch == '-') {
            std::size_t j = i;
            while (j < text.size()) {
                char cj = text[j];
                if (std::isalnum(static_cast<unsigned char>(cj)) || cj == '_' || cj == '\'' ||
                    cj == '*' || cj == '.' || cj == '/' || cj == '-')
                    ++j;
                else
                    break;
            }
            push(Tok::Ident, text.substr(i, j - i), l, c);
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        diags.push_back({Diagnostic::Severity::Error,
                         std::string("unexpected character '") + ch + "'", l, c});
        push(Tok::Bad, std::string(1, ch), l, c);
        ++i;
        ++col;
    }
    push(Tok::End, "", line, col);
    return out;
}

namespace {

// ---------------------------------------------------------------------------
// Surface syntax trees (names, no indices)
// ---------------------------------------------------------------------------

struct STerm {
    std::string head;
    int line = 1, col = 1;
    bool applied = false;
    struct SArg;
    std::vector<SArg> args;
};

struct STerm::SArg {
    std::vector<std::string> binder_names;
    STerm body;
};

struct SSort {
    std::string head;
    int line = 1, col = 1;
    std::vector<STerm> args;
};

struct SBinding {
    std::vector<std::pair<std::string, std::string>> binder; // name : sort head...
    // binder entries parsed as full bindings
    std::vector<std::pair<std::string, SSort>> binder_full;
    std::string name;
    SSort sort;
    int line = 1, col = 1;
};

using STele = std::vector<SBinding>;

bool parse_sterm(Cursor& cur, STerm& out);

bool parse_ssort(Cursor& cur, SSort& out) {
    if (!cur.at(Tok::Ident)) {
        cur.error("expected a sort name");
        return false;
    }
    const Token& t = cur.next();
    out.head = t.text;
    out.line = t.line;
    out.col = t.col;
    if (cur.accept(Tok::LParen)) {
        if (!cur.accept(Tok::RParen)) {
            do {
                STerm a;
                if (!parse_sterm(cur, a)) return false;
                out.args.push_back(std::move(a));
            } while (cur.accept(Tok::Comma));
            if (!cur.expect(Tok::RParen, "')'")) return false;
        }
    }
    return true;
}

bool parse_sterm(Cursor& cur, STerm& out) {
    if (cur.accept(Tok::LParen)) {
        // binder argument is only valid in argument position; at term
        // position parenthesized terms are permitted for symmetry
        STerm inner;
        if (!parse_sterm(cur, inner)) return false;
        if (!cur.expect(Tok::RParen, "')'")) return false;
        out = std::move(inner);
        return true;
    }
    if (!cur.at(Tok::Ident)) {
        cur.error("expected a term");
        return false;
    }
    const Token& t = cur.next();
    out.head = t.text;
    out.line = t.line;
    out.col = t.col;
    if (cur.accept(Tok::LParen)) {
        out.applied = true;
        if (!cur.accept(Tok::RParen)) {
            do {
                STerm::SArg a;
                if (cur.at(Tok::LParen) && cur.peek(1).kind == Tok::LBracket) {
                    cur.next(); // (
                    cur.next(); // [
                    do {
                        if (!cur.at(Tok::Ident)) {
                            cur.error("expected a binder name");
                            return false;
                        }
                        a.binder_names.push_back(cur.next().text);
                    } while (cur.accept(Tok::Comma));
                    if (!cur.expect(Tok::RBracket, "']'")) return false;
                    if (!parse_sterm(cur, a.body)) return false;
                    if (!cur.expect(Tok::RParen, "')'")) return false;
                } else {
                    if (!parse_sterm(cur, a.body)) return false;
                }
                out.args.push_back(std::move(a));
            } while (cur.accept(Tok::Comma));
            if (!cur.expect(Tok::RParen, "')'")) return false;
        }
    }
    return true;
}

// A name group runs until its ':'; commas before the colon separate names,
// commas after a completed group separate groups.
bool parse_name_group(Cursor& cur, std::vector<Token>& names) {
    do {
        if (!cur.at(Tok::Ident)) {
            cur.error("expected a binding name");
            return false;
        }
        names.push_back(cur.next());
        if (cur.at(Tok::Colon)) break;
    } while (cur.accept(Tok::Comma));
    return cur.expect(Tok::Colon, "':'");
}

bool parse_stele(Cursor& cur, STele& out) {
    if (!cur.expect(Tok::LParen, "'('")) return false;
    if (cur.accept(Tok::RParen)) return true;
    do {
        if (cur.accept(Tok::LBracket)) {
            // [tele] name : sort
            SBinding b;
            b.line = cur.peek().line;
            b.col = cur.peek().col;
            if (!cur.at(Tok::RBracket)) {
                do {
                    std::vector<Token> names;
                    if (!parse_name_group(cur, names)) return false;
                    SSort s;
                    if (!parse_ssort(cur, s)) return false;
                    for (auto& n : names) b.binder_full.emplace_back(n.text, s);
                } while (cur.accept(Tok::Comma));
            }
            if (!cur.expect(Tok::RBracket, "']'")) return false;
            if (!cur.at(Tok::Ident)) {
                cur.error("expected a name after a binder telescope");
                return false;
            }
            b.name = cur.next().text;
            if (!cur.expect(Tok::Colon, "':'")) return false;
            if (!parse_ssort(cur, b.sort)) return false;
            out.push_back(std::move(b));
        } else {
            std::vector<Token> names;
            if (!parse_name_group(cur, names)) return false;
            SSort s;
            if (!parse_ssort(cur, s)) return false;
            for (const auto& n : names) {
                SBinding b;
                b.name = n.text;
                b.sort = s;
                b.line = n.line;
                b.col = n.col;
                out.push_back(std::move(b));
            }
        }
    } while (cur.accept(Tok::Comma));
    return cur.expect(Tok::RParen, "')'");
}

// ---------------------------------------------------------------------------
// Elaboration
// ---------------------------------------------------------------------------

struct NameScope {
    std::vector<std::string> names; // outermost first

    int lookup(const std::string& n) const {
        for (int i = static_cast<int>(names.size()) - 1; i >= 0; --i)
            if (names[static_cast<std::size_t>(i)] == n)
                return static_cast<int>(names.size()) - 1 - i; // de Bruijn index
        return -1;
    }
};

struct Elab {
    const Signature& sig;
    std::vector<Diagnostic>& diags;
    std::size_t decl_limit = SIZE_MAX;

    void error(int line, int col, const std::string& msg) {
        diags.push_back({Diagnostic::Severity::Error, msg, line, col});
    }

    // Metavariables are Terms headed by "?<n>"; solved by syntactic
    // unification while elaborating implicit boundaries.
    static bool is_meta(const Term& t) {
        return t.kind == Term::Kind::App && !t.op.empty() && t.op[0] == '?';
    }

    static bool unify(const Term& pat, const Term& got, std::map<std::string, Term>& sol) {
        if (is_meta(pat)) {
            auto it = sol.find(pat.op);
            if (it != sol.end()) return it->second == got;
            sol[pat.op] = got;
            return true;
        }
        if (pat.kind != got.kind) return false;
        if (pat.kind == Term::Kind::Var && pat.index != got.index) return false;
        if (pat.kind == Term::Kind::App && pat.op != got.op) return false;
        if (pat.args.size() != got.args.size()) return false;
        for (std::size_t i = 0; i < pat.args.size(); ++i) {
            if (pat.args[i].binder.size() != got.args[i].binder.size()) return false;
            if (!unify(pat.args[i].body, got.args[i].body, sol)) return false;
        }
        return true;
    }

    static Term zonk(const Term& t, const std::map<std::string, Term>& sol, bool& complete) {
        if (is_meta(t)) {
            auto it = sol.find(t.op);
            if (it == sol.end()) {
                complete = false;
                return t;
            }
            return it->second;
        }
        Term r = t;
        for (std::size_t i = 0; i < r.args.size(); ++i)
            r.args[i].body = zonk(t.args[i].body, sol, complete);
        return r;
    }

    std::optional<Term> elab_term(const Context& ctx, const NameScope& scope, const STerm& st);

    // Elaborates an application against a closed telescope, supporting the
    // implicit-boundary sugar: the supplied arguments are matched against a
    // suffix of the telescope and the omitted prefix is solved by
    // unification.
    std::optional<std::vector<Arg>> elab_args(const Context& ctx, const NameScope& scope,
                                              const STerm& st, const Telescope& tele,
                                              const std::string& what) {
        std::size_t supplied = st.args.size();
        if (supplied > tele.size()) {
            error(st.line, st.col,
                  what + ": expected at most " + std::to_string(tele.size()) + " arguments, got " +
                      std::to_string(supplied));
            return std::nullopt;
        }
        std::size_t omitted = tele.size() - supplied;
        // slot terms: metavars for omitted, then elaborated args
        std::vector<Arg> slots;
        int meta_counter = 0;
        for (std::size_t i = 0; i < omitted; ++i) {
            if (!tele[i].binder.empty()) {
                error(st.line, st.col, what + ": binder arguments cannot be omitted");
                return std::nullopt;
            }
            slots.emplace_back(Term::app("?" + std::to_string(meta_counter++), std::vector<Arg>{}));
        }
        std::map<std::string, Term> sol;
        for (std::size_t i = 0; i < supplied; ++i) {
            const Binding& param = tele[omitted + i];
            const STerm::SArg& sarg = st.args[i];
            // expected binder, instantiated with the slots so far (may
            // contain metavariables)
            Telescope binder_inst = subst_telescope(param.binder, slots);
            if (binder_inst.empty()) {
                if (!sarg.binder_names.empty()) {
                    error(sarg.body.line, sarg.body.col,
                          what + ": argument " + std::to_string(i + 1) + " takes no binder");
                    return std::nullopt;
                }
                std::optional<Term> arg = elab_term(ctx, scope, sarg.body);
                if (!arg) return std::nullopt;
                TypeError terr;
                std::optional<SortExpr> got = infer_sort(sig, ctx, *arg, &terr, decl_limit);
                if (!got) {
                    error(sarg.body.line, sarg.body.col, terr.message);
                    return std::nullopt;
                }
                SortExpr expected = subst_sort(param.sort, slots);
                // unify expected (with metas) against got
                bool ok = expected.head == got->head && expected.args.size() == got->args.size();
                if (ok)
                    for (std::size_t k = 0; k < expected.args.size(); ++k)
                        ok = ok && unify(expected.args[k], got->args[k], sol);
                if (!ok) {
                    error(sarg.body.line, sarg.body.col,
                          what + ": argument " + std::to_string(i + 1) + " has sort " +
                              sort_to_string(*got, context_names(ctx)) + ", incompatible with " +
                              expected.head);
                    return std::nullopt;
                }
                // re-zonk all slots so later parameters see solutions
                slots.push_back(Arg(*arg));
            } else {
                // binder argument: either explicit names or a bare
                // second-order variable (eta-expanded)
                bool dummy = true;
                for (auto& s : slots) s.body = zonk(s.body, sol, dummy);
                binder_inst = subst_telescope(param.binder, slots);
                Context inner = ctx;
                NameScope inner_scope = scope;
                std::vector<std::string> names = sarg.binder_names;
                if (names.empty() && !sarg.body.applied && sarg.body.args.empty()) {
                    // bare variable: eta-expand below via elab_term on an
                    // application of the variable to the binder names
                }
                if (names.empty()) {
                    if (scope.lookup(sarg.body.head) < 0) {
                        error(sarg.body.line, sarg.body.col,
                              what + ": argument " + std::to_string(i + 1) +
                                  " must be a binder or a second-order variable");
                        return std::nullopt;
                    }
                    for (std::size_t j = 0; j < binder_inst.size(); ++j)
                        names.push_back("_b" + std::to_string(j));
                }
                if (names.size() != binder_inst.size()) {
                    error(sarg.body.line, sarg.body.col,
                          what + ": binder length mismatch (expected " +
                              std::to_string(binder_inst.size()) + ")");
                    return std::nullopt;
                }
                for (std::size_t j = 0; j < binder_inst.size(); ++j) {
                    Binding b = binder_inst[j];
                    b.name = names[j];
                    inner.push_back(b);
                    inner_scope.names.push_back(names[j]);
                }
                STerm body = sarg.body;
                if (sarg.binder_names.empty()) {
                    // eta-expansion: v becomes v(b0, ..., bk)
                    body.applied = true;
                    body.args.clear();
                    for (const auto& n : names) {
                        STerm::SArg a;
                        a.body.head = n;
                        a.body.line = sarg.body.line;
                        a.body.col = sarg.body.col;
                        body.args.push_back(std::move(a));
                    }
                }
                std::optional<Term> bt = elab_term(inner, inner_scope, body);
                if (!bt) return std::nullopt;
                slots.push_back(Arg(binder_inst, *bt));
            }
        }
        bool complete = true;
        for (auto& s : slots) s.body = zonk(s.body, sol, complete);
        if (!complete) {
            error(st.line, st.col, what + ": could not infer the omitted boundary arguments");
            return std::nullopt;
        }
        return slots;
    }

    std::optional<SortExpr> elab_sort(const Context& ctx, const NameScope& scope, const SSort& ss) {
        const SortDecl* sd = nullptr;
        for (std::size_t i = 0; i < sig.declarations.size() && i < decl_limit; ++i)
            if (const auto* s = std::get_if<SortDecl>(&sig.declarations[i]); s && s->name == ss.head)
                sd = s;
        if (!sd) {
            error(ss.line, ss.col, "unknown sort " + ss.head);
            return std::nullopt;
        }
        STerm fake;
        fake.head = ss.head;
        fake.line = ss.line;
        fake.col = ss.col;
        fake.applied = true;
        for (const auto& a : ss.args) {
            STerm::SArg sa;
            sa.body = a;
            fake.args.push_back(std::move(sa));
        }
        std::optional<std::vector<Arg>> args =
            elab_args(ctx, scope, fake, sd->boundary, "sort " + ss.head);
        if (!args) return std::nullopt;
        SortExpr r;
        r.head = ss.head;
        for (auto& a : *args) r.args.push_back(std::move(a.body));
        return r;
    }

    std::optional<Telescope> elab_tele(Context& ctx, NameScope& scope, const STele& stele) {
        Telescope out;
        for (const auto& sb : stele) {
            Binding b;
            b.name = sb.name;
            if (!sb.binder_full.empty()) {
                Context inner = ctx;
                NameScope inner_scope = scope;
                for (const auto& [n, ss] : sb.binder_full) {
                    std::optional<SortExpr> s = elab_sort(inner, inner_scope, ss);
                    if (!s) return std::nullopt;
                    Binding bb(n, *s);
                    b.binder.push_back(bb);
                    inner.push_back(bb);
                    inner_scope.names.push_back(n);
                }
                std::optional<SortExpr> s = elab_sort(inner, inner_scope, sb.sort);
                if (!s) return std::nullopt;
                b.sort = *s;
            } else {
                std::optional<SortExpr> s = elab_sort(ctx, scope, sb.sort);
                if (!s) return std::nullopt;
                b.sort = *s;
            }
            out.push_back(b);
            ctx.push_back(b);
            scope.names.push_back(b.name);
        }
        return out;
    }
};

std::optional<Term> Elab::elab_term(const Context& ctx, const NameScope& scope, const STerm& st) {
    int v = scope.lookup(st.head);
    if (v >= 0) {
        const Binding& b = ctx[ctx.size() - 1 - static_cast<std::size_t>(v)];
        std::vector<Arg> args;
        if (!st.args.empty()) {
            if (b.binder.empty()) {
                error(st.line, st.col, "variable " + st.head + " takes no arguments");
                return std::nullopt;
            }
            Telescope binder = shift_telescope(b.binder, v + 1, 0);
            STerm fake = st;
            std::optional<std::vector<Arg>> as =
                elab_args(ctx, scope, fake, binder, "variable " + st.head);
            if (!as) return std::nullopt;
            args = std::move(*as);
        } else if (!b.binder.empty()) {
            error(st.line, st.col, "second-order variable " + st.head + " must be applied");
            return std::nullopt;
        }
        return Term::var(v, std::move(args));
    }
    const OpDecl* op = nullptr;
    for (std::size_t i = 0; i < sig.declarations.size() && i < decl_limit; ++i)
        if (const auto* o = std::get_if<OpDecl>(&sig.declarations[i]); o && o->name == st.head)
            op = o;
    if (!op) {
        error(st.line, st.col, "unknown name " + st.head);
        return std::nullopt;
    }
    std::optional<std::vector<Arg>> args = elab_args(ctx, scope, st, op->telescope, "op " + st.head);
    if (!args) return std::nullopt;
    return Term::app(st.head, std::move(*args));
}

} // namespace

// ---------------------------------------------------------------------------
// Theory files
// ---------------------------------------------------------------------------

ParseResult<Signature> parse_theory(const SourceFile& src, const TheoryResolver* resolver) {
    ParseResult<Signature> result;
    std::vector<Token> toks = lex(src.text, result.diagnostics);
    if (!result.diagnostics.empty()) return result;
    Cursor cur{toks, 0, result.diagnostics};

    Signature sig;
    if (cur.at(Tok::End)) {
        result.value = sig; // empty file: empty signature
        return result;
    }
    if (!cur.at(Tok::Ident) || cur.peek().text != "theory") {
        cur.error_at(toks[0], "a theory file starts with 'theory <name> {'");
        return result;
    }
    cur.next();
    if (!cur.at(Tok::Ident)) {
        cur.error("expected a theory name");
        return result;
    }
    cur.next(); // theory name (unused internally)
    if (cur.at(Tok::Ident) && cur.peek().text == "extends") {
        cur.next();
        if (!cur.at(Tok::Ident)) {
            cur.error("expected a base theory name after 'extends'");
            return result;
        }
        const Token& base_tok = cur.next();
        if (!resolver) {
            cur.error_at(base_tok, "no resolver available for 'extends'");
            return result;
        }
        std::optional<Signature> base = resolver->resolve(base_tok.text);
        if (!base) {
            cur.error_at(base_tok, "unknown base theory " + base_tok.text);
            return result;
        }
        sig = std::move(*base);
    }
    if (!cur.expect(Tok::LBrace, "'{'")) return result;

    Elab el{sig, result.diagnostics};
    while (!cur.at(Tok::RBrace) && !cur.at(Tok::End)) {
        if (!cur.at(Tok::Ident)) {
            cur.error("expected a declaration");
            return result;
        }
        Token kw = cur.next();
        el.decl_limit = SIZE_MAX; // declarations see the whole prefix
        if (kw.text == "sort") {
            SortDecl d;
            if (cur.at(Tok::Ident) && cur.peek().text == "rep" && cur.peek(1).kind == Tok::Ident) {
                cur.next();
                d.representable = true;
            }
            if (!cur.at(Tok::Ident)) {
                cur.error("expected a sort name");
                return result;
            }
            Token name = cur.next();
            d.name = name.text;
            if (cur.at(Tok::LParen)) {
                STele stele;
                if (!parse_stele(cur, stele)) return result;
                Context ctx;
                NameScope scope;
                std::optional<Telescope> tele = el.elab_tele(ctx, scope, stele);
                if (!tele) return result;
                d.boundary = std::move(*tele);
            }
            if (!cur.expect(Tok::Semi, "';'")) return result;
            if (sig.has_name(d.name)) {
                cur.error_at(name, "duplicate name " + d.name);
                return result;
            }
            sig.declarations.emplace_back(std::move(d));
        } else if (kw.text == "op") {
            OpDecl d;
            if (!cur.at(Tok::Ident)) {
                cur.error("expected an operation name");
                return result;
            }
            Token name = cur.next();
            d.name = name.text;
            Context ctx;
            NameScope scope;
            if (cur.at(Tok::LParen)) {
                STele stele;
                if (!parse_stele(cur, stele)) return result;
                std::optional<Telescope> tele = el.elab_tele(ctx, scope, stele);
                if (!tele) return result;
                d.telescope = std::move(*tele);
            }
            if (!cur.expect(Tok::Colon, "':'")) return result;
            SSort ss;
            if (!parse_ssort(cur, ss)) return result;
            std::optional<SortExpr> s = el.elab_sort(ctx, scope, ss);
            if (!s) return result;
            d.result = std::move(*s);
            if (!cur.expect(Tok::Semi, "';'")) return result;
            if (sig.has_name(d.name)) {
                cur.error_at(name, "duplicate name " + d.name);
                return result;
            }
            sig.declarations.emplace_back(std::move(d));
        } else if (kw.text == "eq") {
            EqDecl d;
            if (!cur.at(Tok::Ident)) {
                cur.error("expected an equation name");
                return result;
            }
            Token name = cur.next();
            d.name = name.text;
            Context ctx;
            NameScope scope;
            if (cur.at(Tok::LParen)) {
                STele stele;
                if (!parse_stele(cur, stele)) return result;
                std::optional<Telescope> tele = el.elab_tele(ctx, scope, stele);
                if (!tele) return result;
                d.telescope = std::move(*tele);
            }
            if (!cur.expect(Tok::Colon, "':'")) return result;
            STerm slhs, srhs;
            if (!parse_sterm(cur, slhs)) return result;
            if (!cur.expect(Tok::Equals, "'='")) return result;
            if (!parse_sterm(cur, srhs)) return result;
            if (!cur.expect(Tok::Colon, "':'")) return result;
            SSort sat;
            if (!parse_ssort(cur, sat)) return result;
            std::optional<Term> lhs = el.elab_term(ctx, scope, slhs);
            if (!lhs) return result;
            std::optional<Term> rhs = el.elab_term(ctx, scope, srhs);
            if (!rhs) return result;
            std::optional<SortExpr> at = el.elab_sort(ctx, scope, sat);
            if (!at) return result;
            d.lhs = std::move(*lhs);
            d.rhs = std::move(*rhs);
            d.at = std::move(*at);
            if (!cur.expect(Tok::Semi, "';'")) return result;
            if (sig.has_name(d.name)) {
                cur.error_at(name, "duplicate name " + d.name);
                return result;
            }
            sig.declarations.emplace_back(std::move(d));
        } else {
            cur.error_at(kw, "expected 'sort', 'op' or 'eq', got '" + kw.text + "'");
            return result;
        }
    }
    if (!cur.expect(Tok::RBrace, "'}'")) return result;

    ValidationReport report = validate_signature(sig);
    if (!report.ok()) {
        for (const auto& e : report.errors)
            result.diagnostics.push_back(
                {Diagnostic::Severity::Error, e.decl + ": " + e.message, 1, 1});
        return result;
    }
    result.value = std::move(sig);
    return result;
}

ParseResult<Term> parse_term(const Signature& sig, const Context& ctx, const std::string& text) {
    ParseResult<Term> result;
    std::vector<Token> toks = lex(text, result.diagnostics);
    if (!result.diagnostics.empty()) return result;
    Cursor cur{toks, 0, result.diagnostics};
    STerm st;
    if (!parse_sterm(cur, st)) return result;
    if (!cur.at(Tok::End)) {
        cur.error("trailing input after term");
        return result;
    }
    Elab el{sig, result.diagnostics};
    NameScope scope;
    for (const auto& b : ctx) scope.names.push_back(b.name);
    std::optional<Term> t = el.elab_term(ctx, scope, st);
    if (t) result.value = std::move(*t);
    return result;
}

ParseResult<Context> parse_context(const Signature& sig, const std::string& text) {
    ParseResult<Context> result;
    std::vector<Token> toks = lex(text, result.diagnostics);
    if (!result.diagnostics.empty()) return result;
    Cursor cur{toks, 0, result.diagnostics};
    STele stele;
    if (!parse_stele(cur, stele)) return result;
    Elab el{sig, result.diagnostics};
    Context ctx;
    NameScope scope;
    std::optional<Telescope> tele = el.elab_tele(ctx, scope, stele);
    if (tele) result.value = std::move(*tele);
    return result;
}

// ---------------------------------------------------------------------------
// Pretty printing
// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> unique_names(const Telescope& tele) {
    std::vector<std::string> names;
    std::set<std::string> used;
    for (std::size_t i = 0; i < tele.size(); ++i) {
        std::string n = tele[i].name.empty() ? "v" + std::to_string(i) : tele[i].name;
        std::string cand = n;
        int k = 1;
        while (used.count(cand)) cand = n + "_" + std::to_string(k++);
        used.insert(cand);
        names.push_back(cand);
    }
    return names;
}

} // namespace

std::string pretty(const Signature& sig) {
    std::ostringstream os;
    os << "theory T {\n";
    for (const auto& d : sig.declarations) {
        if (const auto* s = std::get_if<SortDecl>(&d)) {
            os << "  sort " << (s->representable ? "rep " : "") << s->name;
            if (!s->boundary.empty()) {
                std::vector<std::string> names = unique_names(s->boundary);
                os << "(";
                std::vector<std::string> seen;
                for (std::size_t i = 0; i < s->boundary.size(); ++i) {
                    if (i) os << ", ";
                    os << names[i] << ": " << sort_to_string(s->boundary[i].sort, seen);
                    seen.push_back(names[i]);
                }
                os << ")";
            }
            os << ";\n";
        } else if (const auto* o = std::get_if<OpDecl>(&d)) {
            os << "  op " << o->name;
            std::vector<std::string> names = unique_names(o->telescope);
            if (!o->telescope.empty()) {
                os << "(";
                std::vector<std::string> seen;
                for (std::size_t i = 0; i < o->telescope.size(); ++i) {
                    if (i) os << ", ";
                    const Binding& b = o->telescope[i];
                    if (!b.binder.empty()) {
                        os << "[";
                        std::vector<std::string> inner = seen;
                        std::vector<std::string> bn = unique_names(b.binder);
                        for (std::size_t j = 0; j < b.binder.size(); ++j) {
                            if (j) os << ", ";
                            os << bn[j] << ": " << sort_to_string(b.binder[j].sort, inner);
                            inner.push_back(bn[j]);
                        }
                        os << "] " << names[i] << ": " << sort_to_string(b.sort, inner);
                    } else {
                        os << names[i] << ": " << sort_to_string(b.sort, seen);
                    }
                    seen.push_back(names[i]);
                }
                os << ")";
            }
            os << ": " << sort_to_string(o->result, names) << ";\n";
        } else if (const auto* e = std::get_if<EqDecl>(&d)) {
            os << "  eq " << e->name;
            std::vector<std::string> names = unique_names(e->telescope);
            if (!e->telescope.empty()) {
                os << "(";
                std::vector<std::string> seen;
                for (std::size_t i = 0; i < e->telescope.size(); ++i) {
                    if (i) os << ", ";
                    const Binding& b = e->telescope[i];
                    if (!b.binder.empty()) {
                        os << "[";
                        std::vector<std::string> inner = seen;
                        std::vector<std::string> bn = unique_names(b.binder);
                        for (std::size_t j = 0; j < b.binder.size(); ++j) {
                            if (j) os << ", ";
                            os << bn[j] << ": " << sort_to_string(b.binder[j].sort, inner);
                            inner.push_back(bn[j]);
                        }
                        os << "] " << names[i] << ": " << sort_to_string(b.sort, inner);
                    } else {
                        os << names[i] << ": " << sort_to_string(b.sort, seen);
                    }
                    seen.push_back(names[i]);
                }
                os << ")";
            }
            os << ": " << term_to_string(e->lhs, names) << " = " << term_to_string(e->rhs, names)
               << ": " << sort_to_string(e->at, names) << ";\n";
        }
    }
    os << "}\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Resolver
// ---------------------------------------------------------------------------

TheoryResolver::TheoryResolver() {
    if (const char* sp = std::getenv("GAT_SEARCH_PATH")) {
        std::string s(sp);
        std::size_t start = 0;
        while (start <= s.size()) {
            std::size_t colon = s.find(':', start);
            std::string dir = s.substr(start, colon == std::string::npos ? std::string::npos
                                                                         : colon - start);
            if (!dir.empty()) dirs_.push_back(dir);
            if (colon == std::string::npos) break;
            start = colon + 1;
        }
    }
}

void TheoryResolver::add_search_dir(const std::string& dir) { dirs_.push_back(dir); }

std::optional<Signature> TheoryResolver::resolve(const std::string& name) const {
    if (std::optional<Signature> b = builtin_signature(name)) return b;
    for (const auto& dir : dirs_) {
        std::filesystem::path p = std::filesystem::path(dir) / (name + ".gat");
        std::ifstream in(p);
        if (!in) continue;
        std::stringstream buf;
        buf << in.rdbuf();
        SourceFile src{p.string(), buf.str(), FileKind::Theory};
        ParseResult<Signature> r = parse_theory(src, this);
        if (r.ok()) return r.value;
        return std::nullopt;
    }
    return std::nullopt;
}

} // namespace gatwb::dsl
