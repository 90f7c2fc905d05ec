#include "gatwb/term.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace gatwb {

SortExpr::SortExpr(std::string h, std::vector<Term> a) : head(std::move(h)) {
    args.reserve(a.size());
    for (auto& t : a) args.push_back(std::move(t));
}

Term Term::var(int i) {
    Term t;
    t.kind = Kind::Var;
    t.index = i;
    return t;
}

Term Term::var(int i, std::vector<Arg> as) {
    Term t = var(i);
    t.args = std::move(as);
    return t;
}

Term Term::app(std::string op, std::vector<Arg> as) {
    Term t;
    t.kind = Kind::App;
    t.op = std::move(op);
    t.args = std::move(as);
    return t;
}

Term Term::app(std::string op, std::vector<Term> as) {
    std::vector<Arg> args;
    args.reserve(as.size());
    for (auto& t : as) args.emplace_back(std::move(t));
    return app(std::move(op), std::move(args));
}

bool operator==(const Term& a, const Term& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == Term::Kind::Var && a.index != b.index) return false;
    if (a.kind == Term::Kind::App && a.op != b.op) return false;
    if (a.args.size() != b.args.size()) return false;
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!(a.args[i] == b.args[i])) return false;
    return true;
}

bool operator==(const Arg& a, const Arg& b) {
    if (a.binder.size() != b.binder.size()) return false;
    for (std::size_t i = 0; i < a.binder.size(); ++i)
        if (!(a.binder[i] == b.binder[i])) return false;
    return a.body == b.body;
}

bool operator==(const Binding& a, const Binding& b) {
    // Name hints are ignored: equality is structural.
    if (a.binder.size() != b.binder.size()) return false;
    for (std::size_t i = 0; i < a.binder.size(); ++i)
        if (!(a.binder[i] == b.binder[i])) return false;
    return a.sort == b.sort;
}

bool operator==(const SortExpr& a, const SortExpr& b) {
    if (a.head != b.head || a.args.size() != b.args.size()) return false;
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!(a.args[i] == b.args[i])) return false;
    return true;
}

static int compare_arg(const Arg& a, const Arg& b);

int compare(const Term& a, const Term& b) {
    if (a.kind != b.kind) return a.kind == Term::Kind::Var ? -1 : 1;
    if (a.kind == Term::Kind::Var) {
        if (a.index != b.index) return a.index < b.index ? -1 : 1;
    } else {
        if (int c = a.op.compare(b.op)) return c < 0 ? -1 : 1;
    }
    if (a.args.size() != b.args.size()) return a.args.size() < b.args.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (int c = compare_arg(a.args[i], b.args[i])) return c;
    return 0;
}

static int compare_sort(const SortExpr& a, const SortExpr& b) {
    if (int c = a.head.compare(b.head)) return c < 0 ? -1 : 1;
    if (a.args.size() != b.args.size()) return a.args.size() < b.args.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (int c = compare(a.args[i], b.args[i])) return c;
    return 0;
}

int compare(const SortExpr& a, const SortExpr& b) { return compare_sort(a, b); }

static int compare_arg(const Arg& a, const Arg& b) {
    if (a.binder.size() != b.binder.size())
        return a.binder.size() < b.binder.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.binder.size(); ++i)
        if (int c = compare_sort(a.binder[i].sort, b.binder[i].sort)) return c;
    return compare(a.body, b.body);
}

bool term_less(const Term& a, const Term& b) { return compare(a, b) < 0; }

static void hash_combine(std::size_t& seed, std::size_t v) {
    seed ^= v + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2);
}

std::size_t hash_value(const Term& t) {
    std::size_t h = t.kind == Term::Kind::Var ? std::size_t(t.index) * 2654435761u
                                              : std::hash<std::string>{}(t.op);
    for (const auto& a : t.args) {
        hash_combine(h, a.binder.size());
        for (const auto& b : a.binder) hash_combine(h, hash_value(b.sort));
        hash_combine(h, hash_value(a.body));
    }
    return h;
}

std::size_t hash_value(const SortExpr& s) {
    std::size_t h = std::hash<std::string>{}(s.head);
    for (const auto& t : s.args) hash_combine(h, hash_value(t));
    return h;
}

int app_nesting(const Term& t) {
    int m = 0;
    for (const auto& a : t.args) m = std::max(m, app_nesting(a.body));
    return t.kind == Term::Kind::App ? m + 1 : m;
}

int node_count(const Term& t) {
    int n = 1;
    for (const auto& a : t.args) n += node_count(a.body);
    return n;
}

Term shift_term(const Term& t, int d, int cutoff) {
    Term r = t;
    if (t.kind == Term::Kind::Var && t.index >= cutoff) r.index = t.index + d;
    for (std::size_t i = 0; i < r.args.size(); ++i) {
        const Arg& a = t.args[i];
        int inner = cutoff + static_cast<int>(a.binder.size());
        r.args[i].binder = shift_telescope(a.binder, d, cutoff);
        r.args[i].body = shift_term(a.body, d, inner);
    }
    return r;
}

SortExpr shift_sort(const SortExpr& s, int d, int cutoff) {
    SortExpr r;
    r.head = s.head;
    r.args.reserve(s.args.size());
    for (const auto& t : s.args) r.args.push_back(shift_term(t, d, cutoff));
    return r;
}

Telescope shift_telescope(const Telescope& tele, int d, int cutoff) {
    Telescope r;
    r.reserve(tele.size());
    int c = cutoff;
    for (const auto& b : tele) {
        Binding nb = b;
        nb.binder = shift_telescope(b.binder, d, c);
        nb.sort = shift_sort(b.sort, d, c + static_cast<int>(b.binder.size()));
        // binder entries of a binding are themselves bindings in the prefix;
        // the sort of the binding lives under its own binder telescope
        r.push_back(std::move(nb));
        ++c;
    }
    return r;
}

namespace {

// Core simultaneous substitution with an offset for binders crossed.
Term subst_term_at(const Term& t, const std::vector<Arg>& subs, int depth);

Telescope subst_telescope_at(const Telescope& tele, const std::vector<Arg>& subs, int depth) {
    Telescope r;
    r.reserve(tele.size());
    int d = depth;
    for (const auto& b : tele) {
        Binding nb = b;
        nb.binder = subst_telescope_at(b.binder, subs, d);
        SortExpr ns;
        ns.head = b.sort.head;
        for (const auto& a : b.sort.args)
            ns.args.push_back(subst_term_at(a, subs, d + static_cast<int>(b.binder.size())));
        nb.sort = std::move(ns);
        r.push_back(std::move(nb));
        ++d;
    }
    return r;
}

Term subst_term_at(const Term& t, const std::vector<Arg>& subs, int depth) {
    const int n = static_cast<int>(subs.size());
    if (t.kind == Term::Kind::Var) {
        // Substitute the args first (they live in the same context as t).
        std::vector<Arg> new_args;
        new_args.reserve(t.args.size());
        for (const auto& a : t.args) {
            Telescope nb = subst_telescope_at(a.binder, subs, depth);
            new_args.emplace_back(std::move(nb),
                                  subst_term_at(a.body, subs, depth + static_cast<int>(a.binder.size())));
        }
        if (t.index < depth) return Term::var(t.index, std::move(new_args));
        int k = t.index - depth;
        if (k >= n) return Term::var(t.index - n, std::move(new_args));
        // subs is in telescope order: subs[0] replaces the outermost of the
        // n innermost variables, subs[n-1] the innermost (Var(0) at depth 0).
        const Arg& rep = subs[n - 1 - k];
        if (rep.binder.empty()) {
            // Plain replacement; a first-order variable has no meta-args.
            return shift_term(rep.body, depth, 0);
        }
        // Beta-reduce the meta-application: body lives under rep.binder.
        Term body = shift_term(rep.body, depth, static_cast<int>(rep.binder.size()));
        return subst_term_at(body, new_args, 0);
    }
    Term r = t;
    for (std::size_t i = 0; i < t.args.size(); ++i) {
        const Arg& a = t.args[i];
        r.args[i].binder = subst_telescope_at(a.binder, subs, depth);
        r.args[i].body = subst_term_at(a.body, subs, depth + static_cast<int>(a.binder.size()));
    }
    return r;
}

} // namespace

Term subst_term(const Term& t, const std::vector<Arg>& subs) {
    return subst_term_at(t, subs, 0);
}

SortExpr subst_sort(const SortExpr& s, const std::vector<Arg>& subs) {
    SortExpr r;
    r.head = s.head;
    r.args.reserve(s.args.size());
    for (const auto& t : s.args) r.args.push_back(subst_term_at(t, subs, 0));
    return r;
}

Telescope subst_telescope(const Telescope& tele, const std::vector<Arg>& subs) {
    return subst_telescope_at(tele, subs, 0);
}

static void term_to_stream(std::ostringstream& os, const Term& t,
                           const std::vector<std::string>& names);

static void arg_to_stream(std::ostringstream& os, const Arg& a,
                          const std::vector<std::string>& names) {
    if (a.binder.empty()) {
        term_to_stream(os, a.body, names);
        return;
    }
    std::vector<std::string> inner = names;
    os << "([";
    for (std::size_t i = 0; i < a.binder.size(); ++i) {
        if (i) os << ", ";
        std::string nm = a.binder[i].name.empty() ? "_b" + std::to_string(i) : a.binder[i].name;
        os << nm;
        inner.push_back(nm);
    }
    os << "] ";
    term_to_stream(os, a.body, inner);
    os << ")";
}

static void term_to_stream(std::ostringstream& os, const Term& t,
                           const std::vector<std::string>& names) {
    if (t.kind == Term::Kind::Var) {
        int pos = static_cast<int>(names.size()) - 1 - t.index;
        if (pos >= 0 && pos < static_cast<int>(names.size()) && !names[pos].empty())
            os << names[pos];
        else
            os << "#" << t.index;
    } else {
        os << t.op;
    }
    if (!t.args.empty()) {
        os << "(";
        for (std::size_t i = 0; i < t.args.size(); ++i) {
            if (i) os << ", ";
            arg_to_stream(os, t.args[i], names);
        }
        os << ")";
    }
}

std::string term_to_string(const Term& t, const std::vector<std::string>& names) {
    std::ostringstream os;
    term_to_stream(os, t, names);
    return os.str();
}

std::string sort_to_string(const SortExpr& s, const std::vector<std::string>& names) {
    std::ostringstream os;
    os << s.head;
    if (!s.args.empty()) {
        os << "(";
        for (std::size_t i = 0; i < s.args.size(); ++i) {
            if (i) os << ", ";
            term_to_stream(os, s.args[i], names);
        }
        os << ")";
    }
    return os.str();
}

std::vector<std::string> context_names(const Context& ctx) {
    std::vector<std::string> names;
    names.reserve(ctx.size());
    for (std::size_t i = 0; i < ctx.size(); ++i)
        names.push_back(ctx[i].name.empty() ? "v" + std::to_string(i) : ctx[i].name);
    return names;
}

} // namespace gatwb
