#include "dkb/dkbtext.hpp"

#include <set>

#include "lexer.hpp"

namespace dkb {

using detail::Cursor;
using detail::ParseFailure;

ParseError::ParseError(std::vector<Diagnostic> d)
    : Error(d.empty() ? "parse error" : format_diagnostic(d.front())), diagnostics(std::move(d)) {}

namespace {

struct Side {
    bool neg = false;
    bool exists = false;
    bool bottom = false;
    std::string name;
    bool inv = false;
};

struct Stmt {
    enum class Kind { Incl, Dis, Inv, Irr, Ref, Assert, Declare, Generated, NoUna };
    Kind kind = Kind::Incl;
    bool defeasible = false;
    std::string id;
    Side l, r;
    std::string pred;
    std::vector<std::string> args;
    bool positive = true;
    NameKind decl_kind = NameKind::Concept;
    SourceSpan span;
};

Side parse_side(Cursor& c, bool right) {
    Side s;
    if (right && c.is_ident("not")) {
        c.next();
        s.neg = true;
    }
    if (right && !s.neg && c.is_ident("bottom")) {
        c.next();
        s.bottom = true;
        return s;
    }
    if (c.is_ident("exists")) {
        c.next();
        s.exists = true;
        s.name = c.ident("role name");
        if (c.accept("^-")) s.inv = true;
        return s;
    }
    s.name = c.ident(right ? "concept or role" : "concept, role or 'exists'");
    if (c.accept("^-")) s.inv = true;
    return s;
}

RoleExpr parse_role_expr(Cursor& c) {
    RoleExpr r{c.ident("role name")};
    if (c.accept("^-")) r.inverted = true;
    return r;
}

std::vector<std::string> name_list(Cursor& c) {
    std::vector<std::string> xs{c.ident("name")};
    while (c.accept(",")) xs.push_back(c.ident("name"));
    return xs;
}

Stmt parse_stmt(Cursor& c) {
    Stmt s;
    SourceSpan start = c.peek().span;

    if (c.accept("@")) {
        std::string d = c.ident("directive");
        if (d =="concepts" || d == "roles" || d == "individuals") {
            s.kind = Stmt::Kind::Declare;
            s.decl_kind = d == "concepts" ? NameKind::Concept : d == "roles" ? NameKind::Role : NameKind::Individual;
            s.args = name_list(c);
        } else if (d == "generated") {
            s.kind = Stmt::Kind::Generated;
            s.args = name_list(c);
        } else if (d == "no_una") {
            s.kind = Stmt::Kind::NoUna;
        } else {
            throw ParseFailure("unknown directive '@" + d + "'", start);
        }
    } else {
        if (c.is_ident("D") && (c.is_sym(":", 1) || c.is_sym("[", 1))) {
            c.next();
            s.defeasible = true;
            if (c.accept("[")) {
                s.id = c.ident("axiom identifier");
                c.expect("]");
            }
            c.expect(":");
        }
        const auto& head = c.peek();
        bool keyword = head.kind == detail::Token::Kind::Ident && c.is_sym("(", 1) &&
                       (head.text == "Dis" || head.text == "Inv" || head.text == "Irr" || head.text == "Ref");
        if (keyword) {
            std::string kw = c.next().text;
            c.expect("(");
            if (kw == "Dis" || kw == "Inv") {
                s.kind = kw == "Dis" ? Stmt::Kind::Dis : Stmt::Kind::Inv;
                RoleExpr a = parse_role_expr(c);
                c.expect(",");
                RoleExpr b = parse_role_expr(c);
                if (s.kind == Stmt::Kind::Inv && (a.inverted || b.inverted))
                    throw ParseFailure("Inv takes role names, not inverse roles", start);
                s.l = {false, false, false, a.name, a.inverted};
                s.r = {false, false, false, b.name, b.inverted};
            } else {
                s.kind = kw == "Irr" ? Stmt::Kind::Irr : Stmt::Kind::Ref;
                s.l.name = c.ident("role name");
                if (c.is_sym("^-")) c.fail("inverse role not allowed here");
            }
            c.expect(")");
        } else if (c.is_ident() && c.is_sym("(", 1) && !c.is_ident("exists") && !c.is_ident("not")) {
            s.kind = Stmt::Kind::Assert;
            s.pred = c.next().text;
            c.expect("(");
            s.args = name_list(c);
            c.expect(")");
        } else if (c.is_ident("not") && c.is_ident(nullptr, 1) && c.is_sym("(", 2)) {
            c.next();
            s.kind = Stmt::Kind::Assert;
            s.positive = false;
            s.pred = c.next().text;
            c.expect("(");
            s.args = name_list(c);
            c.expect(")");
        } else {
            s.kind = Stmt::Kind::Incl;
            s.l = parse_side(c, false);
            c.expect("[=");
            s.r = parse_side(c, true);
        }
    }
    SourceSpan end = c.peek().span;
    c.expect(".");
    s.span = start;
    s.span.length = end.line == start.line ? std::max(1, end.column + 1 - start.column) : 1;
    if (s.kind == Stmt::Kind::Assert && s.args.size() > 2)
        throw ParseFailure("assertions take one or two individuals", start);
    return s;
}

// '@no-una' contains a '-', which is not an identifier character; rewrite it
// before tokenizing so the directive reads as one identifier.
std::string preprocess(std::string_view text) {
    std::string s(text);
    const std::string from = "@no-una";
    for (std::size_t p = s.find(from); p != std::string::npos; p = s.find(from, p)) {
        s.replace(p, from.size(), "@no_una");
    }
    return s;
}

DKB build(const std::vector<Stmt>& stmts) {
    // Pass 1: which plain names are roles.
    std::set<std::string> roles;
    for (const auto& s : stmts) {
        switch (s.kind) {
            case Stmt::Kind::Declare:
                if (s.decl_kind == NameKind::Role) roles.insert(s.args.begin(), s.args.end());
                break;
            case Stmt::Kind::Dis:
            case Stmt::Kind::Inv:
                roles.insert(s.l.name);
                roles.insert(s.r.name);
                break;
            case Stmt::Kind::Irr:
            case Stmt::Kind::Ref: roles.insert(s.l.name); break;
            case Stmt::Kind::Assert:
                if (s.args.size() == 2) roles.insert(s.pred);
                break;
            case Stmt::Kind::Incl:
                for (const Side* sd : {&s.l, &s.r})
                    if (sd->exists || sd->inv) roles.insert(sd->name);
                break;
            default: break;
        }
    }

    DKB k;
    int def_count = 0;
    auto declare = [&](const std::string& n, NameKind kind, const SourceSpan& sp) {
        if (!k.vocab.declare(n, kind)) throw ParseFailure("name '" + n + "' used as both a concept and a role or individual", sp);
    };
    auto left_of = [&](const Side& sd, const SourceSpan& sp) {
        if (sd.exists) {
            declare(sd.name, NameKind::Role, sp);
            return LeftConcept::exists(sd.name, sd.inv);
        }
        if (sd.inv) throw ParseFailure("inverse role '" + sd.name + "^-' used as a concept", sp);
        declare(sd.name, NameKind::Concept, sp);
        return LeftConcept::atomic(sd.name);
    };
    auto next_id = [&](const Stmt& s) {
        ++def_count;
        return s.id.empty() ? "d" + std::to_string(def_count) : s.id;
    };

    for (const auto& s : stmts) {
        Axiom ax;
        bool is_axiom = true;
        switch (s.kind) {
            case Stmt::Kind::Declare:
                for (const auto& n : s.args) declare(n, s.decl_kind, s.span);
                continue;
            case Stmt::Kind::Generated:
                for (const auto& n : s.args) k.vocab.mark_generated(n);
                continue;
            case Stmt::Kind::NoUna:
                k.una = false;
                continue;
            case Stmt::Kind::Dis:
                declare(s.l.name, NameKind::Role, s.span);
                declare(s.r.name, NameKind::Role, s.span);
                ax = Axiom::dis({s.l.name, s.l.inv}, {s.r.name, s.r.inv});
                break;
            case Stmt::Kind::Inv:
                declare(s.l.name, NameKind::Role, s.span);
                declare(s.r.name, NameKind::Role, s.span);
                ax = Axiom::inv(s.l.name, s.r.name);
                break;
            case Stmt::Kind::Irr:
            case Stmt::Kind::Ref:
                declare(s.l.name, NameKind::Role, s.span);
                ax = s.kind == Stmt::Kind::Irr ? Axiom::irr(s.l.name) : Axiom::ref(s.l.name);
                break;
            case Stmt::Kind::Incl: {
                bool role_incl = !s.l.exists && !s.l.neg && (s.l.inv || roles.count(s.l.name));
                if (role_incl) {
                    if (s.r.neg || s.r.exists || s.r.bottom)
                        throw ParseFailure("right side of a role inclusion must be a role", s.span);
                    declare(s.l.name, NameKind::Role, s.span);
                    declare(s.r.name, NameKind::Role, s.span);
                    ax = Axiom::role_incl({s.l.name, s.l.inv}, {s.r.name, s.r.inv});
                    break;
                }
                LeftConcept l = left_of(s.l, s.span);
                RightConcept r;
                if (s.r.bottom) r = RightConcept::bottom();
                else if (s.r.neg) r = RightConcept::negation(left_of(s.r, s.span));
                else if (s.r.exists) r = {RightConcept::Kind::Exists, left_of(s.r, s.span)};
                else {
                    if (roles.count(s.r.name) || s.r.inv)
                        throw ParseFailure("concept '" + pretty(l) + "' included in role '" + s.r.name + "'", s.span);
                    r = {RightConcept::Kind::Atomic, left_of(s.r, s.span)};
                }
                ax = Axiom::concept_incl(l, r);
                break;
            }
            case Stmt::Kind::Assert: {
                is_axiom = false;
                Assertion a;
                if (s.args.size() == 1) {
                    declare(s.pred, NameKind::Concept, s.span);
                    declare(s.args[0], NameKind::Individual, s.span);
                    a = Assertion::concept_of(s.pred, s.args[0], s.positive);
                } else {
                    declare(s.pred, NameKind::Role, s.span);
                    declare(s.args[0], NameKind::Individual, s.span);
                    declare(s.args[1], NameKind::Individual, s.span);
                    a = Assertion::role(s.pred, s.args[0], s.args[1], s.positive);
                }
                if (s.defeasible) {
                    k.def_abox.push_back({a, next_id(s)});
                    k.spans.def_abox.push_back(s.span);
                } else {
                    k.abox.push_back(a);
                    k.spans.abox.push_back(s.span);
                }
                break;
            }
        }
        if (!is_axiom) continue;
        if (s.defeasible) {
            k.defeasible.push_back({ax, next_id(s)});
            k.spans.defeasible.push_back(s.span);
        } else {
            k.strict.push_back(ax);
            k.spans.strict.push_back(s.span);
        }
    }
    return k;
}

}  // namespace

ParseResult try_parse_dkb(std::string_view text) {
    ParseResult res;
    try {
        Cursor c(detail::tokenize(preprocess(text)));
        std::vector<Stmt> stmts;
        while (!c.at_end()) stmts.push_back(parse_stmt(c));
        DKB k = build(stmts);
        auto rep = validate_dkb(k);
        if (!rep.ok()) {
            res.diagnostics = rep.errors;
            return res;
        }
        res.diagnostics = rep.warnings;
        res.dkb = std::move(k);
    } catch (const ParseFailure& e) {
        res.diagnostics.push_back({e.what(), e.span});
    } catch (const std::exception& e) {
        res.diagnostics.push_back({e.what(), std::nullopt});
    }
    return res;
}

DKB parse_dkb(std::string_view text) {
    auto r = try_parse_dkb(text);
    if (!r.dkb) throw ParseError(r.diagnostics);
    return std::move(*r.dkb);
}

// ---------------------------------------------------------------------------

namespace {

std::string role_text(const RoleExpr& r) { return r.name + (r.inverted ? "^-" : ""); }

std::string left_text(const LeftConcept& c) {
    if (c.kind == LeftConcept::Kind::Atomic) return c.name;
    return "exists " + role_text(c.role());
}

std::string join(const std::vector<std::string>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + xs[i];
    return s;
}

}  // namespace

std::string serialize_axiom(const Axiom& a) {
    switch (a.kind) {
        case Axiom::Kind::ConceptIncl: {
            std::string r;
            switch (a.rhs.kind) {
                case RightConcept::Kind::Atomic:
                case RightConcept::Kind::Exists: r = left_text(a.rhs.c); break;
                case RightConcept::Kind::Not: r = "not " + left_text(a.rhs.c); break;
                case RightConcept::Kind::Bottom: r = "bottom"; break;
            }
            return left_text(a.lhs) + " [= " + r;
        }
        case Axiom::Kind::RoleIncl: return role_text(a.r1) + " [= " + role_text(a.r2);
        case Axiom::Kind::Dis: return "Dis(" + role_text(a.r1) + ", " + role_text(a.r2) + ")";
        case Axiom::Kind::Inv: return "Inv(" + a.r1.name + ", " + a.r2.name + ")";
        case Axiom::Kind::Irr: return "Irr(" + a.r1.name + ")";
        case Axiom::Kind::Ref: return "Ref(" + a.r1.name + ")";
    }
    return "";
}

std::string serialize_assertion(const Assertion& a) {
    std::string s = a.positive ? "" : "not ";
    if (a.kind == Assertion::Kind::Concept) return s + a.pred + "(" + a.a + ")";
    return s + a.pred + "(" + a.a + ", " + a.b + ")";
}

std::string serialize_dkb(const DKB& k) {
    std::string out = "# defeasible knowledge base\n";
    if (!k.una) out += "@no-una.\n";
    if (!k.vocab.generated().empty()) {
        out += "@generated " + join({k.vocab.generated().begin(), k.vocab.generated().end()}) + ".\n";
    }
    if (!k.vocab.concepts().empty()) out += "@concepts " + join(k.vocab.concepts()) + ".\n";
    if (!k.vocab.roles().empty()) out += "@roles " + join(k.vocab.roles()) + ".\n";
    if (!k.vocab.individuals().empty()) out += "@individuals " + join(k.vocab.individuals()) + ".\n";

    for (const auto& a : k.strict) out += serialize_axiom(a) + ".\n";
    int n = 0;
    auto prefix = [&](const std::string& id) {
        ++n;
        return id == "d" + std::to_string(n) ? std::string("D: ") : "D[" + id + "]: ";
    };
    for (const auto& d : k.defeasible) out += prefix(d.id) + serialize_axiom(d.ax) + ".\n";
    for (const auto& a : k.abox) out += serialize_assertion(a) + ".\n";
    for (const auto& d : k.def_abox) out += prefix(d.id) + serialize_assertion(d.as) + ".\n";
    return out;
}

Assertion parse_assertion(std::string_view text) {
    try {
        Cursor c(detail::tokenize(text));
        bool pos = true;
        if (c.is_ident("not")) {
            c.next();
            pos = false;
        }
        std::string pred;
        if (c.is_ident("exists")) {
            c.next();
            RoleExpr r = parse_role_expr(c);
            pred = exists_concept_name(r);
        } else {
            pred = c.ident("predicate");
        }
        c.expect("(");
        auto args = name_list(c);
        c.expect(")");
        c.accept(".");
        if (!c.at_end()) c.fail("trailing input");
        if (args.size() == 1) return Assertion::concept_of(pred, args[0], pos);
        if (args.size() == 2 && pred.rfind("_ex_", 0) != 0) return Assertion::role(pred, args[0], args[1], pos);
        throw ParseFailure("assertions take one or two individuals", {1, 1, 1});
    } catch (const ParseFailure& e) {
        throw ParseError({{e.what(), e.span}});
    }
}

std::string format_diagnostic(const Diagnostic& d, std::string_view file) {
    std::string s(file);
    if (d.span) {
        if (!s.empty()) s += ":";
        s += std::to_string(d.span->line) + ":" + std::to_string(d.span->column);
    }
    if (!s.empty()) s += ": ";
    return s + "error: " + d.message;
}

}  // namespace dkb
