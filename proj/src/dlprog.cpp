#include "dkb/dlprog.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "dkb/normalize.hpp"

namespace dkb {

const std::vector<std::pair<std::string, int>>& translation_signature() {
    static const std::vector<std::pair<std::string, int>> sig{
        {"nom", 1},          {"cls", 1},          {"rol", 1},       {"insta", 2},     {"triplea", 3},
        {"subClass", 2},     {"supNot", 2},       {"subEx", 2},     {"supEx", 3},     {"subRole", 2},
        {"dis", 2},          {"inv", 2},          {"irr", 1},       {"def_subclass", 2}, {"def_subr", 2},
        {"def_inv", 2},      {"def_irr", 1},      {"const", 1},     {"first", 1},     {"next", 2},
        {"last", 1},         {"instd", 2},        {"tripled", 3},   {"all_nrel_step", 3}, {"all_nrel", 2},
        {"ovr", -1},
    };
    return sig;
}

namespace {

DLiteral fact(const std::string& pred, std::vector<std::string> args) {
    DLiteral l{{pred, {}}, false};
    for (auto& a : args) l.atom.args.push_back(DTerm::constant(std::move(a)));
    return l;
}

// Rule builder: arguments starting with an uppercase letter are variables.
DLiteral L(const std::string& pred, std::initializer_list<const char*> args, bool neg = false) {
    DLiteral l{{pred, {}}, neg};
    for (const char* a : args) {
        std::string s(a);
        l.atom.args.push_back(s[0] >= 'A' && s[0] <= 'Z' ? DTerm::var(s) : DTerm::constant(s));
    }
    return l;
}
DLiteral N(const std::string& pred, std::initializer_list<const char*> args) { return L(pred, args, true); }

DRule R(std::string label, DLiteral head, std::vector<DLiteral> pos, std::vector<DLiteral> naf = {}) {
    return {std::move(label), std::move(head), std::move(pos), std::move(naf)};
}

int signature_rank(const std::string& pred) {
    const auto& sig = translation_signature();
    for (std::size_t i = 0; i < sig.size(); ++i)
        if (sig[i].first == pred) return int(i);
    return int(sig.size());
}

}  // namespace

std::vector<DRule> deduction_rules() {
    return {
        R("pdlr-instd", L("instd", {"X", "Z"}), {L("insta", {"X", "Z"})}),
        R("pdlr-tripled", L("tripled", {"X", "R", "Y"}), {L("triplea", {"X", "R", "Y"})}),
        R("pdlr-subc", L("instd", {"X", "Z"}), {L("subClass", {"Y", "Z"}), L("instd", {"X", "Y"})}),
        R("pdlr-supnot", N("instd", {"X", "Z"}), {L("supNot", {"Y", "Z"}), L("instd", {"X", "Y"})}),
        R("pdlr-subex", L("instd", {"X", "Z"}), {L("subEx", {"V", "Z"}), L("tripled", {"X", "V", "X1"})}),
        R("pdlr-supex", L("tripled", {"X", "R", "X1"}), {L("supEx", {"Y", "R", "X1"}), L("instd", {"X", "Y"})}),
        R("pdlr-subr", L("tripled", {"X", "W", "X1"}), {L("subRole", {"V", "W"}), L("tripled", {"X", "V", "X1"})}),
        R("pdlr-dis1", N("tripled", {"X", "U", "Y"}), {L("dis", {"U", "V"}), L("tripled", {"X", "V", "Y"})}),
        R("pdlr-dis2", N("tripled", {"X", "V", "Y"}), {L("dis", {"U", "V"}), L("tripled", {"X", "U", "Y"})}),
        R("pdlr-inv1", L("tripled", {"Y", "V", "X"}), {L("inv", {"U", "V"}), L("tripled", {"X", "U", "Y"})}),
        R("pdlr-inv2", L("tripled", {"Y", "U", "X"}), {L("inv", {"U", "V"}), L("tripled", {"X", "V", "Y"})}),
        R("pdlr-irr", N("tripled", {"X", "U", "X"}), {L("irr", {"U"}), L("const", {"X"})}),
        R("pdlr-nsubc", N("instd", {"X", "Y"}), {L("subClass", {"Y", "Z"}), N("instd", {"X", "Z"})}),
        R("pdlr-nsupnot", N("instd", {"X", "Y"}), {L("supNot", {"Y", "Z"}), L("instd", {"X", "Z"})}),
        R("pdlr-nsubex", N("tripled", {"X", "V", "X1"}),
          {L("subEx", {"V", "Z"}), L("const", {"X1"}), N("instd", {"X", "Z"})}),
        R("pdlr-nsupex", N("instd", {"X", "Y"}),
          {L("supEx", {"Y", "R", "W"}), L("const", {"X"}), L("all_nrel", {"X", "R"})}),
        R("pdlr-nsubr", N("tripled", {"X", "V", "X1"}), {L("subRole", {"V", "W"}), N("tripled", {"X", "W", "X1"})}),
        R("pdlr-ninv1", N("tripled", {"Y", "V", "X"}), {L("inv", {"U", "V"}), N("tripled", {"X", "U", "Y"})}),
        R("pdlr-ninv2", N("tripled", {"Y", "U", "X"}), {L("inv", {"U", "V"}), N("tripled", {"X", "V", "Y"})}),
        R("pdlr-allnrel1", L("all_nrel_step", {"X", "R", "Y"}), {L("first", {"Y"}), N("tripled", {"X", "R", "Y"})}),
        R("pdlr-allnrel2", L("all_nrel_step", {"X", "R", "Y"}),
          {L("all_nrel_step", {"X", "R", "Y1"}), L("next", {"Y1", "Y"}), N("tripled", {"X", "R", "Y"})}),
        R("pdlr-allnrel3", L("all_nrel", {"X", "R"}), {L("last", {"Y"}), L("all_nrel_step", {"X", "R", "Y"})}),

        R("ovr-subc", L("ovr", {"subClass", "X", "Y", "Z"}),
          {L("def_subclass", {"Y", "Z"}), L("instd", {"X", "Y"}), N("instd", {"X", "Z"})}),
        R("ovr-subr", L("ovr", {"subRole", "X", "Y", "R", "S"}),
          {L("def_subr", {"R", "S"}), L("tripled", {"X", "R", "Y"}), N("tripled", {"X", "S", "Y"})}),
        R("ovr-inv1", L("ovr", {"inv", "X", "Y", "R", "S"}),
          {L("def_inv", {"R", "S"}), L("tripled", {"X", "R", "Y"}), N("tripled", {"Y", "S", "X"})}),
        R("ovr-inv2", L("ovr", {"inv", "X", "Y", "R", "S"}),
          {L("def_inv", {"R", "S"}), L("tripled", {"Y", "S", "X"}), N("tripled", {"X", "R", "Y"})}),
        R("ovr-irr", L("ovr", {"irr", "X", "R"}), {L("def_irr", {"R"}), L("tripled", {"X", "R", "X"})}),

        R("app-subc", L("instd", {"X", "Z"}), {L("def_subclass", {"Y", "Z"}), L("instd", {"X", "Y"})},
          {L("ovr", {"subClass", "X", "Y", "Z"})}),
        R("app-subr", L("tripled", {"X", "W", "Y"}), {L("def_subr", {"V", "W"}), L("tripled", {"X", "V", "Y"})},
          {L("ovr", {"subRole", "X", "Y", "V", "W"})}),
        R("app-inv1", L("tripled", {"Y", "V", "X"}), {L("def_inv", {"U", "V"}), L("tripled", {"X", "U", "Y"})},
          {L("ovr", {"inv", "X", "Y", "U", "V"})}),
        R("app-inv2", L("tripled", {"X", "U", "Y"}), {L("def_inv", {"U", "V"}), L("tripled", {"Y", "V", "X"})},
          {L("ovr", {"inv", "X", "Y", "U", "V"})}),
        R("app-irr", N("tripled", {"X", "U", "X"}), {L("def_irr", {"U"}), L("const", {"X"})},
          {L("ovr", {"irr", "X", "U"})}),
        R("app-nsubc", N("instd", {"X", "Y"}), {L("def_subclass", {"Y", "Z"}), N("instd", {"X", "Z"})},
          {L("ovr", {"subClass", "X", "Y", "Z"})}),
        R("app-nsubr", N("tripled", {"X", "V", "Y"}), {L("def_subr", {"V", "W"}), N("tripled", {"X", "W", "Y"})},
          {L("ovr", {"subRole", "X", "Y", "V", "W"})}),
        R("app-ninv1", N("tripled", {"Y", "V", "X"}), {L("def_inv", {"U", "V"}), N("tripled", {"X", "U", "Y"})},
          {L("ovr", {"inv", "X", "Y", "U", "V"})}),
        R("app-ninv2", N("tripled", {"X", "U", "Y"}), {L("def_inv", {"U", "V"}), N("tripled", {"Y", "V", "X"})},
          {L("ovr", {"inv", "X", "Y", "U", "V"})}),
    };
}

namespace {

struct Translation {
    std::vector<DLiteral> facts;
    std::vector<std::string> aux;  // aux constants in creation order
    std::vector<OverrideKey> overrides;
};

Translation translate(const DKB& k) {
    if (!is_normal_form(k)) throw NotNormalForm();
    Translation t;
    auto& f = t.facts;
    for (const auto& a : k.vocab.individuals()) f.push_back(fact("nom", {a}));
    for (const auto& c : k.vocab.concepts()) f.push_back(fact("cls", {c}));
    for (const auto& r : k.vocab.roles()) f.push_back(fact("rol", {r}));
    for (const auto& a : k.abox) {
        if (a.kind == Assertion::Kind::Concept) f.push_back(fact("insta", {a.a, a.pred}));
        else f.push_back(fact("triplea", {a.a, a.pred, a.b}));
    }
    for (std::size_t i = 0; i < k.strict.size(); ++i) {
        const Axiom& a = k.strict[i];
        switch (a.kind) {
            case Axiom::Kind::ConceptIncl:
                if (a.lhs.kind == LeftConcept::Kind::Exists) {
                    f.push_back(fact("subEx", {a.lhs.name, a.rhs.c.name}));
                } else if (a.rhs.kind == RightConcept::Kind::Exists) {
                    std::string aux = "aux_" + std::to_string(t.aux.size() + 1);
                    t.aux.push_back(aux);
                    DLiteral l = fact("supEx", {a.lhs.name, a.rhs.c.name});
                    l.atom.args.push_back(DTerm::aux(aux, "s" + std::to_string(i + 1)));
                    f.push_back(l);
                } else if (a.rhs.kind == RightConcept::Kind::Not) {
                    f.push_back(fact("supNot", {a.lhs.name, a.rhs.c.name}));
                } else {
                    f.push_back(fact("subClass", {a.lhs.name, a.rhs.c.name}));
                }
                break;
            case Axiom::Kind::RoleIncl: f.push_back(fact("subRole", {a.r1.name, a.r2.name})); break;
            case Axiom::Kind::Dis: f.push_back(fact("dis", {a.r1.name, a.r2.name})); break;
            case Axiom::Kind::Inv: f.push_back(fact("inv", {a.r1.name, a.r2.name})); break;
            case Axiom::Kind::Irr: f.push_back(fact("irr", {a.r1.name})); break;
            case Axiom::Kind::Ref: throw Error("reflexivity unsupported");
        }
    }
    for (const auto& d : k.defeasible) {
        const Axiom& a = d.ax;
        switch (a.kind) {
            case Axiom::Kind::ConceptIncl:
                f.push_back(fact("def_subclass", {a.lhs.name, a.rhs.c.name}));
                t.overrides.push_back({"subClass", {a.lhs.name, a.rhs.c.name}, d.id});
                break;
            case Axiom::Kind::RoleIncl:
                f.push_back(fact("def_subr", {a.r1.name, a.r2.name}));
                t.overrides.push_back({"subRole", {a.r1.name, a.r2.name}, d.id});
                break;
            case Axiom::Kind::Inv:
                f.push_back(fact("def_inv", {a.r1.name, a.r2.name}));
                t.overrides.push_back({"inv", {a.r1.name, a.r2.name}, d.id});
                break;
            case Axiom::Kind::Irr:
                f.push_back(fact("def_irr", {a.r1.name}));
                t.overrides.push_back({"irr", {a.r1.name}, d.id});
                break;
            default: throw NotNormalForm();
        }
    }
    return t;
}

std::string term_text(const DTerm& t) { return t.is_var() ? t.name : emit_constant(t.name); }

std::string atom_text(const DAtom& a) {
    std::string s = a.pred;
    if (a.args.empty()) return s;
    s += "(";
    for (std::size_t i = 0; i < a.args.size(); ++i) s += (i ? "," : "") + term_text(a.args[i]);
    return s + ")";
}

}  // namespace

std::vector<DLiteral> input_translation(const DKB& k) { return translate(k).facts; }

DProgram assemble_program(const DKB& k) {
    if (!is_normal_form(k)) throw NotNormalForm();
    if (!check_exception_safe(k).exception_safe) throw UnsafeKB(classify(k));
    Translation t = translate(k);
    DProgram p;
    p.rules = deduction_rules();
    p.overrides = t.overrides;
    p.chain = k.vocab.individuals();
    p.chain.insert(p.chain.end(), t.aux.begin(), t.aux.end());
    p.facts = t.facts;
    for (const auto& c : p.chain) p.facts.push_back(fact("const", {c}));
    if (!p.chain.empty()) {
        p.facts.push_back(fact("first", {p.chain.front()}));
        for (std::size_t i = 0; i + 1 < p.chain.size(); ++i) p.facts.push_back(fact("next", {p.chain[i], p.chain[i + 1]}));
        p.facts.push_back(fact("last", {p.chain.back()}));
    }

    std::map<std::string, int> rank;
    for (std::size_t i = 0; i < p.chain.size(); ++i) rank[p.chain[i]] = int(i);
    auto const_less = [&](const std::string& a, const std::string& b) {
        auto ia = rank.find(a), ib = rank.find(b);
        bool ca = ia != rank.end(), cb = ib != rank.end();
        if (ca != cb) return ca;
        if (ca) return ia->second < ib->second;
        return a < b;
    };
    std::stable_sort(p.facts.begin(), p.facts.end(), [&](const DLiteral& x, const DLiteral& y) {
        int rx = signature_rank(x.atom.pred), ry = signature_rank(y.atom.pred);
        if (rx != ry) return rx < ry;
        const auto &ax = x.atom.args, &ay = y.atom.args;
        for (std::size_t i = 0; i < std::min(ax.size(), ay.size()); ++i) {
            if (ax[i].name == ay[i].name) continue;
            return const_less(ax[i].name, ay[i].name);
        }
        return ax.size() < ay.size();
    });
    return p;
}

DLiteral output_atom(const DKB& k, const Assertion& q) {
    if (q.kind == Assertion::Kind::Concept) {
        if (!k.vocab.has(q.pred, NameKind::Concept)) throw Error("undeclared concept '" + q.pred + "'");
        if (!k.vocab.has(q.a, NameKind::Individual)) throw Error("undeclared individual '" + q.a + "'");
        DLiteral l = fact("instd", {q.a, q.pred});
        l.strong_neg = !q.positive;
        return l;
    }
    if (!k.vocab.has(q.pred, NameKind::Role)) throw Error("undeclared role '" + q.pred + "'");
    for (const auto& x : {q.a, q.b})
        if (!k.vocab.has(x, NameKind::Individual)) throw Error("undeclared individual '" + x + "'");
    DLiteral l = fact("tripled", {q.a, q.pred, q.b});
    l.strong_neg = !q.positive;
    return l;
}

std::string emit_constant(const std::string& c) {
    bool bare = !c.empty() && c[0] >= 'a' && c[0] <= 'z' &&
                std::all_of(c.begin(), c.end(), [](char ch) { return std::isalnum((unsigned char)ch) || ch == '_'; });
    return bare ? c : "\"" + c + "\"";
}

std::string to_string(const DLiteral& l) { return (l.strong_neg ? "-" : "") + atom_text(l.atom); }

std::string to_string(const DRule& r) {
    std::string s = to_string(r.head);
    if (r.body_pos.empty() && r.body_naf.empty()) return s + ".";
    s += " :- ";
    bool first = true;
    for (const auto& b : r.body_pos) {
        s += (first ? "" : ", ") + to_string(b);
        first = false;
    }
    for (const auto& b : r.body_naf) {
        s += (first ? "not " : ", not ") + to_string(b);
        first = false;
    }
    return s + ".";
}

bool rule_is_safe(const DRule& r) {
    std::set<std::string> bound;
    for (const auto& b : r.body_pos)
        for (const auto& t : b.atom.args)
            if (t.is_var()) bound.insert(t.name);
    auto covered = [&](const DLiteral& l) {
        for (const auto& t : l.atom.args)
            if (t.is_var() && !bound.count(t.name)) return false;
        return true;
    };
    if (!covered(r.head)) return false;
    for (const auto& n : r.body_naf)
        if (!covered(n)) return false;
    return true;
}

std::string emit_text(const DProgram& p) {
    std::string out = "% input facts\n";
    for (const auto& f : p.facts) out += to_string(f) + ".\n";
    out += "\n% deduction rules\n";
    for (const auto& r : p.rules) out += to_string(r) + "\n";
    return out;
}

}  // namespace dkb
