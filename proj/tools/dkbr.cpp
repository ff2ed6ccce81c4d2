// dkbr: command-line front end for defeasible DL-Lite_R knowledge bases.
#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "dkb/asp.hpp"
#include "dkb/dkbtext.hpp"
#include "dkb/dlprog.hpp"
#include "dkb/gen.hpp"
#include "dkb/normalize.hpp"
#include "dkb/oracle.hpp"
#include "dkb/reason.hpp"
#include "dkb/safety.hpp"

using json = nlohmann::ordered_json;
using namespace dkb;

namespace {

enum Exit { kOk = 0, kUnsafe = 1, kInvalid = 2 };

struct Config {
    std::string file;
    std::string format = "text";
    std::string out;
    std::optional<int> depth;
    std::optional<std::size_t> limit;
    std::string mode = "cautious";
    std::string assertion, query;
    std::uint64_t seed = 1;
    int count = 100;
    bool skip_incoherent = false;
};

bool structured(const Config& c) { return c.format == "structured"; }

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

struct Input {
    std::optional<DKB> dkb;
    int exit = kOk;
};

// Reads and validates; prints diagnostics and returns exit 2 on failure.
Input load(const Config& c, json& doc) {
    std::ifstream in(c.file, std::ios::binary);
    if (!in) {
        if (structured(c)) {
            doc["status"] = "invalid";
            doc["diagnostics"] = json::array({{{"message", "cannot open file"}}});
            emit(doc);
        } else {
            std::cerr << c.file << ": error: cannot open file\n";
        }
        return {std::nullopt, kInvalid};
    }
    std::stringstream ss;
    ss << in.rdbuf();
    ParseResult r = try_parse_dkb(ss.str());
    std::vector<Diagnostic> errors;
    if (r.dkb) {
        ValidationReport v = validate_dkb(*r.dkb);
        errors = v.errors;
    } else {
        errors = r.diagnostics;
    }
    if (!errors.empty()) {
        if (structured(c)) {
            doc["status"] = "invalid";
            json ds = json::array();
            for (const auto& d : errors) {
                json e{{"message", d.message}};
                if (d.span) e["span"] = {{"line", d.span->line}, {"column", d.span->column}, {"length", d.span->length}};
                ds.push_back(e);
            }
            doc["diagnostics"] = ds;
            emit(doc);
        } else {
            for (const auto& d : errors) std::cerr << format_diagnostic(d, c.file) << "\n";
        }
        return {std::nullopt, kInvalid};
    }
    return {std::move(r.dkb), kOk};
}

json atom_json(const AbstractAtom& a) {
    json types = json::array();
    for (auto t : a.arg_types) types.push_back(t == ArgType::Named ? "named" : "skolem");
    return {{"predicate", a.predicate}, {"role", a.is_role}, {"args", types}};
}

json safety_json(const SafetyReport& r) {
    json w = json::array();
    for (const auto& x : r.witnesses) {
        json chain = json::array();
        for (const auto& a : x.chain) chain.push_back(atom_json(a));
        w.push_back({{"axiom", x.fed_axiom}, {"chain", chain}, {"steps", x.steps}});
    }
    json bound = r.chain_bound.unbounded ? json("unbounded") : json(r.chain_bound.n);
    return {{"exception_safe", r.exception_safe}, {"chain_bound", bound}, {"recursive", r.recursive}, {"witnesses", w}};
}

int refuse_unsafe(const Config& c, json& doc, const SafetyReport& r) {
    if (structured(c)) {
        doc["status"] = "unsafe";
        doc["safety"] = safety_json(r);
        emit(doc);
    } else {
        std::cerr << "refusing: knowledge base is not exception-safe\n" << render(r);
    }
    return kUnsafe;
}

int refuse(const Config& c, json& doc, const std::string& msg) {
    if (structured(c)) {
        doc["status"] = "invalid";
        doc["diagnostics"] = json::array({{{"message", msg}}});
        emit(doc);
    } else {
        std::cerr << "error: " << msg << "\n";
    }
    return kInvalid;
}

// Solve with the shared error handling of the reasoning commands.
template <class F>
int with_solved(const Config& c, json& doc, F&& body) {
    Input in = load(c, doc);
    if (!in.dkb) return in.exit;
    try {
        SolveOptions opt;
        opt.limit = c.limit;
        Solved s = solve(*in.dkb, opt);
        return body(*in.dkb, s);
    } catch (const UnsafeKB& e) {
        return refuse_unsafe(c, doc, e.report);
    } catch (const Error& e) {
        return refuse(c, doc, e.what());
    }
}

int cmd_check(const Config& c) {
    json doc{{"command", "check"}, {"file", c.file}};
    Input in = load(c, doc);
    if (!in.dkb) return in.exit;
    Normalized n;
    try {
        n = normalize(*in.dkb);
    } catch (const Error& e) {
        return refuse(c, doc, e.what());
    }
    SafetyReport r = classify(n.dkb);
    std::vector<std::string> warnings;
    for (const auto& w : validate_dkb(*in.dkb).warnings) warnings.push_back(w.message);
    if (structured(c)) {
        doc["status"] = r.exception_safe ? "safe" : "unsafe";
        doc["safety"] = safety_json(r);
        doc["warnings"] = warnings;
        doc["normalized_size"] = n.dkb.size();
        emit(doc);
    } else {
        for (const auto& w : warnings) std::cerr << c.file << ": warning: " << w << "\n";
        std::cout << render(r);
    }
    return r.exception_safe ? kOk : kUnsafe;
}

int cmd_compile(const Config& c) {
    json doc{{"command", "compile"}, {"file", c.file}};
    Input in = load(c, doc);
    if (!in.dkb) return in.exit;
    std::string text;
    try {
        text = emit_text(assemble_program(normalize(*in.dkb).dkb));
    } catch (const UnsafeKB& e) {
        return refuse_unsafe(c, doc, e.report);
    } catch (const Error& e) {
        return refuse(c, doc, e.what());
    }
    if (!c.out.empty()) {
        std::ofstream f(c.out, std::ios::binary);
        if (!f) return refuse(c, doc, "cannot write '" + c.out + "'");
        f << text;
    }
    if (structured(c)) {
        doc["status"] = "ok";
        if (c.out.empty()) doc["program"] = text;
        else doc["output"] = c.out;
        emit(doc);
    } else if (c.out.empty()) {
        std::cout << text;
    }
    return kOk;
}

// Named, non-auxiliary literals of an answer set, in DL notation.
std::vector<std::string> abox_view(const Solved& s, const AnswerSet& a) {
    const auto& g = s.ground;
    const auto& v = s.norm.dkb.vocab;
    std::vector<std::string> out;
    for (int id : a.literals) {
        const GLit& l = g.lits[id];
        const std::string& p = g.preds[l.pred];
        auto named = [&](int t) { return v.has(g.universe[t], NameKind::Individual); };
        if (p == "instd" && named(l.args[0]))
            out.push_back(pretty(Assertion::concept_of(g.universe[l.args[1]], g.universe[l.args[0]], !l.neg)));
        else if (p == "tripled" && named(l.args[0]) && named(l.args[2]))
            out.push_back(pretty(Assertion::role(g.universe[l.args[1]], g.universe[l.args[0]], g.universe[l.args[2]], !l.neg)));
    }
    return out;
}

int cmd_models(const Config& c) {
    json doc{{"command", "models"}, {"file", c.file}};
    return with_solved(c, doc, [&](const DKB&, const Solved& s) {
        auto just = justified_assumptions(s);
        if (structured(c)) {
            doc["status"] = "ok";
            doc["strict_unsat"] = s.models.empty() && !s.strict_satisfiable;
            json ms = json::array();
            for (std::size_t i = 0; i < s.models.size(); ++i) {
                json ovr = json::array();
                for (const auto& [ca, via] : just[i].via) {
                    json o{{"axiom", ca.axiom_id}, {"args", ca.args}, {"text", pretty(ca, s.norm.dkb)}};
                    if (via) o["clashing_set"] = pretty(*via);
                    ovr.push_back(o);
                }
                json lits = json::array();
                for (int id : s.models[i].literals) lits.push_back(s.ground.to_string(id));
                ms.push_back({{"chi", ovr}, {"abox", abox_view(s, s.models[i])}, {"literals", lits}});
            }
            doc["models"] = ms;
            emit(doc);
            return kOk;
        }
        if (s.models.empty()) {
            std::cout << (s.strict_satisfiable ? "no answer sets\n" : "UNSATISFIABLE (strict)\n");
            return kOk;
        }
        std::cout << s.models.size() << " answer set" << (s.models.size() == 1 ? "" : "s") << "\n";
        for (std::size_t i = 0; i < s.models.size(); ++i) {
            std::cout << "answer set " << i + 1 << "\n";
            if (just[i].via.empty()) std::cout << "  no overrides\n";
            for (const auto& [ca, via] : just[i].via) {
                std::cout << "  override: " << pretty(ca, s.norm.dkb);
                if (via) std::cout << "  via " << pretty(*via);
                std::cout << "\n";
            }
            for (const auto& f : abox_view(s, s.models[i])) std::cout << "  " << f << "\n";
        }
        return kOk;
    });
}

int cmd_entail(const Config& c) {
    json doc{{"command", "entail"}, {"file", c.file}, {"assertion", c.assertion}, {"mode", c.mode}};
    return with_solved(c, doc, [&](const DKB&, const Solved& s) {
        Assertion q = parse_assertion(c.assertion);
        EntailmentResult r = entails(s, q, c.mode == "brave" ? Mode::Brave : Mode::Cautious);
        if (structured(c)) {
            doc["status"] = "ok";
            doc["verdict"] = r.verdict;
            doc["models"] = r.models;
            doc["strict_unsat"] = r.strict_unsat;
            json w = json::array();
            for (const auto& chi : r.witnesses) {
                json x = json::array();
                for (const auto& ca : chi) x.push_back(pretty(ca, s.norm.dkb));
                w.push_back(x);
            }
            doc["witnesses"] = w;
            emit(doc);
            return kOk;
        }
        if (r.strict_unsat) std::cout << "UNSATISFIABLE (strict)\n";
        std::cout << (r.verdict ? "true" : "false") << "\n";
        return kOk;
    });
}

int cmd_query(const Config& c) {
    json doc{{"command", "query"}, {"file", c.file}, {"query", c.query}};
    return with_solved(c, doc, [&](const DKB&, const Solved& s) {
        ConjunctiveQuery q = parse_query(c.query, &s.norm.dkb.vocab);
        QueryResult r = certain_answers(s, q, c.depth);
        if (structured(c)) {
            doc["status"] = "ok";
            doc["depth"] = r.depth;
            doc["strict_unsat"] = r.strict_unsat;
            doc["answers"] = json(std::vector<std::vector<std::string>>(r.answers.begin(), r.answers.end()));
            doc["warnings"] = r.warnings;
            emit(doc);
            return kOk;
        }
        for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
        if (r.strict_unsat) std::cout << "UNSATISFIABLE (strict)\n";
        for (const auto& t : r.answers) {
            std::cout << "(";
            for (std::size_t i = 0; i < t.size(); ++i) std::cout << (i ? ", " : "") << t[i];
            std::cout << ")\n";
        }
        return kOk;
    });
}

int cmd_fuzz(const Config& c) {
    json doc{{"command", "fuzz"}, {"seed", c.seed}, {"count", c.count}};
    int agree = 0, skipped = 0;
    for (int i = 0; i < c.count; ++i) {
        std::uint64_t seed = c.seed + std::uint64_t(i);
        DKB k = random_dkb(seed);
        DiffOutcome o;
        try {
            o = differential_check(k, c.skip_incoherent);
        } catch (const Error& e) {
            o = {DiffOutcome::Kind::Mismatch, std::string("exception: ") + e.what()};
        }
        if (o.kind == DiffOutcome::Kind::Skipped) {
            ++skipped;
            continue;
        }
        if (o.kind == DiffOutcome::Kind::Agree) {
            ++agree;
            continue;
        }
        DKB small = minimize(k, [&](const DKB& t) {
            try {
                return differential_check(t, c.skip_incoherent).kind == DiffOutcome::Kind::Mismatch;
            } catch (const Error&) {
                return true;
            }
        });
        std::string detail;
        try {
            detail = differential_check(small, c.skip_incoherent).detail;
        } catch (const Error& e) {
            detail = e.what();
        }
        if (structured(c)) {
            doc["status"] = "mismatch";
            doc["failing_seed"] = seed;
            doc["detail"] = detail;
            doc["counterexample"] = serialize_dkb(small);
            emit(doc);
        } else {
            std::cout << "mismatch at seed " << seed << ": " << detail << "\n"
                      << "minimized counterexample:\n"
                      << serialize_dkb(small);
        }
        return 1;
    }
    if (structured(c)) {
        doc["status"] = "ok";
        doc["compared"] = agree;
        doc["skipped"] = skipped;
        emit(doc);
    } else {
        std::cout << "fuzz: " << agree << " compared, " << skipped << " skipped, 0 mismatches\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reasoner for defeasible DL-Lite_R knowledge bases"};
    app.require_subcommand(1);
    Config c;
    auto fmt = [&](CLI::App* s) {
        s->add_option("--format", c.format, "text or structured (JSON)")->check(CLI::IsMember({"text", "structured"}));
    };

    auto* check = app.add_subcommand("check", "validate, normalize and classify safety");
    check->add_option("file", c.file)->required();
    fmt(check);

    auto* compile = app.add_subcommand("compile", "emit the datalog program");
    compile->add_option("file", c.file)->required();
    compile->add_option("-o,--output", c.out, "write the program to this file");
    fmt(compile);

    auto* models = app.add_subcommand("models", "list answer sets with their overrides");
    models->add_option("file", c.file)->required();
    models->add_option("--limit", c.limit, "stop after this many answer sets");
    fmt(models);

    auto* entail = app.add_subcommand("entail", "decide entailment of a ground assertion");
    entail->add_option("file", c.file)->required();
    entail->add_option("assertion", c.assertion, "e.g. 'exists hasCourse(alice)' or 'not B(c)'")->required();
    entail->add_option("--mode", c.mode)->check(CLI::IsMember({"cautious", "brave"}));
    fmt(entail);

    auto* query = app.add_subcommand("query", "certain answers of a conjunctive query");
    query->add_option("file", c.file)->required();
    query->add_option("query", c.query, "e.g. '?(x) :- DeptMember(x), hasCourse(x,y).'")->required();
    query->add_option("--depth", c.depth, "Skolem depth of the chase");
    fmt(query);

    auto* fuzz = app.add_subcommand("fuzz", "differential test of the oracle against the pipeline");
    fuzz->add_option("--seed", c.seed);
    fuzz->add_option("--count", c.count)->check(CLI::NonNegativeNumber);
    fuzz->add_flag("--skip-incoherent", c.skip_incoherent, "also skip DKBs with an unsatisfiable concept or role");
    fmt(fuzz);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kInvalid;
    }

    try {
        if (*check) return cmd_check(c);
        if (*compile) return cmd_compile(c);
        if (*models) return cmd_models(c);
        if (*entail) return cmd_entail(c);
        if (*query) return cmd_query(c);
        if (*fuzz) return cmd_fuzz(c);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    }
    return kInvalid;
}
