#pragma once

#include <string>
#include <vector>

#include "dkb/kb.hpp"
#include "dkb/safety.hpp"

namespace dkb {

struct DTerm {
    enum class Kind { Const, Aux, Var };
    Kind kind = Kind::Const;
    std::string name;
    std::string origin;  // for Aux: the existential axiom it stands for

    static DTerm constant(std::string n) { return {Kind::Const, std::move(n), {}}; }
    static DTerm var(std::string n) { return {Kind::Var, std::move(n), {}}; }
    static DTerm aux(std::string n, std::string origin) { return {Kind::Aux, std::move(n), std::move(origin)}; }
    bool is_var() const { return kind == Kind::Var; }
    bool operator==(const DTerm& o) const { return kind == o.kind && name == o.name; }
};

struct DAtom {
    std::string pred;
    std::vector<DTerm> args;
    bool operator==(const DAtom&) const = default;
};

struct DLiteral {
    DAtom atom;
    bool strong_neg = false;
    bool operator==(const DLiteral&) const = default;
};

struct DRule {
    std::string label;
    DLiteral head;
    std::vector<DLiteral> body_pos;
    std::vector<DLiteral> body_naf;
};

// Links ovr atoms back to the defeasible axiom they override.
struct OverrideKey {
    std::string tag;                   // subClass | subRole | inv | irr
    std::vector<std::string> symbols;  // the axiom's concept/role names
    std::string axiom_id;
};

struct DProgram {
    std::vector<DRule> rules;
    std::vector<DLiteral> facts;
    std::vector<std::string> chain;  // canonical constant order (individuals, then aux)
    std::vector<OverrideKey> overrides;
};

class UnsafeKB : public Error {
public:
    explicit UnsafeKB(SafetyReport r) : Error("knowledge base is not exception-safe"), report(std::move(r)) {}
    SafetyReport report;
};

// Predicates of the translation signature with their arities.
const std::vector<std::pair<std::string, int>>& translation_signature();

std::vector<DLiteral> input_translation(const DKB& normal);
std::vector<DRule> deduction_rules();
DProgram assemble_program(const DKB& normal);
DLiteral output_atom(const DKB& k, const Assertion& q);
std::string emit_text(const DProgram& p);

std::string to_string(const DLiteral& l);
std::string to_string(const DRule& r);
bool rule_is_safe(const DRule& r);

// Constant in emitted syntax: bare when it is a valid lowercase-initial
// identifier, quoted otherwise.
std::string emit_constant(const std::string& c);

}  // namespace dkb
