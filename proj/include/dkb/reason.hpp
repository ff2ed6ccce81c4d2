#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dkb/asp.hpp"
#include "dkb/kb.hpp"
#include "dkb/normalize.hpp"
#include "dkb/safety.hpp"

namespace dkb {

enum class Mode { Cautious, Brave };

// Input checks shared by the reasoning operations: validation errors, no-UNA.
class UnsupportedInput : public Error {
public:
    using Error::Error;
};

// Normalized, safety-checked and solved DKB.
struct Solved {
    Normalized norm;
    SafetyReport safety;
    GroundProgram ground;
    std::vector<AnswerSet> models;
    bool strict_satisfiable = true;
};

// Throws UnsupportedInput, or UnsafeKB when the KB is not exception-safe.
Solved solve(const DKB& k, const SolveOptions& opt = {});

bool is_satisfiable(const DKB& k);

struct EntailmentResult {
    bool verdict = false;
    Mode mode = Mode::Cautious;
    bool strict_unsat = false;
    std::size_t models = 0;
    std::vector<Chi> witnesses;  // cautious: a refuting model; brave: a supporting one
};

EntailmentResult entails(const DKB& k, const Assertion& q, Mode mode);
EntailmentResult entails(const Solved& s, const Assertion& q, Mode mode);

struct JustifiedChi {
    Chi chi;
    // assumption -> clashing set found in the answer set
    std::vector<std::pair<ClashingAssumption, std::optional<ClashingSet>>> via;
};

std::vector<JustifiedChi> justified_assumptions(const DKB& k);
std::vector<JustifiedChi> justified_assumptions(const Solved& s);

struct QTerm {
    bool var = true;
    std::string name;
    bool operator==(const QTerm&) const = default;
};

struct QAtom {
    std::string pred;
    std::vector<QTerm> args;  // one for concepts, two for roles
    bool operator==(const QAtom&) const = default;
};

struct ConjunctiveQuery {
    std::vector<std::string> answer_vars;
    std::vector<std::string> exist_vars;
    std::vector<QAtom> atoms;
};

// "?(x) :- DeptMember(x), hasCourse(x,y)."  Terms naming a declared
// individual of `vocab` are constants; everything else is a variable.
ConjunctiveQuery parse_query(std::string_view text, const Vocabulary* vocab = nullptr);
std::string to_string(const ConjunctiveQuery& q);

struct QueryResult {
    std::set<std::vector<std::string>> answers;
    int depth = 0;
    bool strict_unsat = false;
    std::vector<std::string> warnings;
};

QueryResult certain_answers(const DKB& k, const ConjunctiveQuery& q, std::optional<int> skolem_depth = {});
QueryResult certain_answers(const Solved& s, const ConjunctiveQuery& q, std::optional<int> skolem_depth = {});

}  // namespace dkb
