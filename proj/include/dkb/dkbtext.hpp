#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dkb/kb.hpp"

namespace dkb {

class ParseError : public Error {
public:
    explicit ParseError(std::vector<Diagnostic> d);
    std::vector<Diagnostic> diagnostics;
};

struct ParseResult {
    std::optional<DKB> dkb;
    std::vector<Diagnostic> diagnostics;  // errors when dkb is empty, warnings otherwise
};

// Never throws; arbitrary bytes produce either a DKB or diagnostics.
ParseResult try_parse_dkb(std::string_view text);
// Throws ParseError.
DKB parse_dkb(std::string_view text);

std::string serialize_dkb(const DKB& k);
std::string serialize_axiom(const Axiom& a);
std::string serialize_assertion(const Assertion& a);

// A single ground assertion as typed on the command line: "A(a)",
// "not R(a,b)", or "exists R(a)" / "exists R^-(a)" for existential
// concepts, which map to their generated bridge concept.
Assertion parse_assertion(std::string_view text);

std::string format_diagnostic(const Diagnostic& d, std::string_view file = {});

}  // namespace dkb
