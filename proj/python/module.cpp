#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dkb/dkbtext.hpp"
#include "dkb/dlprog.hpp"
#include "dkb/normalize.hpp"
#include "dkb/oracle.hpp"
#include "dkb/reason.hpp"
#include "dkb/safety.hpp"

namespace py = pybind11;
using namespace dkb;

namespace {

py::dict chi_dict(const ClashingAssumption& c, const DKB& k) {
    py::dict d;
    d["axiom"] = c.axiom_id;
    d["args"] = c.args;
    d["text"] = pretty(c, k);
    return d;
}

Mode parse_mode(const std::string& m) {
    if (m == "cautious") return Mode::Cautious;
    if (m == "brave") return Mode::Brave;
    throw py::value_error("mode must be 'cautious' or 'brave'");
}

}  // namespace

PYBIND11_MODULE(_dkbreason, m) {
    m.doc() = "Defeasible DL-Lite_R reasoning";

    static py::exception<Error> base(m, "DKBError");
    static py::exception<UnsafeKB> unsafe(m, "UnsafeKBError", base.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ParseError& e) {
            std::string msg;
            for (const auto& d : e.diagnostics) msg += (msg.empty() ? "" : "\n") + format_diagnostic(d);
            PyErr_SetString(base.ptr(), msg.c_str());
        } catch (const UnsafeKB& e) {
            PyErr_SetString(unsafe.ptr(), (std::string(e.what()) + "\n" + render(e.report)).c_str());
        } catch (const Error& e) {
            PyErr_SetString(base.ptr(), e.what());
        }
    });

    py::class_<DKB>(m, "DKB")
        .def(py::init([](const std::string& text) { return parse_dkb(text); }), py::arg("text"))
        .def("__str__", [](const DKB& k) { return serialize_dkb(k); })
        .def("__eq__", [](const DKB& a, const DKB& b) { return a == b; })
        .def_property_readonly("individuals", [](const DKB& k) { return k.vocab.individuals(); })
        .def_property_readonly("concepts", [](const DKB& k) { return k.vocab.concepts(); })
        .def_property_readonly("roles", [](const DKB& k) { return k.vocab.roles(); })
        .def("__len__", &DKB::size);

    m.def("normalize", [](const DKB& k) { return normalize(k).dkb; }, py::arg("kb"));

    m.def(
        "check",
        [](const DKB& k) {
            SafetyReport r = classify(k);
            py::dict d;
            d["exception_safe"] = r.exception_safe;
            d["chain_bound"] = r.chain_bound.unbounded ? py::object(py::none()) : py::object(py::int_(r.chain_bound.n));
            d["recursive"] = r.recursive;
            d["report"] = render(r);
            return d;
        },
        py::arg("kb"), "Safety classification; chain_bound is None when unbounded.");

    m.def("compile", [](const DKB& k) { return emit_text(assemble_program(normalize(k).dkb)); }, py::arg("kb"));

    m.def(
        "models",
        [](const DKB& k, std::optional<std::size_t> limit) {
            SolveOptions opt;
            opt.limit = limit;
            Solved s = solve(k, opt);
            py::list out;
            for (const auto& a : s.models) {
                py::list chi;
                for (const auto& c : a.chi) chi.append(chi_dict(c, s.norm.dkb));
                py::list lits;
                for (int l : a.literals) lits.append(s.ground.to_string(l));
                py::dict d;
                d["chi"] = chi;
                d["literals"] = lits;
                out.append(d);
            }
            return out;
        },
        py::arg("kb"), py::arg("limit") = py::none());

    m.def("is_satisfiable", &is_satisfiable, py::arg("kb"));

    m.def(
        "entails",
        [](const DKB& k, const std::string& assertion, const std::string& mode) {
            return entails(k, parse_assertion(assertion), parse_mode(mode)).verdict;
        },
        py::arg("kb"), py::arg("assertion"), py::arg("mode") = "cautious");

    m.def(
        "query",
        [](const DKB& k, const std::string& q, std::optional<int> depth) {
            auto r = certain_answers(k, parse_query(q, &k.vocab), depth);
            std::vector<std::vector<std::string>> out(r.answers.begin(), r.answers.end());
            return out;
        },
        py::arg("kb"), py::arg("query"), py::arg("depth") = py::none());

    m.def(
        "oracle_justified_chis",
        [](const DKB& k) {
            DKB n = normalize(k).dkb;
            py::list out;
            for (const auto& chi : oracle_justified_chis(n)) {
                py::list l;
                for (const auto& c : chi) l.append(chi_dict(c, n));
                out.append(l);
            }
            return out;
        },
        py::arg("kb"));
}
