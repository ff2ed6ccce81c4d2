#include <sys/wait.h>

#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "json.hpp"
#include "support.hpp"

#ifndef DKBR_PATH
#error "DKBR_PATH must point at the dkbr binary"
#endif

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run dkbr(const std::string& args) {
    std::string cmd = std::string(DKBR_PATH) + " " + args + " 2>&1";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string data(const std::string& f) { return "'" + dkbtest::data_path(f) + "'"; }

std::string temp_file(const std::string& name, const std::string& body) {
    std::string path = std::string(DKB_TEST_TMP) + "/" + name;
    std::ofstream(path) << body;
    return path;
}

bool has(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("check") {
    auto d = dkbr("check " + data("dept.dkb"));
    CHECK(d.code == 0);
    CHECK(has(d.out, "exception-safe, chain bound 1"));

    auto e = dkbr("check " + data("example5.dkb"));
    CHECK(e.code == 1);
    CHECK(has(e.out, "not exception-safe"));
    CHECK(has(e.out, "witness"));

    auto bad = dkbr("check '" + temp_file("bad.dkb", "A [= B.\nC [= .\n") + "'");
    CHECK(bad.code == 2);
    CHECK(has(bad.out, "bad.dkb:2:"));

    CHECK(dkbr("check /nonexistent/file.dkb").code == 2);
    CHECK(dkbr("check '" + temp_file("ref.dkb", "Ref(R).\n") + "'").code == 2);
}

TEST_CASE("compile") {
    auto d = dkbr("compile " + data("dept.dkb"));
    CHECK(d.code == 0);
    CHECK(has(d.out, "supEx(\"_ex_hasCourse\",hasCourse,aux_1)."));
    CHECK(d.out == dkbr("compile " + data("dept.dkb")).out);

    auto empty = dkbr("compile '" + temp_file("empty.dkb", "") + "'");
    CHECK(empty.code == 0);
    CHECK_FALSE(has(empty.out, "\nconst("));
    CHECK(has(empty.out, ":-"));

    CHECK(dkbr("compile " + data("example5.dkb")).code == 1);

    std::string out = std::string(DKB_TEST_TMP) + "/dept_out.lp";
    CHECK(dkbr("compile " + data("dept.dkb") + " -o '" + out + "'").code == 0);
    CHECK(dkbtest::slurp(out) == d.out);
}

TEST_CASE("models") {
    auto d = dkbr("models " + data("dept.dkb"));
    CHECK(d.code == 0);
    CHECK(has(d.out, "1 answer set"));
    CHECK(has(d.out, "override: DeptMember ⊑ ∃hasCourse @ bob"));

    auto n = dkbr("models " + data("nixon.dkb"));
    CHECK(has(n.out, "2 answer sets"));

    auto i = dkbr("models " + data("inconsistent.dkb"));
    CHECK(i.code == 0);
    CHECK(has(i.out, "UNSATISFIABLE (strict)"));

    CHECK(dkbr("models " + data("example5.dkb")).code == 1);
    CHECK(has(dkbr("models " + data("nixon.dkb") + " --limit 1").out, "1 answer set"));
}

TEST_CASE("entail and query") {
    CHECK(has(dkbr("entail " + data("dept.dkb") + " 'exists hasCourse(alice)'").out, "true"));
    CHECK(has(dkbr("entail " + data("dept.dkb") + " 'exists hasCourse(bob)'").out, "false"));
    CHECK(has(dkbr("entail " + data("nixon.dkb") + " 'Pacifist(nixon)' --mode brave").out, "true"));
    CHECK(has(dkbr("entail " + data("nixon.dkb") + " 'Pacifist(nixon)'").out, "false"));
    CHECK(dkbr("entail " + data("example5.dkb") + " 'Employee(alice)'").code == 1);
    CHECK(dkbr("entail " + data("dept.dkb") + " 'Nobody(alice)'").code == 2);

    auto q = dkbr("query " + data("dept.dkb") + " '?(x) :- DeptMember(x), hasCourse(x,y).'");
    CHECK(q.code == 0);
    CHECK(has(q.out, "(alice)"));
    CHECK_FALSE(has(q.out, "(bob)"));
    CHECK(dkbr("query " + data("example5.dkb") + " '?(x) :- Employee(x).'").code == 1);
    CHECK(dkbr("query " + data("dept.dkb") + " '?(x) DeptMember(x).'").code == 2);
}

TEST_CASE("structured output") {
    using nlohmann::json;
    auto c = json::parse(dkbr("check " + data("dept.dkb") + " --format structured").out);
    CHECK(c["command"] == "check");
    CHECK(c["safety"]["exception_safe"] == true);
    CHECK(c["safety"]["chain_bound"] == 1);

    auto m = json::parse(dkbr("models " + data("nixon.dkb") + " --format structured").out);
    CHECK(m["models"].size() == 2);

    auto e = json::parse(dkbr("entail " + data("dept.dkb") + " 'not exists hasCourse(bob)' --format structured").out);
    CHECK(e["verdict"] == true);

    auto q = json::parse(
        dkbr("query " + data("dept.dkb") + " '?(x) :- DeptMember(x), hasCourse(x,y).' --format structured").out);
    CHECK(q["answers"] == json::array({json::array({"alice"})}));

    auto bad = dkbr("check '" + temp_file("bad2.dkb", "A [=\n") + "' --format structured");
    CHECK(bad.code == 2);
    CHECK(json::parse(bad.out)["status"] == "invalid");
}

TEST_CASE("fuzz") {
    auto z = dkbr("fuzz --seed 1 --count 0");
    CHECK(z.code == 0);
    auto f = dkbr("fuzz --seed 1 --count 20 --skip-incoherent --format structured");
    CHECK(f.code == 0);
    CHECK(nlohmann::json::parse(f.out)["status"] == "ok");
    CHECK(f.out == dkbr("fuzz --seed 1 --count 20 --skip-incoherent --format structured").out);
}

}  // TEST_SUITE
