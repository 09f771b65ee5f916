#include "bratteli/cli.hpp"

#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace bratteli;

namespace {

struct Run {
    int status;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int status = run_cli(args, out, err);
    return {status, out.str(), err.str()};
}

bool has(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

std::string temp_path(const std::string& name) { return std::string(P_tmpdir) + "/bratteli_test_" + name; }

}  // namespace

TEST_CASE("collar") {
    auto r = run({"collar", "--fixture", "fibonacci"});
    CHECK(r.status == 0);
    CHECK(has(r.out, "a = 0 0\xCC\x87 1"));
    CHECK(has(r.out, "a -> cd"));
    CHECK(has(r.out, "d -> b"));
    auto t = run({"collar", "--fixture", "thue-morse"});
    CHECK(t.status == 0);
    CHECK(has(t.out, "(6 letters)"));
    CHECK(has(t.out, "a -> bf"));

    const auto spec = temp_path("period.sub");
    std::ofstream(spec) << "letters: 0 1\nrule 0: 0 1\nrule 1: 0 1\n";
    auto p = run({"collar", "--spec", spec});
    CHECK(p.status == 2);
    CHECK(has(p.err, "PeriodicDetected"));
    std::remove(spec.c_str());
    CHECK(run({"collar", "--spec", temp_path("missing.sub")}).status == 3);
    CHECK(run({"collar"}).status == 2);
    CHECK(run({"collar", "--fixture", "fibonacci", "--spec", "x"}).status == 2);
}

TEST_CASE("diagram exports") {
    auto j = run({"diagram", "--fixture", "fibonacci", "--format", "json"});
    CHECK(j.status == 0);
    CHECK(has(j.out, "\"verticals\""));
    auto d = run({"diagram", "--fixture", "fibonacci", "--depth", "3", "--format", "dot"});
    CHECK(d.status == 0);
    CHECK(has(d.out, "digraph bratteli"));
    CHECK(has(d.out, "\"3:a\""));
    auto one = run({"diagram", "--fixture", "fibonacci", "--depth", "1", "--format", "dot"});
    CHECK_FALSE(has(one.out, "\"2:a\""));
    CHECK(run({"diagram", "--fixture", "fibonacci", "--format", "svg"}).status == 2);
    CHECK(run({"diagram", "--fixture", "fibonacci", "--depth", "0"}).status == 2);
    CHECK(run({"diagram", "--fixture", "fibonacci", "--out", temp_path("no/such/dir/x.dot")}).status == 3);

    const auto path = temp_path("fib.json");
    CHECK(run({"diagram", "--fixture", "fibonacci", "--format", "json", "--out", path}).status == 0);
    std::stringstream buf;
    buf << std::ifstream(path).rdbuf();
    CHECK(buf.str() == j.out);
    std::remove(path.c_str());
}

TEST_CASE("decode") {
    auto f = run({"decode", "--fixture", "fibonacci", "--x", "root=a; ac ca ab"});
    CHECK(f.status == 0);
    CHECK(has(f.out, "word a\xCC\x87" "dbad\n"));
    auto t = run({"decode", "--fixture", "thue-morse", "--x", "root=a; ad dc cb"});
    CHECK(has(t.out, "word ecdefa\xCC\x87" "bc\n"));
    auto single = run({"decode", "--fixture", "fibonacci", "--x", "root=a;"});
    CHECK(has(single.out, "word a\xCC\x87\n"));
    auto col = run({"decode", "--fixture", "fibonacci", "--x", "root=a;", "--collared"});
    CHECK(has(col.out, "word 0 0\xCC\x87 1\n"));
    auto per = run({"decode", "--fixture", "fibonacci", "--x", "root=a;(ac ca)", "--depth", "3"});
    CHECK(has(per.out, "path root=a; ac ca\n"));
    auto bad = run({"decode", "--fixture", "fibonacci", "--x", "root=a; ca"});
    CHECK(bad.status == 2);
    CHECK(has(bad.err, "BadPath"));
    CHECK(run({"decode", "--fixture", "fibonacci"}).status == 2);
}

TEST_CASE("extremes, vershik, rb, analyze") {
    auto e = run({"extremes", "--fixture", "fibonacci"});
    CHECK(has(e.out, "minimal paths (2)"));
    CHECK(has(e.out, "root=b; (bd db)  ->  root=a; (ac ca)"));
    auto v = run({"vershik", "--fixture", "fibonacci", "--x", "root=b;(bd db)", "--steps", "1"});
    CHECK(has(v.out, "1  root=a; (ac ca)  tile a  puncture 1 (1.000000)  (psi)"));
    auto rb = run({"rb", "--fixture", "fibonacci", "--x", "root=a;(ac ca)", "--y", "root=b;(bd db)"});
    CHECK(has(rb.out, "a(x,y) = 1 (1.000000)"));
    auto none = run({"rb", "--fixture", "fibonacci", "--x", "root=a;(ac ca)", "--y", "root=d;(db bd)"});
    CHECK(has(none.out, "None"));
    auto f = run({"analyze", "--fixture", "fibonacci", "--x", "root=a;(ac ca)"});
    CHECK(has(f.out, "verdict: F (left"));
    auto g = run({"analyze", "--fixture", "fibonacci", "--x", "root=a;(ac ca ab bd da)"});
    CHECK(has(g.out, "verdict: G"));
    CHECK(has(g.out, "distance > 100 from generation"));
    auto p = run({"analyze", "--fixture", "fibonacci", "--x", "root=a; ac"});
    CHECK(has(p.out, "verdict: none"));
    CHECK(run({"rb", "--fixture", "fibonacci", "--x", "root=a; ac", "--y", "root=a;(ac ca)"}).status == 2);
}

TEST_CASE("verify-paper and determinism") {
    CHECK(run({"verify-paper", "nope"}).status == 2);
    auto a = run({"extremes", "--fixture", "thue-morse"});
    auto b = run({"extremes", "--fixture", "thue-morse"});
    CHECK(a.out == b.out);
    CHECK(run({"--help"}).status == 0);
    CHECK(run({}).status == 2);
}
