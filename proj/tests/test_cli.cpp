#include "test_util.hpp"

#include <doctest.h>

#include <cstdlib>
#include <sstream>
#include <sys/wait.h>

using testutil::fixture;
using testutil::read_file;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const testutil::TempDir& dir, const std::string& args) {
    auto out = dir.path() / "stdout.txt";
    auto err = dir.path() / "stderr.txt";
    std::string cmd = std::string("\"") + COUPLAW_CLI + "\" " + args + " >\"" + out.string() + "\" 2>\"" +
                      err.string() + "\"";
    int status = std::system(cmd.c_str());
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, read_file(out), read_file(err)};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

std::string row(const std::string& csv, const std::string& name) {
    for (const auto& l : lines(csv)) {
        if (l.rfind(name + ",", 0) == 0) return l;
    }
    return {};
}

std::string q(const std::filesystem::path& p) { return "\"" + p.string() + "\""; }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("analyze: ten-class fixture is byte-stable") {
    testutil::TempDir dir;
    auto a = run(dir, "analyze " + q(fixture("ten_class")));
    auto b = run(dir, "analyze " + q(fixture("ten_class")) + " --threads 3");
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    auto l = lines(a.out);
    REQUIRE(l.size() == 13);
    CHECK(l[0] == "relationship,exponent,lower95,upper95,r2,status,buckets");
    CHECK(l[1] == "Number of Methods,,,,,insufficient_data,3");
}

TEST_CASE("analyze: summary file and directory give the same report") {
    testutil::TempDir dir;
    auto summary = dir.path() / "c.jsonl";
    REQUIRE(run(dir, "scan " + q(fixture("ten_class")) + " -o " + q(summary)).code == 0);
    auto from_file = run(dir, "analyze " + q(summary));
    auto from_dir = run(dir, "analyze " + q(fixture("ten_class")));
    CHECK(from_file.code == 0);
    CHECK(from_file.out == from_dir.out);
}

TEST_CASE("analyze: thirty-class fixture marks implemented interfaces insufficient") {
    testutil::TempDir dir;
    auto r = run(dir, "analyze " + q(fixture("thirty_class")) + " --min-buckets 5");
    REQUIRE(r.code == 0);
    CHECK(row(r.out, "Implemented Interfaces") == "Implemented Interfaces,,,,,insufficient_data,2");
}

TEST_CASE("analyze: unrelated classes give twelve insufficient rows") {
    testutil::TempDir dir;
    auto r = run(dir, "analyze " + q(fixture("unrelated")));
    REQUIRE(r.code == 0);
    auto l = lines(r.out);
    REQUIRE(l.size() == 13);
    for (std::size_t i = 1; i < l.size(); ++i) CHECK(l[i].find(",,,,,insufficient_data,0") != std::string::npos);
}

TEST_CASE("exit codes") {
    testutil::TempDir dir;
    std::filesystem::create_directories(dir.path() / "empty");
    CHECK(run(dir, "analyze " + q(dir.path() / "empty")).code == 2);
    CHECK(run(dir, "scan " + q(dir.path() / "empty")).code == 2);
    CHECK(run(dir, "analyze " + q(dir.path() / "missing.jsonl")).code == 1);
    dir.write("bad.jsonl", "{\"format\":\"couplaw-summary/1\"}\n{\"qualified_name\":1}\n");
    auto bad = run(dir, "analyze " + q(dir.path() / "bad.jsonl"));
    CHECK(bad.code == 1);
    CHECK(bad.err.find("line 2") != std::string::npos);
    dir.write("header.jsonl", "{\"format\":\"couplaw-summary/1\"}\n");
    CHECK(run(dir, "analyze " + q(dir.path() / "header.jsonl")).code == 2);
    CHECK(run(dir, "synth --n 10").code != 0);  // --seed is required
    CHECK(run(dir, "corr " + q(fixture("unrelated"))).code == 1);
    CHECK(run(dir, "").code != 0);
}

TEST_CASE("analyze: malformed file is a warning, not a failure") {
    testutil::TempDir dir;
    auto r = run(dir, "analyze " + q(fixture("malformed")));
    CHECK(r.code == 0);
    CHECK(r.err.find("Broken.java") != std::string::npos);
}

TEST_CASE("synth and analyze: seeded pipeline is byte-identical") {
    testutil::TempDir dir;
    auto s1 = dir.path() / "s1.jsonl";
    auto s2 = dir.path() / "s2.jsonl";
    REQUIRE(run(dir, "synth --n 10000 --aggregation 2 --alpha 0 --seed 42 -o " + q(s1)).code == 0);
    REQUIRE(run(dir, "synth --n 10000 --aggregation 2 --alpha 0 --seed 42 -o " + q(s2)).code == 0);
    CHECK(read_file(s1) == read_file(s2));
    auto a = run(dir, "analyze " + q(s1));
    auto b = run(dir, "analyze " + q(s2) + " --threads 4");
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    auto members = row(a.out, "Members of class type");
    CHECK(members.find(",ok,") != std::string::npos);
}

TEST_CASE("synth: no growth") {
    testutil::TempDir dir;
    auto r = run(dir, "synth --n 3 --seed-size 3 --seed 1");
    REQUIRE(r.code == 0);
    CHECK(lines(r.out).size() == 1 + 3 + 3);
}

TEST_CASE("corr: matrix layout") {
    testutil::TempDir dir;
    auto r = run(dir, "corr " + q(fixture("ten_class")));
    REQUIRE(r.code == 0);
    auto l = lines(r.out);
    REQUIRE(l.size() == 4);
    CHECK(l[0] == ",methods,fields,constructors");
    CHECK(l[1].rfind("methods,1.0000,", 0) == 0);
}

TEST_CASE("ablate: fraction zero and determinism") {
    testutil::TempDir dir;
    auto s = dir.path() / "s.jsonl";
    REQUIRE(run(dir, "synth --n 500 --seed 3 -o " + q(s)).code == 0);
    auto zero = run(dir, "ablate " + q(s) + " --mode random --fraction 0 --trials 3 --seed 1");
    REQUIRE(zero.code == 0);
    auto l = lines(zero.out);
    REQUIRE(l.size() == 3);
    for (const auto& x : l) CHECK(x.substr(x.rfind('\t') + 1) == "1.0000");
    auto a = run(dir, "ablate " + q(s) + " --trials 5 --seed 9");
    auto b = run(dir, "ablate " + q(s) + " --trials 5 --seed 9");
    CHECK(a.out == b.out);
    CHECK(lines(a.out).size() == 6);
}

TEST_CASE("analyze: plot data, edge list and markdown") {
    testutil::TempDir dir;
    auto plots = dir.path() / "plots";
    auto edges = dir.path() / "edges.tsv";
    auto r = run(dir, "analyze " + q(fixture("ten_class")) + " --markdown --plot-dir " + q(plots) + " --edges " +
                          q(edges));
    REQUIRE(r.code == 0);
    CHECK(r.out.find("| Relationship | Exponent | Lower 95% | Upper 95% | r² |") != std::string::npos);
    CHECK(std::filesystem::exists(plots / "members-of-class-type.tsv"));
    CHECK(lines(read_file(edges)).size() == 31);
}

}  // TEST_SUITE
