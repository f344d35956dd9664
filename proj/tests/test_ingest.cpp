#include "couplaw/error.hpp"
#include "couplaw/ingest.hpp"
#include "couplaw/synth.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <map>
#include <sstream>

using namespace couplaw;
using testutil::fixture;

TEST_SUITE("ingest") {

TEST_CASE("parse_source: field and method of the StringFileReader example") {
    auto classes = parse_source(
        "class StringFileReader { String lastString; String readString(){ return lastString; } }", "S.java");
    REQUIRE(classes.size() == 1);
    const auto& c = classes[0];
    CHECK(c.qualified_name == "StringFileReader");
    CHECK(c.kind == TypeKind::Class);
    REQUIRE(c.fields.size() == 1);
    CHECK(c.fields[0] == Field{"lastString", "String"});
    REQUIRE(c.methods.size() == 1);
    CHECK(c.methods[0] == Method{"readString", "String", {}});
    CHECK(c.constructors.empty());
}

TEST_CASE("parse_source: empty class") {
    auto classes = parse_source("class A {}", "A.java");
    REQUIRE(classes.size() == 1);
    ClassSummary expected;
    expected.qualified_name = "A";
    CHECK(classes[0] == expected);
    CHECK_FALSE(classes[0].superclass);
}

TEST_CASE("parse_source: interface and implementing class in one file") {
    auto classes = parse_source(
        "interface Shape { double area(); }\n"
        "class Circle implements Shape { double r; Circle(double r){ this.r = r; } double area(){ return 3.14*r*r; } }",
        "Shapes.java");
    REQUIRE(classes.size() == 2);
    CHECK(classes[0].qualified_name == "Shape");
    CHECK(classes[0].kind == TypeKind::Interface);
    CHECK(classes[0].methods == std::vector<Method>{{"area", "double", {}}});
    const auto& circle = classes[1];
    CHECK(circle.interfaces == std::vector<std::string>{"Shape"});
    REQUIRE(circle.constructors.size() == 1);
    CHECK(circle.constructors[0].param_types == std::vector<std::string>{"double"});
    CHECK(circle.methods.size() == 1);
    CHECK(circle.fields.size() == 1);
}

TEST_CASE("parse_source: generics, arrays, annotations and nesting") {
    auto classes = parse_source(R"(
package p;
import java.util.*;
@Deprecated
public final class Box<T extends Comparable<T>> extends Base<T> implements Sink<T>, Source {
    private Map<String, List<Item>> index = new HashMap<String, List<Item>>();
    List<String>[] buckets;
    Item[][] grid, other = {{null}};
    static int count = 0;
    @Override public <R> List<R> map(java.util.function.Function<T, R> f, int... xs) throws Exception { return null; }
    Box(@Nonnull Item first) { char c = '}'; String s = "{"; }
    class Inner { Inner(int z) {} void hidden() {} }
    enum Mode { A, B; void m() {} }
    Runnable r = new Runnable() { public void run() {} };
}
)",
                                "Box.java");
    REQUIRE(classes.size() == 1);
    const auto& c = classes[0];
    CHECK(c.qualified_name == "p.Box");
    CHECK(c.superclass == "Base");
    CHECK(c.interfaces == std::vector<std::string>{"Sink", "Source"});
    std::vector<Field> fields = {{"index", "Map"}, {"buckets", "List"}, {"grid", "Item"},
                                 {"other", "Item"}, {"count", "int"},   {"r", "Runnable"}};
    CHECK(c.fields == fields);
    REQUIRE(c.methods.size() == 1);
    CHECK(c.methods[0] == Method{"map", "List", {"java.util.function.Function", "int"}});
    REQUIRE(c.constructors.size() == 1);
    CHECK(c.constructors[0].param_types == std::vector<std::string>{"Item"});
}

TEST_CASE("parse_source: interface extends list and default methods") {
    auto classes = parse_source("interface I extends B, A { default int f() { return 1; } int g(); }", "I.java");
    REQUIRE(classes.size() == 1);
    CHECK(classes[0].interfaces == std::vector<std::string>{"A", "B"});
    CHECK(classes[0].methods.size() == 2);
    CHECK_FALSE(classes[0].superclass);
}

TEST_CASE("parse_source: overloads are separate entries") {
    auto c = parse_source("class O { O() {} O(int a) {} void f() {} void f(int a) {} void f(String s) {} }", "O.java");
    CHECK(c[0].constructors.size() == 2);
    CHECK(c[0].methods.size() == 3);
}

TEST_CASE("parse_source: malformed input reports file and line") {
    try {
        parse_source("class Broken {\n  void f() {\n", "Broken.java");
        FAIL("expected MalformedSource");
    } catch (const MalformedSource& e) {
        CHECK(e.file() == "Broken.java");
        CHECK(e.line() >= 1);
    }
    CHECK_THROWS_AS(parse_source("class S { String s = \"open; }", "S.java"), MalformedSource);
    CHECK_THROWS_AS(parse_source("class C { /* never closed }", "C.java"), MalformedSource);
}

TEST_CASE("referenced_types and primitives") {
    CHECK(is_primitive("int"));
    CHECK(is_primitive("void"));
    CHECK_FALSE(is_primitive("String"));
}

TEST_CASE("scan_tree: two-file StringFileReader example") {
    auto scan = scan_tree(fixture("fig1"));
    const Corpus& c = scan.corpus;
    CHECK(scan.files_scanned == 2);
    CHECK(c.size() == 5);
    const auto* sfr = c.find("io.StringFileReader");
    REQUIRE(sfr);
    CHECK(sfr->fields == std::vector<Field>{{"lastString", "String"}});
    CHECK(c.resolve("io.StringFileReader", "String") == "io.String");
    CHECK(c.resolve("io.StringFileReader", "StringSource") == "io.StringSource");
    CHECK(c.resolve("io.StringFileReader", "FileReader") == "io.FileReader");
    CHECK(c.resolve("io.FileReader", "File") == "io.File");
    CHECK(c.unresolved().empty());
}

TEST_CASE("scan_tree: empty directory") {
    testutil::TempDir dir;
    CHECK_THROWS_AS(scan_tree(dir.path()), EmptyCorpus);
    dir.write("notes.txt", "class NotJava {}");
    CHECK_THROWS_AS(scan_tree(dir.path()), EmptyCorpus);
}

TEST_CASE("scan_tree: duplicate class across files") {
    testutil::TempDir dir;
    dir.write("a/One.java", "package p; class Dup {}");
    dir.write("b/Two.java", "package p; class Dup {}");
    CHECK_THROWS_AS(scan_tree(dir.path()), DuplicateClass);
}

TEST_CASE("scan_tree: malformed file is skipped and reported") {
    auto scan = scan_tree(fixture("malformed"));
    CHECK(scan.corpus.size() == 1);
    CHECK(scan.corpus.find("ok.Fine"));
    auto bad = std::find_if(scan.diagnostics.begin(), scan.diagnostics.end(),
                            [](const Diagnostic& d) { return d.line > 0; });
    REQUIRE(bad != scan.diagnostics.end());
    CHECK(bad->file.find("Broken.java") != std::string::npos);
}

TEST_CASE("scan_tree: ten-class fixture member counts") {
    auto scan = scan_tree(fixture("ten_class"));
    const Corpus& c = scan.corpus;
    REQUIRE(c.size() == 10);
    // methods, fields, constructors, from the fixture README
    std::map<std::string, std::array<std::size_t, 3>> expected = {
        {"app.Canvas", {3, 4, 0}},           {"app.Renderer", {4, 3, 1}},  {"app.Style", {2, 2, 2}},
        {"shapes.AbstractShape", {2, 2, 1}}, {"shapes.Circle", {2, 1, 1}}, {"shapes.Named", {1, 0, 0}},
        {"shapes.Point", {2, 2, 2}},         {"shapes.Polygon", {3, 2, 1}}, {"shapes.Shape", {3, 0, 0}},
        {"shapes.Square", {1, 0, 1}},
    };
    for (const auto& [name, counts] : expected) {
        CAPTURE(name);
        const auto* s = c.find(name);
        REQUIRE(s);
        CHECK(s->methods.size() == counts[0]);
        CHECK(s->fields.size() == counts[1]);
        CHECK(s->constructors.size() == counts[2]);
    }
    CHECK(c.find("shapes.Shape")->kind == TypeKind::Interface);
    CHECK(c.find("shapes.Named")->kind == TypeKind::Interface);
}

TEST_CASE("scan_tree: resolution order") {
    testutil::TempDir dir;
    dir.write("a/Thing.java", "package a; public class Thing {}");
    dir.write("b/Thing.java", "package b; public class Thing {}");
    dir.write("c/Thing.java", "package c; public class Thing {} class Other {}");
    dir.write("b/User.java", "package b; import a.Thing; import c.*; class User { Thing t; Other o; b.Thing q; }");
    dir.write("d/Wild.java", "package d; import c.*; class Wild { Thing t; }");
    auto c = scan_tree(dir.path()).corpus;
    CHECK(c.resolve("b.User", "Thing") == "a.Thing");  // explicit import beats same package
    CHECK(c.resolve("b.User", "Other") == "c.Other");
    CHECK(c.resolve("b.User", "b.Thing") == "b.Thing");
    CHECK(c.resolve("d.Wild", "Thing") == "c.Thing");
    for (const auto& [key, target] : c.resolution()) CHECK(c.find(target));
}

TEST_CASE("scan_tree: deterministic and order independent") {
    auto a = scan_tree(fixture("ten_class"), ScanOptions{1});
    auto b = scan_tree(fixture("ten_class"), ScanOptions{4});
    CHECK(a.corpus == b.corpus);
    CHECK(testutil::dump(a.corpus) == testutil::dump(b.corpus));

    std::vector<SourceUnit> units;
    for (const auto& e : std::filesystem::recursive_directory_iterator(fixture("ten_class"))) {
        if (e.path().extension() != ".java") continue;
        units.push_back(parse_unit(testutil::read_file(e.path()), e.path().string()));
    }
    auto forward = Corpus::from_units(units);
    std::reverse(units.begin(), units.end());
    auto backward = Corpus::from_units(units);
    CHECK(forward == backward);
    CHECK(forward == a.corpus);
}

TEST_CASE("summaries: round trip of the ten-class fixture") {
    auto corpus = scan_tree(fixture("ten_class")).corpus;
    testutil::TempDir dir;
    save_summaries(corpus, dir.path() / "c.jsonl");
    CHECK(load_summaries(dir.path() / "c.jsonl") == corpus);
    std::stringstream ss(testutil::dump(corpus));
    std::string first;
    std::getline(ss, first);
    CHECK(first == R"({"format":"couplaw-summary/1"})");
}

TEST_CASE("summaries: strict reader") {
    const std::string header = "{\"format\":\"couplaw-summary/1\"}\n";
    const std::string good =
        R"({"qualified_name":"A","kind":"class","superclass":null,"interfaces":[],"fields":[],"constructors":[],"methods":[]})";
    auto read = [](const std::string& text) {
        std::istringstream in(text);
        return read_summaries(in);
    };
    CHECK(read(header + good + "\n").size() == 1);

    auto expect_line = [&](const std::string& text, std::size_t line) {
        try {
            read(text);
            FAIL("expected FormatError");
        } catch (const FormatError& e) {
            CHECK(e.line() == line);
        }
    };
    std::string unknown = good;
    unknown.insert(unknown.size() - 1, R"(,"visibility":"public")");
    expect_line(header + unknown + "\n", 2);
    std::string missing = R"({"qualified_name":"A","kind":"class","interfaces":[],"fields":[],"constructors":[],"methods":[]})";
    expect_line(header + missing + "\n", 2);
    expect_line("{\"format\":\"couplaw-summary/2\"}\n" + good + "\n", 1);
    expect_line(header + good + "\n" + "{not json\n", 3);
    expect_line(header + R"({"from":"A","name":"B","to":"Missing"})" + "\n" + good + "\n", 2);
    CHECK(read(header).empty());
}

TEST_CASE("summaries: 6000-class round trip under five seconds") {
    SynthParams p;
    p.n_classes = 6000;
    p.edges_per_class = {{Coupling::Aggregation, 2}, {Coupling::Parameter, 1}, {Coupling::ReturnType, 1}};
    p.rng_seed = 3;
    Corpus corpus = generate(p);
    auto start = std::chrono::steady_clock::now();
    std::stringstream ss;
    write_summaries(corpus, ss);
    Corpus back = read_summaries(ss);
    auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(back == corpus);
    CHECK(elapsed < 5.0);
}

}  // TEST_SUITE
