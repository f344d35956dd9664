#include "couplaw/error.hpp"
#include "couplaw/ingest.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace couplaw {
namespace {

enum class TokKind { Ident, Punct, Literal, End };

struct Token {
    TokKind kind;
    std::string_view text;
    std::size_t line;
};

bool ident_start(unsigned char c) {
    return std::isalpha(c) || c == '_' || c == '$' || c >= 0x80;
}

bool ident_char(unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '$' || c >= 0x80;
}

class Lexer {
public:
    Lexer(std::string_view src, const std::string& file) : src_(src), file_(file) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_space_and_comments();
            if (pos_ >= src_.size()) break;
            out.push_back(next());
        }
        out.push_back({TokKind::End, {}, line_});
        return out;
    }

private:
    void skip_space_and_comments() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '\n') {
                ++line_;
                ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else if (src_.substr(pos_, 2) == "//") {
                while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
            } else if (src_.substr(pos_, 2) == "/*") {
                std::size_t start = line_;
                pos_ += 2;
                while (pos_ < src_.size() && src_.substr(pos_, 2) != "*/") {
                    if (src_[pos_] == '\n') ++line_;
                    ++pos_;
                }
                if (pos_ >= src_.size()) throw MalformedSource(file_, start, "unterminated comment");
                pos_ += 2;
            } else {
                break;
            }
        }
    }

    Token next() {
        std::size_t start = pos_;
        std::size_t line = line_;
        auto c = static_cast<unsigned char>(src_[pos_]);

        if (ident_start(c)) {
            while (pos_ < src_.size() && ident_char(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            return {TokKind::Ident, src_.substr(start, pos_ - start), line};
        }
        if (std::isdigit(c)) {
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.' || src_[pos_] == '_'))
                ++pos_;
            return {TokKind::Literal, src_.substr(start, pos_ - start), line};
        }
        if (src_.substr(pos_, 3) == "\"\"\"") {
            pos_ += 3;
            while (pos_ < src_.size() && src_.substr(pos_, 3) != "\"\"\"") {
                if (src_[pos_] == '\\') ++pos_;
                else if (src_[pos_] == '\n') ++line_;
                ++pos_;
            }
            if (pos_ >= src_.size()) throw MalformedSource(file_, line, "unterminated text block");
            pos_ += 3;
            return {TokKind::Literal, src_.substr(start, pos_ - start), line};
        }
        if (c == '"' || c == '\'') {
            ++pos_;
            while (pos_ < src_.size() && src_[pos_] != static_cast<char>(c)) {
                if (src_[pos_] == '\n') throw MalformedSource(file_, line, "unterminated literal");
                if (src_[pos_] == '\\') ++pos_;
                ++pos_;
            }
            if (pos_ >= src_.size()) throw MalformedSource(file_, line, "unterminated literal");
            ++pos_;
            return {TokKind::Literal, src_.substr(start, pos_ - start), line};
        }
        if (src_.substr(pos_, 3) == "...") {
            pos_ += 3;
            return {TokKind::Punct, src_.substr(start, 3), line};
        }
        ++pos_;
        return {TokKind::Punct, src_.substr(start, 1), line};
    }

    std::string_view src_;
    const std::string& file_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
};

constexpr std::array<std::string_view, 13> kModifiers = {
    "public", "protected", "private",   "static",   "abstract", "final",
    "native",                   "synchronized", "transient", "volatile", "strictfp", "default",
    "sealed",
};

bool is_modifier(std::string_view s) {
    return std::find(kModifiers.begin(), kModifiers.end(), s) != kModifiers.end();
}

class Parser {
public:
    Parser(std::vector<Token> tokens, const std::string& file) : toks_(std::move(tokens)), file_(file) {}

    SourceUnit unit() {
        SourceUnit out;
        out.file = file_;
        skip_annotations();
        if (is("package")) {
            ++pos_;
            out.package = qualified_name();
            expect(";");
        }
        while (is("import")) {
            ++pos_;
            bool is_static = is("static");
            if (is_static) ++pos_;
            std::string name = qualified_name();
            if (is(".") && peek(1).text == "*") {
                pos_ += 2;
                name += ".*";
            }
            expect(";");
            if (!is_static) out.imports.push_back(std::move(name));
        }
        while (!at_end()) {
            if (is(";")) {
                ++pos_;
                continue;
            }
            skip_modifiers();
            if (is("class") || is("interface")) {
                out.classes.push_back(type_declaration(out.package));
            } else if (starts_other_type_declaration()) {
                skip_type_declaration();
            } else {
                fail("expected a type declaration");
            }
        }
        return out;
    }

private:
    const Token& cur() const { return toks_[pos_]; }
    const Token& peek(std::size_t k) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    bool at_end() const { return cur().kind == TokKind::End; }
    bool is(std::string_view s) const { return cur().kind != TokKind::End && cur().text == s; }

    [[noreturn]] void fail(const std::string& what) const {
        std::string msg = what;
        if (!at_end()) msg += " near '" + std::string(cur().text) + "'";
        else msg += " at end of file";
        throw MalformedSource(file_, cur().line, msg);
    }

    void expect(std::string_view s) {
        if (!is(s)) fail("expected '" + std::string(s) + "'");
        ++pos_;
    }

    std::string ident() {
        if (cur().kind != TokKind::Ident) fail("expected identifier");
        return std::string(toks_[pos_++].text);
    }

    std::string qualified_name() {
        std::string name = ident();
        while (is(".") && peek(1).kind == TokKind::Ident) {
            ++pos_;
            name += '.';
            name += ident();
        }
        return name;
    }

    void skip_annotation() {
        ++pos_;  // '@'
        qualified_name();
        if (is("(")) skip_balanced("(", ")");
    }

    void skip_annotations() {
        while (is("@") && peek(1).text != "interface") skip_annotation();
    }

    void skip_modifiers() {
        while (true) {
            if (is("@") && peek(1).text != "interface") {
                skip_annotation();
            } else if (cur().kind == TokKind::Ident && is_modifier(cur().text)) {
                ++pos_;
            } else if (is("non") && peek(1).text == "-" && peek(2).text == "sealed") {
                pos_ += 3;
            } else {
                return;
            }
        }
    }

    bool starts_other_type_declaration() const {
        if (is("enum")) return true;
        if (is("@") && peek(1).text == "interface") return true;
        return is("record") && peek(1).kind == TokKind::Ident;
    }

    // enum, record, annotation type, or a nested class/interface
    void skip_type_declaration() {
        std::size_t line = cur().line;
        while (!is("{")) {
            if (at_end()) throw MalformedSource(file_, line, "type declaration without a body");
            if (is("(")) {
                skip_balanced("(", ")");
                continue;
            }
            ++pos_;
        }
        skip_balanced("{", "}");
    }

    void skip_balanced(std::string_view open, std::string_view close) {
        std::size_t line = cur().line;
        int depth = 0;
        do {
            if (at_end()) throw MalformedSource(file_, line, "unbalanced '" + std::string(open) + "'");
            if (is(open)) ++depth;
            else if (is(close)) --depth;
            ++pos_;
        } while (depth > 0);
    }

    void skip_angle() { skip_balanced("<", ">"); }

    // Reads a type and returns its raw element name: "java.util.List<X>[]"
    // yields "java.util.List".
    std::string type_name() {
        skip_annotations();
        std::string name = ident();
        if (is("<")) skip_angle();
        while (is(".") && peek(1).kind == TokKind::Ident) {
            ++pos_;
            skip_annotations();
            name += '.';
            name += ident();
            if (is("<")) skip_angle();
        }
        skip_dims();
        if (is("...")) ++pos_;
        return name;
    }

    void skip_dims() {
        while (true) {
            skip_annotations();
            if (is("[") && peek(1).text == "]") pos_ += 2;
            else return;
        }
    }

    std::vector<std::string> type_list() {
        std::vector<std::string> out{type_name()};
        while (is(",")) {
            ++pos_;
            out.push_back(type_name());
        }
        return out;
    }

    std::vector<std::string> parameters() {
        expect("(");
        std::vector<std::string> out;
        if (is(")")) {
            ++pos_;
            return out;
        }
        while (true) {
            skip_modifiers();
            std::string type = type_name();
            if (is("this")) {
                ++pos_;  // receiver parameter
            } else {
                std::string unused_name = ident();
                (void)unused_name;
                skip_dims();
                out.push_back(std::move(type));
            }
            if (is(",")) {
                ++pos_;
                continue;
            }
            expect(")");
            return out;
        }
    }

    void skip_throws() {
        if (!is("throws")) return;
        ++pos_;
        type_list();
    }

    void method_tail() {
        if (is("default")) {
            while (!is(";")) {
                if (at_end()) fail("unterminated default value");
                if (is("{")) skip_balanced("{", "}");
                else if (is("(")) skip_balanced("(", ")");
                else ++pos_;
            }
        }
        if (is(";")) {
            ++pos_;
        } else if (is("{")) {
            skip_balanced("{", "}");
        } else {
            fail("expected method body or ';'");
        }
    }

    // Skips a field initializer up to the ',' or ';' that ends the declarator.
    void skip_initializer() {
        while (!is(",") && !is(";")) {
            if (at_end() || is("}")) fail("unterminated field initializer");
            if (is("(")) {
                skip_balanced("(", ")");
            } else if (is("{")) {
                skip_balanced("{", "}");
            } else if (is("[")) {
                skip_balanced("[", "]");
            } else if (is("new")) {
                ++pos_;
                if (cur().kind == TokKind::Ident) type_name();
            } else if (is(".") && peek(1).text == "<") {
                ++pos_;
                skip_angle();
            } else {
                ++pos_;
            }
        }
    }

    ClassSummary type_declaration(const std::string& package) {
        ClassSummary cls;
        cls.kind = is("interface") ? TypeKind::Interface : TypeKind::Class;
        ++pos_;
        std::string simple = ident();
        cls.qualified_name = package.empty() ? simple : package + "." + simple;
        if (is("<")) skip_angle();
        if (cls.kind == TypeKind::Class) {
            if (is("extends")) {
                ++pos_;
                cls.superclass = type_name();
            }
            if (is("implements")) {
                ++pos_;
                cls.interfaces = type_list();
            }
        } else if (is("extends")) {
            ++pos_;
            cls.interfaces = type_list();
        }
        if (is("permits")) {
            ++pos_;
            type_list();
        }
        if (!is("{")) fail("expected '{' after declaration header");
        ++pos_;
        body(cls, simple);
        std::sort(cls.interfaces.begin(), cls.interfaces.end());
        return cls;
    }

    void body(ClassSummary& cls, const std::string& simple) {
        while (!is("}")) {
            if (at_end()) fail("unterminated class body for " + simple);
            if (is(";")) {
                ++pos_;
                continue;
            }
            if (is("{") || (is("static") && peek(1).text == "{")) {
                if (is("static")) ++pos_;
                skip_balanced("{", "}");
                continue;
            }
            skip_modifiers();
            if (is("class") || is("interface") || starts_other_type_declaration()) {
                skip_type_declaration();
                continue;
            }
            if (is("<")) skip_angle();

            if (cur().kind == TokKind::Ident && cur().text == simple && peek(1).text == "(") {
                if (cls.kind == TypeKind::Interface) fail("constructor in interface");
                ++pos_;
                cls.constructors.push_back({parameters()});
                skip_throws();
                if (!is("{")) fail("expected constructor body");
                skip_balanced("{", "}");
                continue;
            }

            std::string type = type_name();
            std::string name = ident();
            if (is("(")) {
                Method m{std::move(name), std::move(type), parameters()};
                skip_dims();
                skip_throws();
                method_tail();
                cls.methods.push_back(std::move(m));
                continue;
            }
            while (true) {
                skip_dims();
                if (is("=")) {
                    ++pos_;
                    skip_initializer();
                }
                cls.fields.push_back({std::move(name), type});
                if (is(";")) {
                    ++pos_;
                    break;
                }
                expect(",");
                name = ident();
            }
        }
        ++pos_;
    }

    std::vector<Token> toks_;
    const std::string& file_;
    std::size_t pos_ = 0;
};

}  // namespace

SourceUnit parse_unit(std::string_view source_text, const std::string& file_name) {
    Parser parser(Lexer(source_text, file_name).run(), file_name);
    return parser.unit();
}

std::vector<ClassSummary> parse_source(std::string_view source_text, const std::string& file_name) {
    return parse_unit(source_text, file_name).classes;
}

}  // namespace couplaw
