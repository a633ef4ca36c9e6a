#ifndef LIESYM_TOOLS_TOML_LITE_HPP
#define LIESYM_TOOLS_TOML_LITE_HPP

// Minimal TOML subset used by the CLI input files: [section] headers,
// key = value pairs with string / number / boolean / inline-table values,
// and # comments.  Arrays, dotted keys, multi-line strings and dates are
// not part of the input schema and are rejected.

#include <cctype>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace toml_lite {

struct TomlError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Value {
    enum class Kind { String, Number, Boolean, Table };
    Kind kind = Kind::String;
    std::string str;
    double number = 0.0;
    bool boolean = false;
    std::map<std::string, Value> table;

    const Value& at(const std::string& key) const {
        auto it = table.find(key);
        if (it == table.end()) throw TomlError("missing key '" + key + "'");
        return it->second;
    }
};

using Section = std::map<std::string, Value>;

struct Document {
    std::map<std::string, Section> sections;

    bool has(const std::string& section) const {
        return sections.count(section) != 0;
    }
    const Section& at(const std::string& section) const {
        auto it = sections.find(section);
        if (it == sections.end())
            throw TomlError("missing section [" + section + "]");
        return it->second;
    }
};

class Parser {
  public:
    explicit Parser(const std::string& text) : s_(text) {}

    Document parse() {
        Document doc;
        std::string current;  // top-level keys live in the "" section
        while (!eof()) {
            skip_blank();
            if (eof()) break;
            if (peek() == '[') {
                expect('[');
                current = bare_key_run(']');
                expect(']');
                end_of_line();
                doc.sections[current];
            } else {
                auto [key, value] = key_value();
                end_of_line();
                if (!doc.sections[current].emplace(key, std::move(value))
                         .second)
                    throw TomlError("duplicate key '" + key + "'");
            }
        }
        return doc;
    }

  private:
    const std::string& s_;
    std::size_t pos_ = 0;

    bool eof() const { return pos_ >= s_.size(); }
    char peek() const { return s_[pos_]; }

    void skip_ws_inline() {
        while (!eof() && (peek() == ' ' || peek() == '\t')) ++pos_;
    }
    void skip_comment() {
        if (!eof() && peek() == '#')
            while (!eof() && peek() != '\n') ++pos_;
    }
    void skip_blank() {
        for (;;) {
            skip_ws_inline();
            skip_comment();
            if (!eof() && (peek() == '\n' || peek() == '\r'))
                ++pos_;
            else
                return;
        }
    }
    void end_of_line() {
        skip_ws_inline();
        skip_comment();
        if (eof()) return;
        if (peek() == '\n' || peek() == '\r')
            ++pos_;
        else
            throw TomlError(std::string("unexpected character '") + peek() +
                            "' before end of line");
    }
    void expect(char c) {
        skip_ws_inline();
        if (eof() || peek() != c)
            throw TomlError(std::string("expected '") + c + "'");
        ++pos_;
    }

    std::string bare_key_run(char terminator) {
        skip_ws_inline();
        std::string out;
        while (!eof() && peek() != terminator) {
            char c = peek();
            if (!(std::isalnum((unsigned char)c) || c == '_' || c == '-'))
                throw TomlError(std::string("bad key character '") + c + "'");
            out += c;
            ++pos_;
        }
        if (out.empty()) throw TomlError("empty key");
        return out;
    }

    std::string bare_key() {
        skip_ws_inline();
        std::string out;
        while (!eof() && (std::isalnum((unsigned char)peek()) ||
                          peek() == '_' || peek() == '-')) {
            out += peek();
            ++pos_;
        }
        if (out.empty()) throw TomlError("expected a key");
        return out;
    }

    std::pair<std::string, Value> key_value() {
        std::string key = bare_key();
        expect('=');
        return {key, value()};
    }

    Value value() {
        skip_ws_inline();
        if (eof()) throw TomlError("expected a value");
        char c = peek();
        Value v;
        if (c == '"') {
            ++pos_;
            v.kind = Value::Kind::String;
            while (!eof() && peek() != '"') {
                if (peek() == '\\') {
                    ++pos_;
                    if (eof()) throw TomlError("dangling escape");
                    char e = peek();
                    if (e == 'n') v.str += '\n';
                    else if (e == 't') v.str += '\t';
                    else v.str += e;
                } else {
                    v.str += peek();
                }
                ++pos_;
            }
            expect('"');
            return v;
        }
        if (c == '{') {
            ++pos_;
            v.kind = Value::Kind::Table;
            skip_ws_inline();
            if (!eof() && peek() == '}') { ++pos_; return v; }
            for (;;) {
                auto [k, inner] = key_value();
                v.table.emplace(k, std::move(inner));
                skip_ws_inline();
                if (!eof() && peek() == ',') { ++pos_; continue; }
                break;
            }
            expect('}');
            return v;
        }
        if (std::isalpha((unsigned char)c)) {
            std::string word = bare_key();
            if (word == "true" || word == "false") {
                v.kind = Value::Kind::Boolean;
                v.boolean = word == "true";
                return v;
            }
            throw TomlError("unquoted value '" + word + "'");
        }
        // number
        std::string tok;
        while (!eof() && (std::isdigit((unsigned char)peek()) ||
                          peek() == '+' || peek() == '-' || peek() == '.' ||
                          peek() == 'e' || peek() == 'E' || peek() == '_')) {
            if (peek() != '_') tok += peek();
            ++pos_;
        }
        if (tok.empty()) throw TomlError("expected a value");
        v.kind = Value::Kind::Number;
        try {
            std::size_t used = 0;
            v.number = std::stod(tok, &used);
            if (used != tok.size()) throw TomlError("bad number '" + tok + "'");
        } catch (const std::exception&) {
            throw TomlError("bad number '" + tok + "'");
        }
        return v;
    }
};

inline Document parse(const std::string& text) { return Parser(text).parse(); }

}  // namespace toml_lite

#endif
