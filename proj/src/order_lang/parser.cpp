#include "cooking_code/order_lang.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <initializer_list>

#include <fmt/format.h>

namespace cooking_code {

namespace {

struct Token {
    std::string text;
    int line;
    int column;
};

std::string upper(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return out;
}

std::string describe_expected(const std::vector<std::string>& expected) {
    std::string out;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i) out += ", ";
        out += expected[i];
    }
    return out;
}

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    int line = 1;
    int column = 1;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (c == '\n') {
            ++line;
            column = 1;
            ++i;
        } else if (c == '#') {
            while (i < text.size() && text[i] != '\n') ++i;
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            ++column;
            ++i;
        } else {
            const std::size_t start = i;
            const int start_column = column;
            while (i < text.size() && text[i] != '#' &&
                   !std::isspace(static_cast<unsigned char>(text[i]))) {
                ++i;
                ++column;
            }
            tokens.push_back({std::string(text.substr(start, i - start)), line, start_column});
        }
    }
    tokens.push_back({"", line, column});  // end-of-input sentinel
    return tokens;
}

const std::vector<std::string> kBlockStarters = {"PONER", "PUT", "SI HAY", "IF HAS", "REPETIR", "REPEAT"};

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    OrderAst parse_order() {
        OrderAst ast;
        if (at_end()) fail(kBlockStarters);
        while (!at_end()) {
            if (!is_block_start()) fail(kBlockStarters);
            ast.blocks.push_back(parse_block());
        }
        return ast;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    bool at_end() const { return pos_ + 1 >= tokens_.size(); }
    std::string peek_keyword() const { return upper(peek().text); }

    bool peek_is(std::initializer_list<std::string_view> words) const {
        if (at_end()) return false;
        const std::string kw = peek_keyword();
        return std::find(words.begin(), words.end(), kw) != words.end();
    }

    bool is_block_start() const { return peek_is({"PONER", "PUT", "SI", "IF", "REPETIR", "REPEAT"}); }
    bool is_put_keyword() const { return peek_is({"PONER", "PUT"}); }

    [[noreturn]] void fail(std::vector<std::string> expected) const {
        const Token& tok = peek();
        throw ParseError(tok.line, tok.column, at_end() ? std::string() : tok.text, std::move(expected));
    }

    std::vector<std::string> with_block_starters(std::initializer_list<std::string> extra) const {
        std::vector<std::string> out = kBlockStarters;
        out.insert(out.end(), extra);
        return out;
    }

    Ingredient expect_ingredient() {
        if (at_end()) fail({"ingredient"});
        if (auto ingredient = ingredient_from_token(peek().text)) {
            ++pos_;
            return *ingredient;
        }
        fail({"ingredient"});
    }

    Block parse_block() {
        const std::string kw = peek_keyword();
        if (kw == "PONER" || kw == "PUT") {
            ++pos_;
            return Put{expect_ingredient()};
        }
        if (kw == "SI" || kw == "IF") return parse_if(kw == "SI");
        if (kw == "REPETIR" || kw == "REPEAT") return parse_repeat();
        fail(kBlockStarters);
    }

    // Collects blocks until the next token is not a block starter.
    std::vector<Block> parse_body() {
        std::vector<Block> body;
        while (is_block_start()) body.push_back(parse_block());
        return body;
    }

    void expect_end() {
        if (peek_is({"FIN", "END"})) {
            ++pos_;
            return;
        }
        fail(with_block_starters({"FIN", "END"}));
    }

    Block parse_if(bool spanish) {
        ++pos_;
        const char* second = spanish ? "HAY" : "HAS";
        if (at_end() || peek_keyword() != second) fail({second});
        ++pos_;
        If node{Condition{expect_ingredient()}, {}, {}};
        node.then_body = parse_body();
        if (peek_is({"SINO", "ELSE"})) {
            ++pos_;
            node.else_body = parse_body();
        } else if (!peek_is({"FIN", "END"})) {
            fail(with_block_starters({"SINO", "ELSE", "FIN", "END"}));
        }
        expect_end();
        return node;
    }

    Block parse_repeat() {
        ++pos_;
        if (at_end()) fail({"integer"});
        const std::string& digits = peek().text;
        int count = 0;
        const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), count);
        const bool all_digits = std::all_of(digits.begin(), digits.end(),
                                            [](unsigned char c) { return std::isdigit(c) != 0; });
        if (!all_digits || ec != std::errc{} || ptr != digits.data() + digits.size()) fail({"integer"});
        ++pos_;
        if (!peek_is({"VECES", "TIMES"})) fail({"VECES", "TIMES"});
        ++pos_;
        if (!is_block_start()) fail(kBlockStarters);
        Repeat node{count, parse_body()};
        expect_end();
        return node;
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

}  // namespace

ParseError::ParseError(int line, int column, std::string found, std::vector<std::string> expected)
    : std::runtime_error(fmt::format("line {}, column {}: unexpected {}; expected {}", line, column,
                                     found.empty() ? "end of input" : "'" + found + "'",
                                     describe_expected(expected))),
      line_(line),
      column_(column),
      found_(std::move(found)),
      expected_(std::move(expected)) {}

OrderAst parse(std::string_view text) { return Parser(tokenize(text)).parse_order(); }

}  // namespace cooking_code
