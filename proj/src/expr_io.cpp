#include "geocrystal/expr_io.hpp"

#include <cctype>
#include <stdexcept>
#include <unordered_map>

#include "geocrystal/error.hpp"

namespace geocrystal {

namespace {

enum class Tok { Ident, Literal, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next(bool integer_only = false) {
        skip_space();
        const std::size_t line = line_;
        const std::size_t col = col_;
        if (pos_ >= src_.size()) return {Tok::End, "", line, col};
        const char ch = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_' ||
                                          src_[pos_] == '.'))
                advance();
            return {Tok::Ident, std::string(src_.substr(start, pos_ - start)), line, col};
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
            // p/q with no spaces is one literal
            if (!integer_only && pos_ + 1 < src_.size() && src_[pos_] == '/' && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
                advance();
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
            }
            return {Tok::Literal, std::string(src_.substr(start, pos_ - start)), line, col};
        }
        advance();
        switch (ch) {
            case '+': return {Tok::Plus, "+", line, col};
            case '-': return {Tok::Minus, "-", line, col};
            case '*': return {Tok::Star, "*", line, col};
            case '/': return {Tok::Slash, "/", line, col};
            case '^': return {Tok::Caret, "^", line, col};
            case '(': return {Tok::LParen, "(", line, col};
            case ')': return {Tok::RParen, ")", line, col};
            default: throw ParseError(std::string("unexpected character '") + ch + "'", line, col);
        }
    }

private:
    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }
    void skip_space() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

class Parser {
public:
    explicit Parser(std::string_view src) : lex_(src) { cur_ = lex_.next(); }

    Expr parse() {
        Expr e = expr();
        if (cur_.kind != Tok::End) fail("unexpected '" + cur_.text + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, cur_.line, cur_.column); }

    void shift() { cur_ = lex_.next(); }
    void shift_integer() { cur_ = lex_.next(true); }

    void expect(Tok kind, const char* what) {
        if (cur_.kind != kind) fail(std::string("expected ") + what);
        shift();
    }

    Expr expr() {
        Expr acc = term();
        while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
            const bool plus = cur_.kind == Tok::Plus;
            shift();
            Expr rhs = term();
            acc = plus ? acc + rhs : acc - rhs;
        }
        return acc;
    }

    Expr term() {
        Expr acc = power();
        while (cur_.kind == Tok::Star || cur_.kind == Tok::Slash) {
            const bool star = cur_.kind == Tok::Star;
            shift();
            Expr rhs = power();
            acc = star ? acc * rhs : acc / rhs;
        }
        return acc;
    }

    long exponent() {
        bool paren = false;
        if (cur_.kind == Tok::LParen) {
            paren = true;
            shift_integer();
        }
        bool negative = false;
        if (cur_.kind == Tok::Minus) {
            negative = true;
            shift_integer();
        }
        if (cur_.kind != Tok::Literal || cur_.text.find('/') != std::string::npos) fail("expected integer exponent");
        long k = 0;
        try {
            k = std::stol(cur_.text);
        } catch (const std::out_of_range&) {
            fail("exponent out of range");
        }
        shift();
        if (paren) expect(Tok::RParen, "')'");
        return negative ? -k : k;
    }

    Expr power() {
        Expr base = primary();
        while (cur_.kind == Tok::Caret) {
            shift_integer();
            base = Expr::pow(base, exponent());
        }
        return base;
    }

    Expr literal(bool negative) {
        Rational v = Rational::parse(cur_.text);
        if (v.is_zero()) fail("zero literal is not allowed");
        shift();
        return Expr::constant(negative ? -v : v);
    }

    Expr primary() {
        switch (cur_.kind) {
            case Tok::Ident: {
                Expr v = Expr::var(cur_.text);
                shift();
                return v;
            }
            case Tok::Literal: return literal(false);
            case Tok::LParen: {
                shift();
                Expr inner = expr();
                expect(Tok::RParen, "')'");
                return inner;
            }
            case Tok::Minus: {
                shift();
                if (cur_.kind == Tok::Literal) return literal(true);
                return Expr::constant(Rational(-1)) * primary();
            }
            default: fail(cur_.kind == Tok::End ? "unexpected end of input" : "unexpected '" + cur_.text + "'");
        }
    }

    Lexer lex_;
    Token cur_;
};

int precedence(Op op) {
    switch (op) {
        case Op::Add:
        case Op::Sub: return 1;
        case Op::Mul:
        case Op::Div: return 2;
        case Op::Pow: return 3;
        default: return 4;
    }
}

bool is_atom(const Expr& e) {
    if (e.is_var()) return true;
    return e.is_const() && e.value().is_integer() && e.value().sign() > 0;
}

class Printer {
public:
    std::string operator()(const Expr& e) {
        if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second;
        std::string s = print(e);
        memo_.emplace(e.id(), s);
        return s;
    }

private:
    std::string print(const Expr& e) {
        switch (e.op()) {
            case Op::Var: return e.name();
            case Op::Const: {
                const auto s = e.value().str();
                return e.value().sign() < 0 ? "(" + s + ")" : s;
            }
            case Op::Pow: {
                std::string base = is_atom(e.lhs()) ? (*this)(e.lhs()) : "(" + (*this)(e.lhs()) + ")";
                const long k = e.exponent();
                return base + "^" + (k < 0 ? "(" + std::to_string(k) + ")" : std::to_string(k));
            }
            default: {
                const int p = precedence(e.op());
                std::string l = (*this)(e.lhs());
                std::string r = (*this)(e.rhs());
                if (precedence(e.lhs().op()) < p) l = "(" + l + ")";
                if (precedence(e.rhs().op()) <= p) r = "(" + r + ")";
                const char* sym = e.op() == Op::Add ? " + " : e.op() == Op::Sub ? " - " : e.op() == Op::Mul ? " * " : " / ";
                return l + sym + r;
            }
        }
    }

    std::unordered_map<const detail::Node*, std::string> memo_;
};

}  // namespace

Expr parse_expr(std::string_view text) {
    Parser p(text);
    return p.parse();
}

std::string to_string(const Expr& e) {
    Printer p;
    return p(e);
}

nlohmann::json to_json(const Expr& e) {
    using nlohmann::json;
    switch (e.op()) {
        case Op::Var: return json{{"op", "var"}, {"name", e.name()}};
        case Op::Const: return json{{"op", "const"}, {"value", e.value().str()}};
        case Op::Pow: return json{{"op", "pow"}, {"args", json::array({to_json(e.lhs())})}, {"exponent", e.exponent()}};
        default: return json{{"op", op_name(e.op())}, {"args", json::array({to_json(e.lhs()), to_json(e.rhs())})}};
    }
}

Expr expr_from_json(const nlohmann::json& j) {
    const std::string op = j.at("op").get<std::string>();
    if (op == "var") return Expr::var(j.at("name").get<std::string>());
    if (op == "const") return Expr::constant(Rational::parse(j.at("value").get<std::string>()));
    const auto& args = j.at("args");
    if (op == "pow") {
        if (args.size() != 1) throw std::invalid_argument("pow takes one argument");
        return Expr::pow(expr_from_json(args[0]), j.at("exponent").get<long>());
    }
    if (args.size() != 2) throw std::invalid_argument("binary op '" + op + "' takes two arguments");
    Expr a = expr_from_json(args[0]);
    Expr b = expr_from_json(args[1]);
    if (op == "add") return a + b;
    if (op == "sub") return a - b;
    if (op == "mul") return a * b;
    if (op == "div") return a / b;
    throw std::invalid_argument("unknown op '" + op + "'");
}

}  // namespace geocrystal
