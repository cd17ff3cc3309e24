#include "lorentz/expr.hpp"

#include <cctype>
#include <cstdlib>
#include <map>

namespace lorentz {

namespace {

struct Token {
    enum Kind { Num, Ident, Sym, End } kind;
    double num = 0.0;
    std::string text;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) {}

    Token next() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ >= s_.size()) return {Token::End, 0.0, ""};
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* start = s_.c_str() + pos_;
            char* end = nullptr;
            double v = std::strtod(start, &end);
            pos_ += static_cast<std::size_t>(end - start);
            return {Token::Num, v, ""};
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            return {Token::Ident, 0.0, s_.substr(start, pos_ - start)};
        }
        ++pos_;
        return {Token::Sym, 0.0, std::string(1, c)};
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;
};

} // namespace

class ExprParser {
public:
    ExprParser(const std::string& text, const std::vector<std::string>& vars)
        : lex_(text) {
        for (std::size_t i = 0; i < vars.size(); ++i) var_index_[vars[i]] = static_cast<int>(i);
        advance();
    }

    ScalarExpr run(const std::string& text) {
        ScalarExpr e;
        nodes_ = &e.nodes_;
        e.root_ = parse_expr();
        e.text_ = text;
        if (tok_.kind != Token::End)
            fail(ErrorCode::ConfigParse, "trailing input in expression '" + text + "'");
        return e;
    }

private:
    using Op = ScalarExpr::Op;

    void advance() { tok_ = lex_.next(); }

    bool accept_sym(const char* s) {
        if (tok_.kind == Token::Sym && tok_.text == s) { advance(); return true; }
        return false;
    }

    int add(ScalarExpr::Node n) {
        nodes_->push_back(n);
        return static_cast<int>(nodes_->size()) - 1;
    }

    int parse_expr() {
        int lhs = parse_term();
        for (;;) {
            if (accept_sym("+")) lhs = add({Op::Add, lhs, parse_term()});
            else if (accept_sym("-")) lhs = add({Op::Sub, lhs, parse_term()});
            else return lhs;
        }
    }

    int parse_term() {
        int lhs = parse_unary();
        for (;;) {
            if (accept_sym("*")) lhs = add({Op::Mul, lhs, parse_unary()});
            else if (accept_sym("/")) lhs = add({Op::Div, lhs, parse_unary()});
            else return lhs;
        }
    }

    int parse_unary() {
        if (accept_sym("-")) return add({Op::Neg, parse_unary(), -1});
        if (accept_sym("+")) return parse_unary();
        return parse_power();
    }

    int parse_power() {
        int base = parse_primary();
        if (accept_sym("^")) {
            // right associative
            int expo = parse_unary();
            return add({Op::Pow, base, expo});
        }
        return base;
    }

    int parse_primary() {
        if (tok_.kind == Token::Num) {
            ScalarExpr::Node n{Op::Const, -1, -1};
            n.cval = tok_.num;
            advance();
            return add(n);
        }
        if (tok_.kind == Token::Ident) {
            std::string name = tok_.text;
            advance();
            if (accept_sym("(")) {
                static const std::map<std::string, Op> fns = {
                    {"sin", Op::Sin},   {"cos", Op::Cos},   {"tan", Op::Tan},
                    {"sinh", Op::Sinh}, {"cosh", Op::Cosh}, {"tanh", Op::Tanh},
                    {"exp", Op::Exp},   {"log", Op::Log},   {"sqrt", Op::Sqrt},
                    {"atan", Op::Atan}, {"abs", Op::Abs},
                };
                auto it = fns.find(name);
                if (it == fns.end())
                    fail(ErrorCode::ConfigParse, "unknown function '" + name + "'");
                int arg = parse_expr();
                if (!accept_sym(")"))
                    fail(ErrorCode::ConfigParse, "expected ')' after " + name + "(...)");
                return add({it->second, arg, -1});
            }
            static const std::map<std::string, double> consts = {
                {"pi", 3.14159265358979323846}, {"e", 2.71828182845904523536}};
            if (auto it = consts.find(name); it != consts.end()) {
                ScalarExpr::Node n{Op::Const, -1, -1};
                n.cval = it->second;
                return add(n);
            }
            auto vit = var_index_.find(name);
            if (vit == var_index_.end())
                fail(ErrorCode::ConfigParse, "unknown variable '" + name + "'");
            ScalarExpr::Node n{Op::Var, -1, -1};
            n.var = vit->second;
            return add(n);
        }
        if (accept_sym("(")) {
            int e = parse_expr();
            if (!accept_sym(")")) fail(ErrorCode::ConfigParse, "expected ')'");
            return e;
        }
        fail(ErrorCode::ConfigParse, "unexpected token in expression");
    }

    Lexer lex_;
    Token tok_;
    std::map<std::string, int> var_index_;
    std::vector<ScalarExpr::Node>* nodes_ = nullptr;
};

ScalarExpr ScalarExpr::parse(const std::string& text, const std::vector<std::string>& variables) {
    ExprParser p(text, variables);
    return p.run(text);
}

} // namespace lorentz
