#pragma once
#include <string>
#include <vector>

#include "lorentz/dual.hpp"
#include "lorentz/error.hpp"

namespace lorentz {

/// Parsed arithmetic expression over named variables. Supports
/// + - * / ^, unary minus, parentheses, numeric literals and the functions
/// sin cos tan sinh cosh tanh exp log sqrt atan abs. Evaluation is templated
/// over the scalar type so expressions differentiate through dual numbers.
class ScalarExpr {
public:
    static ScalarExpr parse(const std::string& text, const std::vector<std::string>& variables);

    template <class T>
    T eval(const VecT<T>& vars) const {
        return eval_node<T>(root_, vars);
    }

    const std::string& text() const { return text_; }

private:
    enum class Op {
        Const, Var, Add, Sub, Mul, Div, Pow, Neg,
        Sin, Cos, Tan, Sinh, Cosh, Tanh, Exp, Log, Sqrt, Atan, Abs,
    };
    struct Node {
        Op op;
        int a = -1, b = -1; // child indices
        double cval = 0.0;  // Const
        int var = -1;       // Var
    };

    template <class T>
    T eval_node(int idx, const VecT<T>& vars) const {
        const Node& n = nodes_[static_cast<std::size_t>(idx)];
        switch (n.op) {
        case Op::Const: return T(n.cval);
        case Op::Var: return vars[static_cast<std::size_t>(n.var)];
        case Op::Add: return eval_node<T>(n.a, vars) + eval_node<T>(n.b, vars);
        case Op::Sub: return eval_node<T>(n.a, vars) - eval_node<T>(n.b, vars);
        case Op::Mul: return eval_node<T>(n.a, vars) * eval_node<T>(n.b, vars);
        case Op::Div: return eval_node<T>(n.a, vars) / eval_node<T>(n.b, vars);
        case Op::Pow: {
            const Node& e = nodes_[static_cast<std::size_t>(n.b)];
            if (e.op == Op::Const) {
                using std::pow; using lorentz::pow;
                return pow(eval_node<T>(n.a, vars), e.cval);
            }
            using std::exp; using std::log; using lorentz::exp; using lorentz::log;
            return exp(eval_node<T>(n.b, vars) * log(eval_node<T>(n.a, vars)));
        }
        case Op::Neg: return -eval_node<T>(n.a, vars);
        case Op::Sin: { using std::sin; using lorentz::sin; return sin(eval_node<T>(n.a, vars)); }
        case Op::Cos: { using std::cos; using lorentz::cos; return cos(eval_node<T>(n.a, vars)); }
        case Op::Tan: { using std::tan; using lorentz::tan; return tan(eval_node<T>(n.a, vars)); }
        case Op::Sinh: { using std::sinh; using lorentz::sinh; return sinh(eval_node<T>(n.a, vars)); }
        case Op::Cosh: { using std::cosh; using lorentz::cosh; return cosh(eval_node<T>(n.a, vars)); }
        case Op::Tanh: { using std::tanh; using lorentz::tanh; return tanh(eval_node<T>(n.a, vars)); }
        case Op::Exp: { using std::exp; using lorentz::exp; return exp(eval_node<T>(n.a, vars)); }
        case Op::Log: { using std::log; using lorentz::log; return log(eval_node<T>(n.a, vars)); }
        case Op::Sqrt: { using std::sqrt; using lorentz::sqrt; return sqrt(eval_node<T>(n.a, vars)); }
        case Op::Atan: { using std::atan; using lorentz::atan; return atan(eval_node<T>(n.a, vars)); }
        case Op::Abs: { using std::fabs; using lorentz::fabs; return fabs(eval_node<T>(n.a, vars)); }
        }
        fail(ErrorCode::ConfigParse, "corrupt expression tree");
    }

    friend class ExprParser;
    std::vector<Node> nodes_;
    int root_ = -1;
    std::string text_;
};

} // namespace lorentz
