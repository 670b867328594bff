#include "lgpr/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <vector>

#include "lgpr/errors.hpp"

namespace lgpr {

struct Expression::Node {
    enum Kind { Num, Var, Neg, Add, Sub, Mul, Div, Pow, Call } kind = Num;
    double value = 0.0;
    int var = 0;
    std::string fn;
    std::vector<std::shared_ptr<const Node>> args;

    double eval(const ExprVars& v) const {
        switch (kind) {
        case Num: return value;
        case Var: return var == 0 ? v.x : var == 1 ? v.y : var == 2 ? v.xi : v.theta;
        case Neg: return -args[0]->eval(v);
        case Add: return args[0]->eval(v) + args[1]->eval(v);
        case Sub: return args[0]->eval(v) - args[1]->eval(v);
        case Mul: return args[0]->eval(v) * args[1]->eval(v);
        case Div: return args[0]->eval(v) / args[1]->eval(v);
        case Pow: return std::pow(args[0]->eval(v), args[1]->eval(v));
        case Call: break;
        }
        const double a = args[0]->eval(v);
        if (fn == "exp") return std::exp(a);
        if (fn == "sin") return std::sin(a);
        if (fn == "cos") return std::cos(a);
        if (fn == "tan") return std::tan(a);
        if (fn == "sqrt") return std::sqrt(a);
        if (fn == "abs") return std::abs(a);
        if (fn == "log") return std::log(a);
        const double b = args[1]->eval(v);
        if (fn == "atan2") return std::atan2(a, b);
        if (fn == "min") return std::min(a, b);
        return std::max(a, b);
    }

    bool constant() const {
        if (kind == Var)
            return false;
        for (const auto& a : args)
            if (!a->constant())
                return false;
        return true;
    }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    NodePtr parse() {
        NodePtr n = sum();
        skip();
        if (pos_ != s_.size())
            fail("unexpected trailing input");
        return n;
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& why) const {
        throw ConfigError("expression '" + s_ + "': " + why + " at offset " + std::to_string(pos_));
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    static NodePtr make(Expression::Node::Kind k, std::vector<NodePtr> args) {
        auto n = std::make_shared<Expression::Node>();
        n->kind = k;
        n->args = std::move(args);
        return n;
    }

    NodePtr sum() {
        NodePtr l = product();
        for (;;) {
            if (eat('+'))
                l = make(Expression::Node::Add, {l, product()});
            else if (eat('-'))
                l = make(Expression::Node::Sub, {l, product()});
            else
                return l;
        }
    }
    NodePtr product() {
        NodePtr l = unary();
        for (;;) {
            if (eat('*'))
                l = make(Expression::Node::Mul, {l, unary()});
            else if (eat('/'))
                l = make(Expression::Node::Div, {l, unary()});
            else
                return l;
        }
    }
    NodePtr unary() {
        if (eat('-'))
            return make(Expression::Node::Neg, {unary()});
        if (eat('+'))
            return unary();
        return power();
    }
    NodePtr power() {
        NodePtr base = atom();
        if (eat('^'))
            return make(Expression::Node::Pow, {base, unary()});  // right associative
        return base;
    }
    NodePtr atom() {
        skip();
        if (pos_ >= s_.size())
            fail("unexpected end");
        const char c = s_[pos_];
        if (eat('(')) {
            NodePtr n = sum();
            if (!eat(')'))
                fail("missing ')'");
            return n;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = s_.c_str() + pos_;
            char* end = nullptr;
            const double v = std::strtod(begin, &end);
            if (end == begin)
                fail("bad number");
            pos_ += static_cast<std::size_t>(end - begin);
            auto n = std::make_shared<Expression::Node>();
            n->value = v;
            return n;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            const std::string id = s_.substr(start, pos_ - start);
            auto n = std::make_shared<Expression::Node>();
            if (id == "x" || id == "y" || id == "xi" || id == "theta") {
                n->kind = Expression::Node::Var;
                n->var = id == "x" ? 0 : id == "y" ? 1 : id == "xi" ? 2 : 3;
                return n;
            }
            if (id == "pi" || id == "e") {
                n->value = id == "pi" ? std::numbers::pi : std::numbers::e;
                return n;
            }
            const bool unary_fn = id == "exp" || id == "sin" || id == "cos" || id == "tan" || id == "sqrt" ||
                                  id == "abs" || id == "log";
            const bool binary_fn = id == "atan2" || id == "min" || id == "max";
            if (!unary_fn && !binary_fn)
                fail("unknown identifier '" + id + "'");
            if (!eat('('))
                fail("expected '(' after " + id);
            n->kind = Expression::Node::Call;
            n->fn = id;
            n->args.push_back(sum());
            if (binary_fn) {
                if (!eat(','))
                    fail("expected ',' in " + id);
                n->args.push_back(sum());
            }
            if (!eat(')'))
                fail("missing ')'");
            return n;
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

} // namespace

Expression::Expression(std::string text) : text_(std::move(text)), root_(Parser(text_).parse()) {}

double Expression::operator()(const ExprVars& v) const { return root_->eval(v); }

double Expression::operator()(double x, double y) const {
    return root_->eval({x, y, std::atan2(y, x), std::atan2(y, x)});
}

bool Expression::is_constant() const { return root_->constant(); }

} // namespace lgpr
