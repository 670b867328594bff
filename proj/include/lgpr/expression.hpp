#pragma once

#include <memory>
#include <string>

namespace lgpr {

struct ExprVars {
    double x = 0.0;
    double y = 0.0;
    double xi = 0.0;
    double theta = 0.0;
};

/// Arithmetic over x, y, xi, theta with + - * / ^, unary minus, pi, e and
/// exp sin cos tan sqrt abs log atan2 min max. Throws ConfigError on bad input.
class Expression {
public:
    explicit Expression(std::string text);
    double operator()(const ExprVars& v) const;
    double operator()(double x, double y) const;
    const std::string& text() const { return text_; }
    bool is_constant() const;

    struct Node;

private:
    std::string text_;
    std::shared_ptr<const Node> root_;
};

} // namespace lgpr
