#include "augmap/expr.hpp"

#include <cctype>
#include <cmath>
#include <memory>
#include <vector>

namespace augmap {

namespace {

struct Node {
    enum class Kind { Const, VarX, VarY, Add, Sub, Mul, Div, Pow, Neg, Exp };
    Kind kind;
    double value = 0.0;
    std::unique_ptr<Node> lhs, rhs;

    double eval(double x, double y) const {
        switch (kind) {
            case Kind::Const: return value;
            case Kind::VarX: return x;
            case Kind::VarY: return y;
            case Kind::Add: return lhs->eval(x, y) + rhs->eval(x, y);
            case Kind::Sub: return lhs->eval(x, y) - rhs->eval(x, y);
            case Kind::Mul: return lhs->eval(x, y) * rhs->eval(x, y);
            case Kind::Div: return lhs->eval(x, y) / rhs->eval(x, y);
            case Kind::Pow: return std::pow(lhs->eval(x, y), rhs->eval(x, y));
            case Kind::Neg: return -lhs->eval(x, y);
            case Kind::Exp: return std::exp(lhs->eval(x, y));
        }
        return 0.0;
    }
};

using NodePtr = std::unique_ptr<Node>;

NodePtr make(Node::Kind k, NodePtr l = nullptr, NodePtr r = nullptr) {
    auto n = std::make_unique<Node>();
    n->kind = k;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
}

class Parser {
  public:
    Parser(const std::string& text, const std::map<std::string, double>& consts)
        : text_(text), consts_(consts) {}

    NodePtr parse() {
        NodePtr e = expression();
        skip_ws();
        if (pos_ != text_.size()) throw ExprError("unexpected trailing input", pos_);
        return e;
    }

  private:
    const std::string& text_;
    const std::map<std::string, double>& consts_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool consume(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    NodePtr expression() {
        NodePtr lhs = term();
        while (true) {
            if (consume('+')) {
                lhs = make(Node::Kind::Add, std::move(lhs), term());
            } else if (consume('-')) {
                lhs = make(Node::Kind::Sub, std::move(lhs), term());
            } else {
                return lhs;
            }
        }
    }

    NodePtr term() {
        NodePtr lhs = factor();
        while (true) {
            if (consume('*')) {
                lhs = make(Node::Kind::Mul, std::move(lhs), factor());
            } else if (consume('/')) {
                lhs = make(Node::Kind::Div, std::move(lhs), factor());
            } else {
                return lhs;
            }
        }
    }

    NodePtr factor() {
        if (consume('-')) return make(Node::Kind::Neg, factor());
        if (consume('+')) return factor();
        return power();
    }

    NodePtr power() {
        NodePtr base = atom();
        if (consume('^')) {
            // right-associative: X^2^3 == X^(2^3)
            return make(Node::Kind::Pow, std::move(base), factor());
        }
        return base;
    }

    NodePtr atom() {
        skip_ws();
        if (pos_ >= text_.size()) throw ExprError("unexpected end of expression", pos_);
        const char c = text_[pos_];

        if (c == '(') {
            ++pos_;
            NodePtr e = expression();
            if (!consume(')')) throw ExprError("missing ')'", pos_);
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        throw ExprError(std::string("unexpected character '") + c + "'", pos_);
    }

    NodePtr number() {
        const std::size_t start = pos_;
        std::size_t consumed = 0;
        double v = 0.0;
        try {
            v = std::stod(text_.substr(start), &consumed);
        } catch (const std::exception&) {
            throw ExprError("malformed number", start);
        }
        pos_ = start + consumed;
        auto n = make(Node::Kind::Const);
        n->value = v;
        return n;
    }

    NodePtr identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        const std::string name = text_.substr(start, pos_ - start);
        if (name == "X" || name == "x") return make(Node::Kind::VarX);
        if (name == "Y" || name == "y") return make(Node::Kind::VarY);
        if (name == "exp") {
            if (!consume('(')) throw ExprError("exp requires '('", pos_);
            NodePtr arg = expression();
            if (!consume(')')) throw ExprError("missing ')' after exp", pos_);
            return make(Node::Kind::Exp, std::move(arg));
        }
        if (auto it = consts_.find(name); it != consts_.end()) {
            auto n = make(Node::Kind::Const);
            n->value = it->second;
            return n;
        }
        throw ExprError("unknown identifier '" + name + "'", start);
    }
};

}  // namespace

ScalarField compile_expression(const std::string& text,
                               const std::map<std::string, double>& constants) {
    Parser parser(text, constants);
    std::shared_ptr<Node> root{parser.parse().release()};
    return [root](double x, double y) { return root->eval(x, y); };
}

}  // namespace augmap
