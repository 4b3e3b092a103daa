#include <bbsolve/eqparse.hpp>
#include <bbsolve/algebra/squarefree.hpp>

#include <cctype>
#include <memory>
#include <set>

namespace bbsolve {

using algebra::GaussianRational;
using algebra::QBiPoly;
using algebra::QPoly;
using algebra::RatFunc;

namespace {

constexpr int max_apostrophes = 12;
constexpr long max_exponent = 512;

enum class Tok { Number, Ident, Prime, Op, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
    int primes = 0;
};

std::vector<Token> lex(const std::string& s)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        unsigned char ch = static_cast<unsigned char>(s[i]);
        if (std::isspace(ch)) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (std::isdigit(ch) || (ch == '.' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
                ++i;
            if (i < s.size() && s[i] == '.') {
                ++i;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
                    ++i;
            }
            out.push_back({Tok::Number, s.substr(start, i - start), start});
            continue;
        }
        if (std::isalpha(ch) || ch == '_') {
            while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
                ++i;
            out.push_back({Tok::Ident, s.substr(start, i - start), start});
            continue;
        }
        // ' and the Unicode primes U+2032..U+2034 (E2 80 B2..B4 in UTF-8).
        if (ch == '\'' || (ch == 0xE2 && i + 2 < s.size() && static_cast<unsigned char>(s[i + 1]) == 0x80 &&
                           static_cast<unsigned char>(s[i + 2]) >= 0xB2 && static_cast<unsigned char>(s[i + 2]) <= 0xB4)) {
            int count = 0;
            while (i < s.size()) {
                if (s[i] == '\'') {
                    ++count;
                    ++i;
                } else if (static_cast<unsigned char>(s[i]) == 0xE2 && i + 2 < s.size() &&
                           static_cast<unsigned char>(s[i + 1]) == 0x80 &&
                           static_cast<unsigned char>(s[i + 2]) >= 0xB2 && static_cast<unsigned char>(s[i + 2]) <= 0xB4) {
                    count += static_cast<unsigned char>(s[i + 2]) - 0xB1;
                    i += 3;
                } else {
                    break;
                }
            }
            Token t{Tok::Prime, s.substr(start, i - start), start};
            t.primes = count;
            out.push_back(t);
            continue;
        }
        if (ch == '*' && i + 1 < s.size() && s[i + 1] == '*') {
            out.push_back({Tok::Op, "^", start});
            i += 2;
            continue;
        }
        if (std::string("+-*/^()=:;").find(static_cast<char>(ch)) != std::string::npos) {
            out.push_back({Tok::Op, std::string(1, static_cast<char>(ch)), start});
            ++i;
            continue;
        }
        throw ParseError(ErrorKind::SyntaxError, start, "unexpected character '" + std::string(1, static_cast<char>(ch)) + "'");
    }
    out.push_back({Tok::End, "", s.size()});
    return out;
}

enum class NodeKind { Const, Deriv, VarP, VarQ, Add, Sub, Mul, Div, Neg, Pow };

struct Node {
    NodeKind kind;
    std::size_t pos;
    GaussianRational value;
    int order = 0;
    long exponent = 0;
    std::unique_ptr<Node> lhs;
    std::unique_ptr<Node> rhs;
};

using NodePtr = std::unique_ptr<Node>;

NodePtr make_node(NodeKind kind, std::size_t pos, NodePtr lhs = nullptr, NodePtr rhs = nullptr)
{
    auto n = std::make_unique<Node>();
    n->kind = kind;
    n->pos = pos;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

class Parser {
public:
    Parser(std::vector<Token> tokens, bool raw) : toks_(std::move(tokens)), raw_(raw) {}

    const Token& peek() const { return toks_[at_]; }
    const Token& next() { return toks_[at_++]; }

    bool is_op(const char* op) const { return peek().kind == Tok::Op && peek().text == op; }

    [[noreturn]] void fail(const std::string& message, std::vector<std::string> expected) const
    {
        throw ParseError(ErrorKind::SyntaxError, peek().pos, message, std::move(expected));
    }

    void expect_op(const char* op)
    {
        if (!is_op(op))
            fail("unexpected " + describe(peek()), {std::string("'") + op + "'"});
        ++at_;
    }

    static std::string describe(const Token& t)
    {
        if (t.kind == Tok::End)
            return "end of input";
        return "'" + t.text + "'";
    }

    NodePtr expr()
    {
        NodePtr lhs = term();
        while (is_op("+") || is_op("-")) {
            const Token& op = next();
            NodePtr rhs = term();
            lhs = make_node(op.text == "+" ? NodeKind::Add : NodeKind::Sub, op.pos, std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    NodePtr term()
    {
        NodePtr lhs = unary();
        while (is_op("*") || is_op("/")) {
            const Token& op = next();
            NodePtr rhs = unary();
            lhs = make_node(op.text == "*" ? NodeKind::Mul : NodeKind::Div, op.pos, std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    NodePtr unary()
    {
        if (is_op("-")) {
            std::size_t pos = next().pos;
            return make_node(NodeKind::Neg, pos, unary());
        }
        if (is_op("+")) {
            next();
            return unary();
        }
        return power();
    }

    long exponent()
    {
        bool paren = false;
        if (is_op("(")) {
            paren = true;
            next();
        }
        bool negative = false;
        if (is_op("-") || is_op("+")) {
            negative = next().text == "-";
        }
        if (peek().kind != Tok::Number || peek().text.find('.') != std::string::npos)
            fail("exponent must be an integer literal", {"integer"});
        const Token& t = next();
        if (t.text.size() > 6)
            throw ParseError(ErrorKind::DegenerateInput, t.pos, "exponent too large");
        long e = std::stol(t.text);
        if (e > max_exponent)
            throw ParseError(ErrorKind::DegenerateInput, t.pos, "exponent too large");
        if (paren)
            expect_op(")");
        return negative ? -e : e;
    }

    NodePtr power()
    {
        NodePtr base = primary();
        if (is_op("^")) {
            std::size_t pos = next().pos;
            long e = exponent();
            NodePtr n = make_node(NodeKind::Pow, pos, std::move(base));
            n->exponent = e;
            return n;
        }
        return base;
    }

    std::vector<std::string> primary_expected() const
    {
        if (raw_)
            return {"number", "p", "q", "i", "'('"};
        return {"number", "y", "i", "'('"};
    }

    NodePtr primary()
    {
        const Token& t = peek();
        if (t.kind == Tok::Number) {
            next();
            auto n = make_node(NodeKind::Const, t.pos);
            n->value = GaussianRational(algebra::parse_rational(t.text));
            return n;
        }
        if (t.kind == Tok::Op && t.text == "(") {
            next();
            NodePtr inner = expr();
            expect_op(")");
            return inner;
        }
        if (t.kind == Tok::Ident) {
            if (t.text == "i") {
                next();
                auto n = make_node(NodeKind::Const, t.pos);
                n->value = GaussianRational::imaginary_unit();
                return n;
            }
            if (raw_ && (t.text == "p" || t.text == "q")) {
                next();
                return make_node(t.text == "p" ? NodeKind::VarP : NodeKind::VarQ, t.pos);
            }
            if (!raw_ && t.text == "y")
                return derivative();
            fail("unknown identifier '" + t.text + "'", primary_expected());
        }
        fail("unexpected " + describe(t), primary_expected());
    }

    // y, y', y'', ..., or y^(k) with a positive integer literal k.
    NodePtr derivative()
    {
        const Token& y = next();
        auto n = make_node(NodeKind::Deriv, y.pos);
        if (peek().kind == Tok::Prime) {
            const Token& pr = next();
            if (pr.primes > max_apostrophes)
                throw ParseError(ErrorKind::UnsupportedForm, pr.pos,
                                 "more than " + std::to_string(max_apostrophes) + " apostrophes; write y^(k)");
            n->order = pr.primes;
            return n;
        }
        if (is_op("^") && at_ + 3 < toks_.size() && toks_[at_ + 1].kind == Tok::Op && toks_[at_ + 1].text == "(" &&
            toks_[at_ + 2].kind == Tok::Number && toks_[at_ + 3].kind == Tok::Op && toks_[at_ + 3].text == ")") {
            const std::string& digits = toks_[at_ + 2].text;
            if (digits.find('.') == std::string::npos && digits.size() <= 4 && std::stol(digits) > 0) {
                n->order = static_cast<int>(std::stol(digits));
                at_ += 4;
            }
        }
        return n;
    }

    std::size_t position() const { return peek().pos; }
    bool at_end() const { return peek().kind == Tok::End; }

private:
    std::vector<Token> toks_;
    std::size_t at_ = 0;
    bool raw_;
};

void collect_orders(const Node* n, std::vector<std::pair<int, std::size_t>>& out)
{
    if (!n)
        return;
    if (n->kind == NodeKind::Deriv)
        out.emplace_back(n->order, n->pos);
    collect_orders(n->lhs.get(), out);
    collect_orders(n->rhs.get(), out);
}

bool has_derivative(const Node* n, int k)
{
    std::vector<std::pair<int, std::size_t>> orders;
    collect_orders(n, orders);
    for (const auto& [o, pos] : orders)
        if (o == k)
            return true;
    return false;
}

QBiPoly eval_poly(const Node* n, int k)
{
    switch (n->kind) {
    case NodeKind::Const:
        return QBiPoly(n->value);
    case NodeKind::VarP:
        return QBiPoly::term(GaussianRational(1), 1, 0);
    case NodeKind::VarQ:
        return QBiPoly::term(GaussianRational(1), 0, 1);
    case NodeKind::Deriv:
        return n->order == k ? QBiPoly::term(GaussianRational(1), 1, 0) : QBiPoly::term(GaussianRational(1), 0, 1);
    case NodeKind::Add:
        return eval_poly(n->lhs.get(), k) + eval_poly(n->rhs.get(), k);
    case NodeKind::Sub:
        return eval_poly(n->lhs.get(), k) - eval_poly(n->rhs.get(), k);
    case NodeKind::Mul:
        return eval_poly(n->lhs.get(), k) * eval_poly(n->rhs.get(), k);
    case NodeKind::Neg:
        return -eval_poly(n->lhs.get(), k);
    case NodeKind::Div: {
        QBiPoly den = eval_poly(n->rhs.get(), k);
        if (den.is_zero())
            throw ParseError(ErrorKind::DegenerateInput, n->pos, "division by zero");
        if (den.terms().size() != 1 || den.terms().begin()->first != std::pair<int, int>{0, 0})
            throw ParseError(ErrorKind::NotPolynomial, n->pos,
                             "division by a non-constant expression outside a resolved right-hand side");
        return eval_poly(n->lhs.get(), k) * den.terms().begin()->second.inverse();
    }
    case NodeKind::Pow: {
        if (n->exponent < 0)
            throw ParseError(ErrorKind::NotPolynomial, n->pos, "negative exponent outside a resolved right-hand side");
        QBiPoly base = eval_poly(n->lhs.get(), k);
        return base.pow(static_cast<unsigned long>(n->exponent));
    }
    }
    return {};
}

RatFunc eval_rat(const Node* n)
{
    switch (n->kind) {
    case NodeKind::Const:
        return RatFunc(QPoly(n->value));
    case NodeKind::Deriv:
    case NodeKind::VarQ:
        return RatFunc(QPoly::x());
    case NodeKind::VarP:
        break;
    case NodeKind::Add:
        return eval_rat(n->lhs.get()) + eval_rat(n->rhs.get());
    case NodeKind::Sub:
        return eval_rat(n->lhs.get()) - eval_rat(n->rhs.get());
    case NodeKind::Mul:
        return eval_rat(n->lhs.get()) * eval_rat(n->rhs.get());
    case NodeKind::Neg:
        return -eval_rat(n->lhs.get());
    case NodeKind::Div: {
        RatFunc den = eval_rat(n->rhs.get());
        if (den.is_zero())
            throw ParseError(ErrorKind::DegenerateInput, n->pos, "division by zero");
        return eval_rat(n->lhs.get()) / den;
    }
    case NodeKind::Pow: {
        RatFunc base = eval_rat(n->lhs.get());
        if (n->exponent < 0 && base.is_zero())
            throw ParseError(ErrorKind::DegenerateInput, n->pos, "negative power of zero");
        return base.pow(n->exponent);
    }
    }
    throw ParseError(ErrorKind::UnsupportedForm, n->pos, "unexpected variable in a right-hand side");
}

bool starts_raw(const std::vector<Token>& toks)
{
    return toks.size() >= 2 && toks[0].kind == Tok::Ident && toks[0].text == "P" && toks[1].kind == Tok::Op &&
           toks[1].text == ":";
}

EquationSpec parse_raw(const std::string& text, std::vector<Token> toks, std::optional<int> k_override)
{
    Parser ps(std::move(toks), true);
    ps.next();
    ps.next();
    NodePtr body = ps.expr();
    std::optional<int> k;
    if (ps.is_op(";")) {
        ps.next();
        if (!(ps.peek().kind == Tok::Ident && ps.peek().text == "k"))
            ps.fail("expected the derivative order", {"'k'"});
        ps.next();
        ps.expect_op("=");
        if (ps.peek().kind != Tok::Number || ps.peek().text.find('.') != std::string::npos ||
            ps.peek().text.size() > 4 || std::stol(ps.peek().text) < 1)
            ps.fail("derivative order must be a positive integer", {"positive integer"});
        k = static_cast<int>(std::stol(ps.next().text));
    }
    if (!ps.at_end())
        ps.fail("unexpected " + Parser::describe(ps.peek()), {"'+'", "'-'", "'*'", "'/'", "'^'", "';'", "end of input"});
    if (!k) {
        if (!k_override)
            throw ParseError(ErrorKind::SyntaxError, text.size(), "missing derivative order", {"'; k='"});
        k = k_override;
    } else if (k_override && *k_override != *k) {
        throw ParseError(ErrorKind::UnsupportedForm, 0, "derivative order given twice with different values");
    }
    if (*k < 1)
        throw ParseError(ErrorKind::DegenerateInput, 0, "derivative order must be positive");
    return make_spec(eval_poly(body.get(), *k), *k, text);
}

EquationSpec parse_ode(const std::string& text, std::vector<Token> toks, std::optional<int> k_override)
{
    Parser ps(std::move(toks), false);
    NodePtr lhs = ps.expr();
    if (!ps.is_op("="))
        ps.fail("expected '='", {"'='", "'+'", "'-'", "'*'", "'/'", "'^'"});
    ps.next();
    NodePtr rhs = ps.expr();
    if (!ps.at_end())
        ps.fail("unexpected " + Parser::describe(ps.peek()), {"'+'", "'-'", "'*'", "'/'", "'^'", "end of input"});

    std::vector<std::pair<int, std::size_t>> orders;
    collect_orders(lhs.get(), orders);
    collect_orders(rhs.get(), orders);
    int k = 0;
    for (const auto& [o, pos] : orders)
        k = std::max(k, o);
    if (k == 0)
        throw ParseError(ErrorKind::UnsupportedForm, 0, "the equation contains no derivative of y");
    for (const auto& [o, pos] : orders)
        if (o != 0 && o != k)
            throw ParseError(ErrorKind::UnsupportedForm, pos,
                             "only y and y^(" + std::to_string(k) + ") may appear; found y^(" + std::to_string(o) + ")");
    if (k_override && *k_override != k)
        throw ParseError(ErrorKind::UnsupportedForm, 0, "derivative order given twice with different values");

    const Node* bare = nullptr;
    const Node* other = nullptr;
    if (lhs->kind == NodeKind::Deriv && lhs->order == k && !has_derivative(rhs.get(), k)) {
        bare = lhs.get();
        other = rhs.get();
    } else if (rhs->kind == NodeKind::Deriv && rhs->order == k && !has_derivative(lhs.get(), k)) {
        bare = rhs.get();
        other = lhs.get();
    }
    if (bare)
        return make_resolved_spec(eval_rat(other), k, text);
    return make_spec(eval_poly(lhs.get(), k) - eval_poly(rhs.get(), k), k, text);
}

} // namespace

EquationSpec make_spec(const QBiPoly& P, int k, std::string source_text)
{
    if (k < 1)
        throw Error(ErrorKind::DegenerateInput, "derivative order must be positive");
    if (P.is_zero())
        throw Error(ErrorKind::DegenerateInput, "the equation reduces to 0 = 0");
    auto in_p = algebra::primitive_part(P.as_poly_in_x());
    QBiPoly canonical = QBiPoly::from_poly_in_x(in_p);
    canonical = canonical * canonical.terms().rbegin()->second.inverse();
    if (canonical.degree_x() < 1)
        throw Error(ErrorKind::DegenerateInput, "the equation does not involve y^(" + std::to_string(k) + ")");

    EquationSpec spec;
    spec.P = std::move(canonical);
    spec.k = k;
    spec.source_text = std::move(source_text);
    if (spec.P.degree_x() == 1)
        spec.resolved = RatFunc(-spec.P.coeff_x(0), spec.P.coeff_x(1));
    return spec;
}

EquationSpec make_resolved_spec(const RatFunc& R, int k, std::string source_text)
{
    QBiPoly P;
    for (int j = 0; j <= R.den().degree(); ++j)
        P.add_term(1, j, R.den()[static_cast<std::size_t>(j)]);
    for (int j = 0; j <= R.num().degree(); ++j)
        P.add_term(0, j, -R.num()[static_cast<std::size_t>(j)]);
    return make_spec(P, k, std::move(source_text));
}

EquationSpec parse_equation(const std::string& text, std::optional<int> k_override)
{
    std::vector<Token> toks = lex(text);
    if (toks.front().kind == Tok::End)
        throw ParseError(ErrorKind::SyntaxError, 0, "empty equation", {"'P:'", "y"});
    if (starts_raw(toks))
        return parse_raw(text, std::move(toks), k_override);
    return parse_ode(text, std::move(toks), k_override);
}

std::string canonical_string(const EquationSpec& spec)
{
    return "P: " + algebra::to_string(spec.P) + " ; k=" + std::to_string(spec.k);
}

} // namespace bbsolve
