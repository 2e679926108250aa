#include "teamcheck/formula.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace teamcheck {

// AST

Formula Formula::prop(std::string name) {
    if (name.empty()) throw std::invalid_argument("proposition name must not be empty");
    auto node = std::make_shared<Node>();
    node->kind = FormulaKind::Prop;
    node->name = std::move(name);
    return Formula(std::move(node));
}

Formula Formula::neg_prop(std::string name) {
    if (name.empty()) throw std::invalid_argument("proposition name must not be empty");
    auto node = std::make_shared<Node>();
    node->kind = FormulaKind::NegProp;
    node->name = std::move(name);
    return Formula(std::move(node));
}

Formula Formula::dep(std::vector<std::string> antecedents, std::string consequent) {
    if (consequent.empty()) throw std::invalid_argument("dependence atom needs a consequent");
    auto node = std::make_shared<Node>();
    node->kind = FormulaKind::Dep;
    node->antecedents = std::move(antecedents);
    node->name = std::move(consequent);
    return Formula(std::move(node));
}

Formula Formula::apply(BooleanFunction f, std::vector<Formula> args) {
    if (args.size() != f.arity())
        throw std::invalid_argument("function '" + f.name() + "' expects " +
                                    std::to_string(f.arity()) + " arguments, got " +
                                    std::to_string(args.size()));
    auto node = std::make_shared<Node>();
    node->kind = FormulaKind::Apply;
    node->fn = std::move(f);
    node->children = std::move(args);
    return Formula(std::move(node));
}

Formula Formula::diamond(Formula f) {
    auto node = std::make_shared<Node>();
    node->kind = FormulaKind::Diamond;
    node->children.push_back(std::move(f));
    return Formula(std::move(node));
}

Formula Formula::box(Formula f) {
    auto node = std::make_shared<Node>();
    node->kind = FormulaKind::Box;
    node->children.push_back(std::move(f));
    return Formula(std::move(node));
}

Formula Formula::box_dot(Formula f) {
    auto node = std::make_shared<Node>();
    node->kind = FormulaKind::BoxDot;
    node->children.push_back(std::move(f));
    return Formula(std::move(node));
}

const std::string& Formula::prop_name() const {
    if (node_->kind != FormulaKind::Prop && node_->kind != FormulaKind::NegProp)
        throw std::logic_error("prop_name() on a non-atomic formula");
    return node_->name;
}

const std::vector<std::string>& Formula::dep_antecedents() const {
    if (node_->kind != FormulaKind::Dep) throw std::logic_error("dep_antecedents() on a non-dep formula");
    return node_->antecedents;
}

const std::string& Formula::dep_consequent() const {
    if (node_->kind != FormulaKind::Dep) throw std::logic_error("dep_consequent() on a non-dep formula");
    return node_->name;
}

const BooleanFunction& Formula::function() const {
    if (node_->kind != FormulaKind::Apply) throw std::logic_error("function() on a non-apply formula");
    return *node_->fn;
}

const std::vector<Formula>& Formula::args() const {
    if (node_->kind != FormulaKind::Apply) throw std::logic_error("args() on a non-apply formula");
    return node_->children;
}

const Formula& Formula::child() const {
    if (node_->kind != FormulaKind::Diamond && node_->kind != FormulaKind::Box &&
        node_->kind != FormulaKind::BoxDot)
        throw std::logic_error("child() on a non-modal formula");
    return node_->children.front();
}

bool Formula::operator==(const Formula& other) const {
    if (node_ == other.node_) return true;
    if (node_->kind != other.node_->kind) return false;
    switch (node_->kind) {
        case FormulaKind::Prop:
        case FormulaKind::NegProp:
            return node_->name == other.node_->name;
        case FormulaKind::Dep:
            return node_->name == other.node_->name && node_->antecedents == other.node_->antecedents;
        case FormulaKind::Apply:
            if (!(*node_->fn == *other.node_->fn)) return false;
            break;
        case FormulaKind::Diamond:
        case FormulaKind::Box:
        case FormulaKind::BoxDot:
            break;
    }
    if (node_->children.size() != other.node_->children.size()) return false;
    for (std::size_t i = 0; i < node_->children.size(); ++i)
        if (node_->children[i] != other.node_->children[i]) return false;
    return true;
}

std::size_t Formula::node_count() const {
    std::size_t n = 1;
    for (const auto& c : node_->children) n += c.node_count();
    return n;
}

unsigned Formula::depth() const {
    unsigned d = 0;
    for (const auto& c : node_->children) d = std::max(d, c.depth());
    return d + 1;
}

namespace {
void collect_props(const Formula& f, std::set<std::string>& out) {
    switch (f.kind()) {
        case FormulaKind::Prop:
        case FormulaKind::NegProp:
            out.insert(f.prop_name());
            return;
        case FormulaKind::Dep:
            out.insert(f.dep_consequent());
            for (const auto& a : f.dep_antecedents()) out.insert(a);
            return;
        case FormulaKind::Apply:
            for (const auto& a : f.args()) collect_props(a, out);
            return;
        case FormulaKind::Diamond:
        case FormulaKind::Box:
        case FormulaKind::BoxDot:
            collect_props(f.child(), out);
            return;
    }
}
} // namespace

std::vector<std::string> Formula::propositions() const {
    std::set<std::string> props;
    collect_props(*this, props);
    return {props.begin(), props.end()};
}

// Parser

namespace {

struct Token {
    enum Type { Ident, Tilde, Bang, Amp, Caret, Pipe, LParen, RParen, Comma, End } type;
    std::string text;
    std::size_t position;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }
    Token take() {
        Token t = current_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        const std::size_t start = pos_;
        if (pos_ >= text_.size()) {
            current_ = {Token::End, "", start};
            return;
        }
        const char c = text_[pos_];
        auto single = [&](Token::Type t) {
            ++pos_;
            current_ = {t, std::string(1, c), start};
        };
        switch (c) {
            case '~': return single(Token::Tilde);
            case '!': return single(Token::Bang);
            case '&': return single(Token::Amp);
            case '^': return single(Token::Caret);
            case '|': return single(Token::Pipe);
            case '(': return single(Token::LParen);
            case ')': return single(Token::RParen);
            case ',': return single(Token::Comma);
            default: break;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t end = pos_;
            while (end < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
                ++end;
            current_ = {Token::Ident, std::string(text_.substr(pos_, end - pos_)), start};
            pos_ = end;
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", start);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    Token current_{Token::End, "", 0};
};

class Parser {
public:
    Parser(std::string_view text, const FunctionRegistry& registry)
        : lexer_(text), registry_(registry) {}

    Formula parse() {
        Formula f = parse_disjunction();
        const Token& t = lexer_.peek();
        if (t.type != Token::End)
            throw ParseError("unexpected trailing input '" + t.text + "'", t.position);
        return f;
    }

private:
    const BooleanFunction& required(const char* name, std::size_t position) {
        const BooleanFunction* f = registry_.find(name);
        if (!f) throw ParseError(std::string("function '") + name + "' is not defined", position);
        return *f;
    }

    Formula parse_disjunction() {
        Formula left = parse_xor();
        while (lexer_.peek().type == Token::Pipe) {
            const Token op = lexer_.take();
            Formula right = parse_xor();
            left = Formula::apply(required("or", op.position), {std::move(left), std::move(right)});
        }
        return left;
    }

    Formula parse_xor() {
        Formula left = parse_conjunction();
        while (lexer_.peek().type == Token::Caret) {
            const Token op = lexer_.take();
            Formula right = parse_conjunction();
            left = Formula::apply(required("xor", op.position), {std::move(left), std::move(right)});
        }
        return left;
    }

    Formula parse_conjunction() {
        Formula left = parse_unary();
        while (lexer_.peek().type == Token::Amp) {
            const Token op = lexer_.take();
            Formula right = parse_unary();
            left = Formula::apply(required("and", op.position), {std::move(left), std::move(right)});
        }
        return left;
    }

    Formula parse_unary() {
        const Token& t = lexer_.peek();
        if (t.type == Token::Bang) {
            const Token op = lexer_.take();
            return Formula::apply(required("not", op.position), {parse_unary()});
        }
        if (t.type == Token::Ident) {
            if (t.text == "box") {
                lexer_.take();
                return Formula::box(parse_unary());
            }
            if (t.text == "dia") {
                lexer_.take();
                return Formula::diamond(parse_unary());
            }
            if (t.text == "boxdot") {
                lexer_.take();
                return Formula::box_dot(parse_unary());
            }
        }
        return parse_primary();
    }

    std::string expect_ident(const char* what) {
        const Token t = lexer_.take();
        if (t.type != Token::Ident)
            throw ParseError(std::string("expected ") + what + ", got '" + t.text + "'", t.position);
        return t.text;
    }

    void expect(Token::Type type, const char* what) {
        const Token t = lexer_.take();
        if (t.type != type)
            throw ParseError(std::string("expected ") + what + ", got '" +
                                 (t.type == Token::End ? "end of input" : t.text) + "'",
                             t.position);
    }

    Formula parse_primary() {
        const Token t = lexer_.take();
        switch (t.type) {
            case Token::LParen: {
                Formula inner = parse_disjunction();
                expect(Token::RParen, "')'");
                return inner;
            }
            case Token::Tilde: {
                return Formula::neg_prop(expect_ident("a proposition after '~'"));
            }
            case Token::Ident: {
                if (t.text == "dep") {
                    expect(Token::LParen, "'(' after dep");
                    std::vector<std::string> idents;
                    idents.push_back(expect_ident("a proposition"));
                    while (lexer_.peek().type == Token::Comma) {
                        lexer_.take();
                        idents.push_back(expect_ident("a proposition"));
                    }
                    expect(Token::RParen, "')'");
                    std::string consequent = std::move(idents.back());
                    idents.pop_back();
                    return Formula::dep(std::move(idents), std::move(consequent));
                }
                if (t.text == "box" || t.text == "dia" || t.text == "boxdot")
                    throw ParseError("'" + t.text + "' needs an operand", t.position);
                if (lexer_.peek().type == Token::LParen) {
                    const BooleanFunction* f = registry_.find(t.text);
                    if (!f)
                        throw ParseError("unknown function '" + t.text + "'", t.position);
                    lexer_.take();
                    std::vector<Formula> args;
                    if (lexer_.peek().type != Token::RParen) {
                        args.push_back(parse_disjunction());
                        while (lexer_.peek().type == Token::Comma) {
                            lexer_.take();
                            args.push_back(parse_disjunction());
                        }
                    }
                    expect(Token::RParen, "')'");
                    if (args.size() != f->arity())
                        throw ParseError("function '" + t.text + "' expects " +
                                             std::to_string(f->arity()) + " arguments, got " +
                                             std::to_string(args.size()),
                                         t.position);
                    return Formula::apply(*f, std::move(args));
                }
                // Bare identifier: registered nullary function, else proposition.
                if (const BooleanFunction* f = registry_.find(t.text); f && f->arity() == 0)
                    return Formula::apply(*f, {});
                return Formula::prop(t.text);
            }
            case Token::End:
                throw ParseError("unexpected end of input", t.position);
            default:
                throw ParseError("unexpected '" + t.text + "'", t.position);
        }
    }

    Lexer lexer_;
    const FunctionRegistry& registry_;
};

} // namespace

Formula parse_formula(std::string_view text, const FunctionRegistry& registry) {
    return Parser(text, registry).parse();
}

// Renderer

namespace {

// Precedence levels for printing: | = 1, ^ = 2, & = 3, prefix = 4, atom = 5.
constexpr int kPrecOr = 1, kPrecXor = 2, kPrecAnd = 3, kPrecPrefix = 4, kPrecAtom = 5;

bool is_builtin(const BooleanFunction& f, const BooleanFunction& builtin) {
    return f == builtin;
}

void render(const Formula& f, int min_prec, std::string& out) {
    int prec = kPrecAtom;
    std::string text;
    switch (f.kind()) {
        case FormulaKind::Prop:
            text = f.prop_name();
            break;
        case FormulaKind::NegProp:
            text = "~" + f.prop_name();
            break;
        case FormulaKind::Dep: {
            text = "dep(";
            for (const auto& a : f.dep_antecedents()) {
                text += a;
                text += ",";
            }
            text += f.dep_consequent();
            text += ")";
            break;
        }
        case FormulaKind::Diamond:
        case FormulaKind::Box:
        case FormulaKind::BoxDot: {
            prec = kPrecPrefix;
            text = f.kind() == FormulaKind::Diamond ? "dia "
                 : f.kind() == FormulaKind::Box     ? "box "
                                                    : "boxdot ";
            render(f.child(), kPrecPrefix, text);
            break;
        }
        case FormulaKind::Apply: {
            const BooleanFunction& fn = f.function();
            if (is_builtin(fn, BooleanFunction::builtin_not())) {
                prec = kPrecPrefix;
                text = "!";
                render(f.args()[0], kPrecPrefix, text);
            } else if (is_builtin(fn, BooleanFunction::builtin_and()) ||
                       is_builtin(fn, BooleanFunction::builtin_xor()) ||
                       is_builtin(fn, BooleanFunction::builtin_or())) {
                prec = is_builtin(fn, BooleanFunction::builtin_and())   ? kPrecAnd
                       : is_builtin(fn, BooleanFunction::builtin_xor()) ? kPrecXor
                                                                        : kPrecOr;
                const char* op = prec == kPrecAnd ? " & " : prec == kPrecXor ? " ^ " : " | ";
                render(f.args()[0], prec, text);
                text += op;
                render(f.args()[1], prec + 1, text); // left-associative
            } else if (fn.arity() == 0) {
                text = fn.name();
            } else {
                text = fn.name();
                text += "(";
                for (std::size_t i = 0; i < f.args().size(); ++i) {
                    if (i) text += ", ";
                    render(f.args()[i], 0, text);
                }
                text += ")";
            }
            break;
        }
    }
    if (prec < min_prec) {
        out += "(";
        out += text;
        out += ")";
    } else {
        out += text;
    }
}

} // namespace

std::string render_formula(const Formula& f) {
    std::string out;
    render(f, 0, out);
    return out;
}

// Fragment classification

namespace {
void signature_walk(const Formula& f, FragmentSignature& sig) {
    switch (f.kind()) {
        case FormulaKind::Prop:
        case FormulaKind::NegProp:
            return;
        case FormulaKind::Dep:
            sig.uses_dep = true;
            return;
        case FormulaKind::Apply:
            sig.clone = clone_join(sig.clone, classify_function(f.function()));
            for (const auto& a : f.args()) signature_walk(a, sig);
            return;
        case FormulaKind::Diamond:
            sig.uses_diamond = true;
            signature_walk(f.child(), sig);
            return;
        case FormulaKind::Box:
            sig.uses_box = true;
            signature_walk(f.child(), sig);
            return;
        case FormulaKind::BoxDot:
            // boxdot is not-dia-not: it brings a classical negation with it.
            sig.uses_box = true;
            sig.uses_diamond = true;
            sig.clone = clone_join(sig.clone, CloneLabel::N);
            signature_walk(f.child(), sig);
            return;
    }
}
} // namespace

FragmentSignature fragment_signature(const Formula& f) {
    FragmentSignature sig;
    signature_walk(f, sig);
    return sig;
}

std::string fragment_complexity(const FragmentSignature& sig) {
    if (!sig.uses_diamond) return "NL-complete";
    if (!sig.uses_dep) return "not classified (upper bound: same as with dep)";
    switch (sig.clone) {
        case CloneLabel::ID:
        case CloneLabel::E:
        case CloneLabel::V:
        case CloneLabel::M:
            return "NP-complete";
        case CloneLabel::N:
            return "P^NP[1]-complete";
        case CloneLabel::L:
        case CloneLabel::BF:
            return "PSPACE-complete";
    }
    return "?";
}

bool is_downward_closed_syntactic(const Formula& f) {
    switch (f.kind()) {
        case FormulaKind::Prop:
        case FormulaKind::NegProp:
        case FormulaKind::Dep:
            return true;
        case FormulaKind::BoxDot:
            return false;
        case FormulaKind::Apply:
            if (!f.function().is_monotone()) return false;
            for (const auto& a : f.args())
                if (!is_downward_closed_syntactic(a)) return false;
            return true;
        case FormulaKind::Diamond:
        case FormulaKind::Box:
            return is_downward_closed_syntactic(f.child());
    }
    return false;
}

// N-clone normal form

namespace {

enum class Mod { Dia, Box, BoxDot };

struct ChainForm {
    bool negated = false;
    std::vector<Mod> chain; // outermost first
    Formula leaf;
};

void check_n_fragment(const Formula& f, CloneLabel& clone) {
    switch (f.kind()) {
        case FormulaKind::Prop:
        case FormulaKind::NegProp:
        case FormulaKind::Dep:
            return;
        case FormulaKind::Apply: {
            if (f.function().arity() > 1)
                throw std::invalid_argument(
                    "normalize_n_clone: connective '" + f.function().name() +
                    "' is not unary; the formula is outside the unary N fragment");
            clone = clone_join(clone, classify_function(f.function()));
            if (!clone_leq(clone, CloneLabel::N))
                throw std::invalid_argument(
                    "normalize_n_clone: connectives exceed clone N");
            for (const auto& a : f.args()) check_n_fragment(a, clone);
            return;
        }
        case FormulaKind::Diamond:
        case FormulaKind::Box:
        case FormulaKind::BoxDot:
            check_n_fragment(f.child(), clone);
            return;
    }
}

ChainForm to_chain(const Formula& f) {
    switch (f.kind()) {
        case FormulaKind::Prop:
        case FormulaKind::NegProp:
        case FormulaKind::Dep:
            return {false, {}, f};
        case FormulaKind::Apply: {
            const BooleanFunction& fn = f.function();
            if (fn.arity() == 0) return {false, {}, f};
            ChainForm r = to_chain(f.args()[0]);
            const bool v0 = fn.table()[0], v1 = fn.table()[1];
            if (v0 == v1) {
                // Constant-valued connective: the operand is irrelevant.
                return {false, {}, Formula::apply(v0 ? BooleanFunction::builtin_top()
                                                     : BooleanFunction::builtin_bot(), {})};
            }
            if (!v0 && v1) return r;  // identity
            r.negated = !r.negated;   // negation
            return r;
        }
        case FormulaKind::Diamond:
        case FormulaKind::Box:
        case FormulaKind::BoxDot: {
            ChainForm r = to_chain(f.child());
            Mod m = f.kind() == FormulaKind::Diamond ? Mod::Dia
                  : f.kind() == FormulaKind::Box     ? Mod::Box
                                                     : Mod::BoxDot;
            if (r.negated) {
                // Float the negation outward. These are exact dualities:
                // dia !x == !boxdot x, boxdot !x == !dia x, box !x == !box x.
                if (m == Mod::Dia) m = Mod::BoxDot;
                else if (m == Mod::BoxDot) m = Mod::Dia;
            }
            r.chain.insert(r.chain.begin(), m);
            return r;
        }
    }
    throw std::logic_error("unreachable");
}

} // namespace

Formula normalize_n_clone(const Formula& f, bool rewrite_box_dot) {
    CloneLabel clone = CloneLabel::ID;
    check_n_fragment(f, clone);

    ChainForm form = to_chain(f);

    if (rewrite_box_dot) {
        // Walk inside out; a boxdot whose operand is syntactically
        // downward closed becomes box. After negation floating the whole
        // suffix below any position is negation-free, so every boxdot
        // converts (each conversion keeps the suffix downward closed).
        bool suffix_closed = is_downward_closed_syntactic(form.leaf);
        for (std::size_t i = form.chain.size(); i-- > 0;) {
            if (form.chain[i] == Mod::BoxDot) {
                if (suffix_closed)
                    form.chain[i] = Mod::Box;
                else
                    suffix_closed = false;
            }
        }
    }

    Formula out = form.leaf;
    for (std::size_t i = form.chain.size(); i-- > 0;) {
        switch (form.chain[i]) {
            case Mod::Dia: out = Formula::diamond(std::move(out)); break;
            case Mod::Box: out = Formula::box(std::move(out)); break;
            case Mod::BoxDot: out = Formula::box_dot(std::move(out)); break;
        }
    }
    if (form.negated) out = Formula::apply(BooleanFunction::builtin_not(), {std::move(out)});
    return out;
}

} // namespace teamcheck
