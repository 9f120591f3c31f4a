#include "voa/grammar.hpp"

#include <cctype>
#include <sstream>

#include "voa/errors.hpp"

namespace voa {

namespace {

struct Token {
    enum Kind { Number, Gen, Param, Root, D, One, Punct, End } kind;
    std::string text; // name or punct
    long number = 0;
};

class Lexer {
  public:
    Lexer(const std::string& src, const CtxPtr& ctx, const std::vector<Generator>* gens)
        : src_(src), ctx_(ctx) {
        if (gens)
            for (const auto& g : *gens) names_.push_back(g.name);
        // Longest names first so that e.g. e' wins over e and G++ over G.
        std::sort(names_.begin(), names_.end(),
                  [](const std::string& a, const std::string& b) { return a.size() > b.size(); });
        advance();
    }

    const Token& peek() const { return tok_; }
    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

    [[noreturn]] void error(const std::string& msg) const {
        fail(ErrorKind::Unsupported, "parse error at offset " + std::to_string(pos_) + ": " + msg +
                                         " in \"" + src_ + "\"");
    }

  private:
    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ >= src_.size()) {
            tok_ = {Token::End, "", 0};
            return;
        }
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                ++pos_;
            std::string digits = src_.substr(start, pos_ - start);
            tok_ = {Token::Number, digits, std::stol(digits)};
            return;
        }
        // Generator names, longest match first (names may contain ', +, -).
        for (const auto& n : names_) {
            if (src_.compare(pos_, n.size(), n) == 0 && !name_continues(pos_ + n.size())) {
                pos_ += n.size();
                tok_ = {Token::Gen, n, 0};
                return;
            }
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            ++pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            while (pos_ < src_.size() && src_[pos_] == '\'') ++pos_;
            std::string name = src_.substr(start, pos_ - start);
            // G^{++} style suffix.
            if (pos_ + 1 < src_.size() && src_[pos_] == '^' && src_[pos_ + 1] == '{') {
                size_t close = src_.find('}', pos_ + 2);
                if (close != std::string::npos) {
                    std::string inner = src_.substr(pos_ + 2, close - pos_ - 2);
                    bool signs = !inner.empty();
                    for (char s : inner)
                        if (s != '+' && s != '-') signs = false;
                    if (signs) {
                        name += inner;
                        pos_ = close + 1;
                    }
                }
            }
            for (const auto& n : names_) {
                if (n == name) {
                    tok_ = {Token::Gen, name, 0};
                    return;
                }
            }
            if (name == "d") {
                tok_ = {Token::D, name, 0};
                return;
            }
            if (ctx_ && ctx_->param_index(name) >= 0) {
                tok_ = {Token::Param, name, 0};
                return;
            }
            if (ctx_ && ctx_->root_index(name) >= 0) {
                tok_ = {Token::Root, name, 0};
                return;
            }
            error("unknown name '" + name + "'");
        }
        static const std::string puncts = "+-*/^():";
        if (puncts.find(c) != std::string::npos) {
            ++pos_;
            tok_ = {Token::Punct, std::string(1, c), 0};
            return;
        }
        error(std::string("unexpected character '") + c + "'");
    }

    bool name_continues(size_t at) const {
        if (at >= src_.size()) return false;
        char c = src_[at];
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
    }

    const std::string& src_;
    CtxPtr ctx_;
    std::vector<std::string> names_;
    size_t pos_ = 0;
    Token tok_;
};

class Parser {
  public:
    Parser(const std::string& src, CtxPtr ctx, const std::vector<Generator>* gens)
        : ctx_(std::move(ctx)), gens_(gens), lex_(src, ctx_, gens) {}

    FieldExpr parse() {
        FieldExpr e = parse_expr();
        if (lex_.peek().kind != Token::End) lex_.error("trailing input");
        return e;
    }

  private:
    bool is_punct(const char* p) const {
        return lex_.peek().kind == Token::Punct && lex_.peek().text == p;
    }

    void expect(const char* p) {
        if (!is_punct(p)) lex_.error(std::string("expected '") + p + "'");
        lex_.next();
    }

    FieldExpr parse_expr() {
        bool neg = false;
        if (is_punct("-")) {
            lex_.next();
            neg = true;
        } else if (is_punct("+")) {
            lex_.next();
        }
        FieldExpr acc = parse_term();
        if (neg) acc = -acc;
        while (is_punct("+") || is_punct("-")) {
            bool minus = lex_.next().text == "-";
            FieldExpr t = parse_term();
            acc += minus ? -t : t;
        }
        return acc;
    }

    FieldExpr parse_term() {
        FieldExpr acc = parse_factor();
        while (is_punct("*") || is_punct("/")) {
            bool div = lex_.next().text == "/";
            FieldExpr f = parse_factor();
            acc = combine(acc, f, div);
        }
        return acc;
    }

    FieldExpr combine(const FieldExpr& a, const FieldExpr& b, bool div) {
        bool as = a.is_scalar_multiple_of_vacuum(), bs = b.is_scalar_multiple_of_vacuum();
        if (div) {
            if (!bs) lex_.error("division by a non-scalar field");
            Scalar d = b.vacuum_coefficient();
            if (d.is_zero()) lex_.error("division by zero");
            return a.scaled(d.inverse());
        }
        if (as) return b.scaled(a.vacuum_coefficient());
        if (bs) return a.scaled(b.vacuum_coefficient());
        lex_.error("product of two fields; write it as a word :a b:");
    }

    FieldExpr parse_factor() {
        FieldExpr base = parse_primary();
        if (is_punct("^")) {
            lex_.next();
            bool neg = false;
            if (is_punct("-")) {
                lex_.next();
                neg = true;
            }
            if (lex_.peek().kind != Token::Number) lex_.error("expected integer exponent");
            long e = lex_.next().number;
            if (neg) e = -e;
            if (!base.is_scalar_multiple_of_vacuum())
                lex_.error("power of a non-scalar field");
            Scalar s = base.vacuum_coefficient().pow(static_cast<int>(e));
            return FieldExpr::vacuum(ctx_).scaled(s);
        }
        return base;
    }

    FieldExpr parse_primary() {
        const Token& t = lex_.peek();
        switch (t.kind) {
        case Token::Number: {
            long v = lex_.next().number;
            return FieldExpr::vacuum(ctx_).scaled(Scalar::from_int(ctx_, v));
        }
        case Token::Param: {
            std::string name = lex_.next().text;
            return FieldExpr::vacuum(ctx_).scaled(Scalar::param(ctx_, name));
        }
        case Token::Root: {
            std::string name = lex_.next().text;
            return FieldExpr::vacuum(ctx_).scaled(Scalar::root(ctx_, name));
        }
        case Token::Gen: {
            std::string name = lex_.next().text;
            return FieldExpr::letter(ctx_, gen_index(name));
        }
        case Token::D: {
            lex_.next();
            expect("(");
            FieldExpr inner = parse_expr();
            expect(")");
            return inner.derived();
        }
        case Token::Punct:
            if (t.text == "(") {
                lex_.next();
                FieldExpr inner = parse_expr();
                expect(")");
                return inner;
            }
            if (t.text == ":") return parse_word();
            break;
        default:
            break;
        }
        lex_.error("unexpected token");
    }

    // ':' atom+ ':' -> the right-nested word of the atoms' letters.
    FieldExpr parse_word() {
        expect(":");
        Word word;
        Scalar coeff = Scalar::one(ctx_);
        while (!is_punct(":")) {
            FieldExpr atom = parse_word_atom();
            if (atom.terms().size() != 1) lex_.error("word atom must be a single nonzero term");
            const auto& [w, c] = *atom.terms().begin();
            coeff *= c;
            for (const auto& l : w) word.push_back(l);
        }
        expect(":");
        if (word.empty()) lex_.error("empty word");
        return FieldExpr::term(ctx_, word, coeff);
    }

    FieldExpr parse_word_atom() {
        const Token& t = lex_.peek();
        if (t.kind == Token::Gen) {
            std::string name = lex_.next().text;
            return FieldExpr::letter(ctx_, gen_index(name));
        }
        if (t.kind == Token::D) {
            lex_.next();
            expect("(");
            FieldExpr inner = parse_word_atom();
            expect(")");
            return inner.derived();
        }
        if (t.kind == Token::Punct && t.text == ":") return parse_word();
        if (t.kind == Token::Punct && t.text == "(") {
            lex_.next();
            FieldExpr inner = parse_word_atom();
            expect(")");
            return inner;
        }
        lex_.error("expected a generator, d(...), or a nested word");
    }

    int gen_index(const std::string& name) const {
        for (size_t i = 0; gens_ && i < gens_->size(); ++i)
            if ((*gens_)[i].name == name) return static_cast<int>(i);
        lex_.error("unknown generator '" + name + "'");
    }

    CtxPtr ctx_;
    const std::vector<Generator>* gens_;
    Lexer lex_;
};

} // namespace

FieldExpr parse_field_expr(const std::string& text, const CtxPtr& ctx,
                           const std::vector<Generator>& gens) {
    Parser p(text, ctx, &gens);
    return p.parse();
}

FieldExpr parse_field_expr(const std::string& text, const Algebra& alg) {
    return parse_field_expr(text, alg.ctx(), alg.generators());
}

Scalar parse_scalar(const std::string& text, const CtxPtr& ctx) {
    Parser p(text, ctx, nullptr);
    FieldExpr e = p.parse();
    if (!e.is_scalar_multiple_of_vacuum())
        fail(ErrorKind::Unsupported, "expected a scalar expression: " + text);
    return e.vacuum_coefficient();
}

RatFun parse_ratfun(const std::string& text, const CtxPtr& ctx) {
    Scalar s = parse_scalar(text, ctx);
    if (!s.is_rational())
        fail(ErrorKind::Unsupported, "expected a root-free scalar: " + text);
    return s.rational_part();
}

std::string print_word(const Word& w, const std::vector<Generator>& gens) {
    if (w.empty()) return "1";
    std::ostringstream out;
    auto letter = [&](const Letter& l) {
        std::string s = gens[static_cast<size_t>(l.gen)].name;
        for (int i = 0; i < l.der; ++i) s = "d(" + s + ")";
        return s;
    };
    if (w.size() == 1) return letter(w[0]);
    out << ":";
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) out << " ";
        out << letter(w[i]);
    }
    out << ":";
    return out.str();
}

std::string print_field_expr(const FieldExpr& e, const std::vector<Generator>& gens) {
    if (e.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [w, c] : e.terms()) {
        if (!first) out << " + ";
        first = false;
        if (c.is_one() && !w.empty()) {
            out << print_word(w, gens);
        } else if (w.empty()) {
            out << c.str();
        } else {
            // Multi-component scalars need parentheses before '*'.
            bool wrap = c.components().size() > 1;
            if (wrap)
                out << "(" << c.str() << ")";
            else
                out << c.str();
            out << "*" << print_word(w, gens);
        }
    }
    return out.str();
}

std::string print_field_expr(const FieldExpr& e, const Algebra& alg) {
    return print_field_expr(e, alg.generators());
}

} // namespace voa
