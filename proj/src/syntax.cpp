#include "natcalc/syntax.hpp"

#include "natcalc/errors.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>

namespace natcalc {

namespace {

enum class Tok { Ident, Nat, Sym, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    SourcePos pos;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run()
    {
        std::vector<Token> out;
        while (true) {
            skip_space();
            Token t;
            t.pos = {line_, col_};
            if (i_ >= src_.size()) {
                out.push_back(t);
                return out;
            }
            const unsigned char c = static_cast<unsigned char>(src_[i_]);
            if (std::isalpha(c) || c == '_') {
                std::size_t j = i_;
                while (j < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[j])) || src_[j] == '_')) {
                    ++j;
                }
                t.kind = Tok::Ident;
                t.text = std::string(src_.substr(i_, j - i_));
                advance(j - i_);
            } else if (std::isdigit(c)) {
                std::size_t j = i_;
                while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) {
                    ++j;
                }
                t.kind = Tok::Nat;
                t.text = std::string(src_.substr(i_, j - i_));
                advance(j - i_);
            } else if (std::string_view("<>().|!=,;").find(static_cast<char>(c)) != std::string_view::npos) {
                t.kind = Tok::Sym;
                t.text = std::string(1, static_cast<char>(c));
                advance(1);
            } else {
                std::string shown = std::isprint(c) ? std::string(1, static_cast<char>(c))
                                                    : "byte 0x" + hex(c);
                throw SyntaxError("unexpected character '" + shown + "'", line_, col_);
            }
            out.push_back(std::move(t));
        }
    }

private:
    static std::string hex(unsigned char c)
    {
        const char *digits = "0123456789abcdef";
        return {digits[c >> 4], digits[c & 15]};
    }

    void advance(std::size_t n)
    {
        for (std::size_t k = 0; k < n; ++k, ++i_) {
            if (src_[i_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
        }
    }

    void skip_space()
    {
        while (i_ < src_.size()) {
            const char c = src_[i_];
            if (c == '#') {
                while (i_ < src_.size() && src_[i_] != '\n') {
                    advance(1);
                }
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance(1);
            } else {
                return;
            }
        }
    }

    std::string_view src_;
    std::size_t i_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

bool is_keyword(const std::string &s)
{
    return s == "new" || s == "if" || s == "then" || s == "else" || s == "true" || s == "false";
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    std::vector<SourcePtr> file()
    {
        std::vector<SourcePtr> out;
        while (!at_end()) {
            out.push_back(par());
            if (is_sym(";")) {
                ++k_;
            } else if (!at_end()) {
                fail("expected ';' or end of input");
            }
        }
        return out;
    }

    SourcePtr single()
    {
        if (at_end()) {
            fail("expected a process");
        }
        SourcePtr t = par();
        if (!at_end()) {
            fail("unexpected '" + peek().text + "' after process");
        }
        return t;
    }

    ValueExpr closed_value()
    {
        ValueExpr v = value();
        if (!at_end()) {
            fail("unexpected '" + peek().text + "' after value");
        }
        return v;
    }

private:
    struct Nest {
        explicit Nest(Parser &p) : p_(p)
        {
            if (++p_.depth_ > kMaxNesting) {
                p_.fail("nesting deeper than " + std::to_string(kMaxNesting));
            }
        }
        ~Nest() { --p_.depth_; }
        Parser &p_;
    };

    const Token &peek() const { return toks_[k_]; }
    bool at_end() const { return peek().kind == Tok::End; }
    bool is_sym(const char *s) const { return peek().kind == Tok::Sym && peek().text == s; }
    bool is_word(const char *s) const { return peek().kind == Tok::Ident && peek().text == s; }

    [[noreturn]] void fail(const std::string &msg) const { throw SyntaxError(msg, peek().pos.line, peek().pos.column); }

    std::string describe() const { return at_end() ? "end of input" : "'" + peek().text + "'"; }

    void expect_sym(const char *s)
    {
        if (!is_sym(s)) {
            fail(std::string("expected '") + s + "', found " + describe());
        }
        ++k_;
    }
    void expect_word(const char *s)
    {
        if (!is_word(s)) {
            fail(std::string("expected '") + s + "', found " + describe());
        }
        ++k_;
    }

    std::string binder_name(SourcePos &pos)
    {
        if (peek().kind != Tok::Ident || is_keyword(peek().text)) {
            fail("expected a binder name, found " + describe());
        }
        pos = peek().pos;
        return toks_[k_++].text;
    }

    SourcePtr par()
    {
        SourcePtr left = unary();
        while (is_sym("|")) {
            auto node = std::make_shared<SourceTerm>();
            node->kind = SourceTerm::Kind::Par;
            node->pos = peek().pos;
            ++k_;
            node->children = {left, unary()};
            left = node;
        }
        return left;
    }

    SourcePtr unary()
    {
        Nest guard(*this);
        auto node = std::make_shared<SourceTerm>();
        node->pos = peek().pos;
        const Token &t = peek();
        if (t.kind == Tok::Nat) {
            if (t.text != "0") {
                fail("expected a process, found '" + t.text + "'");
            }
            ++k_;
            node->kind = SourceTerm::Kind::Stop;
            return node;
        }
        if (is_sym("!")) {
            ++k_;
            node->kind = SourceTerm::Kind::Repl;
            node->children = {unary()};
            return node;
        }
        if (is_sym("(")) {
            ++k_;
            SourcePtr inner = par();
            expect_sym(")");
            return inner;
        }
        if (is_word("new")) {
            ++k_;
            node->kind = SourceTerm::Kind::New;
            node->binder = binder_name(node->binder_pos);
            expect_sym(".");
            node->children = {par()};
            return node;
        }
        if (is_word("if")) {
            ++k_;
            node->kind = SourceTerm::Kind::If;
            node->lhs = value();
            expect_sym("=");
            node->rhs = value();
            expect_word("then");
            SourcePtr yes = par();
            expect_word("else");
            node->children = {yes, par()};
            return node;
        }
        if (t.kind == Tok::Ident && !is_keyword(t.text)) {
            node->chan = value();
            if (is_sym("<")) {
                ++k_;
                node->kind = SourceTerm::Kind::Send;
                node->value = value();
                expect_sym(">");
                return node;
            }
            if (is_sym("(")) {
                ++k_;
                node->kind = SourceTerm::Kind::Receive;
                node->binder = binder_name(node->binder_pos);
                expect_sym(")");
                expect_sym(".");
                node->children = {par()};
                return node;
            }
            fail("expected '<' or '(' after channel, found " + describe());
        }
        fail("expected a process, found " + describe());
    }

    ValueExpr value()
    {
        Nest guard(*this);
        ValueExpr v;
        v.pos = peek().pos;
        const Token &t = peek();
        if (t.kind == Tok::Nat) {
            v.kind = ValueExpr::Kind::Nat;
            if (t.text.size() > 19) {
                fail("natural number too large");
            }
            v.nat = std::stoull(t.text);
            ++k_;
            return v;
        }
        if (is_word("true") || is_word("false")) {
            v.kind = ValueExpr::Kind::Bool;
            v.boolean = t.text == "true";
            ++k_;
            return v;
        }
        if (t.kind == Tok::Ident && !is_keyword(t.text)) {
            v.kind = ValueExpr::Kind::Ident;
            v.name = t.text;
            ++k_;
            return v;
        }
        if (is_sym("(")) {
            ++k_;
            if (is_sym(")")) {
                ++k_;
                v.kind = ValueExpr::Kind::Unit;
                return v;
            }
            v.kind = ValueExpr::Kind::Pair;
            v.items.push_back(value());
            expect_sym(",");
            v.items.push_back(value());
            expect_sym(")");
            return v;
        }
        fail("expected a value, found " + describe());
    }

    std::vector<Token> toks_;
    std::size_t k_ = 0;
    std::size_t depth_ = 0;
};

void resolve_value(const ValueExpr &v, const std::vector<std::string> &scope, const Environment &env)
{
    if (v.kind == ValueExpr::Kind::Ident) {
        if (std::find(scope.begin(), scope.end(), v.name) == scope.end() && !env.contains(v.name)) {
            throw UnboundIdentifier(v.name, v.pos.line, v.pos.column);
        }
    }
    for (const ValueExpr &item : v.items) {
        resolve_value(item, scope, env);
    }
}

void resolve_term(const SourceTerm &t, std::vector<std::string> &scope, const Environment &env)
{
    switch (t.kind) {
    case SourceTerm::Kind::Stop:
        return;
    case SourceTerm::Kind::Send:
        resolve_value(t.chan, scope, env);
        resolve_value(t.value, scope, env);
        return;
    case SourceTerm::Kind::Receive:
        resolve_value(t.chan, scope, env);
        [[fallthrough]];
    case SourceTerm::Kind::New:
        scope.push_back(t.binder);
        resolve_term(*t.children[0], scope, env);
        scope.pop_back();
        return;
    case SourceTerm::Kind::If:
        resolve_value(t.lhs, scope, env);
        resolve_value(t.rhs, scope, env);
        [[fallthrough]];
    case SourceTerm::Kind::Par:
    case SourceTerm::Kind::Repl:
        for (const SourcePtr &c : t.children) {
            resolve_term(*c, scope, env);
        }
        return;
    }
}

/// Values of the binders in scope, innermost last.
using Scope = std::vector<std::pair<std::string, Value>>;

Value evaluate(const ValueExpr &v, const Scope &scope, const Environment &env)
{
    switch (v.kind) {
    case ValueExpr::Kind::Unit:
        return Value::unit();
    case ValueExpr::Kind::Bool:
        return Value::boolean(v.boolean);
    case ValueExpr::Kind::Nat:
        return Value::nat(v.nat);
    case ValueExpr::Kind::Pair:
        return Value::pair(evaluate(v.items[0], scope, env), evaluate(v.items[1], scope, env));
    case ValueExpr::Kind::Ident:
        break;
    }
    for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
        if (it->first == v.name) {
            return it->second;
        }
    }
    auto found = env.find(v.name);
    if (found == env.end()) {
        throw UnboundIdentifier(v.name, v.pos.line, v.pos.column);
    }
    return Value::chan(found->second);
}

using EnvPtr = std::shared_ptr<const Environment>;

Process build(const SourcePtr &t, const Scope &scope, const EnvPtr &envp)
{
    const Environment &env = *envp;
    switch (t->kind) {
    case SourceTerm::Kind::Stop:
        return Process::stop();
    case SourceTerm::Kind::Send: {
        Value c = evaluate(t->chan, scope, env);
        if (!c.is_chan()) {
            return Process::stop();
        }
        return Process::send(c.as_chan(), evaluate(t->value, scope, env));
    }
    case SourceTerm::Kind::Receive: {
        Value c = evaluate(t->chan, scope, env);
        if (!c.is_chan()) {
            return Process::stop();
        }
        return Process::receive(c.as_chan(), [t, scope, envp](const Value &v) {
            Scope inner = scope;
            inner.emplace_back(t->binder, v);
            return build(t->children[0], inner, envp);
        });
    }
    case SourceTerm::Kind::New:
        return Process::new_channel([t, scope, envp](ChannelId x) {
            Scope inner = scope;
            inner.emplace_back(t->binder, Value::chan(x));
            return build(t->children[0], inner, envp);
        });
    case SourceTerm::Kind::Par:
        return Process::parallel(build(t->children[0], scope, envp), build(t->children[1], scope, envp));
    case SourceTerm::Kind::Repl:
        return replicate(build(t->children[0], scope, envp));
    case SourceTerm::Kind::If: {
        const bool same = evaluate(t->lhs, scope, env) == evaluate(t->rhs, scope, env);
        return build(t->children[same ? 0 : 1], scope, envp);
    }
    }
    return Process::stop();
}

std::string letter_name(std::uint32_t i)
{
    return i < 26 ? std::string(1, static_cast<char>('a' + i)) : "c" + std::to_string(i);
}

Value substitute(const Value &v, ChannelId f, const Value &by)
{
    if (v.kind() == Value::Kind::Chan) {
        return v.as_chan() == f ? by : v;
    }
    if (v.kind() == Value::Kind::Pair) {
        return Value::pair(substitute(v.first(), f, by), substitute(v.second(), f, by));
    }
    return v;
}

/// t with channel f replaced by `by`, acting on subjects the way desugared
/// terms do: a send or receive whose subject becomes data is inert.
CanonicalTerm substitute(const CanonicalTerm &t, ChannelId f, const Value &by)
{
    switch (t.kind()) {
    case CanonicalTerm::Kind::Stop:
    case CanonicalTerm::Kind::Cut:
        return t;
    case CanonicalTerm::Kind::Send: {
        Value c = substitute(Value::chan(t.chan()), f, by);
        return c.is_chan() ? CanonicalTerm::send(c.as_chan(), substitute(t.value(), f, by)) : CanonicalTerm::stop();
    }
    case CanonicalTerm::Kind::ReceiveTable: {
        Value c = substitute(Value::chan(t.chan()), f, by);
        if (!c.is_chan()) {
            return CanonicalTerm::stop();
        }
        CanonicalTerm::Table table;
        for (const auto &[key, body] : t.table()) {
            table.emplace_back(key, substitute(body, f, by));
        }
        return CanonicalTerm::receive_table(c.as_chan(), std::move(table));
    }
    case CanonicalTerm::Kind::Parallel:
        return CanonicalTerm::parallel(substitute(t.left(), f, by), substitute(t.right(), f, by));
    case CanonicalTerm::Kind::New:
        return CanonicalTerm::new_channel(substitute(t.body(), f, by));
    }
    return t;
}

class Printer {
public:
    /// With `generalize`, a receive table is printed as a body over its
    /// variable, taken from the entry of a fresh key the term does not use,
    /// plus equality tests for the entries that body does not predict.
    Printer(const Universe &u, bool generalize, std::set<ChannelId> used)
        : u_(u), generalize_(generalize), used_(std::move(used))
    {
    }

    std::string term(const CanonicalTerm &t)
    {
        switch (t.kind()) {
        case CanonicalTerm::Kind::Stop:
            return "0";
        case CanonicalTerm::Kind::Cut:
            return "0 # cut\n";
        case CanonicalTerm::Kind::Send:
            return chan(t.chan()) + "<" + value(t.value()) + ">";
        case CanonicalTerm::Kind::Parallel:
            return "(" + operand(t.left()) + " | " + term(t.right()) + ")";
        case CanonicalTerm::Kind::New: {
            const std::string name = "b" + std::to_string(binders_);
            ++binders_;
            std::string body = term(t.body());
            --binders_;
            return "new " + name + ". " + body;
        }
        case CanonicalTerm::Kind::ReceiveTable:
            return receive(t);
        }
        return "0";
    }

private:
    // A binder on the left of '|' would swallow the right operand.
    std::string operand(const CanonicalTerm &t)
    {
        std::string s = term(t);
        if (t.kind() == CanonicalTerm::Kind::New || t.kind() == CanonicalTerm::Kind::ReceiveTable) {
            return "(" + s + ")";
        }
        return s;
    }

    std::optional<ChannelId> placeholder(const CanonicalTerm::Table &table) const
    {
        if (!generalize_) {
            return std::nullopt;
        }
        for (auto it = table.rbegin(); it != table.rend(); ++it) {
            const Value &k = it->first;
            if (k.is_chan() && u_.is_fresh(k.as_chan()) && !used_.contains(k.as_chan()) &&
                !names_.contains(k.as_chan())) {
                return k.as_chan();
            }
        }
        return std::nullopt;
    }

    std::string receive(const CanonicalTerm &t)
    {
        const auto &table = t.table();
        if (table.empty()) {
            throw Unrepresentable("receive table without entries");
        }
        const std::string var = "x" + std::to_string(receives_);
        const std::string head = chan(t.chan()) + "(" + var + "). ";
        ++receives_;
        std::string out;
        if (auto f = placeholder(table)) {
            const CanonicalTerm *templ = nullptr;
            for (const auto &[key, body] : table) {
                if (key == Value::chan(*f)) {
                    templ = &body;
                }
            }
            for (const auto &[key, body] : table) {
                if (!(substitute(*templ, *f, key) == body)) {
                    out += "if " + var + " = " + value(key) + " then " + term(body) + " else ";
                }
            }
            names_.emplace(*f, var);
            out += term(*templ);
            names_.erase(*f);
        } else {
            // The most frequent body becomes the else branch.
            std::size_t best = 0;
            std::size_t best_count = 0;
            for (std::size_t i = 0; i < table.size(); ++i) {
                auto n = static_cast<std::size_t>(std::count_if(
                    table.begin(), table.end(), [&](const auto &e) { return e.second == table[i].second; }));
                if (n > best_count) {
                    best = i;
                    best_count = n;
                }
            }
            for (const auto &[key, body] : table) {
                if (!(body == table[best].second)) {
                    out += "if " + var + " = " + value(key) + " then " + term(body) + " else ";
                }
            }
            out += term(table[best].second);
        }
        --receives_;
        return head + out;
    }

    std::string chan(ChannelId c) const
    {
        if (auto it = names_.find(c); it != names_.end()) {
            return it->second;
        }
        if (is_bound(c)) {
            if (bound_level(c) >= binders_) {
                throw Unrepresentable("bound channel " + to_string(c) + " outside its binder");
            }
            return "b" + std::to_string(bound_level(c));
        }
        return channel_name(c, u_);
    }

    std::string value(const Value &v) const
    {
        switch (v.kind()) {
        case Value::Kind::Unit:
            return "()";
        case Value::Kind::Bool:
            return v.as_bool() ? "true" : "false";
        case Value::Kind::Nat:
            return std::to_string(v.as_nat());
        case Value::Kind::Chan:
            return chan(v.as_chan());
        case Value::Kind::Pair:
            return "(" + value(v.first()) + ", " + value(v.second()) + ")";
        }
        return "()";
    }

    const Universe &u_;
    bool generalize_;
    std::set<ChannelId> used_;
    std::map<ChannelId, std::string> names_;
    std::uint32_t binders_ = 0;
    std::uint32_t receives_ = 0;
};

void print_value(const ValueExpr &v, std::string &out)
{
    switch (v.kind) {
    case ValueExpr::Kind::Unit:
        out += "()";
        return;
    case ValueExpr::Kind::Bool:
        out += v.boolean ? "true" : "false";
        return;
    case ValueExpr::Kind::Nat:
        out += std::to_string(v.nat);
        return;
    case ValueExpr::Kind::Ident:
        out += v.name;
        return;
    case ValueExpr::Kind::Pair:
        out += "(";
        print_value(v.items[0], out);
        out += ", ";
        print_value(v.items[1], out);
        out += ")";
        return;
    }
}

void print_source(const SourceTerm &t, std::string &out)
{
    switch (t.kind) {
    case SourceTerm::Kind::Stop:
        out += "0";
        return;
    case SourceTerm::Kind::Send:
        print_value(t.chan, out);
        out += "<";
        print_value(t.value, out);
        out += ">";
        return;
    case SourceTerm::Kind::Receive:
        print_value(t.chan, out);
        out += "(" + t.binder + "). ";
        print_source(*t.children[0], out);
        return;
    case SourceTerm::Kind::New:
        out += "new " + t.binder + ". ";
        print_source(*t.children[0], out);
        return;
    case SourceTerm::Kind::Repl:
        out += "!(";
        print_source(*t.children[0], out);
        out += ")";
        return;
    case SourceTerm::Kind::Par:
        out += "(";
        print_source(*t.children[0], out);
        out += ") | (";
        print_source(*t.children[1], out);
        out += ")";
        return;
    case SourceTerm::Kind::If:
        out += "if ";
        print_value(t.lhs, out);
        out += " = ";
        print_value(t.rhs, out);
        out += " then (";
        print_source(*t.children[0], out);
        out += ") else ";
        print_source(*t.children[1], out);
        return;
    }
}

} // namespace

SourcePtr parse(std::string_view text) { return Parser(Lexer(text).run()).single(); }

std::vector<SourcePtr> parse_file(std::string_view text) { return Parser(Lexer(text).run()).file(); }

Environment default_environment(const Universe &u)
{
    Environment env;
    for (std::uint32_t i = 0; i < u.pool; ++i) {
        env.emplace(letter_name(i), u.pool_channel(i));
    }
    for (std::uint32_t i = 0; i < u.fresh_budget; ++i) {
        ChannelId c = u.fresh_channel(i);
        env.emplace("f" + std::to_string(c.id), c);
    }
    return env;
}

std::string channel_name(ChannelId c, const Universe &u)
{
    if (is_bound(c)) {
        return "b" + std::to_string(bound_level(c));
    }
    if (c.id < u.pool) {
        return letter_name(c.id);
    }
    if (u.is_fresh(c)) {
        return "f" + std::to_string(c.id);
    }
    throw Unrepresentable("channel " + to_string(c) + " has no name in this universe");
}

void resolve(const SourceTerm &t, const Environment &env)
{
    std::vector<std::string> scope;
    resolve_term(t, scope, env);
}

Process desugar(const SourcePtr &t, const Environment &env)
{
    resolve(*t, env);
    return build(t, {}, std::make_shared<const Environment>(env));
}

Process parse_process(std::string_view text, const Universe &u) { return desugar(parse(text), default_environment(u)); }

std::string pretty(const CanonicalTerm &t, const Universe &u)
{
    const std::set<ChannelId> used = free_channels(t);
    std::string plain = Printer(u, false, used).term(t);
    std::string general = Printer(u, true, used).term(t);
    if (general == plain) {
        return plain;
    }
    // Keep the compact form only when it reads back as the same term.
    try {
        ExplorationContext ctx(u);
        if (ctx.canonical(parse_process(general, u)) == t) {
            return general;
        }
    } catch (const Error &) {
    }
    return plain;
}

std::string pretty(const Value &v, const Universe &u)
{
    switch (v.kind()) {
    case Value::Kind::Unit:
        return "()";
    case Value::Kind::Bool:
        return v.as_bool() ? "true" : "false";
    case Value::Kind::Nat:
        return std::to_string(v.as_nat());
    case Value::Kind::Chan:
        return channel_name(v.as_chan(), u);
    case Value::Kind::Pair:
        return "(" + pretty(v.first(), u) + ", " + pretty(v.second(), u) + ")";
    }
    return "()";
}

std::string pretty(const Label &l, const Universe &u, const std::vector<ChannelId> &opened)
{
    auto inst = [&](ChannelId c) {
        return is_bound(c) && bound_level(c) < opened.size() ? opened[bound_level(c)] : c;
    };
    auto name = [&](ChannelId c) { return channel_name(inst(c), u); };
    auto val = [&](const Value &v) { return pretty(v.map_channels(inst), u); };
    switch (l.kind) {
    case LabelKind::Send:
        return name(l.chan) + "<" + val(l.value) + ">";
    case LabelKind::Receive:
    case LabelKind::Input:
        return name(l.chan) + "(" + val(l.value) + ")";
    case LabelKind::Tau:
        return "tau";
    case LabelKind::Open:
        return "nu " + name(bound_channel(0));
    case LabelKind::Output: {
        std::string out = name(l.chan) + "<";
        if (l.arity > 0) {
            out += "nu";
            for (std::uint32_t i = 0; i < l.arity; ++i) {
                out += " " + name(bound_channel(i));
            }
            out += ". ";
        }
        return out + val(l.value) + ">";
    }
    }
    return "?";
}

Value parse_value(std::string_view text)
{
    ValueExpr v = Parser(Lexer(text).run()).closed_value();
    return evaluate(v, {}, {});
}

std::string to_string(const SourceTerm &t)
{
    std::string out;
    print_source(t, out);
    return out;
}

} // namespace natcalc
