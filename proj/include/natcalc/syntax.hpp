#pragma once

#include "natcalc/canonical.hpp"
#include "natcalc/residual.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace natcalc {

struct SourcePos {
    std::size_t line = 1;
    std::size_t column = 1;
};

struct ValueExpr {
    enum class Kind { Unit, Bool, Nat, Ident, Pair };

    Kind kind = Kind::Unit;
    SourcePos pos;
    bool boolean = false;
    std::uint64_t nat = 0;
    std::string name;
    std::vector<ValueExpr> items;
};

struct SourceTerm;
using SourcePtr = std::shared_ptr<const SourceTerm>;

/// Parsed first-order process text. Send and Receive carry the channel
/// expression in `chan`; Receive and New name their binder in `binder`;
/// If compares `lhs` with `rhs`.
struct SourceTerm {
    enum class Kind { Stop, Send, Receive, Par, New, Repl, If };

    Kind kind = Kind::Stop;
    SourcePos pos;
    ValueExpr chan;
    ValueExpr value;
    ValueExpr lhs;
    ValueExpr rhs;
    std::string binder;
    SourcePos binder_pos;
    std::vector<SourcePtr> children;
};

/// Maximum nesting of parentheses and binders accepted by the parser.
inline constexpr std::size_t kMaxNesting = 256;

/// Parses one process. Throws SyntaxError with the offending position.
SourcePtr parse(std::string_view text);

/// Parses a file of processes separated by ';'. '#' starts a line comment.
std::vector<SourcePtr> parse_file(std::string_view text);

using Environment = std::map<std::string, ChannelId>;

/// Names for a universe's channels: pool channel i is the i-th letter
/// ("a", "b", ...; "c<i>" beyond 26) and fresh channel id n is "f<n>".
Environment default_environment(const Universe &u);
std::string channel_name(ChannelId c, const Universe &u);

/// Checks that every identifier is a binder in scope or an environment
/// channel. Throws UnboundIdentifier carrying the identifier's position.
void resolve(const SourceTerm &t, const Environment &env);

/// Builds the higher-order process. Binders become continuations; a send or
/// receive whose subject is not a channel behaves as 0.
Process desugar(const SourcePtr &t, const Environment &env);

/// Convenience: parse, resolve against the universe's default names, desugar.
Process parse_process(std::string_view text, const Universe &u);

/// Concrete text for a canonical term. Restricted channels are named b<k>
/// by binder depth and receive variables x<k> by receive depth; a receive
/// table prints as a chain of equality tests, or as its common body when
/// every entry agrees. Cut prints as 0 followed by a comment. Throws
/// Unrepresentable for channels that have no name.
std::string pretty(const CanonicalTerm &t, const Universe &u);

/// A value in concrete syntax; bound channels print as b<k>.
std::string pretty(const Value &v, const Universe &u);

/// A label in concrete syntax. When `opened` is given, the label's bound
/// channels are shown as those concrete channels instead.
std::string pretty(const Label &l, const Universe &u, const std::vector<ChannelId> &opened = {});

/// Parses a closed value such as "((), 3)". Identifiers are rejected.
Value parse_value(std::string_view text);

std::string to_string(const SourceTerm &t);

} // namespace natcalc
