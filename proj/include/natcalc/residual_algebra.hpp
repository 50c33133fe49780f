#pragma once

#include "natcalc/canonical.hpp"
#include "natcalc/relation.hpp"
#include "natcalc/residual.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace natcalc {

/// Labels whose residual binds a channel in its target.
inline bool is_binding(const Label &l)
{
    return l.kind == LabelKind::Open || (l.kind == LabelKind::Output && l.arity > 0);
}

std::string describe(const CanonicalTerm &t);

template <class T>
std::string describe(const Residual<T> &r)
{
    return "{" + to_string(r.label) + "} " + describe(r.target);
}

/// Deliberate defects used to test that the checkers catch broken laws.
enum class RelatorMutation { None, DropOpeningPairs };

/// A residual type constructor over a finite label alphabet: applying it to
/// a carrier pairs every label with every element, and lifting a relation
/// relates residuals with equal labels and related targets. Binding labels
/// are compared with their targets instantiated at one shared channel, so
/// lifting treats them like any other label.
class ResidualStructure {
public:
    ResidualStructure(std::string name, std::vector<Label> alphabet, RelatorMutation mutation = RelatorMutation::None);

    const std::string &name() const { return name_; }
    const std::vector<Label> &alphabet() const { return alphabet_; }
    RelatorMutation mutation() const { return mutation_; }
    std::optional<std::size_t> label_index(const Label &l) const;

    /// Residual carrier over c, laid out label-major. Memoised per carrier
    /// object so repeated applications share one carrier.
    template <class T>
    CarrierPtr<Residual<T>> apply(const CarrierPtr<T> &c) const
    {
        auto it = cache_->find(c.get());
        if (it != cache_->end()) {
            return std::static_pointer_cast<const Carrier<Residual<T>>>(it->second.second);
        }
        std::vector<Residual<T>> elems;
        elems.reserve(alphabet_.size() * c->size());
        for (const Label &l : alphabet_) {
            for (const T &t : *c) {
                elems.push_back(Residual<T>{l, t});
            }
        }
        auto result = make_carrier(std::move(elems));
        (*cache_)[c.get()] = {c, result};
        return result;
    }

    template <class A, class B>
    Relation<Residual<A>, Residual<B>> lift(const Relation<A, B> &x) const
    {
        Relation<Residual<A>, Residual<B>> r(apply(x.left()), apply(x.right()));
        const std::size_t na = x.rows();
        const std::size_t nb = x.cols();
        bool homogeneous = false;
        if constexpr (std::is_same_v<A, B>) {
            homogeneous = x.left() == x.right() || *x.left() == *x.right();
        }
        for (std::size_t l = 0; l < alphabet_.size(); ++l) {
            const bool drop = mutation_ == RelatorMutation::DropOpeningPairs && homogeneous && is_binding(alphabet_[l]);
            for (std::size_t i = 0; i < na; ++i) {
                x.for_row(i, [&](std::size_t j) {
                    if (!drop || i == j) {
                        r.set(l * na + i, l * nb + j);
                    }
                });
            }
        }
        return r;
    }

private:
    std::string name_;
    std::vector<Label> alphabet_;
    RelatorMutation mutation_;
    // Keeps the argument carrier alive next to its image, so a freed address
    // can never hit a stale entry.
    std::shared_ptr<std::map<const void *, std::pair<std::shared_ptr<const void>, std::shared_ptr<const void>>>> cache_ =
        std::make_shared<std::map<const void *, std::pair<std::shared_ptr<const void>, std::shared_ptr<const void>>>>();
};

/// Silence given by one dedicated label.
class NormalWeakStructure {
public:
    enum class Mutation { None, SharedSilentResidual };

    explicit NormalWeakStructure(ResidualStructure base, Label silent_label = Label::tau(), Mutation mutation = Mutation::None);

    const ResidualStructure &base() const { return base_; }
    const Label &silent_label() const { return silent_label_; }

    /// Relates each p to its silent residual. The mutant additionally
    /// relates the first element to the second element's silent residual.
    template <class T>
    Relation<T, Residual<T>> silent(const CarrierPtr<T> &c) const
    {
        Relation<T, Residual<T>> r(c, base_.apply(c));
        const std::size_t n = c->size();
        for (std::size_t i = 0; i < n; ++i) {
            r.set(i, silent_index_ * n + i);
        }
        if (mutation_ == Mutation::SharedSilentResidual && n >= 2) {
            r.set(0, silent_index_ * n + 1);
        }
        return r;
    }

private:
    ResidualStructure base_;
    Label silent_label_;
    std::size_t silent_index_ = 0;
    Mutation mutation_;
};

/// Switches for the four rules of the directly defined fuse relation.
struct FuseRules {
    bool silent_acting = true;
    bool silent_opening = true;
    bool acting_silent = true;
    bool opening_silent = true;
};

/// A residual structure with silent and fuse relations. Fuse is either given
/// directly by the four rules or derived from a normal structure as
/// silent⁻¹ ⊔ lift silent⁻¹.
class WeakResidualStructure {
public:
    static WeakResidualStructure direct(ResidualStructure base, FuseRules rules = {});
    static WeakResidualStructure derived(NormalWeakStructure normal);

    const ResidualStructure &base() const { return normal_.base(); }
    bool is_derived() const { return derived_; }
    const FuseRules &rules() const { return rules_; }

    template <class T>
    Relation<T, Residual<T>> silent(const CarrierPtr<T> &c) const
    {
        return normal_.silent(c);
    }

    template <class T>
    Relation<Residual<Residual<T>>, Residual<T>> fuse(const CarrierPtr<T> &c) const
    {
        const ResidualStructure &s = base();
        auto ft = s.apply(c);
        auto fft = s.apply(ft);
        if (derived_) {
            return silent(ft).converse().unite(s.lift(silent(c).converse()));
        }
        const Label &quiet = normal_.silent_label();
        FuseRules rules = rules_;
        return Relation<Residual<Residual<T>>, Residual<T>>::graph(fft, ft, [&](const Residual<Residual<T>> &n) {
            std::vector<Residual<T>> out;
            const Label &outer = n.label;
            const Label &inner = n.target.label;
            if (outer == quiet && (is_binding(inner) ? rules.silent_opening : rules.silent_acting)) {
                out.push_back(n.target);
            }
            if (inner == quiet && (is_binding(outer) ? rules.opening_silent : rules.acting_silent)) {
                out.push_back(Residual<T>{outer, n.target.target});
            }
            return out;
        });
    }

private:
    WeakResidualStructure(NormalWeakStructure normal, bool derived, FuseRules rules)
        : normal_(std::move(normal)), derived_(derived), rules_(rules)
    {
    }

    NormalWeakStructure normal_;
    bool derived_;
    FuseRules rules_;
};

// ---------------------------------------------------------------------------
// Axiom reports

struct Counterexample {
    /// Indices into the sample list of the failing instance.
    std::vector<std::size_t> samples;
    std::size_t row = 0;
    std::size_t col = 0;
    std::string left;
    std::string right;
    /// Whether the pair is in the left-hand side (and missing on the right).
    bool in_lhs = false;
};

struct AxiomResult {
    std::string axiom;
    bool passed = true;
    std::size_t cases = 0;
    std::optional<Counterexample> counterexample;
};

struct AxiomReport {
    std::string suite;
    std::string structure;
    std::vector<AxiomResult> results;

    bool passed() const;
    const AxiomResult *find(const std::string &axiom) const;
};

namespace detail {

template <class A, class B>
std::optional<Counterexample> compare_equal(const Relation<A, B> &lhs, const Relation<A, B> &rhs,
                                            std::vector<std::size_t> samples)
{
    auto d = lhs.first_difference(rhs);
    if (!d) {
        return std::nullopt;
    }
    return Counterexample{std::move(samples), d->first, d->second, describe((*lhs.left())[d->first]),
                          describe((*lhs.right())[d->second]), lhs.holds(d->first, d->second)};
}

template <class A, class B>
std::optional<Counterexample> compare_leq(const Relation<A, B> &lhs, const Relation<A, B> &rhs,
                                          std::vector<std::size_t> samples)
{
    for (std::size_t i = 0; i < lhs.rows(); ++i) {
        std::optional<std::size_t> bad;
        lhs.for_row(i, [&](std::size_t j) {
            if (!bad && !rhs.holds(i, j)) {
                bad = j;
            }
        });
        if (bad) {
            return Counterexample{std::move(samples), i, *bad, describe((*lhs.left())[i]),
                                  describe((*lhs.right())[*bad]), true};
        }
    }
    return std::nullopt;
}

template <class T>
void require_samples_on(const CarrierPtr<T> &c, const std::vector<Relation<T, T>> &samples)
{
    for (const auto &x : samples) {
        require_same_carrier(c, x.left());
        require_same_carrier(c, x.right());
    }
}

template <class T>
std::optional<Counterexample> relator_instance(const ResidualStructure &s, const CarrierPtr<T> &c,
                                               const std::vector<Relation<T, T>> &samples, const std::string &axiom,
                                               const std::vector<std::size_t> &idx)
{
    if (axiom == "equality") {
        return compare_equal(s.lift(Relation<T, T>::identity(c)), Relation<Residual<T>, Residual<T>>::identity(s.apply(c)), idx);
    }
    if (axiom == "composition") {
        const auto &x = samples.at(idx.at(0));
        const auto &y = samples.at(idx.at(1));
        return compare_equal(s.lift(compose(x, y)), compose(s.lift(x), s.lift(y)), idx);
    }
    if (axiom == "conversion") {
        const auto &x = samples.at(idx.at(0));
        return compare_equal(s.lift(x.converse()), s.lift(x).converse(), idx);
    }
    throw std::invalid_argument("unknown relator axiom " + axiom);
}

template <class T>
std::optional<Counterexample> monad_instance(const WeakResidualStructure &w, const CarrierPtr<T> &c,
                                             const std::vector<Relation<T, T>> &samples, const std::string &axiom,
                                             const std::vector<std::size_t> &idx)
{
    const ResidualStructure &s = w.base();
    auto ft = s.apply(c);
    if (axiom == "silent-naturality") {
        const auto &x = samples.at(idx.at(0));
        auto silent = w.silent(c);
        return compare_equal(compose(x, silent), compose(silent, s.lift(x)), idx);
    }
    if (axiom == "fuse-naturality") {
        const auto &x = samples.at(idx.at(0));
        auto fuse = w.fuse(c);
        return compare_equal(compose(s.lift(s.lift(x)), fuse), compose(fuse, s.lift(x)), idx);
    }
    if (axiom == "left-neutrality") {
        return compare_equal(compose(w.silent(ft), w.fuse(c)), Relation<Residual<T>, Residual<T>>::identity(ft), idx);
    }
    if (axiom == "right-neutrality") {
        return compare_equal(compose(s.lift(w.silent(c)), w.fuse(c)), Relation<Residual<T>, Residual<T>>::identity(ft),
                             idx);
    }
    if (axiom == "associativity") {
        auto fuse = w.fuse(c);
        return compare_equal(compose(w.fuse(ft), fuse), compose(s.lift(fuse), fuse), idx);
    }
    throw std::invalid_argument("unknown monad axiom " + axiom);
}

template <class T>
std::optional<Counterexample> normal_instance(const NormalWeakStructure &n, const CarrierPtr<T> &c,
                                              const std::vector<Relation<T, T>> &samples, const std::string &axiom,
                                              const std::vector<std::size_t> &idx)
{
    const ResidualStructure &s = n.base();
    auto silent = n.silent(c);
    if (axiom == "naturality") {
        const auto &x = samples.at(idx.at(0));
        return compare_equal(compose(x, silent), compose(silent, s.lift(x)), idx);
    }
    if (axiom == "left-uniqueness-totality") {
        return compare_equal(compose(silent, silent.converse()), Relation<T, T>::identity(c), idx);
    }
    if (axiom == "right-uniqueness") {
        return compare_leq(compose(silent.converse(), silent), Relation<Residual<T>, Residual<T>>::identity(s.apply(c)),
                           idx);
    }
    throw std::invalid_argument("unknown silent axiom " + axiom);
}

/// Runs `instance` once for a sample-free axiom, or once per sample (or
/// sample pair) otherwise, stopping at the first failure.
template <class F>
AxiomResult run_axiom(const std::string &axiom, std::size_t arity, std::size_t sample_count, F &&instance)
{
    AxiomResult result;
    result.axiom = axiom;
    if (arity == 0) {
        result.cases = 1;
        result.counterexample = instance(std::vector<std::size_t>{});
    } else {
        for (std::size_t i = 0; i < sample_count && !result.counterexample; ++i) {
            std::vector<std::size_t> idx{i};
            if (arity == 2) {
                idx.push_back((i + 1) % sample_count);
            }
            ++result.cases;
            result.counterexample = instance(idx);
        }
    }
    result.passed = !result.counterexample.has_value();
    return result;
}

inline bool same_failure(const std::optional<Counterexample> &again, const AxiomResult &r)
{
    return r.counterexample && again && again->row == r.counterexample->row && again->col == r.counterexample->col &&
           again->in_lhs == r.counterexample->in_lhs;
}

} // namespace detail

/// Equality, composition and conversion preservation of s.lift, checked
/// extensionally over c and its residual carrier.
template <class T>
AxiomReport check_relator_axioms(const ResidualStructure &s, const CarrierPtr<T> &c,
                                 const std::vector<Relation<T, T>> &samples)
{
    detail::require_samples_on(c, samples);
    AxiomReport report{"relator", s.name(), {}};
    const std::pair<const char *, std::size_t> axioms[] = {{"equality", 0}, {"composition", 2}, {"conversion", 1}};
    for (const auto &[axiom, arity] : axioms) {
        report.results.push_back(detail::run_axiom(axiom, arity, samples.size(), [&](const std::vector<std::size_t> &idx) {
            return detail::relator_instance(s, c, samples, axiom, idx);
        }));
    }
    return report;
}

/// Silent naturality, fuse naturality, left- and right-neutrality and
/// associativity, with X OO Y read as "X, then Y".
template <class T>
AxiomReport check_monad_axioms(const WeakResidualStructure &w, const CarrierPtr<T> &c,
                               const std::vector<Relation<T, T>> &samples)
{
    detail::require_samples_on(c, samples);
    AxiomReport report{"monad", w.base().name() + (w.is_derived() ? " (derived fuse)" : ""), {}};
    const std::pair<const char *, std::size_t> axioms[] = {{"silent-naturality", 1},
                                                           {"fuse-naturality", 1},
                                                           {"left-neutrality", 0},
                                                           {"right-neutrality", 0},
                                                           {"associativity", 0}};
    for (const auto &[axiom, arity] : axioms) {
        report.results.push_back(detail::run_axiom(axiom, arity, samples.size(), [&](const std::vector<std::size_t> &idx) {
            return detail::monad_instance(w, c, samples, axiom, idx);
        }));
    }
    return report;
}

/// Naturality, left-uniqueness with left-totality, and right-uniqueness of
/// the silent relation.
template <class T>
AxiomReport check_normal_silent_axioms(const NormalWeakStructure &n, const CarrierPtr<T> &c,
                                       const std::vector<Relation<T, T>> &samples)
{
    detail::require_samples_on(c, samples);
    AxiomReport report{"normal-silent", n.base().name(), {}};
    const std::pair<const char *, std::size_t> axioms[] = {
        {"naturality", 1}, {"left-uniqueness-totality", 0}, {"right-uniqueness", 0}};
    for (const auto &[axiom, arity] : axioms) {
        report.results.push_back(detail::run_axiom(axiom, arity, samples.size(), [&](const std::vector<std::size_t> &idx) {
            return detail::normal_instance(n, c, samples, axiom, idx);
        }));
    }
    return report;
}

/// Re-runs the failing instance recorded in r and reports whether the same
/// pair still separates the two sides.
template <class T>
bool replay_relator(const ResidualStructure &s, const CarrierPtr<T> &c, const std::vector<Relation<T, T>> &samples,
                    const AxiomResult &r)
{
    return r.counterexample &&
           detail::same_failure(detail::relator_instance(s, c, samples, r.axiom, r.counterexample->samples), r);
}

template <class T>
bool replay_monad(const WeakResidualStructure &w, const CarrierPtr<T> &c, const std::vector<Relation<T, T>> &samples,
                  const AxiomResult &r)
{
    return r.counterexample &&
           detail::same_failure(detail::monad_instance(w, c, samples, r.axiom, r.counterexample->samples), r);
}

template <class T>
bool replay_normal(const NormalWeakStructure &n, const CarrierPtr<T> &c, const std::vector<Relation<T, T>> &samples,
                   const AxiomResult &r)
{
    return r.counterexample &&
           detail::same_failure(detail::normal_instance(n, c, samples, r.axiom, r.counterexample->samples), r);
}

/// The weak structure whose fuse is silent⁻¹ ⊔ lift silent⁻¹. Throws
/// SilentAxiomsViolated unless n passes the silent axioms on c.
template <class T>
WeakResidualStructure derive_fuse(const NormalWeakStructure &n, const CarrierPtr<T> &c,
                                  const std::vector<Relation<T, T>> &samples)
{
    AxiomReport report = check_normal_silent_axioms(n, c, samples);
    for (const AxiomResult &r : report.results) {
        if (!r.passed) {
            throw SilentAxiomsViolated("silent relation of " + n.base().name() + " violates " + r.axiom + ": " +
                                       r.counterexample->left + " / " + r.counterexample->right);
        }
    }
    return WeakResidualStructure::derived(n);
}

/// The identity, empty and full relations followed by `random_count`
/// seeded random relations of varying density.
template <class T>
std::vector<Relation<T, T>> sample_relations(const CarrierPtr<T> &c, std::size_t random_count, std::uint64_t seed)
{
    std::vector<Relation<T, T>> out;
    out.push_back(Relation<T, T>::identity(c));
    out.push_back(Relation<T, T>::empty(c, c));
    out.push_back(Relation<T, T>::full(c, c));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> density(0.02, 0.5);
    for (std::size_t k = 0; k < random_count; ++k) {
        std::bernoulli_distribution coin(density(rng));
        Relation<T, T> r(c, c);
        for (std::size_t i = 0; i < c->size(); ++i) {
            for (std::size_t j = 0; j < c->size(); ++j) {
                if (coin(rng)) {
                    r.set(i, j);
                }
            }
        }
        out.push_back(std::move(r));
    }
    return out;
}

/// One public channel and unit data: the universe the shipped structures
/// are checked over.
Universe algebra_universe();

/// Sends and receives on every pool channel of every data or pool value,
/// tau, and the opening label.
std::vector<Label> basic_alphabet(const Universe &u);

/// Inputs, tau, and outputs publishing zero or one opened channel.
std::vector<Label> proper_alphabet(const Universe &u);

ResidualStructure basic_structure(const Universe &u, RelatorMutation mutation = RelatorMutation::None);
ResidualStructure proper_structure(const Universe &u, RelatorMutation mutation = RelatorMutation::None);

/// n distinct small canonical terms over u's first pool channel, built in a
/// fixed order.
CarrierPtr<CanonicalTerm> term_carrier(std::size_t n, const Universe &u);

} // namespace natcalc
