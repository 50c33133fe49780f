#pragma once

#include "natcalc/errors.hpp"

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

namespace natcalc {

/// A finite, sorted, duplicate-free set of elements. Relations index into
/// carriers by position.
template <class T>
class Carrier {
public:
    Carrier() = default;
    explicit Carrier(std::vector<T> elems) : elems_(std::move(elems))
    {
        std::sort(elems_.begin(), elems_.end());
        elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
    }

    std::size_t size() const { return elems_.size(); }
    const T &operator[](std::size_t i) const { return elems_[i]; }
    auto begin() const { return elems_.begin(); }
    auto end() const { return elems_.end(); }
    const std::vector<T> &elements() const { return elems_; }

    std::optional<std::size_t> index_of(const T &x) const
    {
        auto it = std::lower_bound(elems_.begin(), elems_.end(), x);
        if (it == elems_.end() || !(*it == x)) {
            return std::nullopt;
        }
        return static_cast<std::size_t>(it - elems_.begin());
    }

    friend bool operator==(const Carrier &a, const Carrier &b) { return a.elems_ == b.elems_; }

private:
    std::vector<T> elems_;
};

template <class T>
using CarrierPtr = std::shared_ptr<const Carrier<T>>;

template <class T>
CarrierPtr<T> make_carrier(std::vector<T> elems)
{
    return std::make_shared<const Carrier<T>>(std::move(elems));
}

template <class T>
void require_same_carrier(const CarrierPtr<T> &x, const CarrierPtr<T> &y)
{
    if (x != y && !(*x == *y)) {
        throw CarrierMismatch("relations live on different carriers");
    }
}

/// A binary relation between two finite carriers, stored as a bit matrix.
template <class A, class B>
class Relation {
public:
    Relation(CarrierPtr<A> left, CarrierPtr<B> right)
        : left_(std::move(left)), right_(std::move(right)), words_((right_->size() + 63) / 64),
          bits_(left_->size() * words_, 0)
    {
    }

    static Relation empty(CarrierPtr<A> left, CarrierPtr<B> right) { return Relation(std::move(left), std::move(right)); }

    static Relation full(CarrierPtr<A> left, CarrierPtr<B> right)
    {
        Relation r(std::move(left), std::move(right));
        for (std::size_t i = 0; i < r.rows(); ++i) {
            for (std::size_t j = 0; j < r.cols(); ++j) {
                r.set(i, j);
            }
        }
        return r;
    }

    static Relation identity(CarrierPtr<A> c)
        requires std::is_same_v<A, B>
    {
        Relation r(c, c);
        for (std::size_t i = 0; i < c->size(); ++i) {
            r.set(i, i);
        }
        return r;
    }

    /// The graph of a function into the right carrier. Images outside the
    /// carrier are dropped.
    template <class F>
    static Relation graph(CarrierPtr<A> left, CarrierPtr<B> right, F &&images)
    {
        Relation r(left, right);
        for (std::size_t i = 0; i < left->size(); ++i) {
            for (const B &y : images((*left)[i])) {
                if (auto j = right->index_of(y)) {
                    r.set(i, *j);
                }
            }
        }
        return r;
    }

    const CarrierPtr<A> &left() const { return left_; }
    const CarrierPtr<B> &right() const { return right_; }
    std::size_t rows() const { return left_->size(); }
    std::size_t cols() const { return right_->size(); }

    bool holds(std::size_t i, std::size_t j) const { return (bits_[i * words_ + j / 64] >> (j % 64)) & 1u; }

    bool holds(const A &x, const B &y) const
    {
        auto i = left_->index_of(x);
        auto j = right_->index_of(y);
        return i && j && holds(*i, *j);
    }

    void set(std::size_t i, std::size_t j, bool value = true)
    {
        std::uint64_t mask = std::uint64_t{1} << (j % 64);
        std::uint64_t &w = bits_[i * words_ + j / 64];
        w = value ? (w | mask) : (w & ~mask);
    }

    /// Calls f(j) for every j related to row i, in increasing order.
    template <class F>
    void for_row(std::size_t i, F &&f) const
    {
        for (std::size_t w = 0; w < words_; ++w) {
            std::uint64_t word = bits_[i * words_ + w];
            while (word != 0) {
                f(w * 64 + static_cast<std::size_t>(std::countr_zero(word)));
                word &= word - 1;
            }
        }
    }

    std::size_t count() const
    {
        std::size_t n = 0;
        for (std::uint64_t w : bits_) {
            n += static_cast<std::size_t>(std::popcount(w));
        }
        return n;
    }

    Relation<B, A> converse() const
    {
        Relation<B, A> r(right_, left_);
        for (std::size_t i = 0; i < rows(); ++i) {
            for_row(i, [&](std::size_t j) { r.set(j, i); });
        }
        return r;
    }

    Relation unite(const Relation &other) const
    {
        require_same_carrier(left_, other.left_);
        require_same_carrier(right_, other.right_);
        Relation r = *this;
        for (std::size_t k = 0; k < bits_.size(); ++k) {
            r.bits_[k] |= other.bits_[k];
        }
        return r;
    }

    bool leq(const Relation &other) const
    {
        require_same_carrier(left_, other.left_);
        require_same_carrier(right_, other.right_);
        for (std::size_t k = 0; k < bits_.size(); ++k) {
            if ((bits_[k] & ~other.bits_[k]) != 0) {
                return false;
            }
        }
        return true;
    }

    /// First (row, col) where the two relations disagree, row-major.
    std::optional<std::pair<std::size_t, std::size_t>> first_difference(const Relation &other) const
    {
        require_same_carrier(left_, other.left_);
        require_same_carrier(right_, other.right_);
        for (std::size_t i = 0; i < rows(); ++i) {
            for (std::size_t w = 0; w < words_; ++w) {
                std::uint64_t diff = bits_[i * words_ + w] ^ other.bits_[i * words_ + w];
                if (diff != 0) {
                    return std::make_pair(i, w * 64 + static_cast<std::size_t>(std::countr_zero(diff)));
                }
            }
        }
        return std::nullopt;
    }

    friend bool operator==(const Relation &x, const Relation &y) { return !x.first_difference(y).has_value(); }

    /// Or-s row `src` of a relation with the same right carrier into row i.
    template <class X>
    void or_row(std::size_t i, const Relation<X, B> &from, std::size_t src)
    {
        for (std::size_t w = 0; w < words_; ++w) {
            bits_[i * words_ + w] |= from.bits_[src * words_ + w];
        }
    }

private:
    template <class, class>
    friend class Relation;

    CarrierPtr<A> left_;
    CarrierPtr<B> right_;
    std::size_t words_;
    std::vector<std::uint64_t> bits_;
};

/// Relational composition, read left to right: x (X OO Y) z iff x X y and
/// y Y z for some y.
template <class A, class B, class C>
Relation<A, C> compose(const Relation<A, B> &x, const Relation<B, C> &y)
{
    require_same_carrier(x.right(), y.left());
    Relation<A, C> r(x.left(), y.right());
    for (std::size_t i = 0; i < x.rows(); ++i) {
        x.for_row(i, [&](std::size_t j) { r.or_row(i, y, j); });
    }
    return r;
}

} // namespace natcalc
