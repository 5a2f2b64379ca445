#ifndef ABST_LATTICE_HPP
#define ABST_LATTICE_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "abst/errors.hpp"
#include "abst/ints.hpp"

namespace abst {

enum class Cmp { less, equal, greater };

/// A monomial x^a over q variables, stored as dense nonnegative exponents.
class ExponentVector {
public:
    ExponentVector() = default;
    explicit ExponentVector(std::size_t q) : e_(q) {}
    explicit ExponentVector(std::vector<Int> e);

    std::size_t size() const { return e_.size(); }
    const Int& operator[](std::size_t i) const { return e_[i]; }
    Int& operator[](std::size_t i) { return e_[i]; }
    const std::vector<Int>& entries() const { return e_; }

    /// True for x^0 = 1.
    bool is_one() const;
    /// Componentwise <=.
    bool divides(const ExponentVector& m) const;

    bool operator==(const ExponentVector&) const = default;

private:
    std::vector<Int> e_;
};

/// The binomial x^{v+} - x^{v-} for a signed vector v.  The positive and
/// negative parts of a signed vector have disjoint supports, so this
/// representation is always in normal form.  v = 0 is the zero sentinel.
class LatticeBinomial {
public:
    LatticeBinomial() = default;
    explicit LatticeBinomial(std::vector<Int> v) : v_(std::move(v)) {}
    static LatticeBinomial zero(std::size_t q) { return LatticeBinomial(std::vector<Int>(q)); }

    std::size_t size() const { return v_.size(); }
    const Int& operator[](std::size_t i) const { return v_[i]; }
    const std::vector<Int>& vec() const { return v_; }

    bool is_zero() const;
    ExponentVector positive_part() const;
    ExponentVector negative_part() const;
    LatticeBinomial negated() const;

    bool operator==(const LatticeBinomial&) const = default;

private:
    std::vector<Int> v_;
};

/// Lexicographic term order under a permutation of the variables.  rank(i)
/// is the precedence of variable i, between 1 and q; the variable of rank q
/// is scanned first and wins comparisons.
class TermOrder {
public:
    TermOrder() = default;
    explicit TermOrder(std::vector<std::size_t> ranks);
    static TermOrder identity(std::size_t q);

    std::size_t size() const { return rank_.size(); }
    std::size_t rank(std::size_t var) const { return rank_[var]; }
    const std::vector<std::size_t>& ranks() const { return rank_; }
    /// Variables from highest precedence down; comparison scans this list.
    const std::vector<std::size_t>& scan_order() const { return scan_; }
    /// Variables from lowest precedence up (rank 1 first).
    std::vector<std::size_t> ascending() const;

    TermOrder with_swapped_ranks(std::size_t v1, std::size_t v2) const;

    bool operator==(const TermOrder& o) const { return rank_ == o.rank_; }

private:
    std::vector<std::size_t> rank_;
    std::vector<std::size_t> scan_;
};

/// Binomial of the relation u - w, i.e. x^u - x^w with common factors
/// stripped.  Returns the zero sentinel when u = w.
LatticeBinomial normalize(const ExponentVector& u, const ExponentVector& w);

Cmp compare_monomials(const TermOrder& order, const ExponentVector& m1, const ExponentVector& m2);

/// Returns b or -b so that the positive part is the leading monomial.
/// The zero binomial cannot be oriented.
LatticeBinomial orient(const TermOrder& order, const LatticeBinomial& b);

/// S-polynomial of two oriented binomials: the (normalized, re-oriented)
/// binomial of the difference vector v1 - v2.  Zero sentinel when b1 = b2.
LatticeBinomial spair_vector(const LatticeBinomial& b1, const LatticeBinomial& b2,
                             const TermOrder& order);

struct ReduceLimits {
    std::uint64_t step_cap = 4'000'000;
};

/// Normal form of b modulo the oriented binomials in `basis`.  Each step
/// rewrites one side by the maximal multiplicity of a leading term and the
/// result is renormalized; the leading side is rewritten first, then the
/// trailing side, so the output is fully tail-reduced.
LatticeBinomial reduce_binomial(const LatticeBinomial& b, std::span<const LatticeBinomial> basis,
                                const TermOrder& order, const ReduceLimits& limits = {});

}  // namespace abst

#endif
