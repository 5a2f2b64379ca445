#ifndef ABST_GROEBNER_HPP
#define ABST_GROEBNER_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "abst/lattice.hpp"

namespace abst {

/// Reduced Groebner basis of a lattice ideal: oriented binomials with
/// pairwise non-dividing leading terms and tail-reduced, sorted by leading
/// monomial ascending under `order`.
struct GroebnerBasis {
    std::vector<LatticeBinomial> elements;
    TermOrder order;
    bool reduced = false;
};

struct BuchbergerLimits {
    std::uint64_t pair_cap = 1'000'000;
    ReduceLimits reduce{};
};

/// Buchberger's algorithm specialized to lattice binomials.  Deterministic:
/// pairs are processed by minimal lcm under `order`, ties by insertion
/// index; coprime leading terms are skipped.
GroebnerBasis buchberger_reduced(std::span<const LatticeBinomial> generators,
                                 const TermOrder& order, const BuchbergerLimits& limits = {});

/// The unique standard monomial congruent to m modulo the ideal.
ExponentVector normal_form_monomial(const ExponentVector& m, const GroebnerBasis& g);

/// Ideal membership via reduction to zero.
bool contains_binomial(const LatticeBinomial& b, const GroebnerBasis& g);

/// A power p^exponent.
struct PPower {
    unsigned exponent = 0;
    Int value = 1;
    bool operator==(const PPower&) const = default;
};

/// Order of the group element behind variable `var`: the smallest p^k with
/// NF(x_var^{p^k}) = 1.  Powers are taken by scaling the current normal
/// form, so the cost is polynomial in k, not p^k.
PPower element_order(std::size_t var, const GroebnerBasis& g, const Int& p,
                     unsigned exponent_cap = 64);

/// Number of standard monomials (= group order for the ideals built here).
/// Uses the staircase product when every leading term is a pure power;
/// otherwise enumerates the bounding box and returns nullopt when the box
/// exceeds `enumeration_cap` points.  Throws if some variable has no pure
/// power among the leading terms (ideal not zero-dimensional).
std::optional<Int> standard_monomial_count(const GroebnerBasis& g,
                                           const Int& enumeration_cap = Int(10'000'000));

}  // namespace abst

#endif
