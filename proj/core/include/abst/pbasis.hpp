#ifndef ABST_PBASIS_HPP
#define ABST_PBASIS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "abst/groebner.hpp"
#include "abst/lattice.hpp"

namespace abst {

/// Finitely presented abelian group: generators c_1..c_q and relation
/// vectors a with sum_j a_j c_j = 0.
class Presentation {
public:
    Presentation(Int prime, std::vector<std::string> generators,
                 std::vector<std::vector<Int>> relations);

    const Int& prime() const { return prime_; }
    std::size_t generator_count() const { return generators_.size(); }
    const std::vector<std::string>& generators() const { return generators_; }
    const std::vector<std::vector<Int>>& relations() const { return relations_; }

private:
    Int prime_;
    std::vector<std::string> generators_;
    std::vector<std::vector<Int>> relations_;
};

/// Relation vectors as lattice binomials, in input order.
std::vector<LatticeBinomial> relations_to_binomials(const Presentation& pres);

/// One p-basis element b = c_pivot - sum_t a_t c_t of order p^r, r >= 1.
struct PBasisElement {
    std::size_t pivot = 0;
    unsigned order_exponent = 0;  // r
    Int order = 1;                // p^r
    std::vector<std::pair<std::size_t, Int>> tails;  // (variable, coefficient), coefficient > 0
};

/// Additive type: torsion-free rank s_0 plus Ulm multiplicities s_r for
/// cyclic p^r summands.  Only nonzero multiplicities are stored.
struct GroupType {
    unsigned torsion_free_rank = 0;
    std::map<unsigned, unsigned> ulm;

    unsigned exponent() const { return ulm.empty() ? 0 : ulm.rbegin()->first; }
    /// Dense tuple (s_0, s_1, ..., s_n).
    std::vector<unsigned> tuple() const;
    bool operator==(const GroupType&) const = default;
};

struct PipelineLimits {
    unsigned order_exponent_cap = 64;
    BuchbergerLimits buchberger{};
    std::uint64_t permutation_cap = 200'000;
};

enum class ShapeDefect {
    mixed_lead,          // leading term is not a pure power
    lead_not_p_power,    // pure power exponent is not a power of p
    tail_not_divisible,  // tail exponent not divisible by p^r
};

struct ShapeViolation {
    ShapeDefect defect;
    std::size_t element = 0;  // index into gb.elements
    std::size_t pivot = 0;    // highest-rank variable of the leading term
    std::optional<std::size_t> offender;  // tail/extra variable implicated
};

/// Checks the pure-power / tail-divisibility shape that makes a reduced lex
/// basis extractable as a p-basis.  Returns the first violation, if any.
std::optional<ShapeViolation> check_pbasis_shape(const GroebnerBasis& g, const Int& p);

struct PermutationSearch {
    TermOrder order;
    GroebnerBasis gb;
    unsigned swaps_used = 0;
    bool exhaustive_fallback = false;
};

/// Finds a variable precedence (descending group order, ties searched) whose
/// reduced lex basis passes the shape check, together with that basis.
PermutationSearch find_pbasis_permutation(const Presentation& pres,
                                          const PipelineLimits& limits = {});

/// All shape-accepted precedences among the descending-order tie breaks.
std::vector<TermOrder> shape_accepted_permutations(const Presentation& pres,
                                                   const PipelineLimits& limits = {},
                                                   std::size_t enumeration_cap = 50'000);

/// p-basis elements from a shape-accepted basis; tail exponents are divided
/// by the pivot's p^r.  Elements whose lead has exponent 1 are redundant
/// generators and contribute nothing.  `orders` (per-variable element
/// orders) bound the tail coefficients.
std::vector<PBasisElement> extract_pbasis(const GroebnerBasis& g, std::span<const PPower> orders,
                                          const Int& p);

/// Ulm multiplicities s_r = #{ j : r_j = r }; the torsion-free rank is zero.
GroupType ulm_type(std::span<const PBasisElement> basis);

/// Height of sum_i coords_i b_i: the largest k such that p^min(k, r_i)
/// divides coords_i for every i.  nullopt encodes infinity (zero element).
std::optional<unsigned> p_height(std::span<const Int> coords,
                                 std::span<const PBasisElement> basis, const Int& p);

/// Full pipeline result for one presentation.
struct StructureResult {
    Int prime;
    std::vector<std::string> generator_names;       // original
    std::vector<std::size_t> kept;                  // original indices of nontrivial generators
    std::vector<std::string> dropped;               // names of trivial generators
    std::optional<Presentation> reduced;            // presentation on kept generators; empty
                                                    // when every generator is trivial
    std::vector<PPower> orders;                     // per kept generator
    TermOrder order;                                // on kept variables
    GroebnerBasis gb;
    std::vector<PBasisElement> basis;               // pivots index kept variables
    GroupType type;
    unsigned swaps_used = 0;
    bool exhaustive_fallback = false;
};

/// Translate, find ordering, extract, count: the whole pipeline.
StructureResult compute_structure(const Presentation& pres, const PipelineLimits& limits = {});

/// Coordinates of generator `kept_var` (index into the reduced presentation)
/// in the p-basis, reduced modulo the element orders.
std::vector<Int> basis_coordinates(const StructureResult& s, std::size_t kept_var);

}  // namespace abst

#endif
