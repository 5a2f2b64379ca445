#ifndef ABST_DEDEKIND_HPP
#define ABST_DEDEKIND_HPP

#include <optional>
#include <string>
#include <vector>

#include "abst/pbasis.hpp"

namespace abst {

enum class RingKind { zcp, pullback_zz };

/// One of the two ring models: the group ring of a cyclic group of prime
/// order, or the p-pullback of Z (+) Z.  For the group ring, `sigma` holds
/// the coefficients of sigma(p2) in the decomposition p = p1 + p2^{p-1}
/// sigma(p2); for the pullback p = p1 + p2 and sigma is empty.
struct RingModel {
    RingKind kind = RingKind::pullback_zz;
    Int p = 2;
    std::vector<Int> sigma;
};

/// Coefficients of sigma(p2) as a polynomial in p2 (index = degree), found
/// by exact linear solving over the integers; degree <= p-1.
std::vector<Int> sigma_decomposition(const Int& p);

RingModel make_ring_model(RingKind kind, const Int& p);

/// Expands the defining identities in Z[x]/(x^p - 1) and checks them:
/// p1 + p2^{p-1} sigma(p2) = p and p1 p2 = 0.
bool verify_ring_identity(const RingModel& ring);

/// Chain lengths of one basic building block; nullopt encodes an infinite
/// length.
struct BlockSpec {
    std::optional<unsigned> d1, d2;
    bool finite() const { return d1.has_value() && d2.has_value(); }
    bool operator==(const BlockSpec&) const = default;
};

enum class CycleKind { deleted_cycle, block_cycle };

/// A deleted- or block-cycle indecomposable: blocks S^(1)..S^(m) glued
/// along their socles, block cycles closed by the coefficients lambda of
/// f(z) = lambda_0 + ... + lambda_{l-1} z^{l-1} + z^l.
struct ModuleSpec {
    RingModel ring;
    CycleKind cycle = CycleKind::deleted_cycle;
    std::vector<BlockSpec> blocks;
    std::vector<Int> lambda;

    std::size_t block_count() const { return blocks.size(); }
    /// Smallest period of the block sequence (block cycles).
    unsigned period() const;
    unsigned repetition() const { return static_cast<unsigned>(blocks.size()) / period(); }

    /// Checks lengths against the cycle kind: interior glued positions must
    /// be finite and >= 2 (a socle to glue exists), block cycles must be
    /// fully finite with matching lambda length.  Throws diagnostic_error.
    void validate() const;
    bool has_infinite_length() const;
};

struct BlockGenerator {
    std::size_t block = 0;
    int side = 0;        // 0 = head a, 1 = p1 chain, 2 = p2 chain
    unsigned degree = 0;
};

/// A built presentation plus the generator bookkeeping needed to locate
/// connector elements.
struct BuiltPresentation {
    Presentation pres;
    std::vector<BlockGenerator> info;
    std::vector<std::size_t> connectors;     // interior connectors d_1..d_{m-1}
    std::optional<std::size_t> d_head;       // d_0 = p1^{d(1,1)-1} s_{1,1} when finite
    std::optional<std::size_t> d_tail;       // d_m = p2^{d(2,m)-1} s_{2,m} when finite
};

/// Presentation of one basic building block from the p-action on
/// A = {a, p1 a, ..., p1^{d1-1} a, p2 a, ..., p2^{d2-1} a}; both lengths
/// must be finite.
BuiltPresentation build_block_presentation(const RingModel& ring, const BlockSpec& block,
                                           const std::string& head_name = "a");

/// Direct sum of the per-block presentations plus one gluing relation per
/// connector (m-1 for deleted cycles, m for block cycles); gluing
/// coefficients are normalized modulo p.
BuiltPresentation build_cycle_presentation(const ModuleSpec& spec);

/// Result of replacing infinite lengths by a stabilized sentinel.
struct InfiniteResolution {
    ModuleSpec finite;              // spec with sentinels substituted
    unsigned sentinel = 0;          // length used for each infinite position
    unsigned infinite_rank = 0;     // basis elements to reclassify as infinite order
    GroupType torsion;              // stabilized torsion type
    bool bypassed = false;          // both-infinite single block: no pipeline run
    GroupType bypass_type;          // free rank for the bypassed case
    std::vector<std::string> bypass_basis;
};

/// Replaces infinite lengths by a sentinel L found by a stabilization loop:
/// the reported torsion type (basis orders minus the sentinel artifacts)
/// must agree for two consecutive L.  A single block with both lengths
/// infinite is resolved without any computation.
InfiniteResolution resolve_infinite_lengths(const ModuleSpec& spec,
                                            const PipelineLimits& limits = {},
                                            unsigned max_sentinel = 24);
InfiniteResolution resolve_infinite_lengths(const RingModel& ring, const BlockSpec& block,
                                            const PipelineLimits& limits = {},
                                            unsigned max_sentinel = 24);

struct ConnectorHeight {
    std::string label;      // "d1".."d{m-1}", "d0", "dm"
    unsigned height = 0;
    bool tallied = false;   // participates in the ell tally
};

/// Connector heights and the tally ell_alpha = #{tallied with h = alpha-1}.
/// Tallied connectors are the interior ones (plus d_0 for block cycles),
/// evaluated recursively: each height is computed in the quotient by the
/// previously killed connectors, so that killing all tallied connectors
/// yields exactly the direct sum of the reduced blocks.  d_0 and d_m are
/// also reported (heights in the full module) when their lengths are
/// finite.
struct ConnectorHeights {
    std::vector<ConnectorHeight> connectors;
    std::map<unsigned, unsigned> ell;
    unsigned exponent = 0;  // n = ex(t(M))
};

ConnectorHeights connector_heights(const ModuleSpec& spec, const BuiltPresentation& built,
                                   const StructureResult& structure,
                                   const PipelineLimits& limits = {});

/// Type formula versus the direct pipeline.
struct FormulaResult {
    GroupType formula;
    GroupType direct;
    ConnectorHeights heights;
    std::vector<GroupType> reduced_block_types;
};

/// t(M) = sum_i t(S'^(i)) + (0, l_1 - l_2, ..., l_{n-1} - l_n, l_n), with
/// the reduced blocks S' (lengths minus one; the two free ends of a deleted
/// cycle exempt) and the connector tally from connector_heights.
FormulaResult type_via_formula(const ModuleSpec& spec, const PipelineLimits& limits = {});

/// True when f(z) = lambda_0 + ... + z^l is a power of an irreducible
/// polynomial over F_p (the defining condition on block-cycle closing
/// coefficients; callers may warn when it fails).
bool closing_polynomial_is_irreducible_power(const ModuleSpec& spec);

/// End-to-end analysis of a module spec: builds the presentation (resolving
/// infinite lengths first) and computes the additive type, with the free
/// rank in s_0.
struct ModuleAnalysis {
    GroupType type;
    std::optional<InfiniteResolution> resolution;  // set when a length was infinite
    std::optional<BuiltPresentation> built;        // the presentation actually run
    std::optional<StructureResult> structure;
};

ModuleAnalysis analyze_module(const ModuleSpec& spec, const PipelineLimits& limits = {});

}  // namespace abst

#endif
