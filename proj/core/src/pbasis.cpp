#include "abst/pbasis.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "abst/errors.hpp"

namespace abst {

Presentation::Presentation(Int prime, std::vector<std::string> generators,
                           std::vector<std::vector<Int>> relations)
    : prime_(std::move(prime)),
      generators_(std::move(generators)),
      relations_(std::move(relations)) {
    if (!is_prime(prime_)) throw structural_error("Presentation: prime field is not prime");
    if (generators_.empty()) throw structural_error("Presentation: no generators");
    for (const auto& r : relations_) {
        if (r.size() != generators_.size())
            throw structural_error("Presentation: relation length mismatch");
        if (std::all_of(r.begin(), r.end(), [](const Int& x) { return x == 0; }))
            throw structural_error("Presentation: zero relation");
    }
}

std::vector<LatticeBinomial> relations_to_binomials(const Presentation& pres) {
    std::vector<LatticeBinomial> out;
    out.reserve(pres.relations().size());
    for (const auto& r : pres.relations()) out.emplace_back(r);
    return out;
}

std::vector<unsigned> GroupType::tuple() const {
    std::vector<unsigned> t(exponent() + 1, 0);
    t[0] = torsion_free_rank;
    for (const auto& [r, s] : ulm) t[r] = s;
    return t;
}

std::optional<ShapeViolation> check_pbasis_shape(const GroebnerBasis& g, const Int& p) {
    if (!g.reduced) throw structural_error("check_pbasis_shape: basis not reduced");
    const TermOrder& order = g.order;
    for (std::size_t e = 0; e < g.elements.size(); ++e) {
        const LatticeBinomial& b = g.elements[e];
        // locate the leading variables by descending rank
        std::size_t pivot = order.size();
        std::optional<std::size_t> second;
        for (std::size_t v : order.scan_order()) {
            if (b[v] <= 0) continue;
            if (pivot == order.size()) {
                pivot = v;
            } else {
                second = v;
                break;
            }
        }
        if (second)
            return ShapeViolation{ShapeDefect::mixed_lead, e, pivot, second};
        // pure power exponent must be a power of p
        Int lead = b[pivot];
        unsigned r = p_adic_valuation(lead, p);
        if (pow_int(p, r) != lead)
            return ShapeViolation{ShapeDefect::lead_not_p_power, e, pivot, std::nullopt};
        if (r == 0) continue;
        const Int pr = lead;
        // tails scanned by descending rank so the reported offender is the
        // highest-precedence one
        for (std::size_t v : order.scan_order()) {
            if (b[v] >= 0) continue;
            Int tail_exp = -b[v];
            if (!mpz_divisible_p(tail_exp.get_mpz_t(), pr.get_mpz_t()))
                return ShapeViolation{ShapeDefect::tail_not_divisible, e, pivot, v};
        }
    }
    return std::nullopt;
}

std::vector<PBasisElement> extract_pbasis(const GroebnerBasis& g, std::span<const PPower> orders,
                                          const Int& p) {
    if (auto v = check_pbasis_shape(g, p))
        throw diagnostic_error("extract_pbasis: basis does not have the required shape");
    std::vector<PBasisElement> basis;
    for (const LatticeBinomial& b : g.elements) {
        std::size_t pivot = 0;
        for (std::size_t i = 0; i < b.size(); ++i)
            if (b[i] > 0) pivot = i;
        unsigned r = p_adic_valuation(b[pivot], p);
        if (r == 0) continue;  // redundant generator
        PBasisElement e;
        e.pivot = pivot;
        e.order_exponent = r;
        e.order = b[pivot];
        for (std::size_t v : g.order.scan_order()) {
            if (b[v] >= 0) continue;
            Int a = (-b[v]) / e.order;
            if (a * e.order != -b[v])
                throw diagnostic_error("extract_pbasis: tail exponent not divisible by p^r");
            if (v < orders.size() && a >= orders[v].value)
                throw diagnostic_error("extract_pbasis: tail coefficient exceeds generator order");
            e.tails.emplace_back(v, std::move(a));
        }
        basis.push_back(std::move(e));
    }
    return basis;
}

GroupType ulm_type(std::span<const PBasisElement> basis) {
    GroupType t;
    for (const PBasisElement& e : basis) ++t.ulm[e.order_exponent];
    return t;
}

std::optional<unsigned> p_height(std::span<const Int> coords,
                                 std::span<const PBasisElement> basis, const Int& p) {
    if (coords.size() != basis.size()) throw structural_error("p_height: length mismatch");
    bool zero = true;
    for (std::size_t i = 0; i < coords.size(); ++i)
        if (!mpz_divisible_p(coords[i].get_mpz_t(), basis[i].order.get_mpz_t())) zero = false;
    if (zero) return std::nullopt;
    auto admits = [&](unsigned k) {
        for (std::size_t i = 0; i < coords.size(); ++i) {
            unsigned m = std::min(k, basis[i].order_exponent);
            Int pm = pow_int(p, m);
            if (!mpz_divisible_p(coords[i].get_mpz_t(), pm.get_mpz_t())) return false;
        }
        return true;
    };
    unsigned h = 0;
    while (admits(h + 1)) ++h;
    return h;
}

namespace {

std::vector<PPower> variable_orders(const std::vector<LatticeBinomial>& bins, std::size_t q,
                                    const Int& p, const PipelineLimits& limits,
                                    GroebnerBasis* gb_out = nullptr) {
    if (bins.empty())
        throw diagnostic_error("pipeline: no relations; the group is not a finite p-group");
    GroebnerBasis gb0 = buchberger_reduced(bins, TermOrder::identity(q), limits.buchberger);
    std::vector<PPower> orders(q);
    for (std::size_t j = 0; j < q; ++j)
        orders[j] = element_order(j, gb0, p, limits.order_exponent_cap);
    if (gb_out) *gb_out = std::move(gb0);
    return orders;
}

// Ranks from a variable sequence listed by descending precedence-to-be:
// seq[0] receives rank 1 (lowest precedence scans last).
TermOrder order_from_sequence(const std::vector<std::size_t>& seq) {
    std::vector<std::size_t> rank(seq.size());
    for (std::size_t i = 0; i < seq.size(); ++i) rank[seq[i]] = i + 1;
    return TermOrder(std::move(rank));
}

// Variables sorted by descending group order, ties by ascending index.
std::vector<std::size_t> descending_order_sequence(const std::vector<PPower>& orders) {
    std::vector<std::size_t> seq(orders.size());
    std::iota(seq.begin(), seq.end(), std::size_t{0});
    std::stable_sort(seq.begin(), seq.end(), [&](std::size_t a, std::size_t b) {
        return orders[a].value > orders[b].value;
    });
    return seq;
}

struct SearchContext {
    const std::vector<LatticeBinomial>& bins;
    const std::vector<PPower>& orders;
    const Int& p;
    const PipelineLimits& limits;
};

std::optional<PermutationSearch> try_order(const SearchContext& ctx, const TermOrder& order,
                                           ShapeViolation* violation) {
    GroebnerBasis gb = buchberger_reduced(ctx.bins, order, ctx.limits.buchberger);
    if (auto v = check_pbasis_shape(gb, ctx.p)) {
        if (violation) *violation = *v;
        return std::nullopt;
    }
    return PermutationSearch{order, std::move(gb), 0, false};
}

// Iterates all permutations within equal-order blocks, in lexicographic
// order per block, calling fn(order) until it returns true.  Returns false
// when the enumeration cap is hit or all candidates fail.
template <typename Fn>
bool enumerate_tie_breaks(const std::vector<PPower>& orders, std::uint64_t cap, Fn&& fn) {
    std::vector<std::size_t> seq = descending_order_sequence(orders);
    // split into maximal runs of equal order
    std::vector<std::pair<std::size_t, std::size_t>> runs;  // [begin, end)
    std::size_t i = 0;
    while (i < seq.size()) {
        std::size_t j = i + 1;
        while (j < seq.size() && orders[seq[j]].value == orders[seq[i]].value) ++j;
        runs.emplace_back(i, j);
        i = j;
    }
    std::vector<std::vector<std::size_t>> blocks;
    for (auto [b, e] : runs) blocks.emplace_back(seq.begin() + b, seq.begin() + e);
    std::uint64_t tried = 0;
    // odometer over per-block permutations
    std::vector<std::vector<std::size_t>> current = blocks;
    while (true) {
        std::vector<std::size_t> candidate;
        for (const auto& blk : current) candidate.insert(candidate.end(), blk.begin(), blk.end());
        if (++tried > cap) return false;
        if (fn(order_from_sequence(candidate))) return true;
        // advance odometer
        std::size_t k = 0;
        while (k < current.size() && !std::next_permutation(current[k].begin(), current[k].end())) {
            current[k] = blocks[k];
            ++k;
        }
        if (k == current.size()) return false;
    }
}

PermutationSearch search_permutation(const SearchContext& ctx) {
    const std::size_t q = ctx.orders.size();
    std::vector<std::size_t> seq = descending_order_sequence(ctx.orders);
    TermOrder order = order_from_sequence(seq);
    std::set<std::vector<std::size_t>> visited;
    unsigned swaps = 0;
    const unsigned swap_cap = static_cast<unsigned>(q * q);
    while (true) {
        visited.insert(order.ranks());
        ShapeViolation v{};
        if (auto found = try_order(ctx, order, &v)) {
            found->swaps_used = swaps;
            return std::move(*found);
        }
        if (v.defect == ShapeDefect::lead_not_p_power || !v.offender)
            throw diagnostic_error(
                "find_pbasis_permutation: leading exponent is not a p-power (internal "
                "consistency)");
        std::size_t i = *v.offender, j = v.pivot;
        if (ctx.orders[i].value != ctx.orders[j].value)
            throw diagnostic_error(
                "find_pbasis_permutation: shape violation implicates a variable of different "
                "order (internal consistency)");
        order = order.with_swapped_ranks(i, j);
        ++swaps;
        if (swaps > swap_cap || visited.count(order.ranks())) break;
    }
    // exhaustive fallback within equal-order blocks
    std::optional<PermutationSearch> found;
    bool ok = enumerate_tie_breaks(ctx.orders, ctx.limits.permutation_cap, [&](TermOrder cand) {
        if (auto r = try_order(ctx, cand, nullptr)) {
            r->swaps_used = swaps;
            r->exhaustive_fallback = true;
            found = std::move(*r);
            return true;
        }
        return false;
    });
    if (!ok || !found)
        throw diagnostic_error(
            "find_pbasis_permutation: no shape-accepted ordering found (exhaustive search "
            "exhausted)");
    return std::move(*found);
}

}  // namespace

PermutationSearch find_pbasis_permutation(const Presentation& pres,
                                          const PipelineLimits& limits) {
    std::vector<LatticeBinomial> bins = relations_to_binomials(pres);
    std::vector<PPower> orders =
        variable_orders(bins, pres.generator_count(), pres.prime(), limits);
    SearchContext ctx{bins, orders, pres.prime(), limits};
    return search_permutation(ctx);
}

std::vector<TermOrder> shape_accepted_permutations(const Presentation& pres,
                                                   const PipelineLimits& limits,
                                                   std::size_t enumeration_cap) {
    std::vector<LatticeBinomial> bins = relations_to_binomials(pres);
    std::vector<PPower> orders =
        variable_orders(bins, pres.generator_count(), pres.prime(), limits);
    SearchContext ctx{bins, orders, pres.prime(), limits};
    std::vector<TermOrder> accepted;
    enumerate_tie_breaks(orders, enumeration_cap, [&](TermOrder cand) {
        if (try_order(ctx, cand, nullptr)) accepted.push_back(std::move(cand));
        return false;  // keep enumerating
    });
    return accepted;
}

StructureResult compute_structure(const Presentation& pres, const PipelineLimits& limits) {
    StructureResult out;
    out.prime = pres.prime();
    out.generator_names = pres.generators();

    std::vector<LatticeBinomial> bins = relations_to_binomials(pres);
    std::vector<PPower> orders =
        variable_orders(bins, pres.generator_count(), pres.prime(), limits);

    for (std::size_t j = 0; j < orders.size(); ++j) {
        if (orders[j].exponent > 0)
            out.kept.push_back(j);
        else
            out.dropped.push_back(pres.generators()[j]);
    }

    if (out.kept.empty()) {  // the trivial group
        out.order = TermOrder(std::vector<std::size_t>{});
        out.gb = GroebnerBasis{{}, out.order, true};
        return out;
    }

    // project relations onto the kept generators
    std::vector<std::string> kept_names;
    for (std::size_t j : out.kept) kept_names.push_back(pres.generators()[j]);
    std::vector<std::vector<Int>> kept_rels;
    for (const auto& r : pres.relations()) {
        std::vector<Int> pr;
        pr.reserve(out.kept.size());
        for (std::size_t j : out.kept) pr.push_back(r[j]);
        if (std::any_of(pr.begin(), pr.end(), [](const Int& x) { return x != 0; }))
            kept_rels.push_back(std::move(pr));
    }
    if (kept_rels.empty())
        throw diagnostic_error("compute_structure: projection lost all relations");
    out.reduced = Presentation(pres.prime(), kept_names, kept_rels);
    for (std::size_t j : out.kept) out.orders.push_back(orders[j]);

    std::vector<LatticeBinomial> kept_bins = relations_to_binomials(*out.reduced);
    SearchContext ctx{kept_bins, out.orders, pres.prime(), limits};
    PermutationSearch search = search_permutation(ctx);
    out.order = std::move(search.order);
    out.gb = std::move(search.gb);
    out.swaps_used = search.swaps_used;
    out.exhaustive_fallback = search.exhaustive_fallback;
    out.basis = extract_pbasis(out.gb, out.orders, pres.prime());
    out.type = ulm_type(out.basis);
    return out;
}

std::vector<Int> basis_coordinates(const StructureResult& s, std::size_t kept_var) {
    const std::size_t q = s.order.size();
    if (kept_var >= q) throw structural_error("basis_coordinates: variable out of range");
    ExponentVector m(q);
    m[kept_var] = 1;
    ExponentVector nf = normal_form_monomial(m, s.gb);

    std::vector<Int> residue(q);
    for (std::size_t i = 0; i < q; ++i) residue[i] = nf[i];

    // substitute pivots from highest rank down: c_j = b_j + sum_t a_t c_t
    std::vector<Int> coords(s.basis.size());
    for (std::size_t bi = s.basis.size(); bi-- > 0;) {
        const PBasisElement& e = s.basis[bi];
        Int c = residue[e.pivot];
        residue[e.pivot] = 0;
        coords[bi] = c;
        for (const auto& [t, a] : e.tails) residue[t] += c * a;
    }
    for (std::size_t i = 0; i < q; ++i)
        if (residue[i] != 0)
            throw structural_error("basis_coordinates: residue on a non-basis variable");
    for (std::size_t bi = 0; bi < coords.size(); ++bi) {
        mpz_mod(coords[bi].get_mpz_t(), coords[bi].get_mpz_t(), s.basis[bi].order.get_mpz_t());
    }
    return coords;
}

}  // namespace abst
