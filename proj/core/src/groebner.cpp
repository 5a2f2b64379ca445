#include "abst/groebner.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "abst/errors.hpp"

namespace abst {

namespace {

ExponentVector lead_of(const LatticeBinomial& b) { return b.positive_part(); }

bool coprime_leads(const LatticeBinomial& a, const LatticeBinomial& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > 0 && b[i] > 0) return false;
    return true;
}

ExponentVector lcm_leads(const LatticeBinomial& a, const LatticeBinomial& b) {
    ExponentVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Int& x = a[i] > 0 ? a[i] : Int(0);
        const Int& y = b[i] > 0 ? b[i] : Int(0);
        r[i] = x > y ? x : y;
    }
    return r;
}

struct Pair {
    ExponentVector lcm;
    std::size_t i, j;
};

struct PairLess {
    const TermOrder* order;
    bool operator()(const Pair& a, const Pair& b) const {
        Cmp c = compare_monomials(*order, a.lcm, b.lcm);
        if (c != Cmp::equal) return c == Cmp::less;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    }
};

}  // namespace

GroebnerBasis buchberger_reduced(std::span<const LatticeBinomial> generators,
                                 const TermOrder& order, const BuchbergerLimits& limits) {
    const std::size_t q = order.size();
    std::vector<LatticeBinomial> g;
    for (const LatticeBinomial& b : generators) {
        if (b.size() != q) throw structural_error("buchberger: generator length mismatch");
        if (b.is_zero()) throw structural_error("buchberger: zero generator");
        LatticeBinomial o = orient(order, b);
        if (std::find(g.begin(), g.end(), o) == g.end()) g.push_back(std::move(o));
    }

    std::set<Pair, PairLess> pairs(PairLess{&order});
    auto add_pairs = [&](std::size_t k) {
        for (std::size_t i = 0; i < k; ++i) {
            if (coprime_leads(g[i], g[k])) continue;  // Buchberger's first criterion
            pairs.insert(Pair{lcm_leads(g[i], g[k]), i, k});
        }
    };
    for (std::size_t k = 0; k < g.size(); ++k) add_pairs(k);

    std::uint64_t processed = 0;
    while (!pairs.empty()) {
        if (++processed > limits.pair_cap)
            throw diagnostic_error("buchberger: pair cap exceeded");
        Pair p = *pairs.begin();
        pairs.erase(pairs.begin());
        LatticeBinomial s = spair_vector(g[p.i], g[p.j], order);
        if (s.is_zero()) continue;
        LatticeBinomial r = reduce_binomial(s, g, order, limits.reduce);
        if (r.is_zero()) continue;
        g.push_back(orient(order, r));
        add_pairs(g.size() - 1);
    }

    // minimal basis: drop elements whose lead is divisible by another lead
    std::vector<std::size_t> idx(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        Cmp c = compare_monomials(order, lead_of(g[a]), lead_of(g[b]));
        if (c != Cmp::equal) return c == Cmp::less;
        return a < b;
    });
    std::vector<LatticeBinomial> minimal;
    std::vector<ExponentVector> kept_leads;
    for (std::size_t i : idx) {
        ExponentVector lead = lead_of(g[i]);
        bool redundant = false;
        for (const ExponentVector& l : kept_leads)
            if (l.divides(lead)) { redundant = true; break; }
        if (!redundant) {
            kept_leads.push_back(std::move(lead));
            minimal.push_back(g[i]);
        }
    }

    // tail reduction to the unique reduced basis
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < minimal.size(); ++i) {
            std::vector<LatticeBinomial> others;
            others.reserve(minimal.size() - 1);
            for (std::size_t j = 0; j < minimal.size(); ++j)
                if (j != i) others.push_back(minimal[j]);
            LatticeBinomial r = reduce_binomial(minimal[i], others, order, limits.reduce);
            if (r.is_zero() || !(lead_of(r) == kept_leads[i]))
                throw diagnostic_error("buchberger: lead lost during tail reduction");
            if (!(r == minimal[i])) {
                minimal[i] = std::move(r);
                changed = true;
            }
        }
    }

    GroebnerBasis result;
    result.elements = std::move(minimal);
    result.order = order;
    result.reduced = true;
    return result;
}

ExponentVector normal_form_monomial(const ExponentVector& m, const GroebnerBasis& g) {
    if (!g.reduced) throw structural_error("normal_form_monomial: basis not reduced");
    if (m.size() != g.order.size()) throw structural_error("normal_form_monomial: length mismatch");
    ExponentVector cur = m;
    bool reduced = true;
    while (reduced) {
        reduced = false;
        for (const LatticeBinomial& e : g.elements) {
            // maximal multiplicity of the lead of e inside cur
            Int mult(-1);
            for (std::size_t i = 0; i < cur.size(); ++i) {
                if (e[i] <= 0) continue;
                if (cur[i] < e[i]) { mult = 0; break; }
                Int q = cur[i] / e[i];
                if (mult < 0 || q < mult) mult = q;
            }
            if (mult <= 0) continue;
            for (std::size_t i = 0; i < cur.size(); ++i) cur[i] -= mult * e[i];
            reduced = true;
            break;
        }
    }
    return cur;
}

bool contains_binomial(const LatticeBinomial& b, const GroebnerBasis& g) {
    if (!g.reduced) throw structural_error("contains_binomial: basis not reduced");
    if (b.is_zero()) return true;
    return reduce_binomial(b, g.elements, g.order).is_zero();
}

PPower element_order(std::size_t var, const GroebnerBasis& g, const Int& p,
                     unsigned exponent_cap) {
    const std::size_t q = g.order.size();
    if (var >= q) throw structural_error("element_order: variable out of range");
    ExponentVector m(q);
    m[var] = 1;
    ExponentVector nf = normal_form_monomial(m, g);
    for (unsigned k = 0; k <= exponent_cap; ++k) {
        if (nf.is_one()) return PPower{k, pow_int(p, k)};
        ExponentVector scaled(q);
        for (std::size_t i = 0; i < q; ++i) scaled[i] = nf[i] * p;
        nf = normal_form_monomial(scaled, g);
    }
    throw diagnostic_error(
        "element_order: cap exceeded; the presentation may not define a finite p-group");
}

std::optional<Int> standard_monomial_count(const GroebnerBasis& g, const Int& enumeration_cap) {
    if (!g.reduced) throw structural_error("standard_monomial_count: basis not reduced");
    const std::size_t q = g.order.size();
    if (q == 0) return Int(1);

    std::vector<Int> bound(q, -1);
    std::vector<const LatticeBinomial*> mixed;
    for (const LatticeBinomial& e : g.elements) {
        std::size_t support = 0, var = 0;
        for (std::size_t i = 0; i < q; ++i)
            if (e[i] > 0) { ++support; var = i; }
        if (support == 1) {
            if (bound[var] < 0 || e[var] < bound[var]) bound[var] = e[var];
        } else {
            mixed.push_back(&e);
        }
    }
    for (std::size_t i = 0; i < q; ++i)
        if (bound[i] < 0)
            throw diagnostic_error(
                "standard_monomial_count: no pure power lead for some variable (ideal not "
                "zero-dimensional)");

    if (mixed.empty()) {
        Int total(1);
        for (std::size_t i = 0; i < q; ++i) total *= bound[i];
        return total;
    }

    Int volume(1);
    for (std::size_t i = 0; i < q; ++i) volume *= bound[i];
    if (volume > enumeration_cap) return std::nullopt;

    // walk the staircase box, skipping points below any mixed lead
    std::vector<unsigned long> b(q), e(q, 0);
    for (std::size_t i = 0; i < q; ++i) b[i] = bound[i].get_ui();
    Int count(0);
    while (true) {
        bool standard = true;
        for (const LatticeBinomial* m : mixed) {
            bool div = true;
            for (std::size_t i = 0; i < q; ++i)
                if ((*m)[i] > 0 && Int(e[i]) < (*m)[i]) { div = false; break; }
            if (div) { standard = false; break; }
        }
        if (standard) ++count;
        std::size_t i = 0;
        while (i < q && ++e[i] == b[i]) e[i++] = 0;
        if (i == q) break;
    }
    return count;
}

}  // namespace abst
