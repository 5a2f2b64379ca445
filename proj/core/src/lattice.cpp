#include "abst/lattice.hpp"

#include <algorithm>
#include <numeric>

namespace abst {

ExponentVector::ExponentVector(std::vector<Int> e) : e_(std::move(e)) {
    for (const Int& x : e_)
        if (x < 0) throw structural_error("ExponentVector: negative exponent");
}

bool ExponentVector::is_one() const {
    return std::all_of(e_.begin(), e_.end(), [](const Int& x) { return x == 0; });
}

bool ExponentVector::divides(const ExponentVector& m) const {
    if (size() != m.size()) throw structural_error("ExponentVector: length mismatch");
    for (std::size_t i = 0; i < size(); ++i)
        if (e_[i] > m.e_[i]) return false;
    return true;
}

bool LatticeBinomial::is_zero() const {
    return std::all_of(v_.begin(), v_.end(), [](const Int& x) { return x == 0; });
}

ExponentVector LatticeBinomial::positive_part() const {
    ExponentVector r(size());
    for (std::size_t i = 0; i < size(); ++i)
        if (v_[i] > 0) r[i] = v_[i];
    return r;
}

ExponentVector LatticeBinomial::negative_part() const {
    ExponentVector r(size());
    for (std::size_t i = 0; i < size(); ++i)
        if (v_[i] < 0) r[i] = -v_[i];
    return r;
}

LatticeBinomial LatticeBinomial::negated() const {
    std::vector<Int> w(v_);
    for (Int& x : w) x = -x;
    return LatticeBinomial(std::move(w));
}

TermOrder::TermOrder(std::vector<std::size_t> ranks) : rank_(std::move(ranks)) {
    const std::size_t q = rank_.size();
    std::vector<bool> seen(q, false);
    for (std::size_t r : rank_) {
        if (r < 1 || r > q || seen[r - 1]) throw structural_error("TermOrder: not a permutation");
        seen[r - 1] = true;
    }
    scan_.resize(q);
    for (std::size_t v = 0; v < q; ++v) scan_[q - rank_[v]] = v;
}

TermOrder TermOrder::identity(std::size_t q) {
    std::vector<std::size_t> r(q);
    std::iota(r.begin(), r.end(), std::size_t{1});
    return TermOrder(std::move(r));
}

std::vector<std::size_t> TermOrder::ascending() const {
    return {scan_.rbegin(), scan_.rend()};
}

TermOrder TermOrder::with_swapped_ranks(std::size_t v1, std::size_t v2) const {
    std::vector<std::size_t> r(rank_);
    std::swap(r[v1], r[v2]);
    return TermOrder(std::move(r));
}

LatticeBinomial normalize(const ExponentVector& u, const ExponentVector& w) {
    if (u.size() != w.size()) throw structural_error("normalize: length mismatch");
    std::vector<Int> v(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) v[i] = u[i] - w[i];
    return LatticeBinomial(std::move(v));
}

Cmp compare_monomials(const TermOrder& order, const ExponentVector& m1,
                      const ExponentVector& m2) {
    if (m1.size() != m2.size() || m1.size() != order.size())
        throw structural_error("compare_monomials: length mismatch");
    for (std::size_t v : order.scan_order()) {
        if (m1[v] != m2[v]) return m1[v] > m2[v] ? Cmp::greater : Cmp::less;
    }
    return Cmp::equal;
}

namespace {

// Sign of the leading entry of v in scan order: +1 when the positive part
// leads, -1 when the negative part leads, 0 for the zero vector.
int lead_sign(const TermOrder& order, const LatticeBinomial& b) {
    for (std::size_t v : order.scan_order()) {
        if (b[v] != 0) return b[v] > 0 ? 1 : -1;
    }
    return 0;
}

}  // namespace

LatticeBinomial orient(const TermOrder& order, const LatticeBinomial& b) {
    if (b.size() != order.size()) throw structural_error("orient: length mismatch");
    const int s = lead_sign(order, b);
    if (s == 0) throw structural_error("orient: zero binomial");
    return s > 0 ? b : b.negated();
}

LatticeBinomial spair_vector(const LatticeBinomial& b1, const LatticeBinomial& b2,
                             const TermOrder& order) {
    if (b1.size() != b2.size()) throw structural_error("spair_vector: length mismatch");
    std::vector<Int> v(b1.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = b1[i] - b2[i];
    LatticeBinomial d(std::move(v));
    if (d.is_zero()) return d;
    return orient(order, d);
}

namespace {

// Maximal multiplicity with which the leading part of g fits into the given
// side of v (side > 0: positive entries, side < 0: negative entries).
// Returns 0 when it does not fit at all.
Int fit_multiplicity(const LatticeBinomial& v, const LatticeBinomial& g, int side) {
    Int m(-1);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (g[i] <= 0) continue;  // leading part of oriented g is its positive part
        Int avail = side > 0 ? v[i] : -v[i];
        if (avail < g[i]) return Int(0);
        Int q = avail / g[i];
        if (m < 0 || q < m) m = q;
    }
    return m < 0 ? Int(0) : m;
}

}  // namespace

LatticeBinomial reduce_binomial(const LatticeBinomial& b, std::span<const LatticeBinomial> basis,
                                const TermOrder& order, const ReduceLimits& limits) {
    if (b.is_zero()) return b;
    LatticeBinomial v = orient(order, b);
    std::uint64_t steps = 0;
    bool reduced_lead;
    do {
        reduced_lead = false;
        // leading side first
        for (const LatticeBinomial& g : basis) {
            Int m = fit_multiplicity(v, g, +1);
            if (m == 0) continue;
            std::vector<Int> w(v.vec());
            for (std::size_t i = 0; i < w.size(); ++i) w[i] -= m * g[i];
            v = LatticeBinomial(std::move(w));
            if (v.is_zero()) return v;
            v = orient(order, v);
            reduced_lead = true;
            if (++steps > limits.step_cap)
                throw diagnostic_error("reduce_binomial: step cap exceeded");
            break;
        }
    } while (reduced_lead);
    // then the trailing side
    bool reduced_tail;
    do {
        reduced_tail = false;
        for (const LatticeBinomial& g : basis) {
            Int m = fit_multiplicity(v, g, -1);
            if (m == 0) continue;
            std::vector<Int> w(v.vec());
            for (std::size_t i = 0; i < w.size(); ++i) w[i] += m * g[i];
            v = LatticeBinomial(std::move(w));
            if (v.is_zero()) return v;
            v = orient(order, v);
            reduced_tail = true;
            if (++steps > limits.step_cap)
                throw diagnostic_error("reduce_binomial: step cap exceeded");
            break;
        }
    } while (reduced_tail);
    return v;
}

}  // namespace abst
