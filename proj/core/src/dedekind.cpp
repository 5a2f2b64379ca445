#include "abst/dedekind.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "abst/errors.hpp"
#include "abst/snf.hpp"

namespace abst {

namespace {

// --- polynomial arithmetic in Z[x]/(x^p - 1), dense coefficient vectors ---

std::vector<Int> poly_one(std::size_t p) {
    std::vector<Int> r(p);
    r[0] = 1;
    return r;
}

std::vector<Int> poly_mul_mod(const std::vector<Int>& a, const std::vector<Int>& b,
                              std::size_t p) {
    std::vector<Int> r(p);
    for (std::size_t i = 0; i < p; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < p; ++j) {
            if (b[j] == 0) continue;
            r[(i + j) % p] += a[i] * b[j];
        }
    }
    return r;
}

// (x - 1)^k mod x^p - 1
std::vector<Int> p2_power(unsigned k, std::size_t p) {
    std::vector<Int> r = poly_one(p);
    std::vector<Int> x_minus_1(p);
    x_minus_1[0] = -1;
    x_minus_1[1 % p] = 1;
    for (unsigned i = 0; i < k; ++i) r = poly_mul_mod(r, x_minus_1, p);
    return r;
}

std::vector<Int> p1_poly(std::size_t p) {
    return std::vector<Int>(p, Int(1));  // 1 + x + ... + x^{p-1}
}

// Solve A sigma = t exactly over the integers via the Smith normal form.
std::optional<std::vector<Int>> solve_integer(const IntMatrix& a, const std::vector<Int>& t) {
    SNFResult snf = smith_normal_form(a);
    const std::size_t n = a.rows(), c = a.cols();
    std::vector<Int> ut(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) ut[i] += snf.u.at(i, j) * t[j];
    std::vector<Int> z(c);
    for (std::size_t i = 0; i < std::min(n, c); ++i) {
        const Int& d = snf.d.at(i, i);
        if (d == 0) {
            if (ut[i] != 0) return std::nullopt;
        } else {
            if (!mpz_divisible_p(ut[i].get_mpz_t(), d.get_mpz_t())) return std::nullopt;
            z[i] = ut[i] / d;
        }
    }
    for (std::size_t i = c; i < n; ++i)
        if (ut[i] != 0) return std::nullopt;
    std::vector<Int> sigma(c);
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = 0; j < c; ++j) sigma[i] += snf.v.at(i, j) * z[j];
    return sigma;
}

}  // namespace

std::vector<Int> sigma_decomposition(const Int& p) {
    if (!is_prime(p)) throw structural_error("sigma_decomposition: p is not prime");
    if (!fits_ulong(p) || p.get_ui() > 4096)
        throw diagnostic_error("sigma_decomposition: prime too large");
    const std::size_t pu = p.get_ui();

    std::vector<Int> target(pu);  // p - p1
    target[0] = p - 1;
    for (std::size_t i = 1; i < pu; ++i) target[i] = -1;

    // unknowns sigma_0..sigma_deg with p2^{p-1} sigma(p2) = p - p1
    for (std::size_t deg : {pu - 2, pu - 1}) {
        const std::size_t cols = deg + 1;
        IntMatrix a(pu, cols);
        for (std::size_t c = 0; c < cols; ++c) {
            std::vector<Int> col = p2_power(static_cast<unsigned>(pu - 1 + c), pu);
            for (std::size_t r = 0; r < pu; ++r) a.at(r, c) = col[r];
        }
        if (auto sigma = solve_integer(a, target)) {
            while (!sigma->empty() && sigma->back() == 0) sigma->pop_back();
            if (sigma->empty()) sigma->push_back(0);
            return *sigma;
        }
    }
    throw diagnostic_error("sigma_decomposition: no integral solution (unexpected)");
}

RingModel make_ring_model(RingKind kind, const Int& p) {
    if (!is_prime(p)) throw structural_error("make_ring_model: p is not prime");
    RingModel m;
    m.kind = kind;
    m.p = p;
    if (kind == RingKind::zcp) m.sigma = sigma_decomposition(p);
    return m;
}

bool verify_ring_identity(const RingModel& ring) {
    if (ring.kind == RingKind::pullback_zz) {
        // p1 = (p, 0), p2 = (0, p): p1 + p2 = (p, p) and p1 p2 = 0 componentwise
        return true;
    }
    if (!fits_ulong(ring.p)) return false;
    const std::size_t p = ring.p.get_ui();
    // p1 + p2^{p-1} sigma(p2) must expand to the constant p
    std::vector<Int> acc = p1_poly(p);
    for (std::size_t i = 0; i < ring.sigma.size(); ++i) {
        if (ring.sigma[i] == 0) continue;
        std::vector<Int> term = p2_power(static_cast<unsigned>(p - 1 + i), p);
        for (std::size_t j = 0; j < p; ++j) acc[j] += ring.sigma[i] * term[j];
    }
    if (acc[0] != ring.p) return false;
    for (std::size_t j = 1; j < p; ++j)
        if (acc[j] != 0) return false;
    // p1 p2 = x^p - 1 = 0
    std::vector<Int> prod = poly_mul_mod(p1_poly(p), p2_power(1, p), p);
    return std::all_of(prod.begin(), prod.end(), [](const Int& x) { return x == 0; });
}

unsigned ModuleSpec::period() const {
    const std::size_t m = blocks.size();
    for (unsigned k = 1; k <= m; ++k) {
        if (m % k != 0) continue;
        bool ok = true;
        for (std::size_t i = 0; i < m && ok; ++i)
            if (!(blocks[i] == blocks[(i + k) % m])) ok = false;
        if (ok) return k;
    }
    return static_cast<unsigned>(m);
}

bool ModuleSpec::has_infinite_length() const {
    return std::any_of(blocks.begin(), blocks.end(),
                       [](const BlockSpec& b) { return !b.finite(); });
}

void ModuleSpec::validate() const {
    if (blocks.empty()) throw diagnostic_error("ModuleSpec: no blocks");
    if (!is_prime(ring.p)) throw diagnostic_error("ModuleSpec: p is not prime");
    if (ring.kind == RingKind::zcp && ring.sigma.empty())
        throw diagnostic_error("ModuleSpec: group-ring model without sigma decomposition");
    const std::size_t m = blocks.size();
    auto finite_ge2 = [&](const std::optional<unsigned>& d, const char* what) {
        if (!d.has_value())
            throw diagnostic_error(std::string("ModuleSpec: ") + what + " must be finite");
        if (*d < 2)
            throw diagnostic_error(std::string("ModuleSpec: ") + what +
                                   " must be >= 2 (a socle to glue must exist)");
    };
    for (const BlockSpec& b : blocks) {
        if (b.d1.has_value() && *b.d1 < 1) throw diagnostic_error("ModuleSpec: length < 1");
        if (b.d2.has_value() && *b.d2 < 1) throw diagnostic_error("ModuleSpec: length < 1");
    }
    for (std::size_t i = 0; i + 1 < m; ++i) finite_ge2(blocks[i].d2, "glued d2");
    for (std::size_t i = 1; i < m; ++i) finite_ge2(blocks[i].d1, "glued d1");
    if (cycle == CycleKind::block_cycle) {
        finite_ge2(blocks[0].d1, "block-cycle d1");
        finite_ge2(blocks[m - 1].d2, "block-cycle d2");
        const unsigned l = repetition();
        if (lambda.size() != l)
            throw diagnostic_error("ModuleSpec: closing coefficient count != l = m / period");
    } else if (!lambda.empty()) {
        throw diagnostic_error("ModuleSpec: deleted cycles take no closing coefficients");
    }
}

namespace {

std::string chain_name(const std::string& head, int side, unsigned degree) {
    if (degree == 0) return head;
    std::string s = side == 1 ? "p1" : "p2";
    if (degree > 1) s += "^" + std::to_string(degree);
    return s + "*" + head;
}

// Generators are laid out degree-major across the blocks: all heads first,
// then every degree-1 chain element block by block, and so on.  That keeps
// the p-action relations triangular and matches the worked examples.
struct CycleLayout {
    std::vector<BlockGenerator> gens;
    std::map<std::tuple<std::size_t, int, unsigned>, std::size_t> index;

    std::size_t at(std::size_t block, int side, unsigned deg) const {
        return index.at({block, deg == 0 ? 0 : side, deg});
    }
};

CycleLayout cycle_layout(const std::vector<BlockSpec>& blocks) {
    CycleLayout lay;
    unsigned maxdeg = 0;
    for (const BlockSpec& b : blocks) maxdeg = std::max({maxdeg, *b.d1 - 1, *b.d2 - 1});
    auto add = [&](std::size_t blk, int side, unsigned deg) {
        lay.index[{blk, side, deg}] = lay.gens.size();
        lay.gens.push_back(BlockGenerator{blk, side, deg});
    };
    for (std::size_t i = 0; i < blocks.size(); ++i) add(i, 0, 0);
    for (unsigned deg = 1; deg <= maxdeg; ++deg)
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            if (deg < *blocks[i].d1) add(i, 1, deg);
            if (deg < *blocks[i].d2) add(i, 2, deg);
        }
    return lay;
}

// p * (side, degree) expanded through the ring identity and truncated by
// p1^{d1} a = 0, p2^{d2} a = 0 (and p1 p2 = 0 for the group ring).
std::map<std::size_t, Int> p_action_relation(const RingModel& ring, const CycleLayout& lay,
                                             std::size_t blk, unsigned d1, unsigned d2, int side,
                                             unsigned deg) {
    std::map<std::size_t, Int> rel;
    rel[lay.at(blk, side, deg)] += ring.p;
    auto subtract = [&](int s, unsigned k, const Int& coeff) {
        if (coeff == 0) return;
        if (s == 1 && k >= d1) return;  // truncated
        if (s == 2 && k >= d2) return;
        rel[lay.at(blk, s, k)] -= coeff;
    };
    const unsigned p = static_cast<unsigned>(ring.p.get_ui());
    if (side == 0) {
        subtract(1, 1, Int(1));
        if (ring.kind == RingKind::zcp) {
            for (std::size_t i = 0; i < ring.sigma.size(); ++i)
                subtract(2, p - 1 + static_cast<unsigned>(i), ring.sigma[i]);
        } else {
            subtract(2, 1, Int(1));
        }
    } else if (side == 1) {
        subtract(1, deg + 1, Int(1));
    } else {
        if (ring.kind == RingKind::zcp) {
            for (std::size_t i = 0; i < ring.sigma.size(); ++i)
                subtract(2, p - 1 + static_cast<unsigned>(i) + deg, ring.sigma[i]);
        } else {
            subtract(2, deg + 1, Int(1));
        }
    }
    return rel;
}

// chain-major relation emission for one block
void emit_block_relations(const RingModel& ring, const CycleLayout& lay, std::size_t blk,
                          unsigned d1, unsigned d2, std::vector<std::vector<Int>>& out) {
    auto emit = [&](int side, unsigned deg) {
        std::map<std::size_t, Int> rel = p_action_relation(ring, lay, blk, d1, d2, side, deg);
        std::vector<Int> v(lay.gens.size());
        for (const auto& [g, c] : rel) v[g] = c;
        out.push_back(std::move(v));
    };
    emit(0, 0);
    for (unsigned j = 1; j < d1; ++j) emit(1, j);
    for (unsigned j = 1; j < d2; ++j) emit(2, j);
}

Int mod_p(const Int& x, const Int& p) {
    Int r;
    mpz_mod(r.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
    return r;
}

Int inverse_mod_p(const Int& x, const Int& p) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()) == 0)
        throw diagnostic_error("inverse_mod_p: not invertible");
    return r;
}

}  // namespace

BuiltPresentation build_block_presentation(const RingModel& ring, const BlockSpec& block,
                                           const std::string& head_name) {
    if (!block.finite())
        throw diagnostic_error(
            "build_block_presentation: infinite length; resolve_infinite_lengths first");
    const unsigned d1 = *block.d1, d2 = *block.d2;
    CycleLayout lay = cycle_layout({block});

    std::vector<std::string> names;
    for (const BlockGenerator& g : lay.gens)
        names.push_back(chain_name(head_name, g.side, g.degree));
    std::vector<std::vector<Int>> rels;
    emit_block_relations(ring, lay, 0, d1, d2, rels);

    BuiltPresentation built{Presentation(ring.p, std::move(names), std::move(rels)),
                            lay.gens,
                            {},
                            std::nullopt,
                            std::nullopt};
    if (d1 >= 2) built.d_head = lay.at(0, 1, d1 - 1);
    if (d2 >= 2) built.d_tail = lay.at(0, 2, d2 - 1);
    return built;
}

BuiltPresentation build_cycle_presentation(const ModuleSpec& spec) {
    spec.validate();
    if (spec.has_infinite_length())
        throw diagnostic_error(
            "build_cycle_presentation: infinite length; resolve_infinite_lengths first");
    const std::size_t m = spec.blocks.size();
    const Int& p = spec.ring.p;

    CycleLayout lay = cycle_layout(spec.blocks);

    std::vector<std::string> names;
    for (const BlockGenerator& g : lay.gens) {
        std::string head = m == 1 ? "a" : "a" + std::to_string(g.block + 1);
        names.push_back(chain_name(head, g.side, g.degree));
    }

    std::vector<std::vector<Int>> rels;
    for (std::size_t i = 0; i < m; ++i)
        emit_block_relations(spec.ring, lay, i, *spec.blocks[i].d1, *spec.blocks[i].d2, rels);

    auto socle_gen = [&](std::size_t block, int side) {
        unsigned d = side == 1 ? *spec.blocks[block].d1 : *spec.blocks[block].d2;
        return lay.at(block, side, d - 1);
    };
    const std::size_t total = lay.gens.size();

    std::vector<std::size_t> connectors;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        // p2^{d(2,i)-1} s_{2,i} = -p1^{d(1,i+1)-1} s_{1,i+1}, solved for the
        // p1 side with the coefficient normalized mod p
        std::size_t g2 = socle_gen(i, 2), g1 = socle_gen(i + 1, 1);
        std::vector<Int> v(total);
        v[g1] = 1;
        v[g2] = -(p - 1);
        rels.push_back(std::move(v));
        connectors.push_back(g2);
    }

    if (spec.cycle == CycleKind::block_cycle) {
        const unsigned mbar = spec.period();
        const unsigned l = spec.repetition();
        std::size_t g2m = socle_gen(m - 1, 2);
        std::vector<Int> v(total);
        Int lam0 = mod_p(spec.lambda[0], p);
        if (l == 1 && lam0 != 0) {
            // -p2^{d(2,m)-1} s_{2,m} = lambda_0 p1^{d(1,1)-1} s_{1,1},
            // solved for the p1 side
            std::size_t g1 = socle_gen(0, 1);
            v[g1] = 1;
            v[g2m] = -mod_p(-inverse_mod_p(lam0, p), p);
        } else {
            // p2^{d(2,m)-1} s_{2,m} = sum_j (-lambda_j) p1^{d(1,j mbar+1)-1} s_{1,j mbar+1}
            v[g2m] = 1;
            for (unsigned j = 0; j < l; ++j) {
                Int c = mod_p(-spec.lambda[j], p);
                if (c == 0) continue;
                v[socle_gen(static_cast<std::size_t>(j) * mbar, 1)] -= c;
            }
        }
        rels.push_back(std::move(v));
    }

    BuiltPresentation built{Presentation(p, std::move(names), std::move(rels)),
                            lay.gens,
                            std::move(connectors),
                            std::nullopt,
                            std::nullopt};
    if (spec.blocks[0].d1.has_value() && *spec.blocks[0].d1 >= 2) built.d_head = socle_gen(0, 1);
    if (spec.blocks[m - 1].d2.has_value() && *spec.blocks[m - 1].d2 >= 2)
        built.d_tail = socle_gen(m - 1, 2);
    return built;
}

namespace {

// Torsion type of a sentinel run: basis orders minus the `artifacts`
// largest ones.  nullopt when the basis is still too small.
std::optional<GroupType> torsion_after_artifacts(const StructureResult& s, unsigned artifacts) {
    std::vector<unsigned> exps;
    for (const PBasisElement& e : s.basis) exps.push_back(e.order_exponent);
    std::sort(exps.rbegin(), exps.rend());
    if (artifacts > exps.size()) return std::nullopt;
    GroupType t;
    for (std::size_t i = artifacts; i < exps.size(); ++i) ++t.ulm[exps[i]];
    return t;
}

}  // namespace

InfiniteResolution resolve_infinite_lengths(const ModuleSpec& spec, const PipelineLimits& limits,
                                            unsigned max_sentinel) {
    spec.validate();
    const std::size_t m = spec.blocks.size();
    if (!spec.has_infinite_length()) {
        InfiniteResolution r;
        r.finite = spec;
        return r;
    }

    const bool d1_inf = !spec.blocks[0].d1.has_value();
    const bool d2_inf = !spec.blocks[m - 1].d2.has_value();
    const unsigned p = static_cast<unsigned>(spec.ring.p.get_ui());

    if (m == 1 && d1_inf && d2_inf) {
        InfiniteResolution r;
        r.finite = spec;
        r.bypassed = true;
        if (spec.ring.kind == RingKind::zcp) {
            r.bypass_type.torsion_free_rank = p;
            r.bypass_basis.push_back("a");
            for (unsigned k = 1; k <= p - 1; ++k) r.bypass_basis.push_back(chain_name("a", 2, k));
        } else {
            r.bypass_type.torsion_free_rank = 2;
            r.bypass_basis = {"a", "p1*a"};
        }
        r.infinite_rank = r.bypass_type.torsion_free_rank;
        return r;
    }

    unsigned artifacts = 0;
    if (d1_inf) artifacts += 1;
    if (d2_inf) artifacts += spec.ring.kind == RingKind::zcp ? p - 1 : 1;

    auto with_sentinel = [&](unsigned L) {
        ModuleSpec s = spec;
        if (d1_inf) s.blocks[0].d1 = L;
        if (d2_inf) s.blocks[m - 1].d2 = L;
        return s;
    };

    std::optional<GroupType> prev;
    for (unsigned L = 3; L <= max_sentinel; ++L) {
        ModuleSpec s = with_sentinel(L);
        StructureResult run = compute_structure(build_cycle_presentation(s).pres, limits);
        std::optional<GroupType> torsion = torsion_after_artifacts(run, artifacts);
        if (torsion && prev && *prev == *torsion) {
            InfiniteResolution r;
            r.finite = std::move(s);
            r.sentinel = L;
            r.infinite_rank = artifacts;
            r.torsion = std::move(*torsion);
            return r;
        }
        prev = std::move(torsion);
    }
    throw diagnostic_error("resolve_infinite_lengths: torsion type did not stabilize");
}

InfiniteResolution resolve_infinite_lengths(const RingModel& ring, const BlockSpec& block,
                                            const PipelineLimits& limits, unsigned max_sentinel) {
    ModuleSpec spec;
    spec.ring = ring;
    spec.cycle = CycleKind::deleted_cycle;
    spec.blocks = {block};
    return resolve_infinite_lengths(spec, limits, max_sentinel);
}

namespace {

std::optional<std::size_t> kept_index(const StructureResult& s, std::size_t original) {
    auto it = std::find(s.kept.begin(), s.kept.end(), original);
    if (it == s.kept.end()) return std::nullopt;
    return static_cast<std::size_t>(it - s.kept.begin());
}

unsigned connector_height_in(const StructureResult& s, std::size_t gen, const Int& p,
                             const char* label) {
    auto kept = kept_index(s, gen);
    if (!kept)
        throw diagnostic_error(std::string("connector_heights: connector ") + label +
                               " is zero in the module");
    std::vector<Int> coords = basis_coordinates(s, *kept);
    auto h = p_height(coords, s.basis, p);
    if (!h)
        throw diagnostic_error(std::string("connector_heights: connector ") + label +
                               " is zero in the module");
    return *h;
}

}  // namespace

ConnectorHeights connector_heights(const ModuleSpec& spec, const BuiltPresentation& built,
                                   const StructureResult& structure,
                                   const PipelineLimits& limits) {
    spec.validate();
    if (structure.generator_names.size() != built.pres.generator_count())
        throw structural_error("connector_heights: structure does not match the presentation");
    const Int& p = spec.ring.p;
    ConnectorHeights out;
    out.exponent = structure.type.exponent();

    // tallied connectors are killed one at a time; each height is taken in
    // the quotient by the previous kills
    std::vector<std::pair<std::string, std::size_t>> tallied;
    if (spec.cycle == CycleKind::block_cycle) {
        if (!built.d_head)
            throw diagnostic_error("connector_heights: block cycle without d_0");
        tallied.emplace_back("d0", *built.d_head);
    }
    for (std::size_t i = 0; i < built.connectors.size(); ++i)
        tallied.emplace_back("d" + std::to_string(i + 1), built.connectors[i]);

    std::vector<std::vector<Int>> rels = built.pres.relations();
    const StructureResult* current = &structure;
    std::optional<StructureResult> owned;
    for (std::size_t t = 0; t < tallied.size(); ++t) {
        const auto& [label, gen] = tallied[t];
        unsigned h = connector_height_in(*current, gen, p, label.c_str());
        out.connectors.push_back(ConnectorHeight{label, h, true});
        ++out.ell[h + 1];
        std::vector<Int> kill(built.pres.generator_count());
        kill[gen] = 1;
        rels.push_back(std::move(kill));
        if (t + 1 < tallied.size()) {  // a further height is needed
            Presentation quotient(p, built.pres.generators(), rels);
            owned = compute_structure(quotient, limits);
            current = &*owned;
        }
    }

    // d_0 and d_m are also reported (heights in the full module) when they
    // exist and are not already tallied; a collapsed end is skipped
    auto report_soft = [&](const char* label, std::optional<std::size_t> gen) {
        if (!gen) return;
        auto kept = kept_index(structure, *gen);
        if (!kept) return;
        auto h = p_height(basis_coordinates(structure, *kept), structure.basis, p);
        if (h) out.connectors.push_back(ConnectorHeight{label, *h, false});
    };
    if (spec.cycle == CycleKind::deleted_cycle) report_soft("d0", built.d_head);
    report_soft("dm", built.d_tail);
    return out;
}

FormulaResult type_via_formula(const ModuleSpec& spec, const PipelineLimits& limits) {
    spec.validate();
    if (spec.has_infinite_length())
        throw diagnostic_error("type_via_formula: finite lengths required");
    const std::size_t m = spec.blocks.size();

    BuiltPresentation built = build_cycle_presentation(spec);
    StructureResult direct = compute_structure(built.pres, limits);

    FormulaResult out;
    out.direct = direct.type;
    out.heights = connector_heights(spec, built, direct, limits);

    GroupType sum;
    for (std::size_t i = 0; i < m; ++i) {
        BlockSpec reduced = spec.blocks[i];
        const bool reduce_d1 = spec.cycle == CycleKind::block_cycle || i != 0;
        const bool reduce_d2 = spec.cycle == CycleKind::block_cycle || i + 1 != m;
        if (reduce_d1) reduced.d1 = *reduced.d1 - 1;
        if (reduce_d2) reduced.d2 = *reduced.d2 - 1;
        StructureResult block =
            compute_structure(build_block_presentation(spec.ring, reduced).pres, limits);
        out.reduced_block_types.push_back(block.type);
        for (const auto& [r, s] : block.type.ulm) sum.ulm[r] += s;
    }

    const unsigned n = out.heights.exponent;
    auto ell = [&](unsigned alpha) -> long {
        auto it = out.heights.ell.find(alpha);
        return it == out.heights.ell.end() ? 0 : static_cast<long>(it->second);
    };
    for (unsigned r = 1; r <= n; ++r) {
        long s = static_cast<long>(sum.ulm.count(r) ? sum.ulm[r] : 0) + ell(r) - ell(r + 1);
        if (s < 0)
            throw diagnostic_error("type_via_formula: negative multiplicity (internal)");
        if (s == 0)
            sum.ulm.erase(r);
        else
            sum.ulm[r] = static_cast<unsigned>(s);
    }
    out.formula = std::move(sum);
    return out;
}

bool closing_polynomial_is_irreducible_power(const ModuleSpec& spec) {
    if (spec.cycle != CycleKind::block_cycle) return true;
    const unsigned p = static_cast<unsigned>(spec.ring.p.get_ui());
    const unsigned l = spec.repetition();
    // f as monic coefficient vector over F_p, degree l
    std::vector<unsigned> f(l + 1);
    f[l] = 1;
    for (unsigned i = 0; i < l; ++i)
        f[i] = static_cast<unsigned>(mod_p(spec.lambda[i], spec.ring.p).get_ui());

    auto polymul = [&](const std::vector<unsigned>& a, const std::vector<unsigned>& b) {
        std::vector<unsigned> r(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
        return r;
    };
    // monic degree-d candidates, counted in base p
    auto monics = [&](unsigned d) {
        std::vector<std::vector<unsigned>> out;
        std::vector<unsigned> c(d + 1, 0);
        c[d] = 1;
        while (true) {
            out.push_back(c);
            unsigned i = 0;
            while (i < d && ++c[i] == p) c[i++] = 0;
            if (i == d) break;
        }
        return out;
    };
    // irreducible over F_p: no monic divisor of degree 1..d/2
    std::function<bool(const std::vector<unsigned>&)> irreducible =
        [&](const std::vector<unsigned>& g) {
            unsigned d = static_cast<unsigned>(g.size() - 1);
            if (d == 1) return true;
            auto polymod = [&](std::vector<unsigned> a, const std::vector<unsigned>& b) {
                while (a.size() >= b.size()) {
                    unsigned lead = a.back();
                    if (lead != 0) {
                        std::size_t off = a.size() - b.size();
                        for (std::size_t i = 0; i < b.size(); ++i)
                            a[off + i] = (a[off + i] + p * p - lead * b[i] % p) % p;
                    }
                    a.pop_back();
                }
                return a;
            };
            for (unsigned e = 1; 2 * e <= d; ++e)
                for (const auto& h : monics(e)) {
                    auto r = polymod(g, h);
                    if (std::all_of(r.begin(), r.end(), [](unsigned x) { return x == 0; }))
                        return false;
                }
            return true;
        };
    for (unsigned d = 1; d <= l; ++d) {
        if (l % d != 0) continue;
        for (const auto& g : monics(d)) {
            if (!irreducible(g)) continue;
            std::vector<unsigned> power{1};
            for (unsigned e = 0; e < l / d; ++e) power = polymul(power, g);
            if (power == f) return true;
        }
    }
    return false;
}

ModuleAnalysis analyze_module(const ModuleSpec& spec, const PipelineLimits& limits) {
    spec.validate();
    ModuleAnalysis out;
    if (!spec.has_infinite_length()) {
        out.built = build_cycle_presentation(spec);
        out.structure = compute_structure(out.built->pres, limits);
        out.type = out.structure->type;
        return out;
    }
    InfiniteResolution res = resolve_infinite_lengths(spec, limits);
    if (res.bypassed) {
        out.type = res.bypass_type;
        out.resolution = std::move(res);
        return out;
    }
    out.built = build_cycle_presentation(res.finite);
    out.structure = compute_structure(out.built->pres, limits);
    out.type = res.torsion;
    out.type.torsion_free_rank = res.infinite_rank;
    out.resolution = std::move(res);
    return out;
}

}  // namespace abst
