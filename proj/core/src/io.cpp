#include "abst/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "abst/errors.hpp"

namespace abst {

std::string fnv1a_digest(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace {

Int json_int(const ordered_json& j, const std::string& what) {
    if (j.is_number_integer()) return Int(static_cast<long>(j.get<long long>()));
    if (j.is_string()) {
        try {
            return Int(j.get<std::string>());
        } catch (const std::invalid_argument&) {
            throw parse_error(what + ": bad integer literal");
        }
    }
    throw parse_error(what + ": expected an integer or decimal string");
}

ordered_json json_of(const Int& x) {
    if (x.fits_slong_p()) return ordered_json(x.get_si());
    return ordered_json(to_string(x));
}

}  // namespace

Presentation parse_presentation(const ordered_json& j) {
    if (!j.is_object()) throw parse_error("presentation: expected an object");
    if (!j.contains("prime") || !j.contains("generators") || !j.contains("relations"))
        throw parse_error("presentation: needs prime, generators and relations");
    Int p = json_int(j.at("prime"), "prime");
    std::vector<std::string> gens;
    for (const auto& g : j.at("generators")) {
        if (!g.is_string()) throw parse_error("generators: expected strings");
        gens.push_back(g.get<std::string>());
    }
    std::vector<std::vector<Int>> rels;
    for (const auto& r : j.at("relations")) {
        if (!r.is_array()) throw parse_error("relations: expected arrays");
        std::vector<Int> v;
        for (const auto& x : r) v.push_back(json_int(x, "relation entry"));
        rels.push_back(std::move(v));
    }
    try {
        return Presentation(p, std::move(gens), std::move(rels));
    } catch (const structural_error& e) {
        throw parse_error(std::string("presentation: ") + e.what());
    }
}

Presentation load_presentation(const std::string& path) {
    ordered_json j;
    try {
        j = ordered_json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(std::string("json: ") + e.what());
    }
    return parse_presentation(j);
}

ordered_json presentation_to_json(const Presentation& pres) {
    ordered_json j;
    j["prime"] = json_of(pres.prime());
    j["generators"] = pres.generators();
    ordered_json rels = ordered_json::array();
    for (const auto& r : pres.relations()) {
        ordered_json row = ordered_json::array();
        for (const Int& x : r) row.push_back(json_of(x));
        rels.push_back(std::move(row));
    }
    j["relations"] = std::move(rels);
    return j;
}

ModuleSpec parse_module_spec(const ordered_json& j) {
    if (!j.is_object()) throw parse_error("module spec: expected an object");
    if (!j.contains("ring") || !j.contains("cycle") || !j.contains("blocks"))
        throw parse_error("module spec: needs ring, cycle and blocks");
    const auto& ring = j.at("ring");
    std::string kind = ring.value("kind", "");
    Int p = json_int(ring.at("p"), "ring.p");
    ModuleSpec spec;
    if (kind == "zcp")
        spec.ring = make_ring_model(RingKind::zcp, p);
    else if (kind == "pullback")
        spec.ring = make_ring_model(RingKind::pullback_zz, p);
    else
        throw parse_error("ring.kind: expected \"zcp\" or \"pullback\"");
    std::string cycle = j.at("cycle").get<std::string>();
    if (cycle == "deleted")
        spec.cycle = CycleKind::deleted_cycle;
    else if (cycle == "block")
        spec.cycle = CycleKind::block_cycle;
    else
        throw parse_error("cycle: expected \"deleted\" or \"block\"");
    auto length = [](const ordered_json& d, const char* what) -> std::optional<unsigned> {
        if (d.is_string()) {
            if (d.get<std::string>() == "inf") return std::nullopt;
            throw parse_error(std::string(what) + ": expected an integer or \"inf\"");
        }
        if (!d.is_number_integer() || d.get<long long>() < 1)
            throw parse_error(std::string(what) + ": expected a positive integer or \"inf\"");
        return static_cast<unsigned>(d.get<long long>());
    };
    for (const auto& b : j.at("blocks")) {
        if (!b.contains("d1") || !b.contains("d2"))
            throw parse_error("blocks: each block needs d1 and d2");
        spec.blocks.push_back(BlockSpec{length(b.at("d1"), "d1"), length(b.at("d2"), "d2")});
    }
    if (j.contains("f"))
        for (const auto& x : j.at("f")) spec.lambda.push_back(json_int(x, "f entry"));
    return spec;
}

ModuleSpec load_module_spec(const std::string& path) {
    ordered_json j;
    try {
        j = ordered_json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(std::string("json: ") + e.what());
    }
    return parse_module_spec(j);
}

ordered_json module_spec_to_json(const ModuleSpec& spec) {
    ordered_json j;
    j["ring"] = {{"kind", spec.ring.kind == RingKind::zcp ? "zcp" : "pullback"},
                 {"p", json_of(spec.ring.p)}};
    j["cycle"] = spec.cycle == CycleKind::deleted_cycle ? "deleted" : "block";
    ordered_json blocks = ordered_json::array();
    for (const BlockSpec& b : spec.blocks) {
        ordered_json bj;
        bj["d1"] = b.d1 ? ordered_json(*b.d1) : ordered_json("inf");
        bj["d2"] = b.d2 ? ordered_json(*b.d2) : ordered_json("inf");
        blocks.push_back(std::move(bj));
    }
    j["blocks"] = std::move(blocks);
    if (spec.cycle == CycleKind::block_cycle) {
        ordered_json f = ordered_json::array();
        for (const Int& x : spec.lambda) f.push_back(json_of(x));
        j["f"] = std::move(f);
    }
    return j;
}

ordered_json type_to_json(const GroupType& t) {
    ordered_json j = ordered_json::array();
    for (unsigned s : t.tuple()) j.push_back(s);
    return j;
}

std::string binomial_text(const LatticeBinomial& b, const TermOrder& order) {
    auto side = [&](bool positive) {
        std::string s;
        auto ascending = order.ascending();
        for (auto it = ascending.rbegin(); it != ascending.rend(); ++it) {
            std::size_t v = *it;
            const Int& e = b[v];
            if ((positive && e <= 0) || (!positive && e >= 0)) continue;
            if (!s.empty()) s += "*";
            s += "x" + std::to_string(v + 1);
            Int a = positive ? e : -e;
            if (a != 1) s += "^" + to_string(a);
        }
        return s.empty() ? std::string("1") : s;
    };
    return side(true) + " - " + side(false);
}

ordered_json groebner_to_json(const GroebnerBasis& g, const std::vector<std::string>& names) {
    ordered_json out = ordered_json::array();
    for (const LatticeBinomial& b : g.elements) {
        ordered_json e;
        ordered_json lead = ordered_json::array(), tail = ordered_json::array();
        for (std::size_t i = 0; i < b.size(); ++i) {
            lead.push_back(json_of(b[i] > 0 ? b[i] : Int(0)));
            tail.push_back(json_of(b[i] < 0 ? -b[i] : Int(0)));
        }
        e["lead"] = std::move(lead);
        e["tail"] = std::move(tail);
        e["text"] = binomial_text(b, g.order);
        out.push_back(std::move(e));
    }
    (void)names;
    return out;
}

std::string pbasis_element_text(const PBasisElement& e, const StructureResult& s) {
    const auto& names = s.reduced ? s.reduced->generators() : s.generator_names;
    std::string out = names[e.pivot];
    for (const auto& [t, a] : e.tails) {
        out += " - ";
        if (a != 1) out += to_string(a) + "*";
        out += names[t];
    }
    return out;
}

ordered_json structure_report(const std::string& input_label, const std::string& digest,
                              const Presentation& pres, const StructureResult& s,
                              bool include_gb) {
    ordered_json j;
    j["command"] = "pbasis";
    j["input"] = input_label;
    j["digest"] = digest;
    j["prime"] = json_of(pres.prime());
    j["generators"] = pres.generators();
    j["dropped_generators"] = s.dropped;

    const std::vector<std::string> names =
        s.reduced ? s.reduced->generators() : std::vector<std::string>{};
    ordered_json order = ordered_json::array();
    for (std::size_t v : s.order.ascending()) order.push_back(names[v]);
    j["variable_order"] = std::move(order);

    ordered_json orders = ordered_json::array();
    for (const PPower& o : s.orders) orders.push_back(json_of(o.value));
    j["orders"] = std::move(orders);

    if (include_gb) j["groebner_basis"] = groebner_to_json(s.gb, names);

    ordered_json basis = ordered_json::array();
    for (const PBasisElement& e : s.basis) {
        ordered_json b;
        b["pivot"] = names[e.pivot];
        b["order"] = json_of(e.order);
        b["expr"] = pbasis_element_text(e, s);
        ordered_json tails = ordered_json::object();
        for (const auto& [t, a] : e.tails) tails[names[t]] = json_of(a);
        b["coefficients"] = std::move(tails);
        basis.push_back(std::move(b));
    }
    j["pbasis"] = std::move(basis);
    j["type"] = type_to_json(s.type);
    j["permutation_swaps"] = s.swaps_used;
    j["exhaustive_tie_break"] = s.exhaustive_fallback;

    AbelianType oracle = type_from_relations(pres.relations(), pres.generator_count());
    ordered_json divisors = ordered_json::array();
    if (!pres.relations().empty()) {
        for (const Int& d :
             smith_normal_form(IntMatrix::from_rows(pres.relations())).nontrivial_divisors())
            divisors.push_back(json_of(d));
    }
    j["snf_divisors"] = std::move(divisors);
    GroupType oracle_type = oracle.restricted_to(pres.prime());
    j["snf_type"] = type_to_json(oracle_type);
    j["agreement"] = oracle_type == s.type;
    return j;
}

ordered_json snf_report(const std::string& input_label, const std::string& digest,
                        const Presentation& pres) {
    ordered_json j;
    j["command"] = "snf";
    j["input"] = input_label;
    j["digest"] = digest;
    j["prime"] = json_of(pres.prime());
    j["generators"] = pres.generators();
    ordered_json divisors = ordered_json::array();
    unsigned rank = static_cast<unsigned>(pres.generator_count());
    if (!pres.relations().empty()) {
        SNFResult snf = smith_normal_form(IntMatrix::from_rows(pres.relations()));
        for (const Int& d : snf.nontrivial_divisors()) divisors.push_back(json_of(d));
        rank = static_cast<unsigned>(pres.generator_count() - snf.rank());
    }
    j["divisors"] = std::move(divisors);
    j["torsion_free_rank"] = rank;
    AbelianType t = type_from_relations(pres.relations(), pres.generator_count());
    ordered_json primary = ordered_json::object();
    for (const auto& [p, ulm] : t.primary) {
        GroupType g;
        g.ulm = ulm;
        g.torsion_free_rank = t.free_rank;
        primary[to_string(p)] = type_to_json(g);
    }
    j["type_by_prime"] = std::move(primary);
    j["type"] = type_to_json(t.restricted_to(pres.prime()));
    return j;
}

}  // namespace abst
