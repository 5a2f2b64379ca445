// abst: additive structure of finitely presented abelian p-groups and of
// indecomposable modules over ZC_p and the p-pullback of Z (+) Z.
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "abst/dedekind.hpp"
#include "abst/errors.hpp"
#include "abst/io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitParse = 2;
constexpr int kExitSemantic = 3;

void emit(const abst::ordered_json& j, const std::string& output_path) {
    std::string text = j.dump(2) + "\n";
    if (output_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(output_path, std::ios::binary);
        if (!out) throw abst::diagnostic_error("cannot write: " + output_path);
        out << text;
    }
}

abst::TermOrder parse_perm(const std::string& text, std::size_t q) {
    // comma list of 1-based generator indices from lowest precedence up
    std::vector<std::size_t> rank(q, 0);
    std::stringstream ss(text);
    std::string item;
    std::size_t pos = 0;
    while (std::getline(ss, item, ',')) {
        std::size_t idx = 0;
        try {
            idx = std::stoul(item);
        } catch (...) {
            throw abst::parse_error("--perm: bad index '" + item + "'");
        }
        if (idx < 1 || idx > q) throw abst::parse_error("--perm: index out of range");
        if (rank[idx - 1] != 0) throw abst::parse_error("--perm: repeated index");
        rank[idx - 1] = ++pos;
    }
    if (pos != q) throw abst::parse_error("--perm: expected all generator indices");
    return abst::TermOrder(rank);
}

struct Options {
    std::string input, output, perm;
    unsigned cap = 64;
    bool with_gb = false;
    bool inject_fault = false;
};

abst::PipelineLimits limits_of(const Options& opt) {
    abst::PipelineLimits lim;
    lim.order_exponent_cap = opt.cap;
    return lim;
}

int run_pbasis(const Options& opt, bool gb_only) {
    abst::Presentation pres = abst::load_presentation(opt.input);
    std::string digest = abst::fnv1a_digest(abst::read_file(opt.input));
    abst::PipelineLimits lim = limits_of(opt);

    abst::StructureResult s = abst::compute_structure(pres, lim);
    if (!opt.perm.empty()) {
        if (!s.reduced) throw abst::diagnostic_error("--perm: the group is trivial");
        abst::TermOrder forced = parse_perm(opt.perm, s.reduced->generator_count());
        abst::GroebnerBasis gb = abst::buchberger_reduced(
            abst::relations_to_binomials(*s.reduced), forced, lim.buchberger);
        if (auto v = abst::check_pbasis_shape(gb, pres.prime())) {
            if (gb_only) {
                abst::ordered_json j;
                j["command"] = "gb";
                j["input"] = opt.input;
                j["digest"] = digest;
                j["shape_ok"] = false;
                j["groebner_basis"] = abst::groebner_to_json(gb, s.reduced->generators());
                emit(j, opt.output);
                return kExitOk;
            }
            throw abst::diagnostic_error("--perm: basis under the forced order lacks the "
                                         "extractable shape");
        }
        s.order = forced;
        s.gb = std::move(gb);
        s.basis = abst::extract_pbasis(s.gb, s.orders, pres.prime());
        s.type = abst::ulm_type(s.basis);
        s.swaps_used = 0;
        s.exhaustive_fallback = false;
    }

    if (gb_only) {
        abst::ordered_json j;
        j["command"] = "gb";
        j["input"] = opt.input;
        j["digest"] = digest;
        j["shape_ok"] = true;
        std::vector<std::string> names =
            s.reduced ? s.reduced->generators() : std::vector<std::string>{};
        abst::ordered_json order = abst::ordered_json::array();
        for (std::size_t v : s.order.ascending()) order.push_back(names[v]);
        j["variable_order"] = std::move(order);
        j["groebner_basis"] = abst::groebner_to_json(s.gb, names);
        emit(j, opt.output);
        return kExitOk;
    }

    abst::ordered_json j = abst::structure_report(opt.input, digest, pres, s, opt.with_gb);
    emit(j, opt.output);
    return kExitOk;
}

int run_snf(const Options& opt) {
    abst::Presentation pres = abst::load_presentation(opt.input);
    std::string digest = abst::fnv1a_digest(abst::read_file(opt.input));
    emit(abst::snf_report(opt.input, digest, pres), opt.output);
    return kExitOk;
}

int run_verify(const Options& opt) {
    abst::Presentation pres = abst::load_presentation(opt.input);
    abst::PipelineLimits lim = limits_of(opt);
    abst::StructureResult s = abst::compute_structure(pres, lim);
    abst::GroupType oracle =
        abst::type_from_relations(pres.relations(), pres.generator_count())
            .restricted_to(pres.prime());
    abst::GroupType computed = s.type;
    if (opt.inject_fault) ++computed.ulm[1];  // negative control for the harness

    abst::ordered_json j;
    j["command"] = "verify";
    j["input"] = opt.input;
    j["pbasis_type"] = abst::type_to_json(computed);
    j["snf_type"] = abst::type_to_json(oracle);

    bool agree = computed == oracle;
    // conservation: product of basis orders = group order = divisor product
    abst::Int basis_product(1);
    for (const auto& e : s.basis) basis_product *= e.order;
    abst::Int divisor_product(1);
    if (!pres.relations().empty())
        for (const abst::Int& d :
             abst::smith_normal_form(abst::IntMatrix::from_rows(pres.relations()))
                 .nontrivial_divisors())
            divisor_product *= d;
    j["basis_order_product"] = abst::to_string(basis_product);
    j["divisor_product"] = abst::to_string(divisor_product);
    if (auto count = abst::standard_monomial_count(s.gb)) {
        j["standard_monomials"] = abst::to_string(*count);
        agree = agree && *count == basis_product;
    }
    agree = agree && basis_product == divisor_product;
    j["agreement"] = agree;
    emit(j, opt.output);
    return agree ? kExitOk : kExitMismatch;
}

int run_build(const Options& opt) {
    abst::ModuleSpec spec = abst::load_module_spec(opt.input);
    if (!abst::closing_polynomial_is_irreducible_power(spec))
        std::cerr << "warning: f(z) is not a power of an irreducible polynomial over F_p; "
                     "the module may decompose\n";
    abst::PipelineLimits lim = limits_of(opt);
    abst::ModuleAnalysis analysis = abst::analyze_module(spec, lim);

    if (analysis.built) {
        emit(abst::presentation_to_json(analysis.built->pres), opt.output);
    } else if (!opt.output.empty()) {
        emit(abst::ordered_json::object(), opt.output);
    }
    abst::ordered_json side;
    side["command"] = "build";
    side["input"] = opt.input;
    side["type"] = abst::type_to_json(analysis.type);
    if (analysis.resolution) {
        const auto& r = *analysis.resolution;
        side["sentinel_length"] = r.sentinel;
        side["infinite_rank"] = r.infinite_rank;
        side["torsion_type"] = abst::type_to_json(r.bypassed ? abst::GroupType{} : r.torsion);
        side["bypassed"] = r.bypassed;
        if (r.bypassed) side["basis"] = r.bypass_basis;
    }
    if (opt.output.empty()) {
        emit(side, "");
    } else {
        emit(side, opt.output + ".sidecar.json");
    }
    return kExitOk;
}

int run_type_formula(const Options& opt) {
    abst::ModuleSpec spec = abst::load_module_spec(opt.input);
    if (!abst::closing_polynomial_is_irreducible_power(spec))
        std::cerr << "warning: f(z) is not a power of an irreducible polynomial over F_p; "
                     "the module may decompose\n";
    abst::FormulaResult r = abst::type_via_formula(spec, limits_of(opt));
    abst::ordered_json j;
    j["command"] = "type-formula";
    j["input"] = opt.input;
    j["formula_type"] = abst::type_to_json(r.formula);
    j["direct_type"] = abst::type_to_json(r.direct);
    abst::ordered_json blocks = abst::ordered_json::array();
    for (const auto& t : r.reduced_block_types) blocks.push_back(abst::type_to_json(t));
    j["reduced_block_types"] = std::move(blocks);
    abst::ordered_json conns = abst::ordered_json::array();
    for (const auto& c : r.heights.connectors) {
        conns.push_back({{"connector", c.label}, {"height", c.height}, {"tallied", c.tallied}});
    }
    j["connector_heights"] = std::move(conns);
    bool equal = r.formula == r.direct;
    j["agreement"] = equal;
    emit(j, opt.output);
    return equal ? kExitOk : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"additive structure of finitely presented abelian p-groups"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* sub, bool with_output = true) {
        sub->add_option("-i,--input", opt.input, "input file")->required();
        if (with_output) sub->add_option("-o,--output", opt.output, "write the report here");
        sub->add_option("--cap", opt.cap, "largest order exponent probed");
    };

    CLI::App* pbasis = app.add_subcommand("pbasis", "p-basis, Ulm invariants and type");
    add_common(pbasis);
    pbasis->add_flag("--gb", opt.with_gb, "include the reduced Groebner basis");
    pbasis->add_option("--perm", opt.perm,
                       "force a variable order (1-based indices, lowest precedence first)");

    CLI::App* gb = app.add_subcommand("gb", "reduced Groebner basis only");
    add_common(gb);
    gb->add_option("--perm", opt.perm, "force a variable order");

    CLI::App* snf = app.add_subcommand("snf", "Smith normal form oracle");
    add_common(snf);

    CLI::App* verify = app.add_subcommand("verify", "cross-check pipeline against the oracle");
    add_common(verify);
    verify->add_flag("--inject-fault", opt.inject_fault,
                     "perturb the computed type (negative control)");

    CLI::App* build = app.add_subcommand("build", "presentation from a module spec");
    add_common(build);

    CLI::App* formula = app.add_subcommand("type-formula", "type formula versus direct pipeline");
    add_common(formula);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (pbasis->parsed()) return run_pbasis(opt, false);
        if (gb->parsed()) return run_pbasis(opt, true);
        if (snf->parsed()) return run_snf(opt);
        if (verify->parsed()) return run_verify(opt);
        if (build->parsed()) return run_build(opt);
        if (formula->parsed()) return run_type_formula(opt);
    } catch (const abst::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const abst::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSemantic;
    }
    return kExitOk;
}
