#ifndef ABST_IO_HPP
#define ABST_IO_HPP

#include <string>

#include <json.hpp>

#include "abst/dedekind.hpp"
#include "abst/pbasis.hpp"
#include "abst/snf.hpp"

namespace abst {

using ordered_json = nlohmann::ordered_json;

/// FNV-1a 64-bit digest of a byte string, as 16 hex characters.
std::string fnv1a_digest(const std::string& bytes);

std::string read_file(const std::string& path);

/// Presentation file: {"prime": p, "generators": [names], "relations":
/// [[ints]]}.  Integer entries may be JSON numbers or decimal strings.
Presentation parse_presentation(const ordered_json& j);
Presentation load_presentation(const std::string& path);
ordered_json presentation_to_json(const Presentation& pres);

/// Module spec file: {"ring": {"kind": "zcp"|"pullback", "p": p},
/// "cycle": "deleted"|"block", "blocks": [{"d1": n|"inf", "d2": n|"inf"}],
/// "f": [lambda_0, ...]} (block cycles only).
ModuleSpec parse_module_spec(const ordered_json& j);
ModuleSpec load_module_spec(const std::string& path);
ordered_json module_spec_to_json(const ModuleSpec& spec);

/// Report fragments.
ordered_json type_to_json(const GroupType& t);
ordered_json groebner_to_json(const GroebnerBasis& g, const std::vector<std::string>& names);

/// Full pbasis report: input digest, variable order, orders, basis, type,
/// SNF divisors and the agreement flag.
ordered_json structure_report(const std::string& input_label, const std::string& digest,
                              const Presentation& pres, const StructureResult& s,
                              bool include_gb);

ordered_json snf_report(const std::string& input_label, const std::string& digest,
                        const Presentation& pres);

/// Human-readable rendering of a p-basis element, e.g. "p2*a - 3*a".
std::string pbasis_element_text(const PBasisElement& e, const StructureResult& s);

/// Rendering of a binomial as "x1^27 - 1" (1-based variable indices).
std::string binomial_text(const LatticeBinomial& b, const TermOrder& order);

}  // namespace abst

#endif
