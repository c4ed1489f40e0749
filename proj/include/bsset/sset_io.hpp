#pragma once

// Text formats: SSET/1 simplicial sets, KINV/1 k-invariant assignments and
// JSON homology profiles. Grammars are described in docs/formats.md.

#include <string>
#include <string_view>

#include "bsset/homology.hpp"
#include "bsset/postnikov.hpp"
#include "bsset/sset.hpp"

namespace bsset {

// Throws ParseError on syntax or resolution problems. With verify set, a set
// violating the simplicial identities is rejected with InputError.
FinSimplicialSet parse_sset(std::string_view text, bool verify = true);
std::string serialize_sset(const FinSimplicialSet& s);

// Generator names are resolved against `source`.
KInvariantMap parse_kinv(std::string_view text, const FinSimplicialSet& source);
std::string serialize_kinv(const KInvariantMap& k, const FinSimplicialSet& source);

// {"dimension": d, "homology": [{"degree": k, "free_rank": r, "torsion": [..]}]}
// Degrees not listed are zero, except degree 0 which defaults to Z.
HomologyProfile parse_profile(std::string_view json_text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace bsset
