#pragma once

#include <string>
#include <vector>

#include "bsset/sset.hpp"
#include "bsset/sset_io.hpp"

namespace testing {

inline std::string data_path(const std::string& rel) { return std::string(BSSET_DATA_DIR) + "/" + rel; }

inline bsset::FinSimplicialSet load(const std::string& rel, bool verify = true) {
  return bsset::parse_sset(bsset::read_text_file(data_path(rel)), verify);
}

// Vertex sequence of a simplex of the standard simplex, read off the
// generator name ("v0.2.3") and the degeneracy word.
inline std::vector<int> vertex_sequence(const bsset::FinSimplicialSet& delta, const bsset::SimplexRef& x) {
  std::vector<int> seq;
  const std::string& name = delta.name(x.generator);
  std::size_t p = 1;
  while (p < name.size()) {
    std::size_t q = name.find('.', p);
    if (q == std::string::npos) q = name.size();
    seq.push_back(std::stoi(name.substr(p, q - p)));
    p = q + 1;
  }
  const auto& w = x.word.indices();
  for (auto it = w.rbegin(); it != w.rend(); ++it) seq.insert(seq.begin() + *it, seq[static_cast<std::size_t>(*it)]);
  return seq;
}

}  // namespace testing
