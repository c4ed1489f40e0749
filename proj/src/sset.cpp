#include "bsset/sset.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "bsset/combinatorics.hpp"
#include "bsset/errors.hpp"

namespace bsset {

// ---------------------------------------------------------------------------
// Degeneracy words

bool DegeneracyWord::contains(int j) const noexcept {
  return std::find(indices_.begin(), indices_.end(), j) != indices_.end();
}

DegeneracyWord DegeneracyWord::from_composite(std::span<const int> word) {
  std::vector<int> w(word.begin(), word.end());
  for (int j : w)
    if (j < 0) throw InputError("degeneracy index must be non-negative, got " + std::to_string(j));
  // s_a s_b = s_{b+1} s_a whenever a <= b; bubble until strictly decreasing.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = 0; k + 1 < w.size(); ++k) {
      if (w[k] <= w[k + 1]) {
        const int a = w[k];
        const int b = w[k + 1];
        w[k] = b + 1;
        w[k + 1] = a;
        changed = true;
      }
    }
  }
  DegeneracyWord out;
  out.indices_ = std::move(w);
  return out;
}

DegeneracyWord DegeneracyWord::from_normal(std::vector<int> indices) {
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] < 0) throw InputError("degeneracy index must be non-negative");
    if (k > 0 && indices[k - 1] <= indices[k]) throw InputError("degeneracy word is not strictly decreasing");
  }
  DegeneracyWord out;
  out.indices_ = std::move(indices);
  return out;
}

DegeneracyWord normalize_word(std::span<const int> word) { return DegeneracyWord::from_composite(word); }

std::size_t SimplexRefHash::operator()(const SimplexRef& r) const noexcept {
  std::size_t h = std::hash<int>{}(r.generator.degree) * 1000003u ^ std::hash<int>{}(r.generator.index);
  for (int j : r.word.indices()) h = h * 31u + static_cast<std::size_t>(j) + 1u;
  return h;
}

// ---------------------------------------------------------------------------
// Monotone maps

MonotoneMap::MonotoneMap(int target_dim, std::vector<int> values) : target_dim_(target_dim), values_(std::move(values)) {
  if (values_.empty()) throw InputError("monotone map needs a non-empty source");
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (values_[k] < 0 || values_[k] > target_dim_) throw InputError("monotone map value out of range");
    if (k > 0 && values_[k] < values_[k - 1]) throw InputError("monotone map is not weakly increasing");
  }
}

MonotoneMap MonotoneMap::coface(int n, int i) {
  std::vector<int> v;
  for (int k = 0; k < n; ++k) v.push_back(k < i ? k : k + 1);
  return MonotoneMap(n, std::move(v));
}

MonotoneMap MonotoneMap::codegeneracy(int n, int j) {
  std::vector<int> v;
  for (int k = 0; k <= n + 1; ++k) v.push_back(k <= j ? k : k - 1);
  return MonotoneMap(n, std::move(v));
}

MonotoneMap MonotoneMap::identity(int n) {
  std::vector<int> v(static_cast<std::size_t>(n) + 1);
  std::iota(v.begin(), v.end(), 0);
  return MonotoneMap(n, std::move(v));
}

MonotoneMap MonotoneMap::after(const MonotoneMap& first) const {
  if (first.target_dim() != source_dim()) throw InputError("monotone maps are not composable");
  std::vector<int> v;
  for (int x : first.values()) v.push_back((*this)(x));
  return MonotoneMap(target_dim_, std::move(v));
}

// ---------------------------------------------------------------------------
// FinSimplicialSet

std::size_t FinSimplicialSet::generator_count(int n) const noexcept {
  if (n < 0 || n >= static_cast<int>(generators_.size())) return 0;
  return generators_[static_cast<std::size_t>(n)].size();
}

std::vector<std::size_t> FinSimplicialSet::generator_counts() const {
  std::vector<std::size_t> out;
  for (int n = 0; n <= top_degree_; ++n) out.push_back(generator_count(n));
  return out;
}

std::size_t FinSimplicialSet::total_generators() const noexcept {
  std::size_t t = 0;
  for (const auto& g : generators_) t += g.size();
  return t;
}

bool FinSimplicialSet::valid(GeneratorId g) const noexcept {
  return g.degree >= 0 && g.degree < static_cast<int>(generators_.size()) && g.index >= 0 &&
         g.index < static_cast<int>(generators_[static_cast<std::size_t>(g.degree)].size());
}

const std::string& FinSimplicialSet::name(GeneratorId g) const {
  if (!valid(g)) throw InputError("unknown generator");
  return generators_[static_cast<std::size_t>(g.degree)][static_cast<std::size_t>(g.index)].name;
}

std::optional<GeneratorId> FinSimplicialSet::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

const SimplexRef& FinSimplicialSet::generator_face(GeneratorId g, int i) const {
  if (!valid(g)) throw InputError("unknown generator");
  const auto& gen = generators_[static_cast<std::size_t>(g.degree)][static_cast<std::size_t>(g.index)];
  if (i < 0 || i >= static_cast<int>(gen.faces.size()))
    throw InputError("face index " + std::to_string(i) + " out of range for generator '" + gen.name + "'");
  return gen.faces[static_cast<std::size_t>(i)];
}

FinSimplicialSet::Builder::Builder(int top_degree) {
  if (top_degree < 0) throw InputError("top degree must be non-negative");
  set_.top_degree_ = top_degree;
  set_.generators_.resize(static_cast<std::size_t>(top_degree) + 1);
  assigned_.resize(static_cast<std::size_t>(top_degree) + 1);
}

GeneratorId FinSimplicialSet::Builder::add_generator(int degree, std::string name) {
  if (degree < 0 || degree > set_.top_degree_)
    throw InputError("generator '" + name + "' has degree " + std::to_string(degree) + " outside [0, " +
                     std::to_string(set_.top_degree_) + "]");
  if (name.empty()) throw InputError("generator name must be non-empty");
  auto& level = set_.generators_[static_cast<std::size_t>(degree)];
  GeneratorId id{degree, static_cast<int>(level.size())};
  if (!set_.by_name_.emplace(name, id).second) throw InputError("duplicate generator name '" + name + "'");
  Generator g;
  g.name = std::move(name);
  if (degree > 0) g.faces.resize(static_cast<std::size_t>(degree) + 1);
  level.push_back(std::move(g));
  assigned_[static_cast<std::size_t>(degree)].emplace_back(static_cast<std::size_t>(degree > 0 ? degree + 1 : 0), false);
  return id;
}

void FinSimplicialSet::Builder::set_face(GeneratorId g, int i, SimplexRef face_ref) {
  if (!set_.valid(g)) throw InputError("set_face: unknown generator");
  auto& gen = set_.generators_[static_cast<std::size_t>(g.degree)][static_cast<std::size_t>(g.index)];
  if (i < 0 || i > g.degree || g.degree == 0)
    throw InputError("face index " + std::to_string(i) + " out of range for '" + gen.name + "'");
  gen.faces[static_cast<std::size_t>(i)] = std::move(face_ref);
  assigned_[static_cast<std::size_t>(g.degree)][static_cast<std::size_t>(g.index)][static_cast<std::size_t>(i)] = true;
}

FinSimplicialSet FinSimplicialSet::Builder::build() && {
  for (int n = 1; n <= set_.top_degree_; ++n) {
    const auto& level = set_.generators_[static_cast<std::size_t>(n)];
    for (std::size_t k = 0; k < level.size(); ++k) {
      for (int i = 0; i <= n; ++i) {
        const std::string where = "d_" + std::to_string(i) + " of '" + level[k].name + "'";
        if (!assigned_[static_cast<std::size_t>(n)][k][static_cast<std::size_t>(i)])
          throw InputError("missing face " + where);
        const SimplexRef& f = level[k].faces[static_cast<std::size_t>(i)];
        if (!set_.valid(f.generator)) throw InputError("unresolved reference in " + where);
        if (f.degree() != n - 1)
          throw InputError("face " + where + " has degree " + std::to_string(f.degree()) + ", expected " +
                           std::to_string(n - 1));
      }
    }
  }
  return std::move(set_);
}

// ---------------------------------------------------------------------------
// Simplicial operators

SimplexRef face(const FinSimplicialSet& s, const SimplexRef& x, int i) {
  const int n = x.degree();
  if (n < 1) throw InputError("face of a vertex is undefined");
  if (i < 0 || i > n) throw InputError("face index " + std::to_string(i) + " out of range [0, " + std::to_string(n) + "]");

  const auto& word = x.word.indices();
  std::vector<int> prefix;
  int cur = i;
  for (std::size_t k = 0; k < word.size(); ++k) {
    const int j = word[k];
    if (cur < j) {
      prefix.push_back(j - 1);
    } else if (cur == j || cur == j + 1) {
      // d_j s_j = d_{j+1} s_j = id
      prefix.insert(prefix.end(), word.begin() + static_cast<std::ptrdiff_t>(k) + 1, word.end());
      return SimplexRef{x.generator, DegeneracyWord::from_composite(prefix)};
    } else {
      prefix.push_back(j);
      --cur;
    }
  }
  const SimplexRef& base = s.generator_face(x.generator, cur);
  prefix.insert(prefix.end(), base.word.indices().begin(), base.word.indices().end());
  return SimplexRef{base.generator, DegeneracyWord::from_composite(prefix)};
}

SimplexRef degeneracy(const SimplexRef& x, int j) {
  if (j < 0 || j > x.degree()) throw InputError("degeneracy index out of range");
  std::vector<int> w{j};
  w.insert(w.end(), x.word.indices().begin(), x.word.indices().end());
  return SimplexRef{x.generator, DegeneracyWord::from_composite(w)};
}

SimplexRef restrict_to_vertices(const FinSimplicialSet& s, const SimplexRef& x, std::span<const int> vertices) {
  const int n = x.degree();
  if (vertices.empty()) throw InputError("restriction to an empty vertex set");
  std::vector<bool> keep(static_cast<std::size_t>(n) + 1, false);
  int prev = -1;
  for (int v : vertices) {
    if (v <= prev || v > n) throw InputError("restriction vertices must be strictly increasing within [0, n]");
    keep[static_cast<std::size_t>(v)] = true;
    prev = v;
  }
  SimplexRef y = x;
  for (int v = n; v >= 0; --v)
    if (!keep[static_cast<std::size_t>(v)]) y = face(s, y, v);
  return y;
}

SimplexRef pull_back(const FinSimplicialSet& s, const SimplexRef& x, const MonotoneMap& f) {
  if (f.target_dim() != x.degree()) throw InputError("pull_back: map target does not match simplex degree");
  std::vector<int> image(f.values());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  SimplexRef y = restrict_to_vertices(s, x, image);
  std::vector<int> collapse;
  for (int k = f.source_dim() - 1; k >= 0; --k)
    if (f(k) == f(k + 1)) collapse.push_back(k);
  collapse.insert(collapse.end(), y.word.indices().begin(), y.word.indices().end());
  return SimplexRef{y.generator, DegeneracyWord::from_composite(collapse)};
}

FinSimplicialSet skeleton(const FinSimplicialSet& s, int k) {
  if (k < 0) throw InputError("skeleton degree must be non-negative");
  const int top = std::min(k, s.top_degree());
  FinSimplicialSet::Builder b(top);
  for (int n = 0; n <= top; ++n)
    for (std::size_t g = 0; g < s.generator_count(n); ++g) b.add_generator(n, s.name({n, static_cast<int>(g)}));
  for (int n = 1; n <= top; ++n)
    for (std::size_t g = 0; g < s.generator_count(n); ++g) {
      GeneratorId id{n, static_cast<int>(g)};
      for (int i = 0; i <= n; ++i) b.set_face(id, i, s.generator_face(id, i));
    }
  return std::move(b).build();
}

std::uint64_t simplex_count(const FinSimplicialSet& s, int n) {
  std::uint64_t total = 0;
  for (int p = 0; p <= std::min(n, s.top_degree()); ++p) total += s.generator_count(p) * binomial(n, n - p);
  return total;
}

std::vector<SimplexRef> all_simplices(const FinSimplicialSet& s, int n) {
  std::vector<SimplexRef> out;
  for (int p = 0; p <= std::min(n, s.top_degree()); ++p) {
    const auto words = subsets_of_size(n, n - p);  // subsets of {0..n-1}
    for (std::size_t g = 0; g < s.generator_count(p); ++g) {
      for (std::uint32_t mask : words) {
        std::vector<int> idx;
        for (int j = n - 1; j >= 0; --j)
          if (mask & (1u << j)) idx.push_back(j);
        out.push_back(SimplexRef{{p, static_cast<int>(g)}, DegeneracyWord::from_normal(std::move(idx))});
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Standard models

namespace {

std::string vertex_name(std::uint32_t mask) {
  std::string out = "v";
  bool first = true;
  for (int v = 0; v < 32; ++v)
    if (mask & (1u << v)) {
      if (!first) out += '.';
      out += std::to_string(v);
      first = false;
    }
  return out;
}

// Faces of subsets of [n]: the simplicial complex generated by `facets`.
FinSimplicialSet from_subsets(int top, const std::vector<std::vector<std::uint32_t>>& by_degree) {
  FinSimplicialSet::Builder b(top);
  std::unordered_map<std::uint32_t, GeneratorId> ids;
  for (int d = 0; d <= top; ++d)
    for (std::uint32_t m : by_degree[static_cast<std::size_t>(d)]) ids[m] = b.add_generator(d, vertex_name(m));
  for (int d = 1; d <= top; ++d)
    for (std::uint32_t m : by_degree[static_cast<std::size_t>(d)]) {
      int i = 0;
      for (int v = 0; v < 32; ++v)
        if (m & (1u << v)) {
          b.set_face(ids.at(m), i++, SimplexRef{ids.at(m & ~(1u << v)), {}});
        }
    }
  return std::move(b).build();
}

}  // namespace

FinSimplicialSet standard_simplex(int n) {
  if (n < 0 || n > 20) throw InputError("standard simplex dimension out of supported range");
  std::vector<std::vector<std::uint32_t>> by_degree(static_cast<std::size_t>(n) + 1);
  for (int d = 0; d <= n; ++d) by_degree[static_cast<std::size_t>(d)] = subsets_of_size(n + 1, d + 1);
  return from_subsets(n, by_degree);
}

FinSimplicialSet simplex_boundary(int n) {
  if (n < 1 || n > 20) throw InputError("simplex boundary dimension out of supported range");
  std::vector<std::vector<std::uint32_t>> by_degree(static_cast<std::size_t>(n));
  for (int d = 0; d < n; ++d) by_degree[static_cast<std::size_t>(d)] = subsets_of_size(n + 1, d + 1);
  return from_subsets(n - 1, by_degree);
}

FinSimplicialSet point() {
  FinSimplicialSet::Builder b(0);
  b.add_generator(0, "pt");
  return std::move(b).build();
}

// ---------------------------------------------------------------------------
// Validation

std::vector<IdentityViolation> check_simplicial_identities(const FinSimplicialSet& s) {
  std::vector<IdentityViolation> out;
  for (int n = 2; n <= s.top_degree(); ++n) {
    for (std::size_t g = 0; g < s.generator_count(n); ++g) {
      GeneratorId id{n, static_cast<int>(g)};
      SimplexRef x{id, {}};
      std::vector<SimplexRef> faces;
      for (int i = 0; i <= n; ++i) faces.push_back(face(s, x, i));
      for (int j = 1; j <= n; ++j)
        for (int i = 0; i < j; ++i) {
          SimplexRef lhs = face(s, faces[static_cast<std::size_t>(j)], i);
          SimplexRef rhs = face(s, faces[static_cast<std::size_t>(i)], j - 1);
          if (lhs != rhs) out.push_back({id, i, j, std::move(lhs), std::move(rhs)});
        }
    }
  }
  return out;
}

std::string format_ref(const FinSimplicialSet& s, const SimplexRef& x) {
  std::ostringstream os;
  if (!x.word.empty()) {
    os << '[';
    for (std::size_t k = 0; k < x.word.length(); ++k) os << (k ? " " : "") << 's' << x.word.indices()[k];
    os << "] ";
  }
  os << s.name(x.generator);
  return os.str();
}

}  // namespace bsset
