#include "bsset/cochain.hpp"

#include "bsset/combinatorics.hpp"
#include "bsset/errors.hpp"

namespace bsset {

using Label = FiniteAbelianGroup::Label;

std::size_t CochainHash::operator()(const Cochain& c) const noexcept {
  std::size_t h = static_cast<std::size_t>(c.dim) * 131u + static_cast<std::size_t>(c.degree);
  for (Label v : c.labels) h = h * 1000003u ^ static_cast<std::size_t>(v);
  return h;
}

std::size_t label_count(int dim, int degree) { return binomial(dim + 1, degree + 1); }

Cochain zero_cochain(const FiniteAbelianGroup& g, int dim, int degree) {
  if (dim < 0 || degree < 0) throw InputError("cochain dimension and degree must be non-negative");
  if (dim > 30) throw InputError("cochain dimension too large");
  return Cochain{dim, degree, std::vector<Label>(label_count(dim, degree) * static_cast<std::size_t>(g.rank()), 0)};
}

std::span<const Label> label_of(const FiniteAbelianGroup& g, const Cochain& c, std::uint32_t mask) {
  const auto r = static_cast<std::size_t>(g.rank());
  return std::span<const Label>(c.labels).subspan(colex_rank(mask) * r, r);
}

std::span<Label> label_of(const FiniteAbelianGroup& g, Cochain& c, std::uint32_t mask) {
  const auto r = static_cast<std::size_t>(g.rank());
  return std::span<Label>(c.labels).subspan(colex_rank(mask) * r, r);
}

Cochain em_operator(const FiniteAbelianGroup& g, const Cochain& c, const MonotoneMap& f) {
  if (f.target_dim() != c.dim)
    throw InputError("em_operator: map targets Delta^" + std::to_string(f.target_dim()) + " but cochain lives on Delta^" +
                     std::to_string(c.dim));
  Cochain out = zero_cochain(g, f.source_dim(), c.degree);
  const auto r = static_cast<std::size_t>(g.rank());
  std::size_t pos = 0;
  for (std::uint32_t s : subsets_of_size(out.dim + 1, out.degree + 1)) {
    std::uint32_t image = 0;
    for (int v : elements(s)) image |= 1u << f(v);
    if (popcount(image) == c.degree + 1) {
      auto src = label_of(g, c, image);
      std::copy(src.begin(), src.end(), out.labels.begin() + static_cast<std::ptrdiff_t>(pos));
    }
    pos += r;
  }
  return out;
}

Cochain cochain_face(const FiniteAbelianGroup& g, const Cochain& c, int i) {
  if (c.dim < 1 || i < 0 || i > c.dim) throw InputError("cochain face index out of range");
  return em_operator(g, c, MonotoneMap::coface(c.dim, i));
}

Cochain cochain_degeneracy(const FiniteAbelianGroup& g, const Cochain& c, int j) {
  if (j < 0 || j > c.dim) throw InputError("cochain degeneracy index out of range");
  return em_operator(g, c, MonotoneMap::codegeneracy(c.dim, j));
}

bool is_degenerate_cochain(const FiniteAbelianGroup& g, const Cochain& c) {
  for (int j = 0; j < c.dim; ++j)
    if (cochain_degeneracy(g, cochain_face(g, c, j), j) == c) return true;
  return false;
}

Cochain coboundary(const FiniteAbelianGroup& g, const Cochain& c) {
  Cochain out = zero_cochain(g, c.dim, c.degree + 1);
  for (std::uint32_t t : subsets_of_size(c.dim + 1, c.degree + 2)) {
    auto acc = label_of(g, out, t);
    int sign = 1;
    for (int v : elements(t)) {
      auto x = label_of(g, c, t & ~(1u << v));
      if (sign > 0)
        g.add_into(acc, x);
      else
        g.sub_into(acc, x);
      sign = -sign;
    }
  }
  return out;
}

bool is_cocycle(const FiniteAbelianGroup& g, const Cochain& c) {
  if (c.degree + 1 > c.dim) return true;
  return g.is_zero(coboundary(g, c).labels);
}

Cochain extend_free_labels(const FiniteAbelianGroup& g, std::span<const Label> free, int n, int k) {
  if (k < 0 || n < 0) throw InputError("extend_free_labels: negative dimension");
  const auto r = static_cast<std::size_t>(g.rank());
  if (free.size() != binomial(n, k) * r) throw InputError("extend_free_labels: wrong number of free labels");
  auto free_label = [&](std::uint32_t mask_with_zero) {
    return free.subspan(colex_rank(mask_with_zero >> 1) * r, r);
  };
  Cochain z = zero_cochain(g, n, k);
  for (std::uint32_t s : subsets_of_size(n + 1, k + 1)) {
    auto out = label_of(g, z, s);
    if (s & 1u) {
      auto x = free_label(s);
      std::copy(x.begin(), x.end(), out.begin());
      continue;
    }
    int sign = 1;
    for (int a : elements(s)) {
      auto x = free_label((s & ~(1u << a)) | 1u);
      if (sign > 0)
        g.add_into(out, x);
      else
        g.sub_into(out, x);
      sign = -sign;
    }
  }
  return z;
}

std::vector<Label> free_labels(const FiniteAbelianGroup& g, const Cochain& c) {
  std::vector<Label> out;
  for (std::uint32_t s : subsets_of_size(c.dim, c.degree)) {
    auto x = label_of(g, c, (s << 1) | 1u);
    out.insert(out.end(), x.begin(), x.end());
  }
  return out;
}

Cochain cone_section(const FiniteAbelianGroup& g, const Cochain& z) {
  if (z.degree < 1) throw InputError("cone_section needs a cochain of degree at least 1");
  Cochain h = zero_cochain(g, z.dim, z.degree - 1);
  for (std::uint32_t s : subsets_of_size(z.dim + 1, z.degree)) {
    if (s & 1u) continue;
    auto src = label_of(g, z, s | 1u);
    auto dst = label_of(g, h, s);
    std::copy(src.begin(), src.end(), dst.begin());
  }
  return h;
}

namespace {

// Odometer over all residue vectors of a given length.
void for_each_labeling(const FiniteAbelianGroup& g, std::size_t slots, const std::function<void(std::span<const Label>)>& fn) {
  const auto& f = g.invariant_factors();
  const std::size_t r = f.size();
  std::vector<Label> v(slots * r, 0);
  for (;;) {
    fn(v);
    std::size_t i = v.size();
    for (;;) {
      if (i == 0) return;
      --i;
      if (++v[i] < f[i % r]) break;
      v[i] = 0;
    }
  }
}

}  // namespace

void for_each_cochain(const FiniteAbelianGroup& g, int n, int k, const std::function<void(const Cochain&)>& fn) {
  Cochain c = zero_cochain(g, n, k);
  for_each_labeling(g, label_count(n, k), [&](std::span<const Label> v) {
    std::copy(v.begin(), v.end(), c.labels.begin());
    fn(c);
  });
}

void for_each_cocycle(const FiniteAbelianGroup& g, int n, int k, const std::function<void(const Cochain&)>& fn) {
  for_each_labeling(g, binomial(n, k), [&](std::span<const Label> v) { fn(extend_free_labels(g, v, n, k)); });
}

std::string format_labels(const FiniteAbelianGroup& g, const Cochain& c) {
  const auto r = static_cast<std::size_t>(g.rank());
  if (r == 0) return "0";
  std::string out;
  for (std::size_t s = 0; s * r < c.labels.size(); ++s) {
    if (s) out += '.';
    for (std::size_t i = 0; i < r; ++i) {
      if (i) out += ',';
      out += std::to_string(c.labels[s * r + i]);
    }
  }
  return out;
}

}  // namespace bsset
