#include "bsset/sset_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

#include "bsset/combinatorics.hpp"
#include "bsset/errors.hpp"

namespace bsset {

namespace {

struct Token {
  std::string text;
  int column = 1;
};

struct Line {
  int number = 0;
  std::vector<Token> tokens;
};

// Splits on whitespace; '#' starts a comment; '[' and ']' are tokens of
// their own.
std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      const char c = raw[i];
      if (c == '#') break;
      if (c == ' ' || c == '\t') {
        ++i;
        continue;
      }
      if (c == '[' || c == ']') {
        line.tokens.push_back({std::string(1, c), static_cast<int>(i) + 1});
        ++i;
        continue;
      }
      const std::size_t start = i;
      while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t' && raw[i] != '#' && raw[i] != '[' && raw[i] != ']') ++i;
      line.tokens.push_back({std::string(raw.substr(start, i - start)), static_cast<int>(start) + 1});
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

[[noreturn]] void fail(const Line& l, const Token& t, const std::string& what) { throw ParseError(l.number, t.column, what); }

[[noreturn]] void fail_end(const Line& l, const std::string& what) {
  const Token& t = l.tokens.back();
  throw ParseError(l.number, t.column + static_cast<int>(t.text.size()), what);
}

std::int64_t parse_int(const Line& l, const Token& t, std::int64_t lo, std::int64_t hi, const char* what) {
  std::int64_t v = 0;
  const char* b = t.text.data();
  const char* e = b + t.text.size();
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e) fail(l, t, std::string("expected ") + what + ", found '" + t.text + "'");
  if (v < lo || v > hi) fail(l, t, std::string(what) + " " + t.text + " out of range");
  return v;
}

void expect_count(const Line& l, std::size_t n, const char* usage) {
  if (l.tokens.size() < n) fail_end(l, std::string("incomplete line; expected '") + usage + "'");
  if (l.tokens.size() > n) fail(l, l.tokens[n], std::string("unexpected token; expected '") + usage + "'");
}

struct PendingFace {
  const Line* line;
  std::size_t gen_token;
  std::size_t target_token;
  GeneratorId generator;
  int i;
  std::vector<int> word;
};

bool valid_name(std::string_view name) {
  return !name.empty() && name.find_first_of("[]#") == std::string_view::npos;
}

}  // namespace

FinSimplicialSet parse_sset(std::string_view text, bool verify) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, 1, "empty input; expected 'SSET/1'");
  std::size_t li = 0;
  if (lines[0].tokens[0].text != "SSET/1") fail(lines[0], lines[0].tokens[0], "expected header 'SSET/1'");
  expect_count(lines[0], 1, "SSET/1");
  if (lines.size() < 2) fail_end(lines[0], "missing 'top_degree'");
  const Line& td = lines[1];
  if (td.tokens[0].text != "top_degree") fail(td, td.tokens[0], "expected 'top_degree'");
  expect_count(td, 2, "top_degree <n>");
  const int top = static_cast<int>(parse_int(td, td.tokens[1], 0, 30, "degree"));
  li = 2;

  std::vector<std::vector<std::string>> names(static_cast<std::size_t>(top) + 1);
  std::map<std::string, GeneratorId> by_name;
  std::vector<PendingFace> faces;
  std::vector<bool> gens_seen(static_cast<std::size_t>(top) + 1, false);
  bool ended = false;

  for (; li < lines.size(); ++li) {
    const Line& l = lines[li];
    const std::string& kw = l.tokens[0].text;
    if (ended) fail(l, l.tokens[0], "content after 'end'");
    if (kw == "end") {
      expect_count(l, 1, "end");
      ended = true;
    } else if (kw == "gens") {
      if (l.tokens.size() < 2) fail_end(l, "expected 'gens <n>: <names>'");
      std::string deg = l.tokens[1].text;
      std::size_t first = 2;
      if (!deg.empty() && deg.back() == ':') {
        deg.pop_back();
      } else {
        if (l.tokens.size() < 3 || l.tokens[2].text != ":") fail_end(l, "expected ':' after the degree");
        first = 3;
      }
      const Token dt{deg, l.tokens[1].column};
      const int n = static_cast<int>(parse_int(l, dt, 0, top, "degree"));
      if (gens_seen[static_cast<std::size_t>(n)]) fail(l, l.tokens[1], "generators of degree " + deg + " listed twice");
      gens_seen[static_cast<std::size_t>(n)] = true;
      for (std::size_t t = first; t < l.tokens.size(); ++t) {
        const Token& tok = l.tokens[t];
        if (!valid_name(tok.text) || tok.text == "=") fail(l, tok, "invalid generator name '" + tok.text + "'");
        if (by_name.count(tok.text)) fail(l, tok, "duplicate generator name '" + tok.text + "'");
        by_name[tok.text] = GeneratorId{n, static_cast<int>(names[static_cast<std::size_t>(n)].size())};
        names[static_cast<std::size_t>(n)].push_back(tok.text);
      }
    } else if (kw == "d") {
      // d <i> <gen> = [s_a s_b ...] <gen'>
      if (l.tokens.size() < 5) fail_end(l, "incomplete face entry; expected 'd <i> <gen> = [s_j ...] <gen>'");
      if (l.tokens[3].text != "=") fail(l, l.tokens[3], "expected '='");
      PendingFace f{&l, 2, l.tokens.size() - 1, {}, 0, {}};
      f.i = static_cast<int>(parse_int(l, l.tokens[1], 0, top, "face index"));
      std::size_t t = 4;
      const bool bracketed = l.tokens[t].text == "[";
      if (bracketed) ++t;
      for (; t < l.tokens.size(); ++t) {
        const Token& tok = l.tokens[t];
        if (tok.text == "]") {
          if (!bracketed) fail(l, tok, "unmatched ']'");
          ++t;
          break;
        }
        if (!bracketed && t == l.tokens.size() - 1) break;
        if (tok.text.size() < 2 || tok.text[0] != 's') fail(l, tok, "expected a degeneracy 's<j>', found '" + tok.text + "'");
        const Token idx{tok.text.substr(1), tok.column + 1};
        f.word.push_back(static_cast<int>(parse_int(l, idx, 0, 30, "degeneracy index")));
      }
      if (t >= l.tokens.size()) fail_end(l, "missing target generator");
      if (t != l.tokens.size() - 1) fail(l, l.tokens[t + 1], "unexpected token after the target generator");
      f.target_token = t;
      faces.push_back(std::move(f));
    } else {
      fail(l, l.tokens[0], "unknown keyword '" + kw + "'");
    }
  }
  if (!ended) fail_end(lines.back(), "missing 'end'");

  FinSimplicialSet::Builder b(top);
  for (int n = 0; n <= top; ++n)
    for (const auto& name : names[static_cast<std::size_t>(n)]) b.add_generator(n, name);

  std::map<std::pair<GeneratorId, int>, bool> assigned;
  for (auto& f : faces) {
    const Line& l = *f.line;
    const Token& gt = l.tokens[f.gen_token];
    const Token& tt = l.tokens[f.target_token];
    auto g = by_name.find(gt.text);
    if (g == by_name.end()) fail(l, gt, "unresolved generator '" + gt.text + "'");
    auto target = by_name.find(tt.text);
    if (target == by_name.end()) fail(l, tt, "unresolved generator '" + tt.text + "'");
    const int n = g->second.degree;
    if (n == 0) fail(l, gt, "vertex '" + gt.text + "' has no faces");
    if (f.i > n) fail(l, l.tokens[1], "face index " + std::to_string(f.i) + " exceeds the degree of '" + gt.text + "'");
    if (assigned[{g->second, f.i}]) fail(l, l.tokens[0], "d_" + std::to_string(f.i) + " of '" + gt.text + "' given twice");
    assigned[{g->second, f.i}] = true;
    SimplexRef ref{target->second, DegeneracyWord::from_composite(f.word)};
    if (ref.degree() != n - 1) {
      // Degeneracy indices must be admissible at every step of the composite.
      fail(l, tt, "face has degree " + std::to_string(ref.degree()) + ", expected " + std::to_string(n - 1));
    }
    int running = target->second.degree;
    for (auto it = f.word.rbegin(); it != f.word.rend(); ++it) {
      if (*it > running) fail(l, tt, "degeneracy s" + std::to_string(*it) + " is not defined in degree " + std::to_string(running));
      ++running;
    }
    b.set_face(g->second, f.i, std::move(ref));
  }
  for (int n = 1; n <= top; ++n)
    for (std::size_t g = 0; g < names[static_cast<std::size_t>(n)].size(); ++g)
      for (int i = 0; i <= n; ++i)
        if (!assigned[{GeneratorId{n, static_cast<int>(g)}, i}])
          fail_end(lines.back(), "d_" + std::to_string(i) + " of '" + names[static_cast<std::size_t>(n)][g] + "' is missing");

  FinSimplicialSet s = std::move(b).build();
  if (verify) {
    const auto v = check_simplicial_identities(s);
    if (!v.empty()) {
      const auto& e = v.front();
      throw InputError("simplicial identity d_" + std::to_string(e.i) + " d_" + std::to_string(e.j) + " = d_" +
                       std::to_string(e.j - 1) + " d_" + std::to_string(e.i) + " fails on '" + s.name(e.generator) +
                       "' (" + format_ref(s, e.lhs) + " vs " + format_ref(s, e.rhs) + "); " +
                       std::to_string(v.size()) + " violation(s)");
    }
  }
  return s;
}

std::string serialize_sset(const FinSimplicialSet& s) {
  std::ostringstream out;
  out << "SSET/1\ntop_degree " << s.top_degree() << "\n";
  for (int n = 0; n <= s.top_degree(); ++n) {
    out << "gens " << n << ":";
    for (std::size_t g = 0; g < s.generator_count(n); ++g) out << ' ' << s.name({n, static_cast<int>(g)});
    out << "\n";
  }
  for (int n = 1; n <= s.top_degree(); ++n)
    for (std::size_t g = 0; g < s.generator_count(n); ++g) {
      const GeneratorId id{n, static_cast<int>(g)};
      for (int i = 0; i <= n; ++i) {
        const SimplexRef& f = s.generator_face(id, i);
        out << "d " << i << ' ' << s.name(id) << " = ";
        if (!f.word.empty()) {
          out << '[';
          for (std::size_t k = 0; k < f.word.length(); ++k) out << (k ? " s" : "s") << f.word.indices()[k];
          out << "] ";
        }
        out << s.name(f.generator) << "\n";
      }
    }
  out << "end\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// KINV/1

KInvariantMap parse_kinv(std::string_view text, const FinSimplicialSet& source) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, 1, "empty input; expected 'KINV/1'");
  if (lines[0].tokens[0].text != "KINV/1") fail(lines[0], lines[0].tokens[0], "expected header 'KINV/1'");
  expect_count(lines[0], 1, "KINV/1");

  std::optional<FiniteAbelianGroup> group;
  int degree = -1;
  bool default_zero = false;
  bool ended = false;
  std::vector<std::vector<std::optional<Cochain>>> values(static_cast<std::size_t>(source.top_degree()) + 1);
  for (int n = 0; n <= source.top_degree(); ++n) values[static_cast<std::size_t>(n)].resize(source.generator_count(n));

  for (std::size_t li = 1; li < lines.size(); ++li) {
    const Line& l = lines[li];
    const std::string& kw = l.tokens[0].text;
    if (ended) fail(l, l.tokens[0], "content after 'end'");
    if (kw == "end") {
      expect_count(l, 1, "end");
      ended = true;
    } else if (kw == "group") {
      if (group) fail(l, l.tokens[0], "group given twice");
      std::vector<std::int64_t> factors;
      for (std::size_t t = 1; t < l.tokens.size(); ++t)
        factors.push_back(parse_int(l, l.tokens[t], 2, 1LL << 30, "invariant factor"));
      try {
        group = FiniteAbelianGroup(factors);
      } catch (const InputError& e) {
        fail(l, l.tokens[0], e.what());
      }
    } else if (kw == "degree") {
      expect_count(l, 2, "degree <n>");
      degree = static_cast<int>(parse_int(l, l.tokens[1], 1, 30, "degree"));
    } else if (kw == "default") {
      expect_count(l, 2, "default zero");
      if (l.tokens[1].text != "zero") fail(l, l.tokens[1], "only 'default zero' is supported");
      default_zero = true;
    } else if (kw == "map") {
      if (!group || degree < 0) fail(l, l.tokens[0], "'group' and 'degree' must precede 'map'");
      if (l.tokens.size() < 3 || l.tokens[2].text != ":") fail_end(l, "expected 'map <gen> : <vertices>=<value> ...'");
      const Token& gt = l.tokens[1];
      const auto id = source.find(gt.text);
      if (!id) fail(l, gt, "unresolved generator '" + gt.text + "'");
      auto& slot = values[static_cast<std::size_t>(id->degree)][static_cast<std::size_t>(id->index)];
      if (slot) fail(l, gt, "'" + gt.text + "' mapped twice");
      Cochain c = zero_cochain(*group, id->degree, degree);
      for (std::size_t t = 3; t < l.tokens.size(); ++t) {
        const Token& tok = l.tokens[t];
        const auto eq = tok.text.find('=');
        if (eq == std::string::npos) fail(l, tok, "expected '<vertices>=<value>'");
        std::uint32_t mask = 0;
        int count = 0, last = -1;
        std::string_view verts(tok.text.data(), eq);
        std::size_t p = 0;
        while (p <= verts.size()) {
          std::size_t q = verts.find('.', p);
          if (q == std::string_view::npos) q = verts.size();
          const Token vt{std::string(verts.substr(p, q - p)), tok.column + static_cast<int>(p)};
          const int v = static_cast<int>(parse_int(l, vt, 0, id->degree, "vertex"));
          if (v <= last) fail(l, vt, "vertices must be strictly increasing");
          last = v;
          mask |= 1u << v;
          ++count;
          p = q + 1;
        }
        if (count != degree + 1) fail(l, tok, "a label needs " + std::to_string(degree + 1) + " vertices");
        std::string_view vals(tok.text.data() + eq + 1, tok.text.size() - eq - 1);
        std::vector<std::int64_t> parts;
        std::size_t pp = 0;
        while (pp <= vals.size()) {
          std::size_t q = vals.find(',', pp);
          if (q == std::string_view::npos) q = vals.size();
          const Token xt{std::string(vals.substr(pp, q - pp)), tok.column + static_cast<int>(eq + 1 + pp)};
          parts.push_back(parse_int(l, xt, INT32_MIN, INT32_MAX, "label"));
          pp = q + 1;
        }
        if (parts.size() != static_cast<std::size_t>(group->rank()))
          fail(l, tok, "label needs " + std::to_string(group->rank()) + " component(s)");
        auto dst = label_of(*group, c, mask);
        for (std::size_t k = 0; k < parts.size(); ++k) {
          const auto f = group->invariant_factors()[k];
          dst[k] = static_cast<FiniteAbelianGroup::Label>(((parts[k] % f) + f) % f);
        }
      }
      slot = std::move(c);
    } else {
      fail(l, l.tokens[0], "unknown keyword '" + kw + "'");
    }
  }
  if (!ended) fail_end(lines.back(), "missing 'end'");
  if (!group) fail_end(lines.back(), "missing 'group'");
  if (degree < 0) fail_end(lines.back(), "missing 'degree'");

  KInvariantMap k{*group, degree, {}};
  for (int n = 0; n <= source.top_degree(); ++n) {
    k.values.emplace_back();
    for (std::size_t g = 0; g < source.generator_count(n); ++g) {
      auto& slot = values[static_cast<std::size_t>(n)][g];
      if (!slot && !default_zero)
        throw InputError("k-invariant has no value for '" + source.name({n, static_cast<int>(g)}) + "' and no 'default zero'");
      k.values.back().push_back(slot ? std::move(*slot) : zero_cochain(*group, n, degree));
    }
  }
  return k;
}

std::string serialize_kinv(const KInvariantMap& k, const FinSimplicialSet& source) {
  std::ostringstream out;
  out << "KINV/1\ngroup";
  for (auto f : k.group.invariant_factors()) out << ' ' << f;
  out << "\ndegree " << k.degree << "\ndefault zero\n";
  const auto r = static_cast<std::size_t>(k.group.rank());
  for (int n = 0; n <= source.top_degree(); ++n)
    for (std::size_t g = 0; g < source.generator_count(n); ++g) {
      const Cochain& c = k.values[static_cast<std::size_t>(n)][g];
      if (std::all_of(c.labels.begin(), c.labels.end(), [](auto x) { return x == 0; })) continue;
      out << "map " << source.name({n, static_cast<int>(g)}) << " :";
      for (std::uint32_t s : subsets_of_size(n + 1, k.degree + 1)) {
        const auto lab = label_of(k.group, c, s);
        if (std::all_of(lab.begin(), lab.end(), [](auto x) { return x == 0; })) continue;
        out << ' ';
        const auto vs = elements(s);
        for (std::size_t i = 0; i < vs.size(); ++i) out << (i ? "." : "") << vs[i];
        out << '=';
        for (std::size_t i = 0; i < r; ++i) out << (i ? "," : "") << lab[i];
      }
      out << "\n";
    }
  out << "end\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Profiles

HomologyProfile parse_profile(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("profile: ") + e.what());
  }
  try {
    if (!j.is_object()) throw InputError("profile: expected a JSON object");
    HomologyProfile p;
    p.d = j.value("dimension", 0);
    if (p.d < 0) throw InputError("profile: negative dimension");
    int top = p.d;
    const auto hs = j.value("homology", nlohmann::json::array());
    if (!hs.is_array()) throw InputError("profile: 'homology' must be an array");
    for (const auto& h : hs) top = std::max(top, h.at("degree").get<int>());
    p.groups.resize(static_cast<std::size_t>(top) + 1);
    p.groups[0].free_rank = 1;
    std::vector<bool> seen(p.groups.size(), false);
    for (const auto& h : hs) {
      const int k = h.at("degree").get<int>();
      if (k < 0) throw InputError("profile: negative degree");
      if (seen[static_cast<std::size_t>(k)]) throw InputError("profile: degree " + std::to_string(k) + " listed twice");
      seen[static_cast<std::size_t>(k)] = true;
      HomologyGroup g;
      g.free_rank = h.value("free_rank", 0);
      if (g.free_rank < 0) throw InputError("profile: negative free rank");
      for (const auto& t : h.value("torsion", nlohmann::json::array())) {
        const auto v = t.get<std::int64_t>();
        if (v < 1) throw InputError("profile: torsion coefficients must be positive");
        if (v > 1) g.torsion.push_back(Integer(static_cast<long long>(v)));
      }
      p.groups[static_cast<std::size_t>(k)] = std::move(g);
    }
    p.d = top;
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("profile: ") + e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
  if (!out) throw InputError("error writing '" + path + "'");
}

}  // namespace bsset
