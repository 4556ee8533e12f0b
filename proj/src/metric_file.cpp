#include "semisym/metric_file.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "semisym/corpus.hpp"
#include "semisym/np.hpp"

namespace semisym {

namespace {

struct Entry {
  std::string key;
  std::string value;
  std::size_t line = 0;
};

const std::set<std::string, std::less<>> kSections = {"chart", "params", "metric", "tetrad",
                                                       "points", "flags", "expect"};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

/// Splits on commas outside parentheses.
std::vector<std::string> split_top_level(std::string_view s) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (s[i] == ',' && depth == 0) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  out.push_back(trim(s.substr(start)));
  return out;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

[[noreturn]] void fail(const std::string& what, std::size_t line, const std::string& section) {
  throw MetricFileError(what, line, section);
}

Expr parse_at(const std::string& text, const Scope& scope, const Entry& e, const std::string& section) {
  try {
    return parse_expr(text, scope);
  } catch (const ParseError& err) {
    fail(std::string("[") + section + "] " + e.key + ": " + err.what(), e.line, section);
  } catch (const UndeclaredIdentifierError& err) {
    fail(std::string("[") + section + "] " + e.key + ": " + err.what(), e.line, section);
  }
}

double eval_at(const Expr& ex, const Bindings& b, const Entry& e, const std::string& section) {
  try {
    return eval(ex, b);
  } catch (const DomainError& err) {
    fail(std::string("[") + section + "] " + e.key + ": " + err.what(), e.line, section);
  }
}

}  // namespace

MetricFile parse_metric_file(std::string_view text, std::string name) {
  std::map<std::string, std::vector<Entry>> sections;
  std::map<std::string, std::size_t> section_line;
  std::string current;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail("unterminated section header", lineno, current);
      current = trim(std::string_view(line).substr(1, line.size() - 2));
      if (!kSections.count(current)) fail("unknown section [" + current + "]", lineno, current);
      if (section_line.count(current)) fail("duplicate section [" + current + "]", lineno, current);
      section_line[current] = lineno;
      sections[current];
      continue;
    }
    if (current.empty()) fail("entry outside any section", lineno, "");
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected 'name = value'", lineno, current);
    Entry e{trim(std::string_view(line).substr(0, eq)), trim(std::string_view(line).substr(eq + 1)), lineno};
    if (e.key.empty()) fail("empty entry name", lineno, current);
    if (e.value.empty()) fail("empty value for '" + e.key + "'", lineno, current);
    for (const auto& prev : sections[current])
      if (prev.key == e.key) fail("duplicate entry '" + e.key + "'", lineno, current);
    sections[current].push_back(std::move(e));
  }

  // [chart]
  if (!sections.count("chart")) fail("missing section [chart]", 0, "chart");
  std::vector<std::string> coords;
  for (const auto& e : sections["chart"]) {
    if (e.key != "coords") fail("unknown chart entry '" + e.key + "'", e.line, "chart");
    coords = split_top_level(e.value);
    if (coords.size() != static_cast<std::size_t>(kDim))
      fail("chart needs exactly 4 coordinates, got " + std::to_string(coords.size()), e.line, "chart");
    for (const auto& c : coords)
      if (!is_identifier(c)) fail("bad coordinate name '" + c + "'", e.line, "chart");
    if (std::set<std::string>(coords.begin(), coords.end()).size() != coords.size())
      fail("repeated coordinate name", e.line, "chart");
  }
  if (coords.empty()) fail("[chart] has no coords entry", section_line["chart"], "chart");

  // [params], each may use the ones before it.
  std::vector<std::string> pnames;
  std::vector<double> pvalues;
  for (const auto& e : sections["params"]) {
    if (!is_identifier(e.key)) fail("bad parameter name '" + e.key + "'", e.line, "params");
    if (std::find(coords.begin(), coords.end(), e.key) != coords.end())
      fail("parameter '" + e.key + "' shadows a coordinate", e.line, "params");
    const Expr ex = parse_at(e.value, Scope({}, pnames), e, "params");
    pvalues.push_back(eval_at(ex, Bindings({}, pvalues), e, "params"));
    pnames.push_back(e.key);
  }
  const Scope scope(coords, pnames);

  // [metric]
  if (!sections.count("metric")) fail("missing section [metric]", 0, "metric");
  std::array<Expr, 10> g;
  std::array<bool, 10> seen{};
  for (const auto& e : sections["metric"]) {
    const std::string& k = e.key;
    if (k.size() < 6 || k.substr(0, 2) != "g(" || k.back() != ')')
      fail("metric entries are written g(a,b); got '" + k + "'", e.line, "metric");
    const auto idx = split_top_level(std::string_view(k).substr(2, k.size() - 3));
    if (idx.size() != 2) fail("metric entry '" + k + "' needs two indices", e.line, "metric");
    int ab[2];
    for (int i = 0; i < 2; ++i) {
      ab[i] = scope.coordinate_index(idx[static_cast<std::size_t>(i)]);
      if (ab[i] < 0) fail("unknown coordinate '" + idx[static_cast<std::size_t>(i)] + "' in " + k, e.line, "metric");
    }
    const auto slot = static_cast<std::size_t>(MetricField::packed(ab[0], ab[1]));
    if (seen[slot]) fail("metric component " + k + " given twice", e.line, "metric");
    seen[slot] = true;
    g[slot] = parse_at(e.value, scope, e, "metric");
  }
  for (int a = 0; a < kDim; ++a)
    for (int b = a; b < kDim; ++b)
      if (!seen[static_cast<std::size_t>(MetricField::packed(a, b))])
        fail("missing metric entry g(" + coords[static_cast<std::size_t>(a)] + "," +
                 coords[static_cast<std::size_t>(b)] + ")",
             section_line["metric"], "metric");

  // [tetrad]
  std::optional<TetradField> tetrad;
  if (sections.count("tetrad")) {
    static const std::array<std::string, 4> kLegs = {"k", "l", "m_re", "m_im"};
    TetradField t;
    std::array<bool, 4> have{};
    for (const auto& e : sections["tetrad"]) {
      const auto it = std::find(kLegs.begin(), kLegs.end(), e.key);
      if (it == kLegs.end()) fail("unknown tetrad leg '" + e.key + "'", e.line, "tetrad");
      const auto leg = static_cast<std::size_t>(it - kLegs.begin());
      const std::string& v = e.value;
      if (v.front() != '(' || v.back() != ')')
        fail("tetrad leg '" + e.key + "' must be a parenthesised 4-tuple", e.line, "tetrad");
      const auto comps = split_top_level(std::string_view(v).substr(1, v.size() - 2));
      if (comps.size() != static_cast<std::size_t>(kDim))
        fail("tetrad leg '" + e.key + "' needs 4 components", e.line, "tetrad");
      for (std::size_t a = 0; a < kDim; ++a) t.vectors[leg][a] = parse_at(comps[a], scope, e, "tetrad");
      have[leg] = true;
    }
    for (std::size_t i = 0; i < 4; ++i)
      if (!have[i]) fail("missing tetrad leg '" + kLegs[i] + "'", section_line["tetrad"], "tetrad");
    tetrad = t;
  }

  // [points]
  std::vector<SamplePoint> points;
  const Scope value_scope({}, pnames);
  const Bindings value_bindings({}, pvalues);
  for (const auto& e : sections["points"]) {
    SamplePoint p;
    p.name = e.key;
    std::array<bool, kDim> bound{};
    for (const auto& part : split_top_level(e.value)) {
      const auto eq = part.find('=');
      if (eq == std::string::npos) fail("point '" + e.key + "': expected coord=value", e.line, "points");
      const std::string c = trim(std::string_view(part).substr(0, eq));
      const int i = scope.coordinate_index(c);
      if (i < 0) fail("point '" + e.key + "': unknown coordinate '" + c + "'", e.line, "points");
      if (bound[static_cast<std::size_t>(i)]) fail("point '" + e.key + "': '" + c + "' bound twice", e.line, "points");
      bound[static_cast<std::size_t>(i)] = true;
      const Expr ex = parse_at(trim(std::string_view(part).substr(eq + 1)), value_scope, e, "points");
      p.coords[static_cast<std::size_t>(i)] = eval_at(ex, value_bindings, e, "points");
    }
    for (std::size_t i = 0; i < kDim; ++i)
      if (!bound[i]) fail("point '" + e.key + "' does not bind '" + coords[i] + "'", e.line, "points");
    points.push_back(std::move(p));
  }
  std::sort(points.begin(), points.end(),
            [](const SamplePoint& a, const SamplePoint& b) { return a.name < b.name; });

  // [flags]
  bool is_static = false;
  for (const auto& e : sections["flags"]) {
    if (e.key != "static") fail("unknown flag '" + e.key + "'", e.line, "flags");
    if (e.value == "true") is_static = true;
    else if (e.value == "false") is_static = false;
    else fail("flag 'static' must be true or false", e.line, "flags");
  }

  std::map<std::string, std::string> expect;
  for (const auto& e : sections["expect"]) expect[e.key] = e.value;

  MetricFile file{std::move(name), MetricField(scope, g, pvalues, tetrad, points), is_static, std::move(expect)};
  for (const auto& p : file.field.points()) {
    const Bindings b = file.field.bindings(p);
    for (int a = 0; a < kDim; ++a)
      for (int c = a; c < kDim; ++c) {
        const Entry where{"g(" + coords[static_cast<std::size_t>(a)] + "," + coords[static_cast<std::size_t>(c)] + ") at " + p.name, "", 0};
        eval_at(file.field.g(a, c), b, where, "metric");
      }
    TensorValue g = TensorValue::all_down(2);
    for (int a = 0; a < kDim; ++a)
      for (int c = 0; c < kDim; ++c) g.at({a, c}) = eval(file.field.g(a, c), b);
    check_lorentzian(g, "point '" + p.name + "'");
    if (tetrad) require_valid_tetrad(file.field, p);
  }
  return file;
}

MetricFile load_metric_file(const std::filesystem::path& path) {
  const std::string s = path.string();
  if (s.rfind("corpus:", 0) == 0) {
    const std::string name = s.substr(7);
    const CorpusEntry* e = find_corpus_entry(name);
    if (!e) throw MetricFileError("no built-in corpus metric named '" + name + "'", 0, "");
    return parse_metric_file(e->text, name);
  }
  std::ifstream f(path);
  if (!f) throw MetricFileError("cannot read " + s, 0, "");
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_metric_file(buf.str(), path.stem().string());
}

const CorpusEntry* find_corpus_entry(std::string_view name) {
  for (const auto& e : builtin_corpus())
    if (e.name == name) return &e;
  return nullptr;
}

}  // namespace semisym
