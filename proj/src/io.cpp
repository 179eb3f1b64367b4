#include "specrad/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "specrad/errors.hpp"

namespace specrad {

namespace {

struct RawLine {
  std::vector<std::string> tokens;
  int number = 0;
};

[[noreturn]] void fail(int line, const std::string& what) {
  throw InputError("line " + std::to_string(line) + ": " + what);
}

long parse_index(const std::string& tok, int line, long limit) {
  size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(tok, &pos);
  } catch (const std::exception&) {
    fail(line, "expected an index, got '" + tok + "'");
  }
  if (pos != tok.size() || v < 1 || v > limit)
    fail(line, "index '" + tok + "' out of range 1.." + std::to_string(limit));
  return v;
}

Rational parse_number(const std::string& tok, int line) {
  try {
    return parse_rational(tok);
  } catch (const std::exception&) {
    fail(line, "expected a rational, got '" + tok + "'");
  }
}

// "i:" prefix of map/glp body lines.
long parse_coord_prefix(std::vector<std::string>& toks, int line, long limit) {
  if (toks.empty()) fail(line, "empty body line");
  std::string head = toks.front();
  if (head.size() < 2 || head.back() != ':')
    fail(line, "expected 'i:' coordinate prefix");
  head.pop_back();
  toks.erase(toks.begin());
  return parse_index(head, line, limit);
}

ProblemFile build_map(const std::vector<RawLine>& body, int dim,
                      const Rational& degree) {
  std::vector<std::vector<MonomialMap::Monomial>> coords(dim);
  for (auto raw : body) {
    long i = parse_coord_prefix(raw.tokens, raw.number, dim);
    if (static_cast<int>(raw.tokens.size()) != dim + 1)
      fail(raw.number, "expected " + std::to_string(dim) + " exponents and a coefficient");
    MonomialMap::Monomial mono;
    for (int k = 0; k < dim; ++k)
      mono.exponent.push_back(parse_number(raw.tokens[k], raw.number));
    mono.coeff = parse_number(raw.tokens[dim], raw.number);
    coords[i - 1].push_back(std::move(mono));
  }
  return ProblemFile{MonomialMap(dim, degree - 1, std::move(coords))};
}

ProblemFile build_form(const std::vector<RawLine>& body, int dim,
                       const Rational& degree) {
  std::vector<NonnegForm::Monomial> ms;
  for (const auto& raw : body) {
    if (static_cast<int>(raw.tokens.size()) != dim + 1)
      fail(raw.number, "expected " + std::to_string(dim) + " exponents and a coefficient");
    NonnegForm::Monomial mono;
    for (int k = 0; k < dim; ++k)
      mono.exponent.push_back(parse_number(raw.tokens[k], raw.number));
    mono.coeff = parse_number(raw.tokens[dim], raw.number);
    ms.push_back(std::move(mono));
  }
  return ProblemFile{NonnegForm(dim, degree, std::move(ms))};
}

ProblemFile build_hypergraph(const std::vector<RawLine>& body, int dim,
                             const Rational& degree) {
  if (denominator(degree) != 1)
    throw InputError("hypergraph uniformity must be an integer");
  int d = static_cast<int>(numerator(degree).convert_to<long>());
  std::vector<UniformHypergraph::Edge> edges;
  for (const auto& raw : body) {
    if (static_cast<int>(raw.tokens.size()) != d + 1)
      fail(raw.number, "expected " + std::to_string(d) + " vertices and a weight");
    UniformHypergraph::Edge e;
    for (int k = 0; k < d; ++k)
      e.vertices.push_back(
          static_cast<int>(parse_index(raw.tokens[k], raw.number, dim)) - 1);
    e.weight = parse_number(raw.tokens[d], raw.number);
    edges.push_back(std::move(e));
  }
  return ProblemFile{UniformHypergraph(dim, d, std::move(edges))};
}

ProblemFile build_glp(const std::vector<RawLine>& body, int dim) {
  std::map<long, std::pair<std::vector<std::vector<Rational>>,
                           std::vector<Rational>>> branches;
  for (auto raw : body) {
    long j = parse_coord_prefix(raw.tokens, raw.number, 1000000);
    if (static_cast<int>(raw.tokens.size()) != dim + 1)
      fail(raw.number, "expected " + std::to_string(dim) + " exponents and a weight");
    std::vector<Rational> a;
    for (int k = 0; k < dim; ++k)
      a.push_back(parse_number(raw.tokens[k], raw.number));
    branches[j].first.push_back(std::move(a));
    branches[j].second.push_back(parse_number(raw.tokens[dim], raw.number));
  }
  if (branches.empty()) throw InputError("glp instance has no branches");
  std::vector<PosExponentSum> brs;
  for (auto& [j, terms] : branches)
    brs.emplace_back(dim, std::move(terms.first), std::move(terms.second));
  return ProblemFile{MaxLogSumExp(std::move(brs))};
}

}  // namespace

ProblemFile parse_problem(std::istream& in) {
  std::string kind;
  int dim = -1;
  std::optional<Rational> degree;
  std::vector<RawLine> body;

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto pos = line.find('#'); pos != std::string::npos) line.resize(pos);
    std::istringstream ls(line);
    RawLine raw;
    raw.number = lineno;
    std::string tok;
    while (ls >> tok) raw.tokens.push_back(tok);
    if (raw.tokens.empty()) continue;

    const std::string& head = raw.tokens.front();
    if (head == "kind" || head == "dim" || head == "degree") {
      if (raw.tokens.size() != 2) fail(lineno, "'" + head + "' takes one value");
      if (!body.empty()) fail(lineno, "header after body lines");
      if (head == "kind") {
        kind = raw.tokens[1];
        if (kind != "map" && kind != "form" && kind != "hypergraph" &&
            kind != "glp")
          fail(lineno, "unknown kind '" + kind + "'");
      } else if (head == "dim") {
        dim = static_cast<int>(parse_index(raw.tokens[1], lineno, 1000000));
      } else {
        degree = parse_number(raw.tokens[1], lineno);
      }
    } else {
      body.push_back(std::move(raw));
    }
  }

  if (kind.empty()) throw InputError("missing 'kind' header");
  if (dim < 0) throw InputError("missing 'dim' header");
  if (kind == "glp") {
    if (degree) throw InputError("'degree' is not valid for kind glp");
    return build_glp(body, dim);
  }
  if (!degree) throw InputError("missing 'degree' header");
  if (kind == "map") return build_map(body, dim, *degree);
  if (kind == "form") return build_form(body, dim, *degree);
  return build_hypergraph(body, dim, *degree);
}

ProblemFile parse_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open input file '" + path + "'");
  return parse_problem(in);
}

std::string format_real(const Real& v) { return to_decimal_string(v, 20); }

std::string format_rational(const Rational& q) {
  std::ostringstream os;
  os << numerator(q);
  if (denominator(q) != 1) os << "/" << denominator(q);
  return os.str();
}

}  // namespace specrad
