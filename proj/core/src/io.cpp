#include "hyparr/io.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "hyparr/error.hpp"

namespace hyparr {

namespace {

std::string_view strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

std::vector<std::string> split_words(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream is{std::string(line)};
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      out.push_back(text.substr(start));
      break;
    }
    out.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return out;
}

bool valid_name(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

int parse_int_word(const std::string& w, std::size_t line, const char* what) {
  if (w.empty() || !std::all_of(w.begin() + (w[0] == '-' ? 1 : 0), w.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
      w == "-" || w.size() > 9) {
    throw ParseError(line, std::string("expected an integer ") + what + ", got '" + w + "'");
  }
  return std::stoi(w);
}

Scalar parse_rat_word(const std::string& w, std::size_t line) {
  try {
    return parse_scalar(w);
  } catch (const ParseError& e) {
    throw ParseError(line, e.what());
  }
}

/// Recursive-descent reader for polynomial text.
class PolyReader {
 public:
  PolyReader(std::string_view text, std::span<const std::string> vars) : s_(text), vars_(vars) {}

  MultiPoly read() {
    const int n = static_cast<int>(vars_.size());
    MultiPoly out(n);
    skip();
    if (at_end()) throw ParseError(0, "empty polynomial");
    bool first = true;
    while (!at_end()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = (peek() == '-') ? -1 : 1;
        ++pos_;
        skip();
      } else if (!first) {
        throw error("expected '+' or '-'");
      }
      first = false;
      auto [c, mono] = term();
      if (sign < 0) c = -c;
      out.add_term(mono, c);
    }
    return out;
  }

 private:
  std::pair<Scalar, Monomial> term() {
    Scalar c = 1;
    Monomial mono(vars_.size(), 0);
    factor(c, mono);
    while (!at_end() && peek() == '*') {
      ++pos_;
      skip();
      factor(c, mono);
    }
    return {c, mono};
  }

  void factor(Scalar& c, Monomial& mono) {
    if (at_end()) throw error("expected a factor");
    const char ch = peek();
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      const std::size_t start = pos_;
      while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '/')) ++pos_;
      c *= parse_scalar(s_.substr(start, pos_ - start));
      skip();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      const std::size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
      const std::string name(s_.substr(start, pos_ - start));
      const auto it = std::find(vars_.begin(), vars_.end(), name);
      if (it == vars_.end()) throw error("unknown variable '" + name + "'");
      skip();
      int e = 1;
      if (!at_end() && peek() == '^') {
        ++pos_;
        skip();
        const std::size_t es = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (es == pos_ || pos_ - es > 6) throw error("expected an exponent");
        e = std::stoi(std::string(s_.substr(es, pos_ - es)));
        skip();
      }
      mono[static_cast<std::size_t>(it - vars_.begin())] += e;
      return;
    }
    throw error(std::string("unexpected character '") + ch + "'");
  }

  ParseError error(const std::string& what) const {
    return ParseError(0, what + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }
  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }

  std::string_view s_;
  std::span<const std::string> vars_;
  std::size_t pos_ = 0;
};

}  // namespace

ArrangementFile parse_arrangement(std::string_view text) {
  enum class Stage { header, dim, body };
  Stage stage = Stage::header;
  ArrangementFile file;
  int ell = 0;
  std::vector<Hyperplane> hs;
  std::set<Hyperplane> seen;
  std::size_t lineno = 0;
  for (const auto raw : split_lines(text)) {
    ++lineno;
    const auto words = split_words(strip_comment(raw));
    if (words.empty()) continue;
    const std::string& key = words[0];
    if (stage == Stage::header) {
      if (key != "arrangement" || words.size() != 2) throw ParseError(lineno, "expected 'arrangement 1'");
      if (parse_int_word(words[1], lineno, "version") != 1) throw ParseError(lineno, "unsupported format version " + words[1]);
      stage = Stage::dim;
    } else if (stage == Stage::dim) {
      if (key != "dim" || words.size() != 2) throw ParseError(lineno, "expected 'dim L'");
      ell = parse_int_word(words[1], lineno, "dimension");
      if (ell < 0) throw ParseError(lineno, "negative dimension");
      file.variables = default_variable_names(ell);
      stage = Stage::body;
    } else if (key == "vars") {
      if (file.explicit_variables || !hs.empty()) throw ParseError(lineno, "'vars' must come once, before the hyperplanes");
      if (static_cast<int>(words.size()) != ell + 1) throw ParseError(lineno, "expected " + std::to_string(ell) + " variable names");
      std::vector<std::string> names(words.begin() + 1, words.end());
      for (const auto& n : names) {
        if (!valid_name(n)) throw ParseError(lineno, "invalid variable name '" + n + "'");
      }
      if (std::set<std::string>(names.begin(), names.end()).size() != names.size()) {
        throw ParseError(lineno, "repeated variable name");
      }
      file.variables = std::move(names);
      file.explicit_variables = true;
    } else if (key == "hyp") {
      const std::size_t base = static_cast<std::size_t>(ell) + 1;
      if (words.size() < base + 2 || words[base] != "=") {
        throw ParseError(lineno, "expected 'hyp' with " + std::to_string(ell) + " coefficients, '=', and a constant");
      }
      VectorQ normal;
      for (std::size_t i = 1; i < base; ++i) normal.push_back(parse_rat_word(words[i], lineno));
      const Scalar constant = parse_rat_word(words[base + 1], lineno);
      int mult = 1;
      if (words.size() == base + 4 && words[base + 2] == "mult") {
        mult = parse_int_word(words[base + 3], lineno, "multiplicity");
        if (mult < 0) throw ParseError(lineno, "negative multiplicity");
      } else if (words.size() != base + 2) {
        throw ParseError(lineno, "trailing text after the hyperplane constant");
      }
      if (std::all_of(normal.begin(), normal.end(), [](const Scalar& x) { return x == 0; })) {
        throw ParseError(lineno, "zero normal vector");
      }
      Hyperplane h(normal, constant);
      if (!seen.insert(h).second) throw ParseError(lineno, "duplicate hyperplane");
      hs.push_back(std::move(h));
      file.multiplicity.values.push_back(mult);
    } else {
      throw ParseError(lineno, "unknown keyword '" + key + "'");
    }
  }
  if (stage == Stage::header) throw ParseError(lineno, "missing 'arrangement' header");
  if (stage == Stage::dim) throw ParseError(lineno, "missing 'dim' line");
  file.arrangement = Arrangement(ell, std::move(hs));
  return file;
}

std::string serialize_arrangement(const ArrangementFile& file) {
  const Arrangement& a = file.arrangement;
  std::ostringstream os;
  os << "arrangement 1\n";
  os << "dim " << a.dimension() << "\n";
  if (file.explicit_variables) {
    os << "vars";
    for (const auto& v : file.variables) os << " " << v;
    os << "\n";
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    os << "hyp";
    for (const auto& c : a[i].normal()) os << " " << to_string(c);
    os << " = " << to_string(a[i].constant());
    if (i < file.multiplicity.size() && file.multiplicity[i] != 1) os << " mult " << file.multiplicity[i];
    os << "\n";
  }
  return os.str();
}

std::string serialize_arrangement(const Arrangement& a, const Multiplicity& m) {
  ArrangementFile f;
  f.arrangement = a;
  f.multiplicity = m;
  f.variables = default_variable_names(a.dimension());
  return serialize_arrangement(f);
}

MultiPoly parse_polynomial(std::string_view text, std::span<const std::string> vars) {
  return PolyReader(text, vars).read();
}

VectorField parse_vector_field(std::string_view text, std::span<const std::string> vars) {
  std::vector<MultiPoly> comps;
  std::size_t start = 0;
  while (true) {
    const auto semi = text.find(';', start);
    comps.push_back(parse_polynomial(text.substr(start, semi == std::string_view::npos ? semi : semi - start), vars));
    if (semi == std::string_view::npos) break;
    start = semi + 1;
  }
  if (comps.size() != vars.size()) {
    throw ParseError(0, "vector field has " + std::to_string(comps.size()) + " components, expected " +
                            std::to_string(vars.size()));
  }
  return VectorField(std::move(comps));
}

std::vector<VectorField> parse_basis(std::string_view text, std::span<const std::string> vars) {
  std::vector<VectorField> out;
  std::size_t lineno = 0;
  for (const auto raw : split_lines(text)) {
    ++lineno;
    const auto line = strip_comment(raw);
    if (std::all_of(line.begin(), line.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); })) continue;
    try {
      out.push_back(parse_vector_field(line, vars));
    } catch (const ParseError& e) {
      throw ParseError(lineno, e.what());
    }
  }
  return out;
}

}  // namespace hyparr
