#include "rotor/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "rotor/covers.hpp"
#include "rotor/errors.hpp"

namespace rotor {

namespace {

const std::set<std::string> kSectionKinds = {"tolerances", "generator", "annulus", "word", "measure", "analysis"};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

bool valid_name(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
  });
}

std::optional<double> plain_number(std::string_view t) {
  if (t.empty()) return std::nullopt;
  if (t.front() == '+') t.remove_prefix(1);
  double v = 0.0;
  const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

// number | a/b | [c*]pi[/d], with an optional leading minus sign.
std::optional<double> real_token(std::string_view t) {
  double sign = 1.0;
  if (!t.empty() && t.front() == '-') {
    sign = -1.0;
    t.remove_prefix(1);
  }
  double den = 1.0;
  if (const auto slash = t.rfind('/'); slash != std::string_view::npos) {
    const auto d = plain_number(t.substr(slash + 1));
    if (!d || *d == 0.0) return std::nullopt;
    den = *d;
    t = t.substr(0, slash);
  }
  double num = 0.0;
  if (t.size() >= 2 && t.substr(t.size() - 2) == "pi") {
    t.remove_suffix(2);
    double c = 1.0;
    if (!t.empty()) {
      if (t.back() != '*') return std::nullopt;
      t.remove_suffix(1);
      const auto v = plain_number(t);
      if (!v) return std::nullopt;
      c = *v;
    }
    num = c * std::numbers::pi;
  } else {
    if (t.empty() || t.front() == '-') return std::nullopt;
    const auto v = plain_number(t);
    if (!v) return std::nullopt;
    num = *v;
  }
  return sign * num / den;
}

double parse_real(const std::string& tok, int line, const std::string& field) {
  const auto v = real_token(tok);
  if (!v) throw ConfigError(line, field, "'" + tok + "' is not a number");
  return *v;
}

std::int64_t parse_int(const std::string& tok, int line, const std::string& field) {
  std::string_view t = tok;
  if (!t.empty() && t.front() == '+') t.remove_prefix(1);
  std::int64_t v = 0;
  const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || p != t.data() + t.size()) {
    throw ConfigError(line, field, "'" + tok + "' is not an integer");
  }
  return v;
}

bool parse_bool(const std::string& tok, int line, const std::string& field) {
  if (tok == "true" || tok == "yes" || tok == "1") return true;
  if (tok == "false" || tok == "no" || tok == "0") return false;
  throw ConfigError(line, field, "'" + tok + "' is not a boolean (true/false)");
}

std::vector<double> parse_reals(const Entry& e, std::size_t min_count, std::size_t max_count) {
  const auto ts = tokens(e.value);
  if (ts.size() < min_count || ts.size() > max_count) {
    const std::string want = min_count == max_count ? std::to_string(min_count)
                                                    : std::to_string(min_count) + " to " + std::to_string(max_count);
    throw ConfigError(e.line, e.key, "expected " + want + " numbers, got " + std::to_string(ts.size()));
  }
  std::vector<double> out;
  for (const auto& t : ts) out.push_back(parse_real(t, e.line, e.key));
  return out;
}

const Entry* find_entry(const Section& s, const std::string& key) {
  const Entry* found = nullptr;
  for (const auto& e : s.entries) {
    if (e.key != key) continue;
    if (found) throw ConfigError(e.line, key, "given more than once");
    found = &e;
  }
  return found;
}

const Entry& require_entry(const Section& s, const std::string& key) {
  const Entry* e = find_entry(s, key);
  if (!e) throw ConfigError(s.line, key, "missing in [" + s.kind + " " + s.name + "]");
  return *e;
}

void check_keys(const Section& s, const std::set<std::string>& allowed, const std::set<std::string>& repeatable = {}) {
  std::set<std::string> seen;
  for (const auto& e : s.entries) {
    if (!allowed.count(e.key) && !repeatable.count(e.key)) {
      throw ConfigError(e.line, e.key, "unknown key in [" + s.kind + "] section");
    }
    if (!repeatable.count(e.key) && !seen.insert(e.key).second) {
      throw ConfigError(e.line, e.key, "given more than once");
    }
  }
}

// ---------------------------------------------------------------------------
// Analysis parameter tables.

enum class Kind { integer, real, boolean, word, words, measure, reals, ints, choice };

struct ParamSpec {
  std::string key;
  Kind kind;
  std::vector<std::string> choices = {};
};

const std::map<std::string, std::vector<ParamSpec>>& analysis_tables() {
  static const std::map<std::string, std::vector<ParamSpec>> t = {
      {"classify",
       {{"words", Kind::words},
        {"expect_tag", Kind::choice,
         {"trivial", "cyclic", "pair", "dihedral_H_conjugate", "not_nilpotent", "undecided"}},
        {"expect_condition", Kind::boolean},
        {"expect_order", Kind::integer},
        {"expect_index", Kind::integer}}},
      {"rotation-set",
       {{"word", Kind::word},
        {"seeds", Kind::integer},
        {"n", Kind::integer},
        {"convention", Kind::choice, {"isotopic", "fundamental-domain"}},
        {"measure", Kind::measure},
        {"irrotational_tol", Kind::real},
        {"expect_hull", Kind::reals},
        {"expect_hausdorff", Kind::real},
        {"expect_rotation", Kind::reals},
        {"expect_tol", Kind::real},
        {"expect_irrotational", Kind::boolean}}},
      {"invariant-measure",
       {{"base", Kind::words},
        {"extension", Kind::words},
        {"declared", Kind::ints},
        {"track", Kind::words},
        {"measure", Kind::measure},
        {"length", Kind::integer},
        {"doublings", Kind::integer},
        {"tol", Kind::real},
        {"force", Kind::boolean},
        {"expect_refused", Kind::boolean},
        {"expect_rotation", Kind::reals},
        {"expect_preserved", Kind::boolean},
        {"expect_tol", Kind::real}}},
      {"fixed-points",
       {{"words", Kind::words},
        {"grid", Kind::integer},
        {"tol", Kind::real},
        {"lift", Kind::boolean},
        {"index_radius", Kind::real},
        {"index_samples", Kind::integer},
        {"franks", Kind::measure},
        {"franks_tol", Kind::real},
        {"expect_points", Kind::integer},
        {"expect_chains", Kind::integer},
        {"expect_nonempty", Kind::boolean},
        {"expect_contains", Kind::reals},
        {"expect_index_sum", Kind::integer},
        {"expect_verdict", Kind::choice, {"consistent", "hypothesis_not_met", "counterexample"}}}},
      {"rotev",
       {{"g", Kind::word},
        {"h", Kind::word},
        {"measure", Kind::measure},
        {"p", Kind::ints},
        {"tol", Kind::real},
        {"orbit_rho", Kind::reals},
        {"orbit_w", Kind::reals},
        {"orbit_length", Kind::integer},
        {"expect_bounded", Kind::boolean}}},
      {"klein",
       {{"word", Kind::word},
        {"measure", Kind::measure},
        {"grid", Kind::integer},
        {"tol", Kind::real},
        {"symmetrize", Kind::boolean},
        {"expect_equivariant", Kind::boolean},
        {"expect_defect", Kind::real},
        {"expect_rho_bar", Kind::reals},
        {"expect_tol", Kind::real}}},
      {"verify", {{"criteria", Kind::ints}}},
  };
  return t;
}

const std::map<std::string, std::vector<std::string>>& required_params() {
  static const std::map<std::string, std::vector<std::string>> r = {
      {"classify", {"words"}},         {"rotation-set", {"word"}},       {"invariant-measure", {"measure"}},
      {"fixed-points", {"words"}},     {"rotev", {"g", "h", "measure"}}, {"klein", {"word"}},
      {"verify", {}},
  };
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<Section> parse_sections(std::string_view text) {
  std::vector<Section> out;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(line_no, "section", "unterminated section header");
      const auto parts = tokens(line.substr(1, line.size() - 2));
      if (parts.empty()) throw ConfigError(line_no, "section", "empty section header");
      if (!kSectionKinds.count(parts[0])) throw ConfigError(line_no, "section", "unknown section kind '" + parts[0] + "'");
      Section s;
      s.kind = parts[0];
      s.line = line_no;
      if (s.kind == "tolerances") {
        if (parts.size() != 1) throw ConfigError(line_no, "section", "[tolerances] takes no name");
      } else {
        if (parts.size() != 2) throw ConfigError(line_no, "section", "[" + s.kind + "] needs exactly one name");
        if (!valid_name(parts[1])) throw ConfigError(line_no, "section", "invalid name '" + parts[1] + "'");
        s.name = parts[1];
      }
      out.push_back(std::move(s));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(line_no, "line", "expected 'key = value'");
    Entry e{trim(std::string_view(line).substr(0, eq)), trim(std::string_view(line).substr(eq + 1)), line_no};
    if (e.key.empty() || !std::all_of(e.key.begin(), e.key.end(), [](char c) { return std::islower(c) || c == '_'; })) {
      throw ConfigError(line_no, e.key.empty() ? "line" : e.key, "invalid key");
    }
    if (out.empty()) throw ConfigError(line_no, e.key, "entry outside of any section");
    out.back().entries.push_back(std::move(e));
  }
  return out;
}

Scenario Scenario::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(0, "file", "cannot open '" + path.string() + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return parse(s.str());
}

Scenario Scenario::parse(std::string_view text) {
  Scenario sc;
  const std::vector<Section> sections = parse_sections(text);

  // Names: generators and annuli share one namespace, words another, measures a third.
  std::set<std::string> gen_names, word_names, measure_names, analysis_names;
  bool tol_seen = false;
  for (const auto& s : sections) {
    auto claim = [&](std::set<std::string>& set) {
      if (!set.insert(s.name).second) throw ConfigError(s.line, "section", "duplicate name '" + s.name + "'");
    };
    if (s.kind == "tolerances") {
      if (tol_seen) throw ConfigError(s.line, "section", "[tolerances] given more than once");
      tol_seen = true;
    } else if (s.kind == "generator" || s.kind == "annulus") {
      claim(gen_names);
    } else if (s.kind == "word") {
      claim(word_names);
    } else if (s.kind == "measure") {
      claim(measure_names);
    } else {
      claim(analysis_names);
    }
  }
  for (const auto& w : word_names) {
    if (gen_names.count(w)) throw ConfigError(0, "word", "'" + w + "' names both a word and a generator");
  }

  for (const auto& s : sections) {
    if (s.kind != "tolerances") continue;
    check_keys(s, {"defect", "fixed", "rotev", "hull", "rotation", "sigma"});
    for (const auto& e : s.entries) {
      const double v = parse_reals(e, 1, 1)[0];
      if (!(v > 0.0)) throw ConfigError(e.line, e.key, "tolerance must be positive");
      if (e.key == "defect") sc.tol_.defect = v;
      if (e.key == "fixed") sc.tol_.fixed = v;
      if (e.key == "rotev") sc.tol_.rotev = v;
      if (e.key == "hull") sc.tol_.hull = v;
      if (e.key == "rotation") sc.tol_.rotation = v;
      if (e.key == "sigma") sc.tol_.sigma = v;
    }
  }

  // Generators: build all raw maps, then attach closed inverses, then register in file order.
  struct Pending {
    const Section* section;
    std::optional<Generator> gen;
    const Entry* inverse = nullptr;
  };
  std::vector<Pending> pending;
  std::map<std::string, std::size_t> index;
  for (const auto& s : sections) {
    if (s.kind == "generator") {
      check_keys(s, {"matrix", "inverse"}, {"x", "y"});
      const Entry& me = require_entry(s, "matrix");
      const auto mt = tokens(me.value);
      if (mt.size() != 4) throw ConfigError(me.line, "matrix", "generator '" + s.name + "' needs 4 integer entries");
      std::array<std::int64_t, 4> m{};
      for (int i = 0; i < 4; ++i) m[i] = parse_int(mt[i], me.line, "matrix");
      std::optional<MCGClass> cls;
      try {
        cls = MCGClass::from(m[0], m[1], m[2], m[3]);
      } catch (const NotUnimodular& e) {
        throw ConfigError(me.line, "matrix", "generator '" + s.name + "': " + e.what());
      }
      std::vector<DisplacementTerm> xs, ys;
      for (const auto& e : s.entries) {
        if (e.key != "x" && e.key != "y") continue;
        const auto ts = tokens(e.value);
        if (ts.size() < 3 || ts.size() > 4) {
          throw ConfigError(e.line, e.key, "expected 'amplitude jx ky [phase]'");
        }
        const double amp = parse_real(ts[0], e.line, e.key);
        const std::int64_t jx = parse_int(ts[1], e.line, e.key), ky = parse_int(ts[2], e.line, e.key);
        const double phase = ts.size() == 4 ? parse_real(ts[3], e.line, e.key) : 0.0;
        (e.key == "x" ? xs : ys).push_back(DisplacementTerm::trig(amp, jx, ky, phase));
      }
      index[s.name] = pending.size();
      pending.push_back({&s, Generator(s.name, *cls, xs, ys), find_entry(s, "inverse")});
    } else if (s.kind == "annulus") {
      check_keys(s, {}, {"a", "b"});
      AnnulusMapSpec f;
      f.name = s.name;
      for (const auto& e : s.entries) {
        const auto ts = tokens(e.value);
        if (ts.size() < 3) throw ConfigError(e.line, e.key, "expected 'amplitude jx phase [poly coefficients...]'");
        AnnulusTerm t;
        t.amplitude = parse_real(ts[0], e.line, e.key);
        t.jx = parse_int(ts[1], e.line, e.key);
        t.phase = parse_real(ts[2], e.line, e.key);
        if (ts.size() > 3) {
          t.poly.clear();
          for (std::size_t i = 3; i < ts.size(); ++i) t.poly.push_back(parse_real(ts[i], e.line, e.key));
        }
        (e.key == "a" ? f.a : f.b).push_back(t);
      }
      try {
        index[s.name] = pending.size();
        pending.push_back({&s, double_annulus(f), nullptr});
      } catch (const Error& e) {
        throw ConfigError(s.line, "b", "annulus '" + s.name + "': " + e.what());
      }
    }
  }
  std::vector<Generator> raw;
  for (const auto& p : pending) raw.push_back(*p.gen);
  for (auto& p : pending) {
    if (!p.inverse) continue;
    const auto ts = tokens(p.inverse->value);
    if (ts.size() == 1 && ts[0] == "newton") continue;
    if (ts.size() != 2 || ts[0] != "closed") {
      throw ConfigError(p.inverse->line, "inverse", "expected 'newton' or 'closed NAME'");
    }
    const auto it = index.find(ts[1]);
    if (it == index.end()) throw ConfigError(p.inverse->line, "inverse", "unknown generator '" + ts[1] + "'");
    try {
      p.gen = p.gen->with_closed_inverse(raw[it->second]);
    } catch (const Error& e) {
      throw ConfigError(p.inverse->line, "inverse", "generator '" + p.section->name + "': " + e.what());
    }
  }
  for (auto& p : pending) {
    try {
      sc.group_.add(*p.gen);
    } catch (const Error& e) {
      throw ConfigError(p.section->line, "inverse", "generator '" + p.section->name + "': " + e.what());
    }
  }

  for (const auto& s : sections) {
    if (s.kind != "word") continue;
    check_keys(s, {"letters", "lift"});
    std::vector<Letter> letters;
    if (const Entry* le = find_entry(s, "letters")) {
      for (const auto& t : tokens(le->value)) {
        const auto caret = t.find('^');
        const std::string name = t.substr(0, caret);
        std::int64_t power = 1;
        if (caret != std::string::npos) power = parse_int(t.substr(caret + 1), le->line, "letters");
        const auto id = sc.group_.find(name);
        if (!id) throw ConfigError(le->line, "letters", "unknown generator '" + name + "'");
        if (power < -1000 || power > 1000) throw ConfigError(le->line, "letters", "exponent out of range");
        for (std::int64_t k = 0; k < std::abs(power); ++k) letters.push_back({*id, power < 0 ? -1 : 1});
      }
    }
    IntVec2 lift{};
    if (const Entry* lf = find_entry(s, "lift")) {
      const auto ts = tokens(lf->value);
      if (ts.size() != 2) throw ConfigError(lf->line, "lift", "expected two integers");
      lift = {parse_int(ts[0], lf->line, "lift"), parse_int(ts[1], lf->line, "lift")};
    }
    sc.words_[s.name] = LiftedWord(Word(letters), lift);
  }
  for (std::size_t i = 0; i < sc.group_.size(); ++i) {
    const int id = static_cast<int>(i);
    sc.words_.emplace(sc.group_.generator(id).name(), LiftedWord(Word::letter(id)));
  }

  for (const auto& s : sections) {
    if (s.kind == "measure") sc.add_measure_spec(s);
  }
  // Reject reference cycles between derived measures.
  for (const auto& [name, spec] : sc.measure_specs_) {
    std::set<std::string> seen{name};
    const Section* cur = &spec;
    while (true) {
      const Entry* src = find_entry(*cur, "source");
      if (!src) break;
      if (!seen.insert(src->value).second) throw ConfigError(src->line, "source", "measure references form a cycle");
      cur = &sc.measure_specs_.at(src->value);
    }
  }

  for (const auto& s : sections) {
    if (s.kind == "analysis") sc.add_analysis(s);
  }
  return sc;
}

void Scenario::add_measure_spec(const Section& s) {
  const Entry& kind = require_entry(s, "kind");
  static const std::map<std::string, std::set<std::string>> keys = {
      {"grid", {"n", "offset"}},
      {"circle-x", {"x", "n"}},
      {"circle-y", {"y", "n"}},
      {"dirac", {"point"}},
      {"atoms", {}},
      {"orbit", {"word", "seed", "n", "window"}},
      {"pushforward", {"source", "word"}},
      {"symmetrized", {"source"}},
  };
  const auto it = keys.find(kind.value);
  if (it == keys.end()) throw ConfigError(kind.line, "kind", "unknown measure kind '" + kind.value + "'");
  std::set<std::string> allowed = it->second;
  allowed.insert("kind");
  check_keys(s, allowed, kind.value == "atoms" ? std::set<std::string>{"atom"} : std::set<std::string>{});
  const std::string& k = kind.value;
  auto positive_int = [&](const std::string& key) {
    const Entry& e = require_entry(s, key);
    const auto v = parse_int(e.value, e.line, key);
    if (v < 1 || v > 100'000'000) throw ConfigError(e.line, key, "must be between 1 and 10^8");
  };
  if (k == "grid") {
    positive_int("n");
    if (const Entry* e = find_entry(s, "offset")) parse_reals(*e, 2, 2);
  } else if (k == "circle-x" || k == "circle-y") {
    positive_int("n");
    const Entry& e = require_entry(s, k == "circle-x" ? "x" : "y");
    parse_reals(e, 1, 1);
  } else if (k == "dirac") {
    parse_reals(require_entry(s, "point"), 2, 2);
  } else if (k == "atoms") {
    bool any = false;
    for (const auto& e : s.entries) {
      if (e.key != "atom") continue;
      const auto v = parse_reals(e, 2, 3);
      if (v.size() == 3 && !(v[2] >= 0.0)) throw ConfigError(e.line, "atom", "weight must be >= 0");
      any = true;
    }
    if (!any) throw ConfigError(s.line, "atom", "measure '" + s.name + "' has no atoms");
  } else if (k == "orbit") {
    const Entry& w = require_entry(s, "word");
    if (!words_.count(w.value)) throw ConfigError(w.line, "word", "unknown word '" + w.value + "'");
    parse_reals(require_entry(s, "seed"), 2, 2);
    positive_int("n");
    if (find_entry(s, "window")) positive_int("window");
  } else {
    const Entry& src = require_entry(s, "source");
    if (!measure_specs_.count(src.value)) {
      throw ConfigError(src.line, "source", "unknown measure '" + src.value + "' (define it earlier in the file)");
    }
    if (k == "pushforward") {
      const Entry& w = require_entry(s, "word");
      if (!words_.count(w.value)) {
        throw ConfigError(w.line, "word", "unknown word '" + w.value + "'");
      }
    }
  }
  measure_specs_[s.name] = s;
}

void Scenario::add_analysis(const Section& s) {
  Analysis a;
  a.name = s.name;
  a.line = s.line;
  const Entry& type = require_entry(s, "type");
  a.type = type.value;
  const auto& tables = analysis_tables();
  const auto tt = tables.find(a.type);
  if (tt == tables.end()) throw ConfigError(type.line, "type", "unknown analysis type '" + a.type + "'");

  auto resolve_word = [&](const std::string& n, const Entry& e) {
    if (!words_.count(n)) throw ConfigError(e.line, e.key, "unknown word '" + n + "'");
  };
  std::set<std::string> seen;
  for (const auto& e : s.entries) {
    if (e.key == "type") continue;
    if (!seen.insert(e.key).second) throw ConfigError(e.line, e.key, "given more than once");
    const auto spec = std::find_if(tt->second.begin(), tt->second.end(), [&](const ParamSpec& p) { return p.key == e.key; });
    if (spec == tt->second.end()) throw ConfigError(e.line, e.key, "not a parameter of '" + a.type + "' analyses");
    const auto ts = tokens(e.value);
    auto single = [&]() -> const std::string& {
      if (ts.size() != 1) throw ConfigError(e.line, e.key, "expected a single value");
      return ts[0];
    };
    switch (spec->kind) {
      case Kind::integer: a.params[e.key] = parse_int(single(), e.line, e.key); break;
      case Kind::real: a.params[e.key] = parse_real(single(), e.line, e.key); break;
      case Kind::boolean: a.params[e.key] = parse_bool(single(), e.line, e.key); break;
      case Kind::word: resolve_word(single(), e); a.params[e.key] = single(); break;
      case Kind::words:
        for (const auto& t : ts) resolve_word(t, e);
        a.params[e.key] = ts;
        break;
      case Kind::measure:
        if (!measure_specs_.count(single())) throw ConfigError(e.line, e.key, "unknown measure '" + single() + "'");
        a.params[e.key] = single();
        break;
      case Kind::reals: {
        std::vector<double> v;
        for (const auto& t : ts) v.push_back(parse_real(t, e.line, e.key));
        a.params[e.key] = v;
        break;
      }
      case Kind::ints: {
        std::vector<std::int64_t> v;
        for (const auto& t : ts) v.push_back(parse_int(t, e.line, e.key));
        a.params[e.key] = v;
        break;
      }
      case Kind::choice:
        if (std::find(spec->choices.begin(), spec->choices.end(), single()) == spec->choices.end()) {
          std::string opts;
          for (const auto& c : spec->choices) opts += (opts.empty() ? "" : ", ") + c;
          throw ConfigError(e.line, e.key, "'" + single() + "' is not one of: " + opts);
        }
        a.params[e.key] = single();
        break;
    }
    a.raw.push_back(e);
  }
  for (const auto& req : required_params().at(a.type)) {
    if (!a.params.count(req)) throw ConfigError(s.line, req, "required by '" + a.type + "' analysis '" + a.name + "'");
  }
  auto count_of = [&](const std::string& key) -> std::size_t {
    const auto it = a.params.find(key);
    if (it == a.params.end()) return 0;
    if (const auto* v = std::get_if<std::vector<double>>(&it->second)) return v->size();
    return 0;
  };
  auto line_of = [&](const std::string& key) {
    for (const auto& e : s.entries) {
      if (e.key == key) return e.line;
    }
    return s.line;
  };
  for (const char* key : {"expect_rotation", "expect_rho_bar", "orbit_rho", "orbit_w"}) {
    if (a.params.count(key) && count_of(key) != 2) throw ConfigError(line_of(key), key, "expected two numbers");
  }
  for (const char* key : {"expect_hull", "expect_contains"}) {
    if (a.params.count(key) && (count_of(key) == 0 || count_of(key) % 2 != 0)) {
      throw ConfigError(line_of(key), key, "expected x y pairs");
    }
  }
  if (a.params.count("declared")) {
    const auto& d = std::get<std::vector<std::int64_t>>(a.params.at("declared"));
    const auto& ext = a.params.count("extension") ? std::get<std::vector<std::string>>(a.params.at("extension"))
                                                  : std::vector<std::string>{};
    if (d.size() != 4 * ext.size()) {
      throw ConfigError(line_of("declared"), "declared", "expected 4 integers per extension word");
    }
  }
  if (a.type == "fixed-points" && a.params.count("franks") &&
      std::get<std::vector<std::string>>(a.params.at("words")).size() != 1) {
    throw ConfigError(line_of("franks"), "franks", "the Franks check needs exactly one word");
  }
  analyses_.push_back(std::move(a));
}

const LiftedWord& Scenario::word(const std::string& name) const {
  const auto it = words_.find(name);
  if (it == words_.end()) throw InvalidArgument("unknown word '" + name + "'");
  return it->second;
}

const EmpiricalMeasure& Scenario::measure(const std::string& name) const {
  if (const auto it = measure_cache_.find(name); it != measure_cache_.end()) return *it->second;
  const Section& s = measure_specs_.at(name);
  auto get = [&](const std::string& key) { return *find_entry(s, key); };
  auto reals = [&](const std::string& key, std::size_t n) { return parse_reals(get(key), n, n); };
  auto integer = [&](const std::string& key) { return parse_int(get(key).value, get(key).line, key); };
  const std::string kind = get("kind").value;
  std::shared_ptr<EmpiricalMeasure> mu;
  if (kind == "grid") {
    Vec2 off{};
    if (find_entry(s, "offset")) {
      const auto o = reals("offset", 2);
      off = {o[0], o[1]};
    }
    mu = std::make_shared<EmpiricalMeasure>(EmpiricalMeasure::uniform_grid(static_cast<int>(integer("n")), off));
  } else if (kind == "circle-x") {
    mu = std::make_shared<EmpiricalMeasure>(EmpiricalMeasure::circle_x(reals("x", 1)[0], static_cast<int>(integer("n"))));
  } else if (kind == "circle-y") {
    mu = std::make_shared<EmpiricalMeasure>(EmpiricalMeasure::circle_y(reals("y", 1)[0], static_cast<int>(integer("n"))));
  } else if (kind == "dirac") {
    const auto p = reals("point", 2);
    mu = std::make_shared<EmpiricalMeasure>(EmpiricalMeasure::dirac(TorusPoint::from({p[0], p[1]})));
  } else if (kind == "atoms") {
    std::vector<Atom> atoms;
    for (const auto& e : s.entries) {
      if (e.key != "atom") continue;
      const auto v = parse_reals(e, 2, 3);
      atoms.push_back({TorusPoint::from({v[0], v[1]}), v.size() == 3 ? v[2] : 1.0});
    }
    mu = std::make_shared<EmpiricalMeasure>(std::move(atoms));
  } else if (kind == "orbit") {
    const auto seed = reals("seed", 2);
    const std::int64_t n = integer("n");
    const std::int64_t window = find_entry(s, "window") ? integer("window") : n;
    mu = std::make_shared<EmpiricalMeasure>(
        krylov_bogolyubov(group_, word(get("word").value).word, TorusPoint::from({seed[0], seed[1]}), n, window).measure);
  } else if (kind == "pushforward") {
    mu = std::make_shared<EmpiricalMeasure>(pushforward(group_, word(get("word").value).word, measure(get("source").value)));
  } else {
    mu = std::make_shared<EmpiricalMeasure>(sigma_symmetrize(measure(get("source").value)));
  }
  measure_cache_[name] = mu;
  return *mu;
}

std::string render_json(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace rotor
