#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "rotor/covers.hpp"
#include "rotor/errors.hpp"
#include "rotor/fixed_points.hpp"
#include "rotor/geometry.hpp"
#include "rotor/ginv.hpp"
#include "rotor/scenario.hpp"
#include "rotor/verify.hpp"

namespace rotor {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

json vec(const Vec2& v) { return json::array({v.x, v.y}); }

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class T>
std::optional<T> param(const Analysis& a, const std::string& key) {
  const auto it = a.params.find(key);
  if (it == a.params.end()) return std::nullopt;
  return std::get<T>(it->second);
}

template <class T>
T param_or(const Analysis& a, const std::string& key, T fallback) {
  return param<T>(a, key).value_or(std::move(fallback));
}

int int_param(const Analysis& a, const std::string& key, int fallback, int lo, int hi) {
  const auto v = param<std::int64_t>(a, key).value_or(fallback);
  if (v < lo || v > hi) {
    throw InvalidArgument(key + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return static_cast<int>(v);
}

std::vector<Vec2> pairs(const std::vector<double>& v) {
  std::vector<Vec2> out;
  for (std::size_t i = 0; i + 1 < v.size(); i += 2) out.push_back({v[i], v[i + 1]});
  return out;
}

struct Checks {
  json list = json::array();
  bool all = true;
  void add(const std::string& name, json expected, json actual, bool passed) {
    list.push_back({{"check", name}, {"expected", std::move(expected)}, {"actual", std::move(actual)}, {"passed", passed}});
    all = all && passed;
  }
};

class Table {
 public:
  Table(const fs::path& path, const std::string& header) : out_(path, std::ios::binary) {
    if (!out_) throw InvalidArgument("cannot write '" + path.string() + "'");
    out_ << header << '\n';
  }
  template <class... Cells>
  void row(const Cells&... cells) {
    std::string line;
    ((line += (line.empty() ? "" : ",") + cell(cells)), ...);
    out_ << line << '\n';
  }

 private:
  static std::string cell(double v) { return num(v); }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(std::size_t v) { return std::to_string(v); }
  static std::string cell(const std::string& v) { return v; }
  static std::string cell(const char* v) { return v; }
  std::ofstream out_;
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + path.string() + "'");
  out << text;
}

std::string hull_svg(const std::vector<Vec2>& samples, const std::vector<Vec2>& hull) {
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& p : samples) {
    x0 = std::min(x0, p.x), x1 = std::max(x1, p.x), y0 = std::min(y0, p.y), y1 = std::max(y1, p.y);
  }
  if (samples.empty()) x0 = y0 = 0.0, x1 = y1 = 1.0;
  const double span = std::max({x1 - x0, y1 - y0, 1e-3});
  const double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1), scale = 400.0 / (1.2 * span);
  auto px = [&](const Vec2& p) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f,%.3f", 240.0 + (p.x - cx) * scale, 240.0 - (p.y - cy) * scale);
    return std::string(buf);
  };
  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"480\" viewBox=\"0 0 480 480\">\n";
  s += "<rect width=\"480\" height=\"480\" fill=\"white\"/>\n";
  for (const auto& p : samples) {
    const auto c = px(p);
    const auto comma = c.find(',');
    s += "<circle cx=\"" + c.substr(0, comma) + "\" cy=\"" + c.substr(comma + 1) + "\" r=\"1.5\" fill=\"steelblue\"/>\n";
  }
  std::string pts;
  for (const auto& p : hull) pts += (pts.empty() ? "" : " ") + px(p);
  if (!hull.empty()) pts += " " + px(hull.front());
  s += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n</svg>\n";
  return s;
}

void write_measure(const fs::path& path, const EmpiricalMeasure& mu) {
  Table t(path, "x,y,weight");
  for (const auto& a : mu.atoms()) t.row(a.p.x, a.p.y, a.w);
}

// ---------------------------------------------------------------------------

json classify(const Scenario& s, const Analysis& a, Checks& checks) {
  std::vector<MCGClass> classes;
  json cj = json::array();
  const auto names = *param<std::vector<std::string>>(a, "words");
  for (const auto& name : names) {
    const MCGClass m = s.group().linear_part(s.word(name).word);
    classes.push_back(m);
    const auto ord = torsion_order(m);
    cj.push_back({{"word", name},
                  {"class", m.str()},
                  {"spectral", to_string(spectral_class(m).tag)},
                  {"order", ord ? json(*ord) : json(nullptr)}});
  }
  json r;
  r["classes"] = cj;
  const ClosureResult cl = closure(classes);
  r["closure"] = {{"finite", !cl.infinite}, {"order", cl.infinite ? json(nullptr) : json(cl.elements.size())}};

  const SubgroupForm f = classify_nilpotent(classes);
  json chain = json::array();
  for (const auto& m : f.commutator_chain) chain.push_back(m.str());
  r["form"] = {{"tag", to_string(f.tag)},
               {"finite", f.finite},
               {"order", f.finite ? json(f.order) : json(nullptr)},
               {"generator", f.generator ? json(f.generator->str()) : json(nullptr)},
               {"conjugator", f.conjugator ? json(f.conjugator->str()) : json(nullptr)},
               {"commutator_chain", chain},
               {"note", f.note}};

  std::optional<bool> satisfied;
  try {
    const StarStarVerdict v = check_condition_star_star(classes);
    json witness = json::array();
    for (const auto& w : v.witness) witness.push_back(w.str());
    satisfied = v.satisfied;
    r["condition"] = {{"satisfied", v.satisfied}, {"failure", to_string(v.failure)}, {"witness", witness}};
  } catch (const NotNilpotent& e) {
    r["condition"] = {{"satisfied", nullptr}, {"note", e.what()}};
  }
  std::optional<int> index;
  try {
    const FiniteIndexResult fi = finite_index_subgroup(classes);
    json hg = json::array();
    for (const auto& m : fi.h_generators) hg.push_back(m.str());
    index = fi.index;
    r["finite_index"] = {{"index", fi.index},
                         {"quotient", fi.quotient},
                         {"h_generators", hg},
                         {"within_c6", fi.within_c6},
                         {"within_d4", fi.within_d4}};
  } catch (const Error& e) {
    r["finite_index"] = {{"note", e.what()}};
  }

  if (const auto t = param<std::string>(a, "expect_tag")) checks.add("tag", *t, to_string(f.tag), *t == to_string(f.tag));
  if (const auto c = param<bool>(a, "expect_condition")) {
    checks.add("condition", *c, satisfied ? json(*satisfied) : json(nullptr), satisfied == *c);
  }
  if (const auto o = param<std::int64_t>(a, "expect_order")) {
    const bool ok = !cl.infinite && static_cast<std::int64_t>(cl.elements.size()) == *o;
    checks.add("order", *o, cl.infinite ? json("infinite") : json(cl.elements.size()), ok);
  }
  if (const auto i = param<std::int64_t>(a, "expect_index")) {
    checks.add("index", *i, index ? json(*index) : json(nullptr), index && *index == *i);
  }
  return r;
}

json rotation_set(const Scenario& s, const Analysis& a, const fs::path& out, Checks& checks,
                  std::vector<fs::path>& files) {
  const LiftedWord& lw = s.word(*param<std::string>(a, "word"));
  const int seeds_n = int_param(a, "seeds", 16, 1, 1024);
  const std::int64_t n = param_or<std::int64_t>(a, "n", 1000);
  if (n < 1) throw InvalidArgument("n must be >= 1");
  const auto conv = param_or<std::string>(a, "convention", "isotopic") == "fundamental-domain"
                        ? DisplacementConvention::fundamental_domain
                        : DisplacementConvention::isotopic;
  const auto seeds = seed_grid(seeds_n);
  const RotationSetEstimate est = estimate_rotation_set(s.group(), lw, seeds, n, conv);

  json r;
  r["n"] = n;
  r["seeds"] = seeds.size();
  r["convention"] = conv == DisplacementConvention::isotopic ? "isotopic" : "fundamental-domain";
  json hull = json::array();
  for (const auto& v : est.hull) hull.push_back(vec(v));
  r["hull"] = hull;
  r["hull_diameter"] = diameter(est.hull);
  r["hull_centroid"] = vec(centroid(est.hull));

  const fs::path samples = out / (a.name + "_samples.csv"), hull_csv = out / (a.name + "_hull.csv"),
                 svg = out / (a.name + "_hull.svg");
  {
    Table t(samples, "seed_x,seed_y,rho_x,rho_y");
    for (std::size_t i = 0; i < seeds.size(); ++i) t.row(seeds[i].x, seeds[i].y, est.samples[i].x, est.samples[i].y);
    Table h(hull_csv, "x,y");
    for (const auto& v : est.hull) h.row(v.x, v.y);
  }
  write_text(svg, hull_svg(est.samples, est.hull));
  files.insert(files.end(), {samples, hull_csv, svg});

  std::optional<Vec2> rho;
  if (const auto m = param<std::string>(a, "measure")) {
    rho = rotation_vector(s.group(), s.measure(*m), lw);
    r["rotation_vector"] = vec(*rho);
  }
  std::optional<bool> irrotational;
  if (const auto tol = param<double>(a, "irrotational_tol")) {
    const IrrotationalResult ir = irrotational_lift(s.group(), lw, seeds, n, *tol);
    irrotational = ir.lift.has_value();
    r["irrotational"] = {{"found", *irrotational},
                         {"shift", ir.lift ? json::array({ir.shift.x, ir.shift.y}) : json(nullptr)},
                         {"tol", *tol}};
  }

  if (const auto eh = param<std::vector<double>>(a, "expect_hull")) {
    const double tol = param_or<double>(a, "expect_hausdorff", s.tolerances().hull);
    const double d = hausdorff_convex(est.hull, pairs(*eh));
    checks.add("hull_hausdorff", json{{"at_most", tol}}, d, d <= tol);
  }
  if (const auto er = param<std::vector<double>>(a, "expect_rotation")) {
    const double tol = param_or<double>(a, "expect_tol", s.tolerances().rotation);
    if (!rho) throw InvalidArgument("expect_rotation needs a measure");
    const double d = (*rho - Vec2{(*er)[0], (*er)[1]}).norm();
    checks.add("rotation_vector", json{{"value", *er}, {"tol", tol}}, vec(*rho), d <= tol);
  }
  if (const auto ei = param<bool>(a, "expect_irrotational")) {
    if (!irrotational) throw InvalidArgument("expect_irrotational needs irrotational_tol");
    checks.add("irrotational", *ei, *irrotational, *ei == *irrotational);
  }
  return r;
}

json invariant_measure(const Scenario& s, const Analysis& a, const fs::path& out, Checks& checks,
                       std::vector<fs::path>& files) {
  GroupSpec spec;
  for (const auto& w : param_or<std::vector<std::string>>(a, "base", {})) spec.g0.push_back(s.word(w).word);
  for (const auto& w : param_or<std::vector<std::string>>(a, "extension", {})) spec.extension.push_back(s.word(w).word);
  const auto declared = param_or<std::vector<std::int64_t>>(a, "declared", {});
  for (std::size_t i = 0; i + 3 < declared.size(); i += 4) {
    spec.declared.push_back(MCGClass::from(declared[i], declared[i + 1], declared[i + 2], declared[i + 3]));
  }
  std::vector<TrackedLift> tracked;
  for (const auto& w : param_or<std::vector<std::string>>(a, "track", {})) tracked.push_back({w, s.word(w)});
  ConstructionOptions opt;
  opt.averaging_length = int_param(a, "length", opt.averaging_length, 1, 1 << 20);
  opt.max_doublings = int_param(a, "doublings", opt.max_doublings, 0, 10);
  opt.tol = param_or<double>(a, "tol", s.tolerances().defect);
  opt.force = param_or<bool>(a, "force", false);
  const EmpiricalMeasure& mu0 = s.measure(*param<std::string>(a, "measure"));

  json r;
  std::optional<ConstructionTrace> trace;
  bool refused = false;
  try {
    trace = construct_invariant(s.group(), spec, tracked, mu0, opt);
  } catch (const ConditionStarStarViolated& e) {
    if (!param<bool>(a, "expect_refused").value_or(false)) throw;
    refused = true;
    r["refused"] = true;
    r["reason"] = e.what();
  }
  if (const auto er = param<bool>(a, "expect_refused")) checks.add("refused", *er, refused, *er == refused);
  if (!trace) return r;

  r["refused"] = false;
  r["condition"] = {{"satisfied", trace->condition_satisfied}, {"note", trace->condition_note}, {"forced", trace->forced}};
  json stages = json::array();
  for (std::size_t j = 0; j < trace->measures.size(); ++j) {
    json rot = json::object();
    for (std::size_t k = 0; k < tracked.size(); ++k) rot[tracked[k].name] = vec(trace->rotations[j][k]);
    stages.push_back({{"stage", j},
                      {"length", trace->stage_lengths[j]},
                      {"atoms", trace->measures[j].size()},
                      {"defect", trace->stage_defects[j]},
                      {"rotations", rot}});
  }
  r["stages"] = stages;
  r["final_defects"] = trace->final_defects;
  r["final_defect"] = trace->final_defect;

  const fs::path mcsv = out / (a.name + "_measure.csv"), scsv = out / (a.name + "_stages.csv");
  write_measure(mcsv, trace->measures.back());
  {
    Table t(scsv, "stage,lift,rho_x,rho_y");
    for (std::size_t j = 0; j < trace->measures.size(); ++j) {
      for (std::size_t k = 0; k < tracked.size(); ++k) {
        t.row(j, tracked[k].name, trace->rotations[j][k].x, trace->rotations[j][k].y);
      }
    }
  }
  files.insert(files.end(), {mcsv, scsv});

  const double tol = param_or<double>(a, "expect_tol", s.tolerances().rotation);
  if (const auto er = param<std::vector<double>>(a, "expect_rotation")) {
    if (tracked.empty()) throw InvalidArgument("expect_rotation needs a tracked lift");
    const Vec2 got = trace->rotations.back()[0];
    checks.add("final_rotation", json{{"value", *er}, {"tol", tol}}, vec(got),
               (got - Vec2{(*er)[0], (*er)[1]}).norm() <= tol);
  }
  if (const auto ep = param<bool>(a, "expect_preserved")) {
    double drift = 0.0;
    for (const auto& stage : trace->rotations) {
      for (std::size_t k = 0; k < stage.size(); ++k) drift = std::max(drift, (stage[k] - trace->rotations[0][k]).norm());
    }
    checks.add("rotation_preserved", json{{"value", *ep}, {"tol", tol}}, json{{"max_drift", drift}},
               (drift <= tol) == *ep);
  }
  return r;
}

json fixed_points(const Scenario& s, const Analysis& a, const fs::path& out, Checks& checks,
                  std::vector<fs::path>& files) {
  const auto names = *param<std::vector<std::string>>(a, "words");
  const int grid = int_param(a, "grid", 64, 8, 4096);
  const double tol = param_or<double>(a, "tol", s.tolerances().fixed);
  const bool lift = param_or<bool>(a, "lift", false);
  FixedPointReport rep;
  std::string mode;
  if (names.size() > 1) {
    std::vector<Word> ws;
    for (const auto& n : names) ws.push_back(s.word(n).word);
    rep = common_fixed_points(s.group(), ws, grid, tol);
    mode = "common";
  } else if (lift) {
    rep = find_lift_fixed_points(s.group(), s.word(names[0]), grid, tol);
    mode = "lift";
  } else {
    rep = find_fixed_points(s.group(), s.word(names[0]).word, grid, tol);
    attach_indices(s.group(), s.word(names[0]).word, rep, param_or<double>(a, "index_radius", 0.05),
                   int_param(a, "index_samples", 64, 8, 1 << 16));
    mode = "single";
  }

  json r;
  r["mode"] = mode;
  r["grid"] = rep.grid_n;
  r["tol"] = rep.tol;
  r["all_fixed"] = rep.all_fixed;
  json pts = json::array();
  int index_sum = 0;
  bool all_indexed = !rep.points.empty();
  for (const auto& p : rep.points) {
    pts.push_back({{"point", vec(p.p.lift())}, {"residual", p.residual}, {"index", p.index ? json(*p.index) : json(nullptr)}});
    if (p.index) index_sum += *p.index;
    else all_indexed = false;
  }
  r["points"] = pts;
  json chains = json::array();
  for (const auto& c : rep.chains) {
    double rx0 = INFINITY, rx1 = -INFINITY, ry0 = INFINITY, ry1 = -INFINITY, res = 0.0;
    for (const auto& n : c.nodes) {
      rx0 = std::min(rx0, n.p.x), rx1 = std::max(rx1, n.p.x), ry0 = std::min(ry0, n.p.y), ry1 = std::max(ry1, n.p.y);
      res = std::max(res, n.residual);
    }
    chains.push_back({{"grid_cells", c.grid_cells},
                      {"nodes", c.nodes.size()},
                      {"x_range", json::array({rx0, rx1})},
                      {"y_range", json::array({ry0, ry1})},
                      {"max_residual", res}});
  }
  r["chains"] = chains;
  if (all_indexed) r["index_sum"] = index_sum;

  const fs::path csv = out / (a.name + "_fixed.csv");
  {
    Table t(csv, "kind,component,x,y,residual,index");
    for (const auto& p : rep.points) t.row("point", "", p.p.x, p.p.y, p.residual, p.index ? std::to_string(*p.index) : "");
    for (std::size_t i = 0; i < rep.chains.size(); ++i) {
      for (const auto& n : rep.chains[i].nodes) t.row("chain", i, n.p.x, n.p.y, n.residual, "");
    }
  }
  files.push_back(csv);

  std::optional<std::string> verdict;
  if (const auto m = param<std::string>(a, "franks")) {
    const FranksCertificate c =
        franks_certificate(s.group(), s.word(names[0]).word, s.measure(*m), param_or<double>(a, "franks_tol", s.tolerances().defect));
    verdict = c.verdict;
    r["franks"] = {{"measure", *m},
                   {"defect", c.defect},
                   {"rho", vec(c.rho)},
                   {"nearest_lattice", json::array({c.nearest.x, c.nearest.y})},
                   {"rho_distance", c.rho_distance},
                   {"rho_zero", c.rho_zero},
                   {"proxy_spread", c.proxy_spread},
                   {"proxy_pass", c.proxy_pass},
                   {"fixed_points", c.fixed.points.size()},
                   {"fixed_chains", c.fixed.chains.size()},
                   {"support_distance", c.support_distance ? json(*c.support_distance) : json(nullptr)},
                   {"verdict", c.verdict},
                   {"note", c.note}};
  }

  if (const auto e = param<std::int64_t>(a, "expect_points")) {
    checks.add("isolated_points", *e, rep.points.size(), static_cast<std::int64_t>(rep.points.size()) == *e);
  }
  if (const auto e = param<std::int64_t>(a, "expect_chains")) {
    checks.add("chains", *e, rep.chains.size(), static_cast<std::int64_t>(rep.chains.size()) == *e);
  }
  if (const auto e = param<bool>(a, "expect_nonempty")) checks.add("nonempty", *e, !rep.empty(), *e == !rep.empty());
  if (const auto e = param<std::vector<double>>(a, "expect_contains")) {
    const double spacing = 1.5 / grid;
    for (const auto& q : pairs(*e)) {
      double best = INFINITY;
      for (const auto& p : rep.points) best = std::min(best, torus_diff(p.p, TorusPoint::from(q)).norm());
      bool near_chain = false;
      for (const auto& c : rep.chains) {
        for (const auto& n : c.nodes) near_chain = near_chain || torus_diff(n.p, TorusPoint::from(q)).norm() <= spacing;
      }
      const bool ok = rep.all_fixed || best <= 1e-6 || near_chain;
      checks.add("contains", vec(q), json{{"nearest_isolated", std::isfinite(best) ? json(best) : json(nullptr)},
                                          {"near_chain", near_chain}},
                 ok);
    }
  }
  if (const auto e = param<std::int64_t>(a, "expect_index_sum")) {
    checks.add("index_sum", *e, all_indexed ? json(index_sum) : json(nullptr), all_indexed && index_sum == *e);
  }
  if (const auto e = param<std::string>(a, "expect_verdict")) {
    if (!verdict) throw InvalidArgument("expect_verdict needs a franks measure");
    checks.add("franks_verdict", *e, *verdict, *e == *verdict);
  }
  return r;
}

json rotev(const Scenario& s, const Analysis& a, Checks& checks) {
  const LiftedWord& g = s.word(*param<std::string>(a, "g"));
  const LiftedWord& h = s.word(*param<std::string>(a, "h"));
  const EmpiricalMeasure& mu = s.measure(*param<std::string>(a, "measure"));
  const double tol = param_or<double>(a, "tol", s.tolerances().rotev);
  std::vector<std::int64_t> ps = param_or<std::vector<std::int64_t>>(a, "p", {-5, -4, -3, -2, -1, 1, 2, 3, 4, 5});
  json rows = json::array();
  double worst = 0.0;
  for (const auto p : ps) {
    if (p == 0 || p < -64 || p > 64) throw InvalidArgument("p must be non-zero with |p| <= 64");
    const RotevResult res = rotev_residual(s.group(), g, h, mu, p);
    worst = std::max(worst, res.residual.norm());
    rows.push_back({{"p", p}, {"lhs", vec(res.lhs)}, {"rhs", vec(res.rhs)}, {"residual", res.residual.norm()}});
  }
  json r;
  r["class"] = s.group().linear_part(g.word).str();
  r["rows"] = rows;
  r["max_residual"] = worst;
  checks.add("residual", json{{"at_most", tol}}, worst, worst <= tol);

  const auto rho = param<std::vector<double>>(a, "orbit_rho");
  const auto w = param<std::vector<double>>(a, "orbit_w");
  if (rho || w) {
    const int P = int_param(a, "orbit_length", 1000, 2, 1'000'000);
    const Vec2 r0 = rho ? Vec2{(*rho)[0], (*rho)[1]} : Vec2{};
    const Vec2 w0 = w ? Vec2{(*w)[0], (*w)[1]} : Vec2{};
    const BoundedOrbit o = bounded_orbit_check(s.group().linear_part(g.word), r0, w0, P);
    r["orbit"] = {{"rho0", vec(r0)},
                  {"w", vec(w0)},
                  {"length", P},
                  {"bounded", o.bounded},
                  {"max_norm", std::isfinite(o.max_norm) ? json(o.max_norm) : json(nullptr)}};
    if (const auto eb = param<bool>(a, "expect_bounded")) checks.add("bounded", *eb, o.bounded, *eb == o.bounded);
  } else if (param<bool>(a, "expect_bounded")) {
    throw InvalidArgument("expect_bounded needs orbit_rho or orbit_w");
  }
  return r;
}

json klein(const Scenario& s, const Analysis& a, Checks& checks) {
  const LiftedWord& lw = s.word(*param<std::string>(a, "word"));
  const int grid = int_param(a, "grid", 32, 1, 4096);
  const double tol = param_or<double>(a, "tol", s.tolerances().sigma);
  const double defect = check_sigma_commute(s.group(), lw.word, grid);
  const bool equivariant = defect <= tol;
  json r;
  r["grid"] = grid;
  r["defect"] = defect;
  r["equivariant"] = equivariant;
  std::optional<RhoBar> bar;
  if (const auto m = param<std::string>(a, "measure")) {
    const EmpiricalMeasure& mu = s.measure(*m);
    if (equivariant) {
      bar = rho_bar(s.group(), mu, lw, tol);
      r["rho"] = vec(bar->rho);
      r["rho_bar"] = vec({bar->a, bar->b});
      r["rho_sigma"] = vec(rotation_vector(s.group(), sigma_pushforward(mu), lw));
      if (param_or<bool>(a, "symmetrize", true)) {
        r["rho_mu_tau"] = vec(rotation_vector(s.group(), sigma_symmetrize(mu), lw));
      }
    } else {
      r["rho_bar"] = nullptr;
      r["note"] = "map does not commute with sigma at this tolerance";
    }
  }
  const double etol = param_or<double>(a, "expect_tol", s.tolerances().rotation);
  if (const auto e = param<bool>(a, "expect_equivariant")) checks.add("equivariant", *e, equivariant, *e == equivariant);
  if (const auto e = param<double>(a, "expect_defect")) {
    checks.add("defect", json{{"value", *e}, {"tol", etol}}, defect, std::abs(defect - *e) <= etol);
  }
  if (const auto e = param<std::vector<double>>(a, "expect_rho_bar")) {
    const bool ok = bar && std::abs(circle_diff(bar->a, (*e)[0])) <= etol && std::abs(bar->b - (*e)[1]) <= etol;
    checks.add("rho_bar", json{{"value", *e}, {"tol", etol}}, bar ? vec({bar->a, bar->b}) : json(nullptr), ok);
  }
  return r;
}

json verify_analysis(const Analysis& a, Checks& checks) {
  const auto ids = param_or<std::vector<std::int64_t>>(a, "criteria", {});
  std::vector<CriterionResult> results;
  for (const auto& c : criteria()) {
    if (!ids.empty() && std::find(ids.begin(), ids.end(), c.id) == ids.end()) continue;
    results.push_back(run_criterion(c));
    checks.add("criterion " + std::to_string(c.id), true, results.back().passed, results.back().passed);
  }
  for (const auto id : ids) {
    if (id < 1 || id > static_cast<std::int64_t>(criteria().size())) throw InvalidArgument("unknown criterion " + std::to_string(id));
  }
  return suite_report(results);
}

std::string error_kind(const std::string& what) {
  const auto colon = what.find(':');
  return colon == std::string::npos ? "Error" : what.substr(0, colon);
}

}  // namespace

AnalysisOutcome run_analysis(const Scenario& s, const Analysis& a, const fs::path& out) {
  fs::create_directories(out);
  AnalysisOutcome o{a.name, a.type, "ok", {}};
  json report;
  report["analysis"] = a.name;
  report["type"] = a.type;
  json params = json::object();
  for (const auto& e : a.raw) params[e.key] = e.value;
  report["parameters"] = params;

  Checks checks;
  json result;
  std::vector<fs::path> files;
  try {
    if (a.type == "classify") result = classify(s, a, checks);
    else if (a.type == "rotation-set") result = rotation_set(s, a, out, checks, files);
    else if (a.type == "invariant-measure") result = invariant_measure(s, a, out, checks, files);
    else if (a.type == "fixed-points") result = fixed_points(s, a, out, checks, files);
    else if (a.type == "rotev") result = rotev(s, a, checks);
    else if (a.type == "klein") result = klein(s, a, checks);
    else result = verify_analysis(a, checks);
    o.status = checks.all ? "ok" : "failed";
  } catch (const std::exception& e) {
    o.status = "error";
    report["error"] = {{"kind", error_kind(e.what())}, {"message", e.what()}};
  }
  report["status"] = o.status;
  report["result"] = result.is_null() ? json::object() : result;
  report["checks"] = checks.list;
  json fj = json::array();
  for (const auto& f : files) fj.push_back(f.filename().string());
  report["files"] = fj;

  const fs::path jpath = out / (a.name + ".json");
  write_text(jpath, render_json(report));
  o.files.push_back(jpath);
  o.files.insert(o.files.end(), files.begin(), files.end());
  return o;
}

int run_scenario(const Scenario& s, const std::string& type, const fs::path& out, std::ostream& log) {
  bool any = false, all_ok = true;
  for (const auto& a : s.analyses()) {
    if (!type.empty() && a.type != type) continue;
    any = true;
    const AnalysisOutcome o = run_analysis(s, a, out);
    all_ok = all_ok && o.status == "ok";
    log << (o.status == "ok" ? "ok     " : o.status == "failed" ? "FAILED " : "ERROR  ") << a.name << " (" << a.type
        << ") -> " << o.files.front().string() << '\n';
  }
  if (!any) {
    throw ConfigError(0, "type", type.empty() ? "scenario defines no analyses"
                                              : "scenario defines no '" + type + "' analyses");
  }
  return all_ok ? 0 : 1;
}

int run_verify(const std::vector<std::int64_t>& ids, const fs::path& out, const std::string& file, std::ostream& log) {
  for (const auto id : ids) {
    if (id < 1 || id > static_cast<std::int64_t>(criteria().size())) {
      throw ConfigError(0, "criteria", "unknown criterion " + std::to_string(id));
    }
  }
  std::vector<CriterionResult> results;
  for (const auto& c : criteria()) {
    if (!ids.empty() && std::find(ids.begin(), ids.end(), c.id) == ids.end()) continue;
    results.push_back(run_criterion(c));
    log << (results.back().passed ? "PASS" : "FAIL") << " C" << c.id << ' ' << c.name << '\n';
  }
  fs::create_directories(out);
  const json report = suite_report(results);
  write_text(out / file, render_json(report));
  log << "report -> " << (out / file).string() << '\n';
  return report["passed"].get<bool>() ? 0 : 1;
}

}  // namespace rotor
