#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "wittkit/error.hpp"
#include "wittkit/geometry.hpp"
#include "wittkit/jets.hpp"
#include "wittkit/lab.hpp"
#include "wittkit/witt.hpp"

namespace wittkit::cli {

namespace {

using json = nlohmann::json;

struct Options {
  unsigned p = 2;
  unsigned n = 1;
  std::string ring;
  std::uint64_t seed = 1;
  bool json = false;
  unsigned degree_bound = 3;
  std::vector<std::string> args;
  unsigned m = 1;
  std::optional<unsigned> i;
  std::string f;
  unsigned times = 1;
  std::string lengths;
  std::string order;
  std::string scheme;
};

Error parse_error(const std::string& what) { return Error(ErrorKind::kParse, what); }

// ------------------------------------------------------------------ inputs

json read_json(const std::string& spec) {
  std::string text = spec;
  if (spec.empty() || (spec.front() != '{' && spec.front() != '[')) {
    std::ifstream in(spec);
    if (!in) throw parse_error("cannot read " + spec);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw parse_error(std::string("bad JSON: ") + e.what());
  }
}

Scalar base_from_json(const json& b) {
  if (b.is_string()) return Scalar::parse(b.get<std::string>());
  if (!b.is_object() || !b.contains("kind")) throw parse_error("bad base");
  const std::string kind = b.at("kind").get<std::string>();
  if (kind == "Integers") return Scalar::integers();
  if (kind == "IntegersMod") return Scalar::integers_mod(Integer(b.at("m").dump()));
  if (kind == "IntegersWithInverted") {
    std::vector<Integer> primes;
    for (const auto& q : b.at("primes")) primes.emplace_back(q.dump());
    return Scalar::integers_with_inverted(primes);
  }
  throw parse_error("unknown base kind " + kind);
}

RingPtr ring_from_json(const json& j) {
  try {
    Scalar base = j.contains("base") ? base_from_json(j.at("base")) : Scalar::integers();
    std::vector<std::string> vars = j.value("vars", std::vector<std::string>{});
    std::vector<std::string> rels = j.value("relations", std::vector<std::string>{});
    return FPRing::parse(base, vars, rels);
  } catch (const json::exception& e) {
    throw parse_error(std::string("bad ring: ") + e.what());
  }
}

RingPtr load_ring(const Options& o) {
  if (o.ring.empty()) return FPRing::integers();
  return ring_from_json(read_json(o.ring));
}

json ring_json(const RingPtr& r) {
  std::vector<std::string> rels;
  for (const auto& rel : r->relations()) rels.push_back(r->format(rel));
  return json{{"base", r->base().to_string()}, {"vars", r->vars()}, {"relations", rels}};
}

// "(a, b)", "a,b" or a JSON array of strings.
std::vector<std::string> split_vector(const std::string& text) {
  std::string s = text;
  auto trim = [](std::string x) {
    const auto b = x.find_first_not_of(" \t");
    const auto e = x.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : x.substr(b, e - b + 1);
  };
  s = trim(s);
  if (!s.empty() && s.front() == '[') {
    try {
      return json::parse(s).get<std::vector<std::string>>();
    } catch (const json::exception&) {
      throw parse_error("bad vector " + text);
    }
  }
  if (!s.empty() && s.front() == '(') {
    if (s.back() != ')') throw parse_error("unbalanced vector " + text);
    s = s.substr(1, s.size() - 2);
  }
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(trim(item));
  if (parts.empty() || std::any_of(parts.begin(), parts.end(), [](const auto& x) { return x.empty(); }))
    throw parse_error("bad vector " + text);
  return parts;
}

WittVec vector_arg(const WittCtx& ctx, const std::string& text) {
  auto comps = split_vector(text);
  if (comps.size() != ctx.length())
    throw Error(ErrorKind::kLengthError, "expected " + std::to_string(ctx.length()) +
                                             " components, got " + std::to_string(comps.size()));
  return WittVec::parse(ctx, comps);
}

const std::string& arg(const Options& o, std::size_t k) {
  if (o.args.size() <= k) throw parse_error("missing argument " + std::to_string(k + 1));
  return o.args[k];
}

void require_args(const Options& o, std::size_t k) {
  if (o.args.size() != k)
    throw parse_error("expected " + std::to_string(k) + " argument(s), got " + std::to_string(o.args.size()));
}

// ----------------------------------------------------------------- outputs

json witt_json(const WittVec& v) {
  return json{{"p", v.ctx().p}, {"n", v.ctx().n}, {"ring", ring_json(v.ctx().ring)},
              {"components", v.to_strings()}};
}

json nested_json(const NestedVec& v) {
  if (v.is_leaf()) return v.leaf().to_string();
  json a = json::array();
  for (const auto& c : v.components()) a.push_back(nested_json(c));
  return a;
}

std::vector<std::string> elem_strings(const std::vector<RingElem>& es) {
  std::vector<std::string> out;
  for (const auto& e : es) out.push_back(e.to_string());
  return out;
}

std::string scalar_text(const json& x) {
  if (x.is_string()) return x.get<std::string>();
  if (x.is_array()) {
    std::string s = "(";
    for (std::size_t k = 0; k < x.size(); ++k) s += (k ? ", " : "") + scalar_text(x[k]);
    return s + ")";
  }
  return x.dump();
}

void print_text(std::ostream& out, const json& j, const std::string& indent) {
  for (const auto& [key, val] : j.items()) {
    out << indent << key << ":";
    if (val.is_object()) {
      out << "\n";
      print_text(out, val, indent + "  ");
    } else if (val.is_array() && std::all_of(val.begin(), val.end(), [](const json& x) { return x.is_string(); })) {
      out << " (";
      for (std::size_t k = 0; k < val.size(); ++k) out << (k ? ", " : "") << val[k].get<std::string>();
      out << ")\n";
    } else if (val.is_array()) {
      out << "\n";
      for (const auto& x : val) {
        if (x.is_object()) {
          out << indent << "  -\n";
          print_text(out, x, indent + "    ");
        } else {
          out << indent << "  - " << scalar_text(x) << "\n";
        }
      }
    } else {
      out << " " << scalar_text(val) << "\n";
    }
  }
}

void emit(std::ostream& out, const Options& o, const json& j) {
  if (o.json)
    out << j.dump(2) << "\n";
  else
    print_text(out, j, "");
}

// --------------------------------------------------------------- commands

using Handler = std::function<int(const Options&, std::ostream&)>;

int witt_cmd(const std::string& verb, const Options& o, std::ostream& out) {
  const RingPtr ring = load_ring(o);
  const WittCtx ctx(o.p, o.n, ring);
  json j;
  if (verb == "add" || verb == "mul") {
    require_args(o, 2);
    WittVec u = vector_arg(ctx, arg(o, 0)), v = vector_arg(ctx, arg(o, 1));
    j = witt_json(verb == "add" ? w_add(u, v) : w_mul(u, v));
  } else if (verb == "ghost") {
    require_args(o, 1);
    GhostVec g = ghost(vector_arg(ctx, arg(o, 0)));
    j = json{{"p", o.p}, {"n", o.n}, {"ring", ring_json(ring)}, {"entries", elem_strings(g.entries())}};
  } else if (verb == "from-ghost") {
    require_args(o, 1);
    auto entries = split_vector(arg(o, 0));
    std::vector<RingElem> es;
    for (const auto& e : entries) es.push_back(RingElem::parse(ring, e));
    j = witt_json(from_ghost(ctx, es));
  } else if (verb == "teich") {
    require_args(o, 1);
    j = witt_json(teich(ctx, RingElem::parse(ring, arg(o, 0))));
  } else if (verb == "frob") {
    require_args(o, 1);
    j = witt_json(frob(vector_arg(ctx, arg(o, 0))));
  } else if (verb == "versch") {
    require_args(o, 1);
    j = witt_json(versch(vector_arg(ctx, arg(o, 0))));
  } else if (verb == "rgh") {
    require_args(o, 1);
    WittVec v = vector_arg(ctx, arg(o, 0));
    RingElem r = rgh(v);
    j = json{{"value", r.to_string()}, {"ring", ring_json(r.ring())}};
  } else if (verb == "alpha") {
    require_args(o, 1);
    AlphaImage a = alpha(vector_arg(ctx, arg(o, 0)));
    j = json{{"truncated", a.truncated.to_strings()}, {"top_ghost", a.top_ghost.to_string()}};
  } else if (verb == "section") {
    require_args(o, 2);
    WittVec w = vector_arg(ctx, arg(o, 0));
    j = witt_json(alpha_section(w, RingElem::parse(ring, arg(o, 1))));
  } else if (verb == "present-Z") {
    require_args(o, 0);
    auto pres = wittring_presentation_Z(o.p, o.n, 20, o.seed);
    json images = json::array();
    for (const auto& v : pres.images) images.push_back(v.to_strings());
    j = json{{"ring", ring_json(pres.ring)}, {"images", images}, {"verified", pres.verified}};
  } else if (verb == "localize") {
    require_args(o, 0);
    if (o.f.empty()) throw parse_error("localize needs --f");
    auto loc = witt_localized(ring, ring->parse_poly(o.f), o.p, o.n);
    j = json{{"ring", ring_json(loc.loc.ring)},
             {"teich_f", loc.teich_f.to_strings()},
             {"teich_inv", loc.teich_inv.to_strings()},
             {"certified", loc.certify()}};
  } else if (verb == "coplethysm") {
    require_args(o, 1);
    WittVec v = vector_arg(ctx, arg(o, 0));
    NestedVec nv = coplethysm(v, o.m);
    NestedCtx nctx = coplethysm_ctx(ctx, o.m);
    j = json{{"m", o.m}, {"nested", nested_json(nv)}, {"ghost_grid", elem_strings(nested_ghost(nctx, nv))}};
  } else if (verb == "big") {
    require_args(o, 1);
    std::map<unsigned, unsigned> lengths;
    for (const auto& part : split_vector(o.lengths.empty() ? "2:1,3:1" : o.lengths)) {
      auto colon = part.find(':');
      if (colon == std::string::npos) throw parse_error("bad --lengths entry " + part);
      try {
        lengths[std::stoul(part.substr(0, colon))] = std::stoul(part.substr(colon + 1));
      } catch (const std::exception&) {
        throw parse_error("bad --lengths entry " + part);
      }
    }
    std::vector<unsigned> order;
    if (o.order.empty()) {
      for (const auto& [q, len] : lengths) order.push_back(q);
    } else {
      for (const auto& part : split_vector(o.order)) {
        try {
          order.push_back(std::stoul(part));
        } catch (const std::exception&) {
          throw parse_error("bad --order entry " + part);
        }
      }
    }
    BigWittCtx bctx(lengths, order, ring);
    NestedVec v = nested_teich(bctx.nested(), RingElem::parse(ring, arg(o, 0)));
    json g = json::object();
    for (const auto& [d, e] : flatten_ghost(bctx, v)) g[d.get_str()] = e.to_string();
    j = json{{"order", order}, {"components", nested_json(v)}, {"ghost", g}};
  } else {
    throw parse_error("unknown witt verb " + verb);
  }
  emit(out, o, j);
  return kOk;
}

int jet_cmd(const std::string& verb, const Options& o, std::ostream& out) {
  const RingPtr ring = load_ring(o);
  json j;
  if (verb == "present") {
    require_args(o, 0);
    JetCtx ctx(o.p, o.n, ring);
    auto pres = jet_presentation(ctx);
    std::vector<std::string> rels;
    for (const auto& rel : pres.ring->relations()) rels.push_back(pres.ring->format(rel));
    j = json{{"p", o.p}, {"n", o.n}, {"vars", pres.ring->vars()}, {"relations", rels}};
  } else if (verb == "delta") {
    require_args(o, 1);
    JetCtx ctx(o.p, o.n, ring);
    auto names = ctx.var_names();
    Poly f = parse_poly(arg(o, 0), names);
    Poly d = delta_power(ctx, f, o.times);
    j = json{{"input", to_string(f, names)}, {"times", o.times}, {"delta", to_string(d, names)}};
  } else if (verb == "coghost") {
    require_args(o, 0);
    auto pres = jet_presentation(JetCtx(o.p, o.n, ring));
    RingHom h = o.i ? coghost(pres, *o.i) : coghost_total(pres);
    json images = json::object();
    for (std::size_t v = 0; v < h.domain()->nvars(); ++v)
      images[h.domain()->vars()[v]] = pres.ring->format(h.images()[v]);
    j = json{{"domain", ring_json(h.domain())}, {"images", images}};
  } else if (verb == "rcgh") {
    require_args(o, 0);
    auto pres = jet_presentation(JetCtx(o.p, o.n, ring));
    RingHom h = rcgh(pres);
    json images = json::object();
    for (std::size_t v = 0; v < ring->nvars(); ++v) images[ring->vars()[v]] = h.codomain()->format(h.images()[v]);
    j = json{{"base", h.codomain()->base().to_string()}, {"images", images}};
  } else if (verb == "greenberg") {
    require_args(o, 0);
    j = json{{"ring", ring_json(greenberg(ring, o.p))}};
  } else if (verb == "blowup") {
    require_args(o, 0);
    auto am = affine_modification(ring, o.p, o.n);
    std::vector<std::string> ideal;
    for (const auto& g : am.ideal) ideal.push_back(am.base->format(g));
    j = json{{"base", ring_json(am.base)},
             {"ideal", ideal},
             {"modified", ring_json(am.modified)},
             {"torsion_free", am.torsion_free_certificate()},
             {"ideal_divisible", am.ideal_divisible()}};
  } else if (verb == "iso-check") {
    require_args(o, 0);
    auto blow = blowup_vs_jet_iso(ring, o.p, o.n);
    auto away = coghost_away_from_p(ring, o.p, o.n);
    j = json{{"blowup", {{"passed", blow.passed}, {"maps", blow.lines}}},
             {"away_from_p", {{"passed", away.passed}, {"maps", away.lines}}}};
  } else {
    throw parse_error("unknown jet verb " + verb);
  }
  emit(out, o, j);
  return kOk;
}

GluedScheme scheme_from_json(const json& j) {
  try {
    std::vector<RingPtr> charts;
    for (const auto& c : j.at("charts")) charts.push_back(ring_from_json(c));
    std::vector<OverlapSpec> specs;
    std::map<std::pair<std::size_t, std::size_t>, std::string> claimed_back;
    for (const auto& ov : j.value("overlaps", json::array())) {
      OverlapSpec s;
      s.i = ov.at("i").get<std::size_t>();
      s.j = ov.at("j").get<std::size_t>();
      s.f_ij = ov.at("f_ij").get<std::string>();
      s.inverse_name = ov.value("inverse", std::string("u"));
      for (const auto& [var, img] : ov.at("transition").items()) s.images.emplace_back(var, img.get<std::string>());
      if (ov.contains("f_ji")) claimed_back[{s.j, s.i}] = ov.at("f_ji").get<std::string>();
      specs.push_back(std::move(s));
    }
    GluedScheme x = GluedScheme::make(std::move(charts), specs);
    for (const auto& [key, text] : claimed_back) {
      const ChartOverlap* back = x.overlap(key.first, key.second);
      if (!back || !(back->f_ij == x.charts()[key.first]->parse_poly(text)))
        throw Error(ErrorKind::kInvalidArgument, "f_ji disagrees with the reverse overlap");
    }
    return x;
  } catch (const json::exception& e) {
    throw parse_error(std::string("bad scheme: ") + e.what());
  }
}

int scheme_cmd(const std::string& verb, const Options& o, std::ostream& out) {
  require_args(o, 0);
  json j;
  if (verb == "witt-space") {
    GluedScheme x = o.scheme.empty() ? GluedScheme::projective_line() : scheme_from_json(read_json(o.scheme));
    WittSpace ws = witt_space(x, o.p, o.n);
    json charts = json::array(), overlaps = json::array();
    for (const auto& c : x.charts()) charts.push_back(ring_json(c));
    for (const auto& ov : x.overlaps()) {
      json t = json::object();
      const auto& h = ov.transition;
      for (std::size_t v = 0; v < h.domain()->nvars(); ++v)
        t[h.domain()->vars()[v]] = h.codomain()->format(h.images()[v]);
      overlaps.push_back(json{{"i", ov.i}, {"j", ov.j}, {"f_ij", x.charts()[ov.i]->format(ov.f_ij)}, {"transition", t}});
    }
    std::vector<std::string> report = x.report();
    report.insert(report.end(), ws.report.begin(), ws.report.end());
    j = json{{"p", o.p}, {"n", o.n}, {"charts", charts}, {"overlaps", overlaps}, {"report", report}};
  } else if (verb == "h0-p1") {
    auto rep = global_sections_P1(o.p, o.n, o.degree_bound);
    json gens = json::array();
    for (const auto& g : rep.generators) gens.push_back(g.to_strings());
    j = json{{"p", o.p},
             {"n", o.n},
             {"degree_bound", o.degree_bound},
             {"generators", gens},
             {"rank", rep.rank},
             {"matches_witt_of_z", rep.matches_witt_of_z}};
  } else {
    throw parse_error("unknown scheme verb " + verb);
  }
  emit(out, o, j);
  return kOk;
}

int verify_cmd(const Options& o, std::ostream& out) {
  require_args(o, 1);
  SuiteReport rep = run_suite(arg(o, 0), o.p, o.n, o.seed);
  json checks = json::array();
  for (const auto& c : rep.checks)
    checks.push_back(json{{"name", c.name}, {"status", status_name(c.status)}, {"detail", c.detail}});
  json j{{"suite", rep.suite},
         {"seed", rep.seed},
         {"p", o.p},
         {"n", o.n},
         {"passed", rep.passed()},
         {"counts",
          {{"pass", rep.count(CheckStatus::kPass)},
           {"fail", rep.count(CheckStatus::kFail)},
           {"skip", rep.count(CheckStatus::kSkip)}}},
         {"checks", checks}};
  if (o.json) {
    out << j.dump(2) << "\n";
  } else {
    for (const auto& c : rep.checks)
      out << status_name(c.status) << "  " << c.name << (c.detail.empty() ? "" : "  [" + c.detail + "]") << "\n";
    out << (rep.passed() ? "PASSED" : "FAILED") << " (" << rep.count(CheckStatus::kPass) << " pass, "
        << rep.count(CheckStatus::kFail) << " fail, " << rep.count(CheckStatus::kSkip) << " skip)\n";
  }
  return rep.passed() ? kOk : kVerifyFailed;
}

int cache_cmd(const std::string& verb, const Options& o, std::ostream& out) {
  require_args(o, 0);
  auto& cache = UnivPolyCache::instance();
  json j{{"p", o.p}, {"n", o.n}};
  if (verb == "build") {
    auto path = cache.rebuild(o.p, o.n);
    j["path"] = path.string();
  } else if (verb == "show") {
    auto polys = cache.get(o.p, o.n);
    auto dir = cache.directory();
    j["path"] = dir ? cache.path_for(o.p, o.n).string() : std::string();
    auto terms = [](const std::vector<Poly>& ps) {
      std::vector<std::size_t> t;
      for (const auto& x : ps) t.push_back(x.num_terms());
      return t;
    };
    j["terms"] = json{{"sum", terms(polys->sum)},
                      {"prod", terms(polys->prod)},
                      {"neg", terms(polys->neg)},
                      {"frob", terms(polys->frob)}};
  } else {
    throw parse_error("unknown cache verb " + verb);
  }
  emit(out, o, j);
  return kOk;
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::kParse:
    case ErrorKind::kInvalidArgument: return kParseError;
    case ErrorKind::kVerificationFailed: return kVerifyFailed;
    default: return kMathError;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Witt vectors and arithmetic jets on finitely presented rings", "wittkit"};
  app.require_subcommand(1);
  Options o;
  std::string chosen;
  Handler handler;

  auto add_common = [&](CLI::App* c) {
    c->add_option("--p", o.p, "prime")->check(CLI::PositiveNumber);
    c->add_option("--n", o.n, "length (n+1 components)");
    c->add_option("--ring", o.ring, "ring JSON file or inline JSON");
    c->add_option("--seed", o.seed, "RNG seed");
    c->add_flag("--json", o.json, "JSON output");
    c->add_option("--degree-bound", o.degree_bound, "degree bound");
  };
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, Handler h) {
    CLI::App* c = parent->add_subcommand(name, help);
    add_common(c);
    // Positionals are taken from the extras so that JSON arrays stay one token.
    c->allow_extras();
    c->callback([&, c, h, name] {
      for (const auto& a : c->remaining()) {
        if (a.size() > 1 && a[0] == '-' && !std::isdigit(static_cast<unsigned char>(a[1])))
          throw CLI::ExtrasError(name, {a});
        o.args.push_back(a);
      }
      chosen = name;
      handler = h;
    });
    return c;
  };

  CLI::App* witt = app.add_subcommand("witt", "Witt vector arithmetic");
  witt->require_subcommand(1);
  for (const char* v : {"add", "mul", "ghost", "from-ghost", "teich", "frob", "versch", "rgh", "alpha",
                        "section", "present-Z", "localize", "coplethysm", "big"}) {
    std::string verb = v;
    CLI::App* c = leaf(witt, verb, "witt " + verb,
                       [verb](const Options& opt, std::ostream& os) { return witt_cmd(verb, opt, os); });
    if (verb == "localize") c->add_option("--f", o.f, "element to invert");
    if (verb == "coplethysm") c->add_option("--m", o.m, "outer length");
    if (verb == "big") {
      c->add_option("--lengths", o.lengths, "prime:length list, e.g. 2:1,3:1");
      c->add_option("--order", o.order, "nesting order, e.g. 3,2");
    }
  }
  CLI::App* jet = app.add_subcommand("jet", "arithmetic jet spaces");
  jet->require_subcommand(1);
  for (const char* v : {"present", "delta", "coghost", "rcgh", "greenberg", "blowup", "iso-check"}) {
    std::string verb = v;
    CLI::App* c = leaf(jet, verb, "jet " + verb,
                       [verb](const Options& opt, std::ostream& os) { return jet_cmd(verb, opt, os); });
    if (verb == "delta") c->add_option("--times", o.times, "apply delta this many times");
    if (verb == "coghost") c->add_option("--i", o.i, "single co-ghost index (default: all)");
  }
  CLI::App* scheme = app.add_subcommand("scheme", "glued schemes");
  scheme->require_subcommand(1);
  for (const char* v : {"witt-space", "h0-p1"}) {
    std::string verb = v;
    CLI::App* c = leaf(scheme, verb, "scheme " + verb,
                       [verb](const Options& opt, std::ostream& os) { return scheme_cmd(verb, opt, os); });
    if (verb == "witt-space") c->add_option("--scheme", o.scheme, "scheme JSON file or inline JSON (default P^1)");
  }
  leaf(&app, "verify", "run a verification suite or all",
       [](const Options& opt, std::ostream& os) { return verify_cmd(opt, os); });
  CLI::App* cache = app.add_subcommand("cache", "universal polynomial cache");
  cache->require_subcommand(1);
  for (const char* v : {"build", "show"}) {
    std::string verb = v;
    leaf(cache, verb, "cache " + verb,
         [verb](const Options& opt, std::ostream& os) { return cache_cmd(verb, opt, os); });
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: ParseError: " << e.what() << "\n";
    return kParseError;
  }
  if (!handler) {
    err << "error: ParseError: no command\n";
    return kParseError;
  }
  if (!is_prime(o.p)) {
    err << "error: ParseError: --p " << o.p << " is not prime\n";
    return kParseError;
  }
  try {
    return handler(o, out);
  } catch (const Error& e) {
    err << "error: " << kind_name(e.kind()) << ": " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << "\n";
    return kMathError;
  }
}

}  // namespace wittkit::cli
