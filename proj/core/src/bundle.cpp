#include "movstab/bundle.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "movstab/errors.hpp"

namespace movstab {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw SchemaError((path.empty() ? std::string("bundle") : path) + ": " + what);
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string idx(const std::string& path, size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

const json& expect(const json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(join(path, key), "missing required field");
  return *it;
}

Rational rat_from(const json& v, const std::string& path) {
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
      fail(path, e.what());
    }
  }
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_number_float()) fail(path, "decimal numbers are not accepted; write rationals as \"p/q\"");
  fail(path, "expected a rational (\"p/q\" string or integer)");
}

int int_from(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<int>();
}

bool bool_from(const json& v, const std::string& path) {
  if (!v.is_boolean()) fail(path, "expected a boolean");
  return v.get<bool>();
}

std::string str_from(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

RatVec vec_from(const json& v, const std::string& path, int rank) {
  if (!v.is_array()) fail(path, "expected an array of rationals");
  if (static_cast<int>(v.size()) != rank)
    fail(path, "expected " + std::to_string(rank) + " coordinates, got " +
                   std::to_string(v.size()));
  RatVec out;
  out.reserve(v.size());
  for (size_t i = 0; i < v.size(); ++i) out.push_back(rat_from(v[i], idx(path, i)));
  return out;
}

std::vector<NumClass> classes_from(const json& v, const std::string& path,
                                   const LatticePtr& lattice) {
  if (!v.is_array()) fail(path, "expected an array of coordinate vectors");
  std::vector<NumClass> out;
  out.reserve(v.size());
  for (size_t i = 0; i < v.size(); ++i)
    out.emplace_back(lattice, vec_from(v[i], idx(path, i), lattice->rank()));
  return out;
}

// Decodes the three sheaf fields; constructs only when `construct` is set so
// that schema validation never trips the rank >= 1 domain check.
std::optional<SheafClass> sheaf_from(const json& v, const std::string& path,
                                     const LatticePtr& lattice, bool construct) {
  if (!v.is_object()) fail(path, "expected an object");
  const int rank = int_from(expect(v, path, "rank"), join(path, "rank"));
  NumClass c1(lattice, vec_from(expect(v, path, "c1"), join(path, "c1"), lattice->rank()));
  Rational c2 = rat_from(expect(v, path, "c2"), join(path, "c2"));
  if (!construct) return std::nullopt;
  return SheafClass(rank, std::move(c1), std::move(c2));
}

RationalCone cone_from(const json& v, const std::string& path, const LatticePtr& lattice) {
  return RationalCone::from_generators(
      classes_from(expect(v, path, "generators"), join(path, "generators"), lattice));
}

SubsheafFamily family_from(const json& v, const std::string& path, const LatticePtr& lattice) {
  SheafClass top = *sheaf_from(expect(v, path, "top"), join(path, "top"), lattice, true);
  const json& ms = expect(v, path, "members");
  if (!ms.is_array()) fail(join(path, "members"), "expected an array");
  std::vector<SheafClass> members;
  members.reserve(ms.size());
  for (size_t i = 0; i < ms.size(); ++i)
    members.push_back(*sheaf_from(ms[i], idx(join(path, "members"), i), lattice, true));
  std::vector<std::pair<int, int>> contains;
  if (v.contains("contains")) {
    const json& cs = v["contains"];
    if (!cs.is_array()) fail(join(path, "contains"), "expected an array of [i, j] pairs");
    for (size_t i = 0; i < cs.size(); ++i) {
      const std::string p = idx(join(path, "contains"), i);
      if (!cs[i].is_array() || cs[i].size() != 2) fail(p, "expected a pair [i, j]");
      contains.emplace_back(int_from(cs[i][0], idx(p, 0)), int_from(cs[i][1], idx(p, 1)));
    }
  }
  bool saturated = false;
  if (v.contains("saturated")) saturated = bool_from(v["saturated"], join(path, "saturated"));
  return SubsheafFamily(std::move(top), std::move(members), std::move(contains), saturated);
}

// ---------------------------------------------------------------------------
// Report JSON helpers (rationals always as canonical "p/q" strings).

json j_rat(const Rational& x) { return format_rational(x); }

json j_vec(const RatVec& v) {
  json a = json::array();
  for (const Rational& x : v) a.push_back(format_rational(x));
  return a;
}

json j_class(const NumClass& c) { return j_vec(c.coords()); }

json j_classes(const std::vector<NumClass>& cs) {
  json a = json::array();
  for (const NumClass& c : cs) a.push_back(j_class(c));
  return a;
}

json j_sheaf(const SheafClass& e) {
  return json{{"rank", e.rank}, {"c1", j_class(e.c1)}, {"c2", j_rat(e.c2)}};
}

json j_extremum(const SlopeExtremum& m, const SubsheafFamily& fam) {
  const SheafClass& w = m.witness == kTopIndex ? fam.top : fam.members[m.witness];
  return json{{"value", j_rat(m.value)},
              {"witness", m.witness},
              {"witness_is_top", m.witness == kTopIndex},
              {"witness_class", j_sheaf(w)},
              {"ambiguous", m.ambiguous}};
}

json j_interval(const IntervalQ& iv) {
  if (iv.empty) return json{{"empty", true}};
  return json{{"empty", false},
              {"lo", j_rat(iv.lo)},
              {"hi", j_rat(iv.hi)},
              {"lo_open", iv.lo_open},
              {"hi_open", iv.hi_open}};
}

json j_filtration(const Filtration& f) {
  json quotients = json::array();
  for (const SheafClass& q : f.quotients) quotients.push_back(j_sheaf(q));
  json slopes = json::array();
  for (const Rational& s : f.slopes) slopes.push_back(j_rat(s));
  return json{{"steps", f.steps},
              {"quotients", quotients},
              {"slopes", slopes},
              {"strictly_decreasing", f.strictly_decreasing},
              {"ambiguous", f.ambiguous}};
}

json j_zpair(const ZariskiPair& z) {
  json neg = json::array();
  for (const auto& [curve, coefficient] : z.negative)
    neg.push_back(json{{"curve", j_class(curve)}, {"coefficient", j_rat(coefficient)}});
  return json{{"positive", j_class(z.positive)}, {"negative", neg}};
}

const char* point_name(PointClass p) {
  switch (p) {
    case PointClass::Stable: return "stable";
    case PointClass::StrictlySemistable: return "strictly-semistable";
    case PointClass::Unstable: return "unstable";
  }
  return "unstable";
}

// ---------------------------------------------------------------------------
// Query dispatch.  With `dry` set, arguments and bundle cross-references are
// fully decoded (raising SchemaError on structural problems) but no
// mathematics runs; parse_bundle uses this to make `validate` meaningful.

const SheafClass& need_sheaf(const ProblemBundle& b, const std::string& path,
                             const std::string& cmd) {
  if (b.sheaf) return *b.sheaf;
  if (b.family) return b.family->top;
  fail(path, "command \"" + cmd + "\" needs a \"sheaf\" or \"family\" section in the bundle");
}

const SubsheafFamily& need_family(const ProblemBundle& b, const std::string& path,
                                  const std::string& cmd) {
  if (b.family) return *b.family;
  fail(path, "command \"" + cmd + "\" needs a \"family\" section in the bundle");
}

json exec_query(const ProblemBundle& b, const json& q, const std::string& path,
                std::vector<std::string>* warnings, bool dry) {
  const std::string cmd = str_from(expect(q, path, "cmd"), join(path, "cmd"));
  const int rank = b.lattice->rank();

  auto vec_arg = [&](const char* key) {
    return NumClass(b.lattice, vec_from(expect(q, path, key), join(path, key), rank));
  };
  auto rat_arg = [&](const char* key) {
    return rat_from(expect(q, path, key), join(path, key));
  };
  auto int_arg = [&](const char* key) {
    return int_from(expect(q, path, key), join(path, key));
  };
  auto sheaf_arg = [&](const char* key) {
    return sheaf_from(expect(q, path, key), join(path, key), b.lattice, !dry);
  };
  auto warn = [&](const std::string& message) {
    if (!dry && warnings) warnings->push_back(message);
  };
  auto warn_zero = [&](const NumClass& x, const char* name) {
    if (x.is_zero())
      warn(std::string(name) + " is zero: all slopes vanish and every family is semistable");
  };

  if (cmd == "slope") {
    const NumClass alpha = vec_arg("alpha");
    const SheafClass& e = need_sheaf(b, path, cmd);
    if (dry) return {};
    warn_zero(alpha, "alpha");
    return json{{"slope", j_rat(slope(e, alpha))}};
  }
  if (cmd == "mu-max" || cmd == "mu-max-sc") {
    const NumClass alpha = vec_arg("alpha");
    const SubsheafFamily& fam = need_family(b, path, cmd);
    if (dry) return {};
    warn_zero(alpha, "alpha");
    const SlopeExtremum m =
        cmd == "mu-max" ? mu_max(fam, alpha, b.mov) : mu_max_sc(fam, alpha, b.mov);
    if (m.ambiguous) warn("slope maximum has a tie on (slope, rank, c1); witness is not unique");
    return j_extremum(m, fam);
  }
  if (cmd == "stability") {
    const NumClass alpha = vec_arg("alpha");
    const SubsheafFamily& fam = need_family(b, path, cmd);
    if (dry) return {};
    warn_zero(alpha, "alpha");
    return json{{"semistable", is_semistable(fam, alpha, b.mov)},
                {"stable", is_stable(fam, alpha, b.mov)},
                {"classification", point_name(classify_point(fam, alpha, b.mov))}};
  }
  if (cmd == "hn" || cmd == "jh") {
    const NumClass alpha = vec_arg("alpha");
    const SubsheafFamily& fam = need_family(b, path, cmd);
    if (dry) return {};
    warn_zero(alpha, "alpha");
    const Filtration f =
        cmd == "hn" ? hn_filtration(fam, alpha, b.mov) : jh_filtration(fam, alpha, b.mov);
    if (f.ambiguous) warn("a filtration step had a tie on (slope, rank, c1)");
    return j_filtration(f);
  }
  if (cmd == "destabilizers") {
    const NumClass beta = vec_arg("beta");
    const Rational threshold = rat_arg("threshold");
    const SubsheafFamily& fam = need_family(b, path, cmd);
    if (dry) return {};
    warn_zero(beta, "beta");
    return json{{"members", destabilizer_filter(fam, beta, threshold, b.mov)}};
  }
  if (cmd == "openness") {
    const NumClass from = vec_arg("from");
    const NumClass to = vec_arg("to");
    const SubsheafFamily& fam = need_family(b, path, cmd);
    if (dry) return {};
    return json{{"epsilon", j_rat(openness_epsilon(fam, from, to, b.mov))}};
  }
  if (cmd == "segment") {
    const NumClass from = vec_arg("from");
    const NumClass to = vec_arg("to");
    const SubsheafFamily& fam = need_family(b, path, cmd);
    if (dry) return {};
    const SegmentReport r = segment_stability(fam, from, to, b.mov);
    json walls = json::array();
    for (const SegmentWall& w : r.walls)
      walls.push_back(json{{"member", w.member}, {"epsilon", j_rat(w.epsilon)}});
    return json{{"semistable", j_interval(r.semistable)},
                {"stable", j_interval(r.stable)},
                {"walls", walls},
                {"at_start", point_name(r.at_start)},
                {"at_end", point_name(r.at_end)}};
  }
  if (cmd == "walls") {
    const SubsheafFamily& fam = need_family(b, path, cmd);
    if (dry) return {};
    json walls = json::array();
    for (const Wall& w : wall_hyperplanes(fam))
      walls.push_back(json{{"member", w.member}, {"functional", j_class(w.functional)}});
    return json{{"walls", walls}};
  }
  if (cmd == "cone") {
    std::string which = "eff";
    if (q.contains("which")) which = str_from(q["which"], join(path, "which"));
    if (which != "eff" && which != "mov")
      fail(join(path, "which"), "expected \"eff\" or \"mov\"");
    bool dualize = false;
    if (q.contains("dualize")) dualize = bool_from(q["dualize"], join(path, "dualize"));
    std::string mode = "closed";
    if (q.contains("mode")) mode = str_from(q["mode"], join(path, "mode"));
    if (mode != "closed" && mode != "interior")
      fail(join(path, "mode"), "expected \"closed\" or \"interior\"");
    std::optional<NumClass> point;
    if (q.contains("contains")) point = vec_arg("contains");
    if (dry) return {};
    RationalCone cone = which == "eff" ? b.eff : b.mov;
    if (dualize) cone = cone.dual();
    json res{{"which", which},
             {"dualize", dualize},
             {"dim", cone.dim()},
             {"full_dimensional", cone.full_dimensional()},
             {"generators", j_classes(cone.generators())},
             {"facets", j_classes(cone.facets())}};
    if (point) {
      res["point"] = j_class(*point);
      res["mode"] = mode;
      res["contains"] = cone.contains(
          *point, mode == "interior" ? RationalCone::Mode::Interior : RationalCone::Mode::Closed);
    }
    return res;
  }
  if (cmd == "zariski") {
    const NumClass divisor = vec_arg("divisor");
    if (dry) return {};
    return j_zpair(zariski_decomposition(divisor, b.curves, b.eff));
  }
  if (cmd == "nef-zero-square") {
    const NumClass divisor = vec_arg("divisor");
    const NumClass alpha = vec_arg("alpha");
    if (dry) return {};
    const NefFromZeroSquare n = nef_from_zero_square(divisor, alpha, b.curves, b.eff);
    return json{
        {"verdict",
         n.verdict == NefVerdict::Nef ? "nef" : "counterexample-to-input-consistency"},
        {"pair", j_zpair(n.pair)}};
  }
  if (cmd == "effectivity") {
    const NumClass divisor = vec_arg("divisor");
    if (dry) return {};
    const EffectivityResult r = effectivity_classifier(divisor, b.mov, b.eff);
    const char* kind = "degenerate-zero";
    switch (r.kind) {
      case EffectivityResult::Kind::AmpleOrthogonal: kind = "ample-orthogonal"; break;
      case EffectivityResult::Kind::PseudoEffectivePlus: kind = "pseudo-effective(+)"; break;
      case EffectivityResult::Kind::PseudoEffectiveMinus: kind = "pseudo-effective(-)"; break;
      case EffectivityResult::Kind::DegenerateZero: kind = "degenerate-zero"; break;
    }
    json res{{"kind", kind}};
    res["witness"] = r.witness ? j_class(*r.witness) : json();
    return res;
  }
  if (cmd == "bgi") {
    const NumClass alpha = vec_arg("alpha");
    const SubsheafFamily& fam = need_family(b, path, cmd);
    if (dry) return {};
    warn_zero(alpha, "alpha");
    const BgiVerdict v = bgi_verdict(fam, alpha, b.mov);
    return json{{"discriminant", j_rat(v.discriminant)},
                {"semistable", v.semistable},
                {"equality", v.equality},
                {"consistent", v.consistent},
                {"status", v.status}};
  }
  if (cmd == "flat") {
    const NumClass alpha = vec_arg("alpha");
    const SubsheafFamily& fam = need_family(b, path, cmd);
    if (dry) return {};
    const FlatnessVerdict v = flatness_surface(fam, alpha, b.mov);
    json res{{"certified", v.certified}, {"verdict", v.verdict}};
    res["derivation"] = v.derivation ? json{{"c1_square", j_rat(v.derivation->c1_square)},
                                            {"c2", j_rat(v.derivation->c2)},
                                            {"c1_zero", v.derivation->c1_zero}}
                                     : json();
    return res;
  }
  if (cmd == "projflat") {
    const NumClass alpha = vec_arg("alpha");
    const SubsheafFamily& fam = need_family(b, path, cmd);
    if (dry) return {};
    const ProjFlatnessVerdict v = proj_flatness_surface(fam, alpha, b.mov, b.eff, b.curves);
    return json{{"certified", v.certified}, {"verdict", v.verdict}, {"refinement", v.refinement}};
  }
  if (cmd == "flat-higher") {
    const int n = int_arg("n");
    const Rational c1H = rat_arg("c1H");
    const Rational c1sqH = rat_arg("c1sqH");
    const Rational c2H = rat_arg("c2H");
    std::optional<int> rk;
    if (q.contains("rank")) rk = int_from(q["rank"], join(path, "rank"));
    if (dry) return {};
    const HigherFlatness h = flatness_higher(n, c1H, c1sqH, c2H, rk);
    json res{{"passed", h.passed},
             {"vanish_c1H", h.vanish_c1H},
             {"vanish_difference", h.vanish_difference},
             {"verdict", h.verdict}};
    if (h.lambda) {
      json lr{{"value_lambda1", j_rat(h.lambda->value_lambda1)},
              {"value_lambda2", j_rat(h.lambda->value_lambda2)},
              {"vanish_lambda1", h.lambda->value_lambda1 == 0},
              {"vanish_lambda2", h.lambda->value_lambda2 == 0}};
      lr["upper_bound"] = h.lambda->upper_bound ? j_rat(*h.lambda->upper_bound) : json();
      res["lambda"] = lr;
    } else {
      res["lambda"] = json();
    }
    return res;
  }
  if (cmd == "torus-gate") {
    const int n = int_arg("n");
    const Rational c2H = rat_arg("c2H");
    const bool kx = bool_from(expect(q, path, "kx_trivial"), join(path, "kx_trivial"));
    if (dry) return {};
    const TorusGate g = torus_quotient_gate(n, c2H, kx);
    return json{{"met", g.met},
                {"c2_vanishes", g.c2_vanishes},
                {"kx_trivial", g.kx_trivial},
                {"verdict", g.verdict}};
  }
  if (cmd == "cartier-index") {
    const std::vector<NumClass> ambient =
        classes_from(expect(q, path, "ambient"), join(path, "ambient"), b.lattice);
    const std::vector<NumClass> sub =
        classes_from(expect(q, path, "sub"), join(path, "sub"), b.lattice);
    if (dry) return {};
    return json{{"index", cartier_index(ambient, sub).str()}};
  }
  if (cmd == "hodge-bound") {
    const NumClass d = vec_arg("d");
    const NumClass a = vec_arg("a");
    if (dry) return {};
    const HodgeBound hb = hodge_bound(d, a);
    return json{{"self_pairing", j_rat(hb.self_pairing)}, {"equality", hb.equality}};
  }
  if (cmd == "signature") {
    if (dry) return {};
    const Signature s = certify_signature(b.lattice->gram());
    return json{{"positive", s.n_pos}, {"negative", s.n_neg}, {"zero", s.n_zero}};
  }
  if (cmd == "tensor") {
    const auto e = sheaf_arg("e");
    const auto f = sheaf_arg("f");
    if (dry) return {};
    return json{{"sheaf", j_sheaf(tensor_class(*e, *f))}};
  }
  if (cmd == "dual") {
    const auto e = sheaf_arg("e");
    if (dry) return {};
    return json{{"sheaf", j_sheaf(dual_class(*e))}};
  }
  if (cmd == "whitney") {
    const auto sub = sheaf_arg("sub");
    const auto quot = sheaf_arg("quot");
    if (dry) return {};
    return json{{"sheaf", j_sheaf(whitney_extension(*sub, *quot))}};
  }
  if (cmd == "discriminant") {
    const SheafClass& e = need_sheaf(b, path, cmd);
    if (dry) return {};
    return json{{"discriminant", j_rat(bg_discriminant(e))}};
  }
  if (cmd == "sym-split") {
    const std::vector<NumClass> summands =
        classes_from(expect(q, path, "summands"), join(path, "summands"), b.lattice);
    const int m = int_arg("m");
    if (dry) return {};
    const SplitBundle out = sym_split(SplitBundle(summands), m);
    return json{{"summands", j_classes(out.summands)}, {"induced", j_sheaf(out.induced())}};
  }
  fail(join(path, "cmd"), "unknown command \"" + cmd + "\"");
}

// ---------------------------------------------------------------------------
// Text rendering: one block per query, one line per result key, one line per
// element for arrays of composite values.  Keys follow the canonical (sorted)
// JSON order, so text output is as deterministic as the JSON report.

bool is_scalar(const json& v) { return v.is_string() || v.is_boolean() || v.is_number(); }

std::string inline_value(const json& v) {
  if (v.is_null()) return "none";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return v.dump();
  std::string out;
  if (v.is_array()) {
    out = "(";
    for (size_t i = 0; i < v.size(); ++i) {
      if (i) out += ", ";
      out += inline_value(v[i]);
    }
    return out + ")";
  }
  out = "{";
  bool first = true;
  for (const auto& [k, val] : v.items()) {
    if (!first) out += ", ";
    first = false;
    out += k + " = " + inline_value(val);
  }
  return out + "}";
}

std::string render_text(const json& top) {
  std::ostringstream os;
  for (const json& entry : top.at("reports")) {
    os << "== query " << entry.at("index").get<int>() << ": "
       << entry.at("cmd").get<std::string>() << "\n";
    if (entry.at("ok").get<bool>()) {
      for (const auto& [key, value] : entry.at("result").items()) {
        const bool composite_list =
            value.is_array() && !value.empty() &&
            std::none_of(value.begin(), value.end(), [](const json& e) { return is_scalar(e); });
        if (composite_list) {
          for (size_t i = 0; i < value.size(); ++i)
            os << key << "[" << i << "] = " << inline_value(value[i]) << "\n";
        } else {
          os << key << " = " << inline_value(value) << "\n";
        }
      }
    } else {
      const json& err = entry.at("error");
      os << "error(" << err.at("kind").get<std::string>()
         << ") = " << err.at("message").get<std::string>() << "\n";
    }
    for (const json& w : entry.at("warnings"))
      os << "warning = " << w.get<std::string>() << "\n";
    os << "\n";
  }
  return os.str();
}

}  // namespace

ProblemBundle parse_bundle(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) fail("", "expected a JSON object");

  const json& schema = expect(root, "", "schema");
  if (!schema.is_number_integer() || schema.get<int>() != 1)
    fail("schema", "unsupported schema version; expected the integer 1");

  const json& lat_j = expect(root, "", "lattice");
  const int rank = int_from(expect(lat_j, "lattice", "rank"), "lattice.rank");
  if (rank < 1) fail("lattice.rank", "rank must be positive");
  const json& gram_j = expect(lat_j, "lattice", "gram");
  if (!gram_j.is_array() || static_cast<int>(gram_j.size()) != rank)
    fail("lattice.gram", "expected " + std::to_string(rank) + " rows");
  RatMat gram;
  for (size_t i = 0; i < gram_j.size(); ++i)
    gram.push_back(vec_from(gram_j[i], idx("lattice.gram", i), rank));
  std::vector<std::string> labels;
  if (lat_j.contains("basis")) {
    const json& basis = lat_j["basis"];
    if (!basis.is_array() || static_cast<int>(basis.size()) != rank)
      fail("lattice.basis", "expected " + std::to_string(rank) + " labels");
    for (size_t i = 0; i < basis.size(); ++i)
      labels.push_back(str_from(basis[i], idx("lattice.basis", i)));
  }
  LatticePtr lattice = NSLattice::create(std::move(gram), std::move(labels));

  RationalCone eff = cone_from(expect(root, "", "eff_cone"), "eff_cone", lattice);
  RationalCone mov =
      root.contains("mov_cone") ? cone_from(root["mov_cone"], "mov_cone", lattice) : eff.dual();

  std::optional<SheafClass> sheaf;
  if (root.contains("sheaf")) sheaf = sheaf_from(root["sheaf"], "sheaf", lattice, true);

  std::optional<SubsheafFamily> family;
  if (root.contains("family")) family = family_from(root["family"], "family", lattice);

  NegativeCurveSet curves;
  if (root.contains("curves"))
    curves = NegativeCurveSet(classes_from(root["curves"], "curves", lattice));

  std::vector<std::string> queries;
  if (root.contains("queries")) {
    const json& qs = root["queries"];
    if (!qs.is_array()) fail("queries", "expected an array");
    for (size_t i = 0; i < qs.size(); ++i) {
      if (!qs[i].is_object()) fail(idx("queries", i), "expected an object");
      queries.push_back(qs[i].dump());
    }
  }

  ProblemBundle bundle{std::move(lattice), std::move(eff),    std::move(mov), std::move(sheaf),
                       std::move(family),  std::move(curves), std::move(queries)};

  // Dry-run every query so `validate` rejects unknown commands, missing or
  // ill-typed arguments, and dangling section references up front.
  for (size_t i = 0; i < bundle.queries.size(); ++i)
    exec_query(bundle, json::parse(bundle.queries[i]), idx("queries", i), nullptr, true);
  return bundle;
}

ProblemBundle load_bundle_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_bundle(buf.str());
}

std::string bundle_summary(const ProblemBundle& bundle) {
  std::ostringstream os;
  os << "lattice: rank " << bundle.lattice->rank() << "\n";
  os << "eff_cone: " << bundle.eff.generators().size() << " generators, dim "
     << bundle.eff.dim() << "\n";
  os << "mov_cone: " << bundle.mov.generators().size() << " generators, dim "
     << bundle.mov.dim() << "\n";
  if (bundle.sheaf)
    os << "sheaf: rank " << bundle.sheaf->rank << "\n";
  else
    os << "sheaf: absent\n";
  if (bundle.family)
    os << "family: top rank " << bundle.family->top.rank << ", " << bundle.family->members.size()
       << " members, " << bundle.family->contains.size() << " containment edges, "
       << (bundle.family->saturated ? "saturated" : "not saturated") << "\n";
  else
    os << "family: absent\n";
  os << "curves: " << bundle.curves.curves.size() << "\n";
  os << "queries: " << bundle.queries.size() << "\n";
  return os.str();
}

RunOutcome run_bundle(const ProblemBundle& bundle, const std::string& only_cmd) {
  json reports = json::array();
  int exit_code = 0;
  for (size_t i = 0; i < bundle.queries.size(); ++i) {
    const json q = json::parse(bundle.queries[i]);
    const std::string cmd = q.at("cmd").get<std::string>();
    if (!only_cmd.empty() && cmd != only_cmd) continue;
    json entry{{"index", static_cast<int>(i)}, {"cmd", cmd}, {"query", q}};
    std::vector<std::string> warnings;
    try {
      entry["result"] = exec_query(bundle, q, idx("queries", i), &warnings, false);
      entry["ok"] = true;
    } catch (const SchemaError&) {
      throw;  // malformed query content aborts the whole run
    } catch (const InvariantError& e) {
      entry["ok"] = false;
      entry["error"] = json{{"kind", "invariant"}, {"message", e.what()}};
      exit_code = 4;
    } catch (const PreconditionError& e) {
      entry["ok"] = false;
      entry["error"] = json{{"kind", "precondition"}, {"message", e.what()}};
      if (exit_code != 4) exit_code = 3;
    }
    entry["warnings"] = warnings;
    reports.push_back(std::move(entry));
  }
  json top{{"schema", 1}, {"reports", reports}};
  RunOutcome out;
  out.exit_code = exit_code;
  out.json_report = top.dump(2) + "\n";
  out.text_report = render_text(top);
  return out;
}

}  // namespace movstab
