// movstab: exact slope-stability toolbox over a JSON problem bundle.
//
// Exit codes: 0 success, 2 schema error, 3 precondition error, 4 invariant
// violation (4 wins over 3 when both occur across queries).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "movstab/bundle.hpp"
#include "movstab/errors.hpp"

namespace {

using nlohmann::json;

// "1,0" / "(1, -1/2)" / "[2,3]" -> JSON array of rational strings.  The
// tokens are validated by the bundle layer, which names the offending path.
json vec_literal(const std::string& text) {
  std::string s = text;
  auto trim = [](std::string& t) {
    const char* ws = " \t";
    const size_t b = t.find_first_not_of(ws);
    const size_t e = t.find_last_not_of(ws);
    t = b == std::string::npos ? "" : t.substr(b, e - b + 1);
  };
  trim(s);
  if (s.size() >= 2 && ((s.front() == '(' && s.back() == ')') ||
                        (s.front() == '[' && s.back() == ']')))
    s = s.substr(1, s.size() - 2);
  json arr = json::array();
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    trim(tok);
    if (tok.empty()) throw movstab::SchemaError("vector literal \"" + text + "\" has an empty coordinate");
    arr.push_back(tok);
  }
  if (arr.empty()) throw movstab::SchemaError("vector literal \"" + text + "\" is empty");
  return arr;
}

movstab::RatVec rat_vec_from_json(const json& v, int rank, const std::string& what) {
  if (!v.is_array() || static_cast<int>(v.size()) != rank)
    throw movstab::SchemaError(what + ": expected " + std::to_string(rank) + " coordinates");
  movstab::RatVec out;
  for (const json& x : v) {
    if (x.is_string()) {
      try {
        out.push_back(movstab::parse_rational(x.get<std::string>()));
      } catch (const std::invalid_argument& e) {
        throw movstab::SchemaError(what + ": " + e.what());
      }
    } else if (x.is_number_integer()) {
      out.push_back(movstab::Rational(x.get<long long>()));
    } else {
      throw movstab::SchemaError(what + ": expected a rational (\"p/q\" string or integer)");
    }
  }
  return out;
}

// Curves override for `zariski --curves FILE`: a JSON array of integer
// coordinate vectors, or an object with a "curves" member holding one.
movstab::NegativeCurveSet load_curves_file(const std::string& path,
                                           const movstab::LatticePtr& lattice) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw movstab::SchemaError("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  json root;
  try {
    root = json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw movstab::SchemaError(std::string("invalid JSON: ") + e.what());
  }
  const json& arr = root.is_object() && root.contains("curves") ? root["curves"] : root;
  if (!arr.is_array())
    throw movstab::SchemaError("curves file: expected an array of coordinate vectors");
  std::vector<movstab::NumClass> curves;
  for (size_t i = 0; i < arr.size(); ++i)
    curves.emplace_back(lattice, rat_vec_from_json(arr[i], lattice->rank(),
                                                   "curves[" + std::to_string(i) + "]"));
  return movstab::NegativeCurveSet(std::move(curves));
}

// Pure-scalar commands (flat-higher, torus-gate) do not need real lattice
// data; a one-dimensional stand-in keeps the output path uniform.
const char* kScalarBundle =
    R"({"schema":1,"lattice":{"rank":1,"gram":[["1"]]},"eff_cone":{"generators":[["1"]]}})";

int run_queries(movstab::ProblemBundle& bundle, json queries, const std::string& format,
                const std::string& only_cmd = "") {
  bundle.queries.clear();
  for (const json& q : queries) bundle.queries.push_back(q.dump());
  const movstab::RunOutcome out = movstab::run_bundle(bundle, only_cmd);
  std::cout << (format == "text" ? out.text_report : out.json_report);
  return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  // MOVSTAB_SEED is accepted in the environment for interface compatibility
  // and deliberately never read: the tool contains no randomness.
  CLI::App app{
      "movstab: exact slope-stability of sheaf classes against movable curve classes.\n"
      "All arithmetic is exact rational; vectors are comma-separated rationals like \"1,-1/2\"."};
  app.require_subcommand(1);

  std::string format = "json";
  app.add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"json", "text"}));

  std::string bundle_path;

  auto* cmd_run = app.add_subcommand("run", "Execute the query list of a bundle file");
  std::string run_only;
  cmd_run->add_option("bundle", bundle_path, "Bundle JSON file")->required();
  cmd_run->add_option("--only", run_only, "Run only queries whose cmd matches");

  auto* cmd_validate = app.add_subcommand("validate", "Parse and check a bundle file");
  cmd_validate->add_option("bundle", bundle_path, "Bundle JSON file")->required();

  auto add_bundle_opt = [&](CLI::App* c, bool required = true) {
    auto* o = c->add_option("--bundle", bundle_path, "Bundle JSON file with the ambient data");
    if (required) o->required();
  };

  auto* cmd_cone = app.add_subcommand("cone", "Print a cone, optionally dualized; test membership");
  std::string cone_which = "eff", cone_contains;
  bool cone_dualize = false, cone_interior = false;
  add_bundle_opt(cmd_cone);
  cmd_cone->add_option("--which", cone_which, "eff or mov")->check(CLI::IsMember({"eff", "mov"}));
  cmd_cone->add_flag("--dualize", cone_dualize, "Dualize before reporting");
  cmd_cone->add_option("--contains", cone_contains, "Vector to test for membership");
  cmd_cone->add_flag("--interior", cone_interior, "Test interior instead of closed membership");

  auto* cmd_stability = app.add_subcommand("stability", "Semistable/stable verdict at a polarization");
  std::string at;
  add_bundle_opt(cmd_stability);
  cmd_stability->add_option("--at", at, "Polarization vector")->required();

  auto* cmd_hn = app.add_subcommand("hn", "Maximal-slope filtration at a polarization");
  add_bundle_opt(cmd_hn);
  cmd_hn->add_option("--at", at, "Polarization vector")->required();

  auto* cmd_jh = app.add_subcommand("jh", "Equal-slope refinement at a semistable polarization");
  add_bundle_opt(cmd_jh);
  cmd_jh->add_option("--at", at, "Polarization vector")->required();

  auto* cmd_segment = app.add_subcommand("segment", "Stability along a segment of polarizations");
  std::string seg_from, seg_to;
  add_bundle_opt(cmd_segment);
  cmd_segment->add_option("--from", seg_from, "Start polarization")->required();
  cmd_segment->add_option("--to", seg_to, "End polarization")->required();

  auto* cmd_openness = app.add_subcommand("openness", "Exact stability radius along a segment");
  add_bundle_opt(cmd_openness);
  cmd_openness->add_option("--from", seg_from, "Base polarization (must be stable)")->required();
  cmd_openness->add_option("--to", seg_to, "Direction endpoint")->required();

  auto* cmd_walls = app.add_subcommand("walls", "Numerical wall functionals of the family");
  add_bundle_opt(cmd_walls);

  auto* cmd_zariski = app.add_subcommand("zariski", "Zariski decomposition of a divisor class");
  std::string divisor, curves_file;
  add_bundle_opt(cmd_zariski);
  cmd_zariski->add_option("--divisor", divisor, "Divisor class vector")->required();
  cmd_zariski->add_option("--curves", curves_file, "JSON file overriding the candidate curve list");

  auto* cmd_bgi = app.add_subcommand("bgi", "Discriminant inequality verdict");
  add_bundle_opt(cmd_bgi);
  cmd_bgi->add_option("--alpha", at, "Polarization vector")->required();

  auto* cmd_flat = app.add_subcommand("flat", "Surface flatness gate");
  add_bundle_opt(cmd_flat);
  cmd_flat->add_option("--alpha", at, "Polarization vector")->required();

  auto* cmd_projflat = app.add_subcommand("projflat", "Surface projective-flatness gate");
  add_bundle_opt(cmd_projflat);
  cmd_projflat->add_option("--alpha", at, "Polarization vector")->required();

  auto* cmd_fh = app.add_subcommand("flat-higher", "Dimension-n flatness gate on intersection numbers");
  int fh_n = 0, fh_rank = 0;
  std::string fh_c1H, fh_c1sqH, fh_c2H;
  add_bundle_opt(cmd_fh, /*required=*/false);
  cmd_fh->add_option("--n", fh_n, "Ambient dimension (>= 2)")->required();
  cmd_fh->add_option("--c1H", fh_c1H, "c1 . H^(n-1)")->required();
  cmd_fh->add_option("--c1sqH", fh_c1sqH, "c1^2 . H^(n-2)")->required();
  cmd_fh->add_option("--c2H", fh_c2H, "c2 . H^(n-2)")->required();
  cmd_fh->add_option("--rank", fh_rank, "Sheaf rank (enables the lambda report)");

  auto* cmd_torus = app.add_subcommand("torus-gate", "Torus-quotient hypothesis gate");
  int tg_n = 0;
  std::string tg_c2H;
  bool tg_kx = false;
  add_bundle_opt(cmd_torus, /*required=*/false);
  cmd_torus->add_option("--n", tg_n, "Ambient dimension (>= 2)")->required();
  cmd_torus->add_option("--c2H", tg_c2H, "c2 . H^(n-2)")->required();
  cmd_torus->add_flag("--kx-trivial", tg_kx, "Canonical class is numerically trivial");

  // Let the top-level --format be given after a subcommand name.
  for (CLI::App* sc : app.get_subcommands([](const CLI::App*) { return true; }))
    sc->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_run->parsed()) {
      movstab::ProblemBundle bundle = movstab::load_bundle_file(bundle_path);
      const movstab::RunOutcome out = movstab::run_bundle(bundle, run_only);
      std::cout << (format == "text" ? out.text_report : out.json_report);
      return out.exit_code;
    }
    if (cmd_validate->parsed()) {
      const movstab::ProblemBundle bundle = movstab::load_bundle_file(bundle_path);
      std::cout << "valid\n" << movstab::bundle_summary(bundle);
      return 0;
    }

    movstab::ProblemBundle bundle =
        bundle_path.empty() ? movstab::parse_bundle(kScalarBundle)
                            : movstab::load_bundle_file(bundle_path);
    json q;
    if (cmd_cone->parsed()) {
      q = {{"cmd", "cone"}, {"which", cone_which}, {"dualize", cone_dualize}};
      if (!cone_contains.empty()) {
        q["contains"] = vec_literal(cone_contains);
        q["mode"] = cone_interior ? "interior" : "closed";
      }
    } else if (cmd_stability->parsed()) {
      q = {{"cmd", "stability"}, {"alpha", vec_literal(at)}};
    } else if (cmd_hn->parsed()) {
      q = {{"cmd", "hn"}, {"alpha", vec_literal(at)}};
    } else if (cmd_jh->parsed()) {
      q = {{"cmd", "jh"}, {"alpha", vec_literal(at)}};
    } else if (cmd_segment->parsed()) {
      q = {{"cmd", "segment"}, {"from", vec_literal(seg_from)}, {"to", vec_literal(seg_to)}};
    } else if (cmd_openness->parsed()) {
      q = {{"cmd", "openness"}, {"from", vec_literal(seg_from)}, {"to", vec_literal(seg_to)}};
    } else if (cmd_walls->parsed()) {
      q = {{"cmd", "walls"}};
    } else if (cmd_zariski->parsed()) {
      if (!curves_file.empty()) bundle.curves = load_curves_file(curves_file, bundle.lattice);
      q = {{"cmd", "zariski"}, {"divisor", vec_literal(divisor)}};
    } else if (cmd_bgi->parsed()) {
      q = {{"cmd", "bgi"}, {"alpha", vec_literal(at)}};
    } else if (cmd_flat->parsed()) {
      q = {{"cmd", "flat"}, {"alpha", vec_literal(at)}};
    } else if (cmd_projflat->parsed()) {
      q = {{"cmd", "projflat"}, {"alpha", vec_literal(at)}};
    } else if (cmd_fh->parsed()) {
      q = {{"cmd", "flat-higher"}, {"n", fh_n}, {"c1H", fh_c1H}, {"c1sqH", fh_c1sqH},
           {"c2H", fh_c2H}};
      if (cmd_fh->count("--rank") > 0) q["rank"] = fh_rank;
    } else if (cmd_torus->parsed()) {
      q = {{"cmd", "torus-gate"}, {"n", tg_n}, {"c2H", tg_c2H}, {"kx_trivial", tg_kx}};
    } else {
      std::cerr << "no subcommand\n";
      return 1;
    }
    return run_queries(bundle, json::array({q}), format);
  } catch (const movstab::SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 2;
  } catch (const movstab::PreconditionError& e) {
    std::cerr << "precondition error: " << e.what() << "\n";
    return 3;
  } catch (const movstab::InvariantError& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
