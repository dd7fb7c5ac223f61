// posadisc command line: generators, classification, claim verification,
// exact search, tilings and the cluster pipeline.
//
// exit codes: 0 ok, 1 domain error (JSON on stderr), 2 usage error

#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "posadisc/posadisc.hpp"

namespace pd = posadisc;
using pd::Json;

namespace {

struct Outcome {
  Json result;
  std::string text;              // human output when --json is absent
  std::optional<std::uint64_t> seed;
  bool ok = true;                // false turns into exit 1 after printing
};

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex(std::uint64_t x) {
  std::ostringstream o;
  o << std::hex;
  o.width(16);
  o.fill('0');
  o << x;
  return o.str();
}

std::vector<pd::Vertex> parse_list(const std::string& s) {
  std::vector<pd::Vertex> out;
  std::string tok;
  std::istringstream in(s);
  while (std::getline(in, tok, ',')) {
    if (tok.empty()) continue;
    try {
      std::size_t used = 0;
      const int v = std::stoi(tok, &used);
      pd::require(used == tok.size(), pd::ErrorKind::Parse, "bad vertex id '" + tok + "'");
      out.push_back(v);
    } catch (const std::logic_error&) {
      pd::fail(pd::ErrorKind::Parse, "bad vertex id '" + tok + "'");
    }
  }
  return out;
}

Json budget_json(const pd::SearchBudget& b) {
  return {{"node_limit", b.node_limit}, {"time_limit_seconds", b.time_limit_seconds}, {"workers", b.workers}};
}

Json search_json(const pd::SearchResult& r) {
  Json j{{"outcome", pd::to_string(r.outcome)},
         {"optimal", r.optimal()},
         {"found", r.found()},
         {"value", r.value},
         {"abs_value", r.abs_value()},
         {"nodes", r.nodes}};
  if (!r.ordering.empty()) j["ordering"] = r.ordering;
  if (r.tiling) j["tiling"] = pd::tiling_to_json(*r.tiling);
  return j;
}

std::string type_name(const std::optional<pd::CliqueType>& t) { return t ? t->describe() : "none"; }

void error_out(const pd::Error& e) {
  Json err{{"kind", std::string(pd::to_string(e.kind()))}, {"message", e.what()}};
  const std::string msg = e.what();
  if (msg.rfind("stage ", 0) == 0) err["stage"] = msg.substr(6, msg.find(':') - 6);
  std::cerr << Json{{"error", err}}.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"posadisc: discrepancy of r-th powers of Hamilton cycles, templates and clique tilings"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  bool json = false;
  bool timing = false;
  app.add_flag("--json", json, "machine-readable output");
  app.add_flag("--timing", timing, "include wall time in the JSON run record");

  std::function<Outcome()> action;
  std::string command;
  Json inputs = Json::object();

  // shared option storage
  int r = 3;
  std::string graph_path, tiling_path, out_path;
  pd::SearchBudget budget;

  auto add_budget = [&](CLI::App* sc) {
    sc->add_option("--node-limit", budget.node_limit, "search node limit")->check(CLI::PositiveNumber);
    sc->add_option("--time-limit", budget.time_limit_seconds, "search time limit in seconds")->check(CLI::PositiveNumber);
    sc->add_option("--workers", budget.workers, "parallel workers")->check(CLI::PositiveNumber);
  };

  // gen
  auto* gen = app.add_subcommand("gen", "write a construction as a graph JSON file");
  gen->require_subcommand(1);
  pd::LowerBoundSpec lb;
  auto* gen_lb = gen->add_subcommand("lower-bound", "Turan-type graph with the V_0 part");
  gen_lb->add_option("--r", lb.r, "power order (>= 3)")->required();
  gen_lb->add_option("--t", lb.t, "cluster size (even)")->required();
  gen_lb->add_option("--m", lb.m, "size of V_0")->required();
  gen_lb->add_option("--seed", lb.seed, "seed for the V_0 colouring");
  gen_lb->add_option("-o,--output", out_path, "output file (stdout when omitted)");
  gen_lb->callback([&] {
    command = "gen lower-bound";
    inputs = {{"r", lb.r}, {"t", lb.t}, {"m", lb.m}, {"seed", lb.seed}};
    action = [&] {
      const auto g = pd::build_lower_bound(lb);
      Outcome o{pd::graph_to_json(g), "", lb.seed};
      return o;
    };
  });
  int turan_k = 2;
  auto* gen_t2 = gen->add_subcommand("turan2", "Turan graph for r = 2 with k vertices per part");
  gen_t2->add_option("--k", turan_k, "part size")->required();
  gen_t2->add_option("-o,--output", out_path, "output file (stdout when omitted)");
  gen_t2->callback([&] {
    command = "gen turan2";
    inputs = {{"k", turan_k}};
    action = [&] { return Outcome{pd::graph_to_json(pd::build_turan_square(turan_k)), "", std::nullopt}; };
  });

  // classify
  std::string vertex_list;
  auto* cls = app.add_subcommand("classify", "type of a clique: K+, K-, plus-star, minus-star or none");
  cls->add_option("--graph", graph_path, "graph JSON")->required();
  cls->add_option("--vertices", vertex_list, "comma separated vertex ids")->required();
  cls->callback([&] {
    command = "classify";
    action = [&] {
      const auto g = pd::load_graph(graph_path);
      inputs = {{"graph", pd::graph_to_json(g)}, {"vertices", vertex_list}};
      const pd::VertexSet s(parse_list(vertex_list));
      pd::require_clique(g, s);
      const auto t = pd::classify_clique(g, s);
      Json res{{"type", type_name(t)}, {"square_equation", nullptr}};
      if (s.size() >= 4) res["square_equation"] = pd::square_equation_holds(g, s);
      if (t) {
        res["kind"] = pd::to_string(t->kind);
        if (t->head) res["head"] = *t->head;
      }
      return Outcome{res, type_name(t), std::nullopt};
    };
  });

  // verify-claims
  int claims_r = 3;
  auto* vc = app.add_subcommand("verify-claims", "enumerate the claim gadgets and compare with the closed forms");
  vc->add_option("--r", claims_r, "power order (>= 3)")->required();
  vc->callback([&] {
    command = "verify-claims";
    inputs = {{"r", claims_r}};
    action = [&] {
      const auto rep = pd::verify_claim_formulas(claims_r);
      Json checks = Json::array();
      std::ostringstream txt;
      std::size_t failed = 0;
      for (const auto& c : rep.checks) {
        Json ids = Json::array();
        for (const auto& i : c.identities) {
          ids.push_back({{"name", i.name}, {"enumerated", i.enumerated}, {"closed_form", i.closed_form}, {"pass", i.pass()}});
          if (!i.pass()) {
            ++failed;
            txt << "FAIL " << pd::to_string(c.identity.claim) << " " << i.name << ": " << i.enumerated
                << " != " << i.closed_form << '\n';
          }
        }
        checks.push_back({{"claim", pd::to_string(c.identity.claim)},
                          {"case", pd::to_string(c.identity.kase)},
                          {"x_type", c.config.x_type.describe()},
                          {"y_type", c.config.y_type.describe()},
                          {"cross_sign", pd::value(c.config.cross_sign)},
                          {"identities", ids},
                          {"pass", c.pass()}});
      }
      txt << rep.checks.size() << " configurations, " << (rep.pass() ? "all identities pass" : std::to_string(failed) + " failures");
      Outcome o{{{"r", rep.r}, {"configurations", rep.checks.size()}, {"pass", rep.pass()}, {"checks", checks}},
                txt.str(), std::nullopt};
      o.ok = rep.pass();
      return o;
    };
  });

  // search
  auto* search = app.add_subcommand("search", "exact branch-and-bound search");
  search->require_subcommand(1);
  auto* s_power = search->add_subcommand("power", "max |f(H^r)| over contained r-th powers of Hamilton cycles");
  auto* s_exists = search->add_subcommand("exists", "does g contain the r-th power of a Hamilton cycle");
  auto* s_tiling = search->add_subcommand("tiling", "max |f(T)| over perfect K_{r+1}-tilings");
  for (auto* sc : {s_power, s_exists, s_tiling}) {
    sc->add_option("--graph", graph_path, "graph JSON")->required();
    sc->add_option("--r", r, "power order")->required();
    add_budget(sc);
  }
  s_power->callback([&] {
    command = "search power";
    action = [&] {
      const auto g = pd::load_graph(graph_path);
      inputs = {{"graph", pd::graph_to_json(g)}, {"r", r}, {"budget", budget_json(budget)}};
      const auto res = pd::max_abs_discrepancy_power(g, r, budget);
      std::ostringstream txt;
      txt << pd::to_string(res.outcome) << " value " << res.value << " nodes " << res.nodes;
      return Outcome{search_json(res), txt.str(), std::nullopt};
    };
  });
  s_exists->callback([&] {
    command = "search exists";
    action = [&] {
      const auto g = pd::load_graph(graph_path);
      inputs = {{"graph", pd::graph_to_json(g)}, {"r", r}, {"budget", budget_json(budget)}};
      const bool e = pd::exists_hamilton_power(g, r, budget);
      return Outcome{{{"exists", e}}, e ? "yes" : "no", std::nullopt};
    };
  });
  s_tiling->callback([&] {
    command = "search tiling";
    action = [&] {
      const auto g = pd::load_graph(graph_path);
      inputs = {{"graph", pd::graph_to_json(g)}, {"r", r}, {"budget", budget_json(budget)}};
      const auto res = pd::max_abs_discrepancy_tiling(g, r, budget);
      std::ostringstream txt;
      txt << pd::to_string(res.outcome) << " value " << res.value << " nodes " << res.nodes;
      return Outcome{search_json(res), txt.str(), std::nullopt};
    };
  });

  // tile
  auto* tile = app.add_subcommand("tile", "perfect clique tilings");
  tile->require_subcommand(1);
  auto* t_find = tile->add_subcommand("find", "find a perfect K_{r+1}-tiling");
  t_find->add_option("--graph", graph_path, "graph JSON")->required();
  t_find->add_option("--r", r, "tiles have r+1 vertices")->required();
  add_budget(t_find);
  t_find->callback([&] {
    command = "tile find";
    action = [&] {
      const auto g = pd::load_graph(graph_path);
      inputs = {{"graph", pd::graph_to_json(g)}, {"r", r}, {"budget", budget_json(budget)}};
      const auto t = pd::perfect_clique_tiling(g, r, budget);
      Json res{{"found", t.has_value()}};
      if (t) res["tiling"] = pd::tiling_to_json(*t);
      return Outcome{res, t ? pd::tiling_to_json(*t).dump() : "none", std::nullopt};
    };
  });
  auto* t_check = tile->add_subcommand("check", "validate a tiling; report f(T) and the clique-type census");
  t_check->add_option("--graph", graph_path, "graph JSON")->required();
  t_check->add_option("--tiling", tiling_path, "tiling JSON")->required();
  t_check->callback([&] {
    command = "tile check";
    action = [&] {
      const auto g = pd::load_graph(graph_path);
      const auto tj = pd::read_json_file(tiling_path);
      const auto t = pd::tiling_from_json(tj);
      inputs = {{"graph", pd::graph_to_json(g)}, {"tiling", tj}};
      pd::validate_tiling(g, t);
      Json res{{"valid", true}, {"discrepancy", pd::tiling_discrepancy(g, t)}};
      bool cliques = true;
      for (const auto& c : t.cycles) cliques = cliques && static_cast<int>(c.length()) == t.r + 1;
      if (cliques) {
        const auto census = pd::census_tiling(g, t);
        Json types = Json::array();
        for (const auto& ty : census.tile_types) types.push_back(type_name(ty));
        res["census"] = {{"plus_cliques", census.plus_cliques},
                         {"minus_cliques", census.minus_cliques},
                         {"plus_stars", census.plus_stars},
                         {"minus_stars", census.minus_stars},
                         {"unclassified", census.unclassified},
                         {"types", types}};
      }
      return Outcome{res, "valid, f(T) = " + std::to_string(res["discrepancy"].get<long long>()), std::nullopt};
    };
  });

  // pipeline
  auto* pipe = app.add_subcommand("pipeline", "cluster-model embedding of a reduced-graph tiling");
  pipe->require_subcommand(1);
  auto* p_run = pipe->add_subcommand("run", "synthesise a cluster model and assemble H^r");
  std::string reduced_path;
  pd::PipelineParams pp;
  bool with_ordering = false;
  p_run->add_option("--reduced", reduced_path, "reduced graph JSON")->required();
  p_run->add_option("--tiling", tiling_path, "tiling of the reduced graph")->required();
  p_run->add_option("--m", pp.m, "cluster size");
  p_run->add_option("--d", pp.d, "pair density");
  p_run->add_option("--eps", pp.eps, "regularity slack");
  p_run->add_option("--alpha", pp.alpha, "deviation tolerance factor");
  p_run->add_option("--seed", pp.seed, "seed");
  p_run->add_option("--exceptional", pp.exceptional, "synthetic exceptional vertices");
  p_run->add_option("--shared", pp.shared, "number of leading tiles forming the shared part");
  p_run->add_option("--fill-iterations", pp.fill_iterations, "fill repair budget per tile");
  p_run->add_flag("--ordering", with_ordering, "include the Hamilton ordering in the output");
  p_run->callback([&] {
    command = "pipeline run";
    action = [&] {
      const auto R = pd::load_graph(reduced_path);
      const auto tj = pd::read_json_file(tiling_path);
      const auto t = pd::tiling_from_json(tj);
      pp.r = t.r;
      if (pp.shared < 0 && tj.contains("shared")) pp.shared = tj["shared"].get<int>();
      inputs = {{"reduced", pd::graph_to_json(R)}, {"tiling", tj},   {"m", pp.m},
                {"d", pp.d},                      {"eps", pp.eps},  {"alpha", pp.alpha},
                {"exceptional", pp.exceptional},  {"shared", pp.shared}, {"fill_iterations", pp.fill_iterations}};
      const auto model = pd::synthesize_model(R, pp);
      const auto rep = pd::assemble_hamilton_power(model, t, pp);
      Json stages = Json::array();
      stages.push_back({{"name", "model"}, {"ok", true}});
      for (const auto& s : rep.stages) stages.push_back({{"name", s}, {"ok", true}});
      Json res{{"n", rep.n},
               {"r", rep.r},
               {"m", rep.m},
               {"discrepancy", rep.discrepancy},
               {"prediction", rep.prediction},
               {"deviation", rep.deviation},
               {"alpha_n", rep.alpha_n},
               {"within_alpha", rep.within_alpha},
               {"regular", rep.regular},
               {"digest", hex(rep.digest)},
               {"stages", stages},
               {"path_lengths", rep.path_lengths},
               {"exceptional_inserted", rep.exceptional_inserted},
               {"moved_to_exceptional", rep.moved_to_exceptional},
               {"fill_iterations", rep.fill_iterations},
               {"survival_violations", rep.survival_violations.size()},
               {"endpoints_extensible", rep.endpoints_extensible},
               {"warnings", rep.warnings}};
      if (with_ordering) res["ordering"] = rep.ordering;
      std::ostringstream txt;
      txt << "n " << rep.n << "  f(H^r) " << rep.discrepancy << "  m f_R(T) " << rep.prediction << "  deviation "
          << rep.deviation << (rep.within_alpha ? " <= " : " > ") << rep.alpha_n << "  digest " << hex(rep.digest);
      for (const auto& w : rep.warnings) txt << "\nwarning: " << w;
      return Outcome{res, txt.str(), pp.seed};
    };
  });

  // oracle
  int cap = 10;
  auto* orc = app.add_subcommand("oracle", "brute-force enumeration of contained r-th powers (small n)");
  orc->add_option("--graph", graph_path, "graph JSON")->required();
  orc->add_option("--r", r, "power order")->required();
  orc->add_option("--cap", cap, "largest n accepted");
  orc->callback([&] {
    command = "oracle";
    action = [&] {
      const auto g = pd::load_graph(graph_path);
      inputs = {{"graph", pd::graph_to_json(g)}, {"r", r}, {"cap", cap}};
      long long best = 0;
      std::vector<pd::Vertex> best_ord;
      const auto count = pd::enumerate_hamilton_powers(
          g, r,
          [&](const std::vector<pd::Vertex>& ord, long long v) {
            if (best_ord.empty() || pd::better_candidate(v, ord, best, best_ord)) {
              best = v;
              best_ord = ord;
            }
          },
          cap);
      Json res{{"count", count}, {"found", count > 0}};
      if (count > 0) {
        res["value"] = best;
        res["ordering"] = best_ord;
      }
      return Outcome{res, std::to_string(count) + " orderings, max value " + std::to_string(best), std::nullopt};
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    Outcome o = action();
    const bool is_gen = command.rfind("gen ", 0) == 0;
    if (is_gen && out_path.empty()) {
      std::cout << o.result.dump() << '\n';
      return 0;
    }
    if (is_gen) {
      pd::write_json_file(out_path, o.result);
      o.text = "wrote " + out_path;
      o.result = {{"path", out_path}, {"n", o.result["n"]}, {"edges", o.result["edges"].size()}};
    }
    if (json) {
      Json run{{"subcommand", command}, {"inputs_digest", hex(fnv1a(inputs.dump()))}};
      run["seed"] = o.seed ? Json(*o.seed) : Json(nullptr);
      if (timing)
        run["wall_time_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      std::cout << Json{{"run", run}, {"result", o.result}}.dump() << '\n';
    } else {
      std::cout << o.text << '\n';
    }
    return o.ok ? 0 : 1;
  } catch (const pd::Error& e) {
    error_out(e);
    return 1;
  } catch (const Json::exception& e) {
    error_out(pd::Error(pd::ErrorKind::Parse, e.what()));
    return 1;
  }
}
