#include "sandpile/format.hpp"
#include "sandpile/group.hpp"
#include "sandpile/ideal.hpp"
#include "sandpile/structure.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <functional>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

namespace {

using namespace sandpile;
using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitValidation = 2;
constexpr int kExitCap = 3;
constexpr int kExitUnknownCommand = 64;

struct Common {
  std::string graph;
  bool json = false;
  std::int64_t max_order = Caps{}.max_order;
  std::optional<std::int64_t> max_degree;
  int threads = 1;

  Caps caps() const {
    Caps c;
    c.max_order = max_order;
    c.threads = threads;
    return c;
  }
};

// A report is a JSON object plus its text rendering.
struct Report {
  Json json = Json::object();
  std::ostringstream text;
  int exit_code = kExitOk;
};

Json vec_json(const Vec& v) {
  Json a = Json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

template <typename T>
Json list_json(const std::vector<T>& xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(x);
  return a;
}

Json integers_json(const std::vector<Integer>& xs) {
  Json a = Json::array();
  for (const auto& x : xs) {
    if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
      a.push_back(x.convert_to<std::int64_t>());
    else
      a.push_back(x.str());
  }
  return a;
}

std::string join(const std::vector<Integer>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + xs[i].str();
  return s;
}

template <typename T>
std::string join(const std::vector<T>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s;
}

Config config_arg(const Graph& g, const std::string& csv) {
  Config c = parse_csv(csv);
  if (c.size() != g.num_nonsink())
    throw ValidationError("configuration needs " + std::to_string(g.num_nonsink()) + " entries");
  return c;
}

Divisor divisor_arg(const Graph& g, const std::string& csv) {
  Divisor d = parse_csv(csv);
  if (d.size() != g.size()) throw ValidationError("divisor needs " + std::to_string(g.size()) + " entries");
  return d;
}

void run_stabilize(const Common& o, const std::string& csv, Report& r) {
  const Graph g = read_graph_file(o.graph);
  const auto s = stabilize(g, config_arg(g, csv));
  r.json["config"] = vec_json(s.config);
  r.json["script"] = vec_json(s.script);
  r.text << "config: " << to_csv(s.config) << "\nscript: " << to_csv(s.script) << "\n";
}

void run_group(const Common& o, bool elements, Report& r) {
  const Graph g = read_graph_file(o.graph);
  const auto factors = invariant_factors(g);
  Integer order = 1;
  for (const auto& f : factors) order *= f;
  const Config id = identity(g);
  r.json["order"] = integers_json({order})[0];
  r.json["invariant_factors"] = integers_json(factors);
  r.json["identity"] = vec_json(id);
  r.text << "order: " << order << "\ninvariant_factors: " << join(factors) << "\nidentity: " << to_csv(id) << "\n";
  if (!elements) return;
  const auto caps = o.caps();
  Json rec = Json::array(), sup = Json::array();
  r.text << "recurrents:\n";
  for (const auto& c : enumerate_recurrents(g, caps)) {
    rec.push_back(vec_json(c));
    r.text << "  " << to_csv(c) << "\n";
  }
  r.text << "superstables:\n";
  for (const auto& c : enumerate_superstables(g, caps)) {
    sup.push_back(vec_json(c));
    r.text << "  " << to_csv(c) << "\n";
  }
  r.json["recurrents"] = rec;
  r.json["superstables"] = sup;
}

void run_burning(const Common& o, Report& r) {
  const Graph g = read_graph_file(o.graph);
  const auto b = min_burning_config(g);
  r.json["config"] = vec_json(b.config);
  r.json["script"] = vec_json(b.script);
  r.text << "config: " << to_csv(b.config) << "\nscript: " << to_csv(b.script) << "\n";
}

void run_gb(const Common& o, bool minimal, bool homogeneous, Report& r) {
  const Graph g = read_graph_file(o.graph);
  std::vector<Binomial> basis;
  if (homogeneous) {
    auto h = homogeneous_basis(g, minimal, o.caps());
    r.json["hypothesis_holds"] = h.hypothesis_holds;
    if (!h.hypothesis_holds) r.text << "# sink column outside the span of the other Laplacian columns\n";
    basis = std::move(h.basis);
  } else {
    basis = groebner_basis(g, minimal, o.caps());
  }
  Json a = Json::array();
  for (const auto& b : basis) {
    a.push_back(binomial_str(b));
    r.text << binomial_str(b) << "\n";
  }
  r.json["binomials"] = a;
}

void run_hilbert(const Common& o, Report& r) {
  const Graph g = read_graph_file(o.graph);
  const auto hv = h_vector(g, o.caps());
  std::vector<std::int64_t> hf;
  std::int64_t acc = 0;
  for (auto x : hv.h) hf.push_back(acc += x);
  r.json["h_vector"] = list_json(hv.h);
  r.json["postulation"] = hv.postulation;
  r.json["affine_hilbert"] = list_json(hf);
  r.text << "h_vector: " << join(hv.h) << "\npostulation: " << hv.postulation << "\naffine_hilbert: " << join(hf)
         << "\n";
}

void run_tutte(const Common& o, Report& r) {
  const Graph g = read_graph_file(o.graph);
  if (!g.is_undirected()) throw ValidationError("tutte: graph must be undirected");
  const auto t = tutte(g);
  const Integer t11 = t.evaluate(1, 1);
  const bool merino = merino_check(g);
  r.json["tutte"] = t.str();
  r.json["t_1_1"] = integers_json({t11})[0];
  r.json["merino"] = merino;
  r.text << "T(x,y) = " << t.str() << "\nT(1,1) = " << t11 << "\nmerino: " << (merino ? "true" : "false") << "\n";
}

void run_divisor(const Common& o, const std::string& action, const std::string& csv, const std::string& other,
                 Report& r) {
  const Graph g = read_graph_file(o.graph);
  const Divisor d = divisor_arg(g, csv);
  const auto caps = o.caps();
  if (action == "equiv") {
    if (other.empty()) throw ValidationError("divisor equiv needs --other");
    const bool eq = is_equivalent(g, d, divisor_arg(g, other));
    r.json["equivalent"] = eq;
    r.text << "equivalent: " << (eq ? "true" : "false") << "\n";
  } else if (action == "linsys") {
    const auto members = linear_system(g, d, caps);
    Json a = Json::array();
    for (const auto& m : members) {
      a.push_back(vec_json(m));
      r.text << to_csv(m) << "\n";
    }
    r.json["members"] = a;
  } else if (action == "rank" || action == "rr") {
    if (!g.is_undirected()) throw ValidationError("divisor rank: graph must be undirected");
    const DivisorClasses classes(g, caps);
    const std::int64_t cap = o.max_degree.value_or(2 * genus(g) + 2);
    const int rk = rank_r(classes, d, cap);
    r.json["rank"] = rk;
    r.text << "rank: " << rk << "\n";
    if (action == "rr") {
      const Divisor kd = canonical(g) - d;
      const int rk_k = rank_r(classes, kd, cap);
      const std::int64_t residual = rk - rk_k - (d.sum() + 1 - genus(g));
      r.json["rank_k_minus_d"] = rk_k;
      r.json["degree"] = d.sum();
      r.json["genus"] = genus(g);
      r.json["residual"] = residual;
      r.text << "rank(K-D): " << rk_k << "\ndegree: " << d.sum() << "\ngenus: " << genus(g) << "\nresidual: " << residual
             << "\n";
      if (residual != 0) r.exit_code = kExitFailed;
    }
  } else {
    throw ValidationError("divisor: unknown action '" + action + "'");
  }
}

void run_betti(const Common& o, Report& r) {
  const Graph g = read_graph_file(o.graph);
  const auto table = graded_betti(g, o.caps());
  r.json["coarse"] = list_json(table.coarse);
  Json graded = Json::array();
  r.text << "coarse: " << join(table.coarse) << "\n";
  for (const auto& e : table.graded) {
    graded.push_back({{"i", e.i}, {"degree", vec_json(e.degree)}, {"multiplicity", e.multiplicity}});
    r.text << "beta_" << e.i << "," << digits(e.degree) << " = " << e.multiplicity << "\n";
  }
  r.json["graded"] = graded;
}

void run_conjecture(const Common& o, Report& r) {
  const Graph g = read_graph_file(o.graph);
  Json rows = Json::array();
  bool all = true;
  for (const auto& row : conjecture_check(g, o.caps())) {
    rows.push_back({{"k", row.k}, {"beta", row.beta}, {"contributions", list_json(row.contributions)},
                    {"total", row.total()}, {"holds", row.holds()}});
    r.text << "k=" << row.k << " beta=" << row.beta << " contributions=" << join(row.contributions)
           << " total=" << row.total() << (row.holds() ? " holds" : " FAILS") << "\n";
    all = all && row.holds();
  }
  r.json["rows"] = rows;
  r.json["holds"] = all;
}

void run_classify(const Common& o, Report& r) {
  const Graph g = read_graph_file(o.graph);
  const auto c = classify(g, o.caps());
  r.json["loopy_tree"] = c.loopy_tree ? Json(*c.loopy_tree) : Json(nullptr);
  r.json["complete_intersection"] = c.complete_intersection;
  r.json["gorenstein"] = c.gorenstein;
  r.json["beta_1"] = c.beta_1;
  r.json["beta_n"] = c.beta_n;
  r.json["h_vector"] = list_json(c.h_vector);
  r.json["h_symmetric"] = c.h_symmetric;
  auto b = [](bool x) { return x ? "true" : "false"; };
  r.text << "loopy_tree: " << (c.loopy_tree ? b(*c.loopy_tree) : "n/a") << "\ncomplete_intersection: "
         << b(c.complete_intersection) << "\ngorenstein: " << b(c.gorenstein) << "\nbeta_1: " << c.beta_1
         << "\nbeta_n: " << c.beta_n << "\nh_vector: " << join(c.h_vector) << "\n";
}

void run_lattice2graph(const Common&, const std::string& path, Report& r) {
  const IntMatrix m = lattice_to_laplacian_matrix(read_matrix_file(path));
  const Graph g = graph_from_reduced_laplacian(m);
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    std::vector<Integer> row;
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(integers_json(row));
  }
  r.json["reduced_laplacian"] = rows;
  r.json["graph"] = to_graph_text(g);
  r.text << to_graph_text(g);
}

void run_zeros(const Common& o, double tol, Report& r) {
  const Graph g = read_graph_file(o.graph);
  const double residual = verify_vanishing(g, o.max_order);
  const bool ok = residual < tol;
  r.json["max_residual"] = residual;
  r.json["tol"] = tol;
  r.json["ok"] = ok;
  r.text << "max_residual: " << residual << "\ntol: " << tol << "\nok: " << (ok ? "true" : "false") << "\n";
  if (!ok) r.exit_code = kExitFailed;
}

void add_common(CLI::App* sub, Common& o, bool needs_graph = true) {
  if (needs_graph) sub->add_option("-g,--graph", o.graph, "graph file")->required();
  sub->add_flag("--json", o.json, "emit JSON");
  sub->add_option("--max-order", o.max_order, "cap on enumerated group elements")->check(CLI::PositiveNumber);
  sub->add_option("--max-degree", o.max_degree, "cap on divisor degree for rank searches");
  sub->add_option("--threads", o.threads, "worker threads")->check(CLI::Range(1, 256));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sandpile invariants: dynamics, group, ideals, divisors, resolutions."};
  app.require_subcommand(1);
  Common o;
  std::string csv, other, action, matrix_path;
  bool elements = false, minimal = false, homogeneous = false;
  double tol = 1e-9;
  std::function<void(Report&)> job;

  auto* s = app.add_subcommand("stabilize", "stabilize a configuration");
  add_common(s, o);
  s->add_option("-c,--config", csv, "configuration, comma-separated")->required();
  s->callback([&] { job = [&](Report& r) { run_stabilize(o, csv, r); }; });

  s = app.add_subcommand("group", "sandpile group invariants");
  add_common(s, o);
  s->add_flag("--elements", elements, "list recurrents and superstables");
  s->callback([&] { job = [&](Report& r) { run_group(o, elements, r); }; });

  s = app.add_subcommand("burning", "minimal burning configuration");
  add_common(s, o);
  s->callback([&] { job = [&](Report& r) { run_burning(o, r); }; });

  s = app.add_subcommand("gb", "Groebner basis of the toppling ideal");
  add_common(s, o);
  s->add_flag("--minimal", minimal, "minimalize the basis");
  s->add_flag("--homogeneous", homogeneous, "homogeneous toppling ideal");
  s->callback([&] { job = [&](Report& r) { run_gb(o, minimal, homogeneous, r); }; });

  s = app.add_subcommand("hilbert", "h-vector and Hilbert function");
  add_common(s, o);
  s->callback([&] { job = [&](Report& r) { run_hilbert(o, r); }; });

  s = app.add_subcommand("tutte", "Tutte polynomial");
  add_common(s, o);
  s->callback([&] { job = [&](Report& r) { run_tutte(o, r); }; });

  s = app.add_subcommand("divisor", "divisor operations");
  add_common(s, o);
  s->add_option("-d,--divisor", csv, "divisor, comma-separated, sink last")->required();
  s->add_option("action", action, "equiv | linsys | rank | rr")
      ->required()
      ->check(CLI::IsMember({"equiv", "linsys", "rank", "rr"}));
  s->add_option("--other", other, "second divisor for equiv");
  s->callback([&] { job = [&](Report& r) { run_divisor(o, action, csv, other, r); }; });

  s = app.add_subcommand("betti", "graded Betti numbers");
  add_common(s, o);
  s->callback([&] { job = [&](Report& r) { run_betti(o, r); }; });

  s = app.add_subcommand("conjecture", "partition formula for Betti numbers");
  add_common(s, o);
  s->callback([&] { job = [&](Report& r) { run_conjecture(o, r); }; });

  s = app.add_subcommand("classify", "complete intersection and Gorenstein tests");
  add_common(s, o);
  s->callback([&] { job = [&](Report& r) { run_classify(o, r); }; });

  s = app.add_subcommand("lattice2graph", "graph with a given reduced Laplacian lattice");
  add_common(s, o, false);
  s->add_option("-m,--matrix", matrix_path, "matrix file, one row per line")->required();
  s->callback([&] { job = [&](Report& r) { run_lattice2graph(o, matrix_path, r); }; });

  s = app.add_subcommand("zeros", "vanishing of basis binomials on orbit points");
  add_common(s, o);
  s->add_option("--tol", tol, "residual tolerance");
  s->callback([&] { job = [&](Report& r) { run_zeros(o, tol, r); }; });

  if (argc > 1 && argv[1][0] != '-') {
    std::set<std::string> known;
    for (const auto* sub : app.get_subcommands({})) known.insert(sub->get_name());
    if (!known.count(argv[1])) {
      std::cerr << "unknown subcommand '" << argv[1] << "'\n";
      return kExitUnknownCommand;
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  Report r;
  try {
    job(r);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kExitCap;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitFailed;
  }
  if (o.json)
    std::cout << r.json.dump(2) << "\n";
  else
    std::cout << r.text.str();
  return r.exit_code;
}
