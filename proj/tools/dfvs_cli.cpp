// dfvs: solve, decompose, generate and validate directed feedback set instances.

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "dfvs/dfvs.hpp"

using namespace dfvs;
namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kParse = 1, kCap = 2, kDecomposition = 3, kInvalidSolution = 4, kMismatch = 5 };

/// Exit with a given status after printing a message to stderr.
struct Failure {
  int code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kParse, "cannot read " + path};
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{kParse, "cannot write " + path};
  out << text;
}

DigraphFile load_graph(const std::string& path) {
  try {
    return parse_digraph(read_file(path));
  } catch (const GraphError& e) {
    throw Failure{kParse, path + ": " + e.what()};
  }
}

Embedding load_embedding(const DigraphFile& f) {
  if (!f.rotation) throw Failure{kDecomposition, "input has no embedding section"};
  return Embedding::from_neighbors(f.graph, *f.rotation);
}

struct Solved {
  OracleResult result;
  int width = -1;
  long long ms = 0;
};

Solved solve(const DigraphFile& f, const std::string& method, const std::string& problem, const std::string& td_path,
             const std::string& sc_path) {
  const DiGraph& g = f.graph;
  const bool arcs = problem == "dfas";
  if (!td_path.empty() && method != "treewidth") throw Failure{kParse, "--td needs --method treewidth"};
  if (!sc_path.empty() && method != "planar") throw Failure{kParse, "--sc needs --method planar"};
  if (method == "planar" && arcs) throw Failure{kDecomposition, "the planar method solves dfvs only"};

  Solved s;
  const auto start = std::chrono::steady_clock::now();
  if (method == "oracle") {
    s.result = arcs ? min_dfas_bruteforce(g) : min_dfvs_bruteforce(g);
  } else if (method == "treewidth") {
    const NiceTreeDecomposition nd = td_path.empty() ? auto_nice(g) : make_nice(parse_td(read_file(td_path), g));
    s.width = nd.width();
    s.result = arcs ? solve_dfas_tw(g, nd) : solve_dfvs_tw(g, nd);
  } else {
    const Embedding e = load_embedding(f);
    if (sc_path.empty()) {
      s.result = solve_dfvs_planar_full(g, e, &s.width);
    } else {
      const ScDecomposition d = parse_sc(read_file(sc_path));
      s.width = d.width();
      s.result = solve_dfvs_planar(g, e, d);
    }
  }
  s.ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return s;
}

std::string solution_text(const DiGraph& g, const OracleResult& r, bool arcs) {
  std::ostringstream out;
  out << r.witness.size() << '\n';
  for (int x : r.witness) {
    if (arcs)
      out << "a " << g.arc(x).tail << ' ' << g.arc(x).head << '\n';
    else
      out << x << '\n';
  }
  return out.str();
}

/// Checks a solution file; returns the reason it is invalid, or "" if valid.
std::string check_solution(const DiGraph& g, const std::string& text) {
  std::istringstream in(text);
  auto lines = detail::data_lines(in);
  if (lines.empty()) throw ParseError(0, "empty solution file");
  auto head = detail::parse_ints(lines[0].second, lines[0].first);
  if (head.size() != 1 || head[0] < 0) throw ParseError(lines[0].first, "expected the solution size");
  VertexSet vs;
  ArcSet as;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto [no, line] = lines[i];
    std::istringstream tok(line);
    std::string first;
    tok >> first;
    if (first == "a") {
      auto ends = detail::parse_ints(line.substr(line.find('a') + 1), no);
      if (ends.size() != 2) throw ParseError(no, "expected 'a u v'");
      auto a = g.find_arc(static_cast<Vertex>(ends[0]), static_cast<Vertex>(ends[1]));
      if (!a) return "arc " + std::to_string(ends[0]) + " " + std::to_string(ends[1]) + " is not in the graph";
      as.push_back(*a);
    } else {
      auto v = detail::parse_ints(line, no);
      if (v.size() != 1) throw ParseError(no, "expected one vertex id");
      if (!g.has_vertex(static_cast<Vertex>(v[0]))) return "vertex " + std::to_string(v[0]) + " is not in the graph";
      vs.push_back(static_cast<Vertex>(v[0]));
    }
  }
  if (!vs.empty() && !as.empty()) return "solution mixes vertices and arcs";
  const std::size_t listed = vs.size() + as.size();
  if (normalized(vs).size() + normalized(as).size() != listed) return "solution repeats an element";
  if (static_cast<long long>(listed) != head[0])
    return "declared size " + std::to_string(head[0]) + " but " + std::to_string(listed) + " elements listed";
  if (!is_acyclic(without(g, normalized(vs), normalized(as)))) return "a cycle survives the deletion";
  return "";
}

std::string relation_text(const PointRelation& r, bool loops) {
  std::ostringstream out;
  out << "boundary";
  for (Vertex v : r.boundary()) out << ' ' << v;
  out << '\n';
  for (auto [s, t] : r.pairs())
    if (loops || s != t) out << s << ' ' << t << '\n';
  return out.str();
}

/// Relation file: "boundary v1 ... vk" then one "s t" pair per line.
PointRelation parse_relation(const std::string& text) {
  std::istringstream in(text);
  auto lines = detail::data_lines(in);
  if (lines.empty()) throw ParseError(0, "empty relation file");
  std::istringstream first(lines[0].second);
  std::string word;
  first >> word;
  if (word != "boundary") throw ParseError(lines[0].first, "expected 'boundary'");
  auto pts = detail::parse_ints(lines[0].second.substr(lines[0].second.find("boundary") + 8), lines[0].first);
  PointRelation r(std::vector<Vertex>(pts.begin(), pts.end()));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto p = detail::parse_ints(lines[i].second, lines[i].first);
    if (p.size() != 2) throw ParseError(lines[i].first, "expected a pair");
    if (r.position(static_cast<Vertex>(p[0])) < 0 || r.position(static_cast<Vertex>(p[1])) < 0)
      throw ParseError(lines[i].first, "pair leaves the boundary");
    r.insert(static_cast<Vertex>(p[0]), static_cast<Vertex>(p[1]));
  }
  return r;
}

std::string hs_text(const HittingSetInstance& inst) {
  std::ostringstream out;
  out << "k " << inst.k << '\n';
  for (const auto& s : inst.sets) {
    out << "set";
    for (const Cell& c : s) out << ' ' << c.row << ' ' << c.col;
    out << '\n';
  }
  return out.str();
}

template <class F>
std::string render(F&& f) {
  std::ostringstream out;
  f(out);
  return out.str();
}

int run_with_errors(const std::function<int()>& body) {
  try {
    return body();
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.code;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << '\n';
    return kCap;
  } catch (const DecompositionError& e) {
    std::cerr << "invalid decomposition: " << e.what() << '\n';
    return kDecomposition;
  } catch (const EmbeddingError& e) {
    std::cerr << "invalid embedding: " << e.what() << '\n';
    return kDecomposition;
  } catch (const GraphError& e) {
    std::cerr << "unsupported graph: " << e.what() << '\n';
    return kDecomposition;
  } catch (const std::invalid_argument& e) {
    std::cerr << "bad parameters: " << e.what() << '\n';
    return kParse;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact directed feedback vertex and arc set solvers"};
  app.require_subcommand(1);
  app.fallthrough();
  bool no_timing = false;
  app.add_flag("--no-timing", no_timing, "Report time_ms as 0 so output is reproducible");

  std::string input, out, td, sc, method = "treewidth", problem = "dfvs", kind, prefix, solution, relation, op, corpus;
  std::vector<std::string> methods{"oracle", "treewidth", "planar"};
  bool exact = false;
  std::uint64_t seed = 1;
  int rows = 3, cols = 3, n = 8, k = 2, sets = 1, points = 4;
  const auto method_check = CLI::IsMember({"oracle", "treewidth", "planar"});
  const auto problem_check = CLI::IsMember({"dfvs", "dfas"});

  auto* solve_cmd = app.add_subcommand("solve", "Compute a minimum deletion set");
  solve_cmd->add_option("--input", input, "Digraph file")->required();
  auto* td_opt = solve_cmd->add_option("--td", td, "Tree decomposition for --method treewidth");
  solve_cmd->add_option("--sc", sc, "Sphere-cut decomposition for --method planar")->excludes(td_opt);
  solve_cmd->add_option("--method", method)->check(method_check);
  solve_cmd->add_option("--problem", problem)->check(problem_check);
  solve_cmd->add_option("--out", out, "Solution file");

  auto* dec_cmd = app.add_subcommand("decompose", "Build and validate a decomposition");
  dec_cmd->add_option("--input", input)->required();
  dec_cmd->add_option("--kind", kind)->required()->check(CLI::IsMember({"tree", "sc"}));
  dec_cmd->add_flag("--exact", exact, "Exact treewidth search (small graphs)");
  dec_cmd->add_option("--out", out)->required();

  auto* gen_cmd = app.add_subcommand("gen", "Generate instances");
  gen_cmd->add_option("--kind", kind)
      ->required()
      ->check(CLI::IsMember({"grid", "random-planar", "hitting-set", "or-gadget", "hardness-chain"}));
  gen_cmd->add_option("--seed", seed);
  gen_cmd->add_option("--out-prefix", prefix)->required();
  gen_cmd->add_option("--rows", rows);
  gen_cmd->add_option("--cols", cols);
  gen_cmd->add_option("--n", n, "Vertex count for random-planar");
  gen_cmd->add_option("--k", k, "Hitting set dimension");
  gen_cmd->add_option("--sets", sets, "Number of hitting set constraints");

  auto* val_cmd = app.add_subcommand("validate", "Check a solution or decomposition against a graph");
  val_cmd->add_option("--input", input)->required();
  auto* sol_opt = val_cmd->add_option("--solution", solution);
  auto* vtd_opt = val_cmd->add_option("--td", td)->excludes(sol_opt);
  val_cmd->add_option("--sc", sc)->excludes(sol_opt)->excludes(vtd_opt);

  auto* pat_cmd = app.add_subcommand("patterns", "Connectivity pattern utilities");
  pat_cmd->add_option("--points", points);
  pat_cmd->add_option("--op", op)->required()->check(CLI::IsMember({"count-noncrossing", "gen", "simplify"}));
  pat_cmd->add_option("--relation", relation, "Relation file; random on --points when absent");
  pat_cmd->add_option("--seed", seed);

  auto* bench_cmd = app.add_subcommand("bench", "Run methods over every .gr file of a directory");
  bench_cmd->add_option("--corpus", corpus)->required()->check(CLI::ExistingDirectory);
  bench_cmd->add_option("--methods", methods)->delimiter(',')->check(method_check);
  bench_cmd->add_option("--problem", problem)->check(problem_check);
  bench_cmd->add_option("--out", out, "Results without timings");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kParse;
  }
  auto timing = [&](long long ms) { return no_timing ? 0LL : ms; };

  if (*solve_cmd) {
    return run_with_errors([&] {
      const DigraphFile f = load_graph(input);
      const Solved s = solve(f, method, problem, td, sc);
      if (!out.empty()) write_file(out, solution_text(f.graph, s.result, problem == "dfas"));
      std::cout << "optimum " << s.result.optimum << " method " << method << " width " << s.width << " time_ms "
                << timing(s.ms) << '\n';
      return kOk;
    });
  }

  if (*dec_cmd) {
    return run_with_errors([&] {
      const DigraphFile f = load_graph(input);
      if (kind == "tree") {
        const TreeDecomposition t = exact ? td_exact_small(f.graph) : td_heuristic(f.graph);
        validate_td(f.graph, t);
        write_file(out, render([&](std::ostream& o) { write_td(o, t, f.graph.n()); }));
        std::cout << "width " << t.width() << " nodes " << t.node_count() << '\n';
      } else {
        const Embedding e = load_embedding(f);
        const ScDecomposition d = build_sc_heuristic(f.graph, e);
        const ScReport rep = validate_sc(f.graph, e, d);
        if (!rep.ok) throw DecompositionError(rep.error);
        write_file(out, render([&](std::ostream& o) { write_sc(o, d, f.graph.arc_count()); }));
        std::cout << "width " << d.width() << " nodes " << d.node_count() << '\n';
      }
      return kOk;
    });
  }

  if (*gen_cmd) {
    return run_with_errors([&] {
      std::vector<std::string> written;
      auto emit = [&](const std::string& ext, const std::string& text) {
        write_file(prefix + ext, text);
        written.push_back(prefix + ext);
      };
      auto emit_planar = [&](const PlanarInstance& p) {
        emit(".gr", render([&](std::ostream& o) { write_digraph(o, p.graph, p.embedding.neighbor_lists()); }));
        const ScDecomposition d = p.decomposition ? *p.decomposition : build_sc_heuristic(p.graph, p.embedding);
        emit(".sc", render([&](std::ostream& o) { write_sc(o, d, p.graph.arc_count()); }));
      };
      if (kind == "grid") {
        emit_planar(gen_grid(rows, cols, seed));
      } else if (kind == "random-planar") {
        emit_planar(gen_random_planar(n, seed));
      } else if (kind == "hitting-set") {
        emit(".hs", hs_text(gen_hitting_set(k, sets, seed)));
      } else if (kind == "or-gadget") {
        emit(".gr", render([&](std::ostream& o) { write_digraph(o, or_gadget().graph); }));
      } else {
        if (k < 2) throw std::invalid_argument("hardness-chain needs --k >= 2");
        const HittingSetInstance inst = gen_hitting_set(k, sets, seed);
        const auto two = reduce_3formula_to_2formula(reduce_hs_to_3formula(inst, true));
        const ReductionOutput r = reduce_2formula_to_dfvs(two.formula, &two.star);
        validate_td(r.graph, *r.decomposition);
        emit(".hs", hs_text(inst));
        emit(".gr", render([&](std::ostream& o) { write_digraph(o, r.graph); }));
        emit(".td", render([&](std::ostream& o) { write_td(o, *r.decomposition, r.graph.n()); }));
        emit(".budget", "budget " + std::to_string(r.budget) + "\n");
      }
      for (const auto& w : written) std::cout << "wrote " << w << '\n';
      return kOk;
    });
  }

  if (*val_cmd) {
    return run_with_errors([&] {
      const DigraphFile f = load_graph(input);
      if (!solution.empty()) {
        const std::string why = check_solution(f.graph, read_file(solution));
        if (!why.empty()) throw Failure{kInvalidSolution, "invalid solution: " + why};
        std::cout << "valid solution\n";
      } else if (!td.empty()) {
        const TreeDecomposition t = parse_td(read_file(td), f.graph);
        std::cout << "valid tree decomposition width " << t.width() << '\n';
      } else if (!sc.empty()) {
        const Embedding e = load_embedding(f);
        const ScReport rep = validate_sc(f.graph, e, parse_sc(read_file(sc)));
        if (!rep.ok) throw DecompositionError(rep.error);
        std::cout << "valid sc-decomposition width " << rep.width << '\n';
      } else {
        throw Failure{kParse, "validate needs --solution, --td or --sc"};
      }
      return kOk;
    });
  }

  if (*pat_cmd) {
    return run_with_errors([&] {
      if (op == "count-noncrossing") {
        std::cout << count_noncrossing(points) << '\n';
        return kOk;
      }
      PointRelation r;
      if (!relation.empty()) {
        r = parse_relation(read_file(relation));
      } else {
        if (points < 1) throw std::invalid_argument("--points must be positive");
        std::vector<Vertex> b(points);
        for (int i = 0; i < points; ++i) b[i] = i + 1;
        r = PointRelation(b);
        SplitMix64 rng(seed);
        for (int i = 0; i < points; ++i)
          for (int j = 0; j < points; ++j)
            if (i != j && rng.coin()) r.set(i, j);
      }
      if (op == "gen") {
        std::cout << relation_text(generate(r), false);
      } else {
        const SimplifyTrace t = simplify_traced(r);
        std::cout << "crossings";
        for (int c : t.crossings) std::cout << ' ' << c;
        std::cout << "\nclique " << clique_number(t.result) << '\n' << relation_text(t.result, false);
      }
      return kOk;
    });
  }

  return run_with_errors([&] {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(corpus))
      if (entry.is_regular_file() && entry.path().extension() == ".gr") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    std::ostringstream plain;
    bool mismatch = false;
    for (const auto& path : files) {
      const std::string name = path.filename().string();
      std::optional<int> agreed;
      DigraphFile f;
      try {
        f = load_graph(path.string());
      } catch (const std::exception& e) {
        std::cout << name << " status parse-error\n";
        plain << name << " status parse-error\n";
        continue;
      } catch (const Failure& e) {
        std::cout << name << " status parse-error\n";
        plain << name << " status parse-error\n";
        continue;
      }
      for (const auto& m : methods) {
        std::string status;
        try {
          if (m == "planar" && (problem == "dfas" || !f.rotation)) {
            status = "skipped";
          } else {
            const Solved s = solve(f, m, problem, "", "");
            std::ostringstream line;
            line << name << ' ' << m << " optimum " << s.result.optimum << " width " << s.width;
            std::cout << line.str() << " time_ms " << timing(s.ms) << '\n';
            plain << line.str() << '\n';
            if (agreed && *agreed != s.result.optimum) mismatch = true;
            agreed = s.result.optimum;
            continue;
          }
        } catch (const CapExceeded&) {
          status = "cap";
        } catch (const std::exception&) {
          status = "error";
        } catch (const Failure&) {
          status = "error";
        }
        std::cout << name << ' ' << m << " status " << status << '\n';
        plain << name << ' ' << m << " status " << status << '\n';
      }
    }
    if (!out.empty()) write_file(out, plain.str());
    if (mismatch) throw Failure{kMismatch, "methods disagree on some instance"};
    return kOk;
  });
}
