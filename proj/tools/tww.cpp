#include <fmt/core.h>

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "tww/bench.hpp"
#include "tww/calculus.hpp"
#include "tww/enumerate.hpp"
#include "tww/generate.hpp"
#include "tww/model_check.hpp"
#include "tww/query.hpp"
#include "tww/relevant.hpp"
#include "tww/vc_density.hpp"

using namespace tww;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    int v = std::stoi(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad integer '" + item + "'");
    out.push_back(v);
  }
  return out;
}

// "x=3,y=7" or "x=3 y=7" by name, or "3,7" / "3 7" in free-variable order.
Assignment parse_tuple(const std::string& text, const std::vector<std::string>& vars) {
  std::string s = text;
  for (char& c : s)
    if (c == ',' || c == '\t') c = ' ';
  std::stringstream ss(s);
  std::string item;
  Assignment asg;
  std::size_t pos = 0;
  while (ss >> item) {
    auto eq = item.find('=');
    if (eq == std::string::npos) {
      if (pos >= vars.size()) throw std::invalid_argument("too many values in tuple '" + text + "'");
      asg[vars[pos++]] = std::stoi(item);
    } else {
      asg[item.substr(0, eq)] = std::stoi(item.substr(eq + 1));
    }
  }
  for (auto& v : vars)
    if (!asg.count(v)) throw std::invalid_argument("tuple '" + text + "' misses variable " + v);
  if (asg.size() != vars.size()) throw std::invalid_argument("tuple '" + text + "' names unknown variables");
  return asg;
}

struct Inputs {
  std::string graph, cs, formula;
  Graph g;
  ContractionSequence seq;
  void load() {
    g = parse_graph(read_file(graph));
    seq = parse_contraction_sequence(read_file(cs), g);
  }
};

void add_inputs(CLI::App* sub, Inputs& in, bool with_formula) {
  sub->add_option("--graph", in.graph, "graph file")->required();
  sub->add_option("--cs", in.cs, "contraction sequence file")->required();
  if (with_formula) sub->add_option("--formula", in.formula, "first-order formula")->required();
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

const char* kFooter =
    "CSV outputs:\n"
    "  types:     time,part,rank,size  (universe size of each live part at each time)\n"
    "  vcdensity: a_size,n,stone_size  then '# exponent=E flagged=F'\n"
    "  bench:     n,query_build_ms,query_us,enum_build_ms,outputs,steps_per_output\n";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Twin-width local types: model checking, queries, enumeration, VC density"};
  app.footer(kFooter);
  app.require_subcommand(1);

  Inputs in;
  auto* validate_cmd = app.add_subcommand("validate", "check a contraction sequence and print its width");
  add_inputs(validate_cmd, in, false);

  auto* check_cmd = app.add_subcommand("check", "decide a sentence; prints true/false, timing on stderr");
  add_inputs(check_cmd, in, true);

  std::string tuple, tuples_file;
  auto* query_cmd = app.add_subcommand("query", "answer a formula on one tuple or a file of tuples");
  add_inputs(query_cmd, in, true);
  auto* tuple_opt = query_cmd->add_option("--tuple", tuple, "e.g. x=3,y=7");
  query_cmd->add_option("--tuples-file", tuples_file, "one tuple per line; prints 0/1 per line")->excludes(tuple_opt);

  long long limit = -1;
  auto* enum_cmd = app.add_subcommand("enumerate", "print satisfying tuples as 'x=3 y=7', one full cycle");
  add_inputs(enum_cmd, in, true);
  enum_cmd->add_option("--limit", limit, "stop after N tuples")->check(CLI::NonNegativeNumber);

  std::string a_text, yvars_text;
  auto* stone_cmd = app.add_subcommand("stone", "print the distinct traces of a formula on a vertex set A");
  add_inputs(stone_cmd, in, true);
  stone_cmd->add_option("--A", a_text, "comma-separated vertices")->required();
  stone_cmd->add_option("--yvars", yvars_text, "parameter variables (default: names starting with y)");

  std::string family = "path", sizes_text;
  std::uint64_t seed = 1;
  auto* vc_cmd = app.add_subcommand("vcdensity", "stone-space sizes over a family, A = odd vertices, n = 2|A|");
  vc_cmd->add_option("--family", family, "path|grid|random|edgeless|complete");
  vc_cmd->add_option("--sizes", sizes_text, "comma-separated |A| values")->required();
  vc_cmd->add_option("--formula", in.formula, "formula")->required();
  vc_cmd->add_option("--yvars", yvars_text, "parameter variables");
  vc_cmd->add_option("--seed", seed, "seed for random families");

  int rank = 1;
  auto* types_cmd = app.add_subcommand("types", "universe sizes of live parts per time and rank");
  add_inputs(types_cmd, in, false);
  types_cmd->add_option("--k", rank, "maximum rank")->check(CLI::Range(0, 4));

  int n = 0;
  double p = 0.3;
  std::string out_graph, out_cs;
  auto* gen_cmd = app.add_subcommand("gen", "generate a graph and a contraction sequence");
  gen_cmd->add_option("--family", family, "path|grid|random|edgeless|complete")->required();
  gen_cmd->add_option("--n", n, "number of vertices")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--p", p, "edge probability for random graphs");
  gen_cmd->add_option("--seed", seed, "seed for random graphs");
  gen_cmd->add_option("--out-graph", out_graph, "graph output file")->required();
  gen_cmd->add_option("--out-cs", out_cs, "sequence output file")->required();

  int queries = 1000;
  std::string bench_formula = "E(x,y)";
  sizes_text.clear();
  auto* bench_cmd = app.add_subcommand("bench", "time index builds, queries and enumeration over a family");
  bench_cmd->add_option("--family", family, "path|grid|random|edgeless|complete");
  bench_cmd->add_option("--sizes", sizes_text, "comma-separated n values")->required();
  bench_cmd->add_option("--formula", bench_formula, "formula with free variables");
  bench_cmd->add_option("--queries", queries, "random queries per size")->check(CLI::NonNegativeNumber);
  bench_cmd->add_option("--seed", seed, "seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (*validate_cmd) {
      in.load();
      fmt::print("width {}\n", validate(in.g, in.seq));
    } else if (*check_cmd) {
      in.load();
      auto phi = parse_formula(in.formula);
      auto t0 = std::chrono::steady_clock::now();
      bool v = model_check(in.g, in.seq, *phi);
      fmt::print("{}\n", v ? "true" : "false");
      fmt::print(stderr, "time_ms {:.3f}\n", ms_since(t0));
    } else if (*query_cmd) {
      if (tuple.empty() == tuples_file.empty()) throw std::invalid_argument("give exactly one of --tuple, --tuples-file");
      in.load();
      auto phi = parse_formula(in.formula);
      auto t0 = std::chrono::steady_clock::now();
      QueryEngine qe(in.g, in.seq, *phi);
      fmt::print(stderr, "build_ms {:.3f}\n", ms_since(t0));
      if (!tuple.empty()) {
        fmt::print("{}\n", qe.answer(parse_tuple(tuple, qe.variables())) ? "true" : "false");
      } else {
        std::istringstream lines(read_file(tuples_file));
        std::string line;
        while (std::getline(lines, line)) {
          if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
          fmt::print("{}\n", qe.answer(parse_tuple(line, qe.variables())) ? 1 : 0);
        }
      }
    } else if (*enum_cmd) {
      in.load();
      auto phi = parse_formula(in.formula);
      EnumerationIndex idx(in.g, in.seq, *phi);
      auto e = idx.enumerator();
      Tuple t;
      const auto& vars = idx.variables();
      for (long long count = 0; (limit < 0 || count < limit) && e->next(t); ++count) {
        std::string line;
        for (std::size_t i = 0; i < vars.size(); ++i) line += fmt::format("{}{}={}", i ? " " : "", vars[i], t[i]);
        fmt::print("{}\n", line);
      }
    } else if (*stone_cmd) {
      in.load();
      auto phi = parse_formula(in.formula);
      std::vector<std::string> yvars;
      if (!yvars_text.empty()) {
        std::stringstream ss(yvars_text);
        for (std::string v; std::getline(ss, v, ',');) yvars.push_back(v);
      }
      auto space = stone_space(in.g, parse_int_list(a_text), *phi, yvars);
      fmt::print("# traces {}\n", space.size());
      for (auto& [trace, witness] : space.traces) {
        std::string line;
        for (std::size_t i = 0; i < space.yvars.size(); ++i)
          line += fmt::format("{}{}={}", i ? " " : "", space.yvars[i], witness[i]);
        line += " :";
        for (auto& x : trace) {
          line += " (";
          for (std::size_t i = 0; i < x.size(); ++i) line += fmt::format("{}{}={}", i ? " " : "", space.xvars[i], x[i]);
          line += ")";
        }
        fmt::print("{}\n", line);
      }
    } else if (*vc_cmd) {
      auto phi = parse_formula(in.formula);
      std::vector<std::string> yvars;
      if (!yvars_text.empty()) {
        std::stringstream ss(yvars_text);
        for (std::string v; std::getline(ss, v, ',');) yvars.push_back(v);
      }
      auto rep = vc_density_report(family, parse_int_list(sizes_text), *phi, yvars, seed);
      fmt::print("a_size,n,stone_size\n");
      for (auto& row : rep.rows) fmt::print("{},{},{}\n", row.a_size, row.n, row.stone_size);
      fmt::print("# exponent={:.4f} flagged={}\n", rep.exponent, rep.flagged ? 1 : 0);
    } else if (*types_cmd) {
      in.load();
      validate(in.g, in.seq);
      const int nv = in.g.n();
      TypeArena arena;
      auto regions = nv > 1 ? compute_relevant_regions(in.g, in.seq, scan_radius(rank)) : std::vector<RelevantRegion>{};
      UniverseScan scan(arena, in.g, in.seq, rank, regions);
      std::set<int> live;
      for (int v = 1; v <= nv; ++v) live.insert(v);
      fmt::print("time,part,rank,size\n");
      for (int t = 1;; ++t) {
        for (int part : live)
          for (int j = 0; j <= rank; ++j) fmt::print("{},{},{},{}\n", t, part, j, scan.single(part, j).size());
        if (t >= nv) break;
        scan.advance();
        const Step& st = in.seq.at(t + 1);
        live.erase(st.a);
        live.erase(st.a2);
        live.insert(st.b);
      }
    } else if (*gen_cmd) {
      auto inst = make_family(family, n, seed, p);
      validate(inst.graph, inst.cs);
      write_file(out_graph, format_graph(inst.graph));
      write_file(out_cs, format_contraction_sequence(inst.cs));
    } else if (*bench_cmd) {
      auto phi = parse_formula(bench_formula);
      fmt::print("n,query_build_ms,query_us,enum_build_ms,outputs,steps_per_output\n");
      for (int size : parse_int_list(sizes_text)) {
        auto row = run_bench(make_family(family, size, seed), *phi, queries, seed);
        fmt::print("{},{:.3f},{:.3f},{:.3f},{},{:.3f}\n", row.n, row.query_build_ms, row.query_us, row.enum_build_ms,
                   row.outputs, row.steps_per_output);
      }
    }
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
  return 0;
}
