// Command-line front end for the tree multicut solver; talks to the shared
// library exclusively through its C interface.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wmctree/wmctree.h"

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitError = 2;

struct InstanceDeleter {
  void operator()(wmct_instance* p) const { wmct_instance_free(p); }
};
struct ReportDeleter {
  void operator()(wmct_report* p) const { wmct_report_free(p); }
};
using InstancePtr = std::unique_ptr<wmct_instance, InstanceDeleter>;
using ReportPtr = std::unique_ptr<wmct_report, ReportDeleter>;

[[noreturn]] void die(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  std::exit(kExitError);
}

void check(wmct_status st) {
  if (st != WMCT_OK) die(wmct_last_error());
}

InstancePtr load(const std::string& path) {
  wmct_instance* raw = nullptr;
  check(wmct_instance_load(path.c_str(), &raw));
  return InstancePtr(raw);
}

std::string take_string(char* s) {
  std::string out = s ? s : "";
  wmct_string_free(s);
  return out;
}

struct SolveFlags {
  std::string file;
  std::string algo = "auto";
  std::int64_t k = -1;
  bool has_k = false;
  std::uint64_t w = 0;
  bool has_w = false;
  std::uint32_t d = 0;
  bool has_d = false;
  std::string trace;
};

ReportPtr run_solve(const wmct_instance* inst, const SolveFlags& f,
                    const std::string& config_echo) {
  wmct_solve_options opts{};
  opts.algo = f.algo.c_str();
  opts.has_k = f.has_k;
  opts.k = f.k;
  opts.has_w = f.has_w;
  opts.w = f.w;
  opts.has_d = f.has_d;
  opts.d = f.d;
  opts.trace_dot_path = f.trace.empty() ? nullptr : f.trace.c_str();
  opts.config_echo = config_echo.c_str();
  wmct_report* rep = nullptr;
  check(wmct_solve(inst, &opts, &rep));
  return ReportPtr(rep);
}

int cmd_solve(const SolveFlags& f) {
  auto inst = load(f.file);
  std::ostringstream echo;
  echo << "solve " << f.file << " --algo " << f.algo;
  if (f.has_k) echo << " --k " << f.k;
  if (f.has_w) echo << " --w " << f.w;
  if (f.has_d) echo << " --d " << f.d;
  auto rep = run_solve(inst.get(), f, echo.str());

  char* json = nullptr;
  check(wmct_report_to_json(rep.get(), &json));
  std::cout << take_string(json) << "\n";

  std::string answer = wmct_report_answer(rep.get());
  std::cerr << "algo=" << wmct_report_algo(rep.get()) << " answer=" << answer;
  if (wmct_report_has_weight(rep.get()))
    std::cerr << " min_weight=" << wmct_report_weight(rep.get());
  std::cerr << " nodes=" << wmct_report_nodes(rep.get())
            << " ms=" << wmct_report_wall_ms(rep.get()) << "\n";
  return answer == "yes" ? kExitYes : kExitNo;
}

int cmd_verify(const std::string& file, const std::vector<std::uint32_t>& ids,
               bool has_w, std::uint64_t w, bool has_k, std::int64_t k) {
  auto inst = load(file);
  int ok = 0;
  char* violation = nullptr;
  check(wmct_verify(inst.get(), ids.data(), ids.size(), has_w, w, has_k, k,
                    &ok, &violation));
  std::string why = take_string(violation);
  if (ok) {
    std::cerr << "valid witness\n";
    return kExitYes;
  }
  std::cout << why << "\n";
  std::cerr << "invalid witness: " << why << "\n";
  return kExitNo;
}

std::pair<std::uint32_t, std::vector<std::uint32_t>> parse_graph_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) die("cannot open " + path);
  std::string raw;
  std::uint32_t n = 0, m = 0;
  bool header = false;
  std::vector<std::uint32_t> edges;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::istringstream ls(raw.substr(0, raw.find('#')));
    std::string tag;
    if (!(ls >> tag)) continue;
    if (!header) {
      if (tag != "graph") die("line " + std::to_string(lineno) +
                              ": expected 'graph <n> <m>' header");
      if (!(ls >> n >> m)) die("bad graph header");
      header = true;
      continue;
    }
    if (tag != "e") die("line " + std::to_string(lineno) + ": expected edge");
    std::uint32_t u, v;
    if (!(ls >> u >> v)) die("bad edge line " + std::to_string(lineno));
    edges.push_back(u);
    edges.push_back(v);
  }
  if (!header) die("empty graph file");
  if (edges.size() != 2 * static_cast<std::size_t>(m))
    die("graph header declared " + std::to_string(m) + " edges, got " +
        std::to_string(edges.size() / 2));
  return {n, std::move(edges)};
}

void write_instance(const wmct_instance* inst, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    char* text = nullptr;
    check(wmct_instance_serialize(inst, &text));
    std::cout << take_string(text);
  } else {
    check(wmct_instance_save(inst, out_path.c_str()));
    std::cerr << "wrote " << out_path << "\n";
  }
}

struct BenchRow {
  std::string instance;
  std::string algo;
  std::string answer;
  std::string weight;
  std::uint64_t nodes = 0;
  std::string bound;
  std::string within_bound;
  double ms = 0.0;
};

void bench_one(const std::string& label, const wmct_instance* inst,
               std::vector<BenchRow>& rows) {
  auto run = [&](const std::string& algo, bool has_k, std::int64_t k,
                 bool has_w, std::uint64_t w, bool has_d, std::uint32_t d) {
    SolveFlags f;
    f.algo = algo;
    f.has_k = has_k;
    f.k = k;
    f.has_w = has_w;
    f.w = w;
    f.has_d = has_d;
    f.d = d;
    auto rep = run_solve(inst, f, "bench " + label);
    BenchRow row;
    row.instance = label;
    row.algo = algo;
    row.answer = wmct_report_answer(rep.get());
    if (wmct_report_has_weight(rep.get()))
      row.weight = std::to_string(wmct_report_weight(rep.get()));
    row.nodes = wmct_report_nodes(rep.get());
    if (wmct_report_has_bound(rep.get())) {
      row.bound = std::to_string(wmct_report_bound(rep.get()));
      row.within_bound = wmct_report_within_bound(rep.get()) ? "true" : "false";
    } else {
      row.within_bound = "true";
    }
    row.ms = wmct_report_wall_ms(rep.get());
    rows.push_back(row);
    return rep;
  };

  auto leaves_rep = run("leaves", false, 0, false, 0, false, 0);
  if (wmct_instance_n(inst) <= 16) run("oracle", false, 0, false, 0, false, 0);
  const bool feasible =
      std::string(wmct_report_answer(leaves_rep.get())) == "yes";
  run("light", false, 0, true,
      feasible ? wmct_report_weight(leaves_rep.get()) : (uint64_t{1} << 40),
      true, wmct_instance_request_degree(inst));
  if (feasible) {
    // Feasible: the branching decision solver gets the tight budgets.
    std::int64_t k =
        static_cast<std::int64_t>(wmct_report_witness_size(leaves_rep.get()));
    std::uint64_t w = wmct_report_weight(leaves_rep.get());
    if (k <= 6) run("k", true, k, true, w, false, 0);
  }
}

int cmd_bench(const std::vector<std::string>& files, std::uint64_t seed,
              const std::string& out_csv) {
  std::vector<std::pair<std::string, InstancePtr>> suite;
  if (files.empty()) {
    auto gen = [&](std::uint32_t n, std::uint32_t pairs, const char* shape,
                   std::uint64_t s) {
      wmct_instance* raw = nullptr;
      check(wmct_gen_random(n, pairs, 50, s, shape, &raw));
      std::ostringstream label;
      label << shape << "-n" << n << "-p" << pairs << "-s" << s;
      suite.emplace_back(label.str(), InstancePtr(raw));
    };
    gen(12, 6, "uniform", seed);
    gen(14, 8, "uniform", seed + 1);
    gen(14, 8, "caterpillar", seed + 2);
    gen(15, 7, "star-ish", seed + 3);
    gen(16, 6, "path", seed + 4);
    gen(40, 10, "uniform", seed + 5);
    gen(40, 12, "caterpillar", seed + 6);
    {
      wmct_instance* raw = nullptr;
      check(wmct_gen_dq_light(2, 4, 40, seed + 7, &raw));
      suite.emplace_back("dq-light-d2-q4", InstancePtr(raw));
    }
  } else {
    for (const auto& f : files) suite.emplace_back(f, load(f));
  }

  std::vector<BenchRow> rows;
  for (const auto& [label, inst] : suite) bench_one(label, inst.get(), rows);

  std::ostringstream csv;
  csv << "instance,algo,answer,weight,nodes,bound,within_bound,ms\n";
  for (const auto& r : rows)
    csv << r.instance << ',' << r.algo << ',' << r.answer << ',' << r.weight
        << ',' << r.nodes << ',' << r.bound << ',' << r.within_bound << ','
        << r.ms << "\n";
  if (out_csv.empty() || out_csv == "-") {
    std::cout << csv.str();
  } else {
    std::ofstream f(out_csv);
    if (!f) die("cannot open " + out_csv);
    f << csv.str();
    std::cerr << "wrote " << out_csv << "\n";
  }
  return kExitYes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact weighted multicut solvers for trees"};
  app.require_subcommand(1);

  // solve
  SolveFlags sf;
  auto* solve = app.add_subcommand("solve", "solve an instance file");
  solve->add_option("file", sf.file, "instance file")->required();
  solve->add_option("--algo", sf.algo, "k | leaves | light | oracle | auto")
      ->check(CLI::IsMember({"k", "leaves", "light", "oracle", "auto"}));
  auto* k_opt = solve->add_option("--k", sf.k, "size budget");
  auto* w_opt = solve->add_option("--w", sf.w, "weight budget");
  auto* d_opt = solve->add_option("--d", sf.d, "request-degree bound");
  solve->add_option("--trace", sf.trace, "write the branching tree as DOT");

  // verify
  std::string vfile;
  std::vector<std::uint32_t> vids;
  std::int64_t vk = 0;
  std::uint64_t vw = 0;
  auto* verify = app.add_subcommand("verify", "check a witness vertex set");
  verify->add_option("file", vfile, "instance file")->required();
  verify->add_option("ids", vids, "witness vertex ids");
  auto* vw_opt = verify->add_option("--w", vw, "weight budget override");
  auto* vk_opt = verify->add_option("--k", vk, "size budget override");

  // gen
  std::uint32_t gn = 10, gpairs = 5;
  std::uint64_t gwmax = 50, gseed = 1;
  std::string gshape = "uniform", gout;
  std::uint64_t gbw = 0;
  std::int64_t gbk = 0;
  auto* gen = app.add_subcommand("gen", "generate a random instance");
  gen->add_option("--n", gn, "vertex count")->required();
  gen->add_option("--pairs", gpairs, "terminal pair count");
  gen->add_option("--wmax", gwmax, "maximum vertex weight");
  gen->add_option("--seed", gseed, "rng seed");
  gen->add_option("--shape", gshape, "uniform | caterpillar | star-ish | path")
      ->check(CLI::IsMember({"uniform", "caterpillar", "star-ish", "path"}));
  gen->add_option("--out", gout, "output file (default stdout)");
  auto* gbw_opt = gen->add_option("--budget-w", gbw, "embed a weight budget");
  auto* gbk_opt = gen->add_option("--budget-k", gbk, "embed a size budget");

  // gen-dq-light
  std::uint32_t dqd = 2, dqq = 4, dqn = 30;
  std::uint64_t dqseed = 1;
  std::string dqout;
  auto* gendq = app.add_subcommand("gen-dq-light",
                                   "generate a certified (d,q)-light instance");
  gendq->add_option("--d", dqd, "request-degree bound")->required();
  gendq->add_option("--q", dqq, "leaf bound per heavy component")->required();
  gendq->add_option("--n", dqn, "size target")->required();
  gendq->add_option("--seed", dqseed, "rng seed");
  gendq->add_option("--out", dqout, "output file (default stdout)");

  // reduce-vc
  std::string rvgraph, rvout;
  auto* reducevc = app.add_subcommand(
      "reduce-vc", "build a multicut instance from a vertex cover input");
  reducevc->add_option("--graph", rvgraph, "graph file: 'graph n m' + 'e u v' lines")
      ->required();
  reducevc->add_option("--out", rvout, "output file (default stdout)");

  // classify
  std::string cfile;
  std::uint32_t cd = 0, cq = 0;
  auto* classify = app.add_subcommand("classify", "request-degree classification");
  classify->add_option("file", cfile, "instance file")->required();
  classify->add_option("--d", cd, "request-degree bound")->required();
  auto* cq_opt = classify->add_option("--q", cq, "check (d,q)-lightness");

  // bench
  std::vector<std::string> bfiles;
  std::uint64_t bseed = 1;
  std::string bout;
  auto* bench = app.add_subcommand("bench", "run a labeled suite, emit CSV");
  bench->add_option("files", bfiles, "instance files (default: built-in suite)");
  bench->add_option("--seed", bseed, "suite seed");
  bench->add_option("--out", bout, "CSV output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (solve->parsed()) {
      sf.has_k = k_opt->count() > 0;
      sf.has_w = w_opt->count() > 0;
      sf.has_d = d_opt->count() > 0;
      return cmd_solve(sf);
    }
    if (verify->parsed())
      return cmd_verify(vfile, vids, vw_opt->count() > 0, vw,
                        vk_opt->count() > 0, vk);
    if (gen->parsed()) {
      wmct_instance* raw = nullptr;
      check(wmct_gen_random(gn, gpairs, gwmax, gseed, gshape.c_str(), &raw));
      InstancePtr inst(raw);
      if (gbw_opt->count() > 0 || gbk_opt->count() > 0)
        check(wmct_instance_set_budgets(inst.get(), gbw_opt->count() > 0, gbw,
                                        gbk_opt->count() > 0, gbk));
      write_instance(inst.get(), gout);
      return kExitYes;
    }
    if (gendq->parsed()) {
      wmct_instance* raw = nullptr;
      check(wmct_gen_dq_light(dqd, dqq, dqn, dqseed, &raw));
      InstancePtr inst(raw);
      write_instance(inst.get(), dqout);
      return kExitYes;
    }
    if (reducevc->parsed()) {
      auto [n, edges] = parse_graph_file(rvgraph);
      wmct_instance* raw = nullptr;
      check(wmct_reduce_vertex_cover(
          n, edges.data(), static_cast<std::uint32_t>(edges.size() / 2), &raw));
      InstancePtr inst(raw);
      write_instance(inst.get(), rvout);
      return kExitYes;
    }
    if (classify->parsed()) {
      auto inst = load(cfile);
      char* json = nullptr;
      check(wmct_classify(inst.get(), cd, cq_opt->count() > 0, cq, &json));
      std::cout << take_string(json) << "\n";
      return kExitYes;
    }
    if (bench->parsed()) return cmd_bench(bfiles, bseed, bout);
  } catch (const std::exception& e) {
    die(e.what());
  }
  return kExitError;
}
