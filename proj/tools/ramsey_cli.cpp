// ramsey: command-line front end for the workbench.
//
//   ramsey witness FILE --spec free
//   ramsey number -r 2 -c 2 --spec homogeneous -m 3 [--out cex.json]
//   ramsey reduce FILE --kind trapdecompose --out prefix
//   ramsey audit counting --trials 500 --seed 7
//   ramsey generate --kind bbounded --b 2 -r 2 -n 10 --seed 1 --out f.json
//
// Each run prints one JSON record on stdout and a table on stderr.
// Exit codes: 0 success, 2 input error, 3 budget exhausted, 4 infeasible.

#include <chrono>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ramsey/audit.hpp"
#include "ramsey/io.hpp"
#include "ramsey/reductions.hpp"
#include "ramsey/search.hpp"

using namespace ramsey;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_input = 2;
constexpr int exit_budget = 3;
constexpr int exit_infeasible = 4;

struct Globals {
  unsigned threads = 1;
  bool timing = false;
  std::string csv;
};

void print_table(const std::vector<std::string> &header, const std::vector<std::vector<std::string>> &rows) {
  std::vector<std::size_t> w(header.size());
  for (std::size_t i = 0; i < header.size(); ++i)
    w[i] = header[i].size();
  for (const auto &r : rows)
    for (std::size_t i = 0; i < r.size() && i < w.size(); ++i)
      w[i] = std::max(w[i], r[i].size());
  auto line = [&](const std::vector<std::string> &cells) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      const std::string &c = i < cells.size() ? cells[i] : std::string();
      std::cerr << (i ? "  " : "") << c << std::string(w[i] - c.size(), ' ');
    }
    std::cerr << '\n';
  };
  line(header);
  for (const auto &r : rows)
    line(r);
}

std::string join(const std::vector<Element> &xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i)
    s += (i ? " " : "") + std::to_string(xs[i]);
  return s;
}

struct SpecOptions {
  std::string name;
  std::size_t d = 1;
  std::vector<Color> universe;
};

void add_spec_options(CLI::App *cmd, SpecOptions &o, const std::vector<std::string> &allowed) {
  cmd->add_option("--spec", o.name, "witness property")->required()->check(CLI::IsMember(allowed));
  cmd->add_option("--d", o.d, "achromatic bound d (palette size <= d)");
  cmd->add_option("--universe", o.universe, "thin universe colors (default 0..colorCount-1)")->delimiter(',');
}

PropertySpec make_spec(const SpecOptions &o, std::optional<Color> color_count) {
  if (o.name == "homogeneous")
    return Homogeneous{};
  if (o.name == "achromatic")
    return Achromatic(o.d);
  if (o.name == "free")
    return Free{};
  if (o.name == "rainbow")
    return Rainbow{};
  if (!o.universe.empty())
    return Thin(Palette(o.universe));
  if (!color_count)
    throw std::invalid_argument("--spec thin needs --universe when the file declares no colorCount");
  return Thin(Palette::iota(*color_count));
}

json spec_json(const SpecOptions &o) {
  json j{{"spec", o.name}};
  if (o.name == "achromatic")
    j["d"] = o.d;
  if (o.name == "thin" && !o.universe.empty())
    j["universe"] = Palette(o.universe).colors();
  return j;
}

// ---------------------------------------------------------------------------

struct WitnessOptions {
  std::string file;
  SpecOptions spec;
  std::optional<std::uint64_t> node_limit;
};

int run_witness(const WitnessOptions &o, const Globals &g, RunRecord &rec) {
  const Coloring f = load_coloring(o.file);
  const PropertySpec spec = make_spec(o.spec, f.color_count());
  rec.parameters = spec_json(o.spec);
  rec.parameters["file"] = o.file;
  rec.parameters["r"] = f.arity();
  rec.parameters["n"] = f.domain();
  if (o.node_limit)
    rec.parameters["node_limit"] = *o.node_limit;
  const WitnessResult res = max_witness(f, spec, SearchBudget{o.node_limit}, g.threads);
  rec.result = {{"size", res.size},
                {"witness", to_json(res.witness)},
                {"palette", to_json(res.palette)},
                {"certified", res.certified},
                {"nodes", res.nodes}};
  print_table({"spec", "size", "witness", "certified"},
              {{spec_name(spec), std::to_string(res.size), res.witness.str(), res.certified ? "yes" : "lower bound"}});
  if (!g.csv.empty())
    append_csv(g.csv, {"file", "spec", "size", "witness", "certified", "nodes"},
               {{o.file, spec_name(spec), std::to_string(res.size), join(res.witness.elements()),
                 res.certified ? "1" : "0", std::to_string(res.nodes)}});
  return res.certified ? exit_ok : exit_budget;
}

// ---------------------------------------------------------------------------

struct NumberOptions {
  unsigned r = 2;
  Color c = 2;
  SpecOptions spec;
  std::size_t m = 3;
  unsigned n_max = 8;
  std::uint64_t max_colorings = std::uint64_t{1} << 26;
  std::string out;
};

int run_number(const NumberOptions &o, const Globals &g, RunRecord &rec) {
  const PropertySpec spec = make_spec(o.spec, o.c);
  rec.parameters = spec_json(o.spec);
  rec.parameters["r"] = o.r;
  rec.parameters["c"] = o.c;
  rec.parameters["m"] = o.m;
  rec.parameters["n_max"] = o.n_max;
  const PartitionResult res = partition_number(o.r, o.c, spec, o.m, o.n_max, o.max_colorings);
  rec.result["number"] = res.number ? json(*res.number) : json(nullptr);
  rec.result["colorings_checked"] = res.colorings_checked;
  rec.result["counterexample"] = res.counterexample ? to_json(*res.counterexample) : json(nullptr);
  if (res.counterexample && !o.out.empty()) {
    save_coloring(o.out, *res.counterexample);
    rec.result["counterexample_file"] = o.out;
  }
  print_table({"r", "c", "spec", "m", "number", "counterexample n"},
              {{std::to_string(o.r), std::to_string(o.c), spec_name(spec), std::to_string(o.m),
                res.number ? std::to_string(*res.number) : "> n_max",
                res.counterexample ? std::to_string(res.counterexample->domain()) : "-"}});
  if (!g.csv.empty())
    append_csv(g.csv, {"r", "c", "spec", "m", "n_max", "number"},
               {{std::to_string(o.r), std::to_string(o.c), spec_name(spec), std::to_string(o.m),
                 std::to_string(o.n_max), res.number ? std::to_string(*res.number) : ""}});
  return exit_ok;
}

// ---------------------------------------------------------------------------

struct ReduceOptions {
  std::string file;
  std::string kind;
  Color d = 1;
  std::string out;
};

int run_reduce(const ReduceOptions &o, const Globals &, RunRecord &rec) {
  const Coloring f = load_coloring(o.file);
  rec.parameters = {{"file", o.file}, {"kind", o.kind}, {"out", o.out}};
  std::vector<std::pair<std::string, Coloring>> outputs;
  if (o.kind == "truncate") {
    rec.parameters["d"] = o.d;
    outputs.emplace_back(o.out, truncate(f, o.d));
  } else if (o.kind == "rainbow2free") {
    outputs.emplace_back(o.out, rainbow_to_free(f));
  } else {
    auto parts = trap_decompose(f);
    for (std::size_t k = 0; k < parts.size(); ++k)
      outputs.emplace_back(o.out + "_f" + std::to_string(k) + ".json", std::move(parts[k]));
  }
  json files = json::array();
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    const auto &[path, g] = outputs[i];
    save_coloring(path, g);
    json entry{{"path", path}, {"r", g.arity()}, {"n", g.domain()},
               {"colorCount", g.color_count() ? json(*g.color_count()) : json(nullptr)}};
    if (o.kind == "trapdecompose")
      entry["k_trapped"] = is_k_trapped(g, i);
    files.push_back(entry);
    rows.push_back({path, g.color_count() ? std::to_string(*g.color_count()) : "-"});
  }
  rec.result["files"] = files;
  print_table({"output", "colorCount"}, rows);
  return exit_ok;
}

// ---------------------------------------------------------------------------

struct AuditOptions {
  std::string kind;
  unsigned r = 2;
  std::size_t depth = 4;
  unsigned k = 1;
  unsigned c = 2;
  std::size_t stem_len = 2;
  std::uint64_t seed = 7;
  std::size_t trials = 100;
  std::size_t max = 20;
};

int run_audit(const AuditOptions &o, const Globals &g, RunRecord &rec) {
  AuditReport rep;
  if (o.kind == "counting") {
    rep = audit_counting(o.seed, o.trials, o.r);
    rec.seed = o.seed;
  } else if (o.kind == "ladderA") {
    rep = audit_ladder_a(o.r, o.depth, o.seed, o.trials);
    rec.seed = o.seed;
  } else if (o.kind == "ladderB") {
    rep = audit_ladder_b(o.stem_len, o.k, o.c, o.depth);
  } else if (o.kind == "tree-measure") {
    rep = audit_tree_measure(o.seed, o.trials);
    rec.seed = o.seed;
  } else if (o.kind == "schroder") {
    rep = audit_schroder(o.max);
  } else {
    rep = audit_gap(o.max);
  }
  rec.parameters = rep.parameters;
  rec.parameters["kind"] = rep.kind;
  rec.result = rep.result();
  print_table(rep.header, rep.rows);
  std::cerr << rep.kind << ": " << rep.passed << "/" << rep.trials << " passed\n";
  if (!g.csv.empty())
    append_csv(g.csv, {"audit", "seed", "trials", "passed", "failed"},
               {{rep.kind, rec.seed ? std::to_string(*rec.seed) : "", std::to_string(rep.trials),
                 std::to_string(rep.passed), std::to_string(rep.failed())}});
  return exit_ok;
}

// ---------------------------------------------------------------------------

struct GenerateOptions {
  std::string kind = "uniform";
  unsigned r = 2;
  unsigned n = 10;
  Color colors = 2;
  std::size_t b = 2;
  std::optional<Color> budget;
  std::size_t k = 0;
  Color cap = 16;
  Color offset = 3;
  std::uint64_t seed = 1;
  std::string out;
};

int run_generate(const GenerateOptions &o, const Globals &, RunRecord &rec) {
  ColoringKind kind = UniformKind{o.colors};
  rec.parameters = {{"kind", o.kind}, {"r", o.r}, {"n", o.n}};
  if (o.kind == "uniform") {
    rec.parameters["colors"] = o.colors;
  } else if (o.kind == "bbounded") {
    kind = BBoundedKind{o.b, o.budget};
    rec.parameters["b"] = o.b;
    rec.parameters["color_budget"] = o.budget ? json(*o.budget) : json(nullptr);
  } else if (o.kind == "ktrapped") {
    kind = KTrappedKind{o.k, o.cap};
    rec.parameters["k"] = o.k;
    rec.parameters["cap"] = o.cap;
  } else {
    kind = BelowMaxKind{o.offset};
    rec.parameters["offset"] = o.offset;
  }
  rec.seed = o.seed;
  const Coloring f = random_coloring(kind, o.r, o.n, o.seed);
  if (!o.out.empty()) {
    save_coloring(o.out, f);
    rec.result["file"] = o.out;
  }
  rec.result["coloring"] = to_json(f);
  print_table({"kind", "r", "n", "values"}, {{o.kind, std::to_string(o.r), std::to_string(o.n), std::to_string(f.size())}});
  return exit_ok;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Finite partition-calculus workbench"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--threads", g.threads, "worker threads for the exact search (does not change results)")
      ->check(CLI::PositiveNumber);
  app.add_flag("--timing", g.timing, "include wall time in the JSON record");
  app.add_option("--csv", g.csv, "append a CSV row to this file");

  WitnessOptions wo;
  auto *witness = app.add_subcommand("witness", "exact maximum witness for a coloring file");
  witness->add_option("file", wo.file, "coloring JSON file")->required();
  add_spec_options(witness, wo.spec, {"homogeneous", "achromatic", "free", "thin", "rainbow"});
  witness->add_option("--node-limit", wo.node_limit, "branch node budget per root branch");

  NumberOptions no;
  auto *number = app.add_subcommand("number", "least n such that every c-coloring of [n]^r has a witness");
  number->add_option("-r", no.r, "arity")->required();
  number->add_option("-c", no.c, "number of colors")->required();
  add_spec_options(number, no.spec, {"homogeneous", "achromatic"});
  number->add_option("-m", no.m, "witness size")->required();
  number->add_option("--n-max", no.n_max, "largest n to try");
  number->add_option("--max-colorings", no.max_colorings, "refuse enumerations larger than this");
  number->add_option("--out", no.out, "write the counterexample coloring here");

  ReduceOptions ro;
  auto *reduce = app.add_subcommand("reduce", "apply a coloring reduction");
  reduce->add_option("file", ro.file, "coloring JSON file")->required();
  reduce->add_option("--kind", ro.kind)->required()->check(CLI::IsMember({"truncate", "rainbow2free", "trapdecompose"}));
  reduce->add_option("--d", ro.d, "truncation bound");
  reduce->add_option("--out", ro.out, "output file (prefix for trapdecompose)")->required();

  AuditOptions ao;
  auto *audit = app.add_subcommand("audit", "seeded invariant suites");
  audit->add_option("kind", ao.kind)
      ->required()
      ->check(CLI::IsMember({"ladderA", "ladderB", "tree-measure", "counting", "schroder", "gap"}));
  audit->add_option("-r", ao.r, "arity");
  audit->add_option("--depth", ao.depth, "ladder depth");
  audit->add_option("--k", ao.k, "trap index / binomial order for ladderB");
  audit->add_option("--c", ao.c, "exponent offset c for ladderB");
  audit->add_option("--stem-len", ao.stem_len, "stem length for ladderB");
  audit->add_option("--seed", ao.seed, "64-bit seed");
  audit->add_option("--trials", ao.trials, "number of random trials");
  audit->add_option("--max", ao.max, "largest index for schroder/gap");

  GenerateOptions go;
  auto *generate = app.add_subcommand("generate", "seeded random coloring");
  generate->add_option("--kind", go.kind)->check(CLI::IsMember({"uniform", "bbounded", "ktrapped", "belowmax"}));
  generate->add_option("-r", go.r, "arity");
  generate->add_option("-n", go.n, "domain size");
  generate->add_option("--colors", go.colors, "colors for uniform");
  generate->add_option("--b", go.b, "multiplicity bound for bbounded");
  generate->add_option("--color-budget", go.budget, "palette cap for bbounded");
  generate->add_option("--k", go.k, "trap index for ktrapped");
  generate->add_option("--cap", go.cap, "top trap cap for ktrapped");
  generate->add_option("--offset", go.offset, "offset for belowmax");
  generate->add_option("--seed", go.seed, "64-bit seed");
  generate->add_option("--out", go.out, "write the coloring here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : exit_input;
  }

  RunRecord rec;
  const auto start = std::chrono::steady_clock::now();
  int rc = exit_ok;
  try {
    if (*witness) {
      rec.command = "witness";
      rc = run_witness(wo, g, rec);
    } else if (*number) {
      rec.command = "number";
      rc = run_number(no, g, rec);
    } else if (*reduce) {
      rec.command = "reduce";
      rc = run_reduce(ro, g, rec);
    } else if (*audit) {
      rec.command = "audit";
      rc = run_audit(ao, g, rec);
    } else {
      rec.command = "generate";
      rc = run_generate(go, g, rec);
    }
  } catch (const infeasible_error &e) {
    std::cerr << "refused: " << e.what() << '\n';
    rec.result = {{"error", "infeasible"}, {"message", e.what()}, {"estimate", e.estimate()}};
    rc = exit_infeasible;
  } catch (const not_two_bounded &e) {
    std::cerr << "error: " << e.what() << '\n';
    rec.result = {{"error", "input"}, {"message", e.what()}, {"color", e.color()}};
    rc = exit_input;
  } catch (const std::exception &e) {
    // input_error, std::invalid_argument, std::out_of_range and friends
    std::cerr << "error: " << e.what() << '\n';
    rec.result = {{"error", "input"}, {"message", e.what()}};
    rc = exit_input;
  }
  if (g.timing)
    rec.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  std::cout << rec.dump();
  return rc;
}
