#include "lvs/cli.hpp"

#include "lvs/acceptance.hpp"
#include "lvs/error.hpp"
#include "lvs/instances.hpp"
#include "lvs/io.hpp"
#include "lvs/quantum.hpp"
#include "lvs/report.hpp"
#include "lvs/sampling.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace lvs::cli {

namespace {

struct ScoresOpts {
  std::string input;
  std::string mode = "exact";
  std::string side = "row";
  double eps = 0.1;
  std::string json_path;
  std::uint64_t seed = 1;
};

struct SampleOpts {
  std::string input;
  std::string side = "row";
  std::size_t count = 10;
  std::uint64_t seed = 1;
};

struct SolveOpts {
  std::string a_path;
  std::string b_path;
  double eps = 0.25;
  double lambda = 0.0;
  std::string engine = "classical";
  std::string scores = "exact";
  std::string method = "rows";
  std::uint64_t seed = 1;
  std::string json_path;
};

struct RankOpts {
  std::string input;
  double eps = 0.1;
  std::uint64_t seed = 1;
};

struct GenOpts {
  std::string kind = "random-lowrank";
  Index n = 100;
  Index d = 10;
  Index r = 0;
  double decay = 0.9;
  double noise = 0.1;
  Index marked = 1;
  std::string pattern;
  std::uint64_t seed = 1;
  std::string out;
};

struct BenchOpts {
  std::string suite = "all";
  std::uint64_t seed = 1;
  std::string out;
  std::string series_dir;
  std::size_t threads = 0;
  Index dim_limit = kMaxUnitaryDim;
  std::vector<std::string> only;
};

void write_json(const json& j, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << j.dump(2) << '\n';
    return;
  }
  std::ofstream f(path);
  if (!f) throw InputError("cannot write " + path);
  f << j.dump(2) << '\n';
}

Side parse_side(const std::string& s) { return s == "column" ? Side::column : Side::row; }

void require_quantum_size(const Matrix& a) {
  const Index dim = 2 * std::max(a.rows(), a.cols());
  if (dim > kMaxUnitaryDim) {
    throw InputError("quantum simulation needs a dilation of size " + std::to_string(dim) + " > " +
                     std::to_string(kMaxUnitaryDim));
  }
}

// Sign-transformed encoding used by the quantum score and sample commands.
BlockEncoding transformed_encoding(const Matrix& a, double poly_eps) {
  const SvdFactors f = svd(a);
  if (f.degenerate()) throw DegenerateError("A is zero");
  const BlockEncoding be = dilate_block_encoding(a);
  const double delta = std::min(f.sigma_min() / (3.0 * be.alpha), 1.0 / 6.0);
  return apply_svt(be, build_sign_polynomial(delta, poly_eps));
}

int cmd_scores(const ScoresOpts& o, std::ostream& out) {
  const Matrix a = io::load_matrix(o.input);
  const Side side = parse_side(o.side);
  Rng rng(o.seed);
  ScoreVector sv;
  json extra = json::object();
  if (o.mode == "exact") {
    const SvdFactors f = svd(a);
    sv = side == Side::row ? row_leverage_scores(f) : col_leverage_scores(f);
    extra["rank"] = f.rank();
  } else if (o.mode == "sketched") {
    Index rank = 0;
    sv = side == Side::row ? approx_leverage_scores_sketched(a, o.eps, rng, &rank)
                           : approx_leverage_scores_sketched(a.transpose(), o.eps, rng, &rank);
    if (side == Side::column) sv.kind = ScoreKind::column;
    extra["rank"] = rank;
  } else {
    require_quantum_size(a);
    const BlockEncoding w = transformed_encoding(a, std::min(1e-3, o.eps / 20.0));
    const Index len = side == Side::row ? a.rows() : a.cols();
    sv.scores.resize(len);
    sv.kind = side == Side::row ? ScoreKind::row : ScoreKind::column;
    CostLedger ledger;
    for (Index j = 0; j < len; ++j) sv.scores(j) = estimate_leverage_score(w, j, o.eps, 15, rng, side, &ledger);
    sv.total = sv.scores.sum();
    extra["ae_calls"] = ledger.ae_calls;
    extra["ae_iterations"] = ledger.ae_iterations;
  }
  json j = to_json(sv);
  j["mode"] = o.mode;
  j["side"] = o.side;
  j["seed"] = o.seed;
  for (auto& [k, v] : extra.items()) j[k] = v;
  write_json(j, o.json_path, out);
  return kOk;
}

int cmd_sample(const SampleOpts& o, std::ostream& out) {
  const Matrix a = io::load_matrix(o.input);
  const SvdFactors f = svd(a);
  if (f.degenerate()) throw DegenerateError("A is zero");
  const Side side = parse_side(o.side);
  const Distribution dist =
      Distribution::from_scores(side == Side::row ? row_leverage_scores(f) : col_leverage_scores(f));
  Rng rng(o.seed);
  const SamplingMatrix s = draw_sampler(dist, o.count, side, rng);
  out << "index,probability,weight\n";
  for (const auto& d : s.draws) out << d.index << ',' << dist[static_cast<std::size_t>(d.index)] << ',' << d.weight << '\n';
  return kOk;
}

int cmd_solve(const std::string& problem, const SolveOpts& o, std::ostream& out) {
  const Matrix a = io::load_matrix(o.a_path);
  const Vector b = io::load_vector(o.b_path);
  Rng rng(o.seed);
  const ScoreMode mode = o.scores == "sketched" ? ScoreMode::sketched : ScoreMode::exact;
  SolveReport rep;
  if (problem == "ls") {
    if (o.engine == "quantum") {
      require_quantum_size(a);
      rep = algorithm2_quantum_ls(a, b, o.eps, rng);
    } else {
      rep = algorithm1_ls(a, b, o.eps, rng, mode);
    }
  } else {
    if (!(o.lambda > 0.0)) throw ParameterError("--lambda must be positive for ridge");
    if (o.engine == "quantum") {
      require_quantum_size(extended_matrix(a, o.lambda));
      rep = algorithm4_quantum_ridge(a, b, o.lambda, o.eps, rng);
    } else if (o.method == "column") {
      rep = algorithm3_ridge(a, b, o.lambda, o.eps, rng, mode);
    } else {
      rep = algorithm4_classical(a, b, o.lambda, o.eps, rng, mode);
    }
  }
  json j = to_json(rep);
  j["problem"] = problem;
  j["eps"] = o.eps;
  if (problem == "ridge") j["lambda"] = o.lambda;
  write_json(j, o.json_path, out);
  return kOk;
}

int cmd_rank(const RankOpts& o, std::ostream& out) {
  const Matrix a = io::load_matrix(o.input);
  require_quantum_size(a);
  Rng rng(o.seed);
  const RankResult res = quantum_rank(a, o.eps, rng);
  json j;
  j["estimate"] = res.estimate;
  j["exact_rank"] = res.exact_rank;
  j["eps"] = o.eps;
  j["poly_degree"] = res.poly_degree;
  j["ae_calls"] = res.ledger.ae_calls;
  j["ae_iterations"] = res.ledger.ae_iterations;
  j["seed"] = o.seed;
  write_json(j, "", out);
  return kOk;
}

std::vector<int> parse_pattern(const std::string& text) {
  std::vector<int> p;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok != "0" && tok != "1") throw ParameterError("--pattern takes comma-separated 0/1 entries");
    p.push_back(tok == "1");
  }
  return p;
}

int cmd_gen(const GenOpts& o, std::ostream& out) {
  InstanceSpec spec;
  spec.kind = parse_instance_kind(o.kind);
  if (spec.kind == InstanceKind::file) throw ParameterError("gen cannot produce kind 'file'");
  spec.n = o.n;
  spec.d = o.d;
  spec.r = o.r;
  spec.decay = o.decay;
  spec.noise = o.noise;
  spec.marked = o.marked;
  if (!o.pattern.empty()) spec.pattern = parse_pattern(o.pattern);
  Rng rng(o.seed);
  const Instance inst = generate_instance(spec, rng);
  const std::string a_path = o.out + "_A.mtx";
  io::save_matrix(a_path, inst.a);
  json j;
  j["kind"] = o.kind;
  j["description"] = inst.description;
  j["rows"] = inst.a.rows();
  j["cols"] = inst.a.cols();
  j["a"] = a_path;
  if (inst.b) {
    const std::string b_path = o.out + "_b.csv";
    io::save_vector(b_path, *inst.b);
    j["b"] = b_path;
  }
  if (!inst.pattern.empty()) j["pattern"] = inst.pattern;
  j["seed"] = o.seed;
  write_json(j, "", out);
  return kOk;
}

int cmd_bench(const BenchOpts& o, const std::string& command, std::ostream& out) {
  AcceptanceConfig cfg;
  cfg.suite = o.suite;
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  cfg.quantum_dim_limit = o.dim_limit;
  cfg.only = o.only;
  const RunReport report = run_acceptance_suite(cfg, command);
  for (const auto& c : report.criteria) out << summary_line(c) << '\n';
  if (!o.out.empty()) write_json(to_json(report), o.out, out);
  if (!o.series_dir.empty()) {
    std::filesystem::create_directories(o.series_dir);
    for (const auto& [id, s] : report.series) {
      std::ofstream f(std::filesystem::path(o.series_dir) / (id + ".csv"));
      f << to_csv(s);
    }
  }
  return report.all_passed() ? kOk : kCriterionFailure;
}

std::string join(const std::vector<std::string>& args) {
  std::string s = "lvs";
  for (const auto& a : args) s += ' ' + a;
  return s;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Leverage-score sampling for least squares and ridge regression", "lvs"};
  app.require_subcommand(1);

  ScoresOpts scores;
  auto* sc = app.add_subcommand("scores", "Leverage scores of a matrix");
  sc->add_option("--input", scores.input, "Matrix file")->required();
  sc->add_option("--mode", scores.mode)->check(CLI::IsMember({"exact", "sketched", "quantum"}));
  sc->add_option("--side", scores.side)->check(CLI::IsMember({"row", "column"}));
  sc->add_option("--eps", scores.eps, "Relative (sketched) or additive (quantum) error")->check(CLI::Range(1e-6, 1.0));
  sc->add_option("--json", scores.json_path, "Output file, stdout when absent");
  sc->add_option("--seed", scores.seed);

  SampleOpts sample;
  auto* sa = app.add_subcommand("sample", "Draw indices from the leverage-score distribution");
  sa->add_option("--input", sample.input)->required();
  sa->add_option("--side", sample.side)->check(CLI::IsMember({"row", "column"}));
  sa->add_option("--count", sample.count)->check(CLI::PositiveNumber);
  sa->add_option("--seed", sample.seed);

  SolveOpts solve;
  auto* so = app.add_subcommand("solve", "Sampled least-squares or ridge solve");
  so->require_subcommand(1);
  auto add_solve_opts = [&](CLI::App* sub, bool ridge) {
    sub->add_option("--a", solve.a_path)->required();
    sub->add_option("--b", solve.b_path)->required();
    sub->add_option("--eps", solve.eps)->check(CLI::Range(1e-6, 1.0));
    sub->add_option("--engine", solve.engine)->check(CLI::IsMember({"classical", "quantum"}));
    sub->add_option("--scores", solve.scores, "Classical score mode")->check(CLI::IsMember({"exact", "sketched"}));
    sub->add_option("--seed", solve.seed);
    sub->add_option("--json", solve.json_path);
    if (ridge) {
      sub->add_option("--lambda", solve.lambda)->required();
      sub->add_option("--method", solve.method, "Classical ridge: rows (row then column sampling) or column")
          ->check(CLI::IsMember({"rows", "column"}));
    }
  };
  auto* so_ls = so->add_subcommand("ls", "Least squares");
  add_solve_opts(so_ls, false);
  auto* so_ridge = so->add_subcommand("ridge", "Ridge regression");
  add_solve_opts(so_ridge, true);

  RankOpts rank;
  auto* qs = app.add_subcommand("qsim", "Quantum-simulation utilities");
  qs->require_subcommand(1);
  auto* qs_rank = qs->add_subcommand("rank", "Rank estimate via the sign transform");
  qs_rank->add_option("--input", rank.input)->required();
  qs_rank->add_option("--eps", rank.eps)->check(CLI::Range(1e-4, 1.0));
  qs_rank->add_option("--seed", rank.seed);

  GenOpts gen;
  auto* ge = app.add_subcommand("gen", "Generate an instance");
  ge->add_option("--kind", gen.kind)
      ->check(CLI::IsMember({"diag-search", "existence", "spike", "random-lowrank", "coherent"}));
  ge->add_option("--n", gen.n);
  ge->add_option("--d", gen.d);
  ge->add_option("--r", gen.r);
  ge->add_option("--decay", gen.decay);
  ge->add_option("--noise", gen.noise);
  ge->add_option("--marked", gen.marked);
  ge->add_option("--pattern", gen.pattern, "Comma-separated 0/1 entries");
  ge->add_option("--seed", gen.seed);
  ge->add_option("--out", gen.out, "Output prefix")->required();

  BenchOpts bench;
  auto* be = app.add_subcommand("bench", "Benchmarks");
  be->require_subcommand(1);
  auto* be_acc = be->add_subcommand("acceptance", "Run the acceptance criteria");
  be_acc->add_option("--suite", bench.suite)->check(CLI::IsMember({"all", "classical", "quantum"}));
  be_acc->add_option("--seed", bench.seed);
  be_acc->add_option("--out", bench.out, "JSON report path");
  be_acc->add_option("--series-dir", bench.series_dir, "Directory for CSV series");
  be_acc->add_option("--threads", bench.threads);
  be_acc->add_option("--quantum-dim-limit", bench.dim_limit);
  be_acc->add_option("--only", bench.only, "Criterion ids to run");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (sc->parsed()) return cmd_scores(scores, out);
    if (sa->parsed()) return cmd_sample(sample, out);
    if (so_ls->parsed()) return cmd_solve("ls", solve, out);
    if (so_ridge->parsed()) return cmd_solve("ridge", solve, out);
    if (qs_rank->parsed()) return cmd_rank(rank, out);
    if (ge->parsed()) return cmd_gen(gen, out);
    if (be_acc->parsed()) return cmd_bench(bench, join(args), out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace lvs::cli
