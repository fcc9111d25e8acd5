// Batch front end: family sizes, oracle verification, benchmarks and sampling.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#include "tidd/tidd.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace {

using json = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Rows of (column, value) printed as CSV with a header, or as JSON objects.
class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add(std::vector<json> row) { rows_.push_back(std::move(row)); }

  void print(std::ostream& os, const std::string& format, bool single_object) const {
    if (format == "json") {
      json out = json::array();
      for (const auto& r : rows_) {
        json obj = json::object();
        for (std::size_t i = 0; i < columns_.size(); ++i) obj[columns_[i]] = r[i];
        out.push_back(std::move(obj));
      }
      os << (single_object && out.size() == 1 ? out[0] : out).dump(2) << '\n';
      return;
    }
    for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << columns_[i];
    os << '\n';
    for (const auto& r : rows_) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        os << (i ? "," : "");
        if (r[i].is_string()) os << r[i].get<std::string>();
        else os << r[i].dump();
      }
      os << '\n';
    }
  }

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<json>> rows_;
};

tidd::Tidd build_kind(tidd::Manager& m, const std::string& kind, std::uint64_t n) {
  if (kind == "hadamard") return tidd::hadamard_family(m, static_cast<std::uint32_t>(n));
  if (kind == "eq") return tidd::equality_relation(m, static_cast<std::uint32_t>(n));
  return tidd::anti_diagonal(m, n);
}

int run_family(const std::string& kind, std::uint64_t n, const std::string& format) {
  tidd::Manager m;
  auto f = build_kind(m, kind, n);
  auto s = tidd::size_metrics(f);
  Table t({"kind", "n", "states", "nodes", "edges", "total"});
  t.add({kind, n, s.states, s.nodes, s.edges, s.total});
  t.print(std::cout, format, true);
  return kOk;
}

int run_verify(std::uint64_t vars, std::uint64_t cases, std::uint64_t seed, const std::string& format) {
  const std::uint64_t limit = tidd::oracle::max_vars_from_env();
  if (vars > limit)
    throw UsageError(std::to_string(vars) + " variables exceed TIDD_ORACLE_MAX_VARS=" + std::to_string(limit));
  const std::uint32_t level = tidd::log2_exact(vars);
  tidd::Manager m;
  std::uint64_t passed = 0;
  for (std::uint64_t c = 0; c < cases; ++c) {
    auto e = tidd::expr::random_expression(m, level, seed * 1000003u + c);
    if (tidd::oracle::exhaustive_equiv(e.tidd, e.dense) && tidd::validate(e.tidd).ok) ++passed;
    else std::cerr << "mismatch: " << e.text << '\n';
  }
  Table t({"vars", "cases", "passed", "failed"});
  t.add({vars, cases, passed, cases - passed});
  t.print(std::cout, format, true);
  return passed == cases ? kOk : kVerifyFailed;
}

int run_bench(const std::string& algo, std::uint32_t qubits, std::uint64_t seed, const std::string& format) {
  tidd::Manager m;
  auto row = tidd::quantum::run_benchmark(m, algo, qubits, seed);
  const auto& r = row.metrics;
  // wall_seconds is the only field that varies between identical runs.
  Table t({"algo", "qubits", "seed", "gates", "final_nodes", "final_edges", "final_total", "max_intermediate",
           "wall_seconds"});
  t.add({row.algo, row.qubits, row.seed, r.gate_count, r.final_size.nodes, r.final_size.edges, r.final_size.total,
         r.max_intermediate_size, r.wall_seconds});
  t.print(std::cout, format, true);
  return kOk;
}

int run_sample(const std::string& kind, std::uint64_t n, std::uint64_t shots, std::uint64_t seed,
               const std::string& format) {
  if (shots == 0) throw UsageError("--shots must be at least 1");
  tidd::Manager m;
  auto f = build_kind(m, kind, n);
  tidd::Sampler sampler(m, f);
  std::mt19937_64 rng(seed);
  std::map<std::string, std::uint64_t> hist;
  for (std::uint64_t i = 0; i < shots; ++i) {
    auto a = sampler.draw(rng);
    std::string key;
    for (auto b : a) key += b ? '1' : '0';
    ++hist[key];
  }
  Table t({"assignment", "count"});
  for (const auto& [k, v] : hist) t.add({k, v});
  t.print(std::cout, format, false);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Build, verify, benchmark and sample tree-automata decision diagrams"};
  app.require_subcommand(1);
  std::string format = "csv";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  std::string kind;
  std::uint64_t n = 1, vars = 8, cases = 100, seed = 0, shots = 1000;
  std::uint32_t qubits = 8;
  std::string algo;

  auto* family = app.add_subcommand("family", "Print the size of a named family member");
  family->add_option("--kind", kind, "hadamard | eq | hn")->required()->check(CLI::IsMember({"hadamard", "eq", "hn"}));
  family->add_option("--n", n, "Family parameter (i, l or matrix side)")->required();

  auto* verify = app.add_subcommand("verify", "Check random expressions against the dense oracle");
  verify->add_option("--vars", vars, "Number of variables, a power of two");
  verify->add_option("--cases", cases, "Number of random expressions");
  verify->add_option("--seed", seed, "Seed");

  auto* bench = app.add_subcommand("bench", "Run one circuit and print its metrics");
  bench->add_option("--algo", algo, "ghz | bv | dj")->required()->check(CLI::IsMember({"ghz", "bv", "dj"}));
  bench->add_option("--qubits", qubits, "Qubit count")->required()->check(CLI::PositiveNumber);
  bench->add_option("--seed", seed, "Seed for the BV string or DJ oracle");

  auto* sample = app.add_subcommand("sample", "Histogram of weighted samples");
  sample->add_option("--kind", kind, "eq | hn")->required()->check(CLI::IsMember({"eq", "hn"}));
  sample->add_option("--n", n, "Family parameter")->required();
  sample->add_option("--shots", shots, "Number of samples");
  sample->add_option("--seed", seed, "Seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (family->parsed()) return run_family(kind, n, format);
    if (verify->parsed()) return run_verify(vars, cases, seed, format);
    if (bench->parsed()) return run_bench(algo, qubits, seed, format);
    return run_sample(kind, n, shots, seed, format);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const tidd::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
