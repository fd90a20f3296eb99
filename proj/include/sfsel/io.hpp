#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "sfsel/covsel.hpp"
#include "sfsel/eval.hpp"
#include "sfsel/prox.hpp"
#include "sfsel/synth.hpp"

namespace sfsel {

class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shortest decimal form that round-trips to the same double.
inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s) {
  double value = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw io_error("invalid numeric field: '" + std::string(s) + "'");
  return value;
}

namespace detail {

inline std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open for writing: " + path.string());
  return out;
}

inline std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open for reading: " + path.string());
  return in;
}

}  // namespace detail

// Headerless CSV, one row per line, shortest round-trip decimals.
inline void write_matrix_csv(const std::filesystem::path& path, const Matrix& m) {
  auto out = detail::open_out(path);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
  if (!out) throw io_error("write failed: " + path.string());
}

inline Matrix read_matrix_csv(const std::filesystem::path& path) {
  auto in = detail::open_in(path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (start <= line.size()) {
      std::size_t comma = line.find(',', start);
      if (comma == std::string::npos) comma = line.size();
      row.push_back(parse_double(std::string_view(line).substr(start, comma - start)));
      start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw io_error("ragged CSV matrix: " + path.string());
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw io_error("empty CSV matrix: " + path.string());
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

inline nlohmann::ordered_json weights_to_json(const WeightSequence& w) {
  nlohmann::ordered_json j;
  j["family"] = to_string(w.family());
  j["epsilon"] = w.params().epsilon;
  j["beta"] = w.params().beta;
  j["scale"] = w.params().scale;
  j["ratio"] = w.params().ratio;
  j["max_degree"] = w.max_degree();
  return j;
}

inline WeightSequence weights_from_json(const nlohmann::json& j) {
  WeightParams p;
  p.epsilon = j.value("epsilon", 1.0);
  p.beta = j.value("beta", 0.0);
  p.scale = j.value("scale", 1.0);
  p.ratio = j.value("ratio", 0.5);
  return WeightSequence(weight_family_from_string(j.at("family").get<std::string>()), p,
                        j.at("max_degree").get<int>());
}

inline void write_graph_json(const std::filesystem::path& path, const GroundTruthGraph& g) {
  nlohmann::ordered_json j;
  j["n"] = g.n();
  j["model"] = g.model;
  j["params"] = g.params;
  j["seed"] = g.seed;
  auto edges = nlohmann::ordered_json::array();
  for (const auto& [a, b] : g.edges.edges()) edges.push_back({a, b});
  j["edges"] = std::move(edges);
  auto out = detail::open_out(path);
  out << j.dump(1) << '\n';
  if (!out) throw io_error("write failed: " + path.string());
}

inline GroundTruthGraph read_graph_json(const std::filesystem::path& path) {
  auto in = detail::open_in(path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw io_error("invalid graph JSON " + path.string() + ": " + e.what());
  }
  GroundTruthGraph g{EdgeSet(j.at("n").get<int>()), j.value("model", std::string{}), {}, 0};
  if (j.contains("params")) g.params = j["params"].get<std::map<std::string, double>>();
  g.seed = j.value("seed", std::uint64_t{0});
  for (const auto& e : j.at("edges")) g.edges.add(e.at(0).get<int>(), e.at(1).get<int>());
  return g;
}

inline void write_metrics_json(const std::filesystem::path& path, const EdgeMetrics& m) {
  nlohmann::ordered_json j;
  j["tp"] = m.tp;
  j["fp"] = m.fp;
  j["fn"] = m.fn;
  j["tn"] = m.tn;
  j["hamming"] = m.hamming;
  auto out = detail::open_out(path);
  out << j.dump(1) << '\n';
  if (!out) throw io_error("write failed: " + path.string());
}

inline void write_solve_result_json(const std::filesystem::path& path, const SolveResult& r,
                                    const std::string& method, double alpha) {
  nlohmann::ordered_json j;
  j["method"] = method;
  j["alpha"] = alpha;
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["objective"] = r.objective;
  j["edge_count"] = r.edge_set.size();
  if (!r.outer_objectives.empty()) j["outer_objectives"] = r.outer_objectives;
  auto out = detail::open_out(path);
  out << j.dump(1) << '\n';
  if (!out) throw io_error("write failed: " + path.string());
}

// Curve CSV with a header row; matrices stay headerless, this is a table.
inline void write_roc_csv(const std::filesystem::path& path, const RocCurve& curve) {
  auto out = detail::open_out(path);
  out << "alpha,fp,tp,fp_rate,tp_rate\n";
  for (const auto& p : curve.points) {
    if (!p.solved) continue;
    out << format_double(p.alpha) << ',' << p.fp << ',' << p.tp << ','
        << format_double(p.fp_rate) << ',' << format_double(p.tp_rate) << '\n';
  }
  if (!out) throw io_error("write failed: " + path.string());
}

inline void write_roc_summary_json(const std::filesystem::path& path, const RocCurve& curve,
                                   const std::string& method) {
  nlohmann::ordered_json j;
  j["method"] = method;
  j["auc"] = curve.auc;
  j["points"] = curve.points.size();
  j["failures"] = curve.failures;
  auto errors = nlohmann::ordered_json::array();
  for (const auto& p : curve.points)
    if (!p.solved) errors.push_back({{"alpha", p.alpha}, {"error", p.error}});
  j["failed_points"] = std::move(errors);
  auto out = detail::open_out(path);
  out << j.dump(1) << '\n';
  if (!out) throw io_error("write failed: " + path.string());
}

// Input of one proximal-operator invocation, enough to replay it.
struct ProxFixture {
  Matrix z;
  double shrink_scale = 0.0;
  WeightSequence weights;
  ProxParams params() const { return ProxParams{shrink_scale}; }
};

inline void write_prox_fixture(const std::filesystem::path& path, const Matrix& z,
                               double shrink_scale, const WeightSequence& w) {
  nlohmann::ordered_json j;
  j["shrink_scale"] = shrink_scale;
  j["weights"] = weights_to_json(w);
  auto rows = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    auto row = nlohmann::ordered_json::array();
    for (Eigen::Index k = 0; k < z.cols(); ++k) row.push_back(z(i, k));
    rows.push_back(std::move(row));
  }
  j["z"] = std::move(rows);
  auto out = detail::open_out(path);
  out << j.dump(1) << '\n';
  if (!out) throw io_error("write failed: " + path.string());
}

inline ProxFixture read_prox_fixture(const std::filesystem::path& path) {
  auto in = detail::open_in(path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw io_error("invalid fixture JSON " + path.string() + ": " + e.what());
  }
  const auto& rows = j.at("z");
  const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
  Matrix z(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k < n; ++k) z(i, k) = rows[i][k].get<double>();
  return ProxFixture{std::move(z), j.at("shrink_scale").get<double>(),
                     weights_from_json(j.at("weights"))};
}

inline void write_residual_trace_csv(const std::filesystem::path& path,
                                     const std::vector<IterationResidual>& trace) {
  auto out = detail::open_out(path);
  out << "iteration,primal_residual,dual_residual\n";
  for (std::size_t k = 0; k < trace.size(); ++k)
    out << (k + 1) << ',' << format_double(trace[k].primal) << ','
        << format_double(trace[k].dual) << '\n';
  if (!out) throw io_error("write failed: " + path.string());
}

inline void write_prox_trace_csv(const std::filesystem::path& path,
                                 const std::vector<ProxTracePoint>& trace) {
  auto out = detail::open_out(path);
  out << "iteration,objective,sym_residual\n";
  for (const auto& p : trace)
    out << p.iteration << ',' << format_double(p.objective) << ','
        << format_double(p.sym_residual) << '\n';
  if (!out) throw io_error("write failed: " + path.string());
}

inline void write_subgrad_trace_csv(const std::filesystem::path& path,
                                    const std::vector<SubgradTracePoint>& trace) {
  auto out = detail::open_out(path);
  out << "iteration,objective\n";
  for (const auto& p : trace) out << p.iteration << ',' << format_double(p.objective) << '\n';
  if (!out) throw io_error("write failed: " + path.string());
}

}  // namespace sfsel
