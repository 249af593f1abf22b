#include "dexnet/report.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "dexnet/errors.hpp"

namespace dexnet {

using ordered_json = nlohmann::ordered_json;

std::string format_sig(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ArgumentError("cannot write " + path.string());
  out << content;
  if (!out) throw ArgumentError("write failed for " + path.string());
}

std::string centrality_csv(const LiquidityGraph& g, const CentralityReport& report) {
  std::string out = "id,score\n";
  for (const auto& entry : ranked_entries(g, report)) {
    out += entry.id;
    out += ',';
    out += format_sig(entry.score);
    out += '\n';
  }
  return out;
}

std::string centrality_json(const LiquidityGraph& g, const CentralityReport& report,
                            std::size_t top_k) {
  ordered_json j;
  j["kind"] = report.kind == CentralityReport::Kind::node ? "node" : "edge";
  j["normalized"] = report.normalized;
  auto entries = ranked_entries(g, report);
  ordered_json top = ordered_json::array();
  for (std::size_t i = 0; i < entries.size() && i < top_k; ++i)
    top.push_back({{"id", entries[i].id}, {"score", entries[i].score}});
  j["top"] = std::move(top);
  ordered_json scores = ordered_json::object();
  for (const auto& entry : entries) scores[entry.id] = entry.score;
  j["scores"] = std::move(scores);
  return j.dump(2) + "\n";
}

std::string degree_distribution_csv(
    const std::map<std::uint32_t, std::size_t>& dist) {
  std::string out = "degree,count\n";
  for (const auto& [degree, count] : dist)
    out += std::to_string(degree) + "," + std::to_string(count) + "\n";
  return out;
}

std::string fit_json(const FitResult& fit) {
  ordered_json j;
  j["alpha"] = fit.alpha;
  j["xmin"] = fit.xmin;
  j["sigma"] = fit.sigma;
  j["ks_distance"] = fit.ks_distance;
  j["n_tail"] = fit.n_tail;
  j["mode"] = fit_mode_str(fit.mode);
  return j.dump(2) + "\n";
}

std::string components_json(const ComponentSummary& summary) {
  ordered_json j;
  j["count"] = summary.count;
  // Multiset of sizes as a histogram, size -> occurrences.
  std::map<std::size_t, std::size_t> histogram;
  for (std::size_t s : summary.sizes) ++histogram[s];
  ordered_json sizes = ordered_json::object();
  for (const auto& [size, count] : histogram)
    sizes[std::to_string(size)] = count;
  j["sizes"] = std::move(sizes);
  return j.dump(2) + "\n";
}

std::string kcore_json(const CoreDecomposition& cores, const MaxCore& max_core) {
  ordered_json j;
  j["max_k"] = cores.max_k;
  ordered_json groups = ordered_json::object();
  for (std::size_t k = 1; k < cores.k_group_sizes.size(); ++k)
    groups[std::to_string(k)] = cores.k_group_sizes[k];
  j["k_group_sizes"] = std::move(groups);
  ordered_json core;
  core["k"] = max_core.k;
  core["nodes"] = max_core.subgraph.node_count();
  core["edges"] = max_core.subgraph.edge_count();
  ordered_json members = ordered_json::array();
  for (const auto& n : max_core.subgraph.nodes())
    members.push_back(n.address);
  core["members"] = std::move(members);
  j["max_core"] = std::move(core);
  return j.dump(2) + "\n";
}

std::string evolution_csv(const EvolutionSeries& series) {
  std::string out =
      "date,nodes,edges,components,avg_degree,alpha,max_k,kcore_size,"
      "kcore_avg_degree,kcore_ratio\n";
  for (const auto& row : series.rows) {
    out += day_str(row.date);
    out += ',' + std::to_string(row.nodes);
    out += ',' + std::to_string(row.edges);
    out += ',' + std::to_string(row.component_count);
    if (row.error) {
      out += ",,,,,\n";
      continue;
    }
    out += ',' + format_sig(row.average_degree);
    out += ',';
    if (row.alpha) out += format_sig(*row.alpha);
    out += ',' + std::to_string(row.max_k);
    out += ',' + std::to_string(row.kcore_size);
    out += ',' + format_sig(row.kcore_average_degree);
    out += ',' + format_sig(row.kcore_node_ratio);
    out += '\n';
  }
  return out;
}

namespace {

void append_trace_rows(std::string& out, const RemovalTrace& trace) {
  const std::string name = strategy_str(trace.plan.strategy);
  for (const auto& step : trace.steps) {
    out += name;
    out += ',' + std::to_string(step.step);
    out += ',' + step.removed_token;
    out += ',' + std::to_string(step.edges_remaining);
    out += ',' + std::to_string(step.component_count);
    out += ',' + format_sig(step.tvl_lost_fraction);
    out += '\n';
  }
}

}  // namespace

std::string trace_csv(const RemovalTrace& trace) {
  std::string out =
      "strategy,step,removed_token,edges_remaining,components,"
      "tvl_lost_fraction\n";
  append_trace_rows(out, trace);
  return out;
}

std::string traces_long_csv(const std::vector<const RemovalTrace*>& traces) {
  std::string out =
      "strategy,step,removed_token,edges_remaining,components,"
      "tvl_lost_fraction\n";
  for (const auto* trace : traces) append_trace_rows(out, *trace);
  return out;
}

std::string comparison_csv(const std::vector<ComparisonRow>& rows) {
  std::string out = "metric,observed,random\n";
  for (const auto& row : rows) {
    out += row.metric;
    out += ',' + format_sig(row.observed);
    out += ',' + format_sig(row.random_value);
    out += '\n';
  }
  return out;
}

}  // namespace dexnet
