#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "dexnet/centrality.hpp"
#include "dexnet/dynamics.hpp"
#include "dexnet/metrics.hpp"
#include "dexnet/powerlaw.hpp"
#include "dexnet/robustness.hpp"

namespace dexnet {

// Stable decimal rendering with 12 significant digits; all CSV numbers go
// through this so re-runs emit identical bytes.
std::string format_sig(double value);

void write_text_file(const std::filesystem::path& path, const std::string& content);

enum class ReportFormat { csv, json };

// CSV: columns id,score in descending score order (ties by id).
std::string centrality_csv(const LiquidityGraph& g, const CentralityReport& report);
std::string centrality_json(const LiquidityGraph& g, const CentralityReport& report,
                            std::size_t top_k = 10);

std::string degree_distribution_csv(const std::map<std::uint32_t, std::size_t>& dist);

// JSON with exactly alpha, xmin, sigma, ks_distance, n_tail, mode.
std::string fit_json(const FitResult& fit);

std::string components_json(const ComponentSummary& summary);

std::string kcore_json(const CoreDecomposition& cores, const MaxCore& max_core);

// date,nodes,edges,components,avg_degree,alpha,max_k,kcore_size,
// kcore_avg_degree,kcore_ratio; absent alpha is an empty field, failed rows
// keep their structural columns and leave the rest empty.
std::string evolution_csv(const EvolutionSeries& series);

// strategy,step,removed_token,edges_remaining,components,tvl_lost_fraction
std::string trace_csv(const RemovalTrace& trace);
std::string traces_long_csv(const std::vector<const RemovalTrace*>& traces);

std::string comparison_csv(const std::vector<ComparisonRow>& rows);

}  // namespace dexnet
