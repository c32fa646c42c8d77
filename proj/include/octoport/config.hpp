#ifndef OCTOPORT_CONFIG_HPP
#define OCTOPORT_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "octoport/common.hpp"
#include "octoport/eightport.hpp"

namespace octoport::cli {

enum class ExperimentKind {
    g_statistics,
    lemma1_check,
    lemma2_check,
    convergence_sweep,
    husimi_map,
};

std::string kind_name(ExperimentKind kind);

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::g_statistics;
    eightport::StateSpec t_state;
    eightport::StateSpec s_state;
    Complex z{2.0, 0.0};
    double phi = kPi / 2.0;
    std::vector<double> radii{1.0, 2.0, 3.0};
    double window = 4.0;
    int grid_nx = 8, grid_ny = 8;
    Rectangle lemma_rect{-1.0, 1.0, -1.0, 1.0};
    int dim1 = 0, dim2 = 0, dim3 = 0, dim4 = 0;  // 0 = cutoff rule
    std::string path = "direct";                 // direct | factorized
    std::string out_prefix = "octoport";
};

struct ParseResult {
    std::optional<ExperimentConfig> config;
    std::vector<std::string> errors;

    bool ok() const { return errors.empty() && config.has_value(); }
};

// Flat key-value text with optional [T.matrix] / [S.matrix] sections for
// explicit density matrices (rows of interleaved re/im pairs). Collects
// every validation error instead of stopping at the first.
ParseResult parse_config(const std::string& text);

// Emits the full effective config, defaults included; parse(serialize(c))
// reproduces c.
std::string serialize_config(const ExperimentConfig& config);

}  // namespace octoport::cli

#endif
