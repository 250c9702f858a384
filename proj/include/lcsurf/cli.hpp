// Copyright 2026 the lcsurf authors. Licensed under the Apache License, Version 2.0.
#pragma once

/**
 * @file cli.hpp
 * @brief Command-line orchestration: parse arguments, run grid sweeps, emit
 * deterministic JSON/CSV reports.
 *
 * Usage: lcsurf <command> [chart] [flags]
 *
 * Commands
 *   catalog        list the built-in charts (no chart argument)
 *   invariants     frame scalars (k1, k2, s1, s2, lambda) at the grid nodes
 *   verify         frame-normalization / structure / integrability residuals
 *   detect         Willmore, S-Willmore and isothermic tests + energy
 *   pair-classify  build a Blaschke pair from explicit fields or a mode
 *   pair-dual      the dual pair (a = -k1_v/k1, b = -k2_u/k2, xi = 0)
 *   pair-darboux   integrate the Darboux system at constant theta
 *   pair-trivial   the trivial pair through a fixed ambient point P
 *   thomsen        recover a timelike minimal surface in R31 / S31 / H31
 *
 * The chart argument is a catalog name, or a path to a chart config file
 * (the file is used when it exists).  Pair parameters may come from the same
 * config file (`fields.a/b/xi`, `mode`, `theta`, `init`, `P`) or from flags,
 * which take precedence.
 *
 * Flags: --grid NUxNV, --rect u0,u1,v0,v1, --order J, --tol name=value,
 * --out path, --format json|csv, --mode dual|darboux|trivial_point,
 * --theta X, --init a0,b0,z0, --point p1,p2,p3,p4,p5, --field-a/--field-b/
 * --field-xi <expr>.
 *
 * Exit codes: 0 = success with residuals within tolerance; 2 = negative
 * classification or residuals above tolerance (the report explains); 1 =
 * hard error (bad arguments, config errors, construction failures).
 *
 * JSON schema (fixed field order, 17-significant-digit floats, null for
 * non-finite): {command, config_echo, grid, results{...},
 * residual_summary{max, mean, argmax_point}, status}.
 */

#include <array>
#include <map>
#include <string>
#include <vector>

#include "lcsurf/frame.hpp"

namespace lcs {

/// Parsed and validated command line for one run.
struct RunConfig {
  std::string command;
  std::string chart_source;  ///< catalog name or config file path

  int nu = 20, nv = 20;
  bool rect_set = false;
  std::array<double, 4> rect{};  ///< sub-rectangle; chart domain when unset
  int order = kDefaultOrder;
  std::map<std::string, double> tols;  ///< named tolerance overrides
  std::string format = "json";
  std::string out_path;  ///< also write the report here when nonempty

  std::string mode;  ///< "", "dual", "darboux", "trivial_point"
  std::string field_a, field_b, field_xi;
  double theta = 0.0;
  bool theta_set = false;
  std::array<double, 3> init{};
  bool init_set = false;
  std::vector<double> point;
};

/// Parse flags; throws Error on unknown flags, malformed values, a grid
/// smaller than 4x4, or a jet order below 6.
RunConfig parse_args(const std::vector<std::string>& args);

struct CliResult {
  int code = 0;            ///< 0 ok, 2 negative result, 1 hard error
  std::string output;      ///< report text; empty on hard error
  std::string diagnostic;  ///< hard-error message for stderr
};

/// Run one command end to end.  Never throws: hard errors are returned as
/// code 1 with a diagnostic.
CliResult run_command(const std::vector<std::string>& args);

}  // namespace lcs
