#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>

#include "sweepfv/euler.hpp"
#include "sweepfv/mesh.hpp"
#include "sweepfv/solver.hpp"

namespace sweepfv {

/// Legacy ASCII VTK unstructured grid with cell data rho, u, v, p.
void write_vtk(const std::filesystem::path& path, const Mesh& mesh,
               std::span<const State> field, GasParams gas);

/// Residue history: header `iter,resA,dt,cfl,driver`, one row per iteration.
void write_residue_csv(const std::filesystem::path& path,
                       const IterationReport& report, double cfl,
                       Driver driver);

/// One-line run summary: `case driver cfl iters seconds converged`.
std::string summary_line(std::string_view case_id, Driver driver, double cfl,
                         const IterationReport& report);

/// Flat key=value config text ('#' comments, blank lines allowed).
std::map<std::string, std::string> parse_config(std::string_view text);
std::map<std::string, std::string> read_config(
    const std::filesystem::path& path);

}  // namespace sweepfv
