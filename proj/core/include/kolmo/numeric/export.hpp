#pragma once

#include "kolmo/numeric/fd_solver.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace kolmo::numeric {

/// "x,y,u" rows for slice k, 17 significant digits.
void write_slice_csv(const std::filesystem::path& path, const GridSolution& sol, std::size_t k);

/// Writes slice_<k>.csv for every stored slice plus manifest.json. Returns slice file names.
std::vector<std::string> export_solution(const std::filesystem::path& dir, const SolverConfig& config,
                                         const GridSolution& sol, const std::map<std::string, double>& metrics);

/// "z,phi" rows.
void write_profile_csv(const std::filesystem::path& path, const std::vector<double>& z, const std::vector<double>& phi);

}  // namespace kolmo::numeric
