#pragma once

#include <string>

/// Runs the built-in oracle checks, printing one PASS/FAIL line each. When
/// `out_dir` holds result.json and eps_r.vtk, also checks the VTK re-import.
/// Returns the number of failures.
int run_validation(const std::string& out_dir);
