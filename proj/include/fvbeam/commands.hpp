#pragma once

#include "fvbeam/verify.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace fvbeam {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitAborted = 2;

std::string read_text_file(const std::string& path);

struct RunOptions {
    std::string case_path;
    std::string out_dir = ".";
    std::optional<std::size_t> write_every; ///< overrides the case file
};

/// Writes history.csv, final_state.csv, mesh.polyline and case.json
/// (the case with defaults and derived values) into the output directory.
int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err);

int cmd_verify(const VerifyOptions& options, std::ostream& out);

struct ConvergenceOptions {
    std::string case_path;
    std::vector<std::size_t> meshes;
    std::optional<std::size_t> reference;
    std::string out_dir = ".";
    unsigned workers = 0;
};

/// Writes convergence.csv into the output directory.
int cmd_convergence(const ConvergenceOptions& options, std::ostream& out, std::ostream& err);

/// "5,10,20" -> {5, 10, 20}; throws std::invalid_argument.
std::vector<std::size_t> parse_mesh_list(const std::string& text);

} // namespace fvbeam
