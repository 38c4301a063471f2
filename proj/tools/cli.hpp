#pragma once

#include <atomic>
#include <iosfwd>
#include <string>
#include <vector>

#include "model.hpp"

namespace torlink::cli {

enum class Summary { SomeLagrangianVanishes, NoLagrangianVanishes, NoLagrangiansExist };

std::string_view to_string(Summary s);

struct VerdictRow {
  Subgroup lagrangian;
  bool lambda3_vanishes = false;
};

struct ObstructionVerdict {
  std::vector<VerdictRow> rows;
  Summary summary = Summary::NoLagrangiansExist;
};

// Requires a lambda_3 (ValidationError otherwise); UnsupportedScope when the
// Lagrangians cannot be enumerated.
ObstructionVerdict obstruct(const ManifoldModel& model);

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitUnsupported = 3;
inline constexpr int kExitInterrupted = 4;

// Set by the signal handlers installed in main; sweeps poll it.
std::atomic<bool>& interrupt_flag();

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace torlink::cli
