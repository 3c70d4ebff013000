#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace ntl::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kInvalidInput = 1;
inline constexpr int kInfeasible = 2;
inline constexpr int kVerificationFailed = 3;

struct CommandResult {
    int status = kOk;
    std::string out;
    std::string err;
};

/// Parses and executes one command line; `args` excludes the program name.
CommandResult run(const std::vector<std::string>& args);

/// Exact decimal when the expansion terminates within `digits` places,
/// otherwise rounded to `digits` places with a trailing "...".
std::string rational_decimal(const mpq_class& q, std::size_t digits = 30);

}  // namespace ntl::cli
