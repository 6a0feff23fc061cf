#pragma once

// Command-line front end. Subcommands: measure, sweep, scatter, wigner-grid,
// fidelity-map. Exit codes: 0 success, 2 usage or parameter error,
// 3 numerical non-convergence or truncation.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace anharmonic::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

/// splitmix64; uniform() = next() / 2^64 in [0, 1).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Rounding to double can reach 1.0 for outputs within 2^10 of 2^64; those
    /// are mapped to the largest double below 1.
    double uniform() {
        const double u = static_cast<double>(next()) * 0x1.0p-64;
        return u < 1.0 ? u : 0x1.fffffffffffffp-1;
    }

private:
    std::uint64_t state_;
};

/// args excludes the program name. Output goes to out unless --out is given.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace anharmonic::cli
