#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace pgc {

/// Exit-code contract shared by every subcommand:
/// 0 success, 1 verification failure, 2 bad input, 3 internal self-check
/// failure, 4 search exhausted.
enum ExitCode : int {
    kExitOk = 0,
    kExitInvalid = 1,
    kExitBadInput = 2,
    kExitInternal = 3,
    kExitSearchExhausted = 4,
};

/// Prints point/line counts, the points-per-line constant and the largest
/// embeddable cycle length for PG(n,q).
int cmd_info(int n, std::uint32_t q, const std::string& format, std::ostream& out,
             std::ostream& err);

/// Builds a k-cycle in PG(n,q), self-verifies it and writes a certificate.
/// Output is byte-deterministic for fixed (n, q, k, seed).
int cmd_embed(int n, std::uint32_t q, int k, std::uint64_t seed,
              const std::string& out_path, std::ostream& out, std::ostream& err);

/// Re-verifies a certificate file from scratch.
int cmd_verify(const std::string& cert_path, const std::string& format, std::ostream& out,
               std::ostream& err);

/// Embeds and verifies every feasible k; optionally writes a JSON summary.
int cmd_sweep(int n, std::uint32_t q, std::uint64_t seed, const std::string& report_path,
              const std::string& format, std::ostream& out, std::ostream& err);

/// Brute-force cycle count for desk-scale geometries.
int cmd_count(int n, std::uint32_t q, int k, std::ostream& out, std::ostream& err);

}  // namespace pgc
