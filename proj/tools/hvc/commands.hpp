#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "hvc/binary_image.hpp"
#include "hvc/vc.hpp"

namespace hvc::cli {

// Process exit codes, stable for scripting.
enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,
    exit_format = 2,
    exit_verification = 3,
};

struct VerifyReport {
    std::size_t block_cols = 1;  // decrypted pixels per secret pixel, horizontally
    std::size_t block_rows = 1;
    double block_threshold = 0.5;  // block black fraction above which a block reads as black
    double agreement = 0.0;        // fraction of secret pixels read back correctly
    double correlation = 0.0;      // Pearson, block black fraction vs secret
    std::optional<double> white_mean;
    std::optional<double> black_mean;
    std::optional<double> contrast;
};

// Compares a decryption with its secret. The decryption may be the secret's
// size or an integer multiple of it; each block of decrypted pixels is reduced
// to its black fraction, the digital analogue of the eye averaging sub-pixels.
// When the block size matches the scheme, blocks are classified at the midpoint
// of the scheme's stacked white and black weights.
VerifyReport verify_images(const BinaryImage& secret, const BinaryImage& decrypted,
                           const VcScheme& scheme);
std::string format_verify_report(const VerifyReport& report, double min_agreement,
                                 double min_correlation, bool passed);

struct SecurityReport {
    std::string text;
    bool passed = true;
};

// Chi-square uniformity of single-share patterns for both colors and every share.
SecurityReport security_test(const VcScheme& scheme, std::size_t trials, std::uint64_t seed);

// Entry point for `hvc <subcommand> ...`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hvc::cli
