#include "commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <functional>
#include <future>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <system_error>
#include <vector>

#include "hvc/cgh.hpp"
#include "hvc/errors.hpp"
#include "hvc/imageio.hpp"
#include "hvc/reconstruction.hpp"

namespace hvc::cli {

namespace fs = std::filesystem;

namespace {

// Raised for bad flag combinations discovered after parsing.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string fixed(double v, int digits = 6) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << v;
    return os.str();
}

std::string optional_fixed(const std::optional<double>& v) {
    return v ? fixed(*v) : "absent";
}

void emit_report(const std::string& text, const std::string& report_path, std::ostream& out) {
    if (report_path.empty()) {
        out << text;
    } else {
        write_file_atomic(report_path, text);
    }
}

struct SchemeFlags {
    std::string name = "ns-2x2";
    std::string file;

    void add(CLI::App& app) {
        app.add_option("--scheme", name, "Built-in scheme name")->capture_default_str();
        app.add_option("--scheme-file", file, "Scheme file with s0/s1 basis matrices (overrides --scheme)");
    }
    VcScheme load() const { return file.empty() ? builtin_scheme(name) : read_scheme_file(file); }
};

const std::map<std::string, CarrierAxis> axis_names{{"horizontal", CarrierAxis::horizontal},
                                                    {"vertical", CarrierAxis::vertical}};
const std::map<std::string, Diffuser> diffuser_names{{"off", Diffuser::off},
                                                     {"random_phase", Diffuser::random_phase}};
const std::map<std::string, Order> order_names{{"plus", Order::plus}, {"minus", Order::minus}};
const std::map<std::string, Combine> combine_names{{"product", Combine::product},
                                                   {"min", Combine::min}};
const std::map<std::string, Normalization> normalize_names{
    {"max", Normalization::max}, {"percentile99", Normalization::percentile99}};

template <typename Enum>
std::string enum_name(const std::map<std::string, Enum>& names, Enum value) {
    for (const auto& [name, v] : names) {
        if (v == value) {
            return name;
        }
    }
    return "?";
}

// Maps names to enum values; lists the accepted names in --help.
template <typename Enum>
CLI::Validator choices(const std::map<std::string, Enum>& names) {
    std::string listed;
    for (const auto& entry : names) {
        listed += (listed.empty() ? "" : ",") + entry.first;
    }
    CLI::Validator v = CLI::CheckedTransformer(names, CLI::ignore_case);
    v.description("{" + listed + "}");
    return v;
}

// ---- encrypt -----------------------------------------------------------------

struct EncryptConfig {
    std::string secret;
    std::string out_dir;
    SchemeFlags scheme;
    std::uint64_t seed = 0;
    CghParams cgh;
    std::string bits = "none";
};

void add_cgh_flags(CLI::App& app, CghParams& cgh) {
    app.add_option("--pad", cgh.pad_factor, "Hologram grid / share grid size ratio")->capture_default_str();
    app.add_option("--carrier", cgh.carrier_cycles, "Carrier frequency, cycles per hologram sample")
        ->capture_default_str();
    app.add_option("--carrier-axis", cgh.carrier_axis, "Carrier direction")
        ->transform(choices(axis_names))
        ->default_str("horizontal");
}

int cmd_encrypt(const EncryptConfig& config, std::ostream& out) {
    const VcScheme scheme = config.scheme.load();
    std::optional<unsigned> bits;
    if (config.bits != "none") {
        bits = config.bits == "8" ? 8u : 16u;
    }
    const BinaryImage secret = read_binary_pgm(config.secret);
    config.cgh.validate(secret.width() * scheme.block_cols(), secret.height() * scheme.block_rows());

    const ShareSet shares = generate_shares(secret, scheme, config.seed);

    std::vector<std::future<Hologram>> jobs;
    for (std::size_t i = 0; i < shares.shares.size(); ++i) {
        CghParams params = config.cgh;
        params.diffuser_seed = config.cgh.diffuser_seed + i;
        jobs.push_back(std::async(std::launch::async, [&share = shares.shares[i], params, bits] {
            Hologram h = encode_share(share, params);
            return bits ? quantize_hologram(h, *bits) : h;
        }));
    }
    std::vector<Hologram> holograms;
    for (auto& job : jobs) {
        holograms.push_back(job.get());
    }

    RunManifest manifest;
    manifest.scheme = scheme;
    manifest.seed = config.seed;
    manifest.cgh = config.cgh;
    manifest.quantization_bits = bits;
    for (std::size_t i = 1; i <= shares.shares.size(); ++i) {
        manifest.share_files.push_back("share_" + std::to_string(i) + ".pgm");
        manifest.hologram_files.push_back("holo_" + std::to_string(i) + ".hvcf");
    }

    // Everything is computed; only now touch the output directory.
    const fs::path dir(config.out_dir);
    fs::create_directories(dir);
    std::vector<fs::path> written;
    auto record = [&written](const fs::path& p, const std::function<void(const fs::path&)>& write) {
        write(p);
        written.push_back(p);
    };
    try {
        for (std::size_t i = 0; i < shares.shares.size(); ++i) {
            record(dir / manifest.share_files[i],
                   [&](const fs::path& p) { write_pgm(shares.shares[i], p); });
            record(dir / manifest.hologram_files[i],
                   [&](const fs::path& p) { write_hologram(holograms[i], p); });
            record(dir / ("holo_" + std::to_string(i + 1) + "_preview.pgm"),
                   [&](const fs::path& p) { write_pgm(to_gray(holograms[i].values, 65535), p); });
        }
        record(dir / "manifest.txt", [&](const fs::path& p) { write_manifest(manifest, p); });
    } catch (...) {
        std::error_code ignored;
        for (const auto& p : written) {
            fs::remove(p, ignored);
        }
        throw;
    }

    out << "encrypted " << secret.width() << "x" << secret.height() << " secret into "
        << shares.shares.size() << " holograms of " << holograms.front().width() << "x"
        << holograms.front().height() << " in " << dir.string() << "\n";
    return exit_ok;
}

// ---- decrypt -----------------------------------------------------------------

struct DecryptConfig {
    std::string manifest;
    std::vector<std::string> holograms;
    std::string out;
    std::string recon_dir;
    std::string report;
    CghParams cgh;  // only fields given explicitly are applied
    DecryptOptions options;
    std::string binarize = "fixed";
};

int cmd_decrypt(const DecryptConfig& config, const CLI::App& app, std::ostream& out,
                std::ostream& err) {
    if (config.manifest.empty() == config.holograms.empty()) {
        throw UsageError("decrypt: give either --manifest or a list of holograms");
    }

    std::vector<fs::path> paths;
    std::optional<RunManifest> manifest;
    if (!config.manifest.empty()) {
        manifest = read_manifest(config.manifest);
        const fs::path base = fs::path(config.manifest).parent_path();
        for (const auto& f : manifest->hologram_files) {
            paths.push_back(base / f);
        }
    } else {
        paths.assign(config.holograms.begin(), config.holograms.end());
    }
    if (paths.size() < 2) {
        throw UsageError("decrypt: need at least two holograms");
    }

    std::vector<Hologram> holograms;
    for (const auto& p : paths) {
        holograms.push_back(read_hologram(p));
    }

    std::vector<std::string> warnings;
    if (manifest) {
        for (std::size_t i = 0; i < holograms.size(); ++i) {
            const auto& params = holograms[i].params;
            if (params.pad_factor != manifest->cgh.pad_factor ||
                params.carrier_cycles != manifest->cgh.carrier_cycles ||
                params.carrier_axis != manifest->cgh.carrier_axis) {
                throw FormatError("decrypt: " + paths[i].string() + " does not match the manifest");
            }
        }
    }
    auto overridden = [&app](const char* flag) { return app.count(flag) > 0; };
    for (auto& h : holograms) {
        if (overridden("--pad")) {
            h.params.pad_factor = config.cgh.pad_factor;
        }
        if (overridden("--carrier")) {
            h.params.carrier_cycles = config.cgh.carrier_cycles;
        }
        if (overridden("--carrier-axis")) {
            h.params.carrier_axis = config.cgh.carrier_axis;
        }
    }
    for (const char* flag : {"--pad", "--carrier", "--carrier-axis"}) {
        if (overridden(flag)) {
            warnings.push_back(std::string("warning: ") + flag +
                               " overrides the value stored with the holograms");
        }
    }
    for (const auto& w : warnings) {
        err << w << "\n";
    }

    for (std::size_t i = 1; i < holograms.size(); ++i) {
        const auto& a = holograms.front();
        const auto& b = holograms[i];
        if (a.width() != b.width() || a.height() != b.height() || a.share_width != b.share_width ||
            a.share_height != b.share_height || a.params.pad_factor != b.params.pad_factor ||
            a.params.carrier_cycles != b.params.carrier_cycles ||
            a.params.carrier_axis != b.params.carrier_axis) {
            throw FormatError("decrypt: hologram headers are inconsistent");
        }
    }

    DecryptOptions options = config.options;
    options.binarization = config.binarize == "otsu" ? Binarization::otsu()
                                                     : Binarization::fixed(config.options.binarization.threshold);
    const Decryption result = decrypt(holograms, options);

    if (!config.recon_dir.empty()) {
        fs::create_directories(config.recon_dir);
        for (std::size_t i = 0; i < result.reconstructions.size(); ++i) {
            write_pgm(to_gray(result.reconstructions[i], 65535),
                      fs::path(config.recon_dir) / ("recon_" + std::to_string(i + 1) + ".pgm"));
        }
    }
    write_pgm(result.decrypted, config.out);

    std::ostringstream report;
    for (const auto& w : warnings) {
        report << w << "\n";
    }
    report << "holograms=" << holograms.size() << "\n"
           << "order=" << enum_name(order_names, options.order) << "\n"
           << "normalize=" << enum_name(normalize_names, options.normalization) << "\n"
           << "combine=" << enum_name(combine_names, options.combine) << "\n"
           << "binarize=" << config.binarize << "\n"
           << "threshold="
           << fixed(options.binarization.method == Binarization::Method::otsu
                        ? otsu_threshold(result.superposed)
                        : options.binarization.threshold)
           << "\n"
           << "decrypted_width=" << result.decrypted.width() << "\n"
           << "decrypted_height=" << result.decrypted.height() << "\n"
           << "black_fraction="
           << fixed(static_cast<double>(result.decrypted.black_count()) /
                    static_cast<double>(result.decrypted.size()))
           << "\n";
    if (!config.report.empty()) {
        write_file_atomic(config.report, report.str());
    }
    out << "decrypted " << result.decrypted.width() << "x" << result.decrypted.height() << " image to "
        << config.out << "\n";
    return exit_ok;
}

// ---- reconstruct ---------------------------------------------------------------

int cmd_reconstruct(const std::string& hologram_path, const std::string& out_path,
                    const std::string& order, Normalization normalization, std::ostream& out) {
    const Hologram hologram = read_hologram(hologram_path);
    const ComplexField field = reconstruct_field(hologram);
    RealGrid image;
    if (order == "full") {
        image = normalize_intensity(intensity(field), Normalization::percentile99);
    } else {
        image = normalize_intensity(extract_order(field, hologram, order_names.at(order)), normalization);
    }
    write_pgm(to_gray(image, 65535), out_path);
    out << "reconstructed " << order << " order (" << image.width() << "x" << image.height()
        << ") to " << out_path << "\n";
    return exit_ok;
}

// ---- stack ---------------------------------------------------------------------

int cmd_stack(const std::vector<std::string>& inputs, const std::string& out_path, std::ostream& out) {
    if (inputs.size() < 2) {
        throw UsageError("stack: need at least two shares");
    }
    std::vector<BinaryImage> shares;
    for (const auto& p : inputs) {
        shares.push_back(read_binary_pgm(p));
    }
    const BinaryImage stacked = stack_shares(shares);
    write_pgm(stacked, out_path);
    out << "stacked " << shares.size() << " shares to " << out_path << "\n";
    return exit_ok;
}

}  // namespace

// ---- verify --------------------------------------------------------------------

VerifyReport verify_images(const BinaryImage& secret, const BinaryImage& decrypted,
                           const VcScheme& scheme) {
    if (secret.empty() || decrypted.width() % secret.width() != 0 ||
        decrypted.height() % secret.height() != 0 || decrypted.width() < secret.width() ||
        decrypted.height() < secret.height()) {
        throw std::invalid_argument(
            "verify: decrypted image is not an integer multiple of the secret size");
    }
    VerifyReport report;
    report.block_cols = decrypted.width() / secret.width();
    report.block_rows = decrypted.height() / secret.height();
    const double cells = static_cast<double>(report.block_cols * report.block_rows);
    if (report.block_cols == scheme.block_cols() && report.block_rows == scheme.block_rows()) {
        report.block_threshold = static_cast<double>(scheme.stacked_weight(Color::white) +
                                                     scheme.stacked_weight(Color::black)) /
                                 (2.0 * cells);
    }

    const std::size_t count = secret.size();
    std::vector<double> fraction(count);
    for (std::size_t row = 0; row < secret.height(); ++row) {
        for (std::size_t col = 0; col < secret.width(); ++col) {
            std::size_t black = 0;
            for (std::size_t dr = 0; dr < report.block_rows; ++dr) {
                for (std::size_t dc = 0; dc < report.block_cols; ++dc) {
                    black += decrypted(row * report.block_rows + dr, col * report.block_cols + dc);
                }
            }
            fraction[row * secret.width() + col] = static_cast<double>(black) / cells;
        }
    }

    std::size_t agree = 0;
    double sum[2] = {0.0, 0.0};
    std::size_t blocks[2] = {0, 0};
    double mean_f = 0.0;
    double mean_s = 0.0;
    const auto pixels = secret.pixels();
    for (std::size_t i = 0; i < count; ++i) {
        const bool black = fraction[i] > report.block_threshold;
        agree += black == (pixels[i] != 0) ? 1 : 0;
        sum[pixels[i]] += fraction[i];
        ++blocks[pixels[i]];
        mean_f += fraction[i];
        mean_s += pixels[i];
    }
    report.agreement = static_cast<double>(agree) / static_cast<double>(count);
    mean_f /= static_cast<double>(count);
    mean_s /= static_cast<double>(count);

    double cov = 0.0;
    double var_f = 0.0;
    double var_s = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double df = fraction[i] - mean_f;
        const double ds = static_cast<double>(pixels[i]) - mean_s;
        cov += df * ds;
        var_f += df * df;
        var_s += ds * ds;
    }
    // Correlation is undefined for a constant image; report 1 only for a
    // perfect read-back in that case.
    if (var_f == 0.0 || var_s == 0.0) {
        report.correlation = report.agreement == 1.0 ? 1.0 : 0.0;
    } else {
        report.correlation = cov / std::sqrt(var_f * var_s);
    }

    if (blocks[0] > 0) {
        report.white_mean = sum[0] / static_cast<double>(blocks[0]);
    }
    if (blocks[1] > 0) {
        report.black_mean = sum[1] / static_cast<double>(blocks[1]);
    }
    if (report.white_mean && report.black_mean) {
        report.contrast = *report.black_mean - *report.white_mean;
    }
    return report;
}

std::string format_verify_report(const VerifyReport& report, double min_agreement,
                                 double min_correlation, bool passed) {
    std::ostringstream os;
    os << "block_size=" << report.block_rows << "x" << report.block_cols << "\n"
       << "block_threshold=" << fixed(report.block_threshold) << "\n"
       << "agreement_percent=" << fixed(100.0 * report.agreement, 4) << "\n"
       << "correlation=" << fixed(report.correlation) << "\n"
       << "white_block_mean=" << optional_fixed(report.white_mean) << "\n"
       << "black_block_mean=" << optional_fixed(report.black_mean) << "\n"
       << "contrast=" << optional_fixed(report.contrast) << "\n"
       << "min_agreement_percent=" << fixed(min_agreement, 4) << "\n"
       << "min_correlation=" << fixed(min_correlation) << "\n"
       << "result=" << (passed ? "pass" : "fail") << "\n";
    return os.str();
}

SecurityReport security_test(const VcScheme& scheme, std::size_t trials, std::uint64_t seed) {
    SecurityReport report;
    std::ostringstream os;
    os << "scheme=" << scheme.name() << "\n"
       << "trials=" << trials << "\n"
       << "seed=" << seed << "\n";
    for (const Color color : {Color::white, Color::black}) {
        for (std::size_t share = 0; share < scheme.shares(); ++share) {
            const auto h = share_pattern_histogram(scheme, color, share, trials, seed);
            report.passed = report.passed && h.passes;
            os << "color=" << (color == Color::white ? "white" : "black") << " share=" << share + 1
               << " support=" << h.support_size << " observed=" << h.counts.size()
               << " chi_square=" << fixed(h.chi_square) << " dof=" << h.degrees_of_freedom
               << " critical_p01=" << fixed(h.critical_value)
               << " result=" << (h.passes ? "pass" : "fail") << "\n";
        }
    }
    os << "result=" << (report.passed ? "pass" : "fail") << "\n";
    report.text = os.str();
    return report;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Visual cryptography through computer-generated holograms"};
    app.name("hvc");
    app.require_subcommand(1);

    // encrypt
    EncryptConfig encrypt;
    auto* enc = app.add_subcommand("encrypt", "Split a binary secret into shares and encode each as a Burch hologram");
    enc->add_option("--secret", encrypt.secret, "Binary P5 PGM secret (0 = black, maxval = white)")->required();
    enc->add_option("--out-dir", encrypt.out_dir, "Output directory")->required();
    encrypt.scheme.add(*enc);
    enc->add_option("--seed", encrypt.seed, "Share generation seed")->capture_default_str();
    add_cgh_flags(*enc, encrypt.cgh);
    enc->add_option("--diffuser", encrypt.cgh.diffuser, "Random phase diffuser on the object")
        ->transform(choices(diffuser_names))
        ->default_str("off");
    enc->add_option("--diffuser-seed", encrypt.cgh.diffuser_seed,
                    "Diffuser seed; hologram i uses seed + i - 1")
        ->capture_default_str();
    enc->add_option("--bits", encrypt.bits, "Hologram quantization")
        ->check(CLI::IsMember({"none", "8", "16"}))
        ->capture_default_str();

    // decrypt
    DecryptConfig decrypt_config;
    auto* dec = app.add_subcommand("decrypt", "Replay holograms, superpose the reconstructions and binarize");
    dec->add_option("--manifest", decrypt_config.manifest, "manifest.txt written by encrypt");
    dec->add_option("holograms", decrypt_config.holograms, "Hologram files (instead of --manifest)");
    dec->add_option("--out", decrypt_config.out, "Decrypted PGM")->required();
    dec->add_option("--recon-dir", decrypt_config.recon_dir, "Also write recon_<i>.pgm here");
    dec->add_option("--report", decrypt_config.report, "Write a decryption report");
    add_cgh_flags(*dec, decrypt_config.cgh);
    dec->add_option("--order", decrypt_config.options.order, "Reconstruction order to use")
        ->transform(choices(order_names))
        ->default_str("plus");
    dec->add_option("--normalize", decrypt_config.options.normalization, "Intensity normalization")
        ->transform(choices(normalize_names))
        ->default_str("max");
    dec->add_option("--combine", decrypt_config.options.combine, "Superposition of the reconstructions")
        ->transform(choices(combine_names))
        ->default_str("product");
    dec->add_option("--binarize", decrypt_config.binarize, "Binarization method")
        ->check(CLI::IsMember({"fixed", "otsu"}))
        ->capture_default_str();
    dec->add_option("--threshold", decrypt_config.options.binarization.threshold,
                    "Fixed threshold; darker pixels become black")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();

    // reconstruct
    std::string recon_input;
    std::string recon_out;
    std::string recon_order = "plus";
    Normalization recon_normalize = Normalization::max;
    auto* rec = app.add_subcommand("reconstruct", "Replay one hologram and write an order (or the full plane)");
    rec->add_option("hologram", recon_input, "Hologram file")->required();
    rec->add_option("--out", recon_out, "Output 16-bit PGM")->required();
    rec->add_option("--order", recon_order, "plus, minus or full")
        ->check(CLI::IsMember({"plus", "minus", "full"}))
        ->capture_default_str();
    rec->add_option("--normalize", recon_normalize, "Intensity normalization")
        ->transform(choices(normalize_names))
        ->default_str("max");

    // stack
    std::vector<std::string> stack_inputs;
    std::string stack_out;
    auto* stk = app.add_subcommand("stack", "Overlay share PGMs like transparencies (pixel-wise OR)");
    stk->add_option("shares", stack_inputs, "Share PGMs")->required();
    stk->add_option("--out", stack_out, "Stacked PGM")->required();

    // verify
    std::string verify_secret;
    std::string verify_decrypted;
    std::string verify_report;
    SchemeFlags verify_scheme;
    double min_agreement = 95.0;
    double min_correlation = 0.8;
    auto* ver = app.add_subcommand("verify", "Compare a decryption with the secret");
    ver->add_option("--secret", verify_secret, "Secret PGM")->required();
    ver->add_option("--decrypted", verify_decrypted, "Decrypted PGM")->required();
    ver->add_option("--report", verify_report, "Report path (default: standard output)");
    verify_scheme.add(*ver);
    ver->add_option("--min-agreement", min_agreement, "Pass threshold, percent")->capture_default_str();
    ver->add_option("--min-correlation", min_correlation, "Pass threshold")->capture_default_str();

    // security-test
    SchemeFlags security_scheme;
    std::size_t trials = 10000;
    std::uint64_t security_seed = 7;
    std::string security_report;
    auto* sec = app.add_subcommand("security-test", "Chi-square test that single shares look uniform");
    security_scheme.add(*sec);
    sec->add_option("--trials", trials, "Expansions per (color, share)")->capture_default_str();
    sec->add_option("--seed", security_seed, "Seed")->capture_default_str();
    sec->add_option("--report", security_report, "Report path (default: standard output)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*enc) {
            return cmd_encrypt(encrypt, out);
        }
        if (*dec) {
            return cmd_decrypt(decrypt_config, *dec, out, err);
        }
        if (*rec) {
            return cmd_reconstruct(recon_input, recon_out, recon_order, recon_normalize, out);
        }
        if (*stk) {
            return cmd_stack(stack_inputs, stack_out, out);
        }
        if (*ver) {
            const VcScheme scheme = verify_scheme.load();
            const BinaryImage secret = read_binary_pgm(verify_secret);
            const BinaryImage decrypted = read_binary_pgm(verify_decrypted);
            const VerifyReport report = verify_images(secret, decrypted, scheme);
            const bool passed = 100.0 * report.agreement >= min_agreement &&
                                report.correlation >= min_correlation;
            emit_report(format_verify_report(report, min_agreement, min_correlation, passed),
                        verify_report, out);
            return passed ? exit_ok : exit_verification;
        }
        if (*sec) {
            if (trials == 0) {
                throw UsageError("security-test: --trials must be at least 1");
            }
            const SecurityReport report = security_test(security_scheme.load(), trials, security_seed);
            emit_report(report.text, security_report, out);
            return report.passed ? exit_ok : exit_verification;
        }
    } catch (const UsageError& e) {
        err << "hvc: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        err << "hvc: " << e.what() << "\n";
        return exit_usage;
    } catch (const FormatError& e) {
        err << "hvc: " << e.what() << "\n";
        return exit_format;
    } catch (const std::system_error& e) {  // includes filesystem errors
        err << "hvc: " << e.what() << "\n";
        return exit_format;
    }
    return exit_usage;
}

}  // namespace hvc::cli
