#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mlse/container.hpp"
#include "mlse/metrics.hpp"
#include "mlse/synthetic.hpp"

namespace mlse {

/// One input sequence: either a synthetic generator or a raw 4:2:0 file.
struct SequenceSpec {
    std::string name;
    std::optional<SyntheticId> generator;
    std::string path;  // used when generator is empty
};

struct ExperimentConfig {
    std::vector<SequenceSpec> sequences;
    int width = 176;
    int height = 144;
    int frames = 12;
    std::vector<int> qps = {10, 25, 40};
    std::vector<EncryptionLevel> levels = {EncryptionLevel::None, EncryptionLevel::Lightweight,
                                           EncryptionLevel::Medium, EncryptionLevel::Heavyweight};
    SecretKey key = SecretKey::from_hex("000102030405060708090a0b0c0d0e0f");
    Nonce nonce = Nonce::from_hex("000102030405060708090a0b");
    std::uint64_t seed = 1;

    static ExperimentConfig defaults();

    /// Flat key=value text file; '#' starts a comment. Keys: sequences,
    /// width, height, frames, qps, levels, key, nonce, seed. A sequences
    /// entry is a generator id or name=path for a raw 4:2:0 file.
    static ExperimentConfig from_file(const std::string& path);

    void validate() const;
};

/// Per-(sequence, qp, level) measurement cell. "Keyless" is the attacker
/// view (decode without the key); "baseline" is the level-None decode of the
/// same input at the same qp.
struct CellResult {
    std::string sequence;
    int qp = 0;
    EncryptionLevel level = EncryptionLevel::None;

    std::vector<double> psnr_vs_original;  // per frame, keyless decode
    std::vector<double> ssim_vs_original;
    std::vector<double> entropy_cipher;  // entropy of each keyless-decoded frame
    std::vector<double> npcr_vs_baseline;
    std::vector<double> uaci_vs_baseline;
    std::vector<double> npcr_vs_original;
    std::vector<double> uaci_vs_original;
    std::vector<double> hist_distance_vs_original;
    std::vector<double> keyflip_npcr;  // flipped-key decode vs correct-key decode

    std::uint64_t payload_bytes = 0;
    double bitrate_delta_vs_none = 0;

    double mean_psnr() const;
    double mean_ssim() const;
    double mean_entropy() const;
    double mean_npcr_baseline() const;
    double mean_uaci_baseline() const;
    double min_keyflip_npcr() const;
    double mean_keyflip_npcr() const;
};

struct CellFailure {
    std::string sequence;
    int qp = 0;
    std::string level;
    std::string error;
};

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<CellResult> cells;
    std::vector<CellFailure> failures;

    const CellResult& cell(const std::string& sequence, int qp, EncryptionLevel level) const;
    const CellResult* find_cell(const std::string& sequence, int qp, EncryptionLevel level) const;
};

/// Loads a sequence per its spec (generator or file).
std::vector<FramePlane> load_sequence(const SequenceSpec& spec, const ExperimentConfig& config);

/// Runs the full (sequence x qp x level) grid: encode, keyed + keyless
/// decode, per-frame metrics, flipped-key sensitivity. When report_dir is
/// nonempty, writes the table-shaped CSVs, combined JSON, per-cell
/// containers and frame-0 PGM dumps there. Failed cells are recorded in the
/// failure manifest and rethrown after the grid completes.
ExperimentResult run_experiment(const ExperimentConfig& config, const std::string& report_dir = "");

}  // namespace mlse
