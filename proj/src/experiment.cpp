#include "mlse/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mlse/errors.hpp"
#include "mlse/pipeline.hpp"

namespace mlse {

namespace {

namespace fs = std::filesystem;

double mean(const std::vector<double>& v) {
    if (v.empty()) {
        return 0;
    }
    return std::accumulate(v.begin(), v.end(), 0.0) / double(v.size());
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) {
        return "";
    }
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream stream(s);
    std::string item;
    while (std::getline(stream, item, sep)) {
        const std::string t = trim(item);
        if (!t.empty()) {
            parts.push_back(t);
        }
    }
    return parts;
}

std::string format_csv(double v) {
    if (std::isinf(v)) {
        return "";  // identical frames: PSNR serialized as empty, never faked
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

nlohmann::json json_number(double v) {
    if (std::isinf(v)) {
        return nullptr;
    }
    return v;
}

SecretKey flip_key_bit(const SecretKey& key, int bit) {
    SecretKey flipped = key;
    flipped.bytes[std::size_t(bit) / 8] ^= std::uint8_t(0x80u >> (bit % 8));
    return flipped;
}

}  // namespace

ExperimentConfig ExperimentConfig::defaults() {
    ExperimentConfig config;
    config.sequences = {
        SequenceSpec{"gradient_pan", SyntheticId::GradientPan, ""},
        SequenceSpec{"moving_blocks", SyntheticId::MovingBlocks, ""},
        SequenceSpec{"textured_noise", SyntheticId::TexturedNoise, ""},
    };
    return config;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IngestError("cannot open config '" + path + "'");
    }
    ExperimentConfig config = defaults();
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        const std::string text = trim(line);
        if (text.empty()) {
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw Error("config line " + std::to_string(line_no) + " is not key = value");
        }
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (key == "sequences") {
            config.sequences.clear();
            for (const std::string& entry : split(value, ',')) {
                const auto sep = entry.find('=');
                if (sep == std::string::npos) {
                    config.sequences.push_back(
                        SequenceSpec{entry, synthetic_from_name(entry), ""});
                } else {
                    config.sequences.push_back(
                        SequenceSpec{trim(entry.substr(0, sep)), std::nullopt,
                                     trim(entry.substr(sep + 1))});
                }
            }
        } else if (key == "width") {
            config.width = std::stoi(value);
        } else if (key == "height") {
            config.height = std::stoi(value);
        } else if (key == "frames") {
            config.frames = std::stoi(value);
        } else if (key == "qps") {
            config.qps.clear();
            for (const std::string& entry : split(value, ',')) {
                config.qps.push_back(std::stoi(entry));
            }
        } else if (key == "levels") {
            config.levels.clear();
            for (const std::string& entry : split(value, ',')) {
                config.levels.push_back(level_from_name(entry));
            }
        } else if (key == "key") {
            config.key = SecretKey::from_hex(value);
        } else if (key == "nonce") {
            config.nonce = Nonce::from_hex(value);
        } else if (key == "seed") {
            config.seed = std::stoull(value);
        } else {
            throw Error("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
    }
    config.validate();
    return config;
}

void ExperimentConfig::validate() const {
    if (sequences.empty()) {
        throw std::invalid_argument("config needs at least one sequence");
    }
    if (frames < 2) {
        throw std::invalid_argument("config needs at least 2 frames per sequence");
    }
    if (qps.empty() || levels.empty()) {
        throw std::invalid_argument("config needs at least one qp and one level");
    }
    for (int qp : qps) {
        if (qp < 0 || qp > 51) {
            throw std::invalid_argument("qp must be in [0,51]");
        }
    }
}

double CellResult::mean_psnr() const { return mean(psnr_vs_original); }
double CellResult::mean_ssim() const { return mean(ssim_vs_original); }
double CellResult::mean_entropy() const { return mean(entropy_cipher); }
double CellResult::mean_npcr_baseline() const { return mean(npcr_vs_baseline); }
double CellResult::mean_uaci_baseline() const { return mean(uaci_vs_baseline); }
double CellResult::mean_keyflip_npcr() const { return mean(keyflip_npcr); }

double CellResult::min_keyflip_npcr() const {
    return keyflip_npcr.empty() ? 0 : *std::min_element(keyflip_npcr.begin(), keyflip_npcr.end());
}

const CellResult& ExperimentResult::cell(const std::string& sequence, int qp,
                                         EncryptionLevel level) const {
    if (const CellResult* c = find_cell(sequence, qp, level)) {
        return *c;
    }
    throw Error("no cell for " + sequence + " qp " + std::to_string(qp) + " level " +
                level_name(level));
}

const CellResult* ExperimentResult::find_cell(const std::string& sequence, int qp,
                                              EncryptionLevel level) const {
    for (const auto& c : cells) {
        if (c.sequence == sequence && c.qp == qp && c.level == level) {
            return &c;
        }
    }
    return nullptr;
}

std::vector<FramePlane> load_sequence(const SequenceSpec& spec, const ExperimentConfig& config) {
    if (spec.generator.has_value()) {
        return generate_synthetic(*spec.generator, config.seed, config.width, config.height,
                                  config.frames);
    }
    return read_yuv(spec.path, config.width, config.height, config.frames);
}

namespace {

CellResult measure_cell(const SequenceSpec& spec, const std::vector<FramePlane>& original,
                        int qp, EncryptionLevel level, const std::vector<FramePlane>& baseline,
                        std::uint64_t baseline_bytes, const ExperimentConfig& config,
                        const std::string& report_dir) {
    CellResult cell;
    cell.sequence = spec.name;
    cell.qp = qp;
    cell.level = level;

    const Container container = encode_sequence(original, qp, level, config.key, config.nonce);
    cell.payload_bytes = container.payload_bytes();
    cell.bitrate_delta_vs_none =
        baseline_bytes == 0 ? 0.0
                            : bitrate_delta(cell.payload_bytes * 8, baseline_bytes * 8);

    const std::vector<FramePlane> keyed = decode_sequence(container, config.key);
    const std::vector<FramePlane> keyless = decode_sequence(container, std::nullopt);
    const std::vector<FramePlane> flipped =
        decode_sequence(container, flip_key_bit(config.key, 0));

    for (std::size_t f = 0; f < original.size(); ++f) {
        cell.psnr_vs_original.push_back(psnr(original[f], keyless[f]));
        cell.ssim_vs_original.push_back(ssim(original[f], keyless[f]));
        cell.entropy_cipher.push_back(entropy(keyless[f]));
        cell.npcr_vs_baseline.push_back(npcr(baseline[f], keyless[f]));
        cell.uaci_vs_baseline.push_back(uaci(baseline[f], keyless[f]));
        cell.npcr_vs_original.push_back(npcr(original[f], keyless[f]));
        cell.uaci_vs_original.push_back(uaci(original[f], keyless[f]));
        cell.hist_distance_vs_original.push_back(
            histogram_distance(histogram(original[f]), histogram(keyless[f])));
        cell.keyflip_npcr.push_back(npcr(keyed[f], flipped[f]));
    }

    if (!report_dir.empty()) {
        const std::string stem =
            spec.name + "_qp" + std::to_string(qp) + "_" + level_name(level);
        write_container(container, (fs::path(report_dir) / "containers" / (stem + ".mlse")).string());
        write_pgm(keyless[0], (fs::path(report_dir) / "pgm" / (stem + "_f0.pgm")).string());
    }
    return cell;
}

void write_reports(const ExperimentResult& result, const std::string& report_dir) {
    const ExperimentConfig& config = result.config;
    auto open = [&](const std::string& name) {
        std::ofstream out(fs::path(report_dir) / name, std::ios::trunc);
        if (!out) {
            throw Error("cannot write report file '" + name + "'");
        }
        return out;
    };
    auto level_columns = [&](const std::string& prefix) {
        std::string header;
        for (const EncryptionLevel level : config.levels) {
            header += "," + prefix + level_name(level);
        }
        return header;
    };

    // A failed cell leaves its fields empty rather than suppressing the row.
    auto field = [&](const std::string& sequence, int qp, EncryptionLevel level,
                     double (CellResult::*fn)() const) {
        const CellResult* cell = result.find_cell(sequence, qp, level);
        return cell == nullptr ? std::string() : format_csv((cell->*fn)());
    };

    {
        auto out = open("table3_psnr_ssim.csv");
        out << "sequence,qp" << level_columns("psnr_") << level_columns("ssim_") << "\n";
        for (const auto& spec : config.sequences) {
            for (int qp : config.qps) {
                out << spec.name << "," << qp;
                for (const EncryptionLevel level : config.levels) {
                    out << "," << field(spec.name, qp, level, &CellResult::mean_psnr);
                }
                for (const EncryptionLevel level : config.levels) {
                    out << "," << field(spec.name, qp, level, &CellResult::mean_ssim);
                }
                out << "\n";
            }
        }
    }
    {
        auto out = open("table4_entropy.csv");
        out << "sequence,qp" << level_columns("entropy_") << "\n";
        for (const auto& spec : config.sequences) {
            for (int qp : config.qps) {
                out << spec.name << "," << qp;
                for (const EncryptionLevel level : config.levels) {
                    out << "," << field(spec.name, qp, level, &CellResult::mean_entropy);
                }
                out << "\n";
            }
        }
    }
    {
        auto out = open("table5_npcr_uaci.csv");
        out << "sequence,qp,level,npcr_vs_baseline,uaci_vs_baseline,npcr_vs_original,"
               "uaci_vs_original\n";
        for (const auto& spec : config.sequences) {
            for (int qp : config.qps) {
                for (const EncryptionLevel level : config.levels) {
                    const CellResult* cell = result.find_cell(spec.name, qp, level);
                    out << spec.name << "," << qp << "," << level_name(level) << ",";
                    if (cell != nullptr) {
                        out << format_csv(cell->mean_npcr_baseline()) << ","
                            << format_csv(cell->mean_uaci_baseline()) << ","
                            << format_csv(mean(cell->npcr_vs_original)) << ","
                            << format_csv(mean(cell->uaci_vs_original));
                    } else {
                        out << ",,,";
                    }
                    out << "\n";
                }
            }
        }
    }
    {
        auto out = open("table6_bitrate.csv");
        out << "sequence,qp" << level_columns("delta_") << "\n";
        for (const auto& spec : config.sequences) {
            for (int qp : config.qps) {
                out << spec.name << "," << qp;
                for (const EncryptionLevel level : config.levels) {
                    const CellResult* cell = result.find_cell(spec.name, qp, level);
                    out << "," << (cell == nullptr ? "" : format_csv(cell->bitrate_delta_vs_none));
                }
                out << "\n";
            }
        }
    }
    {
        auto out = open("key_sensitivity.csv");
        out << "sequence,qp,level,keyflip_npcr_mean,keyflip_npcr_min\n";
        for (const auto& spec : config.sequences) {
            for (int qp : config.qps) {
                for (const EncryptionLevel level : config.levels) {
                    out << spec.name << "," << qp << "," << level_name(level) << ","
                        << field(spec.name, qp, level, &CellResult::mean_keyflip_npcr) << ","
                        << field(spec.name, qp, level, &CellResult::min_keyflip_npcr) << "\n";
                }
            }
        }
    }
    {
        nlohmann::json root;
        root["width"] = config.width;
        root["height"] = config.height;
        root["frames"] = config.frames;
        root["seed"] = config.seed;
        nlohmann::json cells = nlohmann::json::array();
        for (const CellResult& cell : result.cells) {
            nlohmann::json j;
            j["sequence"] = cell.sequence;
            j["qp"] = cell.qp;
            j["level"] = level_name(cell.level);
            j["payload_bytes"] = cell.payload_bytes;
            j["bitrate_delta_vs_none"] = cell.bitrate_delta_vs_none;
            j["mean_psnr_db"] = json_number(cell.mean_psnr());
            j["mean_ssim"] = cell.mean_ssim();
            j["mean_entropy_bits"] = cell.mean_entropy();
            j["mean_npcr_vs_baseline"] = cell.mean_npcr_baseline();
            j["mean_uaci_vs_baseline"] = cell.mean_uaci_baseline();
            j["mean_npcr_vs_original"] = mean(cell.npcr_vs_original);
            j["mean_uaci_vs_original"] = mean(cell.uaci_vs_original);
            j["mean_hist_distance_vs_original"] = mean(cell.hist_distance_vs_original);
            j["keyflip_npcr_mean"] = cell.mean_keyflip_npcr();
            j["keyflip_npcr_min"] = cell.min_keyflip_npcr();
            auto per_frame = [](const std::vector<double>& v) {
                nlohmann::json arr = nlohmann::json::array();
                for (double x : v) {
                    arr.push_back(json_number(x));
                }
                return arr;
            };
            j["psnr_vs_original"] = per_frame(cell.psnr_vs_original);
            j["entropy_cipher"] = per_frame(cell.entropy_cipher);
            j["npcr_vs_baseline"] = per_frame(cell.npcr_vs_baseline);
            j["keyflip_npcr"] = per_frame(cell.keyflip_npcr);
            cells.push_back(std::move(j));
        }
        root["cells"] = std::move(cells);
        auto out = open("combined.json");
        out << root.dump(2) << "\n";
    }
    if (!result.failures.empty()) {
        nlohmann::json manifest = nlohmann::json::array();
        for (const CellFailure& failure : result.failures) {
            manifest.push_back({{"sequence", failure.sequence},
                                {"qp", failure.qp},
                                {"level", failure.level},
                                {"error", failure.error}});
        }
        auto out = open("failures.json");
        out << manifest.dump(2) << "\n";
    }
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config, const std::string& report_dir) {
    config.validate();
    if (!report_dir.empty()) {
        fs::create_directories(fs::path(report_dir) / "containers");
        fs::create_directories(fs::path(report_dir) / "pgm");
    }

    ExperimentResult result;
    result.config = config;
    for (const SequenceSpec& spec : config.sequences) {
        std::vector<FramePlane> original;
        try {
            original = load_sequence(spec, config);
            if (!report_dir.empty()) {
                write_pgm(original[0], (fs::path(report_dir) / "pgm" /
                                        (spec.name + "_original_f0.pgm")).string());
            }
        } catch (const std::exception& e) {
            for (int qp : config.qps) {
                for (const EncryptionLevel level : config.levels) {
                    result.failures.push_back(
                        CellFailure{spec.name, qp, level_name(level), e.what()});
                }
            }
            continue;
        }
        for (int qp : config.qps) {
            try {
                // The level-None decode anchors every comparison at this qp.
                const Container none_container =
                    encode_sequence(original, qp, EncryptionLevel::None, config.key, config.nonce);
                const std::vector<FramePlane> baseline =
                    decode_sequence(none_container, std::nullopt);
                const std::uint64_t baseline_bytes = none_container.payload_bytes();
                for (const EncryptionLevel level : config.levels) {
                    try {
                        result.cells.push_back(measure_cell(spec, original, qp, level, baseline,
                                                            baseline_bytes, config, report_dir));
                    } catch (const std::exception& e) {
                        result.failures.push_back(
                            CellFailure{spec.name, qp, level_name(level), e.what()});
                    }
                }
            } catch (const std::exception& e) {
                for (const EncryptionLevel level : config.levels) {
                    result.failures.push_back(
                        CellFailure{spec.name, qp, level_name(level), e.what()});
                }
            }
        }
    }

    if (!report_dir.empty()) {
        write_reports(result, report_dir);
    }
    if (!result.failures.empty()) {
        throw Error("experiment finished with " + std::to_string(result.failures.size()) +
                    " failed cells; see the failure manifest");
    }
    return result;
}

}  // namespace mlse
