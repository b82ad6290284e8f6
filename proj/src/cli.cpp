#include "mlse/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mlse/container.hpp"
#include "mlse/errors.hpp"
#include "mlse/experiment.hpp"
#include "mlse/metrics.hpp"
#include "mlse/pipeline.hpp"

namespace mlse {

namespace {

namespace fs = std::filesystem;

int cmd_keygen() {
    const auto [key, nonce] = generate_key_and_nonce();
    std::cout << "key = " << key.to_hex() << "\n";
    std::cout << "nonce = " << nonce.to_hex() << "\n";
    return 0;
}

struct EncodeArgs {
    std::string in;
    int width = 0;
    int height = 0;
    int frames = 0;
    int qp = 25;
    std::string level = "none";
    std::string key;
    std::string nonce;
    std::string out;
};

int cmd_encode(const EncodeArgs& args) {
    const EncryptionLevel level = level_from_name(args.level);
    const SecretKey key = SecretKey::from_hex(args.key);
    const Nonce nonce = Nonce::from_hex(args.nonce);
    const auto frames = read_yuv(args.in, args.width, args.height, args.frames);
    const Container container = encode_sequence(frames, args.qp, level, key, nonce);
    write_container(container, args.out);
    std::cout << "encoded " << frames.size() << " frames, " << container.payload_bytes()
              << " payload bytes, level " << args.level << "\n";
    return 0;
}

struct DecodeArgs {
    std::string in;
    std::string out_yuv;
    std::string out_pgm_dir;
    std::string key;
};

int cmd_decode(const DecodeArgs& args) {
    const Container container = read_container(args.in);
    std::optional<SecretKey> key;
    if (!args.key.empty()) {
        key = SecretKey::from_hex(args.key);
    }
    const auto frames = decode_sequence(container, key);
    if (!args.out_yuv.empty()) {
        write_yuv(frames, args.out_yuv);
    }
    if (!args.out_pgm_dir.empty()) {
        fs::create_directories(args.out_pgm_dir);
        for (std::size_t i = 0; i < frames.size(); ++i) {
            char name[32];
            std::snprintf(name, sizeof name, "frame%04zu.pgm", i);
            write_pgm(frames[i], (fs::path(args.out_pgm_dir) / name).string());
        }
    }
    std::cout << "decoded " << frames.size() << " frames ("
              << (key.has_value() ? "keyed" : "attacker view") << ", level "
              << level_name(container.header.level) << ")\n";
    return 0;
}

struct MetricsArgs {
    std::string ref;
    std::string test;
    int width = 0;
    int height = 0;
    int frames = 0;  // 0: as many as both files hold
    std::string report;
    std::string csv;
};

int cmd_metrics(const MetricsArgs& args) {
    int count = args.frames;
    if (count == 0) {
        count = std::min(count_yuv_frames(args.ref, args.width, args.height),
                         count_yuv_frames(args.test, args.width, args.height));
        if (count == 0) {
            throw IngestError("no complete frames in the input files");
        }
    }
    const auto ref = read_yuv(args.ref, args.width, args.height, count);
    const auto test = read_yuv(args.test, args.width, args.height, count);

    nlohmann::json per_frame = nlohmann::json::array();
    std::vector<MetricsReport> reports;
    for (int f = 0; f < count; ++f) {
        reports.push_back(MetricsReport::compare(ref[std::size_t(f)], test[std::size_t(f)]));
        per_frame.push_back(nlohmann::json::parse(reports.back().to_json()));
    }
    auto mean_of = [&](auto get) {
        double sum = 0;
        for (const auto& r : reports) {
            sum += get(r);
        }
        return sum / double(reports.size());
    };
    nlohmann::json root;
    const double mean_psnr = mean_of([](const MetricsReport& r) { return r.psnr_db; });
    if (std::isinf(mean_psnr)) {
        root["mean"]["psnr_db"] = nullptr;
        root["mean"]["psnr_note"] = "planes identical";
    } else {
        root["mean"]["psnr_db"] = mean_psnr;
    }
    root["mean"]["ssim"] = mean_of([](const MetricsReport& r) { return r.ssim; });
    root["mean"]["entropy_bits"] = mean_of([](const MetricsReport& r) { return r.entropy_bits; });
    root["mean"]["npcr"] = mean_of([](const MetricsReport& r) { return r.npcr; });
    root["mean"]["uaci"] = mean_of([](const MetricsReport& r) { return r.uaci; });
    root["frames"] = std::move(per_frame);

    if (args.report.empty()) {
        std::cout << root.dump(2) << "\n";
    } else {
        std::ofstream out(args.report, std::ios::trunc);
        if (!out) {
            throw Error("cannot write report '" + args.report + "'");
        }
        out << root.dump(2) << "\n";
    }
    if (!args.csv.empty()) {
        std::ofstream out(args.csv, std::ios::trunc);
        if (!out) {
            throw Error("cannot write csv '" + args.csv + "'");
        }
        out << MetricsReport::csv_header() << "\n";
        for (const auto& r : reports) {
            out << r.to_csv_row() << "\n";
        }
    }
    return 0;
}

int cmd_experiment(const std::string& config_path, const std::string& report_dir) {
    const ExperimentConfig config =
        config_path.empty() ? ExperimentConfig::defaults() : ExperimentConfig::from_file(config_path);
    run_experiment(config, report_dir);
    std::cout << "experiment reports written to " << report_dir << "\n";
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"intra-only video codec with multi-level selective encryption"};
    app.require_subcommand(1);

    auto* keygen = app.add_subcommand("keygen", "emit a fresh key and nonce from OS entropy");

    EncodeArgs enc;
    auto* encode = app.add_subcommand("encode", "encode a raw 4:2:0 file");
    encode->add_option("--in", enc.in, "input .yuv path")->required();
    encode->add_option("--w", enc.width, "frame width")->required();
    encode->add_option("--h", enc.height, "frame height")->required();
    encode->add_option("--frames", enc.frames, "frame count")->required();
    encode->add_option("--qp", enc.qp, "quantization parameter 0..51")->required();
    encode->add_option("--level", enc.level, "none|light|medium|heavy")->required();
    encode->add_option("--key", enc.key, "128-bit key, 32 hex chars")->required();
    encode->add_option("--nonce", enc.nonce, "96-bit nonce, 24 hex chars")->required();
    encode->add_option("--out", enc.out, "output container path")->required();

    DecodeArgs dec;
    auto* decode = app.add_subcommand("decode", "decode a container");
    decode->add_option("--in", dec.in, "input container path")->required();
    decode->add_option("--out-yuv", dec.out_yuv, "output 4:2:0 path");
    decode->add_option("--out-pgm-dir", dec.out_pgm_dir, "directory for per-frame PGMs");
    decode->add_option("--key", dec.key, "decryption key; omit for the attacker view");

    MetricsArgs met;
    auto* metrics = app.add_subcommand("metrics", "compare two raw 4:2:0 files");
    metrics->add_option("--ref", met.ref, "reference .yuv path")->required();
    metrics->add_option("--test", met.test, "test .yuv path")->required();
    metrics->add_option("--w", met.width, "frame width")->required();
    metrics->add_option("--h", met.height, "frame height")->required();
    metrics->add_option("--frames", met.frames, "frame count (default: all)");
    metrics->add_option("--report", met.report, "JSON report path (default: stdout)");
    metrics->add_option("--csv", met.csv, "per-frame CSV path");

    std::string config_path;
    std::string report_dir;
    auto* experiment = app.add_subcommand("experiment", "run the full level x qp grid");
    experiment->add_option("--config", config_path, "flat key=value config file");
    experiment->add_option("--report-dir", report_dir, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // prints help, exit 0
    } catch (const CLI::ParseError& e) {
        std::cerr << "mlse: " << e.what() << "\n";
        return 2;
    }

    try {
        if (keygen->parsed()) return cmd_keygen();
        if (encode->parsed()) return cmd_encode(enc);
        if (decode->parsed()) return cmd_decode(dec);
        if (metrics->parsed()) return cmd_metrics(met);
        if (experiment->parsed()) return cmd_experiment(config_path, report_dir);
        std::cerr << "mlse: no subcommand\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "mlse: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "mlse: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace mlse
