// vbpstego - hide and recover bit streams in the virtual bit-planes a
// grayscale image gains under alternative numeral systems.
//
// Subcommands: plan, table, embed, extract, analyze, sweep.
// Exit codes: 0 ok, 2 usage, 3 capacity, 4 malformed input, 5 file I/O.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "vbp/vbp.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitMalformed = 4;
constexpr int kExitIo = 5;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ===== shared option bundles =====

struct SystemOpts {
    std::string system = "natural";
    unsigned k = 8;
};

void add_system_opts(CLI::App* cmd, SystemOpts& opts) {
    cmd->add_option("--system", opts.system, "Numeral system: binary | natural | prime | fib:p")
        ->capture_default_str();
    cmd->add_option("--k", opts.k, "Pixel bit depth")
        ->capture_default_str()
        ->check(CLI::Range(1u, 16u));
}

vbp::NumeralSystem make_system(const SystemOpts& opts) {
    const auto parsed = vbp::parse_weight_kind(opts.system);
    if (!parsed) {
        throw UsageError("unknown --system '" + opts.system +
                         "' (expected binary | natural | prime | fib:p)");
    }
    return vbp::NumeralSystem::for_bit_depth(parsed->first, opts.k, parsed->second);
}

struct CoverOpts {
    std::string cover_path;
    std::string synth;
    std::size_t width = 256;
    std::size_t height = 256;
    unsigned constant_value = 128;
    unsigned checker_low = 0;
    unsigned checker_high = 255;
    std::size_t checker_cell = 8;
    std::uint32_t synth_seed = 0;
};

void add_cover_opts(CLI::App* cmd, CoverOpts& opts) {
    auto* cover = cmd->add_option("--cover", opts.cover_path, "Cover image (PGM)");
    auto* synth = cmd->add_option("--synth", opts.synth,
                                  "Synthesize the cover: gradient | constant | checker | random");
    cover->excludes(synth);
    cmd->add_option("--width", opts.width, "Synthesized cover width")->capture_default_str();
    cmd->add_option("--height", opts.height, "Synthesized cover height")->capture_default_str();
    cmd->add_option("--value", opts.constant_value, "Gray level for --synth constant")
        ->capture_default_str()
        ->check(CLI::Range(0u, 255u));
    cmd->add_option("--low", opts.checker_low, "Low gray level for --synth checker")
        ->check(CLI::Range(0u, 255u));
    cmd->add_option("--high", opts.checker_high, "High gray level for --synth checker")
        ->check(CLI::Range(0u, 255u));
    cmd->add_option("--cell", opts.checker_cell, "Cell size for --synth checker")
        ->capture_default_str();
    cmd->add_option("--synth-seed", opts.synth_seed, "Seed for --synth random")
        ->capture_default_str();
}

vbp::GrayImage load_cover(const CoverOpts& opts) {
    if (!opts.cover_path.empty()) return vbp::read_pgm(opts.cover_path);
    if (opts.synth.empty()) {
        throw UsageError("a cover is required: pass --cover FILE or --synth PATTERN");
    }
    const auto pattern = vbp::parse_synth_pattern(opts.synth);
    if (!pattern) {
        throw UsageError("unknown --synth '" + opts.synth +
                         "' (expected gradient | constant | checker | random)");
    }
    vbp::SynthSpec spec;
    spec.pattern = *pattern;
    spec.width = opts.width;
    spec.height = opts.height;
    spec.constant_value = static_cast<std::uint8_t>(opts.constant_value);
    spec.checker_low = static_cast<std::uint8_t>(opts.checker_low);
    spec.checker_high = static_cast<std::uint8_t>(opts.checker_high);
    spec.checker_cell = opts.checker_cell;
    spec.seed = opts.synth_seed;
    return vbp::synthesize(spec);
}

struct MessageOpts {
    std::string text;
    std::string file;
    std::optional<std::uint64_t> random_bits;
    std::uint32_t seed = 0;
};

void add_message_opts(CLI::App* cmd, MessageOpts& opts) {
    auto* text = cmd->add_option("--message", opts.text, "Message text (UTF-8 bytes as-is)");
    auto* file = cmd->add_option("--message-file", opts.file, "Message bytes from a file");
    auto* rnd = cmd->add_option("--random-bits", opts.random_bits,
                                "Random message of N bits (requires --seed for reproducibility)");
    text->excludes(file)->excludes(rnd);
    file->excludes(rnd);
    cmd->add_option("--seed", opts.seed, "Seed for --random-bits")->capture_default_str();
}

std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw vbp::IoError("cannot open for reading: " + path);
    std::vector<char> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return {data.begin(), data.end()};
}

vbp::BitVec message_bits(const MessageOpts& opts) {
    const int sources = (!opts.text.empty() ? 1 : 0) + (!opts.file.empty() ? 1 : 0) +
                        (opts.random_bits ? 1 : 0);
    if (sources != 1) {
        throw UsageError("exactly one of --message, --message-file, --random-bits is required");
    }
    if (!opts.text.empty()) {
        const auto* bytes = reinterpret_cast<const std::uint8_t*>(opts.text.data());
        return vbp::bits_from_bytes({bytes, opts.text.size()});
    }
    if (!opts.file.empty()) {
        return vbp::bits_from_bytes(read_file_bytes(opts.file));
    }
    return vbp::random_bits(opts.seed, static_cast<std::size_t>(*opts.random_bits));
}

// ===== output helpers =====

void refuse_overwrite(const std::string& path, bool force) {
    if (!force && std::filesystem::exists(path)) {
        throw UsageError("refusing to overwrite '" + path + "' (pass --force)");
    }
}

void write_text_file(const std::string& path, const std::string& payload) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw vbp::IoError("cannot open for writing: " + path);
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    if (!out) throw vbp::IoError("failed to write: " + path);
}

nlohmann::json report_json(const vbp::EmbedReport& report) {
    return {
        {"bits_embedded", report.bits_embedded},
        {"pixels_visited", report.pixels_visited},
        {"pixels_skipped", report.pixels_skipped},
        {"capacity_at_plane", report.capacity_at_plane},
    };
}

// JSON has no infinity literal; identical images get the string sentinel.
nlohmann::json json_double(double value) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    return value;
}

// ===== subcommands =====

struct PlanArgs {
    SystemOpts sys;
};

int cmd_plan(const PlanArgs& args) {
    const vbp::NumeralSystem system = make_system(args.sys);
    std::cout << "system: " << system.label() << '\n'
              << "bit depth: " << system.bit_depth() << '\n'
              << "pixel range: [0, " << system.max_value() << "]\n"
              << "planes: " << system.plane_count() << '\n';
    std::cout << "weights:";
    for (std::uint32_t w : system.weights()) std::cout << ' ' << w;
    std::cout << '\n';
    const auto [lo, hi] = system.representable_range();
    std::cout << "representable range: [" << lo << ", " << hi << "]\n";
    return kExitOk;
}

struct TableArgs {
    SystemOpts sys;
    std::uint32_t from = 0;
    std::optional<std::uint32_t> to;
    std::string csv_path;
    bool force = false;
};

int cmd_table(const TableArgs& args) {
    const vbp::NumeralSystem system = make_system(args.sys);
    const std::uint32_t hi = args.to.value_or(system.max_value());
    if (args.from > hi || hi > system.max_value()) {
        throw UsageError("--from/--to must satisfy 0 <= from <= to <= " +
                         std::to_string(system.max_value()));
    }
    const auto rows = vbp::decomposition_table(system, args.from, hi);
    std::ostringstream csv;
    csv << "value,representation\n";
    for (const auto& [value, repr] : rows) csv << value << ',' << repr << '\n';
    if (!args.csv_path.empty()) {
        refuse_overwrite(args.csv_path, args.force);
        write_text_file(args.csv_path, csv.str());
        std::cout << rows.size() << " row(s) for " << system.label() << " written to "
                  << args.csv_path << '\n';
    } else {
        std::cout << csv.str();
    }
    return kExitOk;
}

struct EmbedArgs {
    SystemOpts sys;
    CoverOpts cover;
    MessageOpts msg;
    std::size_t plane = 0;
    bool fill = false;
    bool prefix = false;
    std::optional<std::uint64_t> explicit_length;
    std::string out_path;
    std::string save_cover_path;
    std::string report_path;
    bool force = false;
};

int cmd_embed(const EmbedArgs& args) {
    const vbp::NumeralSystem system = make_system(args.sys);
    const vbp::GrayImage cover = load_cover(args.cover);
    vbp::BitVec payload = message_bits(args.msg);

    if (args.fill && args.explicit_length) {
        throw UsageError("--fill and --length are mutually exclusive");
    }
    if (args.prefix && (args.fill || args.explicit_length)) {
        throw UsageError("--prefix contradicts --fill/--length (raw framing)");
    }
    vbp::EmbedPlan plan{&system, args.plane};
    if (args.fill) {
        if (payload.empty()) throw UsageError("--fill needs a nonempty message to repeat");
        const std::uint64_t cap = vbp::capacity(cover, system, args.plane);
        payload = vbp::repeat_to_length(payload, static_cast<std::size_t>(cap));
        plan.length_mode = vbp::LengthMode::ExplicitLength;
        plan.explicit_bits = cap;
    } else if (args.explicit_length) {
        if (*args.explicit_length != payload.size()) {
            throw UsageError("--length " + std::to_string(*args.explicit_length) +
                             " does not match the message bit count (" +
                             std::to_string(payload.size()) + ")");
        }
        plan.length_mode = vbp::LengthMode::ExplicitLength;
        plan.explicit_bits = payload.size();
    } else {
        plan.length_mode = vbp::LengthMode::LengthPrefix;
    }

    refuse_overwrite(args.out_path, args.force);
    if (!args.save_cover_path.empty()) refuse_overwrite(args.save_cover_path, args.force);
    if (!args.report_path.empty()) refuse_overwrite(args.report_path, args.force);

    const vbp::EmbedResult result = vbp::embed_message(cover, plan, payload);
    vbp::write_pgm(result.stego, args.out_path);
    if (!args.save_cover_path.empty()) vbp::write_pgm(cover, args.save_cover_path);

    nlohmann::json report = report_json(result.report);
    report["command"] = "embed";
    report["system"] = system.label();
    report["k"] = system.bit_depth();
    report["plane"] = args.plane;
    report["plane_weight"] = system.weight(args.plane);
    report["length_mode"] = plan.length_mode == vbp::LengthMode::LengthPrefix
                                ? "prefix"
                                : "explicit:" + std::to_string(plan.explicit_bits);
    report["message_bits"] = payload.size();
    report["width"] = cover.width();
    report["height"] = cover.height();
    report["out"] = args.out_path;
    const double mse = vbp::mse_empirical(cover, result.stego);
    report["mse_empirical"] = mse;
    report["psnr_empirical_db"] = json_double(vbp::psnr_from_mse(mse, system.max_value()));
    report["psnr_worst_db"] = vbp::psnr_worst_db(system, args.plane);
    report["wmse_per_pixel"] = vbp::wmse_per_pixel(system, args.plane);
    report["wmse_total"] =
        vbp::wmse_total(system, args.plane, cover.width(), cover.height());
    report["kl_nats"] =
        vbp::kl_divergence_nats(vbp::histogram(cover), vbp::histogram(result.stego));

    const std::string pretty = report.dump(2) + "\n";
    std::cout << pretty;
    if (!args.report_path.empty()) write_text_file(args.report_path, pretty);
    return kExitOk;
}

struct ExtractArgs {
    SystemOpts sys;
    std::string stego_path;
    std::size_t plane = 0;
    bool prefix = false;
    std::optional<std::uint64_t> explicit_length;
    std::string out_path;
    bool force = false;
};

int cmd_extract(const ExtractArgs& args) {
    const vbp::NumeralSystem system = make_system(args.sys);
    const vbp::GrayImage stego = vbp::read_pgm(args.stego_path);

    if (args.prefix && args.explicit_length) {
        throw UsageError("--prefix and --length are mutually exclusive");
    }
    vbp::EmbedPlan plan{&system, args.plane};
    if (args.explicit_length) {
        plan.length_mode = vbp::LengthMode::ExplicitLength;
        plan.explicit_bits = *args.explicit_length;
    } else {
        plan.length_mode = vbp::LengthMode::LengthPrefix;
    }

    const vbp::BitVec bits = vbp::extract_message(stego, plan);
    const std::vector<std::uint8_t> bytes = vbp::bytes_from_bits(bits);
    const std::string payload(bytes.begin(), bytes.end());
    if (!args.out_path.empty()) {
        refuse_overwrite(args.out_path, args.force);
        write_text_file(args.out_path, payload);
        std::cerr << bits.size() << " bit(s) -> " << args.out_path << '\n';
    } else {
        std::cout.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    }
    return kExitOk;
}

struct AnalyzeArgs {
    SystemOpts sys;
    std::string cover_path;
    std::string stego_path;
    std::size_t plane = 0;
    std::string csv_path;
    bool force = false;
};

int cmd_analyze(const AnalyzeArgs& args) {
    const vbp::NumeralSystem system = make_system(args.sys);
    const vbp::GrayImage cover = vbp::read_pgm(args.cover_path);
    const vbp::GrayImage stego = vbp::read_pgm(args.stego_path);
    const vbp::DistortionReport report = vbp::analyze_pair(cover, stego, system, args.plane);

    std::cout << "system " << report.system << ", plane " << report.plane << " (weight "
              << report.weight << ")\n"
              << "worst case: wmse/pixel " << report.wmse_per_pixel << " ("
              << vbp::wmse_total(system, args.plane, cover.width(), cover.height())
              << " total), psnr " << vbp::detail::format_double(report.psnr_worst_db) << " dB\n"
              << "empirical:  mse " << vbp::detail::format_double(report.mse_empirical)
              << ", psnr " << vbp::detail::format_double(report.psnr_empirical_db)
              << " dB, kl " << vbp::detail::format_double(report.kl_nats) << " nats\n"
              << "capacity fraction at plane: "
              << vbp::detail::format_double(report.capacity_fraction) << '\n';

    const std::string csv = vbp::to_csv({&report, 1});
    if (!args.csv_path.empty()) {
        refuse_overwrite(args.csv_path, args.force);
        write_text_file(args.csv_path, csv);
        std::cout << "csv written to " << args.csv_path << '\n';
    } else {
        std::cout << csv;
    }
    return kExitOk;
}

struct SweepArgs {
    SystemOpts sys; // --k reused; --system ignored in favor of --systems
    CoverOpts cover;
    MessageOpts msg;
    std::string systems = "natural,prime,binary,fib:1";
    std::vector<std::size_t> planes;
    bool fill = false;
    bool truncate = false;
    std::string csv_path;
    bool force = false;
};

int cmd_sweep(const SweepArgs& args) {
    std::vector<vbp::NumeralSystem> systems;
    std::stringstream list(args.systems);
    for (std::string item; std::getline(list, item, ',');) {
        if (item.empty()) continue;
        const auto parsed = vbp::parse_weight_kind(item);
        if (!parsed) throw UsageError("unknown system '" + item + "' in --systems");
        systems.push_back(vbp::NumeralSystem::for_bit_depth(parsed->first, args.sys.k,
                                                            parsed->second));
    }
    if (systems.empty()) throw UsageError("--systems must name at least one system");
    if (args.fill && args.truncate) {
        throw UsageError("--fill and --truncate are mutually exclusive");
    }

    const vbp::GrayImage cover = load_cover(args.cover);
    const vbp::BitVec message = message_bits(args.msg);
    const vbp::SweepFill fill = args.fill      ? vbp::SweepFill::RepeatToCapacity
                                : args.truncate ? vbp::SweepFill::TruncateToCapacity
                                                : vbp::SweepFill::ErrorIfTooLong;
    const auto reports = vbp::sweep(cover, message, systems, args.planes, fill);
    const std::string csv = vbp::to_csv(reports);
    if (!args.csv_path.empty()) {
        refuse_overwrite(args.csv_path, args.force);
        write_text_file(args.csv_path, csv);
        std::cout << reports.size() << " row(s) written to " << args.csv_path << '\n';
    } else {
        std::cout << csv;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"steganography in the virtual bit-planes of alternative numeral systems"};
    app.require_subcommand(1);

    PlanArgs plan_args;
    auto* plan = app.add_subcommand("plan", "Show plane count and weights for a system");
    add_system_opts(plan, plan_args.sys);

    TableArgs table_args;
    auto* table = app.add_subcommand("table", "Print the value -> canonical string table");
    add_system_opts(table, table_args.sys);
    table->add_option("--from", table_args.from, "First value")->capture_default_str();
    table->add_option("--to", table_args.to, "Last value (default: max pixel)");
    table->add_option("--csv", table_args.csv_path, "Write CSV here instead of stdout");
    table->add_flag("--force", table_args.force, "Overwrite existing output files");

    EmbedArgs embed_args;
    auto* embed = app.add_subcommand("embed", "Hide a message in a cover image");
    add_system_opts(embed, embed_args.sys);
    add_cover_opts(embed, embed_args.cover);
    add_message_opts(embed, embed_args.msg);
    embed->add_option("--plane", embed_args.plane, "Virtual bit-plane index (0 = least significant)")
        ->required();
    embed->add_flag("--fill", embed_args.fill, "Repeat the message to fill the whole capacity");
    embed->add_flag("--prefix", embed_args.prefix,
                    "Frame with a 32-bit length prefix (the default)");
    embed->add_option("--length", embed_args.explicit_length,
                      "Embed raw with this explicit bit count (must equal the message length)");
    embed->add_option("--out", embed_args.out_path, "Stego PGM path")->required();
    embed->add_option("--save-cover", embed_args.save_cover_path,
                      "Also write the (possibly synthesized) cover here");
    embed->add_option("--report", embed_args.report_path, "Write the JSON report here too");
    embed->add_flag("--force", embed_args.force, "Overwrite existing output files");

    ExtractArgs extract_args;
    auto* extract = app.add_subcommand("extract", "Recover a message from a stego image");
    add_system_opts(extract, extract_args.sys);
    extract->add_option("--stego", extract_args.stego_path, "Stego PGM path")->required();
    extract->add_option("--plane", extract_args.plane, "Virtual bit-plane index")->required();
    extract->add_flag("--prefix", extract_args.prefix,
                      "Read a 32-bit length prefix (the default)");
    extract->add_option("--length", extract_args.explicit_length,
                        "Read exactly this many raw bits (no prefix)");
    extract->add_option("--out", extract_args.out_path, "Write message bytes here (default: stdout)");
    extract->add_flag("--force", extract_args.force, "Overwrite existing output files");

    AnalyzeArgs analyze_args;
    auto* analyze = app.add_subcommand("analyze", "Compare a cover/stego pair at one plane");
    add_system_opts(analyze, analyze_args.sys);
    analyze->add_option("--cover", analyze_args.cover_path, "Cover PGM path")->required();
    analyze->add_option("--stego", analyze_args.stego_path, "Stego PGM path")->required();
    analyze->add_option("--plane", analyze_args.plane, "Virtual bit-plane index")->required();
    analyze->add_option("--csv", analyze_args.csv_path, "Write the CSV row here");
    analyze->add_flag("--force", analyze_args.force, "Overwrite existing output files");

    SweepArgs sweep_args;
    auto* sweep = app.add_subcommand("sweep", "Embed across (system, plane) grid and tabulate");
    sweep->add_option("--systems", sweep_args.systems, "Comma-separated system list")
        ->capture_default_str();
    sweep->add_option("--k", sweep_args.sys.k, "Pixel bit depth")
        ->capture_default_str()
        ->check(CLI::Range(1u, 16u));
    add_cover_opts(sweep, sweep_args.cover);
    add_message_opts(sweep, sweep_args.msg);
    sweep->add_option("--planes", sweep_args.planes,
                      "Plane indices to include (default: all planes of each system)");
    sweep->add_flag("--fill", sweep_args.fill, "Repeat the message to each cell's capacity");
    sweep->add_flag("--truncate", sweep_args.truncate, "Drop message bits that do not fit");
    sweep->add_option("--csv", sweep_args.csv_path, "Write the CSV table here");
    sweep->add_flag("--force", sweep_args.force, "Overwrite existing output files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (plan->parsed()) return cmd_plan(plan_args);
        if (table->parsed()) return cmd_table(table_args);
        if (embed->parsed()) return cmd_embed(embed_args);
        if (extract->parsed()) return cmd_extract(extract_args);
        if (analyze->parsed()) return cmd_analyze(analyze_args);
        if (sweep->parsed()) return cmd_sweep(sweep_args);
        std::cerr << "vbpstego: no subcommand\n";
        return kExitUsage;
    } catch (const vbp::CapacityError& e) {
        std::cerr << "vbpstego: capacity: " << e.what() << '\n';
        return kExitCapacity;
    } catch (const vbp::PgmParseError& e) {
        std::cerr << "vbpstego: parse: " << e.what() << '\n';
        return kExitMalformed;
    } catch (const vbp::CorruptStreamError& e) {
        std::cerr << "vbpstego: corrupt stream: " << e.what() << '\n';
        return kExitMalformed;
    } catch (const vbp::IoError& e) {
        std::cerr << "vbpstego: io: " << e.what() << '\n';
        return kExitIo;
    } catch (const UsageError& e) {
        std::cerr << "vbpstego: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "vbpstego: " << e.what() << '\n';
        return kExitUsage;
    }
}
