#include "kepfam_cli/cli.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "CLI11.hpp"
#include "kepfam/error.hpp"
#include "kepfam_cli/datasets.hpp"

namespace kepfam::cli {

namespace {

constexpr double kMaxDtFraction = 1e-2;

double parse_real(const std::string& text) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
        throw Error(ErrorCode::InvalidArgument, "not a finite number: '" + text + "'");
    }
    return value;
}

Vec3 parse_point(const std::string& text) {
    std::vector<double> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = text.find(',', start);
        parts.push_back(parse_real(text.substr(start, comma - start)));
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    if (parts.size() == 1) {
        return {parts[0], 0.0, 0.0};
    }
    if (parts.size() == 3) {
        return {parts[0], parts[1], parts[2]};
    }
    throw Error(ErrorCode::InvalidArgument, "--r takes a radius or x,y,z (got '" + text + "')");
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    file << text;
    file.close();
    if (!file) {
        throw Error(ErrorCode::Io, "cannot write " + path.string());
    }
}

void emit(const std::string& text, const RunConfig& config, std::ostream& out) {
    if (config.out_path) {
        write_file(*config.out_path, text);
    } else {
        out << text;
    }
}

void emit_dataset(const Dataset& data, const RunConfig& config, std::ostream& out) {
    if (config.format == Format::Json) {
        emit(dataset_json(data), config, out);
        return;
    }
    emit(dataset_csv(data), config, out);
    if (config.out_path) {
        std::filesystem::path sidecar(*config.out_path);
        sidecar.replace_extension(".conics.json");
        write_file(sidecar, conics_json(data));
    }
}

void emit_figures(const RunConfig& config, std::ostream& out) {
    const std::filesystem::path dir(config.out_path.value_or("figures"));
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw Error(ErrorCode::Io, "cannot create " + dir.string() + ": " + ec.message());
    }
    const std::array<Dataset, 3> figures{orbit_dataset(config),
                                         family_dataset(config, kFigureMembers),
                                         envelope_dataset(config, kFigureMembers)};
    for (std::size_t i = 0; i < figures.size(); ++i) {
        const std::string stem = "fig" + std::to_string(i + 1);
        if (config.format == Format::Json) {
            write_file(dir / (stem + ".json"), dataset_json(figures[i]));
            out << (dir / (stem + ".json")).string() << '\n';
        } else {
            write_file(dir / (stem + ".csv"), dataset_csv(figures[i]));
            write_file(dir / (stem + ".conics.json"), conics_json(figures[i]));
            out << (dir / (stem + ".csv")).string() << '\n'
                << (dir / (stem + ".conics.json")).string() << '\n';
        }
    }
}

int dispatch(const RunConfig& config, std::ostream& out) {
    switch (config.command) {
    case Command::Verify: {
        const VerifyReport report = run_verify(config);
        emit(config.format == Format::Json ? report_json(report) : report_csv(report), config, out);
        return report.overall ? kExitPass : kExitVerificationFailure;
    }
    case Command::Orbit:
        emit_dataset(orbit_dataset(config), config, out);
        return kExitPass;
    case Command::Family:
        emit_dataset(family_dataset(config, config.samples), config, out);
        return kExitPass;
    case Command::Envelope:
        emit_dataset(envelope_dataset(config, config.samples), config, out);
        return kExitPass;
    case Command::Figures:
        emit_figures(config, out);
        return kExitPass;
    }
    return kExitUsage;
}

int exit_code_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::Domain:
    case ErrorCode::UnboundOrbit:
    case ErrorCode::RadialDegenerate:
    case ErrorCode::OutOfRange:
    case ErrorCode::Io:
        return kExitUsage;
    default:
        return kExitNumeric;
    }
}

} // namespace

void RunConfig::validate() const {
    if (samples < 3) {
        throw Error(ErrorCode::InvalidArgument, "--samples must be at least 3");
    }
    if (!(dt_fraction > 0.0) || dt_fraction > kMaxDtFraction) {
        throw Error(ErrorCode::InvalidArgument, "--dt-fraction must lie in (0, 1e-2]");
    }
    if (tol_override && (!(*tol_override > 0.0) || !std::isfinite(*tol_override))) {
        throw Error(ErrorCode::InvalidArgument, "--tol-override must be positive and finite");
    }
}

Vec3 default_plane_normal(const Vec3& r) {
    if (r.z == 0.0) {
        return {0.0, 0.0, 1.0};
    }
    const std::array<double, 3> size{std::abs(r.x), std::abs(r.y), std::abs(r.z)};
    const std::array<Vec3, 3> axes{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
    const auto least = std::min_element(size.begin(), size.end()) - size.begin();
    return normalized(cross(r, axes[static_cast<std::size_t>(least)]));
}

Scenario resolve(const RunConfig& config) {
    const PhysParams params{config.mu, config.k};
    FamilySpec spec = FamilySpec::make(params, config.H, config.r, default_plane_normal(config.r));
    FamilyMember member = family_member(spec, config.psi);
    return {std::move(spec), std::move(member)};
}

std::string format_number(double x) {
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x + 0.0);
    return std::string(buf.data(), ptr);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Kepler ellipses of fixed energy through a fixed point", "kepfam"};
    RunConfig config;
    std::string command;
    std::string r_text;
    std::string format_text = "json";
    std::string out_text;
    double tol_override = 1.0;

    app.add_option("command", command, "verify | orbit | family | envelope | figures")
        ->required()
        ->check(CLI::IsMember({"verify", "orbit", "family", "envelope", "figures"}));
    app.add_option("--mu", config.mu, "Reduced mass")->capture_default_str();
    app.add_option("--k", config.k, "Force constant")->capture_default_str();
    app.add_option("--H", config.H, "Energy (must be negative)")->capture_default_str();
    app.add_option("--r", r_text, "Fixed point x,y,z or a radius along x (default 1,0,0)");
    app.add_option("--psi", config.psi, "Momentum angle of the single member")->capture_default_str();
    app.add_option("--samples", config.samples, "Family members / curve points (>= 3)")
        ->capture_default_str();
    app.add_option("--dt-fraction", config.dt_fraction, "RK4 step as a fraction of the period")
        ->capture_default_str();
    app.add_option("--format", format_text, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_option("--out", out_text, "Output file (figures: output directory)");
    auto* tol_opt = app.add_option("--tol-override", tol_override, "Multiply every tolerance by X");
    app.add_option("--seed", config.seed, "Seed of the random-state checks")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (!r_text.empty()) {
            config.r = parse_point(r_text);
        }
        if (tol_opt->count() > 0) {
            config.tol_override = tol_override;
        }
        if (!out_text.empty()) {
            config.out_path = out_text;
        }
        config.format = format_text == "csv" ? Format::Csv : Format::Json;
        config.command = command == "verify"     ? Command::Verify
                         : command == "orbit"    ? Command::Orbit
                         : command == "family"   ? Command::Family
                         : command == "envelope" ? Command::Envelope
                                                 : Command::Figures;
        config.validate();
        (void)resolve(config);
    } catch (const Error& e) {
        err << "kepfam: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        return dispatch(config, out);
    } catch (const Error& e) {
        err << "kepfam: " << to_string(e.code()) << ": " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "kepfam: " << e.what() << '\n';
        return kExitNumeric;
    }
}

} // namespace kepfam::cli
