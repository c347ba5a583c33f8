// cordic-kit: command-line front end for the CORDIC engines.
//
//   cordic-kit compute sin-cos 60 --variant radix4
//   cordic-kit compare --variant conventional,radix4 --count 64
//   cordic-kit dct-table --csv
//   cordic-kit image tests/fixtures/noise.pgm --out /tmp/recon
//
// Exit codes: 0 ok, 1 usage/argument error, 2 numeric non-convergence, 3 I/O.

#include "cordic/dct.hpp"
#include "cordic/errors.hpp"
#include "cordic/functions.hpp"
#include "cordic/image.hpp"
#include "cordic/metrics.hpp"
#include "cordic/variants.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace cordic;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNoConvergence = 2;
constexpr int kExitIo = 3;

constexpr long double kDeg = std::numbers::pi_v<long double> / 180.0L;

struct EngineFlags {
    std::string format = "q2.14";
    int iterations = 16;
    int epsilon_ulps = 4;
    bool no_correction = false;

    void add_to(CLI::App& app)
    {
        app.add_option("--format", format, "Fixed-point format qI.F")->capture_default_str();
        app.add_option("--iterations", iterations, "Iteration budget")->capture_default_str();
        app.add_option("--epsilon-ulps", epsilon_ulps, "Convergence threshold in ulps")
            ->capture_default_str();
        app.add_flag("--no-correction", no_correction, "Skip the final scale-correction multiply");
    }

    EngineConfig config() const
    {
        EngineConfig e = EngineConfig::make(Mode::rotation, Trajectory::circular,
                                            QFormat::parse(format), iterations, epsilon_ulps);
        e.scale_correction = !no_correction;
        e.validate();
        return e;
    }
};

std::string fmt_num(long double v, const char* spec = "%.6Lf")
{
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string fmt_err(long double v)
{
    return fmt_num(v, "%.6Le");
}

std::vector<Variant> parse_variants(const std::vector<std::string>& names)
{
    if (names.empty())
        return all_variants();
    std::vector<Variant> out;
    for (const auto& n : names) {
        auto v = parse_variant(n);
        if (!v)
            throw UsageError("unknown variant '" + n + "'; valid: " + variant_list());
        out.push_back(*v);
    }
    return out;
}

std::vector<DctSource> parse_sources(const std::vector<std::string>& names)
{
    if (names.empty())
        return all_dct_sources();
    std::vector<DctSource> out;
    for (const auto& n : names) {
        auto s = parse_dct_source(n);
        if (!s)
            throw UsageError("unknown variant '" + n + "'; valid: exact, " + variant_list());
        out.push_back(*s);
    }
    return out;
}

// Writes to --out when given, stdout otherwise.
void emit(const std::string& text, const std::string& out_path)
{
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw IoError("cannot open '" + out_path + "' for writing");
    f << text;
    if (!f)
        throw IoError("error writing '" + out_path + "'");
}

bool angle_input(Function f, std::size_t index)
{
    switch (f) {
    case Function::sin_cos:
    case Function::tan:
        return true;
    case Function::polar_to_rect:
        return index == 1;
    default:
        return false;
    }
}

bool has_angles(Function f)
{
    return angle_input(f, 0) || angle_input(f, 1) || f == Function::atan ||
           f == Function::rect_to_polar;
}

// --- compute ----------------------------------------------------------------

struct ComputeCmd {
    std::string function;
    std::vector<std::string> args;
    std::string variant = "conventional";
    bool csv = false;
    std::string out;

    int operator()(const EngineFlags& flags) const
    {
        const auto f = parse_function(function);
        if (!f)
            throw UsageError("unknown function '" + function + "'; valid: " + function_list());
        const auto v = parse_variant(variant);
        if (!v)
            throw UsageError("unknown variant '" + variant + "'; valid: " + variant_list());
        if (static_cast<int>(args.size()) != arity(*f))
            throw UsageError(function + " takes " + std::to_string(arity(*f)) + " argument(s)");

        std::vector<long double> values;
        for (std::size_t i = 0; i < args.size(); ++i) {
            long double x = 0;
            try {
                std::size_t used = 0;
                x = std::stold(args[i], &used);
                if (used != args[i].size())
                    throw std::invalid_argument("trailing characters");
            } catch (const std::exception&) {
                throw UsageError("argument '" + args[i] + "' is not a number");
            }
            values.push_back(angle_input(*f, i) ? x * kDeg : x);
        }

        FunctionRequest req{*f, values, flags.config(), *v};
        const FunctionResult r = evaluate(req);
        const auto ref = reference_values(*f, values);

        std::ostringstream os;
        if (csv)
            os << "output,value,reference,abs_error,adds,shifts,multiplies,iterations,status\n";
        else
            os << function << " [" << to_string(*v) << ", " << config_snapshot(req.engine) << ']'
               << (has_angles(*f) ? " angles in degrees\n" : "\n");
        for (std::size_t i = 0; i < r.values.size(); ++i) {
            const auto& nv = r.values[i];
            const long double scale = nv.angle ? 1.0L / kDeg : 1.0L;
            const long double got = nv.value * scale;
            const long double want = ref[i] * scale;
            const long double err = std::fabs(nv.value - ref[i]) * scale;
            if (csv)
                os << nv.name << ',' << fmt_num(got) << ',' << fmt_num(want) << ',' << fmt_err(err)
                   << ',' << r.ops.adds << ',' << r.ops.shifts << ',' << r.ops.multiplies << ','
                   << r.ops.iterations << ',' << to_string(r.status) << '\n';
            else
                os << "  " << nv.name << " = " << fmt_num(got) << "  (reference " << fmt_num(want)
                   << ", error " << fmt_err(err) << ")\n";
        }
        if (!csv)
            os << "  ops: adds=" << r.ops.adds << " shifts=" << r.ops.shifts
               << " multiplies=" << r.ops.multiplies << " iterations=" << r.ops.iterations
               << "  status: " << to_string(r.status) << '\n';
        emit(os.str(), out);
        return r.status == Status::converged ? kExitOk : kExitNoConvergence;
    }
};

// --- compare ----------------------------------------------------------------

struct CompareCmd {
    std::vector<std::string> variants;
    double start = -90.0;
    double stop = 90.0;
    int count = 25;
    std::string out;

    int operator()(const EngineFlags& flags) const
    {
        if (count < 1)
            throw UsageError("--count must be >= 1");
        if (!(std::fabs(start) <= 90.0 && std::fabs(stop) <= 90.0))
            throw UsageError("sweep must stay within [-90, 90] degrees");
        const EngineConfig cfg = flags.config();
        const auto list = parse_variants(variants);

        std::ostringstream os;
        os << "variant,angle_deg,cos_err,sin_err,adds,shifts,multiplies,iterations\n";
        for (Variant v : list) {
            for (int n = 0; n < count; ++n) {
                const long double deg =
                    count == 1 ? start : start + (stop - start) * static_cast<long double>(n) / (count - 1);
                const long double t = deg * kDeg;
                const FunctionResult r = sin_cos(t, cfg, v);
                // Errors before the output words are rounded, taken at double
                // resolution so extended-precision noise in the reference
                // (cosl(pi/4) vs the exact 1/sqrt(2)) does not show up as error.
                const long double ce = std::fabs(static_cast<double>(r.at("cos").unquantized) -
                                                 static_cast<double>(std::cos(t)));
                const long double se = std::fabs(static_cast<double>(r.at("sin").unquantized) -
                                                 static_cast<double>(std::sin(t)));
                os << to_string(v) << ',' << fmt_num(deg, "%.4Lf") << ',' << fmt_err(ce) << ','
                   << fmt_err(se) << ',' << r.ops.adds << ',' << r.ops.shifts << ','
                   << r.ops.multiplies << ',' << r.ops.iterations << '\n';
            }
        }
        emit(os.str(), out);
        return kExitOk;
    }
};

// --- dct-table --------------------------------------------------------------

struct DctTableCmd {
    std::vector<std::string> variants;
    bool csv = false;
    bool quantized = false;
    std::string out;

    int operator()(const EngineFlags& flags) const
    {
        const EngineConfig cfg = flags.config();
        std::vector<CoefficientReport> reports;
        for (const auto& s : parse_sources(variants))
            reports.push_back(dct_coefficients(s, cfg));

        auto cell = [&](const CoefficientRow& row) {
            return fmt_num(quantized ? row.quantized_percent_error : row.percent_error, "%.6Lf");
        };
        std::ostringstream os;
        const char* what = quantized ? "output words" : "before output quantization";
        if (csv) {
            os << "label,angle_deg,cos";
            for (const auto& r : reports)
                os << ',' << to_string(r.source);
            os << '\n';
            for (std::size_t n = 0; n < 7; ++n) {
                const auto& a = dct_angles()[n];
                os << a.label << ',' << fmt_num(a.degrees, "%.2Lf") << ','
                   << fmt_num(exact_dct_cos(a.k), "%.9Lf");
                for (const auto& r : reports)
                    os << ',' << cell(r.rows[n]);
                os << '\n';
            }
        } else {
            os << "DCT coefficient error (%), " << what << "; " << config_snapshot(cfg) << "\n\n";
            os << "| label | angle | cos |";
            for (const auto& r : reports)
                os << ' ' << to_string(r.source) << " |";
            os << "\n|---|---|---|";
            for (std::size_t i = 0; i < reports.size(); ++i)
                os << "---|";
            os << '\n';
            for (std::size_t n = 0; n < 7; ++n) {
                const auto& a = dct_angles()[n];
                os << "| " << a.label << " | " << fmt_num(a.degrees, "%.2Lf") << " | "
                   << fmt_num(exact_dct_cos(a.k), "%.5Lf") << " |";
                for (const auto& r : reports)
                    os << ' ' << cell(r.rows[n]) << " |";
                os << '\n';
            }
        }
        emit(os.str(), out);
        return kExitOk;
    }
};

// --- image ------------------------------------------------------------------

struct ImageCmd {
    std::string input;
    std::vector<std::string> variants;
    std::string out = ".";
    bool approximate_inverse = false;

    int operator()(const EngineFlags& flags) const
    {
        const EngineConfig cfg = flags.config();
        const auto sources = parse_sources(variants);
        const ImageBuffer img = read_pgm(input);
        const std::filesystem::path dir(out);
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec)
            throw IoError("cannot create output directory '" + out + "': " + ec.message());
        const std::string stem = std::filesystem::path(input).stem().string();

        std::ostringstream os;
        os << "variant,mse,psnr_db,adds,shifts,multiplies,iterations\n";
        for (const auto& s : sources) {
            const CoefficientReport rep = dct_coefficients(s, cfg);
            const DctMatrix8 m = build_matrix(rep);
            const ImageBuffer back =
                dct_round_trip(img, m, approximate_inverse ? m : DctMatrix8::exact());
            write_pgm(dir / (stem + "." + to_string(s) + ".pgm"), back);
            MetricsReport mr{to_string(s), mse(img, back), 0.0, rep.ops};
            mr.psnr = psnr(mr.mse);
            os << mr.variant << ',' << format_metric(mr.mse) << ',' << format_metric(mr.psnr) << ','
               << mr.ops.adds << ',' << mr.ops.shifts << ',' << mr.ops.multiplies << ','
               << mr.ops.iterations << '\n';
        }
        const std::string csv = os.str();
        emit(csv, (dir / (stem + ".metrics.csv")).string());
        std::cout << csv;
        return kExitOk;
    }
};

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"cordic-kit: fixed-point CORDIC engines, functions, DCT and image benchmarks"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Expand all help");

    EngineFlags flags;

    ComputeCmd compute;
    auto* c = app.add_subcommand("compute", "Evaluate one function");
    c->add_option("function", compute.function, "One of: " + function_list())->required();
    c->add_option("args", compute.args, "Arguments (angles in degrees)");
    c->add_option("--variant", compute.variant, "Engine: " + variant_list())->capture_default_str();
    c->add_flag("--csv", compute.csv, "CSV output");
    c->add_option("--out", compute.out, "Write output to a file");
    flags.add_to(*c);

    CompareCmd compare;
    auto* cmp = app.add_subcommand("compare", "Accuracy/cost sweep of sin-cos per variant (CSV)");
    cmp->add_option("--variant", compare.variants, "Variants (comma separated, default all)")
        ->delimiter(',');
    cmp->add_option("--start", compare.start, "First angle, degrees")->capture_default_str();
    cmp->add_option("--stop", compare.stop, "Last angle, degrees")->capture_default_str();
    cmp->add_option("--count", compare.count, "Number of angles")->capture_default_str();
    cmp->add_option("--out", compare.out, "Write CSV to a file");
    cmp->add_flag("--csv", "Accepted for symmetry; output is always CSV");
    flags.add_to(*cmp);

    DctTableCmd table;
    auto* dt = app.add_subcommand("dct-table", "Percent error of the DCT coefficients a..g");
    dt->add_option("--variant", table.variants, "Variants incl. 'exact' (default all)")->delimiter(',');
    dt->add_flag("--csv", table.csv, "CSV instead of a markdown table");
    dt->add_flag("--quantized", table.quantized, "Report errors of the output words");
    dt->add_option("--out", table.out, "Write output to a file");
    flags.add_to(*dt);

    ImageCmd image;
    auto* im = app.add_subcommand("image", "Blockwise DCT round trip of a P5 PGM per variant");
    im->add_option("input", image.input, "Input PGM (P5, maxval <= 255)")->required();
    im->add_option("--variant", image.variants, "Variants incl. 'exact' (default all)")->delimiter(',');
    im->add_option("--out", image.out, "Output directory")->capture_default_str();
    im->add_flag("--approximate-inverse", image.approximate_inverse,
                 "Invert with the variant matrix instead of the exact one");
    im->add_flag("--csv", "Accepted for symmetry; metrics are always CSV");
    flags.add_to(*im);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*c)
            return compute(flags);
        if (*cmp)
            return compare(flags);
        if (*dt)
            return table(flags);
        if (*im)
            return image(flags);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
