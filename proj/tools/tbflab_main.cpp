#include "CLI11.hpp"
#include "json.hpp"

#include "tbf/boundary.hpp"
#include "tbf/gfunction.hpp"
#include "tbf/ghoc.hpp"
#include "tbf/spectral.hpp"
#include "tbf/specification.hpp"
#include "tbf/verify.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

std::string fmt(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

json jnum(double v, int digits) { return json(std::stod(fmt(v, digits))); }

double parse_double(const std::string& text) {
    const char* begin = text.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw std::domain_error("could not parse number \"" + text + "\"");
    return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = text.find(sep, start);
        out.push_back(text.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

std::vector<double> parse_p_list(const std::string& text) {
    std::vector<double> out;
    for (const std::string& part : split(text, ',')) out.push_back(parse_double(part));
    return out;
}

// start:stop:step, inclusive of start, up to stop (half-step rounding slack);
// the keyword "default" leaves the choice to the command
std::vector<double> parse_p_grid(const std::string& text) {
    if (text == "default") return {};
    std::vector<std::string> parts = split(text, ':');
    if (parts.size() != 3)
        throw std::domain_error("grid must look like start:stop:step, got \"" + text + "\"");
    double start = parse_double(parts[0]);
    double stop = parse_double(parts[1]);
    double step = parse_double(parts[2]);
    if (step <= 0.0) throw std::domain_error("grid step must be positive");
    if (stop < start) throw std::domain_error("grid stop must not precede start");
    std::vector<double> out;
    for (double v = start; v < stop + step / 2; v += step) out.push_back(v);
    return out;
}

std::vector<tbf::StoppingDistance> parse_n_list(const std::string& text) {
    std::vector<tbf::StoppingDistance> out;
    for (const std::string& part : split(text, ',')) {
        if (part == "inf") {
            out.push_back(tbf::StoppingDistance::infinity());
            continue;
        }
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(part, &used);
        } catch (const std::exception&) {
            throw std::domain_error("could not parse stopping distance \"" + part + "\"");
        }
        if (used != part.size() || v < 0)
            throw std::domain_error("could not parse stopping distance \"" + part + "\"");
        out.push_back(tbf::StoppingDistance::finite(v));
    }
    return out;
}

struct OutputTarget {
    std::ostream* stream = &std::cout;
    std::unique_ptr<std::ofstream> file;

    void open(const std::string& path) {
        if (path.empty()) return;
        file = std::make_unique<std::ofstream>(path);
        if (!file->is_open())
            throw std::domain_error("could not open output file \"" + path + "\"");
        stream = file.get();
    }
};

int run_spectrum(const std::vector<double>& ps, const std::string& format, int digits,
                 const std::string& output) {
    for (double pv : ps) tbf::Density check(pv);
    OutputTarget out;
    out.open(output);
    if (format == "csv") *out.stream << "p,lambda_pf,lambda_r,a,c_ratio,d_const\n";
    for (double pv : ps) {
        tbf::Spectrum s = tbf::build_spectrum(tbf::Density(pv));
        if (format == "csv") {
            *out.stream << fmt(s.p, digits) << ',' << fmt(s.lambda_pf, digits) << ','
                        << fmt(s.lambda_r, digits) << ',' << fmt(s.a, digits) << ','
                        << fmt(s.c_ratio, digits) << ',' << fmt(s.d_const, digits) << '\n';
        } else {
            json row{{"schema_version", 1},
                     {"p", jnum(s.p, digits)},
                     {"lambda_pf", jnum(s.lambda_pf, digits)},
                     {"lambda_r", jnum(s.lambda_r, digits)},
                     {"a", jnum(s.a, digits)},
                     {"c_ratio", jnum(s.c_ratio, digits)},
                     {"d_const", jnum(s.d_const, digits)}};
            *out.stream << row.dump() << '\n';
        }
    }
    return 0;
}

int run_gfun(const std::vector<double>& ps, const std::vector<tbf::StoppingDistance>& ns,
             const std::string& format, int digits, const std::string& output) {
    for (double pv : ps) tbf::Density check(pv);
    OutputTarget out;
    out.open(output);
    if (format == "csv") *out.stream << "p,n,g\n";
    for (double pv : ps) {
        tbf::Density p(pv);
        for (const tbf::StoppingDistance& n : ns) {
            double value = tbf::g(p, n);
            std::string n_text = n.is_infinite() ? "inf" : std::to_string(n.value());
            if (format == "csv") {
                *out.stream << fmt(pv, digits) << ',' << n_text << ','
                            << fmt(value, digits) << '\n';
            } else {
                json row{{"schema_version", 1}, {"p", jnum(pv, digits)}, {"g", jnum(value, digits)}};
                if (n.is_infinite())
                    row["n"] = "inf";
                else
                    row["n"] = n.value();
                *out.stream << row.dump() << '\n';
            }
        }
    }
    return 0;
}

int run_sample(double pv, long length, std::uint64_t seed, const std::string& format,
               int digits, const std::string& output) {
    if (length < 1) throw std::domain_error("length must be at least 1");
    tbf::Density p(pv);
    std::vector<tbf::GhocState> path = tbf::sample_path(p, length, seed);

    OutputTarget out;
    out.open(output);
    if (format == "csv") *out.stream << "state,spin\n";
    long occupied = 0;
    for (const tbf::GhocState& s : path) {
        int spin = tbf::tau(s);
        occupied += spin;
        std::string state_text = s.is_infinite() ? "inf" : std::to_string(s.value());
        if (format == "csv") {
            *out.stream << state_text << ',' << spin << '\n';
        } else {
            json row{{"schema_version", 1}, {"spin", spin}};
            if (s.is_infinite())
                row["state"] = "inf";
            else
                row["state"] = s.value();
            *out.stream << row.dump() << '\n';
        }
    }
    double frac = static_cast<double>(occupied) / static_cast<double>(length);
    std::cerr << "occupied fraction " << fmt(frac, digits) << " over " << length
              << " steps\n";
    return 0;
}

int run_verify(const std::string& suite, const std::vector<double>& ps,
               std::uint64_t seed, int digits, const std::string& output) {
    for (double pv : ps) tbf::Density check(pv);  // reject bad overrides up front

    OutputTarget out;
    out.open(output);
    std::vector<tbf::CheckResult> results = tbf::run_suite(suite, ps, seed);
    int passed = 0;
    for (const tbf::CheckResult& r : results) {
        json row{{"schema_version", 1}, {"criterion", r.criterion}, {"name", r.name},
                 {"pass", r.pass},      {"detail", r.detail},
                 {"seconds", jnum(r.seconds, digits)}};
        *out.stream << row.dump() << '\n';
        if (r.pass) ++passed;
    }
    std::cerr << "passed " << passed << "/" << results.size() << " checks\n";
    return passed == static_cast<int>(results.size()) ? 0 : 1;
}

int run_kernel(double pv, const std::string& bc_text, const std::string& format,
               int digits, const std::string& output) {
    tbf::Density p(pv);
    tbf::BoundaryCondition bc = tbf::parse_boundary(bc_text);
    bc.validate();
    tbf::KernelResult result = tbf::kernel(p, bc);

    std::vector<std::pair<std::uint32_t, double>> rows = result.probabilities;
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first > b.first;
    });

    const long len = bc.window_length();
    OutputTarget out;
    out.open(output);
    if (format == "csv") *out.stream << "word,probability\n";
    for (const auto& [word, prob] : rows) {
        std::string bits(static_cast<std::size_t>(len), '0');
        for (long i = 0; i < len; ++i)
            if ((word >> i) & 1u) bits[static_cast<std::size_t>(i)] = '1';
        if (format == "csv") {
            *out.stream << bits << ',' << fmt(prob, digits) << '\n';
        } else {
            json row{{"schema_version", 1}, {"word", bits}, {"probability", jnum(prob, digits)}};
            *out.stream << row.dump() << '\n';
        }
    }
    std::cerr << "Z_Lambda = " << fmt(result.partition_value, digits) << " (log "
              << fmt(result.log_partition, digits) << ")\n";
    return 0;
}

void print_caret_diagnostic(const std::string& text, const tbf::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    std::cerr << "  " << text << '\n';
    std::cerr << "  " << std::string(std::min(e.position, text.size()), ' ') << "^\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"thinned Bernoulli field laboratory"};
    app.require_subcommand(1);

    std::string p_text, grid_text, n_text, format = "csv", output, suite = "all", bc_text;
    int digits = 9;
    long length = 1000;
    std::uint64_t seed = tbf::kDefaultVerifySeed;
    double p_single = 0.5;

    auto add_table_flags = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "output format: csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--digits", digits, "significant digits for floating-point output")
            ->check(CLI::Range(1, 17));
        cmd->add_option("--output", output, "write rows to a file instead of stdout");
    };

    CLI::App* spectrum_cmd =
        app.add_subcommand("spectrum", "transfer-matrix eigendata per density");
    CLI::Option* sp_p = spectrum_cmd->add_option("--p", p_text, "density or comma list");
    CLI::Option* sp_grid =
        spectrum_cmd->add_option("--p-grid", grid_text, "density grid start:stop:step");
    sp_p->excludes(sp_grid);
    add_table_flags(spectrum_cmd);

    CLI::App* gfun_cmd =
        app.add_subcommand("gfun", "one-sided empty-spin probabilities g(n)");
    CLI::Option* gf_p = gfun_cmd->add_option("--p", p_text, "density or comma list");
    CLI::Option* gf_grid =
        gfun_cmd->add_option("--p-grid", grid_text, "density grid start:stop:step");
    gf_p->excludes(gf_grid);
    gfun_cmd->add_option("--n", n_text, "comma list of stopping distances, inf allowed")
        ->required();
    add_table_flags(gfun_cmd);

    CLI::App* sample_cmd =
        app.add_subcommand("sample", "stationary chain path and thinned spins");
    sample_cmd->add_option("--p", p_single, "density")->required();
    sample_cmd->add_option("--length", length, "number of steps");
    sample_cmd->add_option("--seed", seed, "RNG seed");
    add_table_flags(sample_cmd);

    CLI::App* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    verify_cmd->add_option("--suite", suite,
                           "spectral, gfunction, ghoc, pushforward, kernel, bounds, "
                           "finite-energy, or all");
    CLI::Option* vf_p = verify_cmd->add_option("--p", p_text, "density override, comma list");
    CLI::Option* vf_grid =
        verify_cmd->add_option("--p-grid", grid_text,
                               "density override grid, or the word default");
    vf_p->excludes(vf_grid);
    verify_cmd->add_option("--seed", seed, "seed for the randomized corpora");
    add_table_flags(verify_cmd);

    CLI::App* kernel_cmd =
        app.add_subcommand("kernel", "interior-word probabilities for a boundary");
    kernel_cmd->add_option("--p", p_single, "density")->required();
    kernel_cmd->add_option("--bc", bc_text, "boundary description")->required();
    add_table_flags(kernel_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(spectrum_cmd)) {
            std::vector<double> ps;
            if (!p_text.empty()) ps = parse_p_list(p_text);
            else if (!grid_text.empty()) ps = parse_p_grid(grid_text);
            if (ps.empty()) ps = parse_p_grid("0.1:0.9:0.1");
            return run_spectrum(ps, format, digits, output);
        }
        if (app.got_subcommand(gfun_cmd)) {
            std::vector<double> ps;
            if (!p_text.empty()) ps = parse_p_list(p_text);
            else if (!grid_text.empty()) ps = parse_p_grid(grid_text);
            if (ps.empty()) ps = {0.5};
            return run_gfun(ps, parse_n_list(n_text), format, digits, output);
        }
        if (app.got_subcommand(sample_cmd))
            return run_sample(p_single, length, seed, format, digits, output);
        if (app.got_subcommand(verify_cmd)) {
            std::vector<double> ps;
            if (!p_text.empty()) ps = parse_p_list(p_text);
            else if (!grid_text.empty()) ps = parse_p_grid(grid_text);
            return run_verify(suite, ps, seed, digits, output);
        }
        if (app.got_subcommand(kernel_cmd))
            return run_kernel(p_single, bc_text, format, digits, output);
    } catch (const tbf::ParseError& e) {
        print_caret_diagnostic(bc_text, e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
