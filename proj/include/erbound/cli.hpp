#pragma once

// Command-line front end: run configuration, the verify / solve / region /
// cutset / export-latex commands, and provenance stamping of output files.
// Exit codes: 0 valid or success, 1 invalid, 2 unverified, 3 usage or I/O.

#include "erbound/erbound.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace erb::cli {

enum ExitCode : int { exit_ok = 0, exit_invalid = 1, exit_unverified = 2, exit_usage = 3 };

// Bad arguments, unreadable inputs or unwritable outputs.
class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline constexpr const char* log_env = "ERBOUND_LOG";

struct RunConfig {
    std::string command;
    int n = 5;
    int k = 4;
    int d = 0;  // 0 selects n-1
    std::vector<std::string> directions;  // "a,b" with rational components
    std::string seeds;
    int depth = 0;
    std::size_t cap = SubsetFamily::default_cap;
    int max_depth = 2;
    std::vector<std::string> inputs;  // certificate paths
    bool builtin_eq1 = false;
    bool cutset = false;
    bool check = false;
    std::string out;
    std::string out_dir;
    std::string report;
    std::string csv;
    std::string svg;
    std::string alpha_max = "1/2";
    std::string beta_max = "1/2";
    std::string at;  // "a,b" point tested against the cut-set bound
    std::string config_file;
    std::string log_level = "warn";
};

inline Direction parse_direction(const std::string& text) {
    auto comma = text.find(',');
    if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos)
        throw UsageError("direction '" + text + "' must have the form a,b");
    Direction dir;
    try {
        dir.alpha = parse_rational(text.substr(0, comma));
        dir.beta = parse_rational(text.substr(comma + 1));
        check_direction(dir);
    } catch (const std::invalid_argument& e) {
        throw UsageError("direction '" + text + "': " + e.what());
    }
    return dir;
}

inline std::string format_direction(const Direction& dir) { return dir.alpha.get_str() + "," + dir.beta.get_str(); }

// Checks ranges and rewrites values into canonical spelling.
inline void validate(RunConfig& cfg) {
    if (cfg.d == 0) cfg.d = cfg.n - 1;
    try {
        Universe::build(cfg.n, cfg.k, cfg.d);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    for (auto& s : cfg.directions) s = format_direction(parse_direction(s));
    if (cfg.depth < 0) throw UsageError("--depth must be nonnegative");
    if (cfg.max_depth < 1) throw UsageError("--max-depth must be at least 1");
    if (cfg.cap == 0) throw UsageError("--cap must be positive");
    for (std::string* w : {&cfg.alpha_max, &cfg.beta_max}) {
        try {
            Rational v = parse_rational(*w);
            if (v <= 0) throw std::invalid_argument("must be positive");
            *w = v.get_str();
        } catch (const std::invalid_argument& e) {
            throw UsageError("plot window bound '" + *w + "': " + e.what());
        }
    }
    if (!cfg.at.empty()) {
        auto comma = cfg.at.find(',');
        try {
            if (comma == std::string::npos) throw std::invalid_argument("expected a,b");
            cfg.at = parse_rational(cfg.at.substr(0, comma)).get_str() + "," + parse_rational(cfg.at.substr(comma + 1)).get_str();
        } catch (const std::invalid_argument& e) {
            throw UsageError("point '" + cfg.at + "': " + e.what());
        }
    }
    if (spdlog::level::from_str(cfg.log_level) == spdlog::level::off && cfg.log_level != "off")
        throw UsageError("unknown log level '" + cfg.log_level + "'");
}

inline nlohmann::ordered_json to_json(const RunConfig& cfg) {
    nlohmann::ordered_json j;
    j["command"] = cfg.command;
    j["n"] = cfg.n;
    j["k"] = cfg.k;
    j["d"] = cfg.d;
    j["directions"] = cfg.directions;
    j["seeds"] = cfg.seeds;
    j["depth"] = cfg.depth;
    j["cap"] = cfg.cap;
    j["max_depth"] = cfg.max_depth;
    j["inputs"] = cfg.inputs;
    j["builtin_eq1"] = cfg.builtin_eq1;
    j["cutset"] = cfg.cutset;
    j["check"] = cfg.check;
    j["out"] = cfg.out;
    j["out_dir"] = cfg.out_dir;
    j["report"] = cfg.report;
    j["csv"] = cfg.csv;
    j["svg"] = cfg.svg;
    j["alpha_max"] = cfg.alpha_max;
    j["beta_max"] = cfg.beta_max;
    j["at"] = cfg.at;
    j["config_file"] = cfg.config_file;
    j["log_level"] = cfg.log_level;
    return j;
}

inline std::string toolkit_id() { return std::string(toolkit_name) + " " + toolkit_version; }

// ---------------------------------------------------------------------------
// Provenance stamps

inline std::string stamp_lines(const RunConfig& cfg, std::string_view prefix) {
    return std::string(prefix) + "toolkit: " + toolkit_id() + "\n" + std::string(prefix) + "config: " + to_json(cfg).dump() + "\n";
}

inline std::string stamp_csv(const RunConfig& cfg, const std::string& body) { return stamp_lines(cfg, "# ") + body; }

inline std::string stamp_tex(const RunConfig& cfg, const std::string& body) { return stamp_lines(cfg, "% ") + body; }

// XML comments may not contain "--"; inside JSON strings "--" is the
// same text.
inline std::string stamp_svg(const RunConfig& cfg, const std::string& body) {
    std::string json = to_json(cfg).dump();
    for (std::size_t p = json.find("--"); p != std::string::npos; p = json.find("--", p))
        json.replace(p + 1, 1, "\\u002d");
    std::string comment = "<!-- toolkit: " + toolkit_id() + " config: " + json + " -->\n";
    auto eol = body.find('\n');
    if (body.rfind("<?xml", 0) == 0 && eol != std::string::npos) return body.substr(0, eol + 1) + comment + body.substr(eol + 1);
    return comment + body;
}

// ---------------------------------------------------------------------------
// File I/O

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    if (in.bad()) throw UsageError("error while reading '" + path + "'");
    return s.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out << content;
    out.close();
    if (!out) throw UsageError("error while writing '" + path + "'");
}

inline Certificate load_certificate(const std::string& path) {
    std::string text = read_file(path);
    try {
        return parse_certificate(text);
    } catch (const CertificateError& e) {
        throw UsageError(path + ": " + e.what());
    }
}

inline Universe universe_of(const RunConfig& cfg) { return Universe::build(cfg.n, cfg.k, cfg.d); }

inline std::string problem_label(const Universe& u) {
    return "(" + std::to_string(u.n()) + "," + std::to_string(u.k()) + "," + std::to_string(u.d()) + ")";
}

inline std::string point_label(const Point2& p) { return "(" + p.alpha.get_str() + ", " + p.beta.get_str() + ")"; }

// ---------------------------------------------------------------------------
// Commands

inline VerifyOptions verify_options(const RunConfig& cfg) {
    VerifyOptions vo;
    vo.max_depth = cfg.max_depth;
    vo.family_cap = cfg.cap;
    return vo;
}

inline int exit_code_of(Verdict v) {
    switch (v) {
        case Verdict::valid: return exit_ok;
        case Verdict::invalid: return exit_invalid;
        case Verdict::unverified: return exit_unverified;
    }
    return exit_usage;
}

inline void print_report(const VerifyReport& rep, std::ostream& out) {
    out << to_string(rep.overall);
    if (rep.meaning) out << ": " << rep.meaning->to_string();
    out << '\n';
    out << "column sums: " << (rep.sum_ok ? "ok" : "mismatch") << '\n';
    for (const auto& m : rep.sum_mismatches) out << "  column " << m << '\n';
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        const RowCheck& r = rep.rows[i];
        if (r.status == RowStatus::skipped) continue;
        out << "row " << i + 1 << ": " << to_string(r.status);
        if (r.status == RowStatus::valid) {
            out << " (depth " << r.depth << ", family " << r.family_size;
            if (r.placements) out << ", all placements";
            if (r.uses_identities) out << ", capacity identities";
            out << ")";
        } else if (!r.note.empty()) {
            out << ": " << r.note;
        }
        out << '\n';
    }
    for (const auto& d : rep.diagnostics)
        if (d.rfind("column sum mismatch", 0) != 0 && d.rfind("row ", 0) != 0) out << "diagnostic: " << d << '\n';
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    if (cfg.inputs.size() != 1) throw UsageError("verify takes exactly one certificate path");
    Certificate cert = load_certificate(cfg.inputs.front());
    Universe u = Universe::build(cert.problem.n, cert.problem.k, cert.problem.d);
    auto start = std::chrono::steady_clock::now();
    VerifyReport rep = verify(u, cert, verify_options(cfg));
    spdlog::info("verified {} rows in {:.3f}s", cert.rows.size(),
                 std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    print_report(rep, out);
    if (!cfg.report.empty()) {
        nlohmann::ordered_json j = report_json(u, rep);
        j["meta"] = {{"toolkit", toolkit_id()}, {"config", to_json(cfg)}};
        write_file(cfg.report, j.dump(2) + "\n");
    }
    return exit_code_of(rep.overall);
}

inline SubsetFamily family_of(const RunConfig& cfg, const Universe& u) {
    std::vector<VarSet> seeds;
    if (!cfg.seeds.empty()) {
        Certificate c;
        try {
            c = parse_seed_terms(read_file(cfg.seeds));
        } catch (const CertificateError& e) {
            throw UsageError(cfg.seeds + ": " + e.what());
        }
        if (c.problem != ProblemId{u.n(), u.k(), u.d()})
            throw UsageError(cfg.seeds + ": seed terms are for a different (n,k,d)");
        for (const auto& t : c.terms) seeds.push_back(t.vars);
    }
    try {
        SubsetFamily fam = default_family(u, seeds, cfg.depth, cfg.cap);
        spdlog::info("family: {} classes at depth {}", fam.size(), cfg.depth);
        return fam;
    } catch (const FamilyOverflow& e) {
        throw UsageError(e.what());
    }
}

inline ProvedBound prove_direction(const RunConfig& cfg, const SubsetFamily& fam, const Direction& dir) {
    auto start = std::chrono::steady_clock::now();
    try {
        ProvedBound pb = prove(fam, dir);
        spdlog::info("direction {}: value {} from {} rows x {} columns in {:.3f}s", format_direction(dir),
                     pb.value.get_str(), pb.lp_rows, pb.lp_columns,
                     std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
        pb.certificate.meta.toolkit = toolkit_id();
        pb.certificate.meta.config = to_json(cfg);
        return pb;
    } catch (const ProverError& e) {
        throw UsageError(std::string("solve failed: ") + e.what());
    }
}

inline std::string certificate_file_name(const Direction& dir) {
    std::string s = "bound_" + dir.alpha.get_str() + "_" + dir.beta.get_str() + ".cert.json";
    for (auto& ch : s)
        if (ch == '/') ch = '-';
    return s;
}

inline int cmd_solve(const RunConfig& cfg, std::ostream& out) {
    if (cfg.directions.empty()) throw UsageError("solve needs at least one --dir");
    if (!cfg.out.empty() && cfg.directions.size() > 1) throw UsageError("--out takes one direction; use --out-dir for several");
    Universe u = universe_of(cfg);
    SubsetFamily fam = family_of(cfg, u);
    if (cfg.out.empty() && !cfg.out_dir.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(cfg.out_dir, ec);
        if (ec) throw UsageError("cannot create '" + cfg.out_dir + "': " + ec.message());
    }
    int code = exit_ok;
    for (const auto& text : cfg.directions) {
        Direction dir = parse_direction(text);
        ProvedBound pb = prove_direction(cfg, fam, dir);
        out << "direction " << text << ": value " << pb.value.get_str() << '\n';
        out << "bound: " << BoundMeaning::from(dir.alpha, dir.beta, pb.value).to_string() << '\n';
        std::string path = !cfg.out.empty() ? cfg.out : cfg.out_dir.empty() ? std::string() : cfg.out_dir + "/" + certificate_file_name(dir);
        if (!path.empty()) {
            write_file(path, serialize_certificate(pb.certificate));
            out << "certificate: " << path << " (" << pb.certificate.rows.size() << " rows, " << pb.certificate.terms.size()
                << " terms)\n";
        }
        if (cfg.check) {
            VerifyReport rep = verify(u, pb.certificate, verify_options(cfg));
            out << "check: " << to_string(rep.overall) << '\n';
            code = std::max(code, exit_code_of(rep.overall));
        }
    }
    return code;
}

// The five inequalities bounding the (5,4,4) region.
inline std::vector<HalfPlane> builtin_eq1() {
    return {HalfPlane(4, 0, 1), HalfPlane(3, 1, 1), HalfPlane(15, 10, 6), HalfPlane(5, 10, 3), HalfPlane(0, 10, 1)};
}

inline PlotWindow plot_window(const RunConfig& cfg) { return {parse_rational(cfg.alpha_max), parse_rational(cfg.beta_max)}; }

inline void print_region(const Region2D& r, std::ostream& out) {
    out << "half-planes: " << r.halfplanes().size() << '\n';
    for (const auto& h : r.halfplanes()) out << "  " << h.to_string() << '\n';
    out << "vertices: " << r.vertices().size() << '\n';
    for (const auto& v : r.vertices()) out << "  " << point_label(v) << '\n';
}

inline void emit_region_files(const RunConfig& cfg, const Region2D& r, const std::string& title, std::ostream& out) {
    PlotWindow w = plot_window(cfg);
    if (!cfg.csv.empty()) {
        write_file(cfg.csv, stamp_csv(cfg, emit_csv(r, w)));
        out << "csv: " << cfg.csv << '\n';
    }
    if (!cfg.svg.empty()) {
        write_file(cfg.svg, stamp_svg(cfg, emit_svg(r, w, title)));
        out << "svg: " << cfg.svg << '\n';
    }
}

inline int cmd_region(const RunConfig& cfg, std::ostream& out) {
    if (!cfg.builtin_eq1 && !cfg.cutset && cfg.inputs.empty() && cfg.directions.empty())
        throw UsageError("region needs a source: --builtin-eq1, --cutset, --cert or --prove");
    Universe u = universe_of(cfg);
    std::vector<HalfPlane> hs;
    if (cfg.builtin_eq1) {
        if (u.n() != 5 || u.k() != 4 || u.d() != 4) throw UsageError("--builtin-eq1 is the (5,4,4) region");
        for (const auto& h : builtin_eq1()) hs.push_back(h);
    }
    if (cfg.cutset)
        for (const auto& h : cutset_facets(u.n(), u.k(), u.d()).facets)
            if (h.c() > 0 && (h.a() > 0 || h.b() > 0)) hs.push_back(h);
    for (const auto& path : cfg.inputs) {
        Certificate cert = load_certificate(path);
        if (cert.problem != ProblemId{u.n(), u.k(), u.d()}) throw UsageError(path + ": certificate is for a different (n,k,d)");
        VerifyReport rep = verify(u, cert, verify_options(cfg));
        if (rep.overall != Verdict::valid) {
            out << path << ": " << to_string(rep.overall) << ", not used\n";
            return exit_code_of(rep.overall);
        }
        out << path << ": VALID " << rep.meaning->to_string() << '\n';
        hs.emplace_back(Rational(rep.meaning->alpha), Rational(rep.meaning->beta), Rational(rep.meaning->b));
    }
    if (!cfg.directions.empty()) {
        SubsetFamily fam = family_of(cfg, u);
        for (const auto& text : cfg.directions) {
            Direction dir = parse_direction(text);
            ProvedBound pb = prove_direction(cfg, fam, dir);
            out << "proved: " << BoundMeaning::from(dir.alpha, dir.beta, pb.value).to_string() << '\n';
            if (pb.value > 0) hs.emplace_back(dir.alpha, dir.beta, pb.value);
        }
    }
    Region2D r;
    try {
        r = region_from_halfplanes(hs);
    } catch (const RegionError& e) {
        throw UsageError(e.what());
    }
    print_region(r, out);
    emit_region_files(cfg, r, "Rate region of " + problem_label(u) + " exact-repair regenerating codes", out);
    return exit_ok;
}

inline int cmd_cutset(const RunConfig& cfg, std::ostream& out) {
    Universe u = universe_of(cfg);
    CutsetBound cb = cutset_facets(u.n(), u.k(), u.d());
    out << "cut-set bound " << problem_label(u) << ": B <= sum_{i<" << u.k() << "} min(alpha, (" << u.d() << "-i) beta)\n";
    out << "facets: " << cb.facets.size() << '\n';
    for (const auto& h : cb.facets) out << "  " << h.to_string() << '\n';
    std::vector<HalfPlane> hs;
    for (const auto& h : cb.facets)
        if (h.c() > 0) hs.push_back(h);
    Region2D r = region_from_halfplanes(hs);
    out << "vertices: " << r.vertices().size() << '\n';
    for (const auto& v : r.vertices()) out << "  " << point_label(v) << '\n';
    if (!cfg.at.empty()) {
        auto comma = cfg.at.find(',');
        Rational a = parse_rational(cfg.at.substr(0, comma)), b = parse_rational(cfg.at.substr(comma + 1));
        bool ok = cutset_feasible(cb, a, b);
        out << "point (" << a.get_str() << ", " << b.get_str() << "): " << (ok ? "feasible" : "infeasible")
            << ", min-sum " << cutset_min_sum(cb, a, b).get_str() << '\n';
    }
    emit_region_files(cfg, r, "Cut-set region of " + problem_label(u) + " regenerating codes", out);
    return exit_ok;
}

inline int cmd_export_latex(const RunConfig& cfg, std::ostream& out) {
    if (cfg.inputs.size() != 1) throw UsageError("export-latex takes exactly one certificate path");
    Certificate cert = load_certificate(cfg.inputs.front());
    std::string tex = stamp_tex(cfg, to_latex(cert));
    if (cfg.out.empty()) {
        out << tex;
    } else {
        write_file(cfg.out, tex);
        out << "latex: " << cfg.out << '\n';
    }
    return exit_ok;
}

// ---------------------------------------------------------------------------
// Argument parsing

inline void configure_logging(const std::string& level) {
    static bool installed = false;
    if (!installed) {
        spdlog::set_default_logger(spdlog::stderr_logger_st("erbound"));
        spdlog::set_pattern("[%l] %v");
        installed = true;
    }
    spdlog::set_level(spdlog::level::from_str(level));
}

inline std::string log_level_from_env() {
    const char* v = std::getenv(log_env);
    return v && *v ? std::string(v) : std::string("warn");
}

// CLI11 only reads config files attached to the top-level app, so the
// subcommand's file is applied here: each key fills an option the command
// line left unset.
inline void apply_config_file(CLI::App& sub, const std::string& path) {
    std::vector<CLI::ConfigItem> items;
    try {
        items = CLI::ConfigTOML().from_file(path);
    } catch (const CLI::Error& e) {
        throw UsageError(path + ": " + e.what());
    }
    for (const auto& item : items) {
        if (item.name == "++" || item.name == "--") continue;
        if (!item.parents.empty()) throw UsageError(path + ": sections are not supported ('" + item.fullname() + "')");
        CLI::Option* opt = sub.get_option_no_throw("--" + item.name);
        if (!opt) opt = sub.get_option_no_throw(item.name);
        if (!opt || item.name == "config")
            throw UsageError(path + ": unknown key '" + item.name + "' for " + sub.get_name());
        if (opt->count() > 0) continue;
        try {
            opt->add_result(item.inputs);
            opt->run_callback();
        } catch (const CLI::Error& e) {
            throw UsageError(path + ": " + item.name + ": " + e.what());
        }
    }
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    cfg.log_level = log_level_from_env();
    CLI::App app{"Prover and verifier for exact-repair regenerating-code outer bounds", toolkit_name};
    app.set_version_flag("--version", toolkit_id());
    app.require_subcommand(1);

    auto add_config = [&](CLI::App* sub) {
        sub->add_option("--config", cfg.config_file, "Line-oriented 'key = value' file of option defaults; flags win")
            ->check(CLI::ExistingFile);
    };
    auto add_problem = [&](CLI::App* sub) {
        sub->add_option("--n", cfg.n, "Number of nodes")->capture_default_str();
        sub->add_option("--k", cfg.k, "Nodes needed to reconstruct")->capture_default_str();
        sub->add_option("--d", cfg.d, "Helpers per repair (default n-1)");
    };
    auto add_family = [&](CLI::App* sub) {
        sub->add_option("--seeds", cfg.seeds, "Certificate or terms file whose terms seed the family");
        sub->add_option("--depth", cfg.depth, "Closure rounds of the family")->capture_default_str();
        sub->add_option("--cap", cfg.cap, "Largest family size")->capture_default_str();
    };
    auto add_plot = [&](CLI::App* sub) {
        sub->add_option("--csv", cfg.csv, "Write the boundary as CSV");
        sub->add_option("--svg", cfg.svg, "Write the region as SVG");
        sub->add_option("--alpha-max", cfg.alpha_max, "Plot window width")->capture_default_str();
        sub->add_option("--beta-max", cfg.beta_max, "Plot window height")->capture_default_str();
    };

    CLI::App* verify_cmd = app.add_subcommand("verify", "Check a tabulated certificate");
    add_config(verify_cmd);
    verify_cmd->add_option("certificate", cfg.inputs, "Certificate JSON file")->required();
    verify_cmd->add_option("--max-depth", cfg.max_depth, "Deepest mini family per row")->capture_default_str();
    verify_cmd->add_option("--cap", cfg.cap, "Largest mini family size")->capture_default_str();
    verify_cmd->add_option("--report", cfg.report, "Write a JSON report");

    CLI::App* solve_cmd = app.add_subcommand("solve", "Prove the best bound in given directions");
    add_config(solve_cmd);
    add_problem(solve_cmd);
    solve_cmd->add_option("--dir", cfg.directions, "Direction a,b of the bound a*alpha + b*beta >= c*B");
    add_family(solve_cmd);
    solve_cmd->add_option("--out", cfg.out, "Certificate output file (one direction)");
    solve_cmd->add_option("--out-dir", cfg.out_dir, "Directory for one certificate per direction");
    solve_cmd->add_flag("--check", cfg.check, "Re-verify each emitted certificate");
    solve_cmd->add_option("--max-depth", cfg.max_depth, "Deepest mini family for --check")->capture_default_str();

    CLI::App* region_cmd = app.add_subcommand("region", "Assemble a rate region and emit CSV/SVG");
    add_config(region_cmd);
    add_problem(region_cmd);
    region_cmd->add_flag("--builtin-eq1", cfg.builtin_eq1, "The five (5,4,4) inequalities");
    region_cmd->add_flag("--cutset", cfg.cutset, "Cut-set facets");
    region_cmd->add_option("--cert", cfg.inputs, "Verified certificate whose bound is added");
    region_cmd->add_option("--prove", cfg.directions, "Direction a,b proved and added");
    add_family(region_cmd);
    region_cmd->add_option("--max-depth", cfg.max_depth, "Deepest mini family for --cert")->capture_default_str();
    add_plot(region_cmd);

    CLI::App* cutset_cmd = app.add_subcommand("cutset", "Cut-set facets, vertices and point tests");
    add_config(cutset_cmd);
    add_problem(cutset_cmd);
    cutset_cmd->add_option("--at", cfg.at, "Point a,b to test");
    add_plot(cutset_cmd);

    CLI::App* latex_cmd = app.add_subcommand("export-latex", "Render a certificate as two LaTeX tables");
    add_config(latex_cmd);
    latex_cmd->add_option("certificate", cfg.inputs, "Certificate JSON file")->required();
    latex_cmd->add_option("--out", cfg.out, "Output .tex file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return exit_usage;
    }

    CLI::App* chosen = app.get_subcommands().front();
    cfg.command = chosen->get_name();
    try {
        if (!cfg.config_file.empty()) apply_config_file(*chosen, cfg.config_file);
        validate(cfg);
        configure_logging(cfg.log_level);
        if (cfg.command == "verify") return cmd_verify(cfg, out);
        if (cfg.command == "solve") return cmd_solve(cfg, out);
        if (cfg.command == "region") return cmd_region(cfg, out);
        if (cfg.command == "cutset") return cmd_cutset(cfg, out);
        return cmd_export_latex(cfg, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
}

}  // namespace erb::cli
