// unfolder: classify singular points, trace bifurcation diagrams and
// enumerate catalogues from the command line.
//
// Exit codes: 0 success, 1 usage/config/fatal error, 2 degenerate point or
// point not on the solution set.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11/CLI11.hpp>

#include <unfolder/unfolder.hpp>

namespace fs = std::filesystem;
using namespace unfolder;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_fatal = 1;
constexpr int exit_degenerate = 2;

struct Options {
    std::string model;
    std::string family;
    std::vector<std::string> sets;
    std::string config;
    std::string point;
    std::string window;
    std::string out;
    std::vector<std::string> formats;
    bool auto_pitchfork = false;
    bool auto_locate = false;
};

void add_common(CLI::App* cmd, Options& o)
{
    cmd->add_option("--set", o.sets, "parameter override key=value (repeatable, rationals allowed)");
    cmd->add_option("--config", o.config, "run file with key=value lines");
    cmd->add_option("--window", o.window, "xmin,xmax,lmin,lmax");
    cmd->add_option("--out", o.out, "output directory");
    cmd->add_option("--format", o.formats, "csv, json or svg (repeatable)")
        ->check(CLI::IsMember({"csv", "json", "svg"}));
}

double classification_tol()
{
    const char* env = std::getenv("UNFOLDER_TOL");
    if (!env || !*env) return default_classification_tol;
    const double tol = parse_real(env);
    if (!(tol > 0.0)) throw ConfigError("UNFOLDER_TOL must be positive");
    return tol;
}

struct Resolved {
    ModelConfig model;
    std::optional<Window> window;
    std::string family;
    std::vector<std::pair<std::string, double>> overrides;
};

Resolved resolve(const Options& o, bool need_model)
{
    RunFile rf;
    if (!o.config.empty()) rf = parse_run_file(o.config);
    std::string model = !o.model.empty() ? o.model : rf.model.value_or("sh");
    Resolved r{ModelConfig(model), rf.window, !o.family.empty() ? o.family : rf.family.value_or(""), rf.overrides};
    for (const auto& s : o.sets) r.overrides.push_back(parse_assignment(s));
    if (need_model) r.model.apply(r.overrides);
    if (!o.window.empty()) r.window = parse_window(o.window);
    return r;
}

std::set<std::string> formats_or(const Options& o, std::set<std::string> fallback)
{
    if (o.formats.empty()) return fallback;
    return {o.formats.begin(), o.formats.end()};
}

void write_file(const fs::path& path, const std::string& content)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write '" + path.string() + "'");
    f << content;
}

std::string csv_text(const std::vector<Branch>& diagram)
{
    std::ostringstream os;
    write_branches_csv(os, diagram);
    return os.str();
}

std::string setting_text(const Setting& s)
{
    std::string out;
    for (const auto& [k, v] : s) {
        if (!out.empty()) out += ' ';
        out += k + '=' + format_real(v);
    }
    return out;
}

std::string signature_text(const QualSignature& s)
{
    std::ostringstream os;
    os << "branches=" << s.n_branches << " folds=" << s.n_folds << " crossings=" << s.n_crossings
       << " hysteresis=" << (s.hysteresis ? "yes" : "no") << " stable_components=" << s.stable_components
       << " low_high_connected=" << (s.low_high_connected ? "yes" : "no");
    return os.str();
}

int cmd_classify(const Options& o)
{
    Resolved r = resolve(o, true);
    const double tol = classification_tol();
    const int modes = int(!o.point.empty()) + int(o.auto_pitchfork) + int(o.auto_locate);
    if (modes != 1) throw ConfigError("classify needs exactly one of --point, --auto, --auto-pitchfork");

    SingularityReport report;
    if (o.auto_pitchfork) {
        if (r.model.model != "sh") throw ConfigError("--auto-pitchfork applies to model sh only");
        const Window w = r.window.value_or(default_window("sh"));
        const PitchforkLocation loc = auto_pitchfork(r.model.sh, w);
        ShParams at = r.model.sh;
        at.alpha = 0.0;
        at.d_a = loc.d_a0;
        report = classify_point(sh_germ(at), loc.u0, loc.q0, tol);
        report.extra_param = std::pair<std::string, double>{"d_a", loc.d_a0};
    } else if (o.auto_locate) {
        const Germ germ = r.model.germ();
        const Window w = r.window.value_or(default_window(r.model.model));
        std::optional<SingularityReport> best;
        for (const auto& p : find_singular_points(germ, w)) {
            try {
                SingularityReport c = classify_point(germ, p[0], p[1], tol);
                if (!best || static_cast<int>(c.cls) < static_cast<int>(best->cls)) best = c;
            } catch (const NotOnSolutionSet&) {
            }
        }
        if (!best) throw NoConvergence("no singular point found in the window");
        report = *best;
    } else {
        const auto xy = parse_real_list(o.point, 2);
        report = classify_point(r.model.germ(), xy[0], xy[1], tol);
    }

    const std::string text = to_json(report).dump(2) + "\n";
    if (o.out.empty()) {
        std::cout << text;
    } else {
        fs::create_directories(o.out);
        write_file(fs::path(o.out) / "report.json", text);
        std::cout << to_string(report.cls) << '\n';
    }
    return report.cls == SingularityClass::Degenerate ? exit_degenerate : exit_ok;
}

int cmd_diagram(const Options& o)
{
    Resolved r = resolve(o, true);
    const Germ germ = r.model.germ();
    const Window w = r.window.value_or(default_window(r.model.model));
    const auto formats = formats_or(o, o.out.empty() ? std::set<std::string>{"csv"} : std::set<std::string>{"csv", "svg"});
    if (o.out.empty() && formats.size() > 1) throw ConfigError("more than one --format requires --out");

    std::vector<Branch> diagram;
    int status = exit_ok;
    try {
        full_diagram(germ, w, DiagramOptions{}, diagram);
    } catch (const Error& e) {
        std::cerr << "warning: tracing failed (" << e.what() << "); writing " << diagram.size()
                  << " completed branches\n";
        status = exit_fatal;
    }

    auto json_text = [&] {
        json j;
        j["model"] = germ.model();
        j["state"] = germ.state_name();
        j["control"] = germ.control_name();
        j["setting"] = to_json(r.model.setting());
        j["window"] = json::array({w.x_min, w.x_max, w.lambda_min, w.lambda_max});
        j["signature"] = to_json(signature_of(diagram, w));
        const auto phys = physically_relevant(diagram, w);
        j["physically_relevant"] = phys ? json(*phys) : json(nullptr);
        json sp = json::array();
        for (std::size_t b = 0; b < diagram.size(); ++b)
            for (const auto& s : diagram[b].special_points)
                sp.push_back({{"branch_id", b}, {"kind", to_string(s.kind)}, {"x", s.x}, {"lambda", s.lambda}});
        j["special_points"] = std::move(sp);
        return j.dump(2) + "\n";
    };
    auto svg_text = [&] { return render_svg(diagram, w, germ.state_name(), germ.control_name()); };

    if (o.out.empty()) {
        const std::string& f = *formats.begin();
        std::cout << (f == "csv" ? csv_text(diagram) : f == "json" ? json_text() : svg_text());
        return status;
    }
    fs::create_directories(o.out);
    if (formats.count("csv")) write_file(fs::path(o.out) / "diagram.csv", csv_text(diagram));
    if (formats.count("svg")) write_file(fs::path(o.out) / "diagram.svg", svg_text());
    if (formats.count("json")) write_file(fs::path(o.out) / "diagram.json", json_text());
    std::cout << signature_text(signature_of(diagram, w)) << '\n';
    return status;
}

int cmd_catalogue(const Options& o)
{
    Resolved r = resolve(o, false);
    if (r.family.empty()) throw ConfigError("catalogue needs --family (sh, sh_caseB, ldgc_b, ldgc_c)");
    GermFamily family = builtin_family(r.family);
    {
        ModelConfig check(family.model);
        check.apply(family.base);
        check.apply(r.overrides);
        for (const auto& [k, v] : r.overrides) family.base[k] = v;
    }
    const Window w = r.window.value_or(family.window);
    const auto formats = formats_or(o, {"json", "csv"});

    const auto entries = enumerate_catalogue(family, family.samples, w);
    std::vector<std::string> csv_paths;
    if (!o.out.empty()) {
        fs::create_directories(o.out);
        for (std::size_t i = 0; i < entries.size(); ++i) {
            const std::string stem = "entry_" + std::to_string(i);
            if (formats.count("csv")) {
                write_file(fs::path(o.out) / (stem + ".csv"), csv_text(entries[i].diagram));
                csv_paths.push_back(stem + ".csv");
            }
            if (formats.count("svg")) {
                const Germ g = family.make(entries[i].setting);
                write_file(fs::path(o.out) / (stem + ".svg"),
                           render_svg(entries[i].diagram, w, g.state_name(), g.control_name()));
            }
        }
        if (formats.count("json"))
            write_file(fs::path(o.out) / "catalogue.json", catalogue_to_json(entries, csv_paths).dump(2) + "\n");
    }

    bool failed = false;
    for (const auto& e : entries) {
        std::cout << setting_text(e.setting) << ": ";
        if (e.ok()) {
            std::cout << signature_text(*e.signature) << '\n';
        } else {
            std::cout << "FAILED " << e.error << '\n';
            failed = true;
        }
    }
    std::cout << "distinct signatures: " << distinct_signatures(entries).size() << '\n';
    return failed ? exit_fatal : exit_ok;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Singularity recognition and bifurcation diagrams for steady-state germs"};
    app.require_subcommand(1);
    Options o;

    auto* classify = app.add_subcommand("classify", "classify a point of the solution set");
    classify->add_option("--model", o.model, "sh, ldgc_b or ldgc_c");
    classify->add_option("--point", o.point, "x,lambda");
    classify->add_flag("--auto", o.auto_locate, "locate singular points in the window and report the most degenerate");
    classify->add_flag("--auto-pitchfork", o.auto_pitchfork, "locate the sh pitchfork in (u, q, d_a)");
    add_common(classify, o);

    auto* diagram = app.add_subcommand("diagram", "trace the full bifurcation diagram in a window");
    diagram->add_option("--model", o.model, "sh, ldgc_b or ldgc_c");
    add_common(diagram, o);

    auto* catalogue = app.add_subcommand("catalogue", "enumerate the diagrams of a germ family");
    catalogue->add_option("--family", o.family, "sh, sh_caseB, ldgc_b or ldgc_c");
    add_common(catalogue, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? exit_ok : exit_fatal;
    }

    try {
        if (*classify) return cmd_classify(o);
        if (*diagram) return cmd_diagram(o);
        return cmd_catalogue(o);
    } catch (const NotOnSolutionSet& e) {
        std::cerr << e.what() << '\n';
        return exit_degenerate;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_fatal;
    }
}
