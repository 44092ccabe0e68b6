#include <regex>
#include <sstream>

#include <gtest/gtest.h>

#include <unfolder/unfolder.hpp>

using namespace unfolder;

namespace {

std::vector<Branch> hysteresis_diagram()
{
    ShParams s;
    s.alpha = 0.01;
    return full_diagram(sh_germ(s), default_window("sh"));
}

std::size_t count_of(const std::string& text, const std::string& needle)
{
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
    return n;
}

std::vector<std::string> keys_of(const json& j)
{
    std::vector<std::string> out;
    for (auto it = j.begin(); it != j.end(); ++it) out.push_back(it.key());
    return out;
}

}  // namespace

TEST(Config, ParseReal)
{
    EXPECT_DOUBLE_EQ(parse_real("-3/2"), -1.5);
    EXPECT_DOUBLE_EQ(parse_real(" 0.25 "), 0.25);
    EXPECT_DOUBLE_EQ(parse_real("1e-3"), 1e-3);
    EXPECT_DOUBLE_EQ(parse_real("1 / 4"), 0.25);
    for (const char* bad : {"", "abc", "1/0", "3/2/1", "2x", "nan", "inf"})
        EXPECT_THROW((void)parse_real(bad), ConfigError) << bad;
}

TEST(Config, ParseAssignment)
{
    const auto [k, v] = parse_assignment("  d_a = 10 ");
    EXPECT_EQ(k, "d_a");
    EXPECT_DOUBLE_EQ(v, 10.0);
    EXPECT_THROW((void)parse_assignment("alpha"), ConfigError);
    EXPECT_THROW((void)parse_assignment("=1"), ConfigError);
}

TEST(Config, ParseConfigSkipsCommentsAndBlankLines)
{
    std::istringstream in("# header\n\np = -3/2   # exponent\nalpha=0.01\n");
    const auto a = parse_config(in);
    ASSERT_EQ(a.size(), 2u);
    EXPECT_EQ(a[0].first, "p");
    EXPECT_DOUBLE_EQ(a[0].second, -1.5);
    EXPECT_EQ(a[1].first, "alpha");
}

TEST(Config, ErrorsCarryLineNumbers)
{
    std::istringstream in("alpha = 1\nbroken line\n");
    try {
        (void)parse_config(in);
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
        EXPECT_EQ(count_of(msg, "ConfigError"), 1u) << msg;
    }
}

TEST(Config, RunFile)
{
    std::istringstream in("model = ldgc_c\nwindow = 0.1, 2, 0, 1/2\nalpha_prime = -0.01\nfamily = ldgc_c\n");
    const RunFile rf = parse_run_file(in);
    EXPECT_EQ(rf.model, "ldgc_c");
    EXPECT_EQ(rf.family, "ldgc_c");
    ASSERT_TRUE(rf.window.has_value());
    EXPECT_DOUBLE_EQ(rf.window->lambda_max, 0.5);
    ASSERT_EQ(rf.overrides.size(), 1u);
    EXPECT_EQ(rf.overrides[0].first, "alpha_prime");

    std::istringstream bad_model("model = nope\n");
    EXPECT_THROW((void)parse_run_file(bad_model), ConfigError);
    std::istringstream bad_window("window = 1, 0, 0, 1\n");
    EXPECT_THROW((void)parse_run_file(bad_window), ConfigError);
    EXPECT_THROW((void)parse_run_file(std::string("/nonexistent/run.cfg")), ConfigError);
}

TEST(Config, ModelConfigRejectsUnknownKeysAndBadValues)
{
    ModelConfig sh("sh");
    EXPECT_THROW(sh.set("alpha_prime", 0.1), ConfigError);
    EXPECT_THROW(sh.set("bogus", 0.1), ConfigError);
    ModelConfig ld("ldgc_b");
    EXPECT_THROW(ld.set("d_a", 1.0), ConfigError);
    EXPECT_THROW(ModelConfig("other"), ConfigError);
    sh.set("p", -0.5);
    EXPECT_THROW((void)sh.germ(), ConfigError);
}

TEST(Config, SettingRoundTrip)
{
    ModelConfig c("sh");
    c.apply(std::vector<std::pair<std::string, double>>{{"alpha", 0.01}, {"d_a", 10.0}});
    const Setting s = c.setting();
    EXPECT_DOUBLE_EQ(s.at("alpha"), 0.01);
    EXPECT_DOUBLE_EQ(s.at("d_a"), 10.0);
    EXPECT_EQ(s.size(), sh_keys.size());
}

TEST(Export, CsvHeaderAndRows)
{
    const auto diagram = hysteresis_diagram();
    std::ostringstream os;
    write_branches_csv(os, diagram);
    const std::string text = os.str();
    EXPECT_EQ(text.substr(0, text.find('\n')), "branch_id,lambda,x,g_x,stability,physical,special");

    std::istringstream in(text);
    const auto rows = read_branches_csv(in);
    std::size_t total = 0, folds = 0;
    for (const auto& b : diagram) {
        total += b.points.size();
        folds += b.special_points.size();
    }
    ASSERT_EQ(rows.size(), total);
    std::size_t marked = 0;
    for (const auto& r : rows) {
        if (!r.special.empty()) {
            EXPECT_EQ(r.special, "fold");
            ++marked;
        }
        EXPECT_TRUE(r.stability == "stable" || r.stability == "unstable");
        EXPECT_TRUE(r.physical == "true" || r.physical == "false");
    }
    EXPECT_EQ(marked, folds);
}

TEST(Export, CsvRowsRevalidateThroughModels)
{
    ShParams s;
    s.alpha = 0.01;
    const Germ g = sh_germ(s);
    std::ostringstream os;
    write_branches_csv(os, full_diagram(g, default_window("sh")));
    std::istringstream in(os.str());
    const auto diagram = hysteresis_diagram();
    for (const auto& r : read_branches_csv(in)) EXPECT_LT(std::abs(g.value(r.x, r.lambda)), 1e-8);
    // %.17g round-trips exactly
    std::istringstream again(os.str());
    const auto rows = read_branches_csv(again);
    EXPECT_EQ(rows.front().x, diagram.front().points.front().x);
    EXPECT_EQ(rows.front().lambda, diagram.front().points.front().lambda);
}

TEST(Export, CsvWithoutPhysicalityLeavesColumnEmpty)
{
    std::ostringstream os;
    write_branches_csv(os, full_diagram(ldgc_germ_B(LdgcParams{}), default_window("ldgc_b")));
    std::istringstream in(os.str());
    bool crossing = false;
    for (const auto& r : read_branches_csv(in)) {
        EXPECT_EQ(r.physical, "");
        crossing = crossing || r.special == "crossing";
    }
    EXPECT_TRUE(crossing);
}

TEST(Export, MalformedCsvRejected)
{
    std::istringstream wrong_header("a,b,c\n");
    EXPECT_THROW((void)read_branches_csv(wrong_header), ConfigError);
    std::istringstream short_row(std::string(branch_csv_header) + "\n0,1,2\n");
    EXPECT_THROW((void)read_branches_csv(short_row), ConfigError);
}

TEST(Export, ReportJsonFields)
{
    const SingularityReport r = classify_point(ldgc_germ_B(LdgcParams{}), 1.0, 0.025);
    const json j = to_json(r);
    EXPECT_EQ(keys_of(j), (std::vector<std::string>{"location", "extra_param", "class", "epsilon", "delta",
                                                    "codimension", "derivatives", "residuals"}));
    EXPECT_EQ(j["class"], "Transcritical");
    EXPECT_EQ(j["epsilon"], -1);
    EXPECT_TRUE(j["delta"].is_null());
    EXPECT_TRUE(j["extra_param"].is_null());
    EXPECT_DOUBLE_EQ(j["location"]["x"].get<double>(), 1.0);
    EXPECT_DOUBLE_EQ(j["location"]["lambda"].get<double>(), 0.025);
    EXPECT_DOUBLE_EQ(j["derivatives"]["g_lambda_x"].get<double>(), 100.0);
    EXPECT_EQ(j["residuals"].size(), 3u);
}

TEST(Export, PitchforkReportCarriesDeltaAndExtraParam)
{
    ShParams s;
    s.d_a = 4.0;
    const double u0 = s.crossing_u();
    SingularityReport r = classify_point(sh_germ(s), u0, u0 * u0 / 4.0);
    r.extra_param = std::pair<std::string, double>{"d_a", 4.0};
    const json j = to_json(r);
    EXPECT_EQ(j["class"], "Pitchfork");
    EXPECT_EQ(j["delta"], 1);
    EXPECT_EQ(j["extra_param"]["name"], "d_a");
    EXPECT_DOUBLE_EQ(j["extra_param"]["value"].get<double>(), 4.0);
    EXPECT_EQ(j["codimension"], 2);
}

TEST(Export, SignatureAndCatalogueJson)
{
    const auto entries = enumerate_catalogue(builtin_family("ldgc_b"));
    const json j = catalogue_to_json(entries, {"entry_0.csv", "entry_1.csv"});
    ASSERT_EQ(j.size(), 2u);
    EXPECT_EQ(keys_of(j[0]).front(), "setting");
    EXPECT_EQ(j[0]["diagram_csv_path"], "entry_0.csv");
    EXPECT_DOUBLE_EQ(j[0]["setting"]["alpha_prime"].get<double>(), 0.01);
    const json sig = j[1]["signature"];
    for (const char* k : {"n_branches", "n_folds", "n_crossings", "hysteresis", "stable_components",
                          "low_high_connected", "hysteresis_interval"})
        EXPECT_TRUE(sig.contains(k)) << k;
    EXPECT_FALSE(j[0].contains("error"));
}

TEST(Svg, StylesMarkersAndLabels)
{
    const auto diagram = hysteresis_diagram();
    const std::string svg = render_svg(diagram, default_window("sh"), "u", "q");
    EXPECT_EQ(svg.rfind("<svg", 0), 0u);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
    EXPECT_GT(count_of(svg, "stroke-dasharray"), 0u);
    EXPECT_GT(count_of(svg, "<path"), count_of(svg, "stroke-dasharray"));
    std::size_t folds = 0;
    for (const auto& b : diagram) folds += b.special_points.size();
    EXPECT_EQ(count_of(svg, "<circle"), folds);
    EXPECT_NE(svg.find(">u</text>"), std::string::npos);
    EXPECT_NE(svg.find(">q</text>"), std::string::npos);
}

TEST(Svg, PathCoordinatesUseSixDecimals)
{
    const std::string svg = render_svg(hysteresis_diagram(), default_window("sh"), "u", "q");
    const std::regex path("<path d=\"([^\"]*)\"");
    const std::regex number("-?[0-9]+(\\.[0-9]+)?");
    std::size_t checked = 0;
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), path); it != std::sregex_iterator(); ++it) {
        const std::string d = (*it)[1];
        for (auto n = std::sregex_iterator(d.begin(), d.end(), number); n != std::sregex_iterator(); ++n) {
            const std::string s = n->str();
            ASSERT_NE(s.find('.'), std::string::npos) << s;
            EXPECT_EQ(s.size() - s.find('.') - 1, 6u) << s;
            ++checked;
        }
    }
    EXPECT_GT(checked, 100u);
}

TEST(Svg, CrossingMarker)
{
    const std::string svg =
        render_svg(full_diagram(ldgc_germ_B(LdgcParams{}), default_window("ldgc_b")), default_window("ldgc_b"), "p", "phi");
    EXPECT_GE(count_of(svg, "stroke=\"blue\""), 1u);
}
