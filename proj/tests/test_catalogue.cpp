#include <chrono>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include <unfolder/catalogue.hpp>

#include "oracle.hpp"

using namespace unfolder;

namespace {

std::size_t distinct_count(const std::string& family)
{
    return distinct_signatures(enumerate_catalogue(builtin_family(family))).size();
}

Germ sh_with(double alpha, double d_a, double p = -1.5)
{
    ShParams s;
    s.alpha = alpha;
    s.d_a = d_a;
    s.p = p;
    return sh_germ(s);
}

QualSignature signature_for(const Germ& g, const Window& w) { return signature_of(full_diagram(g, w), w); }

}  // namespace

TEST(Catalogue, DistinctSignatureCounts)
{
    const auto t0 = std::chrono::steady_clock::now();
    EXPECT_EQ(distinct_count("sh"), 4u);
    EXPECT_EQ(distinct_count("sh_caseB"), 2u);
    EXPECT_EQ(distinct_count("ldgc_b"), 2u);
    EXPECT_EQ(distinct_count("ldgc_c"), 2u);
    EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 30.0);
}

TEST(Catalogue, EveryEntrySucceedsInInputOrder)
{
    const GermFamily f = builtin_family("sh");
    const auto entries = enumerate_catalogue(f);
    ASSERT_EQ(entries.size(), f.samples.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        EXPECT_TRUE(entries[i].ok()) << entries[i].error;
        EXPECT_EQ(entries[i].setting, f.samples[i]);
    }
}

TEST(Catalogue, PositiveAlphaLowDaHasHysteresis)
{
    const Window w = default_window("sh");
    const QualSignature s = signature_for(sh_with(0.01, 1.0), w);
    EXPECT_TRUE(s.hysteresis);
    ASSERT_TRUE(s.hysteresis_interval.has_value());
    EXPECT_LT(s.hysteresis_interval->first, s.hysteresis_interval->second);
    EXPECT_EQ(s.n_crossings, 0);
}

TEST(Catalogue, CaseBNeverHasHysteresis)
{
    const Window w = default_window("sh");
    auto rng = oracle::rng(41);
    std::uniform_real_distribution<double> dalpha(-0.05, 0.05), dd(0.5, 5.0);
    std::vector<std::pair<double, double>> settings{{0.01, 1.0}, {-0.01, 1.0}, {0.0, 1.0}};
    for (int n = 0; n < 8; ++n) settings.push_back({dalpha(rng), dd(rng)});
    for (const auto& [alpha, d_a] : settings)
        EXPECT_FALSE(signature_for(sh_with(alpha, d_a, -1.0), w).hysteresis) << "alpha=" << alpha << " d_a=" << d_a;
}

TEST(Catalogue, PitchforkDiagramSignature)
{
    const QualSignature s = signature_for(sh_with(0.0, 4.0), default_window("sh"));
    EXPECT_EQ(s.n_crossings, 1);
    EXPECT_EQ(s.n_folds, 0);
    EXPECT_EQ(s.n_branches, 1);
}

TEST(Catalogue, SignatureStableUnderScalingOfPerturbation)
{
    for (const std::string name : {"sh", "sh_caseB", "ldgc_b", "ldgc_c"}) {
        const GermFamily f = builtin_family(name);
        for (const auto& base : f.samples) {
            const QualSignature ref = signature_for(f.make(base), f.window);
            for (double k : {0.5, 2.0}) {
                Setting s = base;
                s[f.perturbation_key] *= k;
                EXPECT_EQ(signature_for(f.make(s), f.window), ref) << name << " scale " << k;
            }
        }
    }
}

TEST(Catalogue, PhysicalRelevanceFollowsSignOfAlpha)
{
    const Window w = default_window("sh");
    for (double d_a : {1.0, 10.0}) {
        EXPECT_EQ(physically_relevant(full_diagram(sh_with(0.01, d_a), w), w), std::optional<bool>(true));
        EXPECT_EQ(physically_relevant(full_diagram(sh_with(-0.01, d_a), w), w), std::optional<bool>(false));
    }
    const Window lw = default_window("ldgc_b");
    EXPECT_FALSE(physically_relevant(full_diagram(ldgc_germ_B(LdgcParams{}), lw), lw).has_value());
}

TEST(Catalogue, PitchforkDoesNotPersist)
{
    const GermFamily f = builtin_family("sh");
    const Window region{0.1, 10.0, 0.01, 20.0};
    const Setting critical{{"d_a", 4.0}};
    EXPECT_TRUE(persistence_check(f, critical, SingularityClass::Pitchfork, region, 0.0));
    for (double alpha : {0.01, -0.01})
        EXPECT_FALSE(persistence_check(f, critical, SingularityClass::Pitchfork, region, alpha));
}

TEST(Catalogue, TranscriticalDoesNotPersist)
{
    for (const std::string name : {"sh_caseB", "ldgc_b", "ldgc_c"}) {
        const GermFamily f = builtin_family(name);
        EXPECT_TRUE(persistence_check(f, {}, SingularityClass::Transcritical, f.window, 0.0)) << name;
        for (double eps : {0.01, -0.01})
            EXPECT_FALSE(persistence_check(f, {}, SingularityClass::Transcritical, f.window, eps)) << name;
    }
}

TEST(Catalogue, FoldsPersist)
{
    const GermFamily f = builtin_family("sh");
    const Setting fixed{{"d_a", 1.0}};
    for (double alpha : {0.01, 0.005, 0.02})
        EXPECT_TRUE(persistence_check(f, fixed, SingularityClass::LimitPoint, f.window, alpha));
}

TEST(Catalogue, FailingSettingIsRecorded)
{
    const GermFamily f = builtin_family("sh");
    const std::vector<Setting> samples{{{"alpha", 0.01}}, {{"d_a", -1.0}}, {{"bogus", 1.0}}};
    const auto entries = enumerate_catalogue(f, samples, f.window);
    ASSERT_EQ(entries.size(), 3u);
    EXPECT_TRUE(entries[0].ok());
    EXPECT_FALSE(entries[1].ok());
    EXPECT_FALSE(entries[1].error.empty());
    EXPECT_FALSE(entries[2].ok());
    EXPECT_EQ(distinct_signatures(entries).size(), 1u);
}

TEST(Catalogue, UnknownFamilyRejected) { EXPECT_THROW((void)builtin_family("nope"), ConfigError); }

TEST(Catalogue, SignatureEqualityIgnoresInterval)
{
    QualSignature a, b;
    a.n_folds = b.n_folds = 2;
    a.hysteresis_interval = std::pair{0.1, 0.2};
    EXPECT_EQ(a, b);
    b.low_high_connected = true;
    EXPECT_NE(a, b);
}

TEST(Catalogue, BuiltinFamiliesUseUnitPercentMagnitudes)
{
    for (const std::string name : {"sh", "sh_caseB", "ldgc_b", "ldgc_c"}) {
        const GermFamily f = builtin_family(name);
        for (const auto& s : f.samples) EXPECT_DOUBLE_EQ(std::abs(s.at(f.perturbation_key)), 0.01) << name;
    }
}
