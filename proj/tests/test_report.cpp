#include <doctest.h>

#include "galrep3/report.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>

using namespace galrep3;

namespace {

const std::string kDataDir = GALREP3_DATA_DIR;

EigenTable load(const std::string& name) { return parse_table_file(kDataDir + "/" + name); }

bool summary_contains(const AnalysisReport& rep, const std::string& needle) {
    for (const auto& line : rep.summary)
        if (line.find(needle) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST_CASE("analysis of the weight-2 family") {
    EigenTable s2 = load("s2.tbl");
    AnalysisOptions opts;
    opts.lmax = 60;
    opts.lemma_sample_size = 100;
    AnalysisReport rep = analyze(s2, opts);

    CHECK(rep.condition1_ok);
    CHECK(rep.reducible_candidates == std::vector<u64>{5, 13, 1901, 105649});
    CHECK(rep.large_reducible_candidates == std::vector<u64>{1901, 105649});
    CHECK(rep.cubic_cm_vacuous);
    CHECK(!rep.cubic_cm_possible);
    CHECK(rep.duality_candidates.empty());
    CHECK(rep.selfdual_candidates.empty());
    CHECK(rep.exceptional_candidates == std::set<u64>{5, 7, 11, 13, 19});

    CHECK(summary_contains(rep, "reducible candidates: 5 13 1901 105649"));
    CHECK(summary_contains(rep, "excluded classes: 1 mod 64, 31 mod 32"));

    // every prime up to lmax appears exactly once, in order
    std::vector<u64> expected;
    for (u64 ell = 2; ell <= opts.lmax; ++ell)
        if (is_prime(ell)) expected.push_back(ell);
    REQUIRE(rep.verdicts.size() == expected.size());
    for (size_t i = 0; i < expected.size(); ++i) CHECK(rep.verdicts[i].ell == expected[i]);

    auto at = [&](u64 ell) -> const PrimeVerdict& {
        for (const auto& v : rep.verdicts)
            if (v.ell == ell) return v;
        static PrimeVerdict dummy;
        return dummy;
    };
    CHECK(at(2).status == VerdictStatus::ExcludedByHypothesis);
    CHECK(at(3).status == VerdictStatus::InsufficientData);
    CHECK(at(5).status_string() == "candidate:h216,i,j,reducible");
    CHECK(at(7).status_string() == "certified:PSU3");
    CHECK(at(11).status_string() == "certified:PSU3");
    CHECK(at(13).status_string() == "certified:PSL3");
    CHECK(at(17).status_string() == "certified:PSL3");
    CHECK(at(19).status_string() == "certified:PSU3");
    CHECK(at(31).status == VerdictStatus::ExcludedByHypothesis);
    CHECK(at(31).detail == "ell = 31 (mod 32)");
}

TEST_CASE("analysis of the level-88 family") {
    EigenTable l88 = load("level88.tbl");
    AnalysisOptions opts;
    opts.lmax = 100;
    opts.lemma_sample_size = 100;
    AnalysisReport rep = analyze(l88, opts);

    CHECK(rep.condition1_ok);
    REQUIRE(rep.probes.size() == 1);
    CHECK(rep.probes[0].p == 89);
    CHECK(rep.reducible_candidates == std::vector<u64>{2879, 48889});
    CHECK(rep.large_reducible_candidates == std::vector<u64>{2879, 48889});
    CHECK(rep.exceptional_candidates == std::set<u64>{5, 7, 11, 13, 19});
    CHECK(rep.cubic_cm_vacuous);

    auto at = [&](u64 ell) -> const PrimeVerdict& {
        for (const auto& v : rep.verdicts)
            if (v.ell == ell) return v;
        static PrimeVerdict dummy;
        return dummy;
    };
    CHECK(at(7).status == VerdictStatus::ExcludedByHypothesis);   // ramified
    CHECK(at(11).status == VerdictStatus::ExcludedByHypothesis);  // bad reduction
    CHECK(at(5).status == VerdictStatus::Candidate);
    CHECK(at(13).status_string() == "candidate:c");
    CHECK(at(97).status_string() == "candidate:c");
}

TEST_CASE("text and JSON rendering are deterministic and parseable") {
    EigenTable s2 = load("s2.tbl");
    AnalysisOptions opts;
    opts.lmax = 30;
    opts.lemma_sample_size = 50;
    AnalysisReport rep1 = analyze(s2, opts);
    AnalysisReport rep2 = analyze(s2, opts);

    std::string text1 = render_text(rep1), text2 = render_text(rep2);
    CHECK(text1 == text2);
    CHECK(!text1.empty());
    CHECK(text1.back() == '\n');

    std::string js1 = render_json(rep1);
    CHECK(js1 == render_json(rep2));
    // byte-stable round trip through the JSON library
    nlohmann::ordered_json parsed = nlohmann::ordered_json::parse(js1);
    CHECK(parsed.dump(2) + "\n" == js1);
    CHECK(parsed["family"] == "s2");
    CHECK(parsed["verdicts"].is_array());
    bool saw5 = false;
    for (const auto& v : parsed["verdicts"]) {
        if (v["ell"] == 5) {
            saw5 = true;
            CHECK(v["status"] == "candidate:h216,i,j,reducible");
        }
    }
    CHECK(saw5);
    // excluded classes are structured
    REQUIRE(parsed["flags"]["excluded_classes"].size() == 2);
    CHECK(parsed["flags"]["excluded_classes"][0]["modulus"] == 64);
    CHECK(parsed["flags"]["excluded_classes"][0]["residue"] == 1);
}

TEST_CASE("an empty table cannot establish the probe condition") {
    EigenTable l53 = load("level53.tbl");
    AnalysisReport rep = analyze(l53, {});
    CHECK(!rep.condition1_ok);
    CHECK(rep.verdicts.empty());
    CHECK(!rep.condition1_detail.empty());
}

TEST_CASE("preset resolution") {
    EigenTable s2 = load("s2.tbl");
    PresetSelection sel = resolve_presets(s2.descriptor, "", {});
    REQUIRE(sel.split != nullptr);
    REQUIRE(sel.inert != nullptr);
    CHECK(sel.split->name == preset_paper_split_d1().name);
    CHECK(sel.inert->name == preset_paper_inert_d1().name);

    EigenTable l88 = load("level88.tbl");
    PresetSelection sel88 = resolve_presets(l88.descriptor, "", {});
    CHECK(sel88.split->name == preset_paper_88().name);
    CHECK(sel88.inert->name == preset_paper_88().name);

    EigenTable l53 = load("level53.tbl");
    PresetSelection sel53 = resolve_presets(l53.descriptor, "", {});
    CHECK(sel53.split->name == preset_conservative_default().name);

    // named presets override, unknown names are rejected
    PresetSelection named = resolve_presets(s2.descriptor, preset_paper_88().name, {});
    CHECK(named.split->name == preset_paper_88().name);
    CHECK_THROWS(resolve_presets(s2.descriptor, "no-such-preset", {}));

    // extra presets shadow builtins when requested by name; the vector must
    // outlive the selection, which points into it
    SpectraPreset custom = preset_conservative_default();
    custom.name = "custom";
    std::vector<SpectraPreset> extras{custom};
    PresetSelection cust = resolve_presets(s2.descriptor, "custom", extras);
    CHECK(cust.split->name == "custom");
}
