#pragma once

#include "galrep3/certify.hpp"

#include <string>
#include <vector>

namespace galrep3 {

// Which spectra preset to use per splitting behavior of ell.
struct PresetSelection {
    const SpectraPreset* split = nullptr;
    const SpectraPreset* inert = nullptr;
};

// Built-in defaults for the shipped families; named presets override both.
PresetSelection resolve_presets(const FamilyDescriptor& desc, const std::string& preset_name,
                                const std::vector<SpectraPreset>& extra);

struct AnalysisOptions {
    u64 lmax = 200;
    std::string preset_name;  // empty = family default
    std::vector<SpectraPreset> extra_presets;
    u64 lemma_sample_size = 500;
};

struct AnalysisReport {
    FamilyDescriptor descriptor;
    u64 lmax = 200;

    bool condition1_ok = false;
    std::string condition1_detail;
    std::vector<Probe> probes;

    SieveReport reducibility;
    std::vector<u64> reducible_candidates;        // sorted
    std::vector<u64> large_reducible_candidates;  // the ones above lmax

    bool cubic_cm_vacuous = false;  // no cubic character mod N' exists
    bool cubic_cm_possible = false;
    std::set<u64> cubic_cm_candidates;
    bool duality_exact = false;
    std::set<u64> duality_candidates;
    std::set<u64> selfdual_candidates;
    std::set<u64> exceptional_candidates;

    std::vector<PrimeVerdict> verdicts;  // one per prime <= lmax, ascending
    std::vector<std::string> summary;
};

// Full pipeline: probe construction, the four sieves, exceptional candidates,
// and a per-prime verdict for every prime up to lmax. When condition 1' fails
// the report carries condition1_ok = false and no verdicts.
AnalysisReport analyze(const EigenTable& table, const AnalysisOptions& opts = {});

std::string render_text(const AnalysisReport& rep);
std::string render_json(const AnalysisReport& rep);

}  // namespace galrep3
