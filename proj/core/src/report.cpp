#include "galrep3/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>
#include <sstream>

namespace galrep3 {

namespace {

std::string join(const std::vector<u64>& v) {
    std::ostringstream os;
    for (size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
    return v.empty() ? "none" : os.str();
}

std::string join(const std::set<u64>& s) {
    return join(std::vector<u64>(s.begin(), s.end()));
}

}  // namespace

PresetSelection resolve_presets(const FamilyDescriptor& desc, const std::string& preset_name,
                                const std::vector<SpectraPreset>& extra) {
    PresetSelection sel;
    if (!preset_name.empty()) {
        for (const auto& p : extra)
            if (p.name == preset_name) {
                sel.split = sel.inert = &p;
                return sel;
            }
        if (const SpectraPreset* p = find_builtin_preset(preset_name)) {
            sel.split = sel.inert = p;
            return sel;
        }
        throw std::invalid_argument("unknown preset " + preset_name);
    }
    if (desc.D == 1 && desc.mode == ConductorMode::Geometric) {
        sel.split = &preset_paper_split_d1();
        sel.inert = &preset_paper_inert_d1();
    } else if (desc.D == 7) {
        sel.split = sel.inert = &preset_paper_88();
    } else {
        sel.split = sel.inert = &preset_conservative_default();
    }
    return sel;
}

AnalysisReport analyze(const EigenTable& table, const AnalysisOptions& opts) {
    AnalysisReport rep;
    rep.descriptor = table.descriptor;
    rep.lmax = opts.lmax;
    const FamilyDescriptor& desc = table.descriptor;

    // ---- condition 1' and probe construction ----
    std::vector<u64> nonreal;
    for (auto& [p, a] : table.entries)
        if (!a.is_real()) nonreal.push_back(p);

    if (desc.mode == ConductorMode::Geometric) {
        u64 d = desc.epsilon_conductor_bound;
        auto probe = find_probe(table, d, {1 % d, d - 1});
        if (!probe) {
            rep.condition1_detail = "no table prime = +-1 (mod " + std::to_string(d) +
                                    ") with nonreal a_p";
        } else {
            rep.condition1_ok = true;
            rep.condition1_detail = "probe p = " + std::to_string(probe->p);
            if (probe->p % d == 1 % d) {
                rep.probes.push_back({probe->p, {+1}, 0});
            } else {
                // p = -1 (mod d): either the character is trivial at p, or it
                // has small conductor and is evaluated at the companion probe
                rep.probes.push_back({probe->p, {+1}, 0});
                u64 companion = 0;
                for (u64 q : nonreal)
                    if (q != probe->p) {
                        companion = q;
                        break;
                    }
                if (companion)
                    rep.probes.push_back({companion, {+1, -1}, 0});
                else
                    rep.probes.back().allowed_signs = {+1, -1};
            }
        }
    } else {
        u64 N = desc.level;
        auto probe = find_probe(table, N, {1 % N});
        if (probe) {
            rep.condition1_ok = true;
            rep.condition1_detail = "probe p = " + std::to_string(probe->p);
            rep.probes.push_back({probe->p, {+1}, 0});
        } else if (epsilon_order_bound(desc) == 1 && !nonreal.empty()) {
            // the auxiliary character is forced trivial: every nonreal entry
            // probes independently (intersection semantics)
            rep.condition1_ok = true;
            rep.condition1_detail = "trivial character forced; independent probes";
            int gid = 0;
            for (u64 q : nonreal) rep.probes.push_back({q, {+1}, gid++});
        } else {
            rep.condition1_detail = "no table prime = 1 (mod N) with nonreal a_p";
        }
    }
    if (!rep.condition1_ok) {
        rep.summary.push_back("condition 1' unverifiable: " + rep.condition1_detail);
        return rep;
    }

    // ---- sieves ----
    rep.reducibility = reducibility_sieve(table, rep.probes);
    for (u64 ell : rep.reducibility.candidate_primes()) {
        rep.reducible_candidates.push_back(ell);
        if (ell > opts.lmax) rep.large_reducible_candidates.push_back(ell);
    }

    auto psis = enumerate_characters(desc.n_prime(), 3);
    rep.cubic_cm_vacuous = psis.empty();
    for (const auto& psi : psis) {
        CubicCmResult r = cubic_cm_sieve(table, psi);
        if (r.report.inconclusive) continue;
        if (r.cm_flag || r.report.all_primes) rep.cubic_cm_possible = true;
        for (u64 ell : r.report.candidate_primes()) rep.cubic_cm_candidates.insert(ell);
    }

    for (const auto& gamma : enumerate_characters(desc.quadratic_modulus(), 2)) {
        DualityResult r = duality_sieve(table, gamma);
        if (r.report.inconclusive) continue;
        if (r.dual_flag) rep.duality_exact = true;
        for (u64 ell : r.report.candidate_primes()) rep.duality_candidates.insert(ell);
    }

    if (desc.D != 3 && !nonreal.empty()) {
        SieveReport r = selfdual_sieve(table, nonreal);
        rep.selfdual_candidates = r.candidate_primes();
    }

    // ---- exceptional candidates ----
    PresetSelection sel = resolve_presets(desc, opts.preset_name, opts.extra_presets);
    u64 D = desc.D;
    auto is_split = [D](u64 l) { return splitting(D, l) == SplittingType::Split; };
    for (u64 ell : exceptional_candidates(*sel.split, D, is_split))
        rep.exceptional_candidates.insert(ell);
    for (u64 ell : exceptional_candidates(*sel.inert, D, [&](u64 l) { return !is_split(l); }))
        rep.exceptional_candidates.insert(ell);

    // ---- per-prime verdicts ----
    for (u64 ell = 2; ell <= opts.lmax; ++ell) {
        if (!is_prime(ell)) continue;
        PrimeVerdict v;
        v.ell = ell;
        if (ell == 2) {
            v.status = VerdictStatus::ExcludedByHypothesis;
            v.detail = "mod-2 representations are not considered";
        } else if (ell == 3) {
            v.splitting = splitting(D, ell);
            v.status = VerdictStatus::InsufficientData;
            v.detail = "exceptional cases cannot be decided by inspection";
        } else if (desc.bad_primes.count(ell) || (desc.level != 0 && desc.level % ell == 0)) {
            v.splitting = splitting(D, ell);
            v.status = VerdictStatus::ExcludedByHypothesis;
            v.detail = "bad reduction";
        } else if (D % ell == 0) {
            v.status = VerdictStatus::ExcludedByHypothesis;
            v.detail = "ramified in the coefficient field";
        } else {
            CertifyOptions copts;
            copts.preset = is_split(ell) ? sel.split : sel.inert;
            copts.lemma_sample_size = opts.lemma_sample_size;
            v = certify_image(ell, table, copts);
        }
        rep.verdicts.push_back(std::move(v));
    }

    // ---- summary ----
    {
        std::ostringstream os;
        os << "family " << desc.label << " (D=" << desc.D << ", "
           << (desc.mode == ConductorMode::Geometric ? "geometric" : "modular") << " mode";
        if (desc.level) os << ", level " << desc.level;
        os << ")";
        rep.summary.push_back(os.str());
    }
    rep.summary.push_back("condition 1': " + rep.condition1_detail);
    rep.summary.push_back("reducible candidates: " + join(rep.reducible_candidates));
    if (!rep.large_reducible_candidates.empty())
        rep.summary.push_back("large reducible candidates (above lmax, always listed): " +
                              join(rep.large_reducible_candidates));
    if (desc.mode == ConductorMode::Geometric && !desc.excluded_congruences.empty()) {
        std::ostringstream os;
        os << "excluded classes: ";
        for (size_t i = 0; i < desc.excluded_congruences.size(); ++i) {
            auto [m, r] = desc.excluded_congruences[i];
            os << (i ? ", " : "") << r << " mod " << m;
        }
        rep.summary.push_back(os.str());
    }
    rep.summary.push_back(rep.cubic_cm_vacuous
                              ? "cubic CM: impossible (no cubic character mod N')"
                              : (rep.cubic_cm_possible
                                     ? "cubic CM: family-level obstruction present"
                                     : "cubic CM candidates: " + join(rep.cubic_cm_candidates)));
    rep.summary.push_back(rep.duality_exact ? "duality: family-level obstruction present"
                                            : "duality candidates: " + join(rep.duality_candidates));
    rep.summary.push_back("self-duality candidates: " + join(rep.selfdual_candidates));
    rep.summary.push_back("exceptional candidates: " + join(rep.exceptional_candidates));
    {
        size_t psl = 0, psu = 0, cand = 0, excl = 0, insuf = 0;
        for (auto& v : rep.verdicts) switch (v.status) {
                case VerdictStatus::CertifiedPSL3: ++psl; break;
                case VerdictStatus::CertifiedPSU3: ++psu; break;
                case VerdictStatus::Candidate: ++cand; break;
                case VerdictStatus::ExcludedByHypothesis: ++excl; break;
                case VerdictStatus::InsufficientData: ++insuf; break;
            }
        std::ostringstream os;
        os << "verdicts up to " << opts.lmax << ": " << psl << " certified PSL3, " << psu
           << " certified PSU3, " << cand << " candidate, " << excl << " excluded by hypothesis, "
           << insuf << " insufficient data";
        rep.summary.push_back(os.str());
    }
    return rep;
}

std::string render_text(const AnalysisReport& rep) {
    std::ostringstream os;
    for (const auto& line : rep.summary) os << line << "\n";
    if (!rep.condition1_ok) return os.str();
    os << "\n";
    for (const auto& v : rep.verdicts) {
        os << "ell " << v.ell;
        if (v.ell != 2) os << " " << splitting_name(v.splitting);
        os << " " << v.status_string();
        if (!v.detail.empty()) os << " (" << v.detail << ")";
        os << "\n";
    }
    return os.str();
}

std::string render_json(const AnalysisReport& rep) {
    nlohmann::ordered_json j;
    j["family"] = rep.descriptor.label;
    nlohmann::ordered_json flags;
    flags["condition1_ok"] = rep.condition1_ok;
    flags["condition1_detail"] = rep.condition1_detail;
    flags["reducible_candidates"] = rep.reducible_candidates;
    flags["large_reducible_candidates"] = rep.large_reducible_candidates;
    flags["cubic_cm_vacuous"] = rep.cubic_cm_vacuous;
    flags["cubic_cm_possible"] = rep.cubic_cm_possible;
    flags["cubic_cm_candidates"] = rep.cubic_cm_candidates;
    flags["duality_exact"] = rep.duality_exact;
    flags["duality_candidates"] = rep.duality_candidates;
    flags["selfdual_candidates"] = rep.selfdual_candidates;
    flags["exceptional_candidates"] = rep.exceptional_candidates;
    nlohmann::ordered_json classes = nlohmann::ordered_json::array();
    for (auto [m, r] : rep.descriptor.excluded_congruences)
        classes.push_back({{"modulus", m}, {"residue", r}});
    flags["excluded_classes"] = classes;
    j["flags"] = flags;
    nlohmann::ordered_json verdicts = nlohmann::ordered_json::array();
    for (const auto& v : rep.verdicts) {
        nlohmann::ordered_json jv;
        jv["ell"] = v.ell;
        jv["splitting"] = v.ell == 2 ? "none" : splitting_name(v.splitting);
        jv["status"] = v.status_string();
        if (!v.detail.empty()) jv["detail"] = v.detail;
        nlohmann::ordered_json w;
        for (const auto& [name, cw] : v.witnesses)
            w[name] = {{"p", cw.p}, {"quantity", cw.quantity}};
        jv["witnesses"] = w;
        verdicts.push_back(jv);
    }
    j["verdicts"] = verdicts;
    j["summary"] = rep.summary;
    return j.dump(2) + "\n";
}

}  // namespace galrep3
