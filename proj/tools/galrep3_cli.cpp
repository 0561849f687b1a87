// Command-line front end: table ingestion, the analysis pipeline, and the
// individual sieves and oracles.

#include <CLI11.hpp>

#include "galrep3/report.hpp"
#include "galrep3/surfaces.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace galrep3;

namespace {

constexpr int kExitParse = 1;
constexpr int kExitCondition = 2;
constexpr int kExitUsage = 64;

EigenTable load_table(const std::string& path) { return parse_table_file(path); }

std::vector<SpectraPreset> load_spectra(const std::string& path) {
    if (path.empty()) return {};
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_spectra(in);
}

Probe parse_probe_arg(const std::string& s) {
    auto colon = s.find(':');
    if (colon == std::string::npos) throw CLI::ValidationError("--probe", "expected p:signs");
    Probe pr;
    pr.p = std::stoull(s.substr(0, colon));
    std::string signs = s.substr(colon + 1);
    if (signs == "+1")
        pr.allowed_signs = {+1};
    else if (signs == "-1")
        pr.allowed_signs = {-1};
    else if (signs == "+-1" || signs == "+1,-1")
        pr.allowed_signs = {+1, -1};
    else
        throw CLI::ValidationError("--probe", "signs must be +1, -1 or +-1");
    return pr;
}

void print_sieve_report(const SieveReport& rep) {
    if (rep.inconclusive) {
        std::cout << rep.sieve_id << ": inconclusive (no usable witness)\n";
        return;
    }
    if (rep.all_primes) std::cout << rep.sieve_id << ": congruence degenerates; every prime survives\n";
    std::cout << rep.sieve_id << " candidates:";
    if (rep.candidates.empty()) std::cout << " none";
    for (auto& [ell, w] : rep.candidates) std::cout << " " << ell;
    std::cout << "\n";
    for (auto& [ell, w] : rep.candidates) {
        std::cout << "  " << ell << ": witness p=" << w.p;
        if (w.sign) std::cout << " s=" << (w.sign > 0 ? "+1" : "-1") << " i=" << w.exponent_i;
        std::cout << " norm=" << w.norm << " =";
        for (auto [q, e] : w.norm_factors.factors) {
            std::cout << " " << q;
            if (e > 1) std::cout << "^" << e;
        }
        std::cout << "\n";
    }
    for (auto& [ell, why] : rep.excluded) std::cout << "  excluded " << ell << ": " << why << "\n";
}

void print_verdict(const PrimeVerdict& v) {
    std::cout << "ell " << v.ell << " " << splitting_name(v.splitting) << " " << v.status_string();
    if (!v.detail.empty()) std::cout << " (" << v.detail << ")";
    std::cout << "\n";
    for (auto& [name, w] : v.witnesses) {
        std::cout << "  " << name << ": ";
        if (w.p) std::cout << "p=" << w.p << ", ";
        std::cout << w.quantity << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exceptional-prime sieves and image certification for rank-3 eigenvalue tables"};
    app.require_subcommand(1);

    // analyze
    std::string an_table, an_preset, an_format = "text", an_spectra;
    u64 an_lmax = 200;
    auto* analyze_cmd = app.add_subcommand("analyze", "full pipeline: sieves plus per-prime verdicts");
    analyze_cmd->add_option("table", an_table, "eigenvalue table file")->required();
    analyze_cmd->add_option("--lmax", an_lmax, "verdict bound (default 200)");
    analyze_cmd->add_option("--preset", an_preset, "spectra preset name");
    analyze_cmd->add_option("--spectra", an_spectra, "spectra preset file");
    analyze_cmd->add_option("--format", an_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    // sieve
    std::string sv_kind, sv_table;
    std::vector<std::string> sv_probes;
    std::vector<int> sv_groups;
    std::vector<u64> sv_witnesses;
    auto* sieve_cmd = app.add_subcommand("sieve", "run one sieve");
    sieve_cmd->add_option("kind", sv_kind, "reducible, duality, cubic-cm or selfdual")
        ->required()
        ->check(CLI::IsMember({"reducible", "duality", "cubic-cm", "selfdual"}));
    sieve_cmd->add_option("table", sv_table, "eigenvalue table file")->required();
    sieve_cmd->add_option("--probe", sv_probes, "reducible: probe as p:signs (signs +1, -1, +-1)");
    sieve_cmd->add_option("--group", sv_groups, "reducible: group id per probe");
    sieve_cmd->add_option("--witness", sv_witnesses, "selfdual: witness primes");

    // certify
    std::string ct_table, ct_preset, ct_spectra;
    u64 ct_ell = 0;
    auto* certify_cmd = app.add_subcommand("certify", "verdict for one prime");
    certify_cmd->add_option("table", ct_table, "eigenvalue table file")->required();
    certify_cmd->add_option("ell", ct_ell, "prime to certify")->required();
    certify_cmd->add_option("--preset", ct_preset, "spectra preset name");
    certify_cmd->add_option("--spectra", ct_spectra, "spectra preset file");

    // lemma83
    u64 lm_ell = 0, lm_samples = 2000;
    bool lm_exhaustive = false;
    auto* lemma_cmd = app.add_subcommand("lemma83", "unitariness verifier");
    lemma_cmd->add_option("ell", lm_ell, "odd prime")->required();
    lemma_cmd->add_flag("--exhaustive", lm_exhaustive, "require exhaustive enumeration");
    lemma_cmd->add_option("--samples", lm_samples, "sample count for large ell");

    // count-points
    i64 cp_a = 0;
    u64 cp_p = 0;
    bool cp_csv = false;
    auto* count_cmd = app.add_subcommand("count-points", "affine point count for one surface");
    count_cmd->add_option("--a", cp_a, "surface parameter (nonzero)")->required();
    count_cmd->add_option("--p", cp_p, "odd prime")->required();
    count_cmd->add_flag("--csv", cp_csv, "emit a,p,count,charsum");

    // orders
    std::string or_out;
    auto* orders_cmd = app.add_subcommand("orders", "closure oracles and a spectra.cfg draft");
    orders_cmd->add_option("--out", or_out, "draft output file (default stdout)");

    // congruence
    std::string cg_a, cg_b, cg_offset = "0";
    u64 cg_ell = 0;
    auto* cong_cmd = app.add_subcommand("congruence", "cross-family coefficient congruence");
    cong_cmd->add_option("tableA", cg_a, "eigenvalue table file")->required();
    cong_cmd->add_option("tableB", cg_b, "companion table file")->required();
    cong_cmd->add_option("--ell", cg_ell, "congruence prime")->required();
    cong_cmd->add_option("--offset", cg_offset, "offset polynomial c0,c1,... in p");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (*analyze_cmd) {
            EigenTable table = load_table(an_table);
            AnalysisOptions opts;
            opts.lmax = an_lmax;
            opts.preset_name = an_preset;
            opts.extra_presets = load_spectra(an_spectra);
            AnalysisReport rep = analyze(table, opts);
            if (!rep.condition1_ok) {
                std::cerr << "Condition 1' unverifiable: " << rep.condition1_detail << "\n";
                return kExitCondition;
            }
            std::cout << (an_format == "json" ? render_json(rep) : render_text(rep));
            return 0;
        }
        if (*sieve_cmd) {
            EigenTable table = load_table(sv_table);
            if (sv_kind == "reducible") {
                std::vector<Probe> probes;
                for (size_t i = 0; i < sv_probes.size(); ++i) {
                    Probe pr = parse_probe_arg(sv_probes[i]);
                    pr.group_id = i < sv_groups.size() ? sv_groups[i] : 0;
                    probes.push_back(pr);
                }
                if (probes.empty()) {
                    std::cerr << "reducible sieve needs at least one --probe\n";
                    return kExitUsage;
                }
                print_sieve_report(reducibility_sieve(table, probes));
            } else if (sv_kind == "duality") {
                auto gammas = enumerate_characters(table.descriptor.quadratic_modulus(), 2);
                if (gammas.empty()) std::cout << "no nontrivial quadratic character\n";
                for (const auto& g : gammas) {
                    std::cout << g.str() << (duality_sieve(table, g).dual_flag
                                                 ? " duality holds exactly\n"
                                                 : "\n");
                    print_sieve_report(duality_sieve(table, g).report);
                }
            } else if (sv_kind == "cubic-cm") {
                auto psis = enumerate_characters(table.descriptor.n_prime(), 3);
                if (psis.empty())
                    std::cout << "no cubic character mod " << table.descriptor.n_prime()
                              << "; case impossible for every ell\n";
                for (const auto& psi : psis) {
                    CubicCmResult r = cubic_cm_sieve(table, psi);
                    std::cout << psi.str() << (r.cm_flag ? " cubic CM holds exactly\n" : "\n");
                    print_sieve_report(r.report);
                }
            } else {
                std::vector<u64> wit = sv_witnesses;
                if (wit.empty())
                    for (auto& [p, a] : table.entries)
                        if (!a.is_real()) wit.push_back(p);
                print_sieve_report(selfdual_sieve(table, wit));
            }
            return 0;
        }
        if (*certify_cmd) {
            EigenTable table = load_table(ct_table);
            CertifyOptions opts;
            std::vector<SpectraPreset> extra = load_spectra(ct_spectra);
            PresetSelection sel = resolve_presets(table.descriptor, ct_preset, extra);
            opts.preset = splitting(table.descriptor.D, ct_ell) == SplittingType::Split
                              ? sel.split
                              : sel.inert;
            print_verdict(certify_image(ct_ell, table, opts));
            return 0;
        }
        if (*lemma_cmd) {
            if (lm_exhaustive && lm_ell > 13) {
                std::cerr << "exhaustive mode is limited to ell <= 13\n";
                return kExitUsage;
            }
            Lemma83Report rep = lemma83_verify(lm_ell, lm_samples);
            std::cout << (rep.divisibility_violations + rep.multiple_violations) << " violations / "
                      << rep.irreducible_count << " irreducible instances ("
                      << (rep.exhaustive ? "exhaustive, " : "sampled, ") << rep.pairs_total
                      << " pairs)\n";
            return 0;
        }
        if (*count_cmd) {
            AffineCount c = count_affine(cp_a, cp_p);
            if (cp_csv)
                std::cout << cp_a << "," << cp_p << "," << c.count << "," << c.char_sum << "\n";
            else
                std::cout << c.count << "\n";
            return 0;
        }
        if (*orders_cmd) {
            std::ostringstream os;
            os << "# spectra draft produced by the closure oracle\n";
            // Heisenberg image over F_7 (omega = 2): shift and diagonal generators
            const FqField* F7 = FqField::get(7, 1);
            ProjMatrix S = ProjMatrix::from_ints(F7, {0, 0, 1, 1, 0, 0, 0, 1, 0});
            ProjMatrix T = ProjMatrix::from_ints(F7, {1, 0, 0, 0, 2, 0, 0, 0, 4});
            ClosureResult heis = group_closure({S, T});
            os << "# heisenberg image over F_7: order " << heis.elements.size() << ", orders";
            for (u64 o : heis.element_orders) os << " " << o;
            os << "\n";
            // its normalizer part generated with the discrete Fourier matrix
            // over F_19 (omega = 7, so sqrt(-3) exists)
            const FqField* F19 = FqField::get(19, 1);
            ProjMatrix S9 = ProjMatrix::from_ints(F19, {0, 0, 1, 1, 0, 0, 0, 1, 0});
            ProjMatrix T9 = ProjMatrix::from_ints(F19, {1, 0, 0, 0, 7, 0, 0, 0, 11});
            ProjMatrix V9 = ProjMatrix::from_ints(F19, {1, 1, 1, 1, 7, 11, 1, 11, 7});
            ClosureResult hess = group_closure({S9, T9, V9});
            os << "# hessian-type closure over F_19: order " << hess.elements.size() << ", orders";
            for (u64 o : hess.element_orders) os << " " << o;
            os << "\n\n";
            std::vector<SpectraPreset> all;
            for (const SpectraPreset* p : builtin_presets()) all.push_back(*p);
            os << serialize_spectra(all);
            if (or_out.empty()) {
                std::cout << os.str();
            } else {
                std::ofstream out(or_out);
                out << os.str();
                std::cout << "wrote " << or_out << "\n";
            }
            return 0;
        }
        if (*cong_cmd) {
            EigenTable ta = load_table(cg_a);
            EigenTable tb = load_table(cg_b);
            std::vector<i64> offset;
            std::istringstream is(cg_offset);
            std::string tok;
            while (std::getline(is, tok, ',')) offset.push_back(std::stoll(tok));
            CongruenceResult r = congruence_check(ta, tb.entries, offset, cg_ell);
            if (r.inconclusive) {
                std::cout << "inconclusive: no common prime support\n";
                return 0;
            }
            std::cout << r.violations.size() << " violations / " << r.checked << " primes checked\n";
            for (u64 p : r.violations) std::cout << "  violation at p = " << p << "\n";
            return 0;
        }
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    return kExitUsage;
}
