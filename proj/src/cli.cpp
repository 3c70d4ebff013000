#include "ntl/cli.hpp"

#include "ntl/bounds.hpp"
#include "ntl/errors.hpp"
#include "ntl/expansion.hpp"
#include "ntl/matrixlab.hpp"
#include "ntl/novelty.hpp"
#include "ntl/partition.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <functional>
#include <sstream>

namespace ntl::cli {

namespace {

using Json = nlohmann::ordered_json;

std::string fraction_string(const mpq_class& q) { return q.get_str(); }

Json number(const mpz_class& z) {
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();
}

Json rational(const mpq_class& q) { return Json{{"fraction", fraction_string(q)}, {"decimal", rational_decimal(q)}}; }

mpq_class parse_rational(const std::string& text) {
    const auto dot = text.find('.');
    mpq_class q;
    if (dot == std::string::npos) {
        if (q.set_str(text, 10) != 0) throw DomainError("not a rational number: " + text);
    } else {
        const std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        mpz_class num;
        if (digits.empty() || num.set_str(digits, 10) != 0) throw DomainError("not a decimal number: " + text);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, text.size() - dot - 1);
        q = mpq_class(num, den);
    }
    q.canonicalize();
    return q;
}

Json partition_record(const Partition& lambda, const NoveltyCertificate& cert, const std::string& provenance) {
    const DyadicProbability r = r_lambda(lambda);
    return Json{{"parts", lambda.parts()}, {"len", lambda.size()},  {"p", cert.p},
                {"r", r.fraction()},       {"r_decimal", r.decimal()}, {"novel", cert.novel},
                {"rank", cert.rank},       {"gcd", cert.gcd},       {"provenance", provenance}};
}

std::string dump(const Json& j) { return j.dump() + "\n"; }

std::string fraction_line(const mpq_class& q) { return fraction_string(q) + " " + rational_decimal(q) + "\n"; }

}  // namespace

std::string rational_decimal(const mpq_class& q, std::size_t digits) {
    mpz_class num = q.get_num();
    const mpz_class& den = q.get_den();
    std::string out;
    if (num < 0) {
        out += '-';
        num = -num;
    }
    mpz_class whole = num / den;
    mpz_class rem = num % den;
    out += whole.get_str();
    if (rem == 0) return out;
    std::string frac;
    for (std::size_t i = 0; i < digits && rem != 0; ++i) {
        rem *= 10;
        mpz_class d = rem / den;
        rem %= den;
        frac += d.get_str();
    }
    if (rem == 0) return out + "." + frac;
    // Round half up at the last kept place.
    if (2 * rem >= den) {
        std::size_t i = frac.size();
        bool carry = true;
        while (carry && i > 0) {
            --i;
            if (frac[i] == '9') {
                frac[i] = '0';
            } else {
                ++frac[i];
                carry = false;
            }
        }
        if (carry) {
            const std::string sign = out.front() == '-' ? "-" : "";
            out = sign + mpz_class(whole + 1).get_str();
        }
    }
    return out + "." + frac + "...";
}

CommandResult run(const std::vector<std::string>& args) {
    CommandResult result;
    std::ostringstream out;
    std::ostringstream err;

    CLI::App app{"Novel partitions and null vectors of random sign matrices", "ntl"};
    app.require_subcommand(1);
    std::function<void()> action;

    std::string parts_text;
    std::string parts_text2;
    std::string format = "json";
    std::size_t jobs = 0;
    std::size_t len = 0;
    std::size_t n = 0;
    std::size_t k = 0;
    std::uint32_t max_part = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::string min_text;
    std::size_t max_len = 28;
    bool flag = false;

    auto add_jobs = [&](CLI::App* sub) {
        sub->add_option("--jobs", jobs, "worker threads (0: NTL_JOBS or all cores)");
    };

    // novel
    auto* novel = app.add_subcommand("novel", "novelty of partitions");
    novel->require_subcommand(1);
    auto* check = novel->add_subcommand("check", "decide whether a partition is novel");
    check->add_option("parts", parts_text, "e.g. 2,2,1,1 or 2^2,1^2")->required();
    check->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));
    check->callback([&] {
        action = [&] {
            const Partition lambda = Partition::parse(parts_text);
            const NoveltyCertificate cert = is_novel(lambda);
            if (format == "text") {
                out << lambda.to_string() << " novel=" << (cert.novel ? "true" : "false") << " rank=" << cert.rank
                    << " gcd=" << cert.gcd << " p=" << cert.p << "\n";
            } else {
                out << dump(partition_record(lambda, cert, "proved"));
            }
        };
    });
    auto* enumerate = novel->add_subcommand("enum", "all novel partitions of one length (2..7)");
    enumerate->add_option("--len", len, "length")->required();
    enumerate->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));
    add_jobs(enumerate);
    enumerate->callback([&] {
        action = [&] {
            for (const Partition& lambda : enumerate_novel(len, jobs)) {
                if (format == "text") {
                    out << lambda.to_string() << "\n";
                } else {
                    out << dump(partition_record(lambda, is_novel(lambda), "proved"));
                }
            }
        };
    });

    // r, complement
    auto* r = app.add_subcommand("r", "P(lambda . X = 0)");
    r->add_option("parts", parts_text)->required();
    r->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));
    r->callback([&] {
        if (r->count("--format") == 0) format = "text";
        action = [&] {
            const Partition lambda = Partition::parse(parts_text);
            const DyadicProbability p = r_lambda(lambda);
            if (format == "text") {
                out << p.fraction() << " " << p.decimal() << "\n";
            } else {
                out << dump(Json{{"parts", lambda.parts()},
                                 {"r", p.fraction()},
                                 {"decimal", p.decimal()},
                                 {"r256", p.scaled256()}});
            }
        };
    });
    auto* comp = app.add_subcommand("complement", "sign vectors x with lambda . x = 0 and x_1 = +1");
    comp->add_option("parts", parts_text)->required();
    comp->callback([&] {
        action = [&] {
            const Partition lambda = Partition::parse(parts_text);
            const Complement c = complement(lambda);
            Json cols = Json::array();
            for (std::size_t i = 0; i < c.p(); ++i) cols.push_back(c.at(i).to_string());
            out << dump(Json{{"parts", lambda.parts()}, {"size", 2 * c.p()}, {"p", c.p()}, {"columns", cols}});
        };
    });

    // table
    auto* table = app.add_subcommand("table", "ranked tables");
    table->require_subcommand(1);
    auto* table_r = table->add_subcommand("r", "novel partitions with r at least --min, ranked");
    table_r->add_option("--min", min_text, "e.g. 38/256 or 0.1484375")->required();
    table_r->add_option("--max-len", max_len, "longest candidate considered");
    add_jobs(table_r);
    table_r->callback([&] {
        action = [&] {
            const mpq_class r_min = parse_rational(min_text);
            out << ranked_table_csv(ranked_table(table_candidates(r_min, max_len, jobs), r_min));
        };
    });

    // expansion, moments
    auto* expansion = app.add_subcommand("expansion", "main terms of the expansion of P_n");
    expansion->add_option("--n", n)->required();
    expansion->add_flag("--oracle", flag, "also compare with exhaustive values (n <= 6)");
    add_jobs(expansion);
    expansion->callback([&] {
        action = [&] {
            const auto q = q_values(n);
            Json terms = Json::array();
            for (std::size_t i = 0; i < q.size(); ++i) {
                const auto& term = expansion_terms()[i];
                terms.push_back(Json{{"template", term.partition.to_string()},
                                     {"rate", fraction_string(term.rate)},
                                     {"q", number(q[i])}});
            }
            Json j{{"n", n},
                   {"terms", terms},
                   {"e8_estimate", rational(e8_estimate(n))},
                   {"d11_lower_bound", rational(d11_lower_bound(n))},
                   {"r11_minus_l11_bound", rational(r11_minus_l11_bound(n))},
                   {"lemma_trivial", lemma_trivial(n)}};
            if (flag) {
                const EventStats st = exact_event_stats(n, jobs);
                j["oracle"] = Json{{"pn", rational(st.pn)},
                                   {"p_d11", rational(st.p_d11)},
                                   {"p_e8_union", rational(st.p_e8_union)},
                                   {"p_r11_minus_l11", rational(st.p_r11_minus_l11)},
                                   {"e8_residual", rational(st.p_e8_union - e8_estimate(n))}};
            }
            out << dump(j);
        };
    });
    auto* moments = app.add_subcommand("moments", "moments of W, the number of template-11 null vectors");
    moments->add_option("--n", n)->required();
    moments->add_flag("--oracle", flag, "also compute exhaustive values (n <= 6)");
    add_jobs(moments);
    moments->callback([&] {
        action = [&] {
            const MomentTriple m = ie_moments(n);
            Json j{{"n", n},
                   {"t", rational(ie_t(n))},
                   {"ew", rational(m.ew)},
                   {"ew2", rational(m.ew2)},
                   {"ew3", rational(m.ew3)}};
            if (flag) {
                const EventStats st = exact_event_stats(n, jobs);
                Json dist = Json::array();
                for (const auto& p : st.w_distribution) dist.push_back(fraction_string(p));
                j["oracle"] = Json{{"ew", rational(st.moments.ew)},
                                   {"ew2", rational(st.moments.ew2)},
                                   {"ew3", rational(st.moments.ew3)},
                                   {"w_distribution", dist}};
                j["matches"] = Json{{"ew", st.moments.ew == m.ew},
                                    {"ew2", st.moments.ew2 == m.ew2},
                                    {"ew3", st.moments.ew3 == m.ew3}};
            }
            out << dump(j);
        };
    });

    // pn
    auto* pn = app.add_subcommand("pn", "singularity probability");
    pn->require_subcommand(1);
    auto* pn_exact = pn->add_subcommand("exact", "exact P_n by exhaustive enumeration (n <= 6)");
    pn_exact->add_option("--n", n)->required();
    pn_exact->add_flag("--full", flag, "enumerate all 2^(n^2) matrices instead of normalized ones (n <= 4)");
    pn_exact->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));
    add_jobs(pn_exact);
    pn_exact->callback([&] {
        if (pn_exact->count("--format") == 0) format = "text";
        action = [&] {
            const mpq_class p = exact_pn(n, flag ? Enumeration::Full : Enumeration::Normalized, jobs);
            if (format == "text") {
                out << fraction_line(p);
            } else {
                out << dump(Json{{"n", n}, {"pn", rational(p)}});
            }
        };
    });
    auto* pn_survey = pn->add_subcommand("survey", "seeded Monte Carlo survey of left-kernel templates");
    pn_survey->add_option("--n", n)->required();
    pn_survey->add_option("--samples", samples)->required();
    pn_survey->add_option("--seed", seed)->required();
    add_jobs(pn_survey);
    pn_survey->callback([&] {
        action = [&] {
            const SurveyReport rep = survey(n, samples, seed, jobs);
            Json hist = Json::array();
            for (const auto& [p, c] : rep.histogram) hist.push_back(Json{{"parts", p.parts()}, {"count", c}});
            Json unclassified = Json::array();
            for (const auto& p : rep.unclassified) unclassified.push_back(p.to_string());
            const auto mode = rep.mode();
            out << dump(Json{{"n", rep.n},
                             {"samples", rep.samples},
                             {"seed", rep.seed},
                             {"singular", rep.singular},
                             {"corank_ge2", rep.corank_ge2},
                             {"histogram", hist},
                             {"mode", mode ? Json(mode->to_string()) : Json(nullptr)},
                             {"unclassified", unclassified},
                             {"rng", rep.rng}});
        };
    });

    // witness
    auto* witness = app.add_subcommand("witness", "square sign matrix of corank 1 with kernel template lambda");
    witness->add_option("parts", parts_text)->required();
    witness->add_flag("--verify", flag, "recheck corank and kernel by an independent elimination");
    witness->callback([&] {
        action = [&] {
            const Partition lambda = Partition::parse(parts_text);
            const WitnessMatrix w = minimal_witness(lambda);
            if (flag) {
                const KernelInfo info = integer_corank_and_kernel(BernoulliMatrix::from_sign_matrix(w.entries));
                if (info.corank != 1 || !info.kernel || Partition::from_values(*info.kernel) != lambda)
                    throw VerificationError("witness for " + lambda.to_string() + " failed the independent check");
            }
            out << dump(Json{{"parts", lambda.parts()},
                             {"side", w.side()},
                             {"padded", w.padded},
                             {"kernel", w.kernel},
                             {"rows", w.entries.to_strings()},
                             {"verified", flag}});
        };
    });

    // bounds
    auto* bounds = app.add_subcommand("bounds", "Littlewood-Offord bounds and runner-up scans");
    bounds->require_subcommand(1);
    auto* elo = bounds->add_subcommand("elo", "bounds on the complement size for k parts");
    elo->add_option("--k", k)->required();
    elo->callback([&] {
        action = [&] {
            if (k < 1 || k > kMaxParts) throw DomainError("k must be between 1 and 32");
            Json j{{"k", k}, {"elo", number(elo_bound(k))}};
            j["not_all_equal"] = k >= 2 ? number(not_all_equal_bound(k)) : Json(nullptr);
            out << dump(j);
        };
    });
    auto* runners = bounds->add_subcommand("runners", "largest and second largest complement sizes");
    runners->add_option("--k", k)->required();
    runners->add_option("--max-part", max_part)->required();
    runners->callback([&] {
        action = [&] {
            const RunnerUpReport rep = runner_up_scan(k, max_part);
            auto list = [](const std::vector<Partition>& ps) {
                Json a = Json::array();
                for (const auto& p : ps) a.push_back(p.to_string());
                return a;
            };
            out << dump(Json{{"k", rep.k},
                             {"max_part", rep.part_bound},
                             {"scope", "bounded evidence: every gcd-1 partition with k parts, each <= max_part"},
                             {"scanned", rep.scanned},
                             {"best_size", rep.best_size},
                             {"best", list(rep.best)},
                             {"second_size", rep.second_size},
                             {"second", list(rep.second)},
                             {"claim_applies", rep.claim_applies},
                             {"claimed_best", rep.claimed_best},
                             {"claimed_second", rep.claimed_second},
                             {"best_matches", rep.best_matches},
                             {"second_contains_claim", rep.second_contains_claim},
                             {"second_unique", rep.second_unique},
                             {"holds_in_scope", rep.holds_in_scope}});
        };
    });

    // ratio
    auto* ratio = app.add_subcommand("ratio", "conditional ratios given no small right null vectors");
    ratio->require_subcommand(1);
    auto* ratio11 = ratio->add_subcommand("r11", "(p)_n / p^n with n = len(lambda)");
    ratio11->add_option("parts", parts_text)->required();
    ratio11->callback([&] {
        action = [&] {
            const Partition lambda = Partition::parse(parts_text);
            out << fraction_line(conditional_ratio_r11(lambda, lambda.size()));
        };
    });
    auto* ratio1111 = ratio->add_subcommand("r11r1111", "two-term ratio with n = len(lambda) + 1");
    ratio1111->add_option("parts", parts_text)->required();
    ratio1111->callback([&] {
        action = [&] {
            const Partition lambda = Partition::parse(parts_text);
            out << fraction_line(conditional_ratio_r11_r1111(lambda, lambda.size() + 1));
        };
    });

    // pair
    auto* pair = app.add_subcommand("pair", "max P(v.X = w.X = 0) over placements of two templates");
    pair->add_option("lambda", parts_text)->required();
    pair->add_option("mu", parts_text2)->required();
    add_jobs(pair);
    pair->callback([&] {
        action = [&] {
            const PairReport rep =
                pair_intersection_check(Partition::parse(parts_text), Partition::parse(parts_text2), jobs);
            out << dump(Json{{"lambda", rep.lambda.to_string()},
                             {"mu", rep.mu.to_string()},
                             {"configurations", rep.configurations},
                             {"max_joint", rational(rep.max_joint)},
                             {"bound", rational(rep.bound)},
                             {"max_ratio", rational(rep.max_ratio)},
                             {"worst_v", rep.worst_v},
                             {"worst_w", rep.worst_w},
                             {"holds", rep.holds}});
        };
    });

    std::vector<std::string> argv_store;
    argv_store.reserve(args.size() + 1);
    argv_store.emplace_back("ntl");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        if (action) action();
    } catch (const CLI::CallForHelp& e) {
        result.status = app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        result.status = app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        result.status = kInvalidInput;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        result.status = kInvalidInput;
    } catch (const InfeasibleSize& e) {
        err << "infeasible: " << e.what() << "\n";
        result.status = kInfeasible;
    } catch (const VerificationError& e) {
        err << "verification failed: " << e.what() << "\n";
        result.status = kVerificationFailed;
    }
    result.out = out.str();
    result.err = err.str();
    return result;
}

}  // namespace ntl::cli
