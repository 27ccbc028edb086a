// qmark: exact question-mark functions for even/odd/regular continued
// fractions, with level sets, Stern structures, and dynamics checks.

#include <CLI11.hpp>
#include <json.hpp>

#include <qmark/diagnostics.hpp>

#include <cstdlib>
#include <iostream>
#include <numeric>
#include <set>

using namespace qmark;
using nlohmann::json;

namespace {

unsigned long digits_cap() {
    if (const char* env = std::getenv("QMARK_MAX_DIGITS")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0' && v >= 1) return v;
    }
    return 10000;
}

unsigned long check_digits(long d) {
    if (d < 1) throw CLI::ValidationError("--digits must be >= 1");
    unsigned long cap = digits_cap();
    if (static_cast<unsigned long>(d) > cap)
        throw CLI::ValidationError("--digits exceeds QMARK_MAX_DIGITS (" + std::to_string(cap) +
                                   ")");
    return static_cast<unsigned long>(d);
}

Rational parse_fraction_arg(const std::string& s) {
    auto r = parse_rational(s);
    if (!r) throw CLI::ValidationError("expected a fraction \"p/q\", got \"" + s + "\"");
    return *r;
}

/// "p/q", "p", or a plain decimal like "0.5".
Rational parse_fraction_or_decimal(const std::string& s) {
    auto dot = s.find('.');
    if (dot == std::string::npos) return parse_fraction_arg(s);
    std::string digs = s.substr(0, dot) + s.substr(dot + 1);
    auto n = parse_integer(digs);
    if (!n) throw CLI::ValidationError("expected a fraction or decimal, got \"" + s + "\"");
    return Rational(*n, ipow(10, s.size() - dot - 1));
}

json expansion_json(const EcfExpansion& e) {
    json terms = json::array();
    for (const auto& t : e.terms()) terms.push_back({t.sign, t.digit});
    return {{"kind", "ecf"}, {"terms", terms}};
}
json expansion_json(const OcfExpansion& e) {
    json terms = json::array();
    for (const auto& t : e.terms()) terms.push_back({t.sign, t.digit});
    return {{"kind", "ocf"}, {"terms", terms}};
}
json expansion_json(const RcfExpansion& e) { return {{"kind", "rcf"}, {"terms", e.terms()}}; }

std::string cubic_basis_str(const Cubic& z) { return z.str() + " (basis 1, lambda, lambda^2)"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Minkowski-type question-mark functions for even/odd continued fractions"};
    app.require_subcommand(1);

    struct Args {
        std::string format = "plain";
        bool force = false;

        std::string expand_variant, expand_x;
        bool expand_conv = false;

        std::string q_variant, q_x;
        bool q_exact = false;
        long q_digits = 0;

        std::string inv_variant, inv_y;
        long inv_digits = 30;

        std::string level_variant;
        int level_k = 0;

        std::string array_variant;
        int array_rows = 4;

        long stern_count = 0;
        long stern_poly_n = -1;

        std::string plot_variant;
        int plot_level = 6;
        long plot_digits = 0;

        std::string conj_family;
        int conj_level = 6;
        long conj_maxden = 100;

        std::string inv_map, inv_measure;
        long inv_trials = 100, inv_check_digits = 10, inv_branches = 16;
        unsigned long long inv_seed = 20240915ull;

        std::string holder_family;
        int holder_depth = 40;

        int levelsets_depth = 5;
        int genfun_factors = 4;

        int sing_length = 15, sing_trials = 100;
        unsigned long long sing_seed = 42ull;

        std::string rm_family, rm_x;
    } a;

    int rc = 0;

    app.add_option("--format", a.format, "output format")
        ->check(CLI::IsMember({"plain", "csv", "json"}));
    app.add_flag("--force", a.force, "override enumeration depth guards");

    auto emit_report = [&rc](const json& rep) {
        std::cout << rep.dump(2) << "\n";
        if (!rep.value("pass", false)) rc = 1;
    };

    // ---- expand ----------------------------------------------------------
    auto* cmd_expand = app.add_subcommand("expand", "continued fraction digits of a rational");
    cmd_expand->add_option("variant", a.expand_variant)
        ->required()
        ->check(CLI::IsMember({"rcf", "ecf", "ocf"}));
    cmd_expand->add_option("x", a.expand_x, "rational p/q")->required();
    cmd_expand->add_flag("--convergents", a.expand_conv, "also print the convergents");
    cmd_expand->callback([&] {
        Rational x = parse_fraction_arg(a.expand_x);
        json j;
        ConvergentList cl;
        if (a.expand_variant == "ecf") {
            auto e = ecf_expand(x);
            j = expansion_json(e);
            if (a.expand_conv) cl = convergents(e);
        } else if (a.expand_variant == "ocf") {
            auto e = ocf_expand(x);
            j = expansion_json(e);
            if (a.expand_conv) cl = convergents(e);
        } else {
            auto e = rcf_expand(x);
            j = expansion_json(e);
            if (a.expand_conv) cl = convergents(e);
        }
        if (a.expand_conv) {
            json cj = json::array();
            for (const auto& en : cl.entries) cj.push_back(en.value().str());
            j["convergents"] = cj;
        }
        if (a.format == "json")
            std::cout << j.dump() << "\n";
        else {
            std::cout << j.at("terms").dump() << "\n";
            if (a.expand_conv) {
                std::cout << "convergents:";
                for (const auto& s : j["convergents"]) std::cout << " " << s.get<std::string>();
                std::cout << "\n";
            }
        }
    });

    // ---- q ----------------------------------------------------------------
    auto* cmd_q = app.add_subcommand("q", "question-mark function value");
    cmd_q->add_option("variant", a.q_variant)
        ->required()
        ->check(CLI::IsMember({"minkowski", "even", "odd"}));
    cmd_q->add_option("x", a.q_x)->required();
    cmd_q->add_flag("--exact", a.q_exact, "print the exact value");
    cmd_q->add_option("--digits", a.q_digits, "certified decimal digits");
    cmd_q->callback([&] {
        Rational x = parse_fraction_arg(a.q_x);
        bool want_exact = a.q_exact || a.q_digits == 0;
        std::string out;
        if (a.q_variant == "minkowski") {
            auto v = minkowski_q(x);
            out = want_exact ? v.to_rational().str()
                             : eval_decimal(v.to_rational(), check_digits(a.q_digits)).value;
        } else if (a.q_variant == "even") {
            auto v = q_e(x);
            out = want_exact ? v.to_rational().str()
                             : eval_decimal(v.to_rational(), check_digits(a.q_digits)).value;
        } else {
            out = want_exact ? cubic_basis_str(q_o(x))
                             : q_o_decimal(x, check_digits(a.q_digits)).value;
        }
        if (a.format == "json")
            std::cout << json{{"command", "q"}, {"variant", a.q_variant}, {"x", x.str()},
                              {"value", out}}
                             .dump()
                      << "\n";
        else
            std::cout << out << "\n";
    });

    // ---- inverse ------------------------------------------------------------
    auto* cmd_inv = app.add_subcommand("inverse", "invert a question-mark function");
    cmd_inv->add_option("variant", a.inv_variant)
        ->required()
        ->check(CLI::IsMember({"minkowski", "even", "odd"}));
    cmd_inv->add_option("y", a.inv_y)->required();
    cmd_inv->add_option("--digits", a.inv_digits, "bracket width 10^-digits (odd only)");
    cmd_inv->callback([&] {
        json j{{"command", "inverse"}, {"variant", a.inv_variant}, {"y", a.inv_y}};
        std::string out;
        if (a.inv_variant == "even") {
            auto y = TriadicRational::from_rational(parse_fraction_arg(a.inv_y));
            out = q_e_inverse(y).str();
        } else if (a.inv_variant == "minkowski") {
            auto y = DyadicRational::from_rational(parse_fraction_arg(a.inv_y));
            out = minkowski_q_inverse(y).str();
        } else {
            Rational y = parse_fraction_or_decimal(a.inv_y);
            auto iv = q_o_inverse(Cubic(y), check_digits(a.inv_digits));
            out = "[" + iv.lo().str() + ", " + iv.hi().str() + "]";
            j["width"] = iv.width().str();
        }
        j["value"] = out;
        if (a.format == "json")
            std::cout << j.dump() << "\n";
        else
            std::cout << out << "\n";
    });

    // ---- level ---------------------------------------------------------------
    auto* cmd_level = app.add_subcommand("level", "ordered level set with flags and Q-values");
    cmd_level->add_option("variant", a.level_variant)
        ->required()
        ->check(CLI::IsMember({"even", "odd"}));
    cmd_level->add_option("k", a.level_k)->required();
    cmd_level->callback([&] {
        if (a.level_variant == "even" && a.level_k > 12 && !a.force)
            throw CLI::ValidationError("even level capped at 12 (use --force)");
        if (a.level_variant == "odd" && a.level_k > 20 && !a.force)
            throw CLI::ValidationError("odd level capped at 20 (use --force)");
        json rows = json::array();
        if (a.level_variant == "even") {
            auto lv = ecf_level(a.level_k);
            for (std::size_t i = 0; i < lv.size(); ++i)
                rows.push_back({{"index", i},
                                {"numerator", lv.ordered[i].num().get_str()},
                                {"denominator", lv.ordered[i].den().get_str()},
                                {"in_Z", static_cast<bool>(lv.in_z[i])},
                                {"q_value", q_e(lv.ordered[i]).to_rational().str()}});
        } else {
            auto lv = ocf_level(a.level_k);
            for (std::size_t i = 0; i < lv.size(); ++i)
                rows.push_back({{"index", i},
                                {"numerator", lv.ordered[i].num().get_str()},
                                {"denominator", lv.ordered[i].den().get_str()},
                                {"in_X", static_cast<bool>(lv.in_x[i])},
                                {"q_value", q_o(lv.ordered[i]).str()}});
        }
        if (a.format == "json") {
            std::cout << json{{"command", "level"}, {"variant", a.level_variant},
                              {"k", a.level_k}, {"rows", rows}}
                             .dump()
                      << "\n";
        } else if (a.format == "csv") {
            std::string flag = a.level_variant == "even" ? "in_Z" : "in_X";
            std::cout << "index,numerator,denominator," << flag << ",q_value\n";
            for (const auto& r : rows)
                std::cout << r["index"] << "," << r["numerator"].get<std::string>() << ","
                          << r["denominator"].get<std::string>() << ","
                          << (r.contains("in_Z") ? r["in_Z"].get<bool>() : r["in_X"].get<bool>())
                          << ",\"" << r["q_value"].get<std::string>() << "\"\n";
        } else {
            bool first = true;
            for (const auto& r : rows) {
                if (!first) std::cout << ",";
                std::cout << r["numerator"].get<std::string>() << "/"
                          << r["denominator"].get<std::string>();
                first = false;
            }
            std::cout << "\n";
        }
    });

    // ---- array ----------------------------------------------------------------
    auto* cmd_array =
        app.add_subcommand("array", "extended Stern-Brocot-type array rows on [-1,1)");
    cmd_array->add_option("variant", a.array_variant)->required()->check(CLI::IsMember({"ecf"}));
    cmd_array->add_option("--rows", a.array_rows, "number of rows (levels 0..rows-1)");
    cmd_array->callback([&] {
        if (a.array_rows > 11 && !a.force)
            throw CLI::ValidationError("array rows capped at 11 (use --force)");
        json out = json::array();
        for (int k = 0; k < a.array_rows; ++k) {
            json row = json::array();
            for (const auto& r : extended_array_row(k)) row.push_back(r.str());
            out.push_back(row);
        }
        if (a.format == "json")
            std::cout << json{{"command", "array"}, {"rows", out}}.dump() << "\n";
        else if (a.format == "csv") {
            std::cout << "row,index,value\n";
            for (int k = 0; k < a.array_rows; ++k) {
                const auto& row = out[k];
                for (std::size_t i = 0; i < row.size(); ++i)
                    std::cout << k << "," << i << "," << row[i].get<std::string>() << "\n";
            }
        } else {
            for (const auto& row : out) {
                bool first = true;
                for (const auto& v : row) {
                    if (!first) std::cout << " ";
                    std::cout << v.get<std::string>();
                    first = false;
                }
                std::cout << "\n";
            }
        }
    });

    // ---- stern -----------------------------------------------------------------
    auto* cmd_stern = app.add_subcommand("stern", "ECF Stern sequence and Stern polynomials");
    cmd_stern->add_option("--count", a.stern_count, "emit beta_0 .. beta_{count-1}");
    cmd_stern->add_option("--poly", a.stern_poly_n, "emit the coefficients of beta(n, x)");
    cmd_stern->callback([&] {
        if (a.stern_count <= 0 && a.stern_poly_n < 0)
            throw CLI::ValidationError("stern: pass --count and/or --poly");
        if (a.stern_count > 0) {
            auto b = stern_beta_list(static_cast<std::size_t>(a.stern_count));
            if (a.format == "json") {
                json arr = json::array();
                for (const auto& v : b) arr.push_back(v.get_str());
                std::cout << json{{"command", "stern"}, {"beta", arr}}.dump() << "\n";
            } else if (a.format == "csv") {
                std::cout << "n,beta\n";
                for (std::size_t i = 0; i < b.size(); ++i)
                    std::cout << i << "," << b[i].get_str() << "\n";
            } else {
                for (std::size_t i = 0; i < b.size(); ++i)
                    std::cout << (i ? "," : "") << b[i].get_str();
                std::cout << "\n";
            }
        }
        if (a.stern_poly_n >= 0) {
            auto p = stern_poly(static_cast<std::size_t>(a.stern_poly_n));
            auto dense = p.dense();
            if (a.format == "json")
                std::cout << json{{"command", "stern_poly"}, {"n", a.stern_poly_n},
                                  {"coefficients", dense}}
                                 .dump()
                          << "\n";
            else {
                for (std::size_t i = 0; i < dense.size(); ++i)
                    std::cout << (i ? "," : "") << dense[i];
                std::cout << "\n";
            }
        }
    });

    // ---- plotdata ----------------------------------------------------------------
    auto* cmd_plot = app.add_subcommand("plotdata", "(x, Q(x)) pairs over a level set, CSV");
    cmd_plot->add_option("variant", a.plot_variant)
        ->required()
        ->check(CLI::IsMember({"minkowski", "even", "odd"}));
    cmd_plot->add_option("--level", a.plot_level, "level-set depth");
    cmd_plot->add_option("--digits", a.plot_digits, "decimal output instead of exact strings");
    cmd_plot->callback([&] {
        if (a.plot_level > 12 && !a.force)
            throw CLI::ValidationError("plotdata level capped at 12 (use --force)");
        std::vector<Rational> xs;
        if (a.plot_variant == "even") {
            xs = ecf_level(a.plot_level).ordered;
        } else if (a.plot_variant == "odd") {
            xs = ocf_level(a.plot_level).ordered;
        } else {
            // rationals with RCF digit sum <= level (the classical array)
            std::set<Rational> pts{Rational(0), Rational(1)};
            std::vector<long> digs;
            auto rec = [&](auto&& self, long left) -> void {
                for (long d = 1; d <= left; ++d) {
                    digs.push_back(d);
                    if (d >= 2) pts.insert(cf_value(RcfExpansion(digs)));
                    self(self, left - d);
                    digs.pop_back();
                }
            };
            rec(rec, a.plot_level);
            xs.assign(pts.begin(), pts.end());
        }
        unsigned long d = a.plot_digits > 0 ? check_digits(a.plot_digits) : 0;
        std::cout << "x,q\n";
        for (const auto& x : xs) {
            std::string q;
            if (a.plot_variant == "even")
                q = d ? eval_decimal(q_e(x).to_rational(), d).value : q_e(x).to_rational().str();
            else if (a.plot_variant == "minkowski")
                q = d ? eval_decimal(minkowski_q(x).to_rational(), d).value
                      : minkowski_q(x).to_rational().str();
            else
                q = d ? q_o_decimal(x, d).value : "\"" + q_o(x).str() + "\"";
            std::cout << (d ? eval_decimal(x, d).value : x.str()) << "," << q << "\n";
        }
    });

    // ---- check ---------------------------------------------------------------------
    auto* cmd_check = app.add_subcommand("check", "verification suites (JSON reports)");
    cmd_check->require_subcommand(1);

    auto* chk_conj = cmd_check->add_subcommand("conjugacy", "Q o map = linearized o Q, exactly");
    chk_conj->add_option("family", a.conj_family)
        ->required()
        ->check(CLI::IsMember({"even", "odd", "rcf"}));
    chk_conj->add_option("--level", a.conj_level, "level-set depth (even/odd families)");
    chk_conj->add_option("--maxden", a.conj_maxden, "denominator bound (rcf family)");
    chk_conj->callback([&] {
        Family f = a.conj_family == "even" ? Family::even
                   : a.conj_family == "odd" ? Family::odd
                                            : Family::rcf;
        std::vector<Rational> pts;
        if (f == Family::even) {
            if (a.conj_level > 10 && !a.force)
                throw CLI::ValidationError("even conjugacy level capped at 10 (use --force)");
            pts = ecf_level(a.conj_level).ordered;
        } else if (f == Family::odd) {
            if (a.conj_level > 20 && !a.force)
                throw CLI::ValidationError("odd conjugacy level capped at 20 (use --force)");
            pts = ocf_level(a.conj_level).ordered;
        } else {
            for (long q = 1; q <= a.conj_maxden; ++q)
                for (long p = 0; p <= q; ++p)
                    if (std::gcd(p, q) == 1) pts.emplace_back(p, q);
        }
        auto rep = conjugacy_suite(f, pts);
        emit_report(json{{"check", "conjugacy"},
                         {"parameters",
                          {{"family", a.conj_family},
                           {"points", rep.points},
                           {"breakpoints", rep.breakpoints}}},
                         {"farey_failures", rep.farey_failures},
                         {"gauss_failures", rep.gauss_failures},
                         {"pass", rep.pass}});
    });

    auto* chk_inv = cmd_check->add_subcommand("invariance", "branch-preimage mass identity");
    chk_inv->add_option("map", a.inv_map)->required();
    chk_inv->add_option("measure", a.inv_measure)->required();
    chk_inv->add_option("--trials", a.inv_trials);
    chk_inv->add_option("--digits", a.inv_check_digits);
    chk_inv->add_option("--seed", a.inv_seed);
    chk_inv->add_option("--branches", a.inv_branches, "explicit branches before the analytic tail");
    chk_inv->callback([&] {
        auto m = map_from_name(a.inv_map);
        auto mu = measure_from_name(a.inv_measure);
        if (!m) throw CLI::ValidationError("unknown map: " + a.inv_map);
        if (!mu) throw CLI::ValidationError("unknown measure: " + a.inv_measure);
        auto rep = invariance_check_random(*m, *mu, static_cast<std::size_t>(a.inv_trials),
                                           check_digits(a.inv_check_digits), a.inv_seed,
                                           a.inv_branches);
        emit_report(json{{"check", "invariance"},
                         {"parameters",
                          {{"map", a.inv_map},
                           {"measure", a.inv_measure},
                           {"trials", rep.trials},
                           {"digits", rep.digits},
                           {"seed", a.inv_seed},
                           {"branches", a.inv_branches}}},
                         {"max_discrepancy",
                          eval_decimal(rep.max_discrepancy,
                                       std::min<unsigned long>(rep.digits + 4, 40))
                              .value},
                         {"tail_consistent", rep.tail_consistent},
                         {"pass", rep.pass}});
    });

    auto* chk_holder = cmd_check->add_subcommand("holder", "extremal-sequence exponent estimates");
    chk_holder->add_option("family", a.holder_family)
        ->required()
        ->check(CLI::IsMember({"even", "odd", "rcf"}));
    chk_holder->add_option("--depth", a.holder_depth);
    chk_holder->callback([&] {
        if (a.holder_depth > 60 && !a.force)
            throw CLI::ValidationError("holder depth capped at 60 (use --force)");
        Family f = a.holder_family == "even" ? Family::even
                   : a.holder_family == "odd" ? Family::odd
                                              : Family::rcf;
        auto rep = holder_estimate(f, a.holder_depth);
        json seq = json::array();
        for (const auto& d : rep.exponents) seq.push_back(d.value);
        emit_report(json{{"check", "holder"},
                         {"parameters", {{"family", a.holder_family}, {"depth", a.holder_depth}}},
                         {"exponents", seq},
                         {"target", rep.target.value},
                         {"final_distance", rep.final_distance.value},
                         {"pass", rep.within_tolerance}});
    });

    auto* chk_ls = cmd_check->add_subcommand("levelsets", "F_E preimages against the mediant array");
    chk_ls->add_option("--depth", a.levelsets_depth);
    chk_ls->callback([&] {
        if (a.levelsets_depth > 8 && !a.force)
            throw CLI::ValidationError("levelsets depth capped at 8 (use --force)");
        auto rep = verify_level_sets(a.levelsets_depth);
        emit_report(json{{"check", "levelsets"},
                         {"parameters", {{"depth", a.levelsets_depth}}},
                         {"preimage_count", rep.preimage_count},
                         {"pass", rep.matches_mediant_construction}});
    });

    auto* chk_gf =
        cmd_check->add_subcommand("genfun", "Z[sqrt2] product identity for the Stern stream");
    chk_gf->add_option("--factors", a.genfun_factors);
    chk_gf->callback([&] {
        if (a.genfun_factors > 7 && !a.force)
            throw CLI::ValidationError("genfun factors capped at 7 (use --force)");
        auto rep = genfun_product_check(a.genfun_factors);
        emit_report(json{{"check", "genfun"},
                         {"parameters", {{"factors", rep.factors}}},
                         {"checked_through", rep.checked_through},
                         {"sqrt2_on_even_indices",
                          {{"ok", rep.weight_on_even_ok},
                           {"first_mismatch", rep.weight_on_even_first_mismatch}}},
                         {"sqrt2_on_odd_indices",
                          {{"ok", rep.weight_on_odd_ok},
                           {"first_mismatch", rep.weight_on_odd_first_mismatch}}},
                         {"pass", rep.weight_on_even_ok}});
    });

    auto* chk_sing =
        cmd_check->add_subcommand("singularity", "tail enclosure and derivative ratio bounds");
    chk_sing->add_option("--length", a.sing_length);
    chk_sing->add_option("--trials", a.sing_trials);
    chk_sing->add_option("--seed", a.sing_seed);
    chk_sing->callback([&] {
        std::mt19937_64 rng(a.sing_seed);
        int failures = 0;
        for (int t = 0; t < a.sing_trials; ++t) {
            auto e = random_ecf_prefix(static_cast<std::size_t>(a.sing_length), rng);
            auto rep = derivative_ratio_diagnostic(e, a.sing_length - 1);
            if (!rep.enclosure_ok || !rep.ratio_ok) ++failures;
        }
        emit_report(json{{"check", "singularity"},
                         {"parameters",
                          {{"length", a.sing_length},
                           {"trials", a.sing_trials},
                           {"seed", a.sing_seed}}},
                         {"failures", failures},
                         {"pass", failures == 0}});
    });

    auto* chk_rm =
        cmd_check->add_subcommand("returnmap", "first-return map against symbolic deletion");
    chk_rm->add_option("family", a.rm_family)->required()->check(CLI::IsMember({"even", "odd"}));
    chk_rm->add_option("x", a.rm_x)->required();
    chk_rm->callback([&] {
        Family f = a.rm_family == "even" ? Family::even : Family::odd;
        auto rep = return_map_check(f, parse_fraction_arg(a.rm_x));
        json j{{"check", "returnmap"},
               {"parameters", {{"family", a.rm_family}, {"x", rep.x.str()}}},
               {"returned", rep.returned},
               {"steps", rep.steps},
               {"conjugacy_ok", rep.conjugacy_ok},
               {"pass",
                rep.conjugacy_ok && (!rep.returned || !rep.symbolic_return || rep.symbolic_matches)}};
        if (rep.dynamic_return) j["dynamic_return"] = rep.dynamic_return->str();
        if (rep.symbolic_return) j["symbolic_return"] = rep.symbolic_return->str();
        if (!rep.note.empty()) j["note"] = rep.note;
        emit_report(j);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
