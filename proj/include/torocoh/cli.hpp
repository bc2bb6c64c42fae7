#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "torocoh/classify.hpp"
#include "torocoh/io.hpp"

namespace torocoh::cli {

struct RunConfig {
    std::string subcommand;
    std::string group_path, bundle_path, in_path;
    std::string out;  // json | csv | text | a file path
    std::string mode = "exact";
    int precision = 30;
    long radius = 12;
    std::string rule;
    unsigned long nu_max = 3;
    unsigned long tau_bound = 12;
    std::string sigma;
    std::string target;
    bool accept_evidence = false;
    bool external_facts = false;
    bool stub = false;
    std::string example;
    std::string golden, write_golden;
    std::vector<double> R_list{1.5, 3.0};
    std::vector<double> k_list{0.0, 2.0};
};

enum Exit { ok = 0, invalid = 1, precondition = 2, undetermined = 3 };

struct Instance {
    std::string name;
    json group;
    json bundle;
};

inline json scalar_sqrt2() { return {{"kind", "quadratic"}, {"a", "0"}, {"b", "1"}, {"D", 2}}; }

// The worked examples, built as input documents so they run through the same parser as user files.
inline Instance example_instance(const std::string& which, const std::string& lacunary_rule = "factorial-pow10") {
    json zero = {{"kind", "rational"}, {"num", "0"}, {"den", "1"}};
    json one = {{"kind", "rational"}, {"num", "1"}, {"den", "1"}};
    auto cx = [](const json& re, const json& im) { return json{{"re", re}, {"im", im}}; };
    auto column = [](const json& top, const json& bottom) { return json::array({json::array({top}), json::array({bottom})}); };
    Instance in;
    in.name = which;
    json zeros = json::array({zero, zero});
    if (which == "10.1") {
        in.group = {{"n", 2}, {"m", 1}, {"S", column(cx(zero, scalar_sqrt2()), cx(zero, one))}};
        in.bundle = {{"d_e", zeros}, {"d_s", json::array({json{{"kind", "rational"}, {"num", "1"}, {"den", "2"}}})}};
    } else if (which == "10.2") {
        in.group = {{"n", 2}, {"m", 1}, {"S", column(cx(zero, one), cx(scalar_sqrt2(), zero))}};
        in.bundle = {{"d_e", zeros}, {"d_s", json::array({scalar_sqrt2()})}};
    } else if (which == "10.3") {
        json lam = {{"kind", "lacunary"}, {"rule", lacunary_rule}};
        in.group = {{"n", 2}, {"m", 1}, {"S", column(cx(zero, one), cx(lam, zero))}};
        in.bundle = {{"d_e", zeros}, {"d_s", json::array({lam})}};
    } else {
        throw Error(Errc::invalid_input, "unknown example '" + which + "' (expected 10.1, 10.2 or 10.3)");
    }
    return in;
}

inline Analysis analysis_of(const json& group, const json& bundle) {
    PeriodMatrix P = parse_group(group);
    Homomorphism d = parse_homomorphism(bundle, P.n, P.m);
    return Analysis(std::move(P), d);
}

struct Check {
    std::string name;
    bool pass;
};

inline json checks_json(const std::vector<Check>& cs) {
    json a = json::array();
    for (const auto& c : cs) a.push_back({{"check", c.name}, {"pass", c.pass}});
    return a;
}

inline json run_example(const std::string& which, int digits, std::vector<Check>& checks) {
    json rep;
    rep["example"] = which;
    if (which == "10.1" || which == "10.2") {
        Instance in = example_instance(which);
        Analysis an = analysis_of(in.group, in.bundle);
        const auto& ctx = *an.ctx;
        rep["input"] = {{"group", in.group}, {"bundle", in.bundle}};
        rep["frame"] = frame_json(an.frame, digits);
        rep["bundle"] = bundle_json(an, digits);
        IrrationalityReport is = check_irrationality(an.group);
        rep["irrationality"] = irrationality_json(is);
        ZSet Z = find_sigma0(ctx);
        rep["Z"] = zset_json(Z);
        M0Result mz = m0(ctx, Z);
        rep["m0"] = {to_decimal(mz.m0.lo, digits), to_decimal(mz.m0.hi, digits)};
        ConditionReport cert = certify(ctx, Z, is.status);
        rep["certify"] = condition_json(cert, digits);
        if (cert.status == Status::certified_holds) {
            rep["convert_HS"] = condition_json(convert_constants(cert, Condition::HS, ctx), digits);
            rep["convert_HS_double_prime"] = condition_json(convert_constants(cert, Condition::HS_double_prime, ctx), digits);
        }
        ClassificationResult cl = classify(an);
        rep["classification"] = classification_json(cl, digits);

        Real a = ScalarDescriptor::sqrt(2).to_real();
        checks.push_back({"(IS) certified_holds", is.status == Status::certified_holds});
        checks.push_back({"certify certified_holds", cert.status == Status::certified_holds});
        if (which == "10.1") {
            Real inv = Real(1) / a;
            bool frame_ok = an.frame.C(0, 0) == inv && an.frame.C(0, 1).is_zero() && an.frame.C(1, 0) == -inv &&
                            an.frame.C(1, 1) == Real(1);
            checks.push_back({"frame C = (1/alpha 0; -1/alpha 1)", frame_ok});
            checks.push_back({"d(L) = -1/2", an.inv.dL[0] == Complex(Real(Rational(-1, 2)))});
            checks.push_back({"no sigma0", !Z.has_sigma0});
            checks.push_back({"classify I_i", cl.verdict_case == Case::I_i && cl.grade == "certified"});
        } else {
            checks.push_back({"sigma0 = (0,1,0)", Z.has_sigma0 && Z.sigma0 == Sigma{0, 1, 0}});
            checks.push_back({"residual K_sigma0 + d(L) = 0", Z.has_sigma0 && ctx.KdL(Z.sigma0)[0].is_zero()});
            checks.push_back({"d(L) = -alpha", an.inv.dL[0] == Complex(-a)});
            checks.push_back({"classify I_ii", cl.verdict_case == Case::I_ii && cl.grade == "certified"});
        }
        return rep;
    }
    if (which != "10.3") throw Error(Errc::invalid_input, "unknown example '" + which + "' (expected 10.1, 10.2 or 10.3)");

    // printed construction
    Instance probe_in = example_instance("10.3", "factorial-pow10");
    Analysis probe = analysis_of(probe_in.group, probe_in.bundle);
    ZSet Zp = find_sigma0(*probe.ctx);
    ConditionReport probe_ref = refute(*probe.ctx, Zp, WitnessRule::standard(3, "factorial-pow10", 2));
    rep["printed_construction"] = {{"input", {{"group", probe_in.group}, {"bundle", probe_in.bundle}}},
                                   {"Z", zset_json(Zp)},
                                   {"refute", condition_json(probe_ref, digits)}};
    bool decided = true, widths_ok = true, printed_fails = true;
    for (const auto& w : probe_ref.witnesses) {
        decided = decided && w.verdict != Sign::undecided && w.printed_verdict != Sign::undecided;
        printed_fails = printed_fails && w.printed_verdict == Sign::negative;
        GapEnclosure g = lacunary_gap(LacunarySeries::factorial_pow10(), w.nu, QRule::factorial());
        widths_ok = widths_ok && g.mantissa_lo > 0 && g.mantissa_hi <= 2 * g.mantissa_lo;
    }
    ClassificationResult probe_cl = classify(probe);
    rep["printed_construction"]["classification"] = classification_json(probe_cl, digits);
    rep["printed_construction"]["finding"] =
        printed_fails ? "the printed inequality |q alpha - p| <= C exp(-q^2) fails for nu = 1, 2 with q = 10^(nu! + 10^(nu!)); "
                        "the gap 10^(nu! + 10^(nu!) - 10^((nu+1)!)) is far larger than exp(-q^2). Falling back to the supergap series."
                      : "the printed inequality holds for the checked nu";

    // fallback: supergap series in the same geometry
    Instance fb_in = example_instance("10.3", "supergap");
    Analysis fb = analysis_of(fb_in.group, fb_in.bundle);
    ZSet Zf = find_sigma0(*fb.ctx);
    ConditionReport fb_ref = refute(*fb.ctx, Zf, WitnessRule::standard(3, "supergap", 3));
    WitnessResult fb_w = witness_non_hausdorff(*fb.ctx, Zf, WitnessRule::standard(3, "supergap", 3));
    ClassificationResult fb_cl = classify(fb);
    rep["supergap_fallback"] = {{"input", {{"group", fb_in.group}, {"bundle", fb_in.bundle}}},
                                {"Z", zset_json(Zf)},
                                {"refute", condition_json(fb_ref, digits)},
                                {"witness", witness_json(fb_w)},
                                {"classification", classification_json(fb_cl, digits)}};

    checks.push_back({"printed construction: nu = 1, 2 decided", decided && probe_ref.witnesses.size() == 2});
    checks.push_back({"printed construction: log10 gap enclosures of width log10 2", widths_ok});
    checks.push_back({"supergap refute certified_fails", fb_ref.status == Status::certified_fails});
    checks.push_back({"supergap witness nu = 1..3", fb_w.all_pass && fb_w.records.size() == 3});
    checks.push_back({"supergap classify II", fb_cl.verdict_case == Case::II && fb_cl.grade == "certified"});
    return rep;
}

inline bool is_format(const std::string& s) { return s.empty() || s == "json" || s == "csv" || s == "text"; }

inline void write_text(const std::string& path, const std::string& body) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(Errc::invalid_input, "cannot write " + path);
    f << body;
}

inline int emit(const RunConfig& cfg, const json& j, std::ostream& out, const std::string& csv = {}, const std::string& text = {}) {
    std::string fmt = cfg.out;
    std::string path;
    if (!is_format(cfg.out)) {
        path = cfg.out;
        fmt = path.size() > 4 && path.substr(path.size() - 4) == ".csv" ? "csv" : "json";
    }
    std::string body;
    if (fmt == "csv") {
        if (csv.empty()) throw Error(Errc::invalid_input, "csv output is only available for scan");
        body = csv;
    } else if (fmt == "text" && !text.empty()) {
        body = text;
    } else {
        body = j.dump(2) + "\n";
    }
    if (path.empty()) {
        out << body;
    } else {
        write_text(path, body);
        json meta{{"tool", "torocoh"}, {"subcommand", cfg.subcommand}, {"precision", cfg.precision}, {"output", path}};
        write_text(path + ".meta.json", meta.dump(2) + "\n");
    }
    return Exit::ok;
}

inline Sigma parse_sigma_list(const std::string& s) {
    Sigma out;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            out.push_back(std::stol(part));
        } catch (const std::exception&) {
            throw Error(Errc::invalid_input, "bad sigma entry '" + part + "'");
        }
    }
    return out;
}

inline Condition parse_condition(const std::string& s) {
    if (s == "HS") return Condition::HS;
    if (s == "HS'" || s == "HSp" || s == "HS_prime") return Condition::HS_prime;
    if (s == "HS''" || s == "HSpp" || s == "HS_double_prime") return Condition::HS_double_prime;
    throw Error(Errc::invalid_input, "unknown condition '" + s + "'");
}

inline int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const int digits = cfg.precision;
    const std::string& sub = cfg.subcommand;

    if (sub == "examples") {
        std::vector<Check> checks;
        json rep = run_example(cfg.example, digits, checks);
        rep["checks"] = checks_json(checks);
        std::string body = rep.dump(2) + "\n";
        if (!cfg.write_golden.empty()) write_text(cfg.write_golden, body);
        bool all = true;
        for (const auto& c : checks) all = all && c.pass;
        if (!cfg.golden.empty()) {
            std::ifstream g(cfg.golden, std::ios::binary);
            if (!g) throw Error(Errc::invalid_input, "cannot open golden file " + cfg.golden);
            std::stringstream buf;
            buf << g.rdbuf();
            if (buf.str() != body) {
                err << "golden mismatch for example " << cfg.example << " against " << cfg.golden << "\n";
                all = false;
            }
        }
        emit(cfg, rep, out);
        for (const auto& c : checks)
            if (!c.pass) err << "check failed: " << c.name << "\n";
        return all ? Exit::ok : Exit::invalid;
    }

    json gj = read_json_file(cfg.group_path);
    PeriodMatrix P = parse_group(gj);

    if (sub == "validate") {
        json rep;
        rep["n"] = P.n;
        rep["m"] = P.m;
        RealCoordFrame f = build_frame(P);
        rep["det_Im_S1_nonzero"] = true;
        rep["BC_is_identity"] = (f.B * f.C).is_identity();
        IrrationalityReport is = check_irrationality(P, cfg.tau_bound);
        rep["irrationality"] = irrationality_json(is);
        emit(cfg, rep, out);
        return is.status == Status::certified_fails ? Exit::invalid : Exit::ok;
    }
    if (sub == "frame") {
        RealCoordFrame f = build_frame(P);
        return emit(cfg, frame_json(f, digits), out);
    }

    json bj = cfg.bundle_path.empty() ? gj : read_json_file(cfg.bundle_path);
    Homomorphism d = parse_homomorphism(bj, P.n, P.m);
    Analysis an(P, d);
    const auto& ctx = *an.ctx;

    if (sub == "bundle") return emit(cfg, bundle_json(an, digits), out);
    if (sub == "shift") {
        Sigma s = parse_sigma_list(cfg.sigma);
        SpectralShift sh = k_sigma(ctx, s);
        json rep{{"sigma", s},
                 {"K", cvector_json(sh.K, digits)},
                 {"K_tilde_over_pi", cvector_json(sh.K_tilde_over_pi, digits)},
                 {"K_plus_dL", cvector_json(ctx.KdL(s), digits)},
                 {"shifted_over_pi", cvector_json(sh.shifted_over_pi, digits)},
                 {"pivot", sh.pivot}};
        return emit(cfg, rep, out);
    }

    bool needs_nontrivial = sub != "classify";
    if (needs_nontrivial && an.inv.trivial) throw Error(Errc::precondition, "the bundle is trivial after normalization");

    if (sub == "sigma0") {
        ZSet Z = find_sigma0(ctx);
        json rep = zset_json(Z);
        std::string text = (Z.has_sigma0 ? to_string(Z.sigma0) : std::string("none")) + "\nresidual: " + Z.residual + "\n";
        return emit(cfg, rep, out, {}, text);
    }
    if (sub == "scan") {
        ZSet Z = find_sigma0(ctx);
        ConditionReport r = scan(ctx, Z, cfg.radius);
        return emit(cfg, condition_json(r, digits), out, scan_csv(r));
    }
    if (sub == "certify") {
        ZSet Z = find_sigma0(ctx);
        IrrationalityReport is = check_irrationality(P, cfg.tau_bound);
        ConditionReport r = certify(ctx, Z, is.status);
        if (!cfg.target.empty() && r.status == Status::certified_holds) r = convert_constants(r, parse_condition(cfg.target), ctx);
        return emit(cfg, condition_json(r, digits), out);
    }
    if (sub == "refute" || sub == "witness") {
        ZSet Z = find_sigma0(ctx);
        GenPtr g = detail::field_generator(ctx);
        if (!g || g->algebraic()) throw Error(Errc::precondition, "refute needs a lacunary scalar in the data");
        std::string rule = cfg.rule.empty() ? g->series().rule_name() : cfg.rule;
        WitnessRule wr = WitnessRule::standard(ctx.dim(), rule, cfg.nu_max);
        if (sub == "refute") return emit(cfg, condition_json(refute(ctx, Z, wr), digits), out);
        return emit(cfg, witness_json(witness_non_hausdorff(ctx, Z, wr)), out);
    }
    if (sub == "solve") {
        ZSet Z = find_sigma0(ctx);
        FourierForm phi = parse_form(read_json_file(cfg.in_path), P.n, P.m);
        json rep;
        if (cfg.mode == "numeric") {
            auto r = solve(to_numeric(phi), Z, ctx);
            rep = solve_json(r, digits);
            rep["decay"] = decay_json(decay_report(r.psi, P.n, cfg.R_list, cfg.k_list));
        } else if (cfg.mode == "exact") {
            auto r = solve(phi, Z, ctx);
            rep = solve_json(r, digits);
            rep["decay"] = decay_json(decay_report(r.psi, P.n, cfg.R_list, cfg.k_list));
        } else {
            throw Error(Errc::invalid_input, "mode must be exact or numeric");
        }
        rep["mode"] = cfg.mode;
        return emit(cfg, rep, out);
    }
    if (sub == "classify") {
        if (an.inv.trivial && !cfg.stub)
            throw Error(Errc::precondition, "trivial bundle: pass --stub to get the out-of-scope stub report");
        ClassifyOptions opt;
        opt.radius = cfg.radius;
        if (!cfg.rule.empty()) opt.witness_rule = cfg.rule;
        opt.nu_max = cfg.nu_max;
        opt.accept_evidence = cfg.accept_evidence;
        opt.external_facts = cfg.external_facts;
        opt.tau_bound = cfg.tau_bound;
        ClassificationResult r = classify(an, opt);
        std::string text = std::string("case: ") + to_string(r.verdict_case) + " (" + r.grade + ")\n";
        for (std::size_t p = 0; p < r.verdicts.size(); ++p) text += "p = " + std::to_string(p + 1) + ": " + r.verdicts[p] + "\n";
        for (const auto& d : r.dimensions) text += d + "\n";
        emit(cfg, classification_json(r, digits), out, {}, text);
        return r.verdict_case == Case::undetermined ? Exit::undetermined : Exit::ok;
    }
    throw Error(Errc::invalid_input, "unknown subcommand " + sub);
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    RunConfig cfg;
    try {
        cfg.precision = default_precision();
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return Exit::invalid;
    }
    CLI::App app{"Cohomology of homogeneous line bundles on toroidal groups"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "torocoh 1.0.0");

    auto common = [&](CLI::App* s, bool bundle) {
        s->add_option("--group", cfg.group_path, "group JSON file")->required()->check(CLI::ExistingFile);
        if (bundle) s->add_option("--bundle", cfg.bundle_path, "bundle JSON file (defaults to the group file)")->check(CLI::ExistingFile);
        s->add_option("--out", cfg.out, "json, csv, text or an output path");
        s->add_option("--precision", cfg.precision, "decimal digits in reports")->check(CLI::Range(6, 100000));
    };
    auto* validate = app.add_subcommand("validate", "validate a period matrix and check (IS)");
    common(validate, false);
    validate->add_option("--tau-bound", cfg.tau_bound, "search bound for evidence inputs")->check(CLI::PositiveNumber);
    common(app.add_subcommand("frame", "real-coordinate frame A, B, C"), false);
    common(app.add_subcommand("bundle", "normalization and bundle invariants"), true);
    common(app.add_subcommand("sigma0", "the exceptional index sigma0"), true);
    auto* shift = app.add_subcommand("shift", "spectral shift for one sigma");
    common(shift, true);
    shift->add_option("--sigma", cfg.sigma, "comma separated sigma")->required();
    auto* scan_cmd = app.add_subcommand("scan", "empirical scan of the condition");
    common(scan_cmd, true);
    scan_cmd->add_option("--radius", cfg.radius, "shell radius")->check(CLI::PositiveNumber);
    auto* certify_cmd = app.add_subcommand("certify", "certified lower bound for algebraic data");
    common(certify_cmd, true);
    certify_cmd->add_option("--target", cfg.target, "convert to HS, HS' or HS''");
    certify_cmd->add_option("--tau-bound", cfg.tau_bound)->check(CLI::PositiveNumber);
    for (const char* name : {"refute", "witness"}) {
        auto* c = app.add_subcommand(name, std::string(name) == "refute" ? "certified refutation by a lacunary family" : "case-II non-Hausdorff witness");
        common(c, true);
        c->add_option("--rule", cfg.rule, "witness rule")->check(CLI::IsMember({"factorial-pow10", "supergap", "custom"}));
        c->add_option("--nu-max", cfg.nu_max, "largest nu")->check(CLI::Range(1, 6));
    }
    auto* solve_cmd = app.add_subcommand("solve", "solve the dbar equation mode by mode");
    common(solve_cmd, true);
    solve_cmd->add_option("--in", cfg.in_path, "form JSON file")->required()->check(CLI::ExistingFile);
    solve_cmd->add_option("--mode", cfg.mode, "exact or numeric")->check(CLI::IsMember({"exact", "numeric"}));
    solve_cmd->add_option("--decay-R", cfg.R_list, "R values for the decay report");
    solve_cmd->add_option("--decay-k", cfg.k_list, "k values for the decay report");
    auto* classify_cmd = app.add_subcommand("classify", "case I(i), I(ii) or II");
    common(classify_cmd, true);
    classify_cmd->add_flag("--accept-evidence", cfg.accept_evidence, "let evidence-grade scans decide");
    classify_cmd->add_flag("--external-facts", cfg.external_facts, "emit dim H^p(T, O) = C(m, p)");
    classify_cmd->add_flag("--stub", cfg.stub, "accept a trivial bundle and emit the stub report");
    classify_cmd->add_option("--radius", cfg.radius)->check(CLI::PositiveNumber);
    classify_cmd->add_option("--witness-rule", cfg.rule)->check(CLI::IsMember({"factorial-pow10", "supergap", "custom"}));
    classify_cmd->add_option("--nu-max", cfg.nu_max)->check(CLI::Range(1, 6));
    classify_cmd->add_option("--tau-bound", cfg.tau_bound)->check(CLI::PositiveNumber);
    auto* ex = app.add_subcommand("examples", "reproduce the worked examples");
    ex->add_option("example", cfg.example, "10.1, 10.2 or 10.3")->required()->check(CLI::IsMember({"10.1", "10.2", "10.3"}));
    ex->add_option("--golden", cfg.golden, "compare against a golden report");
    ex->add_option("--write-golden", cfg.write_golden, "write the report as a golden file");
    ex->add_option("--out", cfg.out);
    ex->add_option("--precision", cfg.precision)->check(CLI::Range(6, 100000));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? Exit::ok : Exit::invalid;
    }
    for (auto* s : app.get_subcommands()) cfg.subcommand = s->get_name();
    try {
        return dispatch(cfg, out, err);
    } catch (const Error& e) {
        err << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
        return e.code() == Errc::precondition ? Exit::precondition : Exit::invalid;
    } catch (const json::exception& e) {
        err << "error [INVALID_INPUT]: " << e.what() << "\n";
        return Exit::invalid;
    } catch (const std::exception& e) {
        err << "error [INVALID_INPUT]: " << e.what() << "\n";
        return Exit::invalid;
    }
}

} // namespace torocoh::cli
