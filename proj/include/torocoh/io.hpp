#pragma once

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "torocoh/classify.hpp"
#include "torocoh/dbar.hpp"
#include "torocoh/diophantine.hpp"
#include "torocoh/scalars.hpp"

namespace torocoh {

using json = nlohmann::json;

inline int default_precision() {
    if (const char* env = std::getenv("TOROCOH_PRECISION")) {
        try {
            int v = std::stoi(env);
            if (v >= 6) return v;
        } catch (const std::exception&) {
        }
        throw Error(Errc::invalid_input, std::string("TOROCOH_PRECISION must be an integer >= 6, got '") + env + "'");
    }
    return 30;
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::invalid_input, "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error(Errc::invalid_input, path + ": " + e.what());
    }
}

// ---- parsing ----

inline Rational json_rational(const json& j, const std::string& what) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
    throw Error(Errc::invalid_input, what + " must be a rational string or an integer");
}

inline Integer json_integer(const json& j, const std::string& what) {
    Rational q = json_rational(j, what);
    if (!is_integer(q)) throw Error(Errc::invalid_input, what + " must be an integer");
    return q.get_num();
}

inline LacunarySeries parse_lacunary(const json& j) {
    std::string rule = j.value("rule", "");
    if (rule == "factorial-pow10") return LacunarySeries::factorial_pow10();
    if (rule == "supergap") return LacunarySeries::supergap();
    if (rule == "custom") {
        if (!j.contains("exponents") || !j["exponents"].is_array())
            throw Error(Errc::invalid_input, "custom lacunary series needs an exponents array");
        std::vector<Integer> ex;
        for (const auto& e : j["exponents"]) ex.push_back(json_integer(e, "lacunary exponent"));
        return LacunarySeries::custom(std::move(ex));
    }
    throw Error(Errc::invalid_input, "unknown lacunary rule '" + rule + "'");
}

inline ScalarDescriptor parse_scalar(const json& j) {
    if (j.is_string() || j.is_number_integer()) return ScalarDescriptor::rational(json_rational(j, "scalar"));
    if (!j.is_object() || !j.contains("kind")) throw Error(Errc::invalid_input, "scalar literal needs a kind: " + j.dump());
    std::string kind = j["kind"].get<std::string>();
    if (kind == "rational") {
        Integer num = json_integer(j.at("num"), "num");
        Integer den = j.contains("den") ? json_integer(j["den"], "den") : Integer(1);
        if (den <= 0) throw Error(Errc::invalid_input, "rational denominator must be positive");
        return ScalarDescriptor::rational(make_rational(num, den));
    }
    if (kind == "quadratic")
        return ScalarDescriptor::quadratic(json_rational(j.at("a"), "a"), json_rational(j.at("b"), "b"), json_integer(j.at("D"), "D"));
    if (kind == "algebraic") {
        std::vector<Integer> mp;
        for (const auto& c : j.at("minpoly")) mp.push_back(json_integer(c, "minpoly coefficient"));
        const auto& iv = j.at("interval");
        if (!iv.is_array() || iv.size() != 2) throw Error(Errc::invalid_input, "interval must be [lo, hi]");
        Rational lo = json_rational(iv[0], "interval"), hi = json_rational(iv[1], "interval");
        if (lo > hi) throw Error(Errc::invalid_input, "interval endpoints out of order");
        return ScalarDescriptor::algebraic(std::move(mp), Interval(lo, hi));
    }
    if (kind == "lacunary") return ScalarDescriptor::lacunary(parse_lacunary(j));
    if (kind == "float") {
        if (!j.contains("value") || !j["value"].is_string()) throw Error(Errc::invalid_input, "float literal needs a decimal string value");
        return ScalarDescriptor::float_tagged(j["value"].get<std::string>(), json_rational(j.at("err"), "err"));
    }
    throw Error(Errc::invalid_input, "unknown scalar kind '" + kind + "'");
}

inline Complex parse_complex(const json& j) {
    if (j.is_object() && (j.contains("re") || j.contains("im"))) {
        Real re = j.contains("re") ? parse_scalar(j["re"]).to_real() : Real(0);
        Real im = j.contains("im") ? parse_scalar(j["im"]).to_real() : Real(0);
        return {re, im};
    }
    return Complex(parse_scalar(j).to_real());
}

inline PeriodMatrix parse_group(const json& j) {
    if (!j.contains("n") || !j.contains("m") || !j.contains("S")) throw Error(Errc::invalid_input, "group file needs n, m and S");
    long n = j["n"].get<long>(), m = j["m"].get<long>();
    if (n < 1 || m < 1 || m > n) throw Error(Errc::invalid_input, "need 1 <= m <= n");
    const auto& rows = j["S"];
    if (!rows.is_array() || static_cast<long>(rows.size()) != n) throw Error(Errc::invalid_input, "S must have n rows");
    CMatrix S(static_cast<std::size_t>(n), static_cast<std::size_t>(m));
    for (long i = 0; i < n; ++i) {
        if (!rows[i].is_array() || static_cast<long>(rows[i].size()) != m) throw Error(Errc::invalid_input, "each row of S needs m entries");
        for (long k = 0; k < m; ++k) S(i, k) = parse_complex(rows[i][k]);
    }
    return PeriodMatrix(static_cast<std::size_t>(n), static_cast<std::size_t>(m), std::move(S));
}

inline Homomorphism parse_homomorphism(const json& j, std::size_t n, std::size_t m) {
    if (!j.contains("d_e") || !j.contains("d_s")) throw Error(Errc::invalid_input, "bundle file needs d_e and d_s");
    Homomorphism d;
    for (const auto& v : j["d_e"]) d.d_e.push_back(parse_complex(v));
    for (const auto& v : j["d_s"]) d.d_s.push_back(parse_complex(v));
    if (d.d_e.size() != n || d.d_s.size() != m) throw Error(Errc::invalid_input, "d_e needs n values and d_s needs m values");
    return d;
}

inline MultiIndex parse_multi_index(const std::string& key) {
    MultiIndex I;
    if (key.empty()) return I;
    if (key.find(',') != std::string::npos) {
        std::stringstream ss(key);
        std::string part;
        while (std::getline(ss, part, ',')) I.push_back(std::stoi(part));
    } else {
        for (char c : key) {
            if (c < '1' || c > '9') throw Error(Errc::invalid_input, "bad multi-index '" + key + "'");
            I.push_back(c - '0');
        }
    }
    return I;
}

inline FourierForm parse_form(const json& j, std::size_t n, std::size_t m) {
    FourierForm f;
    f.p = j.at("p").get<int>();
    f.m = static_cast<int>(m);
    f.pi_power = j.value("pi_power", 0);
    if (f.p < 0 || f.p > f.m) throw Error(Errc::invalid_input, "form degree must lie in 0..m");
    for (const auto& mode : j.at("modes")) {
        Sigma s = mode.at("sigma").get<Sigma>();
        if (s.size() != n + m) throw Error(Errc::invalid_input, "sigma must have n + m entries");
        for (const auto& [key, val] : mode.at("coeffs").items()) {
            MultiIndex I = parse_multi_index(key);
            if (static_cast<int>(I.size()) != f.p) throw Error(Errc::invalid_input, "multi-index '" + key + "' has the wrong length");
            f.add(s, I, parse_complex(val));
        }
    }
    f.prune();
    return f;
}

// ---- emission ----

inline json real_json(const Real& x, int digits) {
    json j;
    if (x.is_evidence()) {
        Interval e = x.evidence_enclosure();
        j["enclosure"] = {to_decimal(e.lo, digits), to_decimal(e.hi, digits)};
        j["grade"] = "evidence";
    } else {
        j["exact"] = x.exact_string();
    }
    j["decimal"] = x.decimal(digits);
    return j;
}

inline json complex_json(const Complex& z, int digits) { return {{"re", real_json(z.re, digits)}, {"im", real_json(z.im, digits)}}; }

inline json cvector_json(const CVector& v, int digits) {
    json a = json::array();
    for (const auto& z : v) a.push_back(complex_json(z, digits));
    return a;
}

inline json rmatrix_json(const RMatrix& M, int digits) {
    json rows = json::array();
    for (std::size_t i = 0; i < M.rows(); ++i) {
        json r = json::array();
        for (std::size_t k = 0; k < M.cols(); ++k) r.push_back(real_json(M(i, k), digits));
        rows.push_back(r);
    }
    return rows;
}

inline json magnitude_json(const Magnitude& mg) { return {{"log10_lo", mg.log10_lo().str(15)}, {"log10_hi", mg.log10_hi().str(15)}}; }

inline json irrationality_json(const IrrationalityReport& r) {
    json j{{"status", to_string(r.status)}, {"method", r.method}, {"search_bound", r.search_bound}};
    if (r.tau) {
        json t = json::array();
        for (const auto& v : *r.tau) t.push_back(v.get_str());
        j["tau"] = t;
    }
    return j;
}

inline json frame_json(const RealCoordFrame& f, int digits) {
    return {{"A", rmatrix_json(f.A, digits)}, {"B", rmatrix_json(f.B, digits)}, {"C", rmatrix_json(f.C, digits)},
            {"C1", rmatrix_json(f.C1, digits)}, {"BC_is_identity", (f.B * f.C).is_identity()}};
}

inline json bundle_json(const Analysis& an, int digits) {
    json j;
    const auto& nb = an.normalized;
    j["normalized"] = {{"d_e", cvector_json(nb.d.d_e, digits)}, {"d_s", cvector_json(nb.d.d_s, digits)}};
    json shift = json::array();
    for (const auto& v : nb.cert.integer_shift) shift.push_back(v.get_str());
    j["certificate"] = {{"ell", cvector_json(nb.cert.ell, digits)}, {"integer_shift", shift}};
    j["alpha"] = cvector_json(an.inv.alpha, digits);
    j["beta_over_pi"] = cvector_json(an.inv.beta_over_pi, digits);
    j["dL"] = cvector_json(an.inv.dL, digits);
    json a = json::array();
    for (const auto& c : an.inv.a_coeffs) a.push_back(real_json(c, digits));
    j["a_coeffs"] = a;
    j["trivial"] = an.inv.trivial;
    json coc = json::object();
    for (const auto& c : check_cocycle(an.inv, nb)) coc[c.generator] = c.pass;
    j["cocycle"] = coc;
    return j;
}

inline json zset_json(const ZSet& z) {
    json j{{"method", z.method}, {"residual", z.residual}, {"certified", z.certified}};
    j["sigma0"] = z.has_sigma0 ? json(z.sigma0) : json(nullptr);
    return j;
}

inline json refute_record_json(const RefuteRecord& r) {
    return {{"nu", r.nu},
            {"sigma", r.sigma},
            {"q", r.q},
            {"gap_log10", r.gap_log10},
            {"sigma_second", r.sigma_second.to_string()},
            {"lhs_depth", magnitude_json(r.lhs_depth)},
            {"rhs_depth", magnitude_json(r.rhs_depth)},
            {"inequality", r.verdict == Sign::positive ? "holds" : r.verdict == Sign::negative ? "fails" : "undecided"},
            {"printed_inequality",
             {{"rhs_depth", magnitude_json(r.printed_rhs_depth)},
              {"verdict", r.printed_verdict == Sign::positive ? "holds" : r.printed_verdict == Sign::negative ? "fails" : "undecided"},
              {"log10_C_needed", r.log10_C_needed}}}};
}

inline json gap_record_json(const GapRecord& g, int digits) {
    return {{"shell", g.shell},
            {"sigma", g.sigma},
            {"min_gap", {to_decimal(g.gap.lo, digits), to_decimal(g.gap.hi, digits)}},
            {"min_gap_log10_lo", g.log10_lo},
            {"min_gap_log10_hi", g.log10_hi}};
}

inline json condition_json(const ConditionReport& r, int digits) {
    json j{{"condition", to_string(r.condition)}, {"status", to_string(r.status)}, {"operation", r.operation}, {"provenance", r.provenance}};
    if (r.C) j["C"] = {{"exact", to_exact_string(*r.C)}, {"decimal", to_decimal(*r.C, digits)}};
    if (r.a) j["a"] = {{"exact", to_exact_string(*r.a)}, {"decimal", to_decimal(*r.a, digits)}};
    if (r.r) j["r"] = {{"form", r.r->to_string()}, {"x", to_exact_string(r.r->x)}, {"y", to_exact_string(r.r->y)}};
    if (!r.witnesses.empty()) {
        json w = json::array();
        for (const auto& x : r.witnesses) w.push_back(refute_record_json(x));
        j["witnesses"] = w;
    }
    if (!r.shells.empty()) {
        json s = json::array();
        for (const auto& g : r.shells) s.push_back(gap_record_json(g, std::min(digits, 20)));
        j["shells"] = s;
        j["scan_radius"] = r.scan_radius;
    }
    if (r.slope) j["slope_log_gap"] = *r.slope;
    if (r.loglog_slope) j["slope_loglog_gap"] = *r.loglog_slope;
    return j;
}

inline std::string scan_csv(const ConditionReport& r) {
    std::string out = "shell,min_gap_log10_lo,min_gap_log10_hi,sigma\n";
    for (const auto& g : r.shells) {
        std::string s = to_string(g.sigma);
        out += std::to_string(g.shell) + "," + g.log10_lo + "," + g.log10_hi + ",\"" + s + "\"\n";
    }
    return out;
}

template <class T>
json coeff_json(const T& v, int digits) {
    if constexpr (std::is_same_v<T, Complex>)
        return complex_json(v, digits);
    else
        return json{{"re", v.real()}, {"im", v.imag()}};
}

template <class T>
json form_json(const BasicForm<T>& f, int digits) {
    json modes = json::array();
    for (const auto& [s, cs] : f.modes) {
        json c = json::object();
        for (const auto& [I, v] : cs) c[to_string(I)] = coeff_json(v, digits);
        modes.push_back({{"sigma", s}, {"coeffs", c}});
    }
    json j{{"p", f.p}, {"modes", modes}};
    if constexpr (std::is_same_v<T, Complex>) j["pi_power"] = f.pi_power;
    return j;
}

template <class T>
json solve_json(const SolveResult<T>& r, int digits) {
    json j{{"psi", form_json(r.psi, digits)}};
    j["harmonic"] = r.harmonic ? form_json(*r.harmonic, digits) : json(nullptr);
    json res = json::array();
    for (const auto& [s, v] : r.residual) res.push_back({{"sigma", s}, {"residual", v}});
    j["residual"] = res;
    json piv = json::array();
    for (const auto& [s, v] : r.pivot) piv.push_back({{"sigma", s}, {"pivot", v + 1}});
    j["pivot"] = piv;
    return j;
}

inline json decay_json(const std::vector<DecayRow>& rows) {
    json a = json::array();
    for (const auto& r : rows) {
        json sups = json::array();
        for (const auto& [rho, v] : r.log10_sup) sups.push_back({{"truncation", rho}, {"log10_sup", v}});
        a.push_back({{"R", r.R}, {"k", r.k}, {"trend", r.trend}, {"sups", sups}});
    }
    return {{"note", "|sigma|^k at sigma = 0 is taken as 1"}, {"rows", a}};
}

inline json witness_json(const WitnessResult& w) {
    json a = json::array();
    for (const auto& r : w.records)
        a.push_back({{"nu", r.nu},
                     {"pivot", r.pivot},
                     {"gap_depth", magnitude_json(r.gap_depth)},
                     {"pivot_depth", magnitude_json(r.pivot_depth)},
                     {"exp_depth", magnitude_json(r.exp_depth)},
                     {"log10_delta", r.log10_delta},
                     {"log10_image", r.log10_image},
                     {"delta_exceeds_nu", r.diverges},
                     {"image_bounded", r.image_bounded}});
    return {{"records", a}, {"all_pass", w.all_pass}};
}

inline json classification_json(const ClassificationResult& r, int digits) {
    json j{{"case", to_string(r.verdict_case)}, {"verdicts", r.verdicts}, {"grade", r.grade}, {"trail", r.trail}};
    j["sigma0"] = r.sigma0 ? json(*r.sigma0) : json(nullptr);
    if (r.verdict_case != Case::trivial_bundle) j["irrationality"] = irrationality_json(r.irrationality);
    if (r.report) j["report"] = condition_json(*r.report, digits);
    if (r.witness) j["witness"] = witness_json(*r.witness);
    if (!r.dimensions.empty()) j["external_facts"] = r.dimensions;
    return j;
}

} // namespace torocoh
