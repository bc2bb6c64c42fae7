#pragma once

#include <optional>
#include <string>
#include <vector>

#include "torocoh/bundle.hpp"
#include "torocoh/dbar.hpp"
#include "torocoh/diophantine.hpp"
#include "torocoh/spectral.hpp"
#include "torocoh/torus.hpp"

namespace torocoh {

// Everything derived from a (group, bundle) pair.
struct Analysis {
    PeriodMatrix group;
    RealCoordFrame frame;
    NormalizedBundle normalized;
    BundleInvariants inv;
    std::optional<SpectralContext> ctx;

    Analysis(PeriodMatrix P, const Homomorphism& d) : group(std::move(P)) {
        frame = build_frame(group);
        normalized = normalize(d, group, frame);
        inv = invariants(normalized, group, frame);
        ctx.emplace(group, frame, inv);
    }
};

enum class Case { I_i, I_ii, II, trivial_bundle, undetermined };

inline const char* to_string(Case c) {
    switch (c) {
    case Case::I_i: return "I_i";
    case Case::I_ii: return "I_ii";
    case Case::II: return "II";
    case Case::trivial_bundle: return "trivial_bundle";
    case Case::undetermined: return "undetermined";
    }
    return "?";
}

struct ClassifyOptions {
    long radius = 12;
    std::optional<std::string> witness_rule;  // defaults to the lacunary series' own rule
    unsigned long nu_max = 3;
    bool accept_evidence = false;
    bool external_facts = false;
    unsigned long tau_bound = 12;
};

struct ClassificationResult {
    Case verdict_case = Case::undetermined;
    std::vector<std::string> verdicts;  // p = 1..m
    std::vector<std::string> dimensions;  // only with external facts
    std::optional<Sigma> sigma0;
    std::optional<ConditionReport> report;
    std::optional<WitnessResult> witness;
    IrrationalityReport irrationality;
    std::string grade = "certified";
    std::vector<std::string> trail;
};

inline Integer binomial(unsigned long n, unsigned long k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

namespace detail {

inline void fill_verdicts(ClassificationResult& r, std::size_t m, bool external) {
    r.verdicts.clear();
    for (std::size_t p = 1; p <= m; ++p) {
        std::string v;
        switch (r.verdict_case) {
        case Case::I_i: v = "H^p = 0"; break;
        case Case::I_ii: v = "H^p ≅ H^p(T, O)"; break;
        case Case::II: v = "non-Hausdorff, infinite-dimensional"; break;
        default: v = "undetermined"; break;
        }
        r.verdicts.push_back(v);
        if (external && r.verdict_case == Case::I_ii)
            r.dimensions.push_back("dim H^" + std::to_string(p) + "(T, O) = C(" + std::to_string(m) + "," + std::to_string(p) +
                                   ") = " + binomial(m, p).get_str() + " (Hodge theory of the m-torus T; external fact)");
    }
}

} // namespace detail

inline ClassificationResult classify(const Analysis& an, const ClassifyOptions& opt = {}) {
    ClassificationResult r;
    const auto& ctx = *an.ctx;
    const std::size_t m = ctx.m();
    if (an.inv.trivial) {
        r.verdict_case = Case::trivial_bundle;
        r.trail.push_back("bundle is analytically trivial after normalization; H^p(X, O) itself is outside this tool (stub)");
        return r;
    }
    r.irrationality = check_irrationality(an.group, opt.tau_bound);
    r.trail.push_back("(IS): " + std::string(to_string(r.irrationality.status)) + " by " + r.irrationality.method);
    if (r.irrationality.status == Status::certified_fails)
        throw Error(Errc::precondition, "(IS) fails: the group is not toroidal in the required sense");
    if (!certified(r.irrationality.status)) r.grade = "evidence";

    ZSet Z = find_sigma0(ctx);
    if (Z.has_sigma0) r.sigma0 = Z.sigma0;
    r.trail.push_back("find_sigma0: " + (Z.has_sigma0 ? to_string(Z.sigma0) : std::string("none")) + " (" + Z.method + ")");
    if (!Z.certified) r.grade = "evidence";
    auto case_I = [&] { return Z.has_sigma0 ? Case::I_ii : Case::I_i; };

    ConditionReport cert = certify(ctx, Z, r.irrationality.status);
    r.trail.push_back("certify: " + std::string(to_string(cert.status)));
    if (cert.status == Status::certified_holds && r.grade == "certified") {
        r.verdict_case = case_I();
        r.report = cert;
        detail::fill_verdicts(r, m, opt.external_facts);
        return r;
    }

    GenPtr g = detail::field_generator(ctx);
    if (g && !g->algebraic()) {
        std::string rule = opt.witness_rule.value_or(g->series().rule_name());
        ConditionReport ref;
        try {
            ref = refute(ctx, Z, WitnessRule::standard(ctx.dim(), rule, opt.nu_max));
            r.trail.push_back("refute(" + rule + "): " + to_string(ref.status));
        } catch (const Error& e) {
            if (e.code() != Errc::invalid_input && e.code() != Errc::non_integer_p) throw;
            r.trail.push_back("refute(" + rule + ") not applicable: " + e.what());
        }
        if (ref.status == Status::certified_fails) {
            r.verdict_case = Case::II;
            r.report = ref;
            r.witness = witness_non_hausdorff(ctx, Z, WitnessRule::standard(ctx.dim(), rule, opt.nu_max));
            r.trail.push_back(std::string("witness_non_hausdorff: ") + (r.witness->all_pass ? "divergent preimage, convergent image" : "incomplete"));
            detail::fill_verdicts(r, m, opt.external_facts);
            return r;
        }
        if (!ref.witnesses.empty()) r.report = ref;
    }

    ConditionReport sc = scan(ctx, Z, opt.radius);
    r.trail.push_back("scan(R=" + std::to_string(opt.radius) + "): " + to_string(sc.status));
    if (!r.report || sc.status != Status::unknown) r.report = sc;
    r.grade = "evidence";
    if (opt.accept_evidence && (sc.status == Status::evidence_holds || sc.status == Status::evidence_fails)) {
        r.verdict_case = sc.status == Status::evidence_holds ? case_I() : Case::II;
        r.trail.push_back("evidence accepted by request");
    } else {
        r.verdict_case = Case::undetermined;
    }
    detail::fill_verdicts(r, m, opt.external_facts);
    return r;
}

} // namespace torocoh
