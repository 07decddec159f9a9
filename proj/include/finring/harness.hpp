#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "finring/biamalg.hpp"
#include "finring/properties.hpp"

namespace finring {

struct SideVerdict {
    bool holds = false;
    std::string witness;
};

/// An auxiliary reformulation of a transfer law (a corollary form specialized
/// to the instance's shape), evaluated alongside the main statement.
struct AuxCheck {
    std::string name;
    bool lhs = false;
    bool rhs = false;
    bool agree = false;
    std::string note;
};

/// Both sides of one transfer law evaluated on one instance. `agree` compares
/// the two sides under the law's logical form (equivalence, or implication
/// consistency for the homological law); `aux_ok` collects the corollary
/// forms. A false `ok()` on a valid instance is an engine bug, never a
/// discovery: the laws are established.
struct TheoremVerdict {
    std::string theorem;
    std::string fingerprint;
    SideVerdict lhs, rhs;
    bool agree = false;
    std::vector<AuxCheck> aux;
    bool aux_ok = true;
    std::uint64_t seed = 0;
    std::vector<std::string> notes;

    bool ok() const { return agree && aux_ok; }
    std::string witness() const {
        if (!agree) {
            std::string w = "lhs: " + (lhs.witness.empty() ? std::string("holds") : lhs.witness) +
                            "; rhs: " + (rhs.witness.empty() ? std::string("holds") : rhs.witness);
            return w;
        }
        for (const AuxCheck& a : aux)
            if (!a.agree) return "aux " + a.name + " disagrees: " + a.note;
        return {};
    }
};

struct HarnessOptions {
    Caps caps;
    std::uint64_t seed = 0;
    /// Deliberate mutation for the falsification test: right-hand sides
    /// quantify over all maximal ideals of A instead of only those containing
    /// the contraction ideal. A healthy engine must detect the resulting
    /// disagreements.
    bool rhs_over_all_maximals = false;
};

inline std::string fingerprint_datum(const BiAmalgDatum& d) {
    std::string s = "A=" + d.A.key() + "|B=" + d.B.key() + "|C=" + d.C.key() + "|f=";
    for (Elem v : d.f.map()) s += std::to_string(v) + ",";
    s += "|g=";
    for (Elem v : d.g.map()) s += std::to_string(v) + ",";
    s += "|J=" + detail::join_elems(d.J.elems());
    s += "|Jp=" + detail::join_elems(d.Jp.elems());
    return detail::hex64(detail::fnv1a(s));
}

namespace detail {

struct VanishingCheck {
    bool holds = true;
    std::string witness;
};

/// The localized-vanishing hypothesis: for every maximal ideal m of A
/// containing I0, the extension of J in B_{S_m} or of J' in C_{S'_m} is zero.
inline VanishingCheck localized_vanishing(const BiAmalgDatum& d, const HarnessOptions& opt) {
    auto maximals = opt.rhs_over_all_maximals
                        ? max_ideals(d.A)
                        : max_ideals(d.A, std::optional<Ideal>(d.I0));
    for (const Ideal& m : maximals) {
        if (!d.I0.subset_of(m)) {
            // Only reachable under the mutation: the localized data are not
            // even defined at such a maximal.
            return {false, "maximal " + m.to_string() + " does not contain the contraction " +
                               d.I0.to_string()};
        }
        LocalDatum ld = local_datum(d, m, opt.caps);
        if (!ld.J_loc.is_zero() && !ld.Jp_loc.is_zero())
            return {false, "neither extension vanishes at " + m.to_string() + " (sizes " +
                               std::to_string(ld.J_loc.size()) + ", " +
                               std::to_string(ld.Jp_loc.size()) + ")"};
    }
    return {};
}

/// For duplication data: the extension of I in A_m for every maximal m,
/// quantified per `all_maximals`. Notes record the maximals omitted by the
/// containment filter together with the (typically nonzero) size of the
/// localized ideal there, so that discrepancy is reported rather than
/// silently normalized away.
inline std::pair<VanishingCheck, std::vector<std::string>> duplication_vanishing(
    const FiniteRing& a, const Ideal& i, bool all_maximals) {
    VanishingCheck check;
    std::vector<std::string> notes;
    for (const Ideal& m : max_ideals(a)) {
        bool contains = i.subset_of(m);
        Localization loc = localize_at_prime(a, m);
        Ideal ext = localize_ideal(i, loc);
        if (!contains)
            notes.push_back("maximal " + m.to_string() +
                            " omitted from Max(A,I): it does not contain the ideal; the "
                            "localized ideal there has " +
                            std::to_string(ext.size()) + " element(s)");
        if ((contains || all_maximals) && !ext.is_zero() && check.holds)
            check = {false, "localized ideal at " + m.to_string() + " has " +
                                std::to_string(ext.size()) + " elements"};
    }
    return {check, notes};
}

inline AuxCheck make_aux(std::string name, bool lhs, bool rhs, std::string note = {}) {
    AuxCheck a;
    a.name = std::move(name);
    a.lhs = lhs;
    a.rhs = rhs;
    a.agree = lhs == rhs;
    a.note = std::move(note);
    if (!a.agree && a.note.empty())
        a.note = "lhs=" + std::string(lhs ? "true" : "false") +
                 " rhs=" + std::string(rhs ? "true" : "false");
    return a;
}

}  // namespace detail

/// Chained transfer: the bi-amalgamation is chained iff both image rings are
/// chained and J = 0 or J' = 0. Also evaluates the factor-form restatement
/// ("J = 0 and g(A)+J' chained, or J' = 0 and f(A)+J chained").
inline TheoremVerdict verify_chained_transfer(const BiAmalgDatum& d,
                                              const HarnessOptions& opt = {}) {
    TheoremVerdict v;
    v.theorem = "chained-transfer";
    v.fingerprint = fingerprint_datum(d);
    v.seed = opt.seed;

    BiAmalgRing ba = construct(d, opt.caps);
    PropertyReport lhs = is_chained(ba.ring, opt.caps);
    v.lhs = {lhs.holds, lhs.witness};

    ImageRing tf = image_ring(d.f, d.J, opt.caps);
    ImageRing tg = image_ring(d.g, d.Jp, opt.caps);
    PropertyReport cf = is_chained(tf.ring, opt.caps);
    PropertyReport cg = is_chained(tg.ring, opt.caps);
    bool side_zero = d.J.is_zero() || d.Jp.is_zero();
    v.rhs.holds = cf.holds && cg.holds && side_zero;
    if (!v.rhs.holds) {
        if (!cf.holds)
            v.rhs.witness = "f(A)+J not chained: " + cf.witness;
        else if (!cg.holds)
            v.rhs.witness = "g(A)+J' not chained: " + cg.witness;
        else
            v.rhs.witness = "both J and J' are nonzero";
    }
    v.agree = v.lhs.holds == v.rhs.holds;

    bool factor_form = (d.J.is_zero() && cg.holds) || (d.Jp.is_zero() && cf.holds);
    v.aux.push_back(detail::make_aux("factor-form", v.lhs.holds, factor_form));

    if (d.is_duplication_shaped()) {
        bool rhs_dup = is_chained(d.A, opt.caps).holds && d.J.is_zero();
        v.aux.push_back(detail::make_aux("duplication-criterion", v.lhs.holds, rhs_dup));
    } else if (d.is_amalgamation_shaped()) {
        bool rhs_am = is_chained(d.A, opt.caps).holds && cg.holds &&
                      (d.Jp.is_zero() || d.I0.is_zero());
        v.aux.push_back(detail::make_aux("amalgamation-criterion", v.lhs.holds, rhs_am));
    }
    for (const AuxCheck& a : v.aux) v.aux_ok = v.aux_ok && a.agree;
    return v;
}

/// Arithmetical transfer: the bi-amalgamation is arithmetical iff both image
/// rings are arithmetical and, at every maximal ideal of A over I0, one of
/// the localized ideals vanishes. Specialized criteria are evaluated for
/// amalgamation- and duplication-shaped data.
inline TheoremVerdict verify_arithmetical_transfer(const BiAmalgDatum& d,
                                                   const HarnessOptions& opt = {}) {
    TheoremVerdict v;
    v.theorem = "arithmetical-transfer";
    v.fingerprint = fingerprint_datum(d);
    v.seed = opt.seed;

    BiAmalgRing ba = construct(d, opt.caps);
    PropertyReport lhs = is_arithmetical(ba.ring, opt.caps);
    v.lhs = {lhs.holds, lhs.witness};

    ImageRing tf = image_ring(d.f, d.J, opt.caps);
    ImageRing tg = image_ring(d.g, d.Jp, opt.caps);
    PropertyReport af = is_arithmetical(tf.ring, opt.caps);
    PropertyReport ag = is_arithmetical(tg.ring, opt.caps);
    detail::VanishingCheck van = detail::localized_vanishing(d, opt);
    v.rhs.holds = af.holds && ag.holds && van.holds;
    if (!v.rhs.holds) {
        if (!af.holds)
            v.rhs.witness = "f(A)+J not arithmetical: " + af.witness;
        else if (!ag.holds)
            v.rhs.witness = "g(A)+J' not arithmetical: " + ag.witness;
        else
            v.rhs.witness = van.witness;
    }
    v.agree = v.lhs.holds == v.rhs.holds;

    if (d.is_duplication_shaped()) {
        auto [dup_van, notes] =
            detail::duplication_vanishing(d.A, d.J, opt.rhs_over_all_maximals);
        for (auto& n : notes) v.notes.push_back(std::move(n));
        bool rhs_dup = is_arithmetical(d.A, opt.caps).holds && dup_van.holds;
        v.aux.push_back(detail::make_aux("duplication-criterion", v.lhs.holds, rhs_dup,
                                         dup_van.holds ? "" : dup_van.witness));
    } else if (d.is_amalgamation_shaped()) {
        // Along phi = g with ideal J' : the criterion asks J'_{S'_m} = 0 or
        // phi_m^{-1}(J'_{S'_m}) = 0 for every maximal m over the contraction.
        auto maximals = opt.rhs_over_all_maximals
                            ? max_ideals(d.A)
                            : max_ideals(d.A, std::optional<Ideal>(d.I0));
        bool cond = true;
        std::string note;
        for (const Ideal& m : maximals) {
            if (!d.I0.subset_of(m)) {
                cond = false;
                note = "maximal " + m.to_string() + " does not contain the contraction";
                break;
            }
            LocalDatum ld = local_datum(d, m, opt.caps);
            Ideal pre = ideal_preimage(ld.gp, ld.Jp_loc);
            if (!ld.Jp_loc.is_zero() && !pre.is_zero()) {
                cond = false;
                note = "both J'_{S'_m} and its contraction are nonzero at " + m.to_string();
                break;
            }
        }
        bool rhs_am = is_arithmetical(d.A, opt.caps).holds && ag.holds && cond;
        v.aux.push_back(detail::make_aux("amalgamation-criterion", v.lhs.holds, rhs_am, note));
    }
    for (const AuxCheck& a : v.aux) v.aux_ok = v.aux_ok && a.agree;
    return v;
}

/// Homological transfer, wdim side: if both image rings have wdim <= 1, the
/// ideals meet the respective nilradicals trivially and the localized
/// vanishing holds, then the bi-amalgamation has wdim <= 1; conversely when
/// the contraction ideal is radical. The semihereditary analogue and the
/// duplication/amalgamation criteria run as auxiliary checks.
inline TheoremVerdict verify_homological_transfer(const BiAmalgDatum& d,
                                                  const HarnessOptions& opt = {}) {
    TheoremVerdict v;
    v.theorem = "homological-transfer";
    v.fingerprint = fingerprint_datum(d);
    v.seed = opt.seed;

    BiAmalgRing ba = construct(d, opt.caps);
    PropertyReport lhs = wdim_le_1(ba.ring, opt.caps);
    v.lhs = {lhs.holds, lhs.witness};

    ImageRing tf = image_ring(d.f, d.J, opt.caps);
    ImageRing tg = image_ring(d.g, d.Jp, opt.caps);
    bool wf = wdim_le_1(tf.ring, opt.caps).holds;
    bool wg = wdim_le_1(tg.ring, opt.caps).holds;
    Ideal nil_b = nilradical(d.B);
    Ideal nil_c = nilradical(d.C);
    bool j_nil = ideal_intersect(d.J, nil_b).is_zero();
    bool jp_nil = ideal_intersect(d.Jp, nil_c).is_zero();
    detail::VanishingCheck van = detail::localized_vanishing(d, opt);
    bool hyp = wf && wg && j_nil && jp_nil && van.holds;
    v.rhs.holds = hyp;
    if (!hyp) {
        if (!wf)
            v.rhs.witness = "wdim(f(A)+J) > 1";
        else if (!wg)
            v.rhs.witness = "wdim(g(A)+J') > 1";
        else if (!j_nil)
            v.rhs.witness = "J meets nil(B)";
        else if (!jp_nil)
            v.rhs.witness = "J' meets nil(C)";
        else
            v.rhs.witness = van.witness;
    }

    bool radical_contraction = is_radical(d.I0);
    bool forward_ok = !(hyp && !v.lhs.holds);
    bool converse_ok = !(v.lhs.holds && radical_contraction && !hyp);
    v.agree = forward_ok && converse_ok;
    if (!forward_ok) v.rhs.witness += " [hypotheses hold but wdim(R) > 1]";
    if (v.lhs.holds && !hyp && !radical_contraction)
        v.notes.push_back(
            "converse observation: wdim(R) <= 1 with failing hypotheses and non-radical "
            "contraction");

    // Semihereditary analogue: same hypotheses with semihereditary image
    // rings. Noetherian and finite-generation side conditions hold
    // automatically for finite rings (degenerate, recorded here).
    {
        bool sf = is_semihereditary_finite(tf.ring, opt.caps).holds;
        bool sg = is_semihereditary_finite(tg.ring, opt.caps).holds;
        bool s_hyp = sf && sg && j_nil && jp_nil && van.holds;
        bool s_lhs = is_semihereditary_finite(ba.ring, opt.caps).holds;
        bool fwd = !(s_hyp && !s_lhs);
        bool conv = !(s_lhs && radical_contraction && !s_hyp);
        AuxCheck a;
        a.name = "semihereditary-transfer";
        a.lhs = s_lhs;
        a.rhs = s_hyp;
        a.agree = fwd && conv;
        a.note = "Noetherian/finite-generation hypotheses automatic for finite rings";
        v.aux.push_back(std::move(a));
    }

    if (d.is_duplication_shaped()) {
        auto [dup_van, notes] =
            detail::duplication_vanishing(d.A, d.J, opt.rhs_over_all_maximals);
        for (auto& n : notes) v.notes.push_back(std::move(n));
        bool wa = wdim_le_1(d.A, opt.caps).holds;
        v.aux.push_back(
            detail::make_aux("duplication-wdim-criterion", v.lhs.holds, wa && dup_van.holds));
        bool sa = is_semihereditary_finite(d.A, opt.caps).holds;
        bool s_lhs = is_semihereditary_finite(ba.ring, opt.caps).holds;
        v.aux.push_back(detail::make_aux("duplication-semihereditary-criterion", s_lhs,
                                         sa && dup_van.holds));
    } else if (d.is_amalgamation_shaped()) {
        // wdim(R) <= 1 iff wdim(A) <= 1, g(A)+J' arithmetical, J' meets
        // nil(C) trivially, and at every maximal over the contraction the
        // localized ideal or its contraction vanishes.
        auto maximals = opt.rhs_over_all_maximals
                            ? max_ideals(d.A)
                            : max_ideals(d.A, std::optional<Ideal>(d.I0));
        bool cond = true;
        for (const Ideal& m : maximals) {
            if (!d.I0.subset_of(m)) {
                cond = false;
                break;
            }
            LocalDatum ld = local_datum(d, m, opt.caps);
            if (!ld.Jp_loc.is_zero() && !ideal_preimage(ld.gp, ld.Jp_loc).is_zero()) {
                cond = false;
                break;
            }
        }
        bool wa = wdim_le_1(d.A, opt.caps).holds;
        bool ag = is_arithmetical(tg.ring, opt.caps).holds;
        v.aux.push_back(detail::make_aux("amalgamation-wdim-criterion", v.lhs.holds,
                                         wa && ag && jp_nil && cond));
    }
    for (const AuxCheck& a : v.aux) v.aux_ok = v.aux_ok && a.agree;
    return v;
}

inline TheoremVerdict evaluate_theorem(const std::string& theorem_id, const BiAmalgDatum& d,
                                       const HarnessOptions& opt = {}) {
    if (theorem_id == "chained-transfer") return verify_chained_transfer(d, opt);
    if (theorem_id == "arithmetical-transfer") return verify_arithmetical_transfer(d, opt);
    if (theorem_id == "homological-transfer") return verify_homological_transfer(d, opt);
    throw ValidationError("unknown theorem id '" + theorem_id +
                          "' (expected chained-transfer, arithmetical-transfer or "
                          "homological-transfer)");
}

// ---------------------------------------------------------------------------
// Instance generation
// ---------------------------------------------------------------------------

struct InstanceGenConfig {
    std::uint64_t seed = 0;
    std::size_t count = 100;
    std::size_t max_component_size = 64;  // bound on |B| and |C|
    std::size_t max_result_size = 512;    // bound on the bi-amalgamation
    // Family weights: duplication, amalgamation-of-quotient, product-graph,
    // trivial-extension-inclusion.
    std::array<unsigned, 4> weights{1, 1, 1, 1};
    Caps caps;
};

namespace detail {

inline std::vector<FiniteRing> base_ring_pool(const Caps& caps) {
    std::vector<FiniteRing> pool;
    for (unsigned n : {2u, 3u, 4u, 5u, 6u, 8u, 9u, 10u, 12u, 16u})
        pool.push_back(make_zmod(n, caps));
    pool.push_back(make_product(make_zmod(2, caps), make_zmod(2, caps), caps));
    pool.push_back(make_product(make_zmod(2, caps), make_zmod(3, caps), caps));
    pool.push_back(make_product(make_zmod(4, caps), make_zmod(3, caps), caps));
    pool.push_back(make_product(make_zmod(2, caps), make_zmod(4, caps), caps));
    {
        FiniteRing z2 = make_zmod(2, caps);
        pool.push_back(make_trivext(z2, make_quotient_module(z2, {0}), caps));
        FiniteRing z4 = make_zmod(4, caps);
        pool.push_back(make_trivext(z4, make_ideal_module(z4, {0, 2}), caps));
        pool.push_back(make_trivext(z4, make_quotient_module(z4, {0, 2}), caps));
        FiniteRing z6 = make_zmod(6, caps);
        pool.push_back(make_trivext(z6, make_ideal_module(z6, {0, 3}), caps));
    }
    return pool;
}

inline Ideal pick_proper_ideal(Rng& rng, const FiniteRing& ring, const Caps& caps) {
    std::vector<Ideal> ideals = enumerate_ideals(ring, caps);
    std::vector<Ideal> proper;
    for (Ideal& i : ideals)
        if (i.is_proper()) proper.push_back(std::move(i));
    return proper[rng.below(proper.size())];
}

inline std::vector<unsigned> proper_divisors(unsigned n) {
    std::vector<unsigned> out;
    for (unsigned d = 2; d < n; ++d)
        if (n % d == 0) out.push_back(d);
    return out;
}

}  // namespace detail

/// Emits `count` valid instance data across four families, deterministically
/// under the seed. The contraction condition holds by construction; each
/// datum nevertheless passes through validate_datum.
inline std::vector<BiAmalgDatum> generate_instances(const InstanceGenConfig& cfg) {
    detail::Rng rng(cfg.seed);
    std::vector<FiniteRing> pool = detail::base_ring_pool(cfg.caps);
    std::vector<BiAmalgDatum> out;

    unsigned total_weight = cfg.weights[0] + cfg.weights[1] + cfg.weights[2] + cfg.weights[3];
    if (total_weight == 0) throw ValidationError("all family weights are zero");

    auto pick_family = [&]() {
        unsigned t = static_cast<unsigned>(rng.below(total_weight));
        for (unsigned fam = 0; fam < 4; ++fam) {
            if (t < cfg.weights[fam]) return fam;
            t -= cfg.weights[fam];
        }
        return 3u;
    };

    std::size_t guard = 0;
    while (out.size() < cfg.count && guard++ < cfg.count * 64) {
        unsigned fam = pick_family();
        try {
            switch (fam) {
                case 0: {  // duplication
                    const FiniteRing& a = pool[rng.below(pool.size())];
                    Ideal i = detail::pick_proper_ideal(rng, a, cfg.caps);
                    if (a.size() > cfg.max_component_size) break;
                    if (a.size() * i.size() > cfg.max_result_size) break;
                    RingHom id = hom_identity(a);
                    out.push_back(validate_datum(id, id, i, i));
                    break;
                }
                case 1: {  // amalgamation along a residue surjection
                    static const unsigned ns[] = {4, 6, 8, 9, 10, 12, 16, 18, 20, 24, 27, 32};
                    unsigned n = ns[rng.below(sizeof(ns) / sizeof(ns[0]))];
                    auto divisors = detail::proper_divisors(n);
                    if (divisors.empty()) break;
                    unsigned m = divisors[rng.below(divisors.size())];
                    FiniteRing a = make_zmod(n, cfg.caps);
                    FiniteRing c = make_zmod(m, cfg.caps);
                    RingHom phi = hom_zmod_residue(a, c);
                    Ideal j = detail::pick_proper_ideal(rng, c, cfg.caps);
                    Ideal i0 = ideal_preimage(phi, j);
                    std::size_t rsize = (a.size() / i0.size()) * i0.size() * j.size();
                    if (rsize > cfg.max_result_size) break;
                    out.push_back(validate_datum(hom_identity(a), phi, i0, j));
                    break;
                }
                case 2: {  // product-graph: f into the duplication, g a graph hom
                    static const unsigned ns[] = {4, 6, 8, 9, 10, 12};
                    unsigned n = ns[rng.below(sizeof(ns) / sizeof(ns[0]))];
                    FiniteRing a = make_zmod(n, cfg.caps);
                    Ideal i = detail::pick_proper_ideal(rng, a, cfg.caps);
                    if (a.size() * i.size() > cfg.max_component_size) break;
                    auto divisors = detail::proper_divisors(n);
                    divisors.push_back(n);  // allow D = A with the identity map
                    unsigned m = divisors[rng.below(divisors.size())];
                    if (a.size() * m > cfg.max_component_size) break;
                    BiAmalgRing dup_ring = duplication(a, i, cfg.caps);
                    const FiniteRing& b = dup_ring.ring;
                    RingHom f = hom_diagonal(a, b);
                    FiniteRing dring = make_zmod(m, cfg.caps);
                    RingHom phi = m == n ? hom_identity(a) : hom_zmod_residue(a, dring);
                    RingHom g = hom_graph(phi, cfg.caps);
                    const FiniteRing& c = g.codomain();
                    // J = I x I inside the duplication, J' = I x D.
                    std::vector<Elem> j_elems;
                    for (Elem x : i.elems())
                        for (Elem y : i.elems()) {
                            auto idx = b.subring_index_of(dup_ring.ambient.product_pack(x, y));
                            if (!idx) throw InternalCheckError("I x I escaped the duplication");
                            j_elems.push_back(*idx);
                        }
                    Ideal j(b, std::move(j_elems));
                    std::vector<Elem> jp_elems;
                    for (Elem x : i.elems())
                        for (Elem dv = 0; dv < phi.codomain().size(); ++dv)
                            jp_elems.push_back(c.product_pack(x, dv));
                    Ideal jp(c, std::move(jp_elems));
                    std::size_t rsize =
                        (a.size() / i.size()) * j.size() * jp.size();
                    if (rsize > cfg.max_result_size) break;
                    out.push_back(validate_datum(f, g, j, jp));
                    break;
                }
                case 3: {  // trivial-extension inclusion
                    const FiniteRing& a = pool[rng.below(pool.size())];
                    if (a.kind() != RingKind::zmod) break;
                    Module mod;
                    unsigned shape = static_cast<unsigned>(rng.below(3));
                    Ideal i = detail::pick_proper_ideal(rng, a, cfg.caps);
                    if (shape == 0)
                        mod = make_ideal_module(a, i.elems());
                    else if (shape == 1)
                        mod = make_quotient_module(a, i.elems());
                    else {
                        Module m1 = make_ideal_module(a, i.elems());
                        Module m2 = make_quotient_module(a, i.elems());
                        mod = make_direct_sum(m1, m2);
                    }
                    if (mod.size() < 1 || a.size() * mod.size() > cfg.max_component_size) break;
                    FiniteRing c = make_trivext(a, mod, cfg.caps);
                    RingHom g = hom_trivext_inclusion(a, c);
                    std::vector<Elem> jp_elems;
                    for (Elem mv = 0; mv < mod.size(); ++mv)
                        jp_elems.push_back(c.trivext_pack(a.zero(), mv));
                    Ideal jp(c, std::move(jp_elems));
                    out.push_back(
                        validate_datum(hom_identity(a), g, ideal_zero(a), jp));
                    break;
                }
            }
        } catch (const CapExceededError&) {
            // Oversized attempt; draw again.
        }
    }
    if (out.size() < cfg.count)
        throw InternalCheckError("instance generator stalled before reaching the count");
    return out;
}

// ---------------------------------------------------------------------------
// Counterexample search and shrinking
// ---------------------------------------------------------------------------

struct CounterexampleReport {
    TheoremVerdict original;
    TheoremVerdict shrunk;
    BiAmalgDatum original_datum;
    BiAmalgDatum shrunk_datum;
    std::size_t instances_tried = 0;
    std::size_t shrink_steps = 0;
};

namespace detail {

inline std::size_t datum_score(const BiAmalgDatum& d) {
    return d.A.size() * d.J.size() * d.Jp.size() + d.B.size() + d.C.size();
}

/// Strictly smaller candidate data: ideals shrink along subideals, Z(n)
/// shrinks along divisors (duplication and residue-amalgamation shapes only;
/// anything else is left alone). Invalid candidates are dropped.
inline std::vector<BiAmalgDatum> shrink_candidates(const BiAmalgDatum& d, const Caps& caps) {
    std::vector<BiAmalgDatum> cands;
    auto try_push = [&](auto&& build) {
        try {
            cands.push_back(build());
        } catch (const ValidationError&) {
        }
    };

    if (d.is_duplication_shaped()) {
        for (const Ideal& sub : enumerate_ideals(d.A, caps)) {
            if (!sub.is_proper() || sub == d.J || !sub.subset_of(d.J)) continue;
            try_push([&] {
                RingHom id = hom_identity(d.A);
                return validate_datum(id, id, sub, sub);
            });
        }
        if (d.A.kind() == RingKind::zmod) {
            unsigned n = d.A.zmod_modulus();
            for (unsigned m : proper_divisors(n)) {
                try_push([&] {
                    FiniteRing a2 = make_zmod(m, caps);
                    std::vector<Elem> gens;
                    for (Elem x : d.J.elems()) gens.push_back(x % m);
                    Ideal i2 = ideal_generated(a2, gens);
                    if (!i2.is_proper()) throw ValidationError("shrunk ideal not proper");
                    RingHom id = hom_identity(a2);
                    return validate_datum(id, id, i2, i2);
                });
            }
        }
    } else {
        // Generic ideal shrinking, keeping endpoints fixed; the contraction
        // condition re-validates and prunes mismatches.
        for (const Ideal& sub : enumerate_ideals(d.B, caps)) {
            if (sub == d.J || !sub.subset_of(d.J)) continue;
            try_push([&] { return validate_datum(d.f, d.g, sub, d.Jp); });
        }
        for (const Ideal& sub : enumerate_ideals(d.C, caps)) {
            if (sub == d.Jp || !sub.subset_of(d.Jp)) continue;
            try_push([&] { return validate_datum(d.f, d.g, d.J, sub); });
        }
        if (d.is_amalgamation_shaped() && d.A.kind() == RingKind::zmod &&
            d.C.kind() == RingKind::zmod) {
            unsigned n = d.A.zmod_modulus();
            unsigned m = d.C.zmod_modulus();
            for (unsigned n2 : proper_divisors(n)) {
                if (n2 % m != 0) continue;
                try_push([&] {
                    FiniteRing a2 = make_zmod(n2, caps);
                    RingHom phi = hom_zmod_residue(a2, d.C);
                    Ideal i0 = ideal_preimage(phi, d.Jp);
                    return validate_datum(hom_identity(a2), phi, i0, d.Jp);
                });
            }
        }
    }
    std::sort(cands.begin(), cands.end(), [](const BiAmalgDatum& x, const BiAmalgDatum& y) {
        return datum_score(x) < datum_score(y);
    });
    return cands;
}

}  // namespace detail

/// Greedily shrinks a disagreeing instance while the disagreement persists.
inline std::pair<BiAmalgDatum, std::size_t> shrink_disagreement(const std::string& theorem_id,
                                                                BiAmalgDatum datum,
                                                                const HarnessOptions& opt) {
    std::size_t steps = 0;
    bool improved = true;
    while (improved) {
        improved = false;
        for (BiAmalgDatum& cand : detail::shrink_candidates(datum, opt.caps)) {
            if (detail::datum_score(cand) >= detail::datum_score(datum)) continue;
            try {
                if (!evaluate_theorem(theorem_id, cand, opt).ok()) {
                    datum = std::move(cand);
                    ++steps;
                    improved = true;
                    break;
                }
            } catch (const ValidationError&) {
            }
        }
    }
    return {std::move(datum), steps};
}

/// Runs generated instances through a transfer law until the budget is
/// exhausted, returning the first disagreement (shrunk) if any. On a healthy
/// build the expected result is std::nullopt; any hit is an implementation
/// bug by construction.
inline std::optional<CounterexampleReport> search_counterexample(
    const std::string& theorem_id, std::size_t budget, const InstanceGenConfig& config,
    const HarnessOptions& opt = {}) {
    InstanceGenConfig cfg = config;
    cfg.count = budget;
    std::vector<BiAmalgDatum> data = generate_instances(cfg);
    std::size_t tried = 0;
    for (const BiAmalgDatum& d : data) {
        ++tried;
        TheoremVerdict verdict = evaluate_theorem(theorem_id, d, opt);
        if (!verdict.ok()) {
            CounterexampleReport rep;
            rep.original = verdict;
            rep.original_datum = d;
            rep.instances_tried = tried;
            auto [shrunk, steps] = shrink_disagreement(theorem_id, d, opt);
            rep.shrunk_datum = shrunk;
            rep.shrink_steps = steps;
            rep.shrunk = evaluate_theorem(theorem_id, shrunk, opt);
            return rep;
        }
    }
    return std::nullopt;
}

}  // namespace finring
