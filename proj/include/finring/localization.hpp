#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "finring/ideal.hpp"

namespace finring {

/// A multiplicative subset of a finite ring, kept with its saturated closure
/// (the multiplicative monoid generated by the subset and 1). Zero may occur
/// in the closure; localizing at such a set is rejected downstream.
struct MultiplicativeSet {
    FiniteRing ring;
    std::vector<Elem> generators;
    std::vector<Elem> closure;  // sorted

    bool contains(Elem e) const {
        return std::binary_search(closure.begin(), closure.end(), e);
    }
};

inline MultiplicativeSet saturate(const FiniteRing& ring, const std::vector<Elem>& subset) {
    std::vector<char> in(ring.size(), 0);
    std::vector<Elem> members;
    auto push = [&](Elem e) {
        if (!in[e]) {
            in[e] = 1;
            members.push_back(e);
        }
    };
    push(ring.one());
    for (Elem s : subset) {
        if (s >= ring.size()) throw ValidationError("multiplicative set element out of range");
        push(s);
    }
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j) push(ring.mul(members[i], members[j]));
    std::sort(members.begin(), members.end());
    return MultiplicativeSet{ring, subset, std::move(members)};
}

/// A localization of a finite ring, realized as a quotient.
///
/// For finite R and multiplicative S, the canonical map R -> S^{-1}R is
/// surjective: every s in S has an idempotent power e = s^m (the sequence of
/// powers of s eventually cycles and the cycle contains an idempotent), and in
/// S^{-1}R that idempotent becomes an invertible idempotent, hence 1; so
/// 1/s = s^{m-1}/s^m = s^{m-1}/1. Its kernel is K = { r : s r = 0 for some
/// s in S }, which gives S^{-1}R = R/K. The naive fraction construction is
/// kept in the test suite as an independent oracle for this identity.
struct Localization {
    FiniteRing source;
    MultiplicativeSet set;
    FiniteRing ring;       // the localized ring, a quotient of source
    RingHom canonical;     // source -> ring, the quotient projection
    Ideal kernel;          // { r : exists s in closure with s r = 0 }

    /// Image of a source element in the localized ring.
    Elem at(Elem source_elem) const { return canonical(source_elem); }
};

inline Localization localize(const FiniteRing& ring, const MultiplicativeSet& set) {
    if (!set.ring.same_ring(ring))
        throw ValidationError("multiplicative set belongs to a different ring");
    std::vector<Elem> kernel;
    for (Elem r = 0; r < ring.size(); ++r) {
        for (Elem s : set.closure) {
            if (ring.mul(s, r) == ring.zero()) {
                kernel.push_back(r);
                break;
            }
        }
    }
    if (std::binary_search(kernel.begin(), kernel.end(), ring.one()))
        throw DegenerateLocalizationError(
            "localization is the zero ring: the multiplicative set of " + ring.key() +
            " annihilates 1");
    Localization loc;
    loc.source = ring;
    loc.set = set;
    loc.kernel = Ideal(ring, kernel);
    loc.ring = make_quotient(ring, kernel);
    loc.canonical = hom_quotient_projection(ring, loc.ring);
    for (Elem s : set.closure)
        if (!is_unit(loc.ring, loc.canonical(s)))
            throw InternalCheckError("localization failed to invert " + ring.format(s) +
                                     " in " + ring.key());
    return loc;
}

inline Localization localize(const FiniteRing& ring, const std::vector<Elem>& subset) {
    return localize(ring, saturate(ring, subset));
}

/// Localization at a prime: S = R - p.
inline Localization localize_at_prime(const FiniteRing& ring, const Ideal& p) {
    if (!p.ring().same_ring(ring)) throw ValidationError("prime lives in a different ring");
    if (!is_prime_or_maximal(ring, p).prime)
        throw ValidationError("localization at a non-prime ideal " + p.to_string());
    std::vector<Elem> complement;
    complement.reserve(ring.size() - p.size());
    for (Elem a = 0; a < ring.size(); ++a)
        if (!p.contains(a)) complement.push_back(a);
    return localize(ring, saturate(ring, complement));
}

/// Extension of an ideal of the source along the canonical map. The map is
/// surjective, so the extension is exactly the image set.
inline Ideal localize_ideal(const Ideal& i, const Localization& loc) {
    if (!i.ring().same_ring(loc.source))
        throw ValidationError("ideal does not live in the localization's source ring");
    std::vector<Elem> out;
    out.reserve(i.size());
    for (Elem x : i.elems()) out.push_back(loc.at(x));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return Ideal(loc.ring, std::move(out));
}

}  // namespace finring
