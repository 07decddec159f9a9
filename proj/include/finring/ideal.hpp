#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "finring/hom.hpp"
#include "finring/ring.hpp"

namespace finring {

/// An ideal of a finite ring, held as its full sorted element set. Identity is
/// set identity; a generator list, when present, is advisory only.
class Ideal {
  public:
    Ideal() = default;

    /// Validates closure under +, - and multiplication by the whole ring.
    Ideal(FiniteRing ring, std::vector<Elem> elems, std::vector<Elem> gens = {})
        : ring_(std::move(ring)), elems_(std::move(elems)), gens_(std::move(gens)) {
        std::sort(elems_.begin(), elems_.end());
        elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
        std::string bad = detail::ideal_violation(ring_, elems_);
        if (!bad.empty()) throw ValidationError("not an ideal of " + ring_.key() + ": " + bad);
    }

    const FiniteRing& ring() const { return ring_; }
    const std::vector<Elem>& elems() const { return elems_; }
    const std::vector<Elem>& gens() const { return gens_; }
    std::size_t size() const { return elems_.size(); }

    bool contains(Elem e) const {
        return std::binary_search(elems_.begin(), elems_.end(), e);
    }
    bool is_zero() const { return elems_.size() == 1; }
    bool is_proper() const { return elems_.size() < ring_.size(); }

    bool operator==(const Ideal& other) const {
        return ring_.same_ring(other.ring_) && elems_ == other.elems_;
    }
    bool operator!=(const Ideal& other) const { return !(*this == other); }

    bool subset_of(const Ideal& other) const {
        return std::includes(other.elems_.begin(), other.elems_.end(), elems_.begin(),
                             elems_.end());
    }

    std::string to_string() const {
        std::string out = "{";
        for (std::size_t i = 0; i < elems_.size(); ++i) {
            if (i) out += ",";
            out += ring_.format(elems_[i]);
        }
        return out + "}";
    }

    explicit operator bool() const { return static_cast<bool>(ring_); }

  private:
    FiniteRing ring_;
    std::vector<Elem> elems_;
    std::vector<Elem> gens_;
};

namespace detail {

/// Closure of `seed` (plus 0) under addition and negation.
inline std::vector<Elem> additive_closure(const FiniteRing& ring, const std::vector<Elem>& seed) {
    std::vector<char> in(ring.size(), 0);
    std::vector<Elem> members;
    auto push = [&](Elem e) {
        if (!in[e]) {
            in[e] = 1;
            members.push_back(e);
        }
    };
    push(ring.zero());
    for (Elem e : seed) push(e);
    for (std::size_t i = 0; i < members.size(); ++i) {
        push(ring.neg(members[i]));
        for (std::size_t j = 0; j <= i; ++j) push(ring.add(members[i], members[j]));
    }
    std::sort(members.begin(), members.end());
    return members;
}

inline std::vector<Elem> principal_ideal_elems(const FiniteRing& ring, Elem x) {
    std::vector<char> in(ring.size(), 0);
    std::vector<Elem> out;
    for (Elem r = 0; r < ring.size(); ++r) {
        Elem v = ring.mul(x, r);
        if (!in[v]) {
            in[v] = 1;
            out.push_back(v);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline void require_same_ring(const Ideal& a, const Ideal& b) {
    if (!a.ring().same_ring(b.ring()))
        throw ValidationError("ideal operands live in different rings: " + a.ring().key() +
                              " vs " + b.ring().key());
}

}  // namespace detail

/// Smallest ideal containing `gens`.
inline Ideal ideal_generated(const FiniteRing& ring, const std::vector<Elem>& gens) {
    std::vector<Elem> seed;
    for (Elem g : gens) {
        if (g >= ring.size()) throw ValidationError("generator out of range");
        auto p = detail::principal_ideal_elems(ring, g);
        seed.insert(seed.end(), p.begin(), p.end());
    }
    return Ideal(ring, detail::additive_closure(ring, seed), gens);
}

inline Ideal ideal_zero(const FiniteRing& ring) { return Ideal(ring, {ring.zero()}); }

inline Ideal ideal_whole(const FiniteRing& ring) {
    std::vector<Elem> all(ring.size());
    for (Elem a = 0; a < ring.size(); ++a) all[a] = a;
    return Ideal(ring, std::move(all), {ring.one()});
}

inline Ideal ideal_sum(const Ideal& a, const Ideal& b) {
    detail::require_same_ring(a, b);
    const FiniteRing& ring = a.ring();
    std::vector<char> in(ring.size(), 0);
    std::vector<Elem> out;
    for (Elem x : a.elems())
        for (Elem y : b.elems()) {
            Elem v = ring.add(x, y);
            if (!in[v]) {
                in[v] = 1;
                out.push_back(v);
            }
        }
    std::sort(out.begin(), out.end());
    return Ideal(ring, std::move(out));
}

inline Ideal ideal_product(const Ideal& a, const Ideal& b) {
    detail::require_same_ring(a, b);
    const FiniteRing& ring = a.ring();
    std::vector<Elem> products;
    for (Elem x : a.elems())
        for (Elem y : b.elems()) products.push_back(ring.mul(x, y));
    return Ideal(ring, detail::additive_closure(ring, products));
}

inline Ideal ideal_intersect(const Ideal& a, const Ideal& b) {
    detail::require_same_ring(a, b);
    std::vector<Elem> out;
    std::set_intersection(a.elems().begin(), a.elems().end(), b.elems().begin(),
                          b.elems().end(), std::back_inserter(out));
    return Ideal(a.ring(), std::move(out));
}

/// Ann(I) = { r : r * I = 0 }.
inline Ideal ideal_annihilator(const Ideal& a) {
    const FiniteRing& ring = a.ring();
    std::vector<Elem> out;
    for (Elem r = 0; r < ring.size(); ++r) {
        bool kills = true;
        for (Elem x : a.elems())
            if (ring.mul(r, x) != ring.zero()) {
                kills = false;
                break;
            }
        if (kills) out.push_back(r);
    }
    return Ideal(ring, std::move(out));
}

/// h^{-1}(J) for an ideal J of the codomain.
inline Ideal ideal_preimage(const RingHom& h, const Ideal& j) {
    if (!j.ring().same_ring(h.codomain()))
        throw ValidationError("preimage: ideal does not live in the codomain");
    std::vector<Elem> out;
    for (Elem a = 0; a < h.domain().size(); ++a)
        if (j.contains(h(a))) out.push_back(a);
    return Ideal(h.domain(), std::move(out));
}

/// The ideal of the codomain generated by h(I).
inline Ideal ideal_extension(const RingHom& h, const Ideal& i) {
    if (!i.ring().same_ring(h.domain()))
        throw ValidationError("extension: ideal does not live in the domain");
    std::vector<Elem> images;
    images.reserve(i.size());
    for (Elem x : i.elems()) images.push_back(h(x));
    return ideal_generated(h.codomain(), images);
}

/// Kernel (an ideal of the domain) and image (a unital subring of the
/// codomain) of a homomorphism.
struct KernelImage {
    Ideal kernel;
    FiniteRing image;
};

inline KernelImage hom_kernel_image(const RingHom& h, const Caps& caps = {}) {
    return KernelImage{Ideal(h.domain(), kernel_elements(h)), image_subring(h, caps)};
}

/// Every ideal of `ring`, each exactly once, sorted by (cardinality, element
/// list). Ideals of a finite ring are exactly the sums of principal ideals,
/// so the lattice is the sum-closure of { xR : x in R }.
inline std::vector<Ideal> enumerate_ideals(const FiniteRing& ring, const Caps& caps = {}) {
    if (ring.size() > caps.max_ideal_enum)
        throw LatticeTooLargeError("ideal lattice enumeration refused: ring has " +
                                   std::to_string(ring.size()) + " elements, cap is " +
                                   std::to_string(caps.max_ideal_enum));
    std::set<std::vector<Elem>> seen;
    std::vector<std::vector<Elem>> list;
    auto push = [&](std::vector<Elem> v) {
        if (seen.insert(v).second) list.push_back(std::move(v));
    };
    for (Elem x = 0; x < ring.size(); ++x) push(detail::principal_ideal_elems(ring, x));
    for (std::size_t i = 0; i < list.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            std::vector<char> in(ring.size(), 0);
            std::vector<Elem> sum;
            for (Elem x : list[i])
                for (Elem y : list[j]) {
                    Elem v = ring.add(x, y);
                    if (!in[v]) {
                        in[v] = 1;
                        sum.push_back(v);
                    }
                }
            std::sort(sum.begin(), sum.end());
            push(std::move(sum));
        }
        if (list.size() > 1u << 17)
            throw LatticeTooLargeError("ideal lattice has more than 2^17 members");
    }
    std::sort(list.begin(), list.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    std::vector<Ideal> out;
    out.reserve(list.size());
    for (auto& v : list) out.emplace_back(ring, std::move(v));
    return out;
}

/// nil(R): all nilpotent elements.
inline Ideal nilradical(const FiniteRing& ring) {
    std::vector<Elem> out;
    for (Elem a = 0; a < ring.size(); ++a)
        if (is_nilpotent(ring, a)) out.push_back(a);
    return Ideal(ring, std::move(out));
}

/// rad(I): preimage of nil(R/I) under the projection. rad(R) = R.
inline Ideal radical_of(const Ideal& i) {
    if (!i.is_proper()) return i;
    const FiniteRing& ring = i.ring();
    FiniteRing q = make_quotient(ring, i.elems());
    Ideal nil_q = nilradical(q);
    std::vector<Elem> out;
    for (Elem a = 0; a < ring.size(); ++a)
        if (nil_q.contains(q.quotient_coset_of(a))) out.push_back(a);
    return Ideal(ring, std::move(out));
}

inline bool is_radical(const Ideal& i) { return radical_of(i) == i; }

struct PrimeMaxReport {
    bool prime = false;
    bool maximal = false;
};

/// Primality via zero divisors of R/P, maximality via the field test. For
/// finite commutative rings the two coincide; a divergence would be an engine
/// bug and raises InternalCheckError.
inline PrimeMaxReport is_prime_or_maximal(const FiniteRing& ring, const Ideal& p) {
    if (!p.ring().same_ring(ring)) throw ValidationError("ideal lives in a different ring");
    if (!p.is_proper()) throw ValidationError("primality test requires a proper ideal");
    FiniteRing q = make_quotient(ring, p.elems());
    PrimeMaxReport rep;
    rep.prime = true;
    for (Elem a = 0; a < q.size() && rep.prime; ++a) {
        if (a == q.zero()) continue;
        for (Elem b = 0; b < q.size(); ++b) {
            if (b == q.zero()) continue;
            if (q.mul(a, b) == q.zero()) {
                rep.prime = false;
                break;
            }
        }
    }
    rep.maximal = true;
    for (Elem a = 0; a < q.size(); ++a) {
        if (a == q.zero()) continue;
        if (!is_unit(q, a)) {
            rep.maximal = false;
            break;
        }
    }
    if (rep.prime != rep.maximal)
        throw InternalCheckError("finite ring with a prime that is not maximal: " + ring.key());
    return rep;
}

/// The maximal spectrum, computed through the primitive idempotents of the
/// reduced quotient R/nil(R) (a finite reduced commutative ring is a product
/// of fields, whose maximal ideals are the annihilators of the primitive
/// idempotents).
struct SpectrumReport {
    std::vector<Ideal> maximals;          // sorted by (size, elems)
    Ideal nil;                            // nilradical of the ring
    FiniteRing reduced_quotient;          // R / nil(R)
    std::vector<Elem> primitive_idempotents;  // elements of reduced_quotient
};

inline SpectrumReport maximal_ideals(const FiniteRing& ring,
                                     const std::optional<Ideal>& containing = std::nullopt) {
    if (containing && !containing->ring().same_ring(ring))
        throw ValidationError("containment filter lives in a different ring");
    SpectrumReport rep;
    rep.nil = nilradical(ring);
    rep.reduced_quotient = make_quotient(ring, rep.nil.elems());
    const FiniteRing& q = rep.reduced_quotient;
    std::vector<Elem> idem;
    for (Elem e = 0; e < q.size(); ++e)
        if (q.mul(e, e) == e && e != q.zero()) idem.push_back(e);
    for (Elem e : idem) {
        bool atom = true;
        for (Elem f : idem)
            if (f != e && q.mul(f, e) == f) {  // f <= e and f nonzero
                atom = false;
                break;
            }
        if (atom) rep.primitive_idempotents.push_back(e);
    }
    for (Elem e : rep.primitive_idempotents) {
        std::vector<Elem> m;
        for (Elem a = 0; a < ring.size(); ++a)
            if (q.mul(q.quotient_coset_of(a), e) == q.zero()) m.push_back(a);
        Ideal max_ideal(ring, std::move(m));
        if (!max_ideal.is_proper())
            throw InternalCheckError("idempotent annihilator is not proper in " + ring.key());
        if (!is_prime_or_maximal(ring, max_ideal).maximal)
            throw InternalCheckError("idempotent route produced a non-maximal ideal in " +
                                     ring.key());
        if (!containing || containing->subset_of(max_ideal))
            rep.maximals.push_back(std::move(max_ideal));
    }
    std::sort(rep.maximals.begin(), rep.maximals.end(), [](const Ideal& a, const Ideal& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.elems() < b.elems();
    });
    return rep;
}

/// Max(R) as plain ideals, optionally restricted to those containing I.
inline std::vector<Ideal> max_ideals(const FiniteRing& ring,
                                     const std::optional<Ideal>& containing = std::nullopt) {
    return maximal_ideals(ring, containing).maximals;
}

inline bool is_local_ring(const FiniteRing& ring) {
    return maximal_ideals(ring).maximals.size() == 1;
}

}  // namespace finring
