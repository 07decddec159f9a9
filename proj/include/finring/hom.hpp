#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "finring/ring.hpp"

namespace finring {

/// A unital ring homomorphism between two finite rings, stored as its total
/// element map. Construction verifies unitality, additivity and
/// multiplicativity exhaustively.
class RingHom {
  public:
    RingHom() = default;

    const FiniteRing& domain() const { return domain_; }
    const FiniteRing& codomain() const { return codomain_; }
    Elem operator()(Elem a) const { return map_[a]; }
    const std::vector<Elem>& map() const { return map_; }

    bool is_identity() const {
        if (!domain_.same_ring(codomain_)) return false;
        for (Elem a = 0; a < domain_.size(); ++a)
            if (map_[a] != a) return false;
        return true;
    }

    bool is_injective() const {
        std::vector<char> seen(codomain_.size(), 0);
        for (Elem a = 0; a < domain_.size(); ++a) {
            if (seen[map_[a]]) return false;
            seen[map_[a]] = 1;
        }
        return true;
    }

    bool is_surjective() const {
        std::vector<char> seen(codomain_.size(), 0);
        std::size_t count = 0;
        for (Elem a = 0; a < domain_.size(); ++a)
            if (!seen[map_[a]]) {
                seen[map_[a]] = 1;
                ++count;
            }
        return count == codomain_.size();
    }

    explicit operator bool() const { return static_cast<bool>(domain_); }

  private:
    friend RingHom make_hom_from_map(const FiniteRing&, const FiniteRing&, std::vector<Elem>);
    FiniteRing domain_;
    FiniteRing codomain_;
    std::vector<Elem> map_;
};

inline RingHom make_hom_from_map(const FiniteRing& domain, const FiniteRing& codomain,
                                 std::vector<Elem> map) {
    if (map.size() != domain.size())
        throw ValidationError("homomorphism map must cover the whole domain");
    for (Elem v : map)
        if (v >= codomain.size())
            throw ValidationError("homomorphism map value out of codomain range");
    if (map[domain.one()] != codomain.one())
        throw ValidationError("map is not unital: 1 maps to " +
                              codomain.format(map[domain.one()]));
    for (Elem a = 0; a < domain.size(); ++a)
        for (Elem b = 0; b < domain.size(); ++b) {
            if (map[domain.add(a, b)] != codomain.add(map[a], map[b]))
                throw ValidationError("map is not additive at (" + domain.format(a) + ", " +
                                      domain.format(b) + ")");
            if (map[domain.mul(a, b)] != codomain.mul(map[a], map[b]))
                throw ValidationError("map is not multiplicative at (" + domain.format(a) +
                                      ", " + domain.format(b) + ")");
        }
    RingHom h;
    h.domain_ = domain;
    h.codomain_ = codomain;
    h.map_ = std::move(map);
    return h;
}

inline RingHom hom_identity(const FiniteRing& ring) {
    std::vector<Elem> map(ring.size());
    for (Elem a = 0; a < ring.size(); ++a) map[a] = a;
    return make_hom_from_map(ring, ring, std::move(map));
}

/// Canonical projection onto a quotient ring built from `ring`.
inline RingHom hom_quotient_projection(const FiniteRing& ring, const FiniteRing& quotient) {
    if (quotient.kind() != RingKind::quotient ||
        !quotient.quotient_base().same_ring(ring))
        throw ValidationError("no canonical projection from " + ring.key() + " onto " +
                              quotient.key());
    std::vector<Elem> map(ring.size());
    for (Elem a = 0; a < ring.size(); ++a) map[a] = quotient.quotient_coset_of(a);
    return make_hom_from_map(ring, quotient, std::move(map));
}

/// Canonical residue map Z(n) -> Z(m) for m | n.
inline RingHom hom_zmod_residue(const FiniteRing& from, const FiniteRing& to) {
    unsigned n = from.zmod_modulus();
    unsigned m = to.zmod_modulus();
    if (m == 0 || n % m != 0)
        throw ValidationError("no canonical residue map Z(" + std::to_string(n) + ") -> Z(" +
                              std::to_string(m) + ")");
    std::vector<Elem> map(n);
    for (Elem a = 0; a < n; ++a) map[a] = a % m;
    return make_hom_from_map(from, to, std::move(map));
}

/// Canonical (unital) inclusion a -> (a, 0) into a trivial extension of the
/// domain.
inline RingHom hom_trivext_inclusion(const FiniteRing& ring, const FiniteRing& trivext) {
    if (trivext.kind() != RingKind::trivial_extension ||
        !trivext.trivext_base().same_ring(ring))
        throw ValidationError("no canonical inclusion of " + ring.key() + " into " +
                              trivext.key());
    std::vector<Elem> map(ring.size());
    for (Elem a = 0; a < ring.size(); ++a)
        map[a] = trivext.trivext_pack(a, trivext.trivext_module().zero());
    return make_hom_from_map(ring, trivext, std::move(map));
}

/// Diagonal inclusion a -> (a, a) into a product A x A or into a subring of
/// A x A that contains the diagonal (for instance a duplication ring).
inline RingHom hom_diagonal(const FiniteRing& ring, const FiniteRing& target) {
    std::vector<Elem> map(ring.size());
    if (target.kind() == RingKind::product) {
        const FiniteRing& l = target.product_left();
        const FiniteRing& r = target.product_right();
        if (!l.same_ring(ring) || !r.same_ring(ring))
            throw ValidationError("diagonal inclusion needs the product " + ring.key() + " x " +
                                  ring.key());
        for (Elem a = 0; a < ring.size(); ++a) map[a] = target.product_pack(a, a);
        return make_hom_from_map(ring, target, std::move(map));
    }
    if (target.kind() == RingKind::subring) {
        const FiniteRing& amb = target.subring_ambient();
        if (amb.kind() == RingKind::product && amb.product_left().same_ring(ring) &&
            amb.product_right().same_ring(ring)) {
            for (Elem a = 0; a < ring.size(); ++a) {
                auto idx = target.subring_index_of(amb.product_pack(a, a));
                if (!idx)
                    throw ValidationError(target.key() + " does not contain the diagonal of " +
                                          ring.key());
                map[a] = *idx;
            }
            return make_hom_from_map(ring, target, std::move(map));
        }
    }
    throw ValidationError("no canonical diagonal inclusion of " + ring.key() + " into " +
                          target.key());
}

/// Inclusion of a subring into its ambient ring.
inline RingHom hom_subring_inclusion(const FiniteRing& sub, const FiniteRing& ambient) {
    if (sub.kind() != RingKind::subring || !sub.subring_ambient().same_ring(ambient))
        throw ValidationError(sub.key() + " is not a subring of " + ambient.key());
    std::vector<Elem> map(sub.size());
    for (Elem a = 0; a < sub.size(); ++a) map[a] = sub.subring_ambient_of(a);
    return make_hom_from_map(sub, ambient, std::move(map));
}

/// The graph homomorphism a -> (a, phi(a)) into domain(phi) x codomain(phi).
/// This is the unital replacement for the non-unital coordinate inclusion
/// a -> (a, 0) into a product.
inline RingHom hom_graph(const RingHom& phi, const Caps& caps = {}) {
    FiniteRing product = make_product(phi.domain(), phi.codomain(), caps);
    std::vector<Elem> map(phi.domain().size());
    for (Elem a = 0; a < phi.domain().size(); ++a) map[a] = product.product_pack(a, phi(a));
    return make_hom_from_map(phi.domain(), product, std::move(map));
}

inline RingHom hom_compose(const RingHom& outer, const RingHom& inner) {
    if (!inner.codomain().same_ring(outer.domain()))
        throw ValidationError("composition endpoint mismatch: " + inner.codomain().key() +
                              " vs " + outer.domain().key());
    std::vector<Elem> map(inner.domain().size());
    for (Elem a = 0; a < inner.domain().size(); ++a) map[a] = outer(inner(a));
    return make_hom_from_map(inner.domain(), outer.codomain(), std::move(map));
}

/// Elements of the kernel, sorted.
inline std::vector<Elem> kernel_elements(const RingHom& h) {
    std::vector<Elem> out;
    for (Elem a = 0; a < h.domain().size(); ++a)
        if (h(a) == h.codomain().zero()) out.push_back(a);
    return out;
}

/// Image of the domain, sorted, as codomain elements.
inline std::vector<Elem> image_elements(const RingHom& h) {
    std::vector<Elem> out;
    out.reserve(h.domain().size());
    for (Elem a = 0; a < h.domain().size(); ++a) out.push_back(h(a));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// The image as a unital subring of the codomain.
inline FiniteRing image_subring(const RingHom& h, const Caps& caps = {}) {
    return make_subring(h.codomain(), image_elements(h), caps);
}

}  // namespace finring
