#pragma once

#include <algorithm>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "finring/common.hpp"

namespace finring {

class FiniteRing;
class Module;

enum class RingKind { zmod, product, quotient, trivial_extension, subring };
enum class ModuleKind { ideal_module, quotient_module, direct_sum };

namespace detail {

/// Dense operation tables are only stored up to this size; larger rings
/// evaluate structurally.
inline constexpr std::size_t kOpTableLimit = 256;

struct RingRep {
    RingKind kind;
    std::string key;
    std::uint64_t key_hash = 0;
    std::size_t n = 0;
    Elem zero = 0;
    Elem one = 0;
    std::vector<Elem> neg_tab;
    std::vector<Elem> add_tab;  // n*n, only when n <= kOpTableLimit
    std::vector<Elem> mul_tab;

    explicit RingRep(RingKind k) : kind(k) {}
    virtual ~RingRep() = default;

    virtual Elem add_raw(Elem a, Elem b) const = 0;
    virtual Elem mul_raw(Elem a, Elem b) const = 0;
    virtual Elem neg_raw(Elem a) const = 0;
    virtual std::string format(Elem a) const = 0;

    Elem add(Elem a, Elem b) const {
        return add_tab.empty() ? add_raw(a, b) : add_tab[a * n + b];
    }
    Elem mul(Elem a, Elem b) const {
        return mul_tab.empty() ? mul_raw(a, b) : mul_tab[a * n + b];
    }
    Elem neg(Elem a) const { return neg_tab[a]; }

    /// Fills caches; must run after the derived object is fully built.
    void finalize() {
        key_hash = fnv1a(key);
        neg_tab.resize(n);
        for (Elem a = 0; a < n; ++a) neg_tab[a] = neg_raw(a);
        if (n <= kOpTableLimit) {
            add_tab.resize(n * n);
            mul_tab.resize(n * n);
            for (Elem a = 0; a < n; ++a)
                for (Elem b = 0; b < n; ++b) {
                    add_tab[a * n + b] = add_raw(a, b);
                    mul_tab[a * n + b] = mul_raw(a, b);
                }
        }
    }
};

struct ModuleRep;

}  // namespace detail

/// A finite abelian group with a scalar action of a base ring. Supports the
/// shapes needed for trivial extensions: an ideal viewed as a module, a
/// quotient module A/I, and finite direct sums of those.
class Module {
  public:
    Module() = default;

    ModuleKind kind() const;
    const FiniteRing& base() const;
    std::size_t size() const;
    Elem zero() const;
    Elem add(Elem x, Elem y) const;
    Elem neg(Elem x) const;
    /// Scalar action: ring element (by index) times module element.
    Elem smul(Elem scalar, Elem x) const;
    const std::string& key() const;
    std::string format(Elem x) const;

    bool same_module(const Module& other) const { return key() == other.key(); }
    explicit operator bool() const { return rep_ != nullptr; }

    /// The ideal elements (ideal_module) or kernel elements (quotient_module)
    /// this module was built from, as elements of the base ring.
    const std::vector<Elem>& source_elems() const;
    const Module& summand_left() const;
    const Module& summand_right() const;

  private:
    friend Module make_ideal_module(const FiniteRing&, std::vector<Elem>);
    friend Module make_quotient_module(const FiniteRing&, std::vector<Elem>);
    friend Module make_direct_sum(const Module&, const Module&);
    std::shared_ptr<const detail::ModuleRep> rep_;
};

/// A finite commutative unital ring, described structurally. Elements are
/// indices 0..size()-1 into a canonically ordered universe; the ordering is
/// total and reproducible across runs. Values are immutable and cheap to copy.
class FiniteRing {
  public:
    FiniteRing() = default;

    std::size_t size() const { return rep_->n; }
    Elem zero() const { return rep_->zero; }
    Elem one() const { return rep_->one; }
    Elem add(Elem a, Elem b) const { return rep_->add(a, b); }
    Elem mul(Elem a, Elem b) const { return rep_->mul(a, b); }
    Elem neg(Elem a) const { return rep_->neg(a); }
    Elem sub(Elem a, Elem b) const { return rep_->add(a, rep_->neg(b)); }

    RingKind kind() const { return rep_->kind; }
    const std::string& key() const { return rep_->key; }
    std::uint64_t key_hash() const { return rep_->key_hash; }

    /// Structural equality: two rings are the same object of study iff their
    /// canonical descriptors match, regardless of construction site.
    bool same_ring(const FiniteRing& other) const {
        return rep_ == other.rep_ ||
               (rep_->key_hash == other.rep_->key_hash && rep_->key == other.rep_->key);
    }

    explicit operator bool() const { return rep_ != nullptr; }

    /// Canonical text encoding of an element (integers for Z/n, parenthesized
    /// tuples for composite shapes).
    std::string format(Elem a) const { return rep_->format(a); }

    /// Inverse of format(); throws ValidationError for unknown encodings.
    Elem parse(std::string_view text) const;

    // Kind-specific structure accessors (throw ValidationError on kind
    // mismatch). These expose exactly what homomorphism and bi-amalgamation
    // construction need.
    unsigned zmod_modulus() const;
    const FiniteRing& product_left() const;
    const FiniteRing& product_right() const;
    Elem product_pack(Elem l, Elem r) const;
    std::pair<Elem, Elem> product_unpack(Elem a) const;
    const FiniteRing& quotient_base() const;
    const std::vector<Elem>& quotient_kernel() const;
    Elem quotient_coset_of(Elem base_elem) const;
    Elem quotient_rep(Elem a) const;
    const FiniteRing& trivext_base() const;
    const Module& trivext_module() const;
    Elem trivext_pack(Elem a, Elem m) const;
    std::pair<Elem, Elem> trivext_unpack(Elem x) const;
    const FiniteRing& subring_ambient() const;
    const std::vector<Elem>& subring_universe() const;
    Elem subring_ambient_of(Elem a) const;
    std::optional<Elem> subring_index_of(Elem ambient_elem) const;

  private:
    friend FiniteRing make_zmod(unsigned, const Caps&);
    friend FiniteRing make_product(const FiniteRing&, const FiniteRing&, const Caps&);
    friend FiniteRing make_quotient(const FiniteRing&, const std::vector<Elem>&, const Caps&);
    friend FiniteRing make_trivext(const FiniteRing&, const Module&, const Caps&);
    friend FiniteRing make_subring(const FiniteRing&, std::vector<Elem>, const Caps&);
    std::shared_ptr<const detail::RingRep> rep_;
};

namespace detail {

struct ModuleRep {
    ModuleKind kind;
    FiniteRing base;
    std::string key;
    std::size_t n = 0;
    Elem zero = 0;
    // ideal_module: elems = sorted ideal elements (indices into base).
    // quotient_module: elems = sorted kernel elements; reps/coset as in rings.
    std::vector<Elem> elems;
    std::vector<Elem> coset_of;  // quotient_module only: base elem -> module elem
    std::vector<Elem> reps;      // quotient_module only: module elem -> base rep
    std::shared_ptr<const ModuleRep> left, right;  // direct_sum only
    std::size_t right_size = 0;

    Elem add(Elem x, Elem y) const {
        switch (kind) {
            case ModuleKind::ideal_module: {
                Elem s = base.add(elems[x], elems[y]);
                return index_in_elems(s);
            }
            case ModuleKind::quotient_module:
                return coset_of[base.add(reps[x], reps[y])];
            case ModuleKind::direct_sum:
                return left->add(x / static_cast<Elem>(right_size),
                                 y / static_cast<Elem>(right_size)) *
                           static_cast<Elem>(right_size) +
                       right->add(x % right_size, y % right_size);
        }
        return 0;
    }

    Elem neg(Elem x) const {
        switch (kind) {
            case ModuleKind::ideal_module:
                return index_in_elems(base.neg(elems[x]));
            case ModuleKind::quotient_module:
                return coset_of[base.neg(reps[x])];
            case ModuleKind::direct_sum:
                return left->neg(x / static_cast<Elem>(right_size)) *
                           static_cast<Elem>(right_size) +
                       right->neg(x % right_size);
        }
        return 0;
    }

    Elem smul(Elem a, Elem x) const {
        switch (kind) {
            case ModuleKind::ideal_module:
                return index_in_elems(base.mul(a, elems[x]));
            case ModuleKind::quotient_module:
                return coset_of[base.mul(a, reps[x])];
            case ModuleKind::direct_sum:
                return left->smul(a, x / static_cast<Elem>(right_size)) *
                           static_cast<Elem>(right_size) +
                       right->smul(a, x % right_size);
        }
        return 0;
    }

    std::string format(Elem x) const {
        switch (kind) {
            case ModuleKind::ideal_module:
                return base.format(elems[x]);
            case ModuleKind::quotient_module:
                return base.format(reps[x]);
            case ModuleKind::direct_sum:
                return "(" + left->format(x / static_cast<Elem>(right_size)) + "," +
                       right->format(x % right_size) + ")";
        }
        return {};
    }

    Elem index_in_elems(Elem base_elem) const {
        auto it = std::lower_bound(elems.begin(), elems.end(), base_elem);
        if (it == elems.end() || *it != base_elem)
            throw InternalCheckError("module carrier not closed");
        return static_cast<Elem>(it - elems.begin());
    }
};

inline std::string join_elems(const std::vector<Elem>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(v[i]);
    }
    return out;
}

/// Checks that `subset` (sorted, must contain zero) is closed under addition,
/// negation and multiplication by every ring element. Returns a human-readable
/// description of the first violation, or empty on success.
inline std::string ideal_violation(const FiniteRing& ring, const std::vector<Elem>& subset) {
    std::vector<char> in(ring.size(), 0);
    for (Elem e : subset) {
        if (e >= ring.size()) return "element out of range";
        in[e] = 1;
    }
    if (!in[ring.zero()]) return "does not contain zero";
    for (Elem a : subset) {
        if (!in[ring.neg(a)])
            return "not closed under negation at " + ring.format(a);
        for (Elem b : subset)
            if (!in[ring.add(a, b)])
                return "not closed under addition at " + ring.format(a) + " + " + ring.format(b);
        for (Elem r = 0; r < ring.size(); ++r)
            if (!in[ring.mul(r, a)])
                return "not an ideal: " + ring.format(r) + " * " + ring.format(a) +
                       " falls outside";
    }
    return {};
}

struct ZModRep final : RingRep {
    unsigned modulus;
    explicit ZModRep(unsigned m) : RingRep(RingKind::zmod), modulus(m) {
        n = m;
        zero = 0;
        one = 1;
        key = "Z(" + std::to_string(m) + ")";
    }
    Elem add_raw(Elem a, Elem b) const override { return (a + b) % modulus; }
    Elem mul_raw(Elem a, Elem b) const override {
        return static_cast<Elem>((static_cast<std::uint64_t>(a) * b) % modulus);
    }
    Elem neg_raw(Elem a) const override { return a == 0 ? 0 : modulus - a; }
    std::string format(Elem a) const override { return std::to_string(a); }
};

struct ProductRep final : RingRep {
    FiniteRing left, right;
    std::size_t rn;
    ProductRep(FiniteRing l, FiniteRing r)
        : RingRep(RingKind::product), left(std::move(l)), right(std::move(r)) {
        rn = right.size();
        n = left.size() * rn;
        zero = static_cast<Elem>(left.zero() * rn + right.zero());
        one = static_cast<Elem>(left.one() * rn + right.one());
        key = "prod(" + left.key() + "," + right.key() + ")";
    }
    Elem add_raw(Elem a, Elem b) const override {
        return static_cast<Elem>(left.add(a / rn, b / rn) * rn + right.add(a % rn, b % rn));
    }
    Elem mul_raw(Elem a, Elem b) const override {
        return static_cast<Elem>(left.mul(a / rn, b / rn) * rn + right.mul(a % rn, b % rn));
    }
    Elem neg_raw(Elem a) const override {
        return static_cast<Elem>(left.neg(a / rn) * rn + right.neg(a % rn));
    }
    std::string format(Elem a) const override {
        return "(" + left.format(static_cast<Elem>(a / rn)) + "," +
               right.format(static_cast<Elem>(a % rn)) + ")";
    }
};

struct QuotientRep final : RingRep {
    FiniteRing base;
    std::vector<Elem> kernel;    // sorted
    std::vector<Elem> coset_id;  // base elem -> quotient elem
    std::vector<Elem> reps;      // quotient elem -> canonical base rep (minimal)
    QuotientRep(FiniteRing b, std::vector<Elem> ker)
        : RingRep(RingKind::quotient), base(std::move(b)), kernel(std::move(ker)) {
        const std::size_t bn = base.size();
        coset_id.assign(bn, static_cast<Elem>(bn));
        for (Elem a = 0; a < bn; ++a) {
            if (coset_id[a] != bn) continue;
            // a is minimal in its coset because we scan upward.
            Elem id = static_cast<Elem>(reps.size());
            reps.push_back(a);
            for (Elem k : kernel) coset_id[base.add(a, k)] = id;
        }
        n = reps.size();
        zero = coset_id[base.zero()];
        one = coset_id[base.one()];
        key = "quot(" + base.key() + ";[" + join_elems(kernel) + "])";
    }
    Elem add_raw(Elem a, Elem b) const override {
        return coset_id[base.add(reps[a], reps[b])];
    }
    Elem mul_raw(Elem a, Elem b) const override {
        return coset_id[base.mul(reps[a], reps[b])];
    }
    Elem neg_raw(Elem a) const override { return coset_id[base.neg(reps[a])]; }
    std::string format(Elem a) const override { return base.format(reps[a]); }
};

struct TrivExtRep final : RingRep {
    FiniteRing base;
    Module mod;
    std::size_t mn;
    TrivExtRep(FiniteRing b, Module m)
        : RingRep(RingKind::trivial_extension), base(std::move(b)), mod(std::move(m)) {
        mn = mod.size();
        n = base.size() * mn;
        zero = static_cast<Elem>(base.zero() * mn + mod.zero());
        one = static_cast<Elem>(base.one() * mn + mod.zero());
        key = "triv(" + base.key() + ";" + mod.key() + ")";
    }
    Elem add_raw(Elem x, Elem y) const override {
        return static_cast<Elem>(base.add(x / mn, y / mn) * mn + mod.add(x % mn, y % mn));
    }
    Elem mul_raw(Elem x, Elem y) const override {
        // (a,m)(a',m') = (aa', a m' + a' m)
        Elem a = static_cast<Elem>(x / mn), m = static_cast<Elem>(x % mn);
        Elem a2 = static_cast<Elem>(y / mn), m2 = static_cast<Elem>(y % mn);
        return static_cast<Elem>(base.mul(a, a2) * mn +
                                 mod.add(mod.smul(a, m2), mod.smul(a2, m)));
    }
    Elem neg_raw(Elem x) const override {
        return static_cast<Elem>(base.neg(x / mn) * mn + mod.neg(x % mn));
    }
    std::string format(Elem x) const override {
        return "(" + base.format(static_cast<Elem>(x / mn)) + "," +
               mod.format(static_cast<Elem>(x % mn)) + ")";
    }
};

struct SubringRep final : RingRep {
    FiniteRing ambient;
    std::vector<Elem> universe;  // sorted ambient indices
    std::unordered_map<Elem, Elem> index_of;
    SubringRep(FiniteRing amb, std::vector<Elem> univ)
        : RingRep(RingKind::subring), ambient(std::move(amb)), universe(std::move(univ)) {
        n = universe.size();
        index_of.reserve(n * 2);
        for (Elem i = 0; i < n; ++i) index_of.emplace(universe[i], i);
        zero = lookup(ambient.zero());
        one = lookup(ambient.one());
        key = "sub(" + ambient.key() + ";[" + join_elems(universe) + "])";
    }
    Elem lookup(Elem ambient_elem) const {
        auto it = index_of.find(ambient_elem);
        if (it == index_of.end())
            throw ValidationError("subring universe is not closed (missing " +
                                  ambient.format(ambient_elem) + ")");
        return it->second;
    }
    Elem add_raw(Elem a, Elem b) const override {
        return lookup(ambient.add(universe[a], universe[b]));
    }
    Elem mul_raw(Elem a, Elem b) const override {
        return lookup(ambient.mul(universe[a], universe[b]));
    }
    Elem neg_raw(Elem a) const override { return lookup(ambient.neg(universe[a])); }
    std::string format(Elem a) const override { return ambient.format(universe[a]); }
};

inline const ZModRep& as_zmod(const RingRep& r) {
    if (r.kind != RingKind::zmod) throw ValidationError("ring is not Z(n): " + r.key);
    return static_cast<const ZModRep&>(r);
}
inline const ProductRep& as_product(const RingRep& r) {
    if (r.kind != RingKind::product) throw ValidationError("ring is not a product: " + r.key);
    return static_cast<const ProductRep&>(r);
}
inline const QuotientRep& as_quotient(const RingRep& r) {
    if (r.kind != RingKind::quotient) throw ValidationError("ring is not a quotient: " + r.key);
    return static_cast<const QuotientRep&>(r);
}
inline const TrivExtRep& as_trivext(const RingRep& r) {
    if (r.kind != RingKind::trivial_extension)
        throw ValidationError("ring is not a trivial extension: " + r.key);
    return static_cast<const TrivExtRep&>(r);
}
inline const SubringRep& as_subring(const RingRep& r) {
    if (r.kind != RingKind::subring) throw ValidationError("ring is not a subring: " + r.key);
    return static_cast<const SubringRep&>(r);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Module constructors
// ---------------------------------------------------------------------------

/// An ideal of `base` regarded as a module over it. `elems` must be the full
/// sorted element set of an ideal.
inline Module make_ideal_module(const FiniteRing& base, std::vector<Elem> elems) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    std::string bad = detail::ideal_violation(base, elems);
    if (!bad.empty()) throw ValidationError("ideal module carrier: " + bad);
    auto rep = std::make_shared<detail::ModuleRep>();
    rep->kind = ModuleKind::ideal_module;
    rep->base = base;
    rep->elems = std::move(elems);
    rep->n = rep->elems.size();
    rep->zero = rep->index_in_elems(base.zero());
    rep->key = "idealmod(" + base.key() + ";[" + detail::join_elems(rep->elems) + "])";
    Module m;
    m.rep_ = std::move(rep);
    return m;
}

/// The quotient module base/I, for an ideal I given by its element set.
inline Module make_quotient_module(const FiniteRing& base, std::vector<Elem> kernel) {
    std::sort(kernel.begin(), kernel.end());
    kernel.erase(std::unique(kernel.begin(), kernel.end()), kernel.end());
    std::string bad = detail::ideal_violation(base, kernel);
    if (!bad.empty()) throw ValidationError("quotient module kernel: " + bad);
    auto rep = std::make_shared<detail::ModuleRep>();
    rep->kind = ModuleKind::quotient_module;
    rep->base = base;
    rep->elems = std::move(kernel);
    const std::size_t bn = base.size();
    rep->coset_of.assign(bn, static_cast<Elem>(bn));
    for (Elem a = 0; a < bn; ++a) {
        if (rep->coset_of[a] != bn) continue;
        Elem id = static_cast<Elem>(rep->reps.size());
        rep->reps.push_back(a);
        for (Elem k : rep->elems) rep->coset_of[base.add(a, k)] = id;
    }
    rep->n = rep->reps.size();
    rep->zero = rep->coset_of[base.zero()];
    rep->key = "quotmod(" + base.key() + ";[" + detail::join_elems(rep->elems) + "])";
    Module m;
    m.rep_ = std::move(rep);
    return m;
}

inline Module make_direct_sum(const Module& left, const Module& right) {
    if (!left.base().same_ring(right.base()))
        throw ValidationError("direct sum of modules over different rings");
    auto rep = std::make_shared<detail::ModuleRep>();
    rep->kind = ModuleKind::direct_sum;
    rep->base = left.base();
    rep->left = left.rep_;
    rep->right = right.rep_;
    rep->right_size = right.size();
    rep->n = left.size() * right.size();
    rep->zero = static_cast<Elem>(left.zero() * right.size() + right.zero());
    rep->key = "summod(" + left.key() + "," + right.key() + ")";
    Module m;
    m.rep_ = std::move(rep);
    return m;
}

inline ModuleKind Module::kind() const { return rep_->kind; }
inline const FiniteRing& Module::base() const { return rep_->base; }
inline std::size_t Module::size() const { return rep_->n; }
inline Elem Module::zero() const { return rep_->zero; }
inline Elem Module::add(Elem x, Elem y) const { return rep_->add(x, y); }
inline Elem Module::neg(Elem x) const { return rep_->neg(x); }
inline Elem Module::smul(Elem scalar, Elem x) const { return rep_->smul(scalar, x); }
inline const std::string& Module::key() const { return rep_->key; }
inline std::string Module::format(Elem x) const { return rep_->format(x); }
inline const std::vector<Elem>& Module::source_elems() const { return rep_->elems; }

// ---------------------------------------------------------------------------
// Ring constructors
// ---------------------------------------------------------------------------

namespace detail {

inline void check_cap(std::size_t n, const Caps& caps) {
    if (n > caps.max_ring_size)
        throw CapExceededError("ring would have " + std::to_string(n) +
                               " elements, exceeding the cap of " +
                               std::to_string(caps.max_ring_size));
}

}  // namespace detail

inline FiniteRing make_zmod(unsigned n, const Caps& caps = {}) {
    if (n == 1) throw ZeroRingError("Z(1) is the zero ring");
    if (n < 2) throw ValidationError("Z(n) requires n >= 2, got " + std::to_string(n));
    detail::check_cap(n, caps);
    auto rep = std::make_shared<detail::ZModRep>(n);
    rep->finalize();
    FiniteRing ring;
    ring.rep_ = rep;
    return ring;
}

inline FiniteRing make_product(const FiniteRing& left, const FiniteRing& right,
                               const Caps& caps = {}) {
    auto rep = std::make_shared<detail::ProductRep>(left, right);
    detail::check_cap(rep->n, caps);
    rep->finalize();
    FiniteRing ring;
    ring.rep_ = rep;
    return ring;
}

/// Quotient by an ideal given as its full element set.
inline FiniteRing make_quotient(const FiniteRing& base, const std::vector<Elem>& kernel,
                                const Caps& caps = {}) {
    std::vector<Elem> ker = kernel;
    std::sort(ker.begin(), ker.end());
    ker.erase(std::unique(ker.begin(), ker.end()), ker.end());
    std::string bad = detail::ideal_violation(base, ker);
    if (!bad.empty()) throw ValidationError("quotient kernel: " + bad);
    auto rep = std::make_shared<detail::QuotientRep>(base, std::move(ker));
    if (rep->n == 1) throw ZeroRingError("quotient by the whole ring is the zero ring");
    detail::check_cap(rep->n, caps);
    rep->finalize();
    FiniteRing ring;
    ring.rep_ = rep;
    return ring;
}

inline FiniteRing make_trivext(const FiniteRing& base, const Module& mod,
                               const Caps& caps = {}) {
    if (!mod.base().same_ring(base))
        throw ValidationError("trivial extension: module is not over the given base ring");
    auto rep = std::make_shared<detail::TrivExtRep>(base, mod);
    detail::check_cap(rep->n, caps);
    rep->finalize();
    FiniteRing ring;
    ring.rep_ = rep;
    return ring;
}

/// Wraps an already-closed subset of `ambient` as a ring. The subset must
/// contain 0 and 1 and be closed under +, - and *.
inline FiniteRing make_subring(const FiniteRing& ambient, std::vector<Elem> universe,
                               const Caps& caps = {}) {
    std::sort(universe.begin(), universe.end());
    universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
    std::vector<char> in(ambient.size(), 0);
    for (Elem e : universe) {
        if (e >= ambient.size()) throw ValidationError("subring element out of range");
        in[e] = 1;
    }
    if (!in[ambient.zero()] || !in[ambient.one()])
        throw ValidationError("subring universe must contain 0 and 1");
    for (Elem a : universe) {
        if (!in[ambient.neg(a)])
            throw ValidationError("subring universe not closed under negation");
        for (Elem b : universe) {
            if (!in[ambient.add(a, b)])
                throw ValidationError("subring universe not closed under addition at " +
                                      ambient.format(a) + " + " + ambient.format(b));
            if (!in[ambient.mul(a, b)])
                throw ValidationError("subring universe not closed under multiplication at " +
                                      ambient.format(a) + " * " + ambient.format(b));
        }
    }
    auto rep = std::make_shared<detail::SubringRep>(ambient, std::move(universe));
    detail::check_cap(rep->n, caps);
    rep->finalize();
    FiniteRing ring;
    ring.rep_ = rep;
    return ring;
}

/// Smallest unital subring of `ambient` containing `generators`: the closure
/// of generators plus {0,1} under +, - and *.
inline FiniteRing make_subring_closure(const FiniteRing& ambient, std::vector<Elem> generators,
                                       const Caps& caps = {}) {
    std::vector<char> in(ambient.size(), 0);
    std::vector<Elem> members;
    auto push = [&](Elem e) {
        if (!in[e]) {
            in[e] = 1;
            members.push_back(e);
        }
    };
    push(ambient.zero());
    push(ambient.one());
    for (Elem g : generators) {
        if (g >= ambient.size()) throw ValidationError("generator out of range");
        push(g);
    }
    for (std::size_t i = 0; i < members.size(); ++i) {
        Elem a = members[i];
        if (members.size() > caps.max_ring_size)
            throw CapExceededError("subring closure exceeds the ring size cap");
        push(ambient.neg(a));
        for (std::size_t j = 0; j <= i; ++j) {
            push(ambient.add(a, members[j]));
            push(ambient.mul(a, members[j]));
        }
    }
    return make_subring(ambient, std::move(members), caps);
}

// ---------------------------------------------------------------------------
// FiniteRing member definitions
// ---------------------------------------------------------------------------

inline unsigned FiniteRing::zmod_modulus() const { return detail::as_zmod(*rep_).modulus; }
inline const FiniteRing& FiniteRing::product_left() const {
    return detail::as_product(*rep_).left;
}
inline const FiniteRing& FiniteRing::product_right() const {
    return detail::as_product(*rep_).right;
}
inline Elem FiniteRing::product_pack(Elem l, Elem r) const {
    const auto& p = detail::as_product(*rep_);
    return static_cast<Elem>(l * p.rn + r);
}
inline std::pair<Elem, Elem> FiniteRing::product_unpack(Elem a) const {
    const auto& p = detail::as_product(*rep_);
    return {static_cast<Elem>(a / p.rn), static_cast<Elem>(a % p.rn)};
}
inline const FiniteRing& FiniteRing::quotient_base() const {
    return detail::as_quotient(*rep_).base;
}
inline const std::vector<Elem>& FiniteRing::quotient_kernel() const {
    return detail::as_quotient(*rep_).kernel;
}
inline Elem FiniteRing::quotient_coset_of(Elem base_elem) const {
    return detail::as_quotient(*rep_).coset_id[base_elem];
}
inline Elem FiniteRing::quotient_rep(Elem a) const { return detail::as_quotient(*rep_).reps[a]; }
inline const FiniteRing& FiniteRing::trivext_base() const {
    return detail::as_trivext(*rep_).base;
}
inline const Module& FiniteRing::trivext_module() const { return detail::as_trivext(*rep_).mod; }
inline Elem FiniteRing::trivext_pack(Elem a, Elem m) const {
    return static_cast<Elem>(a * detail::as_trivext(*rep_).mn + m);
}
inline std::pair<Elem, Elem> FiniteRing::trivext_unpack(Elem x) const {
    const auto& t = detail::as_trivext(*rep_);
    return {static_cast<Elem>(x / t.mn), static_cast<Elem>(x % t.mn)};
}
inline const FiniteRing& FiniteRing::subring_ambient() const {
    return detail::as_subring(*rep_).ambient;
}
inline const std::vector<Elem>& FiniteRing::subring_universe() const {
    return detail::as_subring(*rep_).universe;
}
inline Elem FiniteRing::subring_ambient_of(Elem a) const {
    return detail::as_subring(*rep_).universe[a];
}
inline std::optional<Elem> FiniteRing::subring_index_of(Elem ambient_elem) const {
    const auto& s = detail::as_subring(*rep_);
    auto it = s.index_of.find(ambient_elem);
    if (it == s.index_of.end()) return std::nullopt;
    return it->second;
}

inline Elem FiniteRing::parse(std::string_view text) const {
    // Canonical encodings are unique, so a scan over the universe suffices.
    std::string want(text);
    // Normalize whitespace inside tuples.
    std::string squeezed;
    for (char c : want)
        if (c != ' ' && c != '\t') squeezed += c;
    for (Elem a = 0; a < size(); ++a)
        if (format(a) == squeezed) return a;
    throw ValidationError("'" + std::string(text) + "' is not an element of " + key());
}

// ---------------------------------------------------------------------------
// Generic queries
// ---------------------------------------------------------------------------

inline bool is_unit(const FiniteRing& ring, Elem x) {
    for (Elem y = 0; y < ring.size(); ++y)
        if (ring.mul(x, y) == ring.one()) return true;
    return false;
}

inline std::optional<Elem> unit_inverse(const FiniteRing& ring, Elem x) {
    for (Elem y = 0; y < ring.size(); ++y)
        if (ring.mul(x, y) == ring.one()) return y;
    return std::nullopt;
}

inline bool is_nilpotent(const FiniteRing& ring, Elem x) {
    // x^k = 0 for some k <= |R| iff repeated squaring hits zero within
    // ceil(log2 |R|) + 1 steps.
    Elem y = x;
    std::size_t steps = 1;
    for (std::size_t m = 1; m < ring.size(); m <<= 1) ++steps;
    for (std::size_t i = 0; i < steps; ++i) {
        if (y == ring.zero()) return true;
        y = ring.mul(y, y);
    }
    return y == ring.zero();
}

struct AxiomsReport {
    bool ok = true;
    std::string violation;  // empty when ok
    std::vector<Elem> witness;
};

namespace detail {

/// Exhaustive commutative-unital-ring axiom check over arbitrary operation
/// callables; lets tests feed deliberately corrupted tables.
template <class Add, class Mul, class Neg>
AxiomsReport axioms_check_ops(std::size_t n, Elem zero, Elem one, Add add, Mul mul, Neg neg,
                              const std::function<std::string(Elem)>& fmt) {
    AxiomsReport rep;
    auto fail = [&](std::string what, std::vector<Elem> w) {
        rep.ok = false;
        rep.witness = std::move(w);
        rep.violation = std::move(what) + " at (";
        for (std::size_t i = 0; i < rep.witness.size(); ++i) {
            if (i) rep.violation += ", ";
            rep.violation += fmt(rep.witness[i]);
        }
        rep.violation += ")";
        return rep;
    };
    if (one == zero) return fail("one equals zero", {zero});
    for (Elem a = 0; a < n; ++a) {
        if (add(a, zero) != a) return fail("additive identity fails", {a});
        if (add(a, neg(a)) != zero) return fail("additive inverse fails", {a});
        if (mul(a, one) != a) return fail("multiplicative identity fails", {a});
    }
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b) {
            if (add(a, b) != add(b, a)) return fail("addition not commutative", {a, b});
            if (mul(a, b) != mul(b, a)) return fail("multiplication not commutative", {a, b});
        }
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b)
            for (Elem c = 0; c < n; ++c) {
                if (add(add(a, b), c) != add(a, add(b, c)))
                    return fail("addition not associative", {a, b, c});
                if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                    return fail("multiplication not associative", {a, b, c});
                if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c)))
                    return fail("distributivity fails", {a, b, c});
            }
    return rep;
}

}  // namespace detail

/// Exhaustively verifies the commutative unital ring axioms. O(n^3).
inline AxiomsReport ring_axioms_check(const FiniteRing& ring) {
    return detail::axioms_check_ops(
        ring.size(), ring.zero(), ring.one(),
        [&](Elem a, Elem b) { return ring.add(a, b); },
        [&](Elem a, Elem b) { return ring.mul(a, b); },
        [&](Elem a) { return ring.neg(a); },
        [&](Elem a) { return ring.format(a); });
}

}  // namespace finring
