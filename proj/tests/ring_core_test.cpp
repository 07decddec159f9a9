#include <gtest/gtest.h>

#include <algorithm>

#include "finring/hom.hpp"
#include "finring/ideal.hpp"

using namespace finring;

namespace {

std::vector<FiniteRing> small_menagerie() {
    std::vector<FiniteRing> rings;
    for (unsigned n : {2u, 3u, 4u, 6u, 8u, 9u, 12u, 16u}) rings.push_back(make_zmod(n));
    rings.push_back(make_product(make_zmod(2), make_zmod(2)));
    rings.push_back(make_product(make_zmod(4), make_zmod(3)));
    FiniteRing z2 = make_zmod(2);
    rings.push_back(make_trivext(z2, make_quotient_module(z2, {0})));
    FiniteRing z4 = make_zmod(4);
    rings.push_back(make_trivext(z4, make_ideal_module(z4, {0, 2})));
    rings.push_back(make_trivext(z4, make_quotient_module(z4, {0, 2})));
    rings.push_back(make_quotient(make_zmod(12), {0, 4, 8}));
    return rings;
}

TEST(MakeRing, ZModTwelve) {
    FiniteRing r = make_zmod(12);
    EXPECT_EQ(r.size(), 12u);
    EXPECT_EQ(r.zero(), 0u);
    EXPECT_EQ(r.one(), 1u);
    EXPECT_EQ(r.add(7, 8), 3u);
    EXPECT_EQ(r.mul(5, 5), 1u);
    EXPECT_EQ(r.format(11), "11");
    EXPECT_EQ(r.parse("11"), 11u);
}

TEST(MakeRing, TrivialExtensionIsDualNumbers) {
    // Z/2 extended by itself as a module: x = (0,1) squares to zero.
    FiniteRing z2 = make_zmod(2);
    FiniteRing t = make_trivext(z2, make_quotient_module(z2, {0}));
    ASSERT_EQ(t.size(), 4u);
    Elem x = t.trivext_pack(0, 1);
    EXPECT_EQ(t.mul(x, x), t.zero());
    EXPECT_NE(x, t.zero());
    EXPECT_EQ(t.mul(t.one(), x), x);
}

TEST(MakeRing, ProductIsComponentwise) {
    FiniteRing p = make_product(make_zmod(4), make_zmod(3));
    ASSERT_EQ(p.size(), 12u);
    Elem a = p.product_pack(3, 2);
    Elem b = p.product_pack(2, 2);
    auto [s1, s2] = p.product_unpack(p.add(a, b));
    EXPECT_EQ(s1, 1u);
    EXPECT_EQ(s2, 1u);
    auto [m1, m2] = p.product_unpack(p.mul(a, b));
    EXPECT_EQ(m1, 2u);
    EXPECT_EQ(m2, 1u);
    EXPECT_EQ(p.format(a), "(3,2)");
    EXPECT_EQ(p.parse("(3, 2)"), a);
}

TEST(MakeRing, RejectsBadDescriptors) {
    EXPECT_THROW(make_zmod(0), ValidationError);
    EXPECT_THROW(make_zmod(1), ZeroRingError);
    Caps tight;
    tight.max_ring_size = 8;
    EXPECT_THROW(make_zmod(12, tight), CapExceededError);
    FiniteRing z6 = make_zmod(6);
    EXPECT_THROW(make_quotient(z6, {0, 1, 2, 3, 4, 5}), ZeroRingError);
    EXPECT_THROW(make_quotient(z6, {0, 1}), ValidationError);  // not an ideal
}

TEST(MakeRing, CardinalityLaws) {
    FiniteRing z12 = make_zmod(12);
    FiniteRing z5 = make_zmod(5);
    EXPECT_EQ(make_product(z12, z5).size(), 60u);
    EXPECT_EQ(make_quotient(z12, {0, 4, 8}).size(), 4u);
    EXPECT_EQ(make_quotient(z12, {0, 6}).size(), 6u);
}

TEST(MakeRing, SubringClosureIsMinimal) {
    // Closure of the empty set in Z/2 x Z/2 is the diagonal; adding (1,0)
    // grows it to the whole product. Removing any non-generator element from
    // a closure breaks closure, which is exactly minimality.
    FiniteRing p = make_product(make_zmod(2), make_zmod(2));
    FiniteRing diag = make_subring_closure(p, {});
    EXPECT_EQ(diag.size(), 2u);
    Elem e10 = p.product_pack(1, 0);
    FiniteRing whole = make_subring_closure(p, {e10});
    EXPECT_EQ(whole.size(), 4u);

    for (const FiniteRing& sub : {diag, whole}) {
        std::vector<Elem> keep{p.zero(), p.one(), e10};
        for (Elem u : sub.subring_universe()) {
            if (std::find(keep.begin(), keep.end(), u) != keep.end()) continue;
            std::vector<Elem> reduced;
            for (Elem v : sub.subring_universe())
                if (v != u) reduced.push_back(v);
            EXPECT_THROW(make_subring(p, reduced), ValidationError)
                << "removing " << p.format(u) << " should break closure";
        }
    }
}

TEST(RingAxioms, PassOnMenagerie) {
    for (const FiniteRing& r : small_menagerie()) {
        AxiomsReport rep = ring_axioms_check(r);
        EXPECT_TRUE(rep.ok) << r.key() << ": " << rep.violation;
    }
}

TEST(RingAxioms, CorruptedTableIsCaught) {
    // Patch 2*3 to 1 in Z/6 and expect the witness (2, 3).
    FiniteRing z6 = make_zmod(6);
    auto mul = [&](Elem a, Elem b) -> Elem {
        if ((a == 2 && b == 3)) return 1;
        return z6.mul(a, b);
    };
    AxiomsReport rep = detail::axioms_check_ops(
        z6.size(), z6.zero(), z6.one(),
        [&](Elem a, Elem b) { return z6.add(a, b); }, mul,
        [&](Elem a) { return z6.neg(a); }, [&](Elem a) { return z6.format(a); });
    ASSERT_FALSE(rep.ok);
    ASSERT_EQ(rep.witness.size(), 2u);
    EXPECT_EQ(rep.witness[0], 2u);
    EXPECT_EQ(rep.witness[1], 3u);
}

TEST(Units, ZModExamples) {
    FiniteRing z12 = make_zmod(12);
    EXPECT_TRUE(is_unit(z12, 5));
    EXPECT_FALSE(is_unit(z12, 4));
    FiniteRing z8 = make_zmod(8);
    EXPECT_TRUE(is_unit(z8, 3));
}

TEST(Homs, QuotientProjection) {
    FiniteRing z12 = make_zmod(12);
    FiniteRing q = make_quotient(z12, {0, 4, 8});
    RingHom pr = hom_quotient_projection(z12, q);
    EXPECT_TRUE(pr.is_surjective());
    auto ki = hom_kernel_image(pr);
    EXPECT_EQ(ki.kernel.elems(), (std::vector<Elem>{0, 4, 8}));
    EXPECT_EQ(ki.image.size(), q.size());
}

TEST(Homs, GraphHomIsInjectiveAndUnital) {
    FiniteRing z12 = make_zmod(12);
    FiniteRing z2 = make_zmod(2);
    RingHom phi = hom_zmod_residue(z12, z2);
    RingHom g = hom_graph(phi);
    EXPECT_TRUE(g.is_injective());
    auto ki = hom_kernel_image(g);
    EXPECT_TRUE(ki.kernel.is_zero());
    EXPECT_EQ(ki.image.size(), 12u);
    EXPECT_EQ(g.codomain().size(), 24u);
}

TEST(Homs, IdentityHom) {
    FiniteRing z8 = make_zmod(8);
    RingHom id = hom_identity(z8);
    EXPECT_TRUE(id.is_identity());
    EXPECT_TRUE(hom_kernel_image(id).kernel.is_zero());
}

TEST(Homs, NonUnitalCoordinateInclusionIsRejected) {
    // a -> (a, 0) into a product maps 1 to (1,0), not the identity. The
    // engine insists on unital maps; the graph hom is the sanctioned form.
    FiniteRing z12 = make_zmod(12);
    FiniteRing p = make_product(z12, make_zmod(2));
    std::vector<Elem> coord(z12.size());
    for (Elem a = 0; a < z12.size(); ++a) coord[a] = p.product_pack(a, 0);
    EXPECT_THROW(make_hom_from_map(z12, p, coord), ValidationError);
}

TEST(Homs, NonAdditiveMapIsRejected) {
    FiniteRing z4 = make_zmod(4);
    std::vector<Elem> bad{0, 1, 3, 2};
    EXPECT_THROW(make_hom_from_map(z4, z4, bad), ValidationError);
}

TEST(Homs, ExhaustiveLawsOnMenagerie) {
    // Construction already verifies the laws; spot-check them again from the
    // outside for a few homs.
    FiniteRing z12 = make_zmod(12);
    FiniteRing z6 = make_zmod(6);
    RingHom h = hom_zmod_residue(z12, z6);
    for (Elem a = 0; a < z12.size(); ++a)
        for (Elem b = 0; b < z12.size(); ++b) {
            EXPECT_EQ(h(z12.add(a, b)), z6.add(h(a), h(b)));
            EXPECT_EQ(h(z12.mul(a, b)), z6.mul(h(a), h(b)));
        }
    EXPECT_EQ(h(z12.one()), z6.one());
}

TEST(Elements, FormatParseRoundTrip) {
    for (const FiniteRing& r : small_menagerie())
        for (Elem a = 0; a < r.size(); ++a) EXPECT_EQ(r.parse(r.format(a)), a) << r.key();
}

TEST(Elements, StructuralKeysAgreeAcrossConstructions) {
    FiniteRing a = make_product(make_zmod(4), make_zmod(3));
    FiniteRing b = make_product(make_zmod(4), make_zmod(3));
    EXPECT_TRUE(a.same_ring(b));
    EXPECT_FALSE(a.same_ring(make_product(make_zmod(3), make_zmod(4))));
}

}  // namespace
