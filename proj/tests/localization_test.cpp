#include <gtest/gtest.h>

#include "finring/biamalg.hpp"
#include "finring/localization.hpp"
#include "support/oracles.hpp"

using namespace finring;

namespace {

std::vector<FiniteRing> loc_menagerie() {
    std::vector<FiniteRing> rings;
    for (unsigned n : {4u, 6u, 8u, 12u, 16u, 18u}) rings.push_back(make_zmod(n));
    rings.push_back(make_product(make_zmod(2), make_zmod(2)));
    rings.push_back(make_product(make_zmod(4), make_zmod(3)));
    FiniteRing z4 = make_zmod(4);
    rings.push_back(make_trivext(z4, make_ideal_module(z4, {0, 2})));
    FiniteRing z2 = make_zmod(2);
    rings.push_back(make_trivext(z2, make_quotient_module(z2, {0})));
    return rings;
}

TEST(Saturate, Examples) {
    FiniteRing z12 = make_zmod(12);
    EXPECT_EQ(saturate(z12, {5}).closure, (std::vector<Elem>{1, 5}));
    EXPECT_EQ(saturate(z12, {1}).closure, (std::vector<Elem>{1}));
    std::vector<Elem> odds{1, 3, 5, 7, 9, 11};
    EXPECT_EQ(saturate(z12, odds).closure, odds);
}

TEST(Localize, AtPrimeTwoOfZ12) {
    FiniteRing z12 = make_zmod(12);
    Ideal evens = ideal_generated(z12, {2});
    Localization loc = localize_at_prime(z12, evens);
    EXPECT_EQ(loc.ring.size(), 4u);
    EXPECT_EQ(loc.kernel.elems(), (std::vector<Elem>{0, 4, 8}));
    // Cyclic of order 4: the image of 1 has additive order 4.
    Elem x = loc.at(1);
    Elem two = loc.ring.add(x, x);
    EXPECT_NE(two, loc.ring.zero());
    EXPECT_NE(loc.ring.add(two, x), loc.ring.zero());
    EXPECT_EQ(loc.ring.add(two, two), loc.ring.zero());
}

TEST(Localize, AtPrimeThreeOfZ12) {
    FiniteRing z12 = make_zmod(12);
    Ideal threes = ideal_generated(z12, {3});
    Localization loc = localize_at_prime(z12, threes);
    EXPECT_EQ(loc.ring.size(), 3u);
    EXPECT_EQ(loc.kernel.elems(), (std::vector<Elem>{0, 3, 6, 9}));
    std::string why;
    EXPECT_TRUE(oracles::fraction_oracle_matches(loc, &why)) << why;
}

TEST(Localize, TrivialSetKeepsTheRing) {
    FiniteRing z8 = make_zmod(8);
    Localization loc = localize(z8, std::vector<Elem>{1});
    EXPECT_EQ(loc.ring.size(), 8u);
    EXPECT_TRUE(loc.canonical.is_injective());
    EXPECT_TRUE(loc.canonical.is_surjective());
}

TEST(Localize, DegenerateSetIsRejected) {
    FiniteRing z12 = make_zmod(12);
    EXPECT_THROW(localize(z12, std::vector<Elem>{2, 6}), DegenerateLocalizationError);
    EXPECT_THROW(localize(z12, std::vector<Elem>{0}), DegenerateLocalizationError);
}

TEST(Localize, MembersBecomeUnits) {
    FiniteRing z12 = make_zmod(12);
    MultiplicativeSet s = saturate(z12, {4});
    Localization loc = localize(z12, s);
    for (Elem v : s.closure) EXPECT_TRUE(is_unit(loc.ring, loc.at(v)));
}

TEST(LocalizeIdeal, Examples) {
    FiniteRing z12 = make_zmod(12);
    Ideal i4 = ideal_generated(z12, {4});
    Ideal evens = ideal_generated(z12, {2});
    Ideal threes = ideal_generated(z12, {3});
    EXPECT_TRUE(localize_ideal(i4, localize_at_prime(z12, evens)).is_zero());
    Localization at3 = localize_at_prime(z12, threes);
    EXPECT_EQ(localize_ideal(i4, at3).size(), at3.ring.size());  // the whole ring
    EXPECT_TRUE(localize_ideal(ideal_zero(z12), at3).is_zero());
}

TEST(Localize, FractionOracleOnMenagerie) {
    // Every multiplicative submonoid of every small ring, against the naive
    // fraction construction. The degenerate ones must be rejected by both.
    for (const FiniteRing& r : loc_menagerie()) {
        if (r.size() > 18) continue;
        for (const auto& sub : oracles::all_mult_submonoids(r)) {
            MultiplicativeSet s = saturate(r, sub);
            bool zero_in = s.contains(r.zero());
            if (zero_in) {
                EXPECT_THROW(localize(r, s), DegenerateLocalizationError);
                continue;
            }
            Localization loc = localize(r, s);
            std::string why;
            EXPECT_TRUE(oracles::fraction_oracle_matches(loc, &why))
                << r.key() << " at S of size " << s.closure.size() << ": " << why;
        }
    }
}

TEST(Localize, NestedSetsComposeLikeTheJoin) {
    FiniteRing z12 = make_zmod(12);
    for (Elem a = 0; a < z12.size(); ++a) {
        for (Elem b = 0; b < z12.size(); ++b) {
            MultiplicativeSet s = saturate(z12, {a});
            MultiplicativeSet joined = saturate(z12, {a, b});
            bool degenerate_first = s.contains(z12.zero());
            bool degenerate_join = joined.contains(z12.zero());
            if (degenerate_first || degenerate_join) continue;
            Localization first = localize(z12, s);
            std::vector<Elem> pushed{first.at(b)};
            MultiplicativeSet s2 = saturate(first.ring, pushed);
            if (s2.contains(first.ring.zero())) continue;
            Localization second = localize(first.ring, s2);
            Localization direct = localize(z12, joined);
            ASSERT_EQ(second.ring.size(), direct.ring.size());
            constexpr Elem kUnset = static_cast<Elem>(-1);
            std::vector<Elem> map(direct.ring.size(), kUnset);
            bool well = true;
            for (Elem r = 0; r < z12.size(); ++r) {
                Elem slot = direct.at(r);
                Elem target = second.at(first.at(r));
                if (map[slot] == kUnset)
                    map[slot] = target;
                else if (map[slot] != target)
                    well = false;
            }
            ASSERT_TRUE(well);
            IsoCheck iso = detail::verify_iso(direct.ring, second.ring, map);
            EXPECT_TRUE(iso.ok) << iso.witness;
        }
    }
}

TEST(Localize, AtMaximalIsLocal) {
    for (const FiniteRing& r : loc_menagerie()) {
        for (const Ideal& m : max_ideals(r)) {
            Localization loc = localize_at_prime(r, m);
            EXPECT_TRUE(is_local_ring(loc.ring)) << r.key() << " at " << m.to_string();
        }
    }
}

}  // namespace
