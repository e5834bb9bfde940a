#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qlab/quantale.hpp"

using namespace qlab;

namespace {

// Brute-force residuum, independent of the precomputed tables: collect the
// candidate set from raw product/leq and locate its greatest element by scan.
QVal residuum_oracle(const Quantale& q, QVal x, QVal y) {
    std::vector<QVal> cand;
    for (QVal z = 0; z < q.size(); ++z)
        if (q.leq(q.product(x, z), y)) cand.push_back(z);
    for (QVal c : cand) {
        bool greatest = true;
        for (QVal d : cand)
            if (!q.leq(d, c)) { greatest = false; break; }
        if (greatest) return c;
    }
    FAIL("candidate set has no greatest element");
    return 0;
}

std::vector<Quantale> builtins() {
    std::vector<Quantale> qs;
    qs.push_back(Quantale::boolean_algebra(1));
    qs.push_back(Quantale::boolean_algebra(2));
    qs.push_back(Quantale::godel_chain(3));
    qs.push_back(Quantale::godel_chain(5));
    qs.push_back(Quantale::heyting_chain(4));
    qs.push_back(Quantale::lukasiewicz_chain(3));
    qs.push_back(Quantale::lukasiewicz_chain(5));
    return qs;
}

}  // namespace

TEST_CASE("two-element chain with classical AND is a valid quantale") {
    auto q = Quantale::from_tables("bool2", {"0", "1"},
                                   {{1, 1}, {0, 1}},
                                   {{0, 0}, {0, 1}}, 0, 1);
    CHECK(q.size() == 2);
    CHECK(q.product(1, 1) == 1);
    CHECK(q.residuum(0, 0) == 1);
    CHECK(q.residuum(1, 0) == 0);
}

TEST_CASE("non-commutative product is rejected with the offending pair") {
    // product(0,1)=0 but product(1,0)=1
    std::vector<std::vector<QVal>> prod{{0, 0}, {1, 1}};
    try {
        Quantale::from_tables("broken", {"0", "1"}, {{1, 1}, {0, 1}}, prod, 0, 1);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.axiom == "product.commutative");
        REQUIRE(e.witness.size() == 2);
        CHECK(e.witness[0] == 0);
        CHECK(e.witness[1] == 1);
    }
}

TEST_CASE("foreign element is rejected") {
    auto q = Quantale::boolean_algebra(1);
    CHECK_THROWS_AS(q.meet(0, 5), std::out_of_range);
    CHECK_THROWS_AS(q.residuum(7, 0), std::out_of_range);
}

TEST_CASE("lukasiewicz chains") {
    auto l2 = Quantale::lukasiewicz_chain(2);
    CHECK(l2.size() == 2);
    CHECK(l2.product(1, 1) == 1);  // degenerates to the Boolean quantale
    CHECK(l2.product(1, 0) == 0);

    auto l3 = Quantale::lukasiewicz_chain(3);
    auto half = *l3.value_of_label("1/2");
    CHECK(l3.product(half, half) == l3.bottom());  // max(1/2+1/2-1, 0) = 0
    CHECK(l3.residuum(half, l3.bottom()) == half);
    CHECK(l3.residuum(half, l3.bottom()) == residuum_oracle(l3, half, l3.bottom()));

    auto l5 = Quantale::lukasiewicz_chain(5);
    auto q34 = *l5.value_of_label("3/4");
    auto q12 = *l5.value_of_label("1/2");
    CHECK(l5.residuum(q34, q12) == q34);
    CHECK(l5.residuum(q34, q12) == residuum_oracle(l5, q34, q12));
    CHECK(l5.product(q34, q34) == q12);  // max(3/4+3/4-1, 0) = 1/2
}

TEST_CASE("godel chain is idempotent") {
    auto g3 = Quantale::godel_chain(3);
    auto half = *g3.value_of_label("1/2");
    CHECK(g3.product(half, half) == half);
    CHECK(g3.is_idempotent());
}

TEST_CASE("boolean algebra of two atoms") {
    auto b2 = Quantale::boolean_algebra(2);
    CHECK(b2.size() == 4);
    auto a = *b2.value_of_label("a");
    auto b = *b2.value_of_label("b");
    CHECK(b2.join(a, b) == b2.top());
    CHECK(b2.meet(a, b) == b2.bottom());
    CHECK(b2.is_idempotent());
}

TEST_CASE("heyting algebra from posets") {
    // two-element antichain: four down-sets, Boolean-shaped
    auto h = Quantale::heyting_from_poset(2, {});
    CHECK(h.size() == 4);
    CHECK(h.is_idempotent());
    for (QVal x = 0; x < h.size(); ++x) CHECK(h.neg(h.neg(x)) == x);

    // three-element chain poset: the four-chain Heyting algebra,
    // where ~~x = 1 > x at the middle elements
    auto c = Quantale::heyting_from_poset(3, {{0, 1}, {1, 2}});
    CHECK(c.size() == 4);
    int strict = 0;
    for (QVal x = 0; x < c.size(); ++x)
        if (c.neg(c.neg(x)) != x) ++strict;
    CHECK(strict == 2);

    // heyting_chain builds the same lattice directly
    auto hc = Quantale::heyting_chain(4);
    CHECK(hc.size() == 4);
    auto m = *hc.value_of_label("h1");
    CHECK(hc.neg(hc.neg(m)) == hc.top());

    CHECK_THROWS_AS(Quantale::heyting_from_poset(2, {{0, 1}, {1, 0}}), ValidationError);
}

TEST_CASE("derived operations") {
    for (const auto& q : builtins()) {
        CAPTURE(q.name());
        for (QVal y = 0; y < q.size(); ++y) {
            CHECK(q.residuum(q.bottom(), y) == q.top());
            CHECK(q.residuum(q.top(), y) == y);
        }
        for (QVal x = 0; x < q.size(); ++x) {
            CHECK(q.power(x, 0) == q.top());
            CHECK(q.power(x, 1) == x);
            CHECK(q.power(x, 2) == q.product(x, x));
            CHECK(q.equiv(x, x) == q.top());
        }
    }
    auto l3 = Quantale::lukasiewicz_chain(3);
    auto half = *l3.value_of_label("1/2");
    CHECK(l3.neg(half) == half);
    CHECK(l3.join(half, l3.neg(half)) == half);  // excluded middle fails at 1/2
}

TEST_CASE("adjunction holds on all triples of every builtin") {
    for (const auto& q : builtins()) {
        CAPTURE(q.name());
        for (QVal x = 0; x < q.size(); ++x)
            for (QVal y = 0; y < q.size(); ++y)
                for (QVal z = 0; z < q.size(); ++z)
                    CHECK(q.leq(q.product(x, z), y) == q.leq(z, q.residuum(x, y)));
    }
}

TEST_CASE("currying and triple negation hold on every builtin") {
    for (const auto& q : builtins()) {
        CAPTURE(q.name());
        for (QVal x = 0; x < q.size(); ++x) {
            CHECK(q.neg(q.neg(q.neg(x))) == q.neg(x));
            for (QVal y = 0; y < q.size(); ++y)
                for (QVal z = 0; z < q.size(); ++z)
                    CHECK(q.residuum(q.product(x, y), z) == q.residuum(x, q.residuum(y, z)));
        }
    }
}

TEST_CASE("residuum table matches the brute-force oracle elementwise") {
    for (const auto& q : builtins()) {
        CAPTURE(q.name());
        for (QVal x = 0; x < q.size(); ++x)
            for (QVal y = 0; y < q.size(); ++y)
                CHECK(q.residuum(x, y) == residuum_oracle(q, x, y));
        auto rep = check_residuum_oracle(q);
        CHECK(!rep.any_fail());
    }
}

TEST_CASE("{0,1} closure") {
    for (const auto& q : builtins()) {
        CAPTURE(q.name());
        const QVal pair[2] = {q.bottom(), q.top()};
        auto in2 = [&](QVal v) { return v == q.bottom() || v == q.top(); };
        for (QVal x : pair)
            for (QVal y : pair) {
                CHECK(in2(q.residuum(x, y)));
                CHECK(in2(q.meet(x, y)));
                CHECK(in2(q.join(x, y)));
                CHECK(in2(q.product(x, y)));
                CHECK(in2(q.neg(x)));
            }
    }
}

TEST_CASE("theorem suite: boolean algebra has no non-classical witnesses") {
    auto rep = validate_theorem_suite(Quantale::boolean_algebra(2));
    CHECK(!rep.any_fail());
    CHECK(rep.find("witness.excluded_middle_fails")->witnesses.empty());
    CHECK(rep.find("witness.double_neg_elim_fails")->witnesses.empty());
    CHECK(rep.find("witness.not_idempotent")->witnesses.empty());
}

TEST_CASE("theorem suite: lukasiewicz:3 passes with the 1/2 witnesses") {
    auto rep = validate_theorem_suite(Quantale::lukasiewicz_chain(3));
    CHECK(!rep.any_fail());
    auto* em = rep.find("witness.excluded_middle_fails");
    REQUIRE(em != nullptr);
    REQUIRE(!em->witnesses.empty());
    CHECK(em->witnesses[0] == "x=1/2");
    // involutive negation: no strict double-negation witness
    CHECK(rep.find("witness.double_neg_elim_fails")->witnesses.empty());
    CHECK(rep.find("witness.double_neg_elim_fails")->note == "no witness");
    auto* idem = rep.find("witness.not_idempotent");
    REQUIRE(!idem->witnesses.empty());
    CHECK(idem->witnesses[0].find("x=1/2") != std::string::npos);
}

TEST_CASE("theorem suite: heyting 4-chain witnesses double-negation elimination failure") {
    auto rep = validate_theorem_suite(Quantale::heyting_chain(4));
    CHECK(!rep.any_fail());
    CHECK(!rep.find("witness.double_neg_elim_fails")->witnesses.empty());
    CHECK(rep.find("thm.idempotent_collapse")->status == CheckStatus::pass);
}

TEST_CASE("idempotent collapse") {
    for (const auto& q : builtins()) {
        CAPTURE(q.name());
        auto rep = check_heyting_collapse(q);
        if (q.is_idempotent()) {
            CHECK(rep.find("thm.idempotent_collapse")->status == CheckStatus::pass);
            for (QVal x = 0; x < q.size(); ++x)
                for (QVal y = 0; y < q.size(); ++y)
                    CHECK(q.product(x, y) == q.meet(x, y));
        } else {
            CHECK(rep.find("thm.idempotent_collapse")->status == CheckStatus::info);
        }
    }
    CHECK(!Quantale::lukasiewicz_chain(3).is_idempotent());
}

TEST_CASE("validate_report re-checks a built quantale") {
    auto rep = Quantale::godel_chain(4).validate_report();
    CHECK(!rep.any_fail());
    CHECK(rep.find("axioms") != nullptr);
}

TEST_CASE("json round trip") {
    auto q = Quantale::lukasiewicz_chain(4);
    auto j = q.to_json();
    auto q2 = Quantale::from_json(j, "reload");
    REQUIRE(q2.size() == q.size());
    for (QVal x = 0; x < q.size(); ++x)
        for (QVal y = 0; y < q.size(); ++y) {
            CHECK(q2.product(x, y) == q.product(x, y));
            CHECK(q2.residuum(x, y) == q.residuum(x, y));
        }
}

TEST_CASE("from_name resolves builtin constructors") {
    CHECK(Quantale::from_name("lukasiewicz:5").size() == 5);
    CHECK(Quantale::from_name("godel:4").size() == 4);
    CHECK(Quantale::from_name("boolean:2").size() == 4);
    CHECK(Quantale::from_name("heyting:chain:3").size() == 3);
    CHECK_THROWS_AS(Quantale::from_name("nonsense"), std::invalid_argument);
    CHECK_THROWS_AS(Quantale::from_name("lukasiewicz:1"), std::invalid_argument);
}
