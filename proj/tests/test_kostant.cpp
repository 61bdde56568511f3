#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "qcombinat/kostant.hpp"

using namespace qcombinat;

namespace {
CartanData cd(const char* t) { return CartanData::finite(TypeLabel::parse(t)); }
QDatum a2_datum() { return QDatum(cd("A2"), DiagramAutomorphism::identity(2), {0, 1}); }
QDatum b2_datum() {
    return QDatum(cd("A3"), DiagramAutomorphism::from_cycles(3, {{1, 3}}), {1, 0, -1});
}

// independent oracle: scan the full box of multiplicity vectors
std::set<IntVec> brute_force_kp(const ConvexOrder& o, const Root& beta) {
    std::set<IntVec> out;
    Int cap = 0;
    for (Int v : beta.rc) cap = std::max(cap, v);
    IntVec m(o.length(), 0);
    auto rec = [&](auto&& self, size_t k) -> void {
        if (k == o.length()) {
            if (kp_weight(o, m) == beta) out.insert(m);
            return;
        }
        for (Int v = 0; v <= cap; ++v) {
            m[k] = v;
            self(self, k + 1);
        }
        m[k] = 0;
    };
    rec(rec, 0);
    return out;
}
}  // namespace

TEST_CASE("enumeration of Kostant partitions") {
    auto o = ConvexOrder::adapted(a2_datum());
    auto kps = enumerate_kp(o, Root(IntVec{1, 1}));
    CHECK(kps == std::vector<IntVec>{{0, 1, 0}, {1, 0, 1}});

    CHECK(enumerate_kp(o, Root(IntVec{1, 0})) == std::vector<IntVec>{{0, 0, 1}});

    auto big = enumerate_kp(o, Root(IntVec{2, 2}));
    CHECK(big.size() == 3);
    CHECK(std::set<IntVec>(big.begin(), big.end()) == brute_force_kp(o, Root(IntVec{2, 2})));
    CHECK(std::is_sorted(big.begin(), big.end()));  // lexicographic emission

    // cross-check several weights against the box oracle
    auto o3 = ConvexOrder::adapted(b2_datum());
    for (IntVec b : {IntVec{1, 1, 1}, IntVec{2, 1, 0}, IntVec{2, 2, 2}, IntVec{1, 2, 1}}) {
        auto fast = enumerate_kp(o3, Root(b));
        CHECK(std::set<IntVec>(fast.begin(), fast.end()) == brute_force_kp(o3, Root(b)));
    }
}

TEST_CASE("rho on the worked A2 order") {
    auto o = ConvexOrder::adapted(a2_datum());
    CHECK(rho(o, {1, 0, 1}) == IntVec{1, 1, 1});
    CHECK(rho(o, {0, 1, 0}) == IntVec{0, 1, 1});
    CHECK(rho(o, {0, 0, 0}) == IntVec{0, 0, 0});
    // nu values behind it
    CHECK(o.nu[0] == weight_of_root(o.q.cartan, Root(IntVec{0, 1})) - Weight::fundamental(2, 2));
    CHECK(o.nu[2] == Weight::fundamental(2, 1));
}

TEST_CASE("preceq") {
    auto o = ConvexOrder::adapted(a2_datum());
    CHECK(preceq(o, {0, 1, 0}, {1, 0, 1}));
    CHECK(preceq(o, {0, 1, 0}, {0, 1, 0}));
    CHECK_FALSE(preceq(o, {1, 0, 1}, {0, 1, 0}));
    CHECK_THROWS_AS(preceq(o, {0, 1, 0}, {0, 0, 1}), std::invalid_argument);
}

TEST_CASE("partition values carry their signedness") {
    auto o = ConvexOrder::adapted(a2_datum());
    auto p = make_kostant_partition(o, {1, 0, 1});
    auto n = make_kostant_partition(o, {0, 1, 0});
    CHECK(kp_weight(o, p) == Root(IntVec{1, 1}));
    CHECK(rho(o, p) == IntVec{1, 1, 1});
    CHECK(preceq(o, n, p));
    CHECK_THROWS_AS(make_kostant_partition(o, {1, -1, 1}), std::invalid_argument);
    auto s = make_kostant_partition(o, {1, -1, 1}, true);
    CHECK(s.is_signed);
    CHECK(kp_weight(o, s) == Root::zero(2));
    CHECK_THROWS_AS(make_kostant_partition(o, {1, 0}), std::invalid_argument);
}

TEST_CASE("order properties") {
    auto o = ConvexOrder::adapted(a2_datum());
    for (size_t k = 1; k <= 3; ++k) CHECK(o.pairing(k, k) == 1);
    auto rep = order_properties(o, Root(IntVec{2, 2}));
    CHECK(rep.all_pass());

    auto o3 = ConvexOrder::adapted(b2_datum());
    auto rep3 = order_properties(o3, Root(IntVec{1, 1, 1}));
    CHECK(rep3.all_pass());
}

TEST_CASE("rho transposes across commuting swaps") {
    // A3 with a height function whose adapted word contains a commuting pair
    QDatum q(cd("A3"), DiagramAutomorphism::identity(3), {0, -1, 0});
    auto o = ConvexOrder::adapted(q);
    size_t pos = 0;
    for (size_t k = 0; k + 1 < o.length(); ++k)
        if (q.cartan.entry(o.word[k], o.word[k + 1]) == 0) pos = k + 1;
    REQUIRE(pos > 0);
    WeylWord sw = o.word;
    std::swap(sw[pos - 1], sw[pos]);
    ConvexOrder os(q, sw);
    for (const auto& m : enumerate_kp(o, Root(IntVec{1, 1, 1}))) {
        IntVec ms = m;
        std::swap(ms[pos - 1], ms[pos]);
        IntVec expect = rho(o, m);
        std::swap(expect[pos - 1], expect[pos]);
        CHECK(rho(os, ms) == expect);
    }
}

TEST_CASE("rho injectivity, exact and on the signed box") {
    auto o = ConvexOrder::adapted(a2_datum());
    // exact on KP(beta) for |beta| <= 6
    for (Int x = 0; x <= 3; ++x)
        for (Int y = 0; y <= 3; ++y) {
            if (x + y == 0 || x + y > 6) continue;
            auto kps = enumerate_kp(o, Root(IntVec{x, y}));
            std::set<IntVec> images;
            for (auto& m : kps) images.insert(rho(o, m));
            CHECK(images.size() == kps.size());
        }
    auto rep = order_properties(o, Root(IntVec{1, 1}));
    CHECK(rep.rho_injective_box);
    auto o3 = ConvexOrder::adapted(b2_datum());
    CHECK(order_properties(o3, Root(IntVec{1, 1, 1})).rho_injective_box);
}

TEST_CASE("infeasible weights enumerate to nothing") {
    auto o = ConvexOrder::adapted(a2_datum());
    CHECK(enumerate_kp(o, Root(IntVec{-1, 0})).empty());
    CHECK(enumerate_kp(o, Root(IntVec{0, 0})) == std::vector<IntVec>{{0, 0, 0}});
}

TEST_CASE("the order depends only on the commutation class") {
    // two distinct adapted words of one datum induce the same order under the
    // identification of root multisets
    QDatum q(cd("A3"), DiagramAutomorphism::identity(3), {0, -1, 0});
    auto words = enumerate_adapted_words(q);
    REQUIRE(words.size() >= 2);
    ConvexOrder o1(q, words.front()), o2(q, words.back());
    REQUIRE(!(o1.word == o2.word));
    const Root beta(IntVec{1, 1, 1});
    auto kps = enumerate_kp(o1, beta);
    // translate a multiplicity vector from o1-indexing to o2-indexing
    auto translate = [&](const IntVec& m) {
        IntVec out(o2.length(), 0);
        for (size_t k = 0; k < m.size(); ++k) out[o2.index_of(o1.beta[k]) - 1] = m[k];
        return out;
    };
    for (auto& m : kps)
        for (auto& n : kps)
            CHECK(preceq(o1, m, n) == preceq(o2, translate(m), translate(n)));
}

TEST_CASE("minimal pairs") {
    auto o = ConvexOrder::adapted(a2_datum());
    CHECK(minimal_pairs(o, Root(IntVec{1, 1})) ==
          std::vector<std::pair<size_t, size_t>>{{1, 3}});
    CHECK(minimal_pairs(o, Root(IntVec{0, 1})).empty());
    CHECK_THROWS_AS(minimal_pairs(o, Root(IntVec{2, 1})), std::invalid_argument);

    auto o3 = ConvexOrder::adapted(b2_datum());
    // beta order: a1, a1+a2, a1+a2+a3, a3, a2+a3, a2
    // decompositions of the full root: (1,5) and (3-free?) brute force below
    auto mp = minimal_pairs(o3, Root(IntVec{1, 1, 1}));
    std::vector<std::pair<size_t, size_t>> decomp;
    for (size_t k = 1; k <= 6; ++k)
        for (size_t l = k + 1; l <= 6; ++l)
            if (o3.beta[k - 1] + o3.beta[l - 1] == Root(IntVec{1, 1, 1})) decomp.emplace_back(k, l);
    for (auto& [k, l] : mp) {
        bool nested = false;
        for (auto& [k2, l2] : decomp)
            if (k < k2 && l2 < l) nested = true;
        CHECK_FALSE(nested);
    }
    CHECK(!mp.empty());
    for (auto& [k, l] : mp) CHECK(o3.beta[k - 1] + o3.beta[l - 1] == Root(IntVec{1, 1, 1}));
}
