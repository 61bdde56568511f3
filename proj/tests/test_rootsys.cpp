#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "qcombinat/rootsys.hpp"

using namespace qcombinat;

namespace {
CartanData cd(const char* t) { return CartanData::finite(TypeLabel::parse(t)); }

struct XorShift {
    std::uint64_t s;
    explicit XorShift(std::uint64_t seed) : s(seed ? seed : 1) {}
    std::uint64_t operator()() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
};
}  // namespace

TEST_CASE("type labels parse and reject") {
    CHECK(TypeLabel::parse("A2").str() == "A2");
    CHECK(TypeLabel::parse("D11").rank == 11);
    CHECK_THROWS_AS(TypeLabel::parse("E9"), std::invalid_argument);
    CHECK_THROWS_AS(TypeLabel::parse("H3"), std::invalid_argument);
    CHECK_THROWS_AS(TypeLabel::parse("B1"), std::invalid_argument);
}

TEST_CASE("Cartan matrices and symmetrizers") {
    auto b2 = cd("B2");
    CHECK(b2.a == IntMat{{2, -1}, {-2, 2}});
    CHECK(b2.sym == IntVec{2, 1});
    auto c3 = cd("C3");
    CHECK(c3.entry(2, 3) == -2);
    CHECK(c3.entry(3, 2) == -1);
    CHECK(c3.sym == IntVec{1, 1, 2});
    auto g2 = cd("G2");
    CHECK(g2.a == IntMat{{2, -1}, {-3, 2}});
    CHECK(g2.sym == IntVec{3, 1});
    auto f4 = cd("F4");
    CHECK(f4.entry(2, 3) == -1);
    CHECK(f4.entry(3, 2) == -2);
    CHECK(f4.sym == IntVec{2, 2, 1, 1});
    // DA symmetric for every supported type
    for (const char* t : {"A4", "B3", "C4", "D5", "E6", "E7", "E8", "F4", "G2"}) {
        auto c = cd(t);
        for (int i = 0; i < c.n; ++i)
            for (int j = 0; j < c.n; ++j) CHECK(c.sym[i] * c.a[i][j] == c.sym[j] * c.a[j][i]);
    }
}

TEST_CASE("reflect on fundamental weights") {
    auto a2 = cd("A2");
    // s_1(L1) = L1 - alpha_1 = -L1 + L2
    CHECK(reflect(a2, 1, Weight::fundamental(2, 1)) == Weight(IntVec{-1, 1}));
    // s_1(L2) = L2
    CHECK(reflect(a2, 1, Weight::fundamental(2, 2)) == Weight(IntVec{0, 1}));
    CHECK_THROWS_AS(reflect(a2, 3, Weight::zero(2)), std::out_of_range);
}

TEST_CASE("reflect on roots, hand example") {
    auto a3 = cd("A3");
    // s_2(alpha_2 + alpha_3) = alpha_3, and via the matrix action on weights
    Root in(IntVec{0, 1, 1});
    Root out = reflect_root(a3, 2, in);
    CHECK(out == Root(IntVec{0, 0, 1}));
    CHECK(weight_of_root(a3, out) == reflect(a3, 2, weight_of_root(a3, in)));
}

TEST_CASE("reflect is an involution and preserves the form") {
    XorShift rng(11);
    for (const char* t : {"A3", "D4", "B3", "G2"}) {
        auto c = cd(t);
        for (int rep = 0; rep < 50; ++rep) {
            Weight lam(IntVec(c.n)), dummy(IntVec(c.n));
            Root beta(IntVec(c.n));
            for (int j = 0; j < c.n; ++j) {
                lam.fw[j] = static_cast<Int>(rng() % 9) - 4;
                beta.rc[j] = static_cast<Int>(rng() % 9) - 4;
            }
            const int i = 1 + static_cast<int>(rng() % c.n);
            CHECK(reflect(c, i, reflect(c, i, lam)) == lam);
            CHECK(reflect_root(c, i, reflect_root(c, i, beta)) == beta);
            CHECK(pairing(c, reflect(c, i, lam), reflect_root(c, i, beta)) == pairing(c, lam, beta));
        }
    }
}

TEST_CASE("bilinear normalization (Lambda_i, alpha_j)") {
    for (const char* t : {"A3", "D4", "E6"}) {
        auto c = cd(t);
        for (int i = 1; i <= c.n; ++i)
            for (int j = 1; j <= c.n; ++j)
                CHECK(pairing(c, Weight::fundamental(c.n, i), Root::simple(c.n, j)) ==
                      (i == j ? 1 : 0));
    }
}

TEST_CASE("positive roots") {
    auto a2roots = positive_roots(cd("A2"));
    CHECK(a2roots.size() == 3);
    std::set<Root> expect{Root(IntVec{1, 0}), Root(IntVec{0, 1}), Root(IntVec{1, 1})};
    CHECK(std::set<Root>(a2roots.begin(), a2roots.end()) == expect);
    CHECK(positive_roots(cd("A3")).size() == 6);
    CHECK(positive_roots(cd("D4")).size() == 12);
    CHECK(positive_roots(cd("G2")).size() == 6);
    CHECK(positive_roots(cd("F4")).size() == 24);
    CHECK(positive_roots(cd("E6")).size() == 36);
    // counts against the closed-form sizes
    CHECK(positive_roots(cd("A5")).size() == 5 * 6 / 2);
    CHECK(positive_roots(cd("B4")).size() == 16);
    CHECK(positive_roots(cd("C5")).size() == 25);
    CHECK(positive_roots(cd("D5")).size() == 20);
    CHECK(positive_roots(cd("E7")).size() == 63);
    CHECK(positive_roots(cd("E8")).size() == 120);
}

TEST_CASE("non-finite types are rejected by the closure") {
    // the affine A1 matrix has an infinite reflection closure
    auto aff = CartanData::from_matrix(TypeLabel{'A', 2}, IntMat{{2, -2}, {-2, 2}});
    CHECK_THROWS_AS(positive_roots(aff), std::invalid_argument);
}

TEST_CASE("reduced words of w0") {
    auto a2 = cd("A2");
    CHECK(is_reduced_word_of_w0(a2, {2, 1, 2}));
    CHECK_FALSE(is_reduced_word_of_w0(a2, {1, 1, 2}));
    CHECK_FALSE(is_reduced_word_of_w0(a2, {1, 2}));
    CHECK(is_reduced_word_of_w0(cd("A3"), {1, 2, 3, 2, 1, 2}));
    for (const char* t : {"A1", "A4", "B3", "D4", "G2", "F4"}) {
        auto c = cd(t);
        auto w = w0_word(c);
        CHECK(is_reduced_word_of_w0(c, w));
        CHECK(is_convex_listing(beta_sequence(c, w)));
    }
}

TEST_CASE("w0 star involution") {
    auto sa2 = w0_star(cd("A2"));
    CHECK(sa2.at(1) == 2);
    CHECK(sa2.at(2) == 1);
    auto sa3 = w0_star(cd("A3"));
    CHECK(sa3.at(1) == 3);
    CHECK(sa3.at(2) == 2);
    CHECK(sa3.at(3) == 1);
    for (auto& [k, v] : w0_star(cd("D4"))) CHECK(k == v);
    auto se6 = w0_star(cd("E6"));
    CHECK(se6.at(3) == 3);  // the trivalent vertex is fixed
    CHECK(se6.at(6) == 6);
    CHECK(se6.at(1) == 5);
}

TEST_CASE("dual Coxeter numbers") {
    CHECK(dual_coxeter(TypeLabel::parse("A2")) == 3);
    CHECK(dual_coxeter(TypeLabel::parse("B2")) == 3);
    CHECK(dual_coxeter(TypeLabel::parse("G2")) == 4);
    CHECK(dual_coxeter(TypeLabel::parse("B3")) == 5);
    CHECK(dual_coxeter(TypeLabel::parse("C3")) == 4);
    CHECK(dual_coxeter(TypeLabel::parse("F4")) == 9);
    CHECK(dual_coxeter(TypeLabel::parse("E6")) == 12);
    CHECK(dual_coxeter(TypeLabel::parse("D5")) == 8);
}

TEST_CASE("root lattice round trip") {
    auto d4 = cd("D4");
    XorShift rng(5);
    for (int rep = 0; rep < 30; ++rep) {
        Root r(IntVec(4));
        for (auto& v : r.rc) v = static_cast<Int>(rng() % 7) - 3;
        auto back = root_of_weight(d4, weight_of_root(d4, r));
        REQUIRE(back.has_value());
        CHECK(*back == r);
    }
    // a weight outside the root lattice
    CHECK_FALSE(root_of_weight(d4, Weight::fundamental(4, 1)).has_value());
}
