#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "frobmod/errors.hpp"
#include "frobmod/stable.hpp"
#include "test_util.hpp"

using namespace frob;
using testutil::Rng;

namespace {

Ring f2 = RingDescriptor::prime_field(2);
Ring f3 = RingDescriptor::prime_field(3);
Ring f4 = RingDescriptor::ext_field(2, 2);
Ring f9 = RingDescriptor::ext_field(3, 2);

FrobModule f3_module() {
    Mat A(f3, 2, 2);
    A.at(0, 1) = RingScalar::one(f3);
    A.at(1, 0) = RingScalar::one(f3);
    A.at(1, 1) = RingScalar::one(f3);
    return FrobModule(f3, 2, 1, A);
}

// ---- independent brute-force machinery: subspaces as explicit vector sets ----

using VecKey = std::vector<i64>;

VecKey key_of(const Mat& v) {
    VecKey k;
    for (int i = 0; i < v.rows(); ++i) k.push_back(v.at(i, 0).index());
    return k;
}

std::vector<Mat> all_vectors(const Ring& field, int n) {
    i64 q = field->field_size();
    i64 total = 1;
    for (int i = 0; i < n; ++i) total *= q;
    std::vector<Mat> out;
    for (i64 code = 0; code < total; ++code) {
        Mat v(field, n, 1);
        i64 c = code;
        for (int i = 0; i < n; ++i) {
            v.at(i, 0) = RingScalar::from_index(field, c % q);
            c /= q;
        }
        out.push_back(std::move(v));
    }
    return out;
}

std::set<VecKey> span_set(const Ring& field, int n, const std::vector<Mat>& gens) {
    i64 q = field->field_size();
    i64 combos = 1;
    for (size_t i = 0; i < gens.size(); ++i) combos *= q;
    std::set<VecKey> out;
    for (i64 code = 0; code < combos; ++code) {
        Mat acc(field, n, 1);
        i64 c = code;
        for (const Mat& g : gens) {
            acc = acc + g.scaled(RingScalar::from_index(field, c % q));
            c /= q;
        }
        out.insert(key_of(acc));
    }
    return out;
}

std::vector<std::set<VecKey>> all_subspaces_brute(const Ring& field, int n) {
    auto vecs = all_vectors(field, n);
    std::set<std::set<VecKey>> seen;
    // spans of all tuples of up to n vectors
    std::vector<size_t> idx;
    std::function<void(size_t, std::vector<Mat>&)> rec = [&](size_t start, std::vector<Mat>& cur) {
        seen.insert(span_set(field, n, cur));
        if (cur.size() == (size_t)n) return;
        for (size_t i = start; i < vecs.size(); ++i) {
            cur.push_back(vecs[i]);
            rec(i + 1, cur);
            cur.pop_back();
        }
    };
    std::vector<Mat> cur;
    rec(0, cur);
    return {seen.begin(), seen.end()};
}

bool stable_brute(const FrobModule& M, int r, const std::set<VecKey>& W,
                  const std::vector<Mat>& vecs) {
    for (const Mat& v : vecs) {
        if (!W.count(key_of(v))) continue;
        if (!W.count(key_of(apply(M, v, r)))) return false;
    }
    return true;
}

std::set<VecKey> subspace_to_set(const Subspace& s) {
    std::vector<Mat> gens;
    for (int j = 0; j < s.dim(); ++j) gens.push_back(s.basis.col(j));
    return span_set(s.field, s.n, gens);
}

}  // namespace

TEST_CASE("fixed points: identity and the F_3 instance") {
    FrobModule Id(f3, 2, 1, Mat::identity(f3, 2));
    auto fs = fixed_points(Id, 1);
    CHECK(fs.fp_dim == 2);
    CHECK(fs.count() == 9);  // cubing fixes F_3
    for (const auto& v : fs.fp_basis) CHECK(is_fixed_vector(Id, v, 1));

    auto M = f3_module();
    auto fs3 = fixed_points(M, 1);
    CHECK(fs3.fp_dim == 0);  // det(A - I) = -1 != 0
    CHECK(fs3.count() == 1);
}

TEST_CASE("fixed points agree with brute force") {
    Rng rng(31);
    for (const Ring& K : {f2, f3, f4, f9}) {
        auto vecs = all_vectors(K, 2);
        for (int trial = 0; trial < 12; ++trial) {
            Mat A = testutil::random_mat(rng, K, 2, 2);
            FrobModule M(K, 2, 1, A);
            int r = 1 + trial % 2;
            i64 count = 0;
            for (const Mat& v : vecs)
                if (apply(M, v, r) == v) ++count;
            auto fs = fixed_points(M, r);
            CHECK(fs.count() == count);
            for (const auto& v : fs.fp_basis) CHECK(is_fixed_vector(M, v, r));
            // closed under scaling by the fixed subfield
            i64 g = fs.fixed_subfield->m();
            CHECK(fs.fp_dim % g == 0);
            CHECK((i64)fs.subfield_basis.size() * g == fs.fp_dim);
        }
    }
    // n = 3 over F_3
    auto vecs3 = all_vectors(f3, 3);
    for (int trial = 0; trial < 6; ++trial) {
        Mat A = testutil::random_mat(rng, f3, 3, 3);
        FrobModule M(f3, 3, 1, A);
        i64 count = 0;
        for (const Mat& v : vecs3)
            if (apply(M, v, 1) == v) ++count;
        CHECK(fixed_points(M, 1).count() == count);
    }
}

TEST_CASE("descent preimage: trivial cases and the F_3 instance") {
    auto M = f3_module();
    auto full = full_subspace(f3, 2);
    auto zero = zero_subspace(f3, 2);
    CHECK(subspace_eq(descent_preimage(M, full, 1), full));
    CHECK(subspace_eq(descent_preimage(M, zero, 1), zero));
    // preimage of span{e1}: A v in span{e1} forces v1 + v2 = 0, i.e. span{(1,2)}
    Mat e1(f3, 2, 1);
    e1.at(0, 0) = RingScalar::one(f3);
    auto pre = descent_preimage(M, subspace_from_columns(f3, 2, e1), 1);
    CHECK(pre.dim() == 1);
    CHECK(pre.basis.at(0, 0).as_prime() == 1);
    CHECK(pre.basis.at(1, 0).as_prime() == 2);
}

TEST_CASE("descent preimage agrees with brute force") {
    Rng rng(32);
    for (const Ring& K : {f3, f4}) {
        auto vecs = all_vectors(K, 2);
        auto subs = all_subspaces_brute(K, 2);
        for (int trial = 0; trial < 6; ++trial) {
            Mat A = testutil::random_invertible(rng, K, 2);
            FrobModule M(K, 2, 1, A);
            for (const auto& W : subs) {
                // brute preimage set
                std::set<VecKey> pre_set;
                for (const Mat& v : vecs)
                    if (W.count(key_of(apply(M, v, 1)))) pre_set.insert(key_of(v));
                // computed preimage: reconstruct N from any spanning subset
                std::vector<Mat> gens;
                for (const Mat& v : vecs)
                    if (W.count(key_of(v))) gens.push_back(v);
                Mat G(K, 2, (int)gens.size());
                for (size_t j = 0; j < gens.size(); ++j)
                    for (int i = 0; i < 2; ++i) G.at(i, (int)j) = gens[j].at(i, 0);
                Subspace N = subspace_from_columns(K, 2, G);
                CHECK(subspace_to_set(descent_preimage(M, N, 1)) == pre_set);
            }
        }
    }
}

TEST_CASE("descent and image are mutually inverse (unit modules)") {
    Rng rng(33);
    for (const Ring& K : {f3, f4}) {
        auto subs = all_subspaces_brute(K, 2);
        for (int trial = 0; trial < 5; ++trial) {
            Mat A = testutil::random_invertible(rng, K, 2);
            FrobModule M(K, 2, 1, A);
            for (const auto& Wset : subs) {
                std::vector<Mat> gens;
                for (const Mat& v : all_vectors(K, 2))
                    if (Wset.count(key_of(v))) gens.push_back(v);
                Mat G(K, 2, (int)gens.size());
                for (size_t j = 0; j < gens.size(); ++j)
                    for (int i = 0; i < 2; ++i) G.at(i, (int)j) = gens[j].at(i, 0);
                Subspace N = subspace_from_columns(K, 2, G);
                CHECK(subspace_eq(frob_image_subspace(M, descent_preimage(M, N, 1), 1), N));
                CHECK(subspace_eq(descent_preimage(M, frob_image_subspace(M, N, 1), 1), N));
            }
        }
    }
}

TEST_CASE("stable subspaces of the F_3 instance") {
    auto M = f3_module();
    auto r1 = enumerate_stable_subspaces(M, 1);
    REQUIRE(r1.size() == 2);  // {0, full}: simple
    CHECK(r1[0].dim() == 0);
    CHECK(r1[1].dim() == 2);
    CHECK(is_simple(M, 1));
    // F^4 = -id: every subspace of F_3^2 is stable, 6 in total
    auto r4 = enumerate_stable_subspaces(M, 4);
    CHECK(r4.size() == 6);
    CHECK(!is_simple(M, 4));
    // rank-1 identity over F_2
    FrobModule I1(f2, 1, 1, Mat::identity(f2, 1));
    CHECK(enumerate_stable_subspaces(I1, 1).size() == 2);
    CHECK(is_simple(I1, 1));
}

TEST_CASE("extension to F_9: simple at twist 1, splits at twist 2") {
    // Galois-twisted base change: A^2 = A + I has irreducible characteristic
    // polynomial t^2+1 over F_3, so no stable lines exist over F_9 at r = 1;
    // the first splitting happens at r = 2 where A_2 = A^2 acts linearly
    auto M9 = extend_scalars(f3_module(), f9);
    auto vecs = all_vectors(f9, 2);
    int stable_lines = 0;
    for (const Mat& v : vecs) {
        if (v.is_zero()) continue;
        auto line = span_set(f9, 2, {v});
        if (stable_brute(M9, 1, line, vecs)) ++stable_lines;
    }
    CHECK(stable_lines == 0);  // brute-force ground truth
    CHECK(is_simple(M9, 1));
    CHECK(enumerate_stable_subspaces(M9, 1).size() == 2);
    CHECK(!is_simple(M9, 2));
    CHECK(composition_series(M9, 2).length == 2);
}

TEST_CASE("enumeration agrees with the brute-force oracle on all invertible 2x2") {
    for (const Ring& K : {f2, f3}) {
        auto vecs = all_vectors(K, 2);
        auto subs = all_subspaces_brute(K, 2);
        i64 q = K->field_size();
        i64 total = 1;
        for (int i = 0; i < 4; ++i) total *= q;
        for (i64 code = 0; code < total; ++code) {
            Mat A(K, 2, 2);
            i64 c = code;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    A.at(i, j) = RingScalar::from_index(K, c % q);
                    c /= q;
                }
            if (A.det().is_zero()) continue;
            FrobModule M(K, 2, 1, A);
            std::set<std::set<VecKey>> oracle;
            for (const auto& W : subs)
                if (stable_brute(M, 1, W, vecs)) oracle.insert(W);
            std::set<std::set<VecKey>> computed;
            for (const auto& s : enumerate_stable_subspaces(M, 1))
                computed.insert(subspace_to_set(s));
            CHECK(oracle == computed);
        }
    }
}

TEST_CASE("compose_twist has identical stable-subspace semantics") {
    Rng rng(34);
    for (int trial = 0; trial < 10; ++trial) {
        Mat A = testutil::random_mat(rng, f3, 2, 2);
        FrobModule M(f3, 2, 1, A);
        int r = 2 + trial % 3;
        auto direct = enumerate_stable_subspaces(M, r);
        auto via_twist = enumerate_stable_subspaces(compose_twist(M, r), 1);
        REQUIRE(direct.size() == via_twist.size());
        for (size_t i = 0; i < direct.size(); ++i)
            CHECK(subspace_eq(direct[i], via_twist[i]));
    }
}

TEST_CASE("composition series: structure and Jordan-Holder at desk scale") {
    // simple module: length 1
    auto M = f3_module();
    auto cs1 = composition_series(M, 1);
    CHECK(cs1.length == 1);
    CHECK(cs1.chain.size() == 2);
    // identity, n = 3: a full flag, length 3
    FrobModule I3(f3, 3, 1, Mat::identity(f3, 3));
    auto cs3 = composition_series(I3, 1);
    CHECK(cs3.length == 3);
    // twist 4 on the F_3 instance: -id, so the series has length 2
    auto cs4 = composition_series(M, 4);
    CHECK(cs4.length == 2);

    Rng rng(35);
    for (int trial = 0; trial < 10; ++trial) {
        const Ring& K = trial % 2 ? f3 : f4;
        Mat A = testutil::random_invertible(rng, K, trial % 3 == 2 ? 3 : 2);
        FrobModule N(K, A.rows(), 1, A);
        int r = 1 + trial % 2;
        auto cs = composition_series(N, r);
        // chain: strict inclusions from zero to full, all stable
        CHECK(cs.chain.front().dim() == 0);
        CHECK(cs.chain.back().dim() == N.n());
        auto stable = enumerate_stable_subspaces(N, r);
        for (size_t i = 0; i < cs.chain.size(); ++i) {
            if (i > 0) {
                CHECK(cs.chain[i - 1].dim() < cs.chain[i].dim());
                CHECK(subspace_leq(cs.chain[i - 1], cs.chain[i]));
            }
            bool found = false;
            for (const auto& s : stable) found = found || subspace_eq(s, cs.chain[i]);
            CHECK(found);
        }
        // each quotient is simple as a twist-er module
        for (const Mat& B : cs.quotient_data) {
            FrobModule Q(K, B.rows(), N.e() * r, B);
            CHECK(is_simple(Q, 1));
        }
        // Jordan-Holder: every maximal chain in the stable lattice has the
        // same length (exhaustive search)
        std::function<int(const Subspace&)> longest = [&](const Subspace& from) -> int {
            int best = 0;
            bool maximal = true;
            for (const auto& s : stable) {
                if (s.dim() <= from.dim() || !subspace_leq(from, s)) continue;
                maximal = false;
            }
            if (maximal) return 0;
            // over all minimal covers
            for (const auto& s : stable) {
                if (s.dim() <= from.dim() || !subspace_leq(from, s)) continue;
                bool is_cover = true;
                for (const auto& t : stable) {
                    if (t.dim() <= from.dim() || t.dim() >= s.dim()) continue;
                    if (subspace_leq(from, t) && subspace_leq(t, s) && t.dim() > from.dim() &&
                        t.dim() < s.dim())
                        is_cover = false;
                }
                if (is_cover) {
                    int len = 1 + longest(s);
                    if (best == 0)
                        best = len;
                    else
                        CHECK(best == len);  // all maximal chains agree
                }
            }
            return best;
        };
        CHECK(longest(zero_subspace(K, N.n())) == cs.length);
    }
}

TEST_CASE("stability is conjugation-invariant; base change preserves counts") {
    Rng rng(36);
    for (int trial = 0; trial < 10; ++trial) {
        const Ring& K = trial % 2 ? f9 : f4;
        Mat A = testutil::random_mat(rng, K, 2, 2);
        FrobModule M(K, 2, 1, A);
        Mat C = testutil::random_invertible(rng, K, 2);
        FrobModule Mc(K, 2, 1, change_basis(M, C, 1));
        CHECK(fixed_points(M, 1).count() == fixed_points(Mc, 1).count());
        auto s1 = enumerate_stable_subspaces(M, 1);
        auto s2 = enumerate_stable_subspaces(Mc, 1);
        CHECK(s1.size() == s2.size());
        CHECK(is_unit(M).unit == is_unit(Mc).unit);
        // W stable for M <=> C^{-1} W stable for the conjugated module
        Mat Cinv = C.inverse();
        for (const auto& w : s1) {
            Subspace moved = subspace_from_columns(K, 2, Cinv * w.basis);
            bool found = false;
            for (const auto& t : s2) found = found || subspace_eq(t, moved);
            CHECK(found);
        }
    }
}

TEST_CASE("geometric length: identities and small modules") {
    FrobModule I2(f3, 2, 1, Mat::identity(f3, 2));
    auto gl = geometric_length(I2);
    CHECK(gl.length == 2);
    CHECK(gl.witness_s == 1);
    REQUIRE(gl.fixed_basis.has_value());
    for (const auto& v : *gl.fixed_basis) CHECK(is_fixed_vector(I2, v, 1));

    // any rank-1 unit module over F_p has geometric length 1; witness varies
    Mat c(f3, 1, 1, {RingScalar::from_int(f3, 1)});
    auto gl1 = geometric_length(FrobModule(f3, 1, 1, c));
    CHECK(gl1.length == 1);
    CHECK(gl1.witness_s == 1);
}

TEST_CASE("geometric length of the F_3 instance: flag at s=4, fixed basis at s=8") {
    auto M = f3_module();
    // no fixed points below s = 8 (A has multiplicative order 8), but A^4 = -I
    // makes every subspace over F_{3^4} stable, so the length flag appears at 4
    auto gl = geometric_length(M);
    CHECK(gl.length == 2);
    CHECK(gl.witness_s == 4);
    CHECK(!gl.fixed_basis.has_value());
    auto db = dieudonne_basis(M, 1);
    CHECK(db.witness_s == 8);
    FrobModule M8 = extend_scalars(M, db.field);
    Mat acc(db.field, 2, 0);
    for (const auto& v : db.basis) {
        CHECK(is_fixed_vector(M8, v, 1));
        acc = Mat::hstack(acc, v);
    }
    CHECK(rank_of(acc) == 2);
}

TEST_CASE("dieudonne basis over F_2: the swap matrix splits over F_4") {
    Mat A(f2, 2, 2);
    A.at(0, 1) = RingScalar::one(f2);
    A.at(1, 0) = RingScalar::one(f2);
    FrobModule M(f2, 2, 1, A);
    auto db = dieudonne_basis(M, 1);
    CHECK(db.witness_s == 2);
    FrobModule M4 = extend_scalars(M, db.field);
    Mat acc(db.field, 2, 0);
    for (const auto& v : db.basis) {
        CHECK(is_fixed_vector(M4, v, 1));
        acc = Mat::hstack(acc, v);
    }
    CHECK(rank_of(acc) == 2);
    // (1,1) is fixed already over F_2
    Mat ones(f2, 2, 1);
    ones.at(0, 0) = RingScalar::one(f2);
    ones.at(1, 0) = RingScalar::one(f2);
    CHECK(is_fixed_vector(M, ones, 1));
}

TEST_CASE("geometric length equals the rank for random unit modules over F_2") {
    Rng rng(37);
    Limits lim;  // s_max = 12 suffices for p = 2, n <= 3 (orders divide 7!)
    for (int trial = 0; trial < 25; ++trial) {
        int n = 1 + trial % 3;
        Mat A = testutil::random_invertible(rng, f2, n);
        FrobModule M(f2, n, 1, A);
        auto gl = geometric_length(M, lim);
        CHECK(gl.length == n);
        CHECK(gl.witness_s <= 7);
    }
}

TEST_CASE("length is monotone along twist composition") {
    Rng rng(38);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 1 + trial % 3;
        Mat A = testutil::random_invertible(rng, f3, n);
        FrobModule M(f3, n, 1, A);
        int l1 = composition_series(M, 1).length;
        int l2 = composition_series(M, 2).length;
        CHECK(l1 <= l2);
        CHECK(l2 <= n);
    }
}

TEST_CASE("scalar extension never decreases length") {
    Rng rng(39);
    for (int trial = 0; trial < 15; ++trial) {
        int n = 1 + trial % 3;
        Mat A = testutil::random_invertible(rng, f3, n);
        FrobModule M(f3, n, 1, A);
        FrobModule M9 = extend_scalars(M, f9);
        CHECK(composition_series(M, 1).length <= composition_series(M9, 1).length);
    }
}

TEST_CASE("unsupported rings are rejected") {
    Ring poly3 = RingDescriptor::poly_ring(3);
    Mat A = Mat::identity(poly3, 2);
    FrobModule M(poly3, 2, 1, A);
    CHECK_THROWS_AS(fixed_points(M, 1), FrobError);
    CHECK_THROWS_AS(enumerate_stable_subspaces(M, 1), FrobError);
    CHECK_THROWS_AS(geometric_length(M), FrobError);
    // enumeration cap
    Limits tiny;
    tiny.enumeration_cap = 3;
    auto M3 = f3_module();
    CHECK_THROWS_AS(enumerate_stable_subspaces(M3, 1, tiny), FrobError);
    // non-unit module refused by descent and geometric length
    Mat Z(f3, 2, 2);
    FrobModule MZ(f3, 2, 1, Z);
    CHECK_THROWS_AS(descent_preimage(MZ, full_subspace(f3, 2), 1), FrobError);
    CHECK_THROWS_AS(geometric_length(MZ), FrobError);
}
