#include <plram/errors.hh>
#include <plram/ramsey_engine.hh>

#include "support/generators.hh"
#include "support/oracles.hh"

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <set>

using namespace plram;
using namespace plram::testing;
using std::vector;

namespace
{
    auto coloring_of(const PLStructure & pattern, const PLStructure & host, std::uint64_t r, vector<Color> values,
            Mode mode = Mode::strong) -> CopyColoring
    {
        return CopyColoring{r, enumerate_copies(pattern, host, mode), std::move(values)};
    }

    // Count of naturally labeled posets on n points weighted by linear
    // extensions of the remaining k - 1 orders, straight from subsets of pairs.
    auto count_labeled_structures(int n, int k) -> std::size_t
    {
        vector<std::pair<int, int>> pairs;
        for (int a = 0 ; a < n ; ++a)
            for (int b = a + 1 ; b < n ; ++b)
                pairs.emplace_back(a, b);
        std::size_t total = 0;
        for (std::size_t mask = 0 ; mask < (std::size_t{1} << pairs.size()) ; ++mask) {
            vector<vector<bool>> rel(n, vector<bool>(n, false));
            for (std::size_t p = 0 ; p < pairs.size() ; ++p)
                if (mask >> p & 1)
                    rel[pairs[p].first][pairs[p].second] = true;
            bool transitive = true;
            for (int a = 0 ; a < n ; ++a)
                for (int b = 0 ; b < n ; ++b)
                    for (int c = 0 ; c < n ; ++c)
                        if (rel[a][b] && rel[b][c] && ! rel[a][c])
                            transitive = false;
            if (! transitive)
                continue;
            vector<int> perm(n);
            std::iota(perm.begin(), perm.end(), 0);
            std::size_t extensions = 0;
            do {
                bool ok = true;
                for (int i = 0 ; i < n ; ++i)
                    for (int j = i + 1 ; j < n ; ++j)
                        if (rel[perm[j]][perm[i]])
                            ok = false;
                extensions += ok;
            } while (std::next_permutation(perm.begin(), perm.end()));
            std::size_t weight = 1;
            for (int i = 1 ; i < k ; ++i)
                weight *= extensions;
            total += weight;
        }
        return total;
    }

    // Copies of A in C lying inside the image of `copy`, by brute force.
    auto colors_inside(const Extraction & got, const ConstructionManifest & m, const CopyColoring & chi) -> std::set<Color>
    {
        std::set<int> inside(got.copy.image.begin(), got.copy.image.end());
        std::set<Color> seen;
        for (auto & image : brute_force_copies(m.a, m.host(), m.mode)) {
            bool contained = true;
            for (int e : image)
                contained = contained && inside.count(e);
            if (contained)
                seen.insert(*chi.color_of(Embedding{image}));
        }
        return seen;
    }
}

TEST_CASE("verify_witness examples")
{
    SUBCASE("two colors on a 2-chain defeat a 2-chain target")
    {
        auto result = verify_witness(chain(1), chain(2), chain(2), 2);
        CHECK(result.status == VerifyStatus::not_ramsey);
        REQUIRE(result.counterexample.has_value());
        CHECK(result.counterexample->values == vector<Color>{0, 1});
        CHECK(result.counterexample->copies == enumerate_copies(chain(1), chain(2)));
    }

    CHECK(verify_witness(chain(1), chain(2), chain(3), 2).status == VerifyStatus::ramsey);
    CHECK(verify_witness(chain(1), chain(3), chain(4), 2).status == VerifyStatus::not_ramsey);
    CHECK(verify_witness(chain(1), chain(3), chain(5), 2).status == VerifyStatus::ramsey);

    SUBCASE("a pattern equal to the target is Ramsey in the target itself")
    {
        Rng rng(47);
        for (int trial = 0 ; trial < 20 ; ++trial) {
            auto y = random_structure(rng, uniform(rng, 1, 4), uniform(rng, 1, 2));
            CHECK(verify_witness(y, y, y, 5).status == VerifyStatus::ramsey);
        }
    }

    SUBCASE("a host without a target copy fails with the all-zero coloring")
    {
        auto result = verify_witness(chain(1), chain(2), antichain(3), 2);
        CHECK(result.status == VerifyStatus::not_ramsey);
        CHECK(result.counterexample->values == vector<Color>{0, 0, 0});
    }

    SUBCASE("pairs in chains need six points for two colors")
    {
        CHECK(verify_witness(chain(2), chain(3), chain(5), 2).status == VerifyStatus::not_ramsey);
        CHECK(verify_witness(chain(2), chain(3), chain(6), 2).status == VerifyStatus::ramsey);
        CHECK(naive_verify(chain(2), chain(3), chain(6), 2, Mode::strong).ramsey);
        CHECK_FALSE(naive_verify(chain(2), chain(3), chain(5), 2, Mode::strong).ramsey);
    }

    CHECK_THROWS_AS(verify_witness(chain(1), chain(2, 2), chain(3), 2), ArityMismatch);
}

TEST_CASE("verify_witness agrees with exhaustive enumeration")
{
    Rng rng(53);
    int decided = 0;
    for (int trial = 0 ; trial < 400 ; ++trial) {
        int k = uniform(rng, 1, 2);
        auto x = random_structure(rng, uniform(rng, 1, 2), k);
        auto y = random_structure(rng, uniform(rng, 1, 3), k);
        auto z = random_structure(rng, uniform(rng, 1, 5), k, 0.5);
        auto mode = trial % 3 == 0 ? Mode::weak : Mode::strong;
        std::uint64_t r = uniform(rng, 1, 3);
        auto count = count_copies(x, z, mode);
        double space = std::pow(static_cast<double>(r), static_cast<double>(count));
        if (space > 4096)
            continue;
        auto expected = naive_verify(x, y, z, r, mode);
        auto got = verify_witness(x, y, z, r, mode);
        REQUIRE(got.status != VerifyStatus::unknown);
        CHECK((got.status == VerifyStatus::ramsey) == expected.ramsey);
        if (! expected.ramsey) {
            REQUIRE(got.counterexample.has_value());
            CHECK(got.counterexample->values == expected.first_bad_coloring);
            check_coloring(*got.counterexample, x, z, mode);
        }
        ++decided;
    }
    CHECK(decided > 200);
}

TEST_CASE("verify_witness is independent of the thread count")
{
    Rng rng(59);
    for (int trial = 0 ; trial < 60 ; ++trial) {
        int k = uniform(rng, 1, 2);
        auto x = random_structure(rng, uniform(rng, 1, 2), k);
        auto y = random_structure(rng, uniform(rng, 2, 3), k);
        auto z = random_structure(rng, uniform(rng, 3, 7), k, 0.6);
        std::uint64_t r = uniform(rng, 2, 3);
        auto one = verify_witness(x, y, z, r, Mode::strong, {1'000'000, 1});
        auto eight = verify_witness(x, y, z, r, Mode::strong, {1'000'000, 8});
        CHECK(one.status == eight.status);
        CHECK(one.counterexample == eight.counterexample);
        CHECK(one.nodes == eight.nodes);
    }
}

TEST_CASE("verify_witness node budget")
{
    auto result = verify_witness(chain(2), chain(3), chain(6), 2, Mode::strong, {3, 1});
    CHECK(result.status == VerifyStatus::unknown);
    CHECK(result.nodes == 3);
    CHECK_FALSE(result.counterexample.has_value());

    auto parallel = verify_witness(chain(2), chain(3), chain(6), 2, Mode::strong, {3, 8});
    CHECK(parallel.status == VerifyStatus::unknown);
    CHECK(parallel.nodes == 3);
}

TEST_CASE("generate_candidates")
{
    for (int n = 1 ; n <= 4 ; ++n)
        for (int k = 1 ; k <= 2 ; ++k) {
            auto candidates = generate_candidates(n, k, Family::all);
            CHECK(candidates.size() == count_labeled_structures(n, k));
            std::set<std::string> encodings;
            for (auto & s : candidates) {
                CHECK(validate_structure(s).ok());
                CHECK(canonical_form(s).structure == s);
                encodings.insert(canonical_encoding(s));
            }
            CHECK(encodings.size() == candidates.size());
            CHECK(std::is_sorted(candidates.begin(), candidates.end(), [] (auto & a, auto & b) {
                return canonical_encoding(a) < canonical_encoding(b);
            }));
        }

    auto chains = generate_candidates(4, 3, Family::chains);
    REQUIRE(chains.size() == 1);
    CHECK(chains[0] == chain(4, 3));

    CHECK(parse_family("all") == Family::all);
    CHECK(parse_family("chains") == Family::chains);
    CHECK_FALSE(parse_family("trees").has_value());
}

TEST_CASE("find_witness")
{
    SUBCASE("pigeonhole chains")
    {
        for (auto [m, r] : vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}}) {
            auto result = find_witness(chain(1), chain(m), r);
            CHECK(result.status == SearchStatus::found);
            REQUIRE(result.witness.has_value());
            CHECK(*result.witness == chain(r * (m - 1) + 1));
        }
    }

    SUBCASE("the full family finds the same chain")
    {
        WitnessSearchOptions options;
        options.family = Family::all;
        auto result = find_witness(chain(1), chain(3), 2, Mode::strong, options);
        CHECK(result.status == SearchStatus::found);
        CHECK(*result.witness == chain(5));
        CHECK(result.largest_size_tried == 5);
    }

    SUBCASE("a pattern equal to the target is its own witness")
    {
        auto result = find_witness(chain(2), chain(2), 4);
        CHECK(result.status == SearchStatus::found);
        CHECK(*result.witness == chain(2));
    }

    SUBCASE("size limit")
    {
        WitnessSearchOptions options;
        options.max_n = 4;
        auto result = find_witness(chain(1), chain(3), 2, Mode::strong, options);
        CHECK(result.status == SearchStatus::not_found);
        CHECK(result.largest_size_tried == 4);
    }

    SUBCASE("budget exhaustion stops the search")
    {
        WitnessSearchOptions options;
        options.verify.node_budget = 2;
        auto result = find_witness(chain(2), chain(3), 2, Mode::strong, options);
        CHECK(result.status == SearchStatus::unknown);
        CHECK_FALSE(result.witness.has_value());
    }
}

TEST_CASE("chain oracle")
{
    auto oracle = make_chain_oracle();

    auto one = oracle(chain(1), chain(3), 1, Mode::strong);
    CHECK(one.witness == chain(3));
    CHECK(one.tag == WitnessTag::asserted);

    auto rigid = oracle(chain(2), chain(2), 7, Mode::strong);
    CHECK(rigid.witness == chain(2));
    CHECK(rigid.tag == WitnessTag::asserted);

    auto pigeon = oracle(chain(1), chain(4), 5, Mode::strong);
    CHECK(pigeon.witness == chain(16));
    CHECK(pigeon.tag == WitnessTag::asserted);

    auto searched = oracle(chain(2), chain(3), 2, Mode::strong);
    CHECK(searched.witness == chain(6));
    CHECK(searched.tag == WitnessTag::verified);

    OracleOptions small;
    small.max_chain = 10;
    small.fallback.max_n = 5;
    CHECK_THROWS_AS(make_chain_oracle(small)(chain(1), chain(3), 5, Mode::strong), OracleFailure);
    CHECK_THROWS_AS(make_chain_oracle(small)(chain(2), chain(3), 2, Mode::strong), OracleFailure);
}

TEST_CASE("synthesize_construction")
{
    auto oracle = make_chain_oracle();

    SUBCASE("one order: the witness itself")
    {
        auto m = synthesize_construction(chain(1), chain(2), 2, oracle);
        CHECK(m.host() == chain(3));
    }

    SUBCASE("point and 2-chain with two orders")
    {
        auto m = synthesize_construction(chain(1, 2), chain(2, 2), 2, oracle);
        CHECK(m.plan.coordinates[1].witness == chain(3));
        CHECK(m.plan.coordinates[0].witness == chain(9));
        CHECK(m.host().size() == 27);
        CHECK(validate_structure(m.host()).ok());
    }

    SUBCASE("equal pattern and target")
    {
        PLStructure b{antichain(2).poset, {identity_order(2), LinearOrder{{1, 0}}}};
        auto m = synthesize_construction(b, b, 3, oracle);
        for (int i = 0 ; i < 2 ; ++i)
            CHECK(m.plan.coordinates[i].witness == slice_order(b, i));
        CHECK(count_copies(b, m.host()) >= 1);
    }

    CHECK_THROWS_AS(synthesize_construction(chain(1), chain(2, 2), 2, oracle), ArityMismatch);
}

TEST_CASE("extract_monochromatic_copy")
{
    auto oracle = make_chain_oracle();
    auto m = synthesize_construction(chain(1, 2), chain(2, 2), 2, oracle);
    auto points = enumerate_copies(m.a, m.host());
    REQUIRE(points.size() == 27);

    SUBCASE("constant colorings")
    {
        for (Color c : {Color{0}, Color{1}}) {
            auto chi = coloring_of(m.a, m.host(), 2, vector<Color>(27, c));
            auto got = extract_monochromatic_copy(m, chi);
            CHECK(got.color == c);
            CHECK(check_embedding(got.copy, m.b, m.host()));
            CHECK(colors_inside(got, m, chi) == std::set<Color>{c});
        }
    }

    SUBCASE("parity of the first coordinate")
    {
        vector<Color> values;
        for (auto & p : points)
            values.push_back(static_cast<Color>(m.joined.coordinate(p.image[0], 0) % 2));
        auto chi = coloring_of(m.a, m.host(), 2, values);
        auto got = extract_monochromatic_copy(m, chi);
        CHECK(check_embedding(got.copy, m.b, m.host()));
        CHECK(colors_inside(got, m, chi) == std::set<Color>{got.color});
        for (int e : got.copy.image)
            CHECK(m.joined.coordinate(e, 0) % 2 == got.color);
    }

    SUBCASE("random colorings, one and eight threads")
    {
        Rng rng(61);
        for (int trial = 0 ; trial < 100 ; ++trial) {
            vector<Color> values;
            for (int i = 0 ; i < 27 ; ++i)
                values.push_back(rng() % 2);
            auto chi = coloring_of(m.a, m.host(), 2, values);
            auto got = extract_monochromatic_copy(m, chi);
            CHECK(colors_inside(got, m, chi) == std::set<Color>{got.color});
            auto parallel = extract_monochromatic_copy(m, chi, 8);
            CHECK(parallel.copy == got.copy);
            CHECK(parallel.color == got.color);
        }
    }

    SUBCASE("one order matches the single-structure extraction")
    {
        auto single = synthesize_construction(chain(1), chain(3), 2, oracle);
        Rng rng(67);
        for (int trial = 0 ; trial < 50 ; ++trial) {
            vector<Color> values;
            for (int i = 0 ; i < single.host().size() ; ++i)
                values.push_back(rng() % 2);
            auto chi = coloring_of(single.a, single.host(), 2, values);
            auto got = extract_monochromatic_copy(single, chi);
            auto direct = extract_single_monochromatic(single.a, single.b, single.host(), values);
            REQUIRE(direct.has_value());
            CHECK(got.copy == direct->copy);
            CHECK(got.color == direct->color);
        }
    }

    SUBCASE("fewer colors than the construction handles")
    {
        auto chi = coloring_of(m.a, m.host(), 1, vector<Color>(27, 0));
        CHECK(extract_monochromatic_copy(m, chi).color == 0);
    }

    SUBCASE("incomplete colorings are rejected")
    {
        auto chi = coloring_of(m.a, m.host(), 2, vector<Color>(26, 0));
        chi.copies.pop_back();
        CHECK_THROWS(extract_monochromatic_copy(m, chi));
        auto wide = coloring_of(m.a, m.host(), 3, vector<Color>(27, 2));
        CHECK_THROWS(extract_monochromatic_copy(m, wide));
    }
}

TEST_CASE("copies_inside")
{
    auto inside = copies_inside(Embedding{{1, 3, 4}}, chain(2), chain(3));
    CHECK(inside == vector<Embedding>{Embedding{{1, 3}}, Embedding{{1, 4}}, Embedding{{3, 4}}});
}
