#pragma once

#include <plram/embeddings.hh>
#include <plram/join.hh>
#include <plram/orders.hh>
#include <plram/product_ramsey.hh>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace plram
{
    /// A coloring of every copy of some pattern in some host. `copies` is the
    /// lexicographically sorted output of enumerate_copies.
    struct CopyColoring
    {
        std::uint64_t colors;
        std::vector<Embedding> copies;
        std::vector<Color> values;

        auto color_of(const Embedding & copy) const -> std::optional<Color>;

        auto operator==(const CopyColoring &) const -> bool = default;
    };

    /// Checks totality against enumerate_copies(pattern, host, mode) and the color range.
    auto check_coloring(const CopyColoring & chi, const PLStructure & pattern, const PLStructure & host, Mode mode) -> void;

    enum class VerifyStatus
    {
        ramsey,
        not_ramsey,
        unknown
    };

    struct VerifyOptions
    {
        std::uint64_t node_budget = 100'000'000;
        unsigned threads = 1;
    };

    struct VerifyResult
    {
        VerifyStatus status;
        /// Present for not_ramsey: the lexicographically first coloring of
        /// binom(host, pattern) with no monochromatic target copy.
        std::optional<CopyColoring> counterexample;
        /// Color assignments tried; equals the budget when unknown.
        std::uint64_t nodes = 0;
    };

    /// Decides whether every r-coloring of binom(host, pattern) leaves some copy
    /// of target whose pattern copies are monochromatic, by searching for a
    /// coloring that avoids it. Results do not depend on the thread count.
    auto verify_witness(const PLStructure & pattern, const PLStructure & target, const PLStructure & host,
            std::uint64_t colors, Mode mode = Mode::strong, const VerifyOptions & options = {}) -> VerifyResult;

    enum class Family
    {
        chains,
        all
    };

    auto family_name(Family family) -> std::string;
    auto parse_family(const std::string & text) -> std::optional<Family>;

    struct WitnessSearchOptions
    {
        Family family = Family::chains;
        int max_n = 8;
        VerifyOptions verify;
    };

    enum class SearchStatus
    {
        found,
        not_found,
        unknown
    };

    struct WitnessSearchResult
    {
        SearchStatus status;
        std::optional<PLStructure> witness;
        std::size_t candidates_checked = 0;
        int largest_size_tried = 0;
        std::uint64_t nodes = 0;
    };

    /// Smallest structure of the family passing verify_witness, scanning by
    /// size and then by canonical encoding. Stops with unknown as soon as one
    /// candidate exhausts the node budget.
    auto find_witness(const PLStructure & pattern, const PLStructure & target, std::uint64_t colors,
            Mode mode = Mode::strong, const WitnessSearchOptions & options = {}) -> WitnessSearchResult;

    /// Byte string ordering candidates of equal size.
    auto canonical_encoding(const PLStructure & s) -> std::string;

    /// Pairwise non-isomorphic structures of size n with k orders, in canonical
    /// form, sorted by canonical_encoding.
    auto generate_candidates(int n, int k, Family family) -> std::vector<PLStructure>;

    struct OracleOptions
    {
        /// Largest chain the pigeonhole shortcut may return.
        int max_chain = 4096;
        WitnessSearchOptions fallback;
    };

    /// Answers from one color, rigidity (pattern isomorphic to target) and the
    /// pigeonhole chain for a single-point pattern inside a chain target;
    /// everything else goes to find_witness.
    auto make_chain_oracle(const OracleOptions & options = {}) -> WitnessOracle;

    /// Always searches.
    auto make_search_oracle(const WitnessSearchOptions & options = {}) -> WitnessOracle;

    struct ConstructionManifest
    {
        Mode mode;
        std::uint64_t colors;
        PLStructure a;
        PLStructure b;
        ProductPlan plan;
        JoinedStructure joined;

        auto arity() const -> int { return a.arity(); }
        auto host() const -> const PLStructure & { return joined.product; }
    };

    auto synthesize_construction(const PLStructure & a, const PLStructure & b, std::uint64_t colors,
            const WitnessOracle & oracle, Mode mode = Mode::strong, const PlanOptions & options = {}) -> ConstructionManifest;

    /// Rebuilds a manifest from known witnesses.
    auto manifest_from_witnesses(const PLStructure & a, const PLStructure & b, const std::vector<PLStructure> & witnesses,
            std::uint64_t colors, Mode mode = Mode::strong, const PlanOptions & options = {}) -> ConstructionManifest;

    struct Extraction
    {
        /// Copy of B in C.
        Embedding copy;
        Color color;
        /// Copies of each slice of B in the matching witness.
        std::vector<Embedding> components;
    };

    /// Pulls chi back to the product of the witnesses' copy sets through the
    /// canonical copies, extracts a monochromatic product, and assembles the
    /// matching copy of B. Every copy of A inside the result has `color`.
    auto extract_monochromatic_copy(const ConstructionManifest & manifest, const CopyColoring & chi,
            unsigned threads = 1) -> Extraction;

    /// The copies of `pattern` inside the copy `outer` of `middle`, as copies in the host.
    auto copies_inside(const Embedding & outer, const PLStructure & pattern, const PLStructure & middle,
            Mode mode = Mode::strong) -> std::vector<Embedding>;
}
