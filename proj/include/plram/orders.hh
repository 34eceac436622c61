#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace plram
{
    /// A strict partial order on 0..size-1, stored transitively closed as a
    /// row-major size x size matrix. relation[a * size + b] means a is below b.
    struct StrictPoset
    {
        int size = 0;
        std::vector<std::uint8_t> relation;

        auto below(int a, int b) const -> bool
        {
            return relation[static_cast<std::size_t>(a) * size + b];
        }

        auto comparable(int a, int b) const -> bool
        {
            return below(a, b) || below(b, a);
        }

        auto operator==(const StrictPoset &) const -> bool = default;
    };

    /// A total order given by positions: rank[e] is the position of e, ascending.
    struct LinearOrder
    {
        std::vector<int> rank;

        auto precedes(int a, int b) const -> bool
        {
            return rank[a] < rank[b];
        }

        /// Elements listed from smallest to largest.
        auto ascending() const -> std::vector<int>;

        auto operator==(const LinearOrder &) const -> bool = default;
    };

    /// A finite strict poset together with k linear orders, each meant to
    /// extend the poset. The value may be invalid; see validate_structure and
    /// make_structure.
    struct PLStructure
    {
        StrictPoset poset;
        std::vector<LinearOrder> lins;

        auto size() const -> int { return poset.size; }
        auto arity() const -> int { return static_cast<int>(lins.size()); }

        auto operator==(const PLStructure &) const -> bool = default;
    };

    /// Smallest transitive relation on 0..n-1 containing every pair. Throws
    /// CycleError naming one cycle when that relation is not irreflexive.
    auto transitive_closure_strict(int n, std::span<const std::pair<int, int>> pairs) -> StrictPoset;

    /// Cover pairs of a closed relation, sorted.
    auto transitive_reduction(const StrictPoset & poset) -> std::vector<std::pair<int, int>>;

    auto linear_order_from_ascending(std::span<const int> ascending) -> LinearOrder;
    auto identity_order(int n) -> LinearOrder;

    enum class ViolationKind
    {
        empty_structure,
        no_linear_orders,
        matrix_shape,
        reflexive,
        antisymmetry,
        transitivity,
        not_permutation,
        extension
    };

    /// One defect. `order` is one-based (0 when no linear order is involved).
    struct Violation
    {
        ViolationKind kind;
        int order = 0;
        int a = -1, b = -1, c = -1;

        auto describe() const -> std::string;
        auto operator==(const Violation &) const -> bool = default;
    };

    struct ValidationReport
    {
        std::vector<Violation> violations;

        auto ok() const -> bool { return violations.empty(); }
        auto describe() const -> std::string;
    };

    /// Every defect of the structure; an empty report means it lies in PL^(k).
    auto validate_structure(const PLStructure & s) -> ValidationReport;

    /// Checked constructor; throws EmptyStructure or InvalidStructure.
    auto make_structure(StrictPoset poset, std::vector<LinearOrder> lins) -> PLStructure;

    /// Convenience: closure of `pairs` plus linear orders given as ascending element lists.
    auto make_structure(int n, std::span<const std::pair<int, int>> pairs,
            const std::vector<std::vector<int>> & ascending_lins) -> PLStructure;

    /// Induced structure on `subset`; element subset[j] becomes j.
    auto restrict_structure(const PLStructure & s, std::span<const int> subset) -> PLStructure;

    /// The single-extension structure (X, P, L_order), order zero based.
    auto slice_order(const PLStructure & s, int order) -> PLStructure;

    struct CanonicalForm
    {
        PLStructure structure;
        /// relabel[old] = new.
        std::vector<int> relabel;
    };

    /// Relabels elements so that each element's index equals its rank in the
    /// first linear order. Structures are rigid, so this labeling is unique
    /// and isomorphic structures get identical forms.
    auto canonical_form(const PLStructure & s) -> CanonicalForm;

    auto isomorphic(const PLStructure & a, const PLStructure & b) -> bool;

    /// n-element chain 0 < 1 < ... < n-1 with k copies of the identity order.
    auto chain(int n, int k = 1) -> PLStructure;

    /// n pairwise incomparable elements, with k copies of the identity order.
    auto antichain(int n, int k = 1) -> PLStructure;

    /// True when the poset is total.
    auto is_chain(const PLStructure & s) -> bool;
}
