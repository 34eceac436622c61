#include <plram/errors.hh>
#include <plram/orders.hh>

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

using std::pair;
using std::size_t;
using std::span;
using std::string;
using std::vector;

namespace plram
{
    namespace
    {
        auto check_index(int n, int a) -> void
        {
            if (a < 0 || a >= n)
                throw IndexError("element " + std::to_string(a) + " outside 0.." + std::to_string(n - 1));
        }

        // Shortest generator path from `from` back to itself.
        auto find_cycle(int n, span<const pair<int, int>> pairs, int from) -> vector<int>
        {
            vector<vector<int>> succ(n);
            for (auto & [a, b] : pairs)
                succ[a].push_back(b);

            vector<int> parent(n, -1);
            std::deque<int> queue{from};
            vector<bool> seen(n, false);
            while (! queue.empty()) {
                int v = queue.front();
                queue.pop_front();
                for (int w : succ[v]) {
                    if (w == from) {
                        vector<int> cycle{from};
                        for (int u = v; u != from; u = parent[u])
                            cycle.push_back(u);
                        std::reverse(cycle.begin() + 1, cycle.end());
                        cycle.push_back(from);
                        return cycle;
                    }
                    if (! seen[w]) {
                        seen[w] = true;
                        parent[w] = v;
                        queue.push_back(w);
                    }
                }
            }
            return {from, from};
        }

        auto is_permutation_of_range(const vector<int> & values, int n) -> bool
        {
            if (static_cast<int>(values.size()) != n)
                return false;
            vector<bool> seen(n, false);
            for (int v : values) {
                if (v < 0 || v >= n || seen[v])
                    return false;
                seen[v] = true;
            }
            return true;
        }
    }

    auto LinearOrder::ascending() const -> vector<int>
    {
        vector<int> result(rank.size());
        for (size_t e = 0 ; e < rank.size() ; ++e)
            result[rank[e]] = static_cast<int>(e);
        return result;
    }

    auto transitive_closure_strict(int n, span<const pair<int, int>> pairs) -> StrictPoset
    {
        if (n <= 0)
            throw EmptyStructure();

        StrictPoset result{n, vector<std::uint8_t>(static_cast<size_t>(n) * n, 0)};
        for (auto & [a, b] : pairs) {
            check_index(n, a);
            check_index(n, b);
            result.relation[static_cast<size_t>(a) * n + b] = 1;
        }

        // Warshall
        for (int m = 0 ; m < n ; ++m)
            for (int a = 0 ; a < n ; ++a)
                if (result.below(a, m))
                    for (int b = 0 ; b < n ; ++b)
                        if (result.below(m, b))
                            result.relation[static_cast<size_t>(a) * n + b] = 1;

        for (int a = 0 ; a < n ; ++a)
            if (result.below(a, a)) {
                auto cycle = find_cycle(n, pairs, a);
                std::ostringstream msg;
                msg << "relation has a cycle:";
                for (size_t i = 0 ; i < cycle.size() ; ++i)
                    msg << (i ? " < " : " ") << cycle[i];
                throw CycleError(std::move(cycle), msg.str());
            }

        return result;
    }

    auto transitive_reduction(const StrictPoset & poset) -> vector<pair<int, int>>
    {
        vector<pair<int, int>> covers;
        int n = poset.size;
        for (int a = 0 ; a < n ; ++a)
            for (int b = 0 ; b < n ; ++b) {
                if (! poset.below(a, b))
                    continue;
                bool covered = true;
                for (int m = 0 ; m < n && covered ; ++m)
                    if (poset.below(a, m) && poset.below(m, b))
                        covered = false;
                if (covered)
                    covers.emplace_back(a, b);
            }
        return covers;
    }

    auto linear_order_from_ascending(span<const int> ascending) -> LinearOrder
    {
        int n = static_cast<int>(ascending.size());
        LinearOrder result{vector<int>(n, -1)};
        for (int pos = 0 ; pos < n ; ++pos) {
            check_index(n, ascending[pos]);
            if (result.rank[ascending[pos]] != -1)
                throw IndexError("element " + std::to_string(ascending[pos]) + " listed twice in a linear order");
            result.rank[ascending[pos]] = pos;
        }
        return result;
    }

    auto identity_order(int n) -> LinearOrder
    {
        LinearOrder result{vector<int>(n)};
        std::iota(result.rank.begin(), result.rank.end(), 0);
        return result;
    }

    auto Violation::describe() const -> string
    {
        std::ostringstream out;
        switch (kind) {
            case ViolationKind::empty_structure:
                out << "structure has no elements";
                break;
            case ViolationKind::no_linear_orders:
                out << "structure has no linear orders";
                break;
            case ViolationKind::matrix_shape:
                if (order)
                    out << "linear order " << order << " has the wrong length";
                else
                    out << "relation matrix has the wrong shape";
                break;
            case ViolationKind::reflexive:
                out << "relation is reflexive at " << a;
                break;
            case ViolationKind::antisymmetry:
                out << "relation has both " << a << " < " << b << " and " << b << " < " << a;
                break;
            case ViolationKind::transitivity:
                out << "relation is not transitive: " << a << " < " << b << " < " << c << " but not " << a << " < " << c;
                break;
            case ViolationKind::not_permutation:
                out << "linear order " << order << " is not a permutation";
                break;
            case ViolationKind::extension:
                out << "linear order " << order << " does not extend the partial order at " << a << " < " << b;
                break;
        }
        return out.str();
    }

    auto ValidationReport::describe() const -> string
    {
        string result;
        for (auto & v : violations) {
            if (! result.empty())
                result += "; ";
            result += v.describe();
        }
        return result;
    }

    auto validate_structure(const PLStructure & s) -> ValidationReport
    {
        ValidationReport report;
        auto add = [&] (Violation v) { report.violations.push_back(v); };

        int n = s.size();
        if (n <= 0) {
            add({ViolationKind::empty_structure});
            return report;
        }
        if (s.lins.empty())
            add({ViolationKind::no_linear_orders});

        bool matrix_ok = s.poset.relation.size() == static_cast<size_t>(n) * n;
        if (! matrix_ok)
            add({ViolationKind::matrix_shape});
        else {
            auto & p = s.poset;
            for (int a = 0 ; a < n ; ++a)
                if (p.below(a, a))
                    add({ViolationKind::reflexive, 0, a});
            for (int a = 0 ; a < n ; ++a)
                for (int b = a + 1 ; b < n ; ++b)
                    if (p.below(a, b) && p.below(b, a))
                        add({ViolationKind::antisymmetry, 0, a, b});
            for (int a = 0 ; a < n ; ++a)
                for (int b = 0 ; b < n ; ++b)
                    if (a != b && p.below(a, b))
                        for (int c = 0 ; c < n ; ++c)
                            if (c != b && p.below(b, c) && ! p.below(a, c))
                                add({ViolationKind::transitivity, 0, a, b, c});
        }

        for (int i = 0 ; i < s.arity() ; ++i) {
            auto & rank = s.lins[i].rank;
            if (static_cast<int>(rank.size()) != n) {
                add({ViolationKind::matrix_shape, i + 1});
                continue;
            }
            if (! is_permutation_of_range(rank, n)) {
                add({ViolationKind::not_permutation, i + 1});
                continue;
            }
            if (! matrix_ok)
                continue;
            for (int a = 0 ; a < n ; ++a)
                for (int b = 0 ; b < n ; ++b)
                    if (s.poset.below(a, b) && rank[a] > rank[b])
                        add({ViolationKind::extension, i + 1, a, b});
        }

        return report;
    }

    auto make_structure(StrictPoset poset, vector<LinearOrder> lins) -> PLStructure
    {
        if (poset.size <= 0)
            throw EmptyStructure();
        PLStructure result{std::move(poset), std::move(lins)};
        auto report = validate_structure(result);
        if (! report.ok())
            throw InvalidStructure(report.describe());
        return result;
    }

    auto make_structure(int n, span<const pair<int, int>> pairs, const vector<vector<int>> & ascending_lins) -> PLStructure
    {
        auto poset = transitive_closure_strict(n, pairs);
        vector<LinearOrder> lins;
        for (auto & asc : ascending_lins) {
            if (static_cast<int>(asc.size()) != n)
                throw SizeMismatch("linear order lists " + std::to_string(asc.size()) + " elements, expected " + std::to_string(n));
            lins.push_back(linear_order_from_ascending(asc));
        }
        return make_structure(std::move(poset), std::move(lins));
    }

    auto restrict_structure(const PLStructure & s, span<const int> subset) -> PLStructure
    {
        int n = s.size();
        int m = static_cast<int>(subset.size());
        if (m == 0)
            throw EmptyStructure();

        vector<bool> seen(n, false);
        for (int e : subset) {
            check_index(n, e);
            if (seen[e])
                throw IndexError("element " + std::to_string(e) + " repeated in subset");
            seen[e] = true;
        }

        PLStructure result;
        result.poset.size = m;
        result.poset.relation.assign(static_cast<size_t>(m) * m, 0);
        for (int a = 0 ; a < m ; ++a)
            for (int b = 0 ; b < m ; ++b)
                result.poset.relation[static_cast<size_t>(a) * m + b] = s.poset.below(subset[a], subset[b]);

        for (auto & lin : s.lins) {
            vector<int> order(m);
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(), [&] (int a, int b) { return lin.rank[subset[a]] < lin.rank[subset[b]]; });
            result.lins.push_back(linear_order_from_ascending(order));
        }
        return result;
    }

    auto slice_order(const PLStructure & s, int order) -> PLStructure
    {
        if (order < 0 || order >= s.arity())
            throw IndexError("linear order " + std::to_string(order + 1) + " does not exist");
        return PLStructure{s.poset, {s.lins[order]}};
    }

    auto canonical_form(const PLStructure & s) -> CanonicalForm
    {
        if (s.size() <= 0)
            throw EmptyStructure();
        if (s.lins.empty())
            throw ArityMismatch("canonical form needs at least one linear order");

        int n = s.size();
        auto relabel = s.lins[0].rank;

        PLStructure result;
        result.poset.size = n;
        result.poset.relation.assign(static_cast<size_t>(n) * n, 0);
        for (int a = 0 ; a < n ; ++a)
            for (int b = 0 ; b < n ; ++b)
                if (s.poset.below(a, b))
                    result.poset.relation[static_cast<size_t>(relabel[a]) * n + relabel[b]] = 1;

        for (auto & lin : s.lins) {
            LinearOrder moved{vector<int>(n)};
            for (int e = 0 ; e < n ; ++e)
                moved.rank[relabel[e]] = lin.rank[e];
            result.lins.push_back(std::move(moved));
        }

        return {std::move(result), std::move(relabel)};
    }

    auto isomorphic(const PLStructure & a, const PLStructure & b) -> bool
    {
        if (a.size() != b.size() || a.arity() != b.arity())
            return false;
        return canonical_form(a).structure == canonical_form(b).structure;
    }

    auto chain(int n, int k) -> PLStructure
    {
        if (n <= 0)
            throw EmptyStructure();
        PLStructure result;
        result.poset.size = n;
        result.poset.relation.assign(static_cast<size_t>(n) * n, 0);
        for (int a = 0 ; a < n ; ++a)
            for (int b = a + 1 ; b < n ; ++b)
                result.poset.relation[static_cast<size_t>(a) * n + b] = 1;
        result.lins.assign(k, identity_order(n));
        return result;
    }

    auto antichain(int n, int k) -> PLStructure
    {
        if (n <= 0)
            throw EmptyStructure();
        PLStructure result;
        result.poset.size = n;
        result.poset.relation.assign(static_cast<size_t>(n) * n, 0);
        result.lins.assign(k, identity_order(n));
        return result;
    }

    auto is_chain(const PLStructure & s) -> bool
    {
        for (int a = 0 ; a < s.size() ; ++a)
            for (int b = a + 1 ; b < s.size() ; ++b)
                if (! s.poset.comparable(a, b))
                    return false;
        return true;
    }
}
