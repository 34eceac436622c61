#include <plram/errors.hh>
#include <plram/join.hh>

#include <algorithm>
#include <limits>
#include <numeric>

using std::optional;
using std::size_t;
using std::span;
using std::vector;

namespace plram
{
    auto JoinedStructure::flat(span<const int> coordinates) const -> int
    {
        if (static_cast<int>(coordinates.size()) != arity())
            throw SizeMismatch("expected " + std::to_string(arity()) + " coordinates");
        int result = 0;
        for (int i = 0 ; i < arity() ; ++i) {
            if (coordinates[i] < 0 || coordinates[i] >= factors[i].size())
                throw IndexError("coordinate " + std::to_string(coordinates[i]) + " outside factor " + std::to_string(i + 1));
            result += coordinates[i] * strides[i];
        }
        return result;
    }

    auto JoinedStructure::coordinate(int flat_index, int factor) const -> int
    {
        return (flat_index / strides[factor]) % factors[factor].size();
    }

    auto JoinedStructure::coordinates(int flat_index) const -> vector<int>
    {
        vector<int> result(arity());
        for (int i = 0 ; i < arity() ; ++i)
            result[i] = coordinate(flat_index, i);
        return result;
    }

    auto join(const vector<PLStructure> & factors) -> JoinedStructure
    {
        if (factors.empty())
            throw ArityMismatch("join needs at least one factor");
        for (size_t i = 0 ; i < factors.size() ; ++i) {
            if (factors[i].arity() != 1)
                throw ArityMismatch("join factor " + std::to_string(i + 1) + " has " + std::to_string(factors[i].arity())
                        + " linear orders, expected 1");
            if (factors[i].size() <= 0)
                throw EmptyStructure();
        }

        int k = static_cast<int>(factors.size());
        JoinedStructure js;
        js.factors = factors;
        js.strides.assign(k, 1);
        long long total = 1;
        for (int i = k - 1 ; i >= 0 ; --i) {
            js.strides[i] = static_cast<int>(total);
            total *= factors[i].size();
            if (total > std::numeric_limits<int>::max() / 2)
                throw Overflow("join product is too large");
        }
        int n = static_cast<int>(total);

        vector<vector<int>> coords(n);
        for (int x = 0 ; x < n ; ++x)
            coords[x] = js.coordinates(x);

        auto & poset = js.product.poset;
        poset.size = n;
        poset.relation.assign(static_cast<size_t>(n) * n, 0);
        for (int a = 0 ; a < n ; ++a)
            for (int b = 0 ; b < n ; ++b) {
                bool all = true;
                for (int i = 0 ; i < k && all ; ++i)
                    all = factors[i].poset.below(coords[a][i], coords[b][i]);
                poset.relation[static_cast<size_t>(a) * n + b] = all;
            }

        for (int order = 0 ; order < k ; ++order) {
            vector<int> ascending(n);
            std::iota(ascending.begin(), ascending.end(), 0);
            std::sort(ascending.begin(), ascending.end(),
                    [&] (int a, int b) { return shifted_lex_compare(js, order, a, b) == std::strong_ordering::less; });
            js.product.lins.push_back(linear_order_from_ascending(ascending));
        }

        return js;
    }

    auto shifted_lex_compare(const JoinedStructure & js, int order, int a, int b) -> std::strong_ordering
    {
        int k = js.arity();
        int n = 1;
        for (auto & f : js.factors)
            n *= f.size();
        if (order < 0 || order >= k)
            throw IndexError("linear order " + std::to_string(order + 1) + " does not exist in a join of "
                    + std::to_string(k) + " factors");
        if (a < 0 || a >= n || b < 0 || b >= n)
            throw IndexError("product element outside 0.." + std::to_string(n - 1));

        for (int step = 0 ; step < k ; ++step) {
            int c = (order + step) % k;
            int xa = js.coordinate(a, c), xb = js.coordinate(b, c);
            if (xa != xb)
                return js.factors[c].lins[0].rank[xa] <=> js.factors[c].lins[0].rank[xb];
        }
        return std::strong_ordering::equal;
    }

    auto assemble_canonical_copy(const JoinedStructure & js, const PLStructure & pattern,
            const vector<Embedding> & components, Mode mode) -> CanonicalCopy
    {
        int k = js.arity();
        if (pattern.arity() != k)
            throw ArityMismatch("pattern has " + std::to_string(pattern.arity()) + " linear orders, join has "
                    + std::to_string(k) + " factors");
        if (static_cast<int>(components.size()) != k)
            throw SizeMismatch("expected " + std::to_string(k) + " components, got " + std::to_string(components.size()));

        vector<vector<int>> maps;
        for (int i = 0 ; i < k ; ++i) {
            auto slice = slice_order(pattern, i);
            bool ok = false;
            try {
                ok = check_embedding(components[i], slice, js.factors[i], mode);
            }
            catch (const Error &) {
                ok = false;
            }
            if (! ok)
                throw InvalidComponent(i, "component " + std::to_string(i + 1) + " is not a copy of the pattern's slice "
                        + std::to_string(i + 1) + " in factor " + std::to_string(i + 1));
            maps.push_back(element_map(components[i], slice));
        }

        vector<int> assembled(pattern.size());
        vector<int> coords(k);
        for (int x = 0 ; x < pattern.size() ; ++x) {
            for (int i = 0 ; i < k ; ++i)
                coords[i] = maps[i][x];
            assembled[x] = js.flat(coords);
        }

        return CanonicalCopy{components, embedding_from_map(assembled, pattern)};
    }

    auto decompose_canonical_copy(const JoinedStructure & js, const PLStructure & pattern,
            const Embedding & e, Mode mode) -> optional<vector<Embedding>>
    {
        int k = js.arity();
        if (pattern.arity() != k)
            throw ArityMismatch("pattern has " + std::to_string(pattern.arity()) + " linear orders, join has "
                    + std::to_string(k) + " factors");

        auto map = element_map(e, pattern);
        vector<Embedding> components;
        vector<int> projected(pattern.size());
        for (int i = 0 ; i < k ; ++i) {
            for (int x = 0 ; x < pattern.size() ; ++x)
                projected[x] = js.coordinate(map[x], i);
            auto slice = slice_order(pattern, i);
            auto component = embedding_from_map(projected, slice);
            if (! check_embedding(component, slice, js.factors[i], mode))
                return std::nullopt;
            components.push_back(std::move(component));
        }
        return components;
    }
}
