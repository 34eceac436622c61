#pragma once

// Brute-force reference implementations, written directly from the
// definitions and sharing no code with the library's search paths.

#include <plram/embeddings.hh>
#include <plram/orders.hh>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

namespace plram::testing
{
    /// Is the element map f (pattern element -> host element) a copy?
    inline auto is_copy_by_definition(const std::vector<int> & f, const PLStructure & pattern,
            const PLStructure & host, Mode mode) -> bool
    {
        int m = pattern.size();
        for (int x = 0 ; x < m ; ++x)
            for (int y = 0 ; y < m ; ++y) {
                if (x == y)
                    continue;
                if (f[x] == f[y])
                    return false;
                for (int i = 0 ; i < pattern.arity() ; ++i)
                    if ((pattern.lins[i].rank[x] < pattern.lins[i].rank[y]) != (host.lins[i].rank[f[x]] < host.lins[i].rank[f[y]]))
                        return false;
                bool p = pattern.poset.relation[x * m + y];
                bool q = host.poset.relation[f[x] * host.size() + f[y]];
                if (mode == Mode::strong ? p != q : (p && ! q))
                    return false;
            }
        return true;
    }

    /// All injective maps, as sorted image lists in pattern first-order order.
    inline auto brute_force_copies(const PLStructure & pattern, const PLStructure & host, Mode mode) -> std::vector<std::vector<int>>
    {
        int m = pattern.size(), n = host.size();
        std::vector<std::vector<int>> result;
        std::vector<int> f(m, 0);
        // odometer over all n^m maps
        while (true) {
            if (is_copy_by_definition(f, pattern, host, mode)) {
                std::vector<int> image(m);
                for (int x = 0 ; x < m ; ++x)
                    image[pattern.lins[0].rank[x]] = f[x];
                result.push_back(image);
            }
            int pos = 0;
            while (pos < m && ++f[pos] == n)
                f[pos++] = 0;
            if (pos == m)
                break;
        }
        std::sort(result.begin(), result.end());
        return result;
    }

    /// Element maps of every copy of x in y.
    inline auto brute_force_maps(const PLStructure & pattern, const PLStructure & host, Mode mode) -> std::vector<std::vector<int>>
    {
        std::vector<std::vector<int>> result;
        for (auto & image : brute_force_copies(pattern, host, mode)) {
            std::vector<int> f(pattern.size());
            for (int x = 0 ; x < pattern.size() ; ++x)
                f[x] = image[pattern.lins[0].rank[x]];
            result.push_back(f);
        }
        return result;
    }

    struct NaiveVerdict
    {
        bool ramsey;
        std::vector<std::uint64_t> first_bad_coloring;
    };

    /// Tries all r^N colorings of binom(z, x) in lexicographic order.
    inline auto naive_verify(const PLStructure & x, const PLStructure & y, const PLStructure & z, std::uint64_t r, Mode mode)
        -> NaiveVerdict
    {
        auto x_in_z = brute_force_copies(x, z, mode);
        auto y_in_z = brute_force_maps(y, z, mode);
        auto x_in_y = brute_force_maps(x, y, mode);

        // for each copy of y, indices of the copies of x inside it
        std::vector<std::vector<std::size_t>> inside;
        for (auto & g : y_in_z) {
            std::vector<std::size_t> members;
            for (auto & h : x_in_y) {
                std::vector<int> image(x.size());
                for (int e = 0 ; e < x.size() ; ++e)
                    image[x.lins[0].rank[e]] = g[h[e]];
                auto it = std::find(x_in_z.begin(), x_in_z.end(), image);
                members.push_back(static_cast<std::size_t>(it - x_in_z.begin()));
            }
            inside.push_back(members);
        }

        std::size_t count = x_in_z.size();
        std::vector<std::uint64_t> coloring(count, 0);
        while (true) {
            bool some_monochromatic = false;
            for (auto & members : inside) {
                bool mono = true;
                for (auto i : members)
                    if (coloring[i] != coloring[members.empty() ? 0 : members[0]])
                        mono = false;
                if (mono) {
                    some_monochromatic = true;
                    break;
                }
            }
            if (! some_monochromatic)
                return {false, coloring};

            // next coloring, last position least significant
            std::size_t pos = count;
            while (pos > 0) {
                --pos;
                if (++coloring[pos] < r)
                    break;
                coloring[pos] = 0;
                if (pos == 0) {
                    pos = count + 1;
                    break;
                }
            }
            if (count == 0 || pos == count + 1)
                return {true, {}};
        }
    }
}
