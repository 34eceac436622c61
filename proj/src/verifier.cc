#include <plram/errors.hh>
#include <plram/parallel.hh>
#include <plram/ramsey_engine.hh>

#include <algorithm>
#include <limits>

using std::optional;
using std::size_t;
using std::uint32_t;
using std::uint64_t;
using std::vector;

namespace plram
{
    auto CopyColoring::color_of(const Embedding & copy) const -> optional<Color>
    {
        auto index = index_of_copy(copies, copy);
        if (! index)
            return std::nullopt;
        return values[*index];
    }

    auto check_coloring(const CopyColoring & chi, const PLStructure & pattern, const PLStructure & host, Mode mode) -> void
    {
        if (chi.colors < 1)
            throw Error("a coloring needs at least one color");
        if (chi.values.size() != chi.copies.size())
            throw SizeMismatch("coloring has " + std::to_string(chi.values.size()) + " colors for "
                    + std::to_string(chi.copies.size()) + " copies");
        if (chi.copies != enumerate_copies(pattern, host, mode))
            throw SizeMismatch("coloring domain differs from the copies of the pattern in the host");
        for (auto v : chi.values)
            if (v >= chi.colors)
                throw IndexError("color " + std::to_string(v) + " outside 0.." + std::to_string(chi.colors - 1));
    }

    namespace
    {
        constexpr size_t frontier_target = 64;
        constexpr size_t max_split_depth = 16;
        constexpr size_t max_table_entries = size_t{1} << 28;
        constexpr Color uncolored = std::numeric_limits<Color>::max();

        // Constraints: for each target copy t and color c, the pattern copies
        // inside t must not all receive c.
        struct Problem
        {
            size_t copies = 0;
            uint32_t palette = 0;
            vector<vector<size_t>> members;
            vector<vector<size_t>> containing;
        };

        class Solver
        {
        public:
            explicit Solver(const Problem & problem) :
                _problem(problem),
                _color(problem.copies, uncolored),
                _count(problem.members.size() * problem.palette, 0),
                _uncolored(problem.members.size()),
                _forbid(problem.copies * problem.palette, 0),
                _forbidden(problem.copies, 0)
            {
                for (size_t t = 0 ; t < problem.members.size() ; ++t) {
                    _uncolored[t] = static_cast<uint32_t>(problem.members[t].size());
                    if (problem.members[t].empty())
                        _dead = true;
                    else if (problem.members[t].size() == 1)
                        for (uint32_t c = 0 ; c < problem.palette ; ++c)
                            if (! forbid(problem.members[t][0], c))
                                _dead = true;
                }
            }

            auto dead() const -> bool { return _dead; }

            // Colors allowed next under value symmetry: at most one new color.
            auto next_limit() const -> uint32_t
            {
                return std::min<uint32_t>(_problem.palette, _used + 1);
            }

            auto allowed(size_t x, uint32_t c) const -> bool
            {
                return _forbid[x * _problem.palette + c] == 0;
            }

            // Assigns and forward checks; false means some copy lost every color.
            auto assign(size_t x, uint32_t c) -> bool
            {
                _marks.push_back({_trail.size(), _used});
                _color[x] = c;
                _used = std::max(_used, c + 1);
                bool ok = true;
                for (size_t t : _problem.containing[x]) {
                    ++_count[t * _problem.palette + c];
                    --_uncolored[t];
                }
                for (size_t t : _problem.containing[x]) {
                    auto & members = _problem.members[t];
                    if (_uncolored[t] != 1 || _count[t * _problem.palette + c] != members.size() - 1)
                        continue;
                    for (size_t y : members)
                        if (_color[y] == uncolored) {
                            ok = forbid(y, c) && ok;
                            break;
                        }
                }
                return ok;
            }

            auto unassign(size_t x) -> void
            {
                auto [trail_size, used] = _marks.back();
                _marks.pop_back();
                while (_trail.size() > trail_size) {
                    auto [y, c] = _trail.back();
                    _trail.pop_back();
                    if (--_forbid[y * _problem.palette + c] == 0)
                        --_forbidden[y];
                }
                auto c = static_cast<uint32_t>(_color[x]);
                for (size_t t : _problem.containing[x]) {
                    --_count[t * _problem.palette + c];
                    ++_uncolored[t];
                }
                _color[x] = uncolored;
                _used = used;
            }

            auto colors() const -> const vector<Color> & { return _color; }

        private:
            auto forbid(size_t y, uint32_t c) -> bool
            {
                _trail.push_back({y, c});
                if (_forbid[y * _problem.palette + c]++ == 0)
                    ++_forbidden[y];
                return _forbidden[y] < _problem.palette;
            }

            const Problem & _problem;
            vector<Color> _color;
            vector<uint32_t> _count;
            vector<uint32_t> _uncolored;
            vector<uint32_t> _forbid;
            vector<uint32_t> _forbidden;
            vector<std::pair<size_t, uint32_t>> _trail;
            vector<std::pair<size_t, uint32_t>> _marks;
            uint32_t _used = 0;
            bool _dead = false;
        };

        struct SubtreeResult
        {
            bool found = false;
            bool exhausted_budget = false;
            uint64_t nodes = 0;
            vector<Color> coloring;
        };

        auto replay(Solver & solver, const vector<uint32_t> & prefix) -> bool
        {
            for (size_t x = 0 ; x < prefix.size() ; ++x)
                if (! solver.assign(x, prefix[x]))
                    return false;
            return true;
        }

        auto dfs(Solver & solver, const Problem & problem, size_t x, uint64_t cap, SubtreeResult & out) -> bool
        {
            if (x == problem.copies) {
                out.found = true;
                out.coloring = solver.colors();
                return true;
            }
            uint32_t limit = solver.next_limit();
            for (uint32_t c = 0 ; c < limit ; ++c) {
                if (! solver.allowed(x, c))
                    continue;
                if (out.nodes >= cap) {
                    out.exhausted_budget = true;
                    return true;
                }
                ++out.nodes;
                bool stop = solver.assign(x, c) && dfs(solver, problem, x + 1, cap, out);
                solver.unassign(x);
                if (stop)
                    return true;
            }
            return false;
        }

        auto search_subtree(const Problem & problem, const vector<uint32_t> & prefix, uint64_t cap) -> SubtreeResult
        {
            SubtreeResult result;
            Solver solver(problem);
            replay(solver, prefix);
            dfs(solver, problem, prefix.size(), cap, result);
            return result;
        }

        // Breadth-first expansion of the first levels, children in ascending
        // color order, so the frontier is in lexicographic order. The depth
        // depends only on the instance, never on the thread count.
        auto build_frontier(const Problem & problem, uint64_t & nodes) -> vector<vector<uint32_t>>
        {
            vector<vector<uint32_t>> frontier{{}};
            size_t depth = 0;
            while (depth < problem.copies && depth < max_split_depth && frontier.size() < frontier_target && ! frontier.empty()) {
                vector<vector<uint32_t>> next;
                for (auto & prefix : frontier) {
                    Solver solver(problem);
                    replay(solver, prefix);
                    uint32_t limit = solver.next_limit();
                    for (uint32_t c = 0 ; c < limit ; ++c) {
                        if (! solver.allowed(depth, c))
                            continue;
                        ++nodes;
                        if (solver.assign(depth, c)) {
                            auto child = prefix;
                            child.push_back(c);
                            next.push_back(std::move(child));
                        }
                        solver.unassign(depth);
                    }
                }
                frontier = std::move(next);
                ++depth;
            }
            return frontier;
        }
    }

    auto verify_witness(const PLStructure & pattern, const PLStructure & target, const PLStructure & host,
            uint64_t colors, Mode mode, const VerifyOptions & options) -> VerifyResult
    {
        if (pattern.arity() != target.arity() || pattern.arity() != host.arity())
            throw ArityMismatch("pattern, target and host must have the same number of linear orders");
        if (colors < 1)
            throw Error("at least one color is required");

        auto host_copies = enumerate_copies(pattern, host, mode);
        auto target_copies = enumerate_copies(target, host, mode);
        auto pattern_in_target = enumerate_copies(pattern, target, mode);

        Problem problem;
        problem.copies = host_copies.size();
        problem.palette = static_cast<uint32_t>(std::min<uint64_t>({colors, std::max<size_t>(problem.copies, 1),
                    std::numeric_limits<uint32_t>::max()}));
        problem.containing.resize(problem.copies);
        for (auto & t : target_copies) {
            vector<size_t> members;
            for (auto & tau : pattern_in_target)
                members.push_back(*index_of_copy(host_copies, compose_embeddings(t, tau, target)));
            for (size_t x : members)
                problem.containing[x].push_back(problem.members.size());
            problem.members.push_back(std::move(members));
        }

        if (problem.members.size() * problem.palette > max_table_entries || problem.copies * problem.palette > max_table_entries)
            return VerifyResult{VerifyStatus::unknown, std::nullopt, 0};

        auto not_ramsey = [&] (const vector<Color> & values) {
            return VerifyResult{VerifyStatus::not_ramsey, CopyColoring{colors, host_copies, values}, 0};
        };

        Solver root(problem);
        if (root.dead())
            return VerifyResult{VerifyStatus::ramsey, std::nullopt, 0};

        uint64_t budget = options.node_budget;
        uint64_t nodes = 0;
        auto frontier = build_frontier(problem, nodes);
        if (nodes > budget)
            return VerifyResult{VerifyStatus::unknown, std::nullopt, budget};
        uint64_t cap = budget - nodes;

        vector<SubtreeResult> results(frontier.size());
        if (options.threads <= 1) {
            for (size_t i = 0 ; i < frontier.size() ; ++i) {
                results[i] = search_subtree(problem, frontier[i], budget - nodes);
                nodes += results[i].nodes;
                if (results[i].exhausted_budget || nodes > budget)
                    return VerifyResult{VerifyStatus::unknown, std::nullopt, budget};
                if (results[i].found) {
                    auto result = not_ramsey(results[i].coloring);
                    result.nodes = nodes;
                    return result;
                }
            }
            return VerifyResult{VerifyStatus::ramsey, std::nullopt, nodes};
        }

        auto stop = first_satisfying(frontier.size(), options.threads, [&] (size_t i) {
            results[i] = search_subtree(problem, frontier[i], cap);
            return results[i].found || results[i].exhausted_budget;
        });
        size_t end = stop ? *stop + 1 : frontier.size();
        for (size_t i = 0 ; i < end ; ++i) {
            nodes += results[i].nodes;
            if (results[i].exhausted_budget || nodes > budget)
                return VerifyResult{VerifyStatus::unknown, std::nullopt, budget};
            if (results[i].found) {
                auto result = not_ramsey(results[i].coloring);
                result.nodes = nodes;
                return result;
            }
        }
        return VerifyResult{VerifyStatus::ramsey, std::nullopt, nodes};
    }
}
