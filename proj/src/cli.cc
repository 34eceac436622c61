#include <plram/cli.hh>
#include <plram/errors.hh>
#include <plram/formats.hh>
#include <plram/join.hh>
#include <plram/ramsey_engine.hh>

#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <random>

using std::ostream;
using std::string;
using std::uint64_t;
using std::vector;

namespace plram
{
    namespace
    {
        constexpr int exit_ok = 0;
        constexpr int exit_error = 1;
        constexpr int exit_negative = 2;

        struct Settings
        {
            string mode = "strong";
            uint64_t colors = 0;
            int max_n = 8;
            string family = "chains";
            uint64_t budget = VerifyOptions{}.node_budget;
            string out_path;
            bool count = false;
            unsigned threads = 1;

            string pattern, target, host, a, b, manifest, coloring, copy;
            vector<string> files;
            std::optional<uint64_t> seed;
            uint64_t constant = 0;
        };

        auto mode_of(const Settings & s) -> Mode
        {
            auto mode = parse_mode(s.mode);
            if (! mode)
                throw Error("--mode must be 'strong' or 'weak'");
            return *mode;
        }

        auto search_options(const Settings & s) -> WitnessSearchOptions
        {
            auto family = parse_family(s.family);
            if (! family)
                throw Error("--family must be 'chains' or 'all'");
            return WitnessSearchOptions{*family, s.max_n, VerifyOptions{s.budget, s.threads}};
        }

        auto require_colors(const Settings & s) -> uint64_t
        {
            if (s.colors < 1)
                throw Error("--colors must be at least 1");
            return s.colors;
        }

        // Data goes to --out when given, otherwise to standard output ahead of the RESULT line.
        auto emit(const Settings & s, ostream & out, const string & content) -> void
        {
            if (s.out_path.empty())
                out << content;
            else
                write_text_file(s.out_path, content);
        }

        auto result(ostream & out, const string & token, int code) -> int
        {
            out << "RESULT: " << token << '\n';
            return code;
        }

        auto cmd_validate(const Settings & s, ostream & out) -> int
        {
            auto raw = parse_raw_structure(read_text_file(s.files.at(0)), s.files.at(0));
            StrictPoset poset;
            try {
                poset = transitive_closure_strict(raw.n, raw.relations);
            }
            catch (const CycleError & e) {
                out << e.what() << '\n';
                return result(out, "INVALID", exit_negative);
            }
            PLStructure structure{std::move(poset), {}};
            for (auto & asc : raw.lins)
                structure.lins.push_back(linear_order_from_ascending(asc));
            auto report = validate_structure(structure);
            for (auto & v : report.violations)
                out << v.describe() << '\n';
            return report.ok() ? result(out, "VALID", exit_ok) : result(out, "INVALID", exit_negative);
        }

        auto cmd_copies(const Settings & s, ostream & out) -> int
        {
            auto pattern = read_structure_file(s.pattern);
            auto host = read_structure_file(s.host);
            auto mode = mode_of(s);
            auto copies = enumerate_copies(pattern, host, mode);

            if (s.colors > 0) {
                CopyColoring chi{s.colors, copies, vector<Color>(copies.size(), s.constant)};
                if (s.seed) {
                    std::mt19937_64 engine(*s.seed);
                    for (auto & v : chi.values)
                        v = engine() % s.colors;
                }
                else if (s.constant >= s.colors)
                    throw Error("--constant must be below --colors");
                emit(s, out, serialize_coloring(chi));
            }
            else if (! s.count) {
                string listing;
                for (auto & c : copies)
                    listing += format_copy(c) + '\n';
                emit(s, out, listing);
            }
            return result(out, std::to_string(copies.size()), exit_ok);
        }

        auto cmd_join(const Settings & s, ostream & out) -> int
        {
            vector<PLStructure> factors;
            for (auto & f : s.files)
                factors.push_back(read_structure_file(f));
            auto js = join(factors);
            emit(s, out, serialize_structure(js.product, join_comments(js)));
            return result(out, "VALID", exit_ok);
        }

        auto cmd_canonical(const Settings & s, ostream & out) -> int
        {
            auto form = canonical_form(read_structure_file(s.files.at(0)));
            string relabel = "relabel";
            for (int v : form.relabel)
                relabel += " " + std::to_string(v);
            emit(s, out, serialize_structure(form.structure, {relabel}));
            out << relabel << '\n';
            return result(out, "VALID", exit_ok);
        }

        auto cmd_verify(const Settings & s, ostream & out) -> int
        {
            auto pattern = read_structure_file(s.pattern);
            auto target = read_structure_file(s.target);
            auto host = read_structure_file(s.host);
            auto verdict = verify_witness(pattern, target, host, require_colors(s), mode_of(s), VerifyOptions{s.budget, s.threads});
            switch (verdict.status) {
                case VerifyStatus::ramsey:
                    return result(out, "RAMSEY", exit_ok);
                case VerifyStatus::not_ramsey:
                    emit(s, out, serialize_coloring(*verdict.counterexample));
                    return result(out, "NOT_RAMSEY", exit_negative);
                case VerifyStatus::unknown:
                    break;
            }
            return result(out, "UNKNOWN", exit_negative);
        }

        auto cmd_find_witness(const Settings & s, ostream & out, ostream & err) -> int
        {
            auto pattern = read_structure_file(s.pattern);
            auto target = read_structure_file(s.target);
            auto search = find_witness(pattern, target, require_colors(s), mode_of(s), search_options(s));
            err << "candidates checked: " << search.candidates_checked << ", largest size tried: "
                << search.largest_size_tried << ", nodes: " << search.nodes << '\n';
            switch (search.status) {
                case SearchStatus::found:
                    emit(s, out, serialize_structure(*search.witness));
                    return result(out, "FOUND", exit_ok);
                case SearchStatus::not_found:
                    return result(out, "NOT_FOUND", exit_negative);
                case SearchStatus::unknown:
                    break;
            }
            return result(out, "UNKNOWN", exit_negative);
        }

        auto cmd_synthesize(const Settings & s, ostream & out, ostream & err) -> int
        {
            if (s.out_path.empty())
                throw Error("synthesize needs --out <manifest path>");
            auto a = read_structure_file(s.a);
            auto b = read_structure_file(s.b);
            OracleOptions oracle_options;
            oracle_options.fallback = search_options(s);
            ConstructionManifest manifest;
            try {
                manifest = synthesize_construction(a, b, require_colors(s), make_chain_oracle(oracle_options), mode_of(s));
            }
            catch (const OracleFailure & e) {
                err << e.what() << '\n';
                return result(out, "NOT_FOUND", exit_negative);
            }
            save_manifest(manifest, s.out_path);
            for (int i = 0 ; i < manifest.arity() ; ++i) {
                auto & coord = manifest.plan.coordinates[i];
                err << "witness " << (i + 1) << ": " << coord.witness.size() << " elements, " << coord.colors
                    << " colors, " << tag_name(coord.tag) << '\n';
            }
            out << "host size " << manifest.host().size() << '\n';
            return result(out, "FOUND", exit_ok);
        }

        auto cmd_extract(const Settings & s, ostream & out, ostream & err) -> int
        {
            auto manifest = load_manifest(s.manifest);
            auto chi = parse_coloring(read_text_file(s.coloring), s.coloring, manifest.a, manifest.host(), manifest.mode);
            try {
                auto extraction = extract_monochromatic_copy(manifest, chi, s.threads);
                emit(s, out, serialize_copy_file(extraction.copy, extraction.color));
                return result(out, "EXTRACTED", exit_ok);
            }
            catch (const NotMonochromatic & e) {
                err << e.what() << '\n';
                return result(out, "NOT_MONOCHROMATIC", exit_error);
            }
        }

        auto cmd_verify_copy(const Settings & s, ostream & out) -> int
        {
            PLStructure a, b, host;
            Mode mode = mode_of(s);
            if (! s.manifest.empty()) {
                auto manifest = load_manifest(s.manifest);
                a = manifest.a;
                b = manifest.b;
                host = manifest.host();
                mode = manifest.mode;
            }
            else {
                a = read_structure_file(s.pattern);
                b = read_structure_file(s.target);
                host = read_structure_file(s.host);
            }
            auto chi = parse_coloring(read_text_file(s.coloring), s.coloring, a, host, mode);
            auto [copy, color] = parse_copy_file(read_text_file(s.copy), s.copy);

            bool valid = false;
            try {
                valid = check_embedding(copy, b, host, mode);
            }
            catch (const Error &) {
                valid = false;
            }
            if (! valid) {
                out << "not a copy of the target in the host\n";
                return result(out, "INVALID", exit_negative);
            }
            for (auto & sigma : copies_inside(copy, a, b, mode))
                if (chi.color_of(sigma) != color) {
                    out << "copy " << format_copy(sigma) << " does not have color " << color << '\n';
                    return result(out, "NOT_MONOCHROMATIC", exit_negative);
                }
            return result(out, "VALID", exit_ok);
        }
    }

    auto run(const vector<string> & args, ostream & out, ostream & err) -> int
    {
        CLI::App app{"Ramsey constructions for posets with linear extensions", "plram"};
        app.require_subcommand(1);
        app.fallthrough();

        Settings s;
        app.add_option("--threads", s.threads, "worker threads; never changes any output")->check(CLI::Range(1u, 1024u));

        auto add_mode = [&] (CLI::App * c) {
            c->add_option("--mode", s.mode, "embedding semantics: strong or weak")->capture_default_str();
        };
        auto add_out = [&] (CLI::App * c) { c->add_option("--out", s.out_path, "output file"); };
        auto add_search = [&] (CLI::App * c) {
            c->add_option("--family", s.family, "witness candidates: chains or all")->capture_default_str();
            c->add_option("--max-n", s.max_n, "largest candidate size")->capture_default_str();
            c->add_option("--budget", s.budget, "backtracking node budget per verification")->capture_default_str();
        };

        auto validate = app.add_subcommand("validate", "check a structure file");
        validate->add_option("file", s.files, "structure file")->required()->expected(1);

        auto copies = app.add_subcommand("copies", "list or count the copies of a pattern in a host, or color them");
        copies->add_option("--pattern", s.pattern)->required();
        copies->add_option("--host", s.host)->required();
        copies->add_flag("--count", s.count, "only print the count");
        copies->add_option("--colors", s.colors, "write a coloring file with this many colors");
        copies->add_option("--seed", s.seed, "pseudo-random colors from this seed");
        copies->add_option("--constant", s.constant, "constant color when no seed is given");
        add_mode(copies);
        add_out(copies);

        auto join_cmd = app.add_subcommand("join", "join single-extension factors");
        join_cmd->add_option("factors", s.files)->required();
        add_out(join_cmd);

        auto canonical = app.add_subcommand("canonical", "relabel a structure by its first linear order");
        canonical->add_option("file", s.files)->required()->expected(1);
        add_out(canonical);

        auto verify = app.add_subcommand("verify", "decide whether host is a Ramsey witness");
        verify->add_option("--pattern", s.pattern)->required();
        verify->add_option("--target", s.target)->required();
        verify->add_option("--host", s.host)->required();
        verify->add_option("--colors", s.colors)->required();
        verify->add_option("--budget", s.budget, "backtracking node budget")->capture_default_str();
        add_mode(verify);
        add_out(verify);

        auto find = app.add_subcommand("find-witness", "search for the smallest Ramsey witness in a family");
        find->add_option("--pattern", s.pattern)->required();
        find->add_option("--target", s.target)->required();
        find->add_option("--colors", s.colors)->required();
        add_search(find);
        add_mode(find);
        add_out(find);

        auto synthesize = app.add_subcommand("synthesize", "build the host C for A, B and a color count");
        synthesize->add_option("--a", s.a)->required();
        synthesize->add_option("--b", s.b)->required();
        synthesize->add_option("--colors", s.colors)->required();
        add_search(synthesize);
        add_mode(synthesize);
        add_out(synthesize);

        auto extract = app.add_subcommand("extract", "find a copy of B whose copies of A share one color");
        extract->add_option("--manifest", s.manifest)->required();
        extract->add_option("--coloring", s.coloring)->required();
        add_out(extract);

        auto verify_copy = app.add_subcommand("verify-copy", "check that a copy file is monochromatic");
        verify_copy->add_option("--manifest", s.manifest);
        verify_copy->add_option("--pattern", s.pattern);
        verify_copy->add_option("--target", s.target);
        verify_copy->add_option("--host", s.host);
        verify_copy->add_option("--coloring", s.coloring)->required();
        verify_copy->add_option("--copy", s.copy)->required();
        add_mode(verify_copy);

        vector<const char *> argv;
        for (auto & a : args)
            argv.push_back(a.c_str());
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        }
        catch (const CLI::ParseError & e) {
            int code = app.exit(e, out, err);
            return code == 0 ? exit_ok : exit_error;
        }

        auto start = std::chrono::steady_clock::now();
        int code = exit_error;
        try {
            if (*validate)
                code = cmd_validate(s, out);
            else if (*copies)
                code = cmd_copies(s, out);
            else if (*join_cmd)
                code = cmd_join(s, out);
            else if (*canonical)
                code = cmd_canonical(s, out);
            else if (*verify)
                code = cmd_verify(s, out);
            else if (*find)
                code = cmd_find_witness(s, out, err);
            else if (*synthesize)
                code = cmd_synthesize(s, out, err);
            else if (*extract)
                code = cmd_extract(s, out, err);
            else if (*verify_copy) {
                if (s.manifest.empty() && (s.pattern.empty() || s.target.empty() || s.host.empty()))
                    throw Error("verify-copy needs --manifest or all of --pattern, --target, --host");
                code = cmd_verify_copy(s, out);
            }
        }
        catch (const std::exception & e) {
            err << "error: " << e.what() << '\n';
            out << "RESULT: ERROR\n";
            return exit_error;
        }

        auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
        err << "elapsed " << elapsed.count() << " ms, threads " << s.threads << '\n';
        return code;
    }
}
