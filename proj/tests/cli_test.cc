#include <plram/cli.hh>
#include <plram/formats.hh>

#include "support/temp_dir.hh"

#include <doctest.h>

#include <sstream>

using namespace plram;
using namespace plram::testing;
using std::string;
using std::vector;

namespace
{
    struct Outcome
    {
        int code;
        string out;
        string err;

        auto last_line() const -> string
        {
            auto trimmed = out.substr(0, out.size() - 1);
            return trimmed.substr(trimmed.rfind('\n') + 1);
        }
    };

    auto cli(vector<string> args) -> Outcome
    {
        args.insert(args.begin(), "plram");
        std::ostringstream out, err;
        int code = run(args, out, err);
        return {code, out.str(), err.str()};
    }

    struct Workspace
    {
        TempDir dir{"plram_cli"};

        auto file(const string & name, const string & content) const -> string
        {
            auto path = dir / name;
            write_text_file(path, content);
            return path;
        }

        auto structure(const string & name, const PLStructure & s) const -> string
        {
            return file(name, serialize_structure(s));
        }
    };
}

TEST_CASE("validate")
{
    Workspace ws;
    auto good = ws.structure("c.pls", chain(3, 2));
    auto outcome = cli({"validate", good});
    CHECK(outcome.code == 0);
    CHECK(outcome.last_line() == "RESULT: VALID");

    auto reversed = ws.file("r.pls", "PLS 1\nn 2\nk 1\nrel 0 1\nlin 1 1 0\n");
    auto bad = cli({"validate", reversed});
    CHECK(bad.code == 2);
    CHECK(bad.last_line() == "RESULT: INVALID");
    CHECK(bad.out.find("linear order 1") != string::npos);

    auto cyclic = ws.file("y.pls", "PLS 1\nn 2\nk 1\nrel 0 1\nrel 1 0\nlin 1 0 1\n");
    CHECK(cli({"validate", cyclic}).code == 2);

    auto garbled = ws.file("g.pls", "PLS 1\nn 2\nk 1\nfoo\n");
    auto error = cli({"validate", garbled});
    CHECK(error.code == 1);
    CHECK(error.last_line() == "RESULT: ERROR");
    CHECK(error.err.find("g.pls:4:") != string::npos);

    CHECK(cli({"validate", ws.dir / "missing.pls"}).code == 1);
    CHECK(cli({"frobnicate"}).code == 1);
}

TEST_CASE("copies")
{
    Workspace ws;
    auto point = ws.structure("p.pls", chain(1));
    auto two = ws.structure("c2.pls", chain(2));
    auto three = ws.structure("c3.pls", chain(3));

    auto listing = cli({"copies", "--pattern", two, "--host", three});
    CHECK(listing.code == 0);
    CHECK(listing.out == "0 1\n0 2\n1 2\nRESULT: 3\n");

    CHECK(cli({"copies", "--pattern", two, "--host", three, "--count"}).out == "RESULT: 3\n");

    auto colored = cli({"copies", "--pattern", point, "--host", three, "--colors", "2", "--constant", "1"});
    CHECK(colored.out == "COL 1\nr 2\nc 0 : 1\nc 1 : 1\nc 2 : 1\nRESULT: 3\n");

    auto seeded = cli({"copies", "--pattern", point, "--host", three, "--colors", "2", "--seed", "5"});
    CHECK(seeded.out == cli({"copies", "--pattern", point, "--host", three, "--colors", "2", "--seed", "5"}).out);

    auto out = ws.dir / "copies.txt";
    CHECK(cli({"copies", "--pattern", two, "--host", three, "--out", out}).out == "RESULT: 3\n");
    CHECK(read_text_file(out) == "0 1\n0 2\n1 2\n");

    auto anti = ws.structure("a2.pls", antichain(2));
    CHECK(cli({"copies", "--pattern", anti, "--host", two, "--count", "--mode", "weak"}).out == "RESULT: 1\n");
    CHECK(cli({"copies", "--pattern", anti, "--host", two, "--count"}).out == "RESULT: 0\n");
    CHECK(cli({"copies", "--pattern", anti, "--host", two, "--mode", "loose"}).code == 1);
}

TEST_CASE("join and canonical")
{
    Workspace ws;
    auto two = ws.structure("c2.pls", chain(2));
    auto joined = cli({"join", two, two});
    CHECK(joined.code == 0);
    CHECK(joined.out.find("n 4\nk 2\nrel 0 3\nlin 1 0 1 2 3\nlin 2 0 2 1 3\n") != string::npos);
    CHECK(joined.last_line() == "RESULT: VALID");

    auto two_orders = ws.structure("c22.pls", chain(2, 2));
    CHECK(cli({"join", two, two_orders}).code == 1);

    auto swapped = ws.file("s.pls", "PLS 1\nn 2\nk 1\nrel 1 0\nlin 1 1 0\n");
    auto canonical = cli({"canonical", swapped});
    CHECK(canonical.code == 0);
    CHECK(canonical.out == "PLS 1\n# relabel 1 0\nn 2\nk 1\nrel 0 1\nlin 1 0 1\nrelabel 1 0\nRESULT: VALID\n");
}

TEST_CASE("verify and find-witness")
{
    Workspace ws;
    auto point = ws.structure("p.pls", chain(1));
    auto two = ws.structure("c2.pls", chain(2));
    auto three = ws.structure("c3.pls", chain(3));

    auto failing = cli({"verify", "--pattern", point, "--target", two, "--host", two, "--colors", "2"});
    CHECK(failing.code == 2);
    CHECK(failing.out == "COL 1\nr 2\nc 0 : 0\nc 1 : 1\nRESULT: NOT_RAMSEY\n");

    auto passing = cli({"verify", "--pattern", point, "--target", two, "--host", three, "--colors", "2"});
    CHECK(passing.code == 0);
    CHECK(passing.out == "RESULT: RAMSEY\n");

    auto unknown = cli({"verify", "--pattern", two, "--target", three, "--host", ws.structure("c6.pls", chain(6)),
            "--colors", "2", "--budget", "3"});
    CHECK(unknown.code == 2);
    CHECK(unknown.last_line() == "RESULT: UNKNOWN");

    CHECK(cli({"verify", "--pattern", point, "--target", two, "--host", three, "--colors", "0"}).code == 1);

    auto found = cli({"find-witness", "--pattern", point, "--target", three, "--colors", "2"});
    CHECK(found.code == 0);
    CHECK(found.out == serialize_structure(chain(5)) + "RESULT: FOUND\n");

    auto short_search = cli({"find-witness", "--pattern", point, "--target", three, "--colors", "3", "--family", "all",
            "--max-n", "6"});
    CHECK(short_search.code == 2);
    CHECK(short_search.out == "RESULT: NOT_FOUND\n");
}

TEST_CASE("synthesize, extract, verify-copy")
{
    Workspace ws;
    auto a = ws.structure("a.pls", chain(1, 2));
    auto b = ws.structure("b.pls", chain(2, 2));
    auto manifest = ws.dir / "run.main";

    auto built = cli({"synthesize", "--a", a, "--b", b, "--colors", "2", "--out", manifest});
    CHECK(built.code == 0);
    CHECK(built.out == "host size 27\nRESULT: FOUND\n");
    auto host = ws.dir / "run.c.pls";

    auto coloring = ws.dir / "chi.col";
    CHECK(cli({"copies", "--pattern", a, "--host", host, "--colors", "2", "--seed", "9", "--out", coloring}).code == 0);

    auto copy = ws.dir / "b.copy";
    auto extracted = cli({"extract", "--manifest", manifest, "--coloring", coloring, "--out", copy});
    CHECK(extracted.code == 0);
    CHECK(extracted.out == "RESULT: EXTRACTED\n");

    auto checked = cli({"verify-copy", "--manifest", manifest, "--coloring", coloring, "--copy", copy});
    CHECK(checked.code == 0);
    CHECK(checked.out == "RESULT: VALID\n");
    CHECK(cli({"verify-copy", "--pattern", a, "--target", b, "--host", host, "--coloring", coloring, "--copy", copy})
            .code == 0);

    auto [image, color] = parse_copy_file(read_text_file(copy), copy);
    auto wrong_color = ws.file("wrong.copy", serialize_copy_file(image, 1 - color));
    auto mismatch = cli({"verify-copy", "--manifest", manifest, "--coloring", coloring, "--copy", wrong_color});
    CHECK(mismatch.code == 2);
    CHECK(mismatch.last_line() == "RESULT: NOT_MONOCHROMATIC");

    auto not_a_copy = ws.file("bad.copy", serialize_copy_file(Embedding{{5, 0}}, color));
    auto invalid = cli({"verify-copy", "--manifest", manifest, "--coloring", coloring, "--copy", not_a_copy});
    CHECK(invalid.code == 2);
    CHECK(invalid.last_line() == "RESULT: INVALID");

    CHECK(cli({"verify-copy", "--coloring", coloring, "--copy", copy}).code == 1);
    CHECK(cli({"synthesize", "--a", a, "--b", b, "--colors", "2"}).code == 1);

    SUBCASE("a witness the oracle cannot supply")
    {
        auto pair = ws.structure("pair.pls", chain(2));
        auto big = ws.structure("big.pls", chain(4));
        auto none = cli({"synthesize", "--a", pair, "--b", big, "--colors", "2", "--max-n", "5", "--out", ws.dir / "x.main"});
        CHECK(none.code == 2);
        CHECK(none.out == "RESULT: NOT_FOUND\n");
    }

    SUBCASE("a coloring that misses copies")
    {
        auto partial = ws.file("partial.col", "COL 1\nr 2\nc 0 : 0\n");
        auto rejected = cli({"extract", "--manifest", manifest, "--coloring", partial});
        CHECK(rejected.code == 1);
        CHECK(rejected.err.find("partial.col") != string::npos);
    }
}

TEST_CASE("thread count does not change output")
{
    Workspace ws;
    auto point = ws.structure("p.pls", chain(1));
    auto two = ws.structure("c2.pls", chain(2));
    auto eight = ws.structure("c8.pls", chain(8));
    for (auto colors : {"2", "3"}) {
        vector<string> args{"verify", "--pattern", point, "--target", two, "--host", eight, "--colors", colors};
        auto one = args, many = args;
        one.insert(one.begin(), {"--threads", "1"});
        many.insert(many.begin(), {"--threads", "8"});
        CHECK(cli(one).out == cli(many).out);
    }
}
