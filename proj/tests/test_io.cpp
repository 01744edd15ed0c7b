#include "alpharep/io.hpp"

#include <catch_amalgamated.hpp>

using namespace alpharep;

TEST_CASE("matrix files") {
    json j = json::parse(R"({"field":"5","rows":[[1,0,1,1],[0,1,1,-1]]})");
    RepresentedMatroid m = load_matroid(j);
    CHECK(m.field().q() == 5);
    CHECK(m.size() == 4);
    CHECK(m.matrix().at(1, 3) == m.field().from_int(4)); // -1 reduced mod 5

    SECTION("field override reinterprets integer entries") {
        FieldCtx f7(7, 1);
        RepresentedMatroid m7 = load_matroid(j, f7);
        CHECK(m7.field().q() == 7);
        CHECK(m7.matrix().at(1, 3) == f7.from_int(6));
    }

    SECTION("labels") {
        json jl = json::parse(R"({"field":"3","rows":[[1,0],[0,1]],"labels":["a","b"]})");
        CHECK(load_matroid(jl).labels() == std::vector<std::string>{"a", "b"});
    }

    SECTION("extension fields take coefficient lists") {
        json j9 = json::parse(R"({"field":"3^2","rows":[[[0,1],2]]})");
        RepresentedMatroid m9 = load_matroid(j9);
        CHECK(m9.field().q() == 9);
        CHECK(m9.matrix().at(0, 0) == m9.field().from_coeffs({0, 1}));
        CHECK(m9.matrix().at(0, 1) == m9.field().from_int(2));
    }

    SECTION("malformed input") {
        CHECK_THROWS_AS(load_matroid(json::parse(R"({"field":"5"})")), input_error);
        CHECK_THROWS_AS(load_matroid(json::parse(R"({"rows":[[1]]})")), input_error);
        CHECK_THROWS_AS(load_matroid(json::parse(R"({"field":"5","rows":[[1,2],[3]]})")),
                        input_error);
        CHECK_THROWS_AS(load_matroid(json::parse(R"({"field":"4","rows":[[1]]})")),
                        input_error);
        CHECK_THROWS_AS(load_matroid(json::parse(R"({"field":"5","rows":[["x"]]})")),
                        input_error);
    }
}

TEST_CASE("graph files") {
    json j = json::parse(R"({"vertices":3,"edges":[[1,2],[1,3],[2,3]]})");
    Graph g = load_graph(j);
    CHECK(g.vertices == 3);
    CHECK(g.edges.size() == 3);
    CHECK(looks_like_graph(j));
    CHECK_FALSE(looks_like_graph(json::parse(R"({"field":"5","rows":[[1]]})")));

    CHECK_THROWS_AS(load_graph(json::parse(R"({"vertices":2,"edges":[[1,5]]})")),
                    input_error);
    CHECK_THROWS_AS(load_graph(json::parse(R"({"edges":[[1,2]]})")), input_error);
}

TEST_CASE("embedded graph files") {
    json j = json::parse(R"({
        "vertices": 4,
        "edges": [[1,2],[1,3],[1,4],[2,3],[2,4],[3,4]],
        "rotation": {"1": [1,3,2], "2": [4,5,1], "3": [2,6,4], "4": [6,3,5]}
    })");
    CubicPlanarGraph g = load_embedded_graph(j);
    CHECK(g.face_count() == 4);

    SECTION("faces given directly") {
        json jf = json::parse(R"({
            "vertices": 4,
            "edges": [[1,2],[1,3],[1,4],[2,3],[2,4],[3,4]],
            "faces": [[1,2,3],[1,2,4],[1,3,4],[2,3,4]]
        })");
        CHECK(load_embedded_graph(jf).face_count() == 4);
    }

    SECTION("bad rotation indices") {
        json jb = j;
        jb["rotation"]["1"] = {1, 3, 9};
        CHECK_THROWS_AS(load_embedded_graph(jb), input_error);
        jb = j;
        jb.erase("rotation");
        CHECK_THROWS_AS(load_embedded_graph(jb), input_error);
    }
}

TEST_CASE("tally serialization") {
    TermTally t;
    t.counts[{4, 1}] = 186;
    t.counts[{4, -1}] = 162;
    t.counts[{2, 1}] = 6;
    t.counts[{2, -1}] = 10;
    t.skipped_odd = 148;
    json j = tally_to_json(t);
    CHECK(j["(4,+)"] == 186);
    CHECK(j["(4,-)"] == 162);
    CHECK(j["(2,+)"] == 6);
    CHECK(j["(2,-)"] == 10);
    CHECK(j["skipped_odd"] == 148);
    // canonical form: keys sorted, no floats
    CHECK(j.dump() ==
          R"js({"(2,+)":6,"(2,-)":10,"(4,+)":186,"(4,-)":162,"skipped_odd":148})js");
}

TEST_CASE("rational strings") {
    CHECK(to_string(Rational(4)) == "4");
    CHECK(to_string(Rational(8, 3)) == "8/3");
    CHECK(to_string(Rational(-1, 3)) == "-1/3");
    CHECK(to_string(Rational(0)) == "0");
}
