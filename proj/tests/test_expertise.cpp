#include <doctest.h>

#include "sonsim/errors.hpp"
#include "sonsim/expertise.hpp"

using namespace sonsim;

TEST_CASE("triple canonical form round-trips") {
    ExpertiseTriple t{"IsA", "Researcher", "Employee"};
    CHECK(t.canonical() == "IsA(Researcher;Employee)");
    CHECK(ExpertiseTriple::parse(t.canonical()) == t);
}

TEST_CASE("malformed triple text is rejected") {
    CHECK_THROWS_AS(ExpertiseTriple::parse("nonsense"), SimError);
    CHECK_THROWS_AS(ExpertiseTriple::parse("IsA(Researcher)"), SimError);
    CHECK_THROWS_AS(ExpertiseTriple::parse("(a;b)"), SimError);
    CHECK_THROWS_AS(ExpertiseTriple::parse("IsA(;b)"), SimError);
}

TEST_CASE("expertise deduplicates and sorts") {
    Expertise e;
    e.add({"provides", "Researcher", "Publication"});
    e.add({"IsA", "Researcher", "Employee"});
    e.add({"IsA", "Researcher", "Employee"});
    CHECK(e.size() == 2);
    CHECK(e.triples().front().canonical() == "IsA(Researcher;Employee)");
    CHECK(e.contains({"provides", "Researcher", "Publication"}));
    CHECK_FALSE(e.contains({"IsA", "Doctor", "Researcher"}));
}

TEST_CASE("expertise text form round-trips") {
    Expertise e;
    e.add({"IsA", "Doctor", "Researcher"});
    e.add({"provides", "Researcher", "Publication"});
    CHECK(Expertise::from_text(e.to_text()) == e);
}

TEST_CASE("word splitting handles camelCase, underscores and digits") {
    CHECK(split_words("SeniorResearcher") == std::vector<std::string>{"senior", "researcher"});
    CHECK(split_words("data_source") == std::vector<std::string>{"data", "source"});
    CHECK(split_words("node42ext") == std::vector<std::string>{"node", "ext"});
}

TEST_CASE("token bag keeps the relation whole and lowercases") {
    auto bag = token_bag({"IsA", "SeniorResearcher", "Employee"});
    CHECK(bag == std::vector<std::string>{"employee", "isa", "researcher", "senior"});
}
