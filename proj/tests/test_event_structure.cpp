#include <doctest.h>

#include <set>

#include "ces/event_structure.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace ces;

namespace {

std::set<IdPair> conflict_set(const EventStructure &es) {
  auto pairs = es.conflict_pairs();
  return {pairs.begin(), pairs.end()};
}

} // namespace

TEST_CASE("the bundled models parse and satisfy the axioms") {
  for (const char *name : {"rover.ces", "railway.ces", "network.ces", "phone.ces", "sms.ces",
                           "napoleon.ces", "copper.ces", "toy.ces"}) {
    CAPTURE(name);
    CHECK_NOTHROW(load_fixture(name));
  }
  CHECK(load_fixture("network.ces").size() == 9);
  CHECK(load_fixture("rover.ces").size() == 6);
  CHECK(load_fixture("napoleon.ces").size() == 0);
  CHECK(load_fixture("napoleon.ces").exogenous_atoms().size() == 5);
}

TEST_CASE("network conflict closure is the exact hereditary set") {
  auto es = load_fixture("network.ces");
  std::set<IdPair> expected = {{"e2", "e3"}, {"e2", "e5"}, {"e2", "e7"},
                               {"e3", "e4"}, {"e3", "e6"}, {"e4", "e5"},
                               {"e4", "e7"}, {"e5", "e6"}, {"e6", "e7"}};
  CHECK(conflict_set(es) == expected);
}

TEST_CASE("rover and railway conflict closures") {
  std::set<IdPair> rover_expected = {{"B", "C"}, {"B", "E"}, {"B", "F"}, {"C", "D"},
                                     {"D", "E"}, {"D", "F"}, {"E", "F"}};
  CHECK(conflict_set(load_fixture("rover.ces")) == rover_expected);

  std::set<IdPair> railway_expected = {{"e3", "e4"}, {"e3", "e5"}, {"e4", "e6"}, {"e5", "e6"}};
  CHECK(conflict_set(load_fixture("railway.ces")) == railway_expected);
}

TEST_CASE("relation queries reproduce the worked examples") {
  auto network = load_fixture("network.ces");
  for (auto [a, b] : {IdPair{"e2", "e8"}, IdPair{"e6", "e8"}, IdPair{"e9", "e2"},
                      IdPair{"e5", "e9"}}) {
    CAPTURE(a);
    CAPTURE(b);
    CHECK(network.relation(a, b) == Relation::concurrent);
  }
  CHECK(network.relation("e1", "e7") == Relation::causes);
  CHECK(network.relation("e7", "e1") == Relation::caused_by);
  CHECK(network.relation("e2", "e5") == Relation::conflict);
  CHECK(network.relation("e4", "e4") == Relation::same);

  auto sms = load_fixture("sms.ces");
  CHECK(sms.relation("B2", "A1") == Relation::caused_by);
  CHECK(sms.relation("B2", "A2") == Relation::concurrent);
  CHECK(sms.relation("A2", "B1") == Relation::concurrent);

  auto phone = load_fixture("phone.ces");
  CHECK(phone.relation("B1", "A2") == Relation::causes);
  CHECK(phone.relation("A2", "B1") == Relation::caused_by);
  CHECK(phone.relation("A1", "B1") == Relation::concurrent);
}

TEST_CASE("causal histories") {
  auto railway = load_fixture("railway.ces");
  CHECK(railway.causal_history("e5") == std::set<EventId>{"e1", "e2", "e4", "e5"});
  CHECK(railway.causal_history("e6") == std::set<EventId>{"e1", "e2", "e3", "e6"});

  auto rover = load_fixture("rover.ces");
  CHECK(rover.causal_history("E") == std::set<EventId>{"A", "C", "E"});
  CHECK(rover.causal_history("A") == std::set<EventId>{"A"});
  CHECK_THROWS_AS((void)rover.causal_history("nope"), Error);
}

TEST_CASE("build rejects broken inputs with the right code") {
  std::vector<LabelledEvent> xy = {{"x", "X"}, {"y", "Y"}};

  auto code_of = [](auto &&fn) {
    try {
      fn();
    } catch (const Error &error) {
      return error.code();
    }
    return ErrorCode::syntax; // placeholder for "did not throw"
  };

  CHECK(code_of([&] { EventStructure::build(xy, {{"x", "y"}, {"y", "x"}}, {}); }) ==
        ErrorCode::causality_cycle);
  CHECK(code_of([&] { EventStructure::build(xy, {}, {{"x", "x"}}); }) ==
        ErrorCode::self_conflict);
  CHECK(code_of([&] { EventStructure::build(xy, {{"x", "y"}}, {{"x", "y"}}); }) ==
        ErrorCode::self_conflict);
  CHECK(code_of([&] { EventStructure::build({{"x", "X"}, {"x", "X2"}}, {}, {}); }) ==
        ErrorCode::duplicate_event);
  CHECK(code_of([&] { EventStructure::build(xy, {{"x", "zz"}}, {}); }) ==
        ErrorCode::unknown_event);
  CHECK(code_of([&] { EventStructure::build({{"a b", "bad"}}, {}, {}); }) ==
        ErrorCode::syntax);
  CHECK(code_of([&] { EventStructure::build(xy, {}, {}, {"occ"}); }) == ErrorCode::syntax);

  Limits tiny;
  tiny.max_events = 1;
  CHECK(code_of([&] { EventStructure::build(xy, {}, {}, {}, tiny); }) == ErrorCode::size_limit);
}

TEST_CASE("conflict inherited onto a common descendant is rejected") {
  // u # v with both below w would force w # w.
  std::vector<LabelledEvent> events = {{"u", "U"}, {"v", "V"}, {"w", "W"}};
  CHECK_THROWS_AS(EventStructure::build(events, {{"u", "w"}, {"v", "w"}}, {{"u", "v"}}),
                  Error);
  try {
    EventStructure::build(events, {{"u", "w"}, {"v", "w"}}, {{"u", "v"}});
  } catch (const Error &error) {
    CHECK(error.code() == ErrorCode::self_conflict);
  }
}

TEST_CASE("cycle errors name a cycle") {
  std::vector<LabelledEvent> events = {{"x", "X"}, {"y", "Y"}, {"z", "Z"}};
  try {
    EventStructure::build(events, {{"x", "y"}, {"y", "z"}, {"z", "x"}}, {});
    FAIL("expected a causality_cycle error");
  } catch (const Error &error) {
    CHECK(error.code() == ErrorCode::causality_cycle);
    CHECK(std::string(error.what()).find("->") != std::string::npos);
  }
}

TEST_CASE("generating relations are normalized") {
  std::vector<LabelledEvent> events = {{"a", "A"}, {"b", "B"}, {"c", "C"}};
  auto es = EventStructure::build(events, {{"a", "b"}, {"a", "b"}}, {{"c", "b"}, {"b", "c"}});
  CHECK(es.immediate_causes() == std::vector<IdPair>{{"a", "b"}});
  CHECK(es.immediate_conflicts() == std::vector<IdPair>{{"b", "c"}});
}

TEST_CASE("degree of concurrency on the bundled models") {
  CHECK(degree_of_concurrency(load_fixture("network.ces")) == 2);
  CHECK(degree_of_concurrency(load_fixture("railway.ces")) == 2);
  CHECK(degree_of_concurrency(load_fixture("rover.ces")) == 2);
  CHECK(degree_of_concurrency(load_fixture("sms.ces")) == 2);
  CHECK(degree_of_concurrency(load_fixture("phone.ces")) == 2);
  CHECK(degree_of_concurrency(load_fixture("napoleon.ces")) == 0);

  auto single = EventStructure::build({{"only", "L"}}, {}, {});
  CHECK(degree_of_concurrency(single) == 1);

  // Three pairwise unordered, conflict-free events.
  auto wide = EventStructure::build({{"a", "A"}, {"b", "B"}, {"c", "C"}}, {}, {});
  CHECK(degree_of_concurrency(wide) == 3);
}

TEST_CASE("index access and labels") {
  auto rover = load_fixture("rover.ces");
  CHECK(rover.index_of("A") == 0);
  CHECK(rover.id_at(0) == "A");
  CHECK(rover.label_of("E") == "Error");
  CHECK(rover.label_at(rover.index_of("C")) == "Communicate with the Earth");
  CHECK(rover.has_event("F"));
  CHECK(!rover.has_event("G"));
  CHECK(rover.has_atom("dark"));
  CHECK(!rover.has_atom("light"));
  CHECK_THROWS_AS((void)rover.index_of("G"), Error);
}
