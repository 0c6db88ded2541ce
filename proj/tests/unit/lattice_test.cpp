#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <set>
#include <string>
#include <vector>

#include "dot_checker.hpp"
#include "oracles.hpp"
#include "schemata/error.hpp"
#include "schemata/lattice.hpp"

namespace schemata {
namespace {

Schema S(std::string cells) { return Schema(std::move(cells)); }
const Schema kEps = Schema::empty();

template <typename Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected schemata::Error";
  return ErrorCode::kInvalidConfig;
}

std::set<std::string> texts(std::span<const Schema> xs) {
  std::set<std::string> out;
  for (const auto& x : xs) out.insert(x.to_string());
  return out;
}

SchematicLattice example_lattice() {
  return complete(WordSet{"110", "100", "001", "000"}, Alphabet::binary());
}

std::set<std::pair<std::string, std::string>> cover_texts(const SchematicLattice& l) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& c : l.covers()) {
    out.emplace(l.elements()[c.lower].to_string(), l.elements()[c.upper].to_string());
  }
  return out;
}

TEST(Complete, GoldenFourWordExample) {
  const auto lattice = example_lattice();
  EXPECT_EQ(texts(lattice.elements()),
            (std::set<std::string>{"001", "100", "000", "110", "00*", "*00", "1*0", "**0", "*0*", "***", "^"}));
  EXPECT_EQ(lattice.zero(), kEps);
  EXPECT_EQ(lattice.unit(), S("***"));
  EXPECT_EQ(lattice.length(), 3u);
  EXPECT_EQ(lattice.atoms(), (WordSet{"000", "001", "100", "110"}));
}

TEST(Complete, SingleWord) {
  const auto lattice = complete(WordSet{"0110"}, Alphabet::binary());
  EXPECT_EQ(texts(lattice.elements()), (std::set<std::string>{"0110", "^"}));
  EXPECT_EQ(lattice.covers(), (std::vector<Cover>{{0, 1}}));
}

TEST(Complete, WordLatticeOverInferredAlphabet) {
  const std::vector<std::string> words{"help", "kelp", "yell", "tell", "talk", "walk"};
  const auto alphabet = Alphabet::infer(words);
  const auto lattice = complete(WordSet::parse(words, alphabet), alphabet);
  EXPECT_EQ(lattice.size(), 13u);
  EXPECT_EQ(lattice.unit(), S("**l*"));
  EXPECT_TRUE(lattice.packed().empty());
  const auto expected = oracle::completion(words);
  std::set<std::string> got;
  for (const auto& s : lattice.elements()) got.insert(std::string(s.cells()));
  EXPECT_EQ(got, expected);
}

TEST(Complete, DuplicatesDoNotChangeStructure) {
  const std::vector<Schema> pop{S("01"), S("01"), S("10")};
  const auto lattice = complete(pop, Alphabet::binary());
  EXPECT_EQ(texts(lattice.elements()), (std::set<std::string>{"^", "01", "10", "**"}));
  EXPECT_EQ(lattice.atoms().size(), 2u);
}

TEST(Complete, Errors) {
  const auto bin = Alphabet::binary();
  EXPECT_EQ(code_of([&] { complete(WordSet{}, bin); }), ErrorCode::kEmptyPopulation);
  EXPECT_EQ(code_of([&] { complete(WordSet{"ab"}, bin); }), ErrorCode::kInvalidSymbol);
  const std::vector<Schema> mixed{S("01"), S("011")};
  EXPECT_EQ(code_of([&] { complete(mixed, bin); }), ErrorCode::kLengthMismatch);
  EXPECT_EQ(code_of([&] {
              complete(WordSet{"0000", "1111", "0101", "1010"}, bin, CompletionOptions{5});
            }),
            ErrorCode::kBudgetExceeded);
}

TEST(Complete, BudgetCountsTheEmptySchema) {
  const auto bin = Alphabet::binary();
  const WordSet pop{"00", "11"};
  EXPECT_NO_THROW(complete(pop, bin, CompletionOptions{4}));
  EXPECT_EQ(code_of([&] { complete(pop, bin, CompletionOptions{3}); }), ErrorCode::kBudgetExceeded);
}

TEST(Complete, WideBinaryWordsUseGenericPath) {
  std::mt19937_64 rng(5);
  const auto words = oracle::random_words(rng, 6, 80, "01");
  std::vector<Schema> pop;
  for (const auto& w : words) pop.emplace_back(w);
  const auto lattice = complete(pop, Alphabet::binary());
  EXPECT_TRUE(lattice.packed().empty());
  std::set<std::string> got;
  for (const auto& s : lattice.elements()) got.insert(std::string(s.cells()));
  EXPECT_EQ(got, oracle::completion(words));
}

TEST(Complete, FourSymbolAlphabet) {
  std::mt19937_64 rng(6);
  const Alphabet dna("ACGT");
  for (int n = 0; n < 50; ++n) {
    const auto words = oracle::random_words(rng, 1 + rng() % 7, 4, "ACGT");
    std::vector<Schema> pop;
    for (const auto& w : words) pop.emplace_back(w);
    const auto lattice = complete(pop, dna);
    std::set<std::string> got;
    for (const auto& s : lattice.elements()) got.insert(std::string(s.cells()));
    EXPECT_EQ(got, oracle::completion(words));
  }
}

TEST(Complete, GoldenRunsWellUnderTenMilliseconds) {
  const auto start = std::chrono::steady_clock::now();
  for (int n = 0; n < 100; ++n) (void)example_lattice();
  const std::chrono::duration<double, std::milli> per = (std::chrono::steady_clock::now() - start) / 100;
  EXPECT_LT(per.count(), 10.0);
}

TEST(LatticeConstructor, SortsAndValidates) {
  const auto bin = Alphabet::binary();
  const SchematicLattice l(bin, 2, WordSet{"01", "10"}, {S("**"), S("10"), kEps, S("01")});
  EXPECT_EQ(l.elements().front(), kEps);
  EXPECT_EQ(l.unit(), S("**"));
  EXPECT_EQ(l.index_of(S("10")), 2u);
  EXPECT_FALSE(l.contains(S("11")));
  EXPECT_EQ(l.packed().size(), 4u);
  EXPECT_EQ(code_of([&] { SchematicLattice(bin, 2, WordSet{"01"}, {S("01")}); }), ErrorCode::kInvalidConfig);
  EXPECT_EQ(code_of([&] { SchematicLattice(bin, 2, WordSet{"01"}, {kEps, S("01"), S("01")}); }),
            ErrorCode::kInvalidConfig);
}

TEST(Supremum, Examples) {
  const auto l = example_lattice();
  EXPECT_EQ(supremum(std::vector{S("1*0"), S("00*")}, l), S("***"));
  EXPECT_EQ(supremum(std::vector{S("1*0")}, l), S("1*0"));
  EXPECT_EQ(supremum(std::vector{S("00*"), S("*00")}, l), S("*0*"));
  EXPECT_EQ(supremum(std::vector<Schema>{}, l), kEps);
  EXPECT_EQ(code_of([&] { supremum(std::vector{S("11*")}, l); }), ErrorCode::kElementNotInLattice);
}

TEST(Infimum, Examples) {
  const auto l = example_lattice();
  EXPECT_EQ(infimum(std::vector{S("**0"), S("*0*")}, l), S("*00"));
  EXPECT_EQ(infimum(std::vector{S("1*0")}, l), S("1*0"));
  EXPECT_EQ(infimum(std::vector{S("1*0"), S("00*")}, l), kEps);
  EXPECT_EQ(code_of([&] { infimum(std::vector{S("01*")}, l); }), ErrorCode::kElementNotInLattice);
  EXPECT_EQ(code_of([&] { infimum(std::vector<Schema>{}, l); }), ErrorCode::kUndefined);
}

TEST(Infimum, CompressesAtomsWhenBlendIsNotAnElement) {
  const auto l = complete(WordSet{"001", "010", "100"}, Alphabet::binary());
  ASSERT_FALSE(l.contains(S("00*")));
  EXPECT_EQ(blend(S("0**"), S("*0*")), S("00*"));
  EXPECT_EQ(infimum(std::vector{S("0**"), S("*0*")}, l), S("001"));
  EXPECT_EQ(infimum(std::vector{S("0**"), S("**0"), S("*0*")}, l), kEps);
}

TEST(Covers, ExampleEdges) {
  const auto l = example_lattice();
  const auto edges = cover_texts(l);
  EXPECT_EQ(edges.size(), 16u);
  EXPECT_TRUE(edges.contains({"^", "000"}));
  EXPECT_TRUE(edges.contains({"*00", "**0"}));
  EXPECT_FALSE(edges.contains({"000", "**0"}));
  EXPECT_EQ(covers_of(l), l.covers());
  EXPECT_EQ(covers_of(l.elements()), l.covers());
}

TEST(Covers, UnsortedInputKeepsCallerIndices) {
  const std::vector<Schema> xs{S("**"), S("01"), kEps};
  const auto c = covers_of(xs);
  EXPECT_EQ(c, (std::vector<Cover>{{1, 0}, {2, 1}}));
}

TEST(Covers, SkipsRanksInsideSublattices) {
  // 000 and 111 join straight to ***, two ranks apart.
  const auto l = complete(WordSet{"000", "111"}, Alphabet::binary());
  const auto edges = cover_texts(l);
  EXPECT_EQ(edges, (std::set<std::pair<std::string, std::string>>{
                       {"^", "000"}, {"^", "111"}, {"000", "***"}, {"111", "***"}}));
}

TEST(BlendClosure, Examples) {
  EXPECT_EQ(texts(blend_closure(std::vector{S("11***"), S("**11*")})),
            (std::set<std::string>{"11***", "**11*", "1111*"}));
  EXPECT_EQ(texts(blend_closure(std::vector{S("1*0")})), (std::set<std::string>{"1*0"}));
  EXPECT_EQ(texts(blend_closure(std::vector{S("1**"), S("*1*"), S("**1")})),
            (std::set<std::string>{"1**", "*1*", "**1", "11*", "1*1", "*11", "111"}));
  EXPECT_EQ(texts(blend_closure(std::vector{S("1*"), S("0*")})), (std::set<std::string>{"1*", "0*", "^"}));
  EXPECT_TRUE(blend_closure(std::vector<Schema>{}).empty());
  EXPECT_EQ(code_of([] { blend_closure(std::vector{S("1*"), S("1")}); }), ErrorCode::kLengthMismatch);
}

TEST(BlendClosure, ProperClosureExcludesSurvivors) {
  const std::vector xs{S("11**"), S("**11"), S("0***")};
  EXPECT_EQ(texts(proper_blend_closure(xs)), (std::set<std::string>{"1111", "^", "0*11"}));
  EXPECT_TRUE(in_proper_blend_closure(S("1111"), xs));
  EXPECT_FALSE(in_proper_blend_closure(S("11**"), xs));
  EXPECT_TRUE(in_blend_closure(S("11**"), xs));
  EXPECT_FALSE(in_blend_closure(S("1***"), xs));
  EXPECT_FALSE(in_blend_closure(S("1111"), std::vector{S("11**")}));
}

TEST(FullSpace, Examples) {
  const auto bin = Alphabet::binary();
  const auto three = full_space(3, bin);
  EXPECT_EQ(three.size(), 28u);
  EXPECT_EQ(three.unit(), S("***"));
  EXPECT_EQ(three.atoms().size(), 8u);
  EXPECT_EQ(texts(full_space(1, bin).elements()), (std::set<std::string>{"0", "1", "*", "^"}));
  EXPECT_EQ(full_space(4, bin).size(), 82u);
  EXPECT_EQ(full_space(2, Alphabet("abc")).size(), 17u);
  EXPECT_EQ(code_of([&] { full_space(5, bin); }), ErrorCode::kBudgetExceeded);
  EXPECT_NO_THROW(full_space(5, bin, 243));
  EXPECT_EQ(code_of([&] { full_space(0, bin); }), ErrorCode::kLengthMismatch);
}

TEST(FullSpace, EqualsCompletionOfAllWords) {
  const auto bin = Alphabet::binary();
  for (std::size_t l = 1; l <= 4; ++l) {
    std::vector<Schema> words;
    for (const auto& w : oracle::all_words(l, "01")) words.emplace_back(w);
    const auto full = full_space(l, bin);
    const auto done = complete(words, bin);
    EXPECT_TRUE(std::equal(full.elements().begin(), full.elements().end(), done.elements().begin(),
                           done.elements().end()));
    for (const auto& c : full.covers()) {
      EXPECT_EQ(antiorder(full.elements()[c.upper]), antiorder(full.elements()[c.lower]) + 1);
    }
  }
}

TEST(Dump, SortedByAntiorderThenText) {
  EXPECT_EQ(dump(example_lattice()),
            "-1 ^\n0 000\n0 001\n0 100\n0 110\n1 *00\n1 00*\n1 1*0\n2 **0\n2 *0*\n3 ***\n");
}

TEST(Dot, ExampleLatticeParses) {
  const auto l = example_lattice();
  const auto g = testing::DotChecker::parse(to_dot(l));
  EXPECT_TRUE(g.directed);
  EXPECT_EQ(g.nodes.size(), 11u);
  EXPECT_EQ(g.edges.size(), 16u);
  std::set<std::string> labels;
  for (const auto& [node, attrs] : g.node_attrs) {
    if (attrs.contains("label")) labels.insert(attrs.at("label"));
  }
  EXPECT_EQ(labels, texts(l.elements()));
  // One same-rank group per antiorder value present.
  EXPECT_EQ(g.same_rank_groups.size(), 5u);
}

TEST(Dot, EdgesPointUpwardFromLowerRank) {
  const auto l = example_lattice();
  const auto g = testing::DotChecker::parse(to_dot(l));
  std::map<std::string, int> rank;
  for (const auto& [node, attrs] : g.node_attrs) rank[node] = antiorder(parse_schema(attrs.at("label"), Alphabet::binary()));
  for (const auto& [a, b] : g.edges) EXPECT_LT(rank[a], rank[b]);
}

TEST(Dot, SingleWord) {
  const auto g = testing::DotChecker::parse(to_dot(complete(WordSet{"10"}, Alphabet::binary())));
  EXPECT_EQ(g.nodes.size(), 2u);
  EXPECT_EQ(g.edges.size(), 1u);
}

TEST(Dot, EscapesLabels) {
  const Alphabet odd("a\"");
  const auto l = complete(std::vector{S("a\""), S("\"a")}, odd);
  const auto g = testing::DotChecker::parse(to_dot(l));
  EXPECT_EQ(g.nodes.size(), 4u);
  std::set<std::string> labels;
  for (const auto& [node, attrs] : g.node_attrs) labels.insert(attrs.at("label"));
  EXPECT_TRUE(labels.contains("a\""));
}

}  // namespace
}  // namespace schemata
