#include <gtest/gtest.h>

#include "test_helpers.hpp"
#include "vsd/textprep.hpp"

using namespace vsd;
using vsd::testing::error_code_of;

using Words = std::vector<std::string>;

TEST(Tokenize, CaseFoldsAndStripsEdgePunctuation) {
  EXPECT_EQ(tokenize("Me entrega TUDO, agora!"), (Words{"me", "entrega", "tudo", "agora"}));
}

TEST(Tokenize, EmptyInput) { EXPECT_TRUE(tokenize("").empty()); }

TEST(Tokenize, KeepsInternalHyphen) { EXPECT_EQ(tokenize("não-violento"), (Words{"não-violento"})); }

TEST(Tokenize, FoldsAccentedCapitals) {
  EXPECT_EQ(tokenize("ÉPOCA AÇÃO Ônibus"), (Words{"época", "ação", "ônibus"}));
}

TEST(Tokenize, DropsPunctuationOnlyTokensAndUnicodeSpaces) {
  EXPECT_EQ(tokenize("  ... ei   \u2014 olha\taqui\n"), (Words{"ei", "olha", "aqui"}));
}

TEST(StopWords, FilterPreservesOrder) {
  const StopList stops({"me"});
  EXPECT_EQ(remove_stop_words({"me", "entrega", "tudo"}, stops), (Words{"entrega", "tudo"}));
  EXPECT_TRUE(remove_stop_words({}, stops).empty());
  EXPECT_TRUE(remove_stop_words({"me", "me"}, stops).empty());
}

TEST(StopWords, ParseSkipsCommentsAndLowercases) {
  const auto stops = StopList::parse("# header\nDE\n\n  para  \n");
  EXPECT_EQ(stops.size(), 2u);
  EXPECT_TRUE(stops.contains("de"));
  EXPECT_TRUE(stops.contains("para"));
}

TEST(StopWords, DefaultsKeepNegations) {
  const auto stops = StopList::defaults();
  EXPECT_TRUE(stops.contains("me"));
  EXPECT_TRUE(stops.contains("de"));
  EXPECT_FALSE(stops.contains("não"));
  EXPECT_FALSE(stops.contains("nunca"));
}

TEST(Stemmer, PinnedStems) {
  const auto rules = StemRules::defaults();
  EXPECT_EQ(stem("meninas", rules), "menin");
  EXPECT_EQ(stem("sol", rules), "sol");
  EXPECT_EQ(stem("correndo", rules), "corr");
  EXPECT_EQ(stem("entrega", rules), "entreg");
  EXPECT_EQ(stem("tudo", rules), "tud");
}

TEST(Stemmer, NeverEmptiesAWord) {
  const auto rules = StemRules::defaults();
  for (const char* w : {"a", "o", "as", "os", "ando", "mente", "inho", "ão", "e"}) {
    EXPECT_FALSE(stem(w, rules).empty()) << w;
  }
}

TEST(Stemmer, LongestSuffixWinsWithinPass) {
  const auto rules = StemRules::parse("p;s;1;\np;ns;1;m\n");
  EXPECT_EQ(rules.stem("bons"), "bom");
  EXPECT_EQ(rules.stem("gatos"), "gato");
}

TEST(Stemmer, AtMostOneRulePerPassAndPassesInOrder) {
  const auto rules = StemRules::parse("one;a;1;\none;b;1;\ntwo;c;1;\n");
  EXPECT_EQ(rules.stem("xcba"), "xcb");
  EXPECT_EQ(rules.stem("xbc"), "xb");
}

TEST(Stemmer, MinimumStemLengthCountsCodePoints) {
  const auto rules = StemRules::parse("p;ção;2;\n");
  EXPECT_EQ(rules.stem("ação"), "ação");
  EXPECT_EQ(rules.stem("nação"), "na");
}

TEST(Stemmer, EmptyRulesAreIdentity) { EXPECT_EQ(StemRules().stem("correndo"), "correndo"); }

TEST(Stemmer, RejectsMalformedRules) {
  for (const char* text : {"p;s\n", "p;s;0;\n", "p;s;x;\n", "p;s;1;longer\n"}) {
    try {
      StemRules::parse(std::string("# rules\n") + text);
      ADD_FAILURE() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::MalformedRecord) << text;
      EXPECT_EQ(e.line(), 2u) << text;
    }
  }
  EXPECT_EQ(error_code_of([] { StemRules({{"p", "s", 0, ""}}); }), Errc::InvalidArgument);
}

TEST(Preprocess, StopsThenStems) {
  const auto tokens = preprocess("Me entrega tudo", StopList({"me"}), StemRules::defaults());
  EXPECT_EQ(tokens, (std::vector<Token>{{"entrega", "entreg"}, {"tudo", "tud"}}));
}

TEST(Preprocess, OnlyStopWordsGivesEmpty) {
  EXPECT_TRUE(preprocess("de para com", StopList::defaults(), StemRules::defaults()).empty());
}

TEST(Preprocess, Deterministic) {
  const auto stops = StopList::defaults();
  const auto rules = StemRules::defaults();
  const std::string text = "Passa o celular agora, senão eu atiro!";
  EXPECT_EQ(preprocess(text, stops, rules), preprocess(text, stops, rules));
}
