#include "test_support.hpp"

#include <morfwork/error.hpp>
#include <morfwork/text.hpp>

#include <gtest/gtest.h>

using namespace morfwork;

namespace
{
	std::vector<std::string> cands(const Lexicon& lex, std::string_view w)
	{
		std::vector<std::string> out;
		for (auto* e : lex.candidateRoots(text::decode(w))) out.push_back(e->root + "/" + std::string(name(e->category)));
		return out;
	}
}

TEST(Lexicon, ShippedEntries)
{
	const auto& lex = fixture::shared().wb.lexicon();
	EXPECT_TRUE(lex.find("ev", Category::Noun));
	EXPECT_TRUE(lex.find("evin", Category::Noun));
	ASSERT_TRUE(lex.find("ayak", Category::Noun));
	EXPECT_TRUE(lex.find("ayak", Category::Noun)->finalStopSoftens);
	EXPECT_TRUE(lex.find("masa", Category::Noun));
	EXPECT_TRUE(lex.find("kes", Category::Verb));
	EXPECT_TRUE(lex.find("sen", Category::Pronoun));
	EXPECT_GE(lex.size(), 6u);
}

TEST(Lexicon, EmptyAndInvalidFiles)
{
	EXPECT_TRUE(Lexicon::parse("").empty());
	EXPECT_TRUE(Lexicon::parse("# only a comment\n").empty());
	try
	{
		Lexicon::parse("ev\tnoun\t-\thouse\na+b\tnoun\t-\tbad\n");
		FAIL();
	}
	catch (const ParseError& e)
	{
		EXPECT_EQ(e.line(), 2u);
	}
	EXPECT_THROW(Lexicon::parse("ev\tnoun\nev\tnoun\n"), ParseError);
	EXPECT_NO_THROW(Lexicon::parse("yaz\tnoun\nyaz\tverb\n"));
	EXPECT_THROW(Lexicon::parse("ev\tthing\n"), ParseError);
	EXPECT_THROW(Lexicon::parse("ev\tnoun\tfinal-stop-softens\n"), ParseError);
	EXPECT_THROW(Lexicon::parse("Ev\tnoun\n"), ParseError);
	EXPECT_THROW(Lexicon::parse("e0\tnoun\n"), ParseError);
}

TEST(Lexicon, CandidateRoots)
{
	const auto& lex = fixture::shared().wb.lexicon();
	EXPECT_EQ(cands(lex, "evin"), (std::vector<std::string>{ "evin/noun", "ev/noun" }));
	EXPECT_EQ(cands(lex, "ayağın"), (std::vector<std::string>{ "ayak/noun" }));
	EXPECT_TRUE(cands(lex, "xyz").empty());
}

TEST(Lexicon, CandidateProperties)
{
	const auto& lex = fixture::shared().wb.lexicon();
	for (auto w : { "evimize", "çocuğun", "kesilemedi", "sorunu", "yazıyı", "köpeğin", "ayaklar", "yemeği" })
	{
		const auto u = text::decode(w);
		auto c = lex.candidateRoots(u);
		std::size_t prev = SIZE_MAX;
		for (auto* e : c)
		{
			auto r = text::decode(e->root);
			auto soft = r;
			if (e->finalStopSoftens) soft.back() = U'ğ';
			EXPECT_TRUE(u.compare(0, r.size(), r) == 0 || u.compare(0, soft.size(), soft) == 0) << w << " " << e->root;
			EXPECT_LE(r.size(), prev);
			prev = r.size();
		}
		for (auto& e : lex.entries())
		{
			auto r = text::decode(e.root);
			if (u.compare(0, r.size(), r) == 0)
				EXPECT_NE(std::find(c.begin(), c.end(), &e), c.end()) << w << " misses " << e.root;
		}
	}
}

TEST(Lexicon, SofteningRootLexicalForm)
{
	RootEntry e;
	e.root = "ayak";
	e.finalStopSoftens = true;
	EXPECT_EQ(text::encode(e.lexicalForm()), "ayaK");
	e.finalStopSoftens = false;
	EXPECT_EQ(text::encode(e.lexicalForm()), "ayak");
}
