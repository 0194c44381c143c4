#include "test_support.hpp"

#include <morfwork/error.hpp>
#include <morfwork/text.hpp>

#include <gtest/gtest.h>

#include <chrono>

using namespace morfwork;

namespace
{
	std::vector<std::string> texts(const std::vector<Token>& ts)
	{
		std::vector<std::string> out;
		for (auto& t : ts) out.push_back(t.text);
		return out;
	}

	TaggedCorpus tagText(const std::string& text)
	{
		return fixture::shared().dis.tagCorpus(readCorpus(text));
	}
}

TEST(Tokenize, Examples)
{
	EXPECT_EQ(texts(tokenize("Kumar belasına tutuldu.")),
		(std::vector<std::string>{ "Kumar", "belasına", "tutuldu", "." }));
	EXPECT_TRUE(tokenize("").empty());
	EXPECT_TRUE(tokenize("   ").empty());
	auto t = tokenize("ev,  ev");
	ASSERT_EQ(t.size(), 3u);
	EXPECT_EQ(t[0], (Token{ "ev", 0, 2 }));
	EXPECT_EQ(t[1], (Token{ ",", 2, 3 }));
	EXPECT_EQ(t[2], (Token{ "ev", 5, 7 }));
}

TEST(Tokenize, SpansAreCodePointsAndOrdered)
{
	const std::string s = "\"Çocuğun\" kalemi... kırıldı!";
	auto t = tokenize(s);
	EXPECT_EQ(texts(t), (std::vector<std::string>{ "\"", "Çocuğun", "\"", "kalemi", ".", ".", ".", "kırıldı", "!" }));
	const auto u = text::decode(s);
	std::size_t prev = 0;
	for (auto& tok : t)
	{
		EXPECT_GE(tok.start, prev);
		EXPECT_LT(tok.start, tok.end);
		EXPECT_LE(tok.end, u.size());
		EXPECT_EQ(text::encode(u.substr(tok.start, tok.end - tok.start)), tok.text);
		prev = tok.end;
	}
}

TEST(BuildIndex, KesilemediSentence)
{
	auto tagged = tagText("Musluğun akıntısı bir türlü kesilemedi\n");
	auto idx = buildIndex(tagged);
	const Posting p{ 0, 4 };
	auto has = [&](const PostingList& l) { return std::find(l.begin(), l.end(), p) != l.end(); };
	EXPECT_TRUE(has(idx.lookup(Dimension::Voice, "passive")));
	EXPECT_TRUE(has(idx.lookup(Dimension::Aspect, "past")));
	EXPECT_TRUE(has(idx.lookup(Dimension::Agreement, "3sg")));
	EXPECT_TRUE(has(idx.root("kes")));
	EXPECT_TRUE(has(idx.suffix("NEG-CAP")));
}

TEST(BuildIndex, EmptyCorpusAndIdempotence)
{
	EXPECT_TRUE(buildIndex(TaggedCorpus{}).empty());
	const auto& s = fixture::shared();
	EXPECT_EQ(buildIndex(s.tagged), s.index);
	EXPECT_EQ(buildIndex(tagText(readFile(fixture::dataDir() / "sample_corpus.txt"))), s.index);
}

TEST(BuildIndex, PostingsMatchLinearScan)
{
	const auto& s = fixture::shared();
	std::size_t tokens = 0;
	std::map<std::pair<Dimension, std::string>, PostingList> scan;
	for (std::size_t i = 0; i < s.tagged.sentences.size(); ++i)
	{
		const auto& ts = s.tagged.sentences[i];
		ASSERT_EQ(ts.readings.size(), ts.sentence.tokens.size());
		for (std::size_t t = 0; t < ts.readings.size(); ++t)
		{
			if (!ts.readings[t]) continue;
			++tokens;
			for (auto d : kDimensions)
				if ((*ts.readings[t])[d])
					scan[{ d, *(*ts.readings[t])[d] }].push_back({ static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(t) });
		}
	}
	EXPECT_EQ(scan, s.index.postings);
	std::size_t categoryPostings = 0;
	for (auto& [k, l] : s.index.postings)
	{
		EXPECT_TRUE(std::is_sorted(l.begin(), l.end()));
		EXPECT_EQ(std::adjacent_find(l.begin(), l.end()), l.end());
		if (k.first == Dimension::Category) categoryPostings += l.size();
	}
	EXPECT_EQ(categoryPostings, tokens);
}

TEST(Persistence, TaggedRoundTrip)
{
	const auto& s = fixture::shared();
	const auto text1 = serializeTagged(s.tagged);
	const auto back = parseTagged(text1);
	EXPECT_EQ(back, s.tagged);
	EXPECT_EQ(serializeTagged(back), text1);

	const auto dir = fixture::scratchDir("tagged");
	saveTagged(s.tagged, dir / "c.tagged");
	EXPECT_EQ(loadTagged(dir / "c.tagged"), s.tagged);
	std::filesystem::remove_all(dir);
}

TEST(Persistence, PrebuiltSampleFilesAreCurrent)
{
	const auto& s = fixture::shared();
	EXPECT_EQ(readFile(fixture::dataDir() / "sample_corpus.tagged"), serializeTagged(s.tagged));
	EXPECT_EQ(readFile(fixture::dataDir() / "sample_corpus.index"), serializeIndex(s.index));
}

TEST(Persistence, IndexRoundTrip)
{
	const auto& s = fixture::shared();
	const auto text1 = serializeIndex(s.index);
	const auto back = parseIndex(text1);
	EXPECT_EQ(back, s.index);
	EXPECT_EQ(serializeIndex(back), text1);
	EXPECT_EQ(parseIndex(serializeIndex(FeatureIndex{})), FeatureIndex{});
}

TEST(Persistence, TamperingDetected)
{
	const auto& s = fixture::shared();
	for (auto [text1, which] : { std::pair{ serializeTagged(s.tagged), 0 }, std::pair{ serializeIndex(s.index), 1 } })
	{
		auto parse = [&](const std::string& t) { which ? (void)parseIndex(t) : (void)parseTagged(t); };
		auto v99 = text1;
		v99.replace(v99.find(" v1"), 3, " v99");
		EXPECT_THROW(parse(v99), VersionMismatch);
		EXPECT_THROW(parse(text1.substr(0, text1.size() / 2)), ChecksumError);
		EXPECT_THROW(parse(text1.substr(0, text1.find('\n'))), ChecksumError);
		auto flipped = text1;
		flipped[flipped.size() - 3] = flipped[flipped.size() - 3] == '1' ? '2' : '1';
		EXPECT_THROW(parse(flipped), ChecksumError);
		EXPECT_THROW(parse("garbage\n"), ParseError);
	}
}

TEST(Persistence, MalformedBodyReportsLocation)
{
	std::string body = "0\tev\tev:ev:noun::\n1\tbroken line\n";
	std::string text1 = "#morfwork-tagged v1\nchecksum=" + checksumHex(body) + "\n" + body;
	try
	{
		parseTagged(text1, "x.tagged");
		FAIL();
	}
	catch (const ParseError& e)
	{
		EXPECT_EQ(e.line(), 4u);
	}
}

TEST(Throughput, TagAndIndexSixteenHundredSentences)
{
	const auto base = readFile(fixture::dataDir() / "sample_corpus.txt");
	std::string big;
	while (readCorpus(big).size() < 1600) big += base;
	const auto sentences = readCorpus(big);
	const auto t0 = std::chrono::steady_clock::now();
	auto tagged = fixture::shared().dis.tagCorpus(sentences);
	auto idx = buildIndex(tagged);
	const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
	EXPECT_GE(tagged.size(), 1600u);
	EXPECT_FALSE(idx.empty());
	EXPECT_LT(secs, 10.0);
}
