#include "test_support.hpp"

#include <morfwork/error.hpp>

#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

using namespace morfwork;

namespace
{
	Query q(std::vector<std::pair<std::string, std::string>> pairs) { return Query::fromPairs(pairs); }

	std::vector<SentenceHit> hits(const SearchResult& r)
	{
		if (auto* h = std::get_if<std::vector<SentenceHit>>(&r)) return *h;
		ADD_FAILURE() << "unexpected conflict: " << std::get<Conflict>(r).explanation;
		return {};
	}

	std::set<std::size_t> sentenceIds(const SearchResult& r)
	{
		std::set<std::size_t> out;
		for (auto& h : hits(r)) out.insert(h.sentenceId);
		return out;
	}

	std::size_t tokenCount(const SearchResult& r)
	{
		std::size_t n = 0;
		for (auto& h : hits(r)) n += h.matches.size();
		return n;
	}

	struct GoldRow
	{
		std::size_t sid, tid;
		std::string surface, signature;
	};

	std::vector<GoldRow> gold()
	{
		std::ifstream in(fixture::dataDir() / "sample_gold.tsv");
		std::vector<GoldRow> rows;
		std::string line;
		std::getline(in, line);
		while (std::getline(in, line))
		{
			std::istringstream ls(line);
			GoldRow r;
			std::string sid, tid;
			std::getline(ls, sid, '\t');
			std::getline(ls, tid, '\t');
			std::getline(ls, r.surface, '\t');
			std::getline(ls, r.signature, '\t');
			r.sid = std::stoul(sid);
			r.tid = std::stoul(tid);
			rows.push_back(r);
		}
		return rows;
	}
}

TEST(ImpliedFeatures, CaseImpliesNoun)
{
	auto e = impliedFeatures(q({ { "case", "dative" } }), ImplicationTable::defaults());
	auto& out = std::get<Query>(e);
	EXPECT_EQ(out[Dimension::Case], "dative");
	EXPECT_EQ(out[Dimension::Category], "noun");
	EXPECT_TRUE(out.categoryImplied);
}

TEST(ImpliedFeatures, TenseImpliesVerb)
{
	auto e = impliedFeatures(q({ { "tense", "past" } }), ImplicationTable::defaults());
	EXPECT_EQ(std::get<Query>(e)[Dimension::Category], "verb");
}

TEST(ImpliedFeatures, ConflictingImplications)
{
	auto e = impliedFeatures(q({ { "case", "dative" }, { "tense", "past" } }), ImplicationTable::defaults());
	ASSERT_TRUE(std::holds_alternative<Conflict>(e));
	auto& c = std::get<Conflict>(e);
	EXPECT_EQ(c.dimension, "category");
	EXPECT_EQ(c.values, (std::vector<std::string>{ "noun", "verb" }));
	EXPECT_NE(c.explanation.find("case=dative"), std::string::npos);
	EXPECT_NE(c.explanation.find("tense=past"), std::string::npos);
}

TEST(ImpliedFeatures, ExplicitCategoryOutsideClass)
{
	auto e = impliedFeatures(q({ { "category", "verb" }, { "case", "dative" } }), ImplicationTable::defaults());
	EXPECT_TRUE(std::holds_alternative<Conflict>(e));
	auto ok = impliedFeatures(q({ { "category", "pronoun" }, { "case", "genitive" } }), ImplicationTable::defaults());
	ASSERT_TRUE(std::holds_alternative<Query>(ok));
	EXPECT_FALSE(std::get<Query>(ok).categoryImplied);
}

TEST(ImpliedFeatures, RootOnlyUnchangedAndIdempotent)
{
	const auto t = ImplicationTable::defaults();
	auto root = q({ { "root", "kes" } });
	EXPECT_EQ(std::get<Query>(impliedFeatures(root, t)), root);
	auto agr = q({ { "agreement", "3sg" } });
	EXPECT_EQ(std::get<Query>(impliedFeatures(agr, t)), agr);
	auto once = std::get<Query>(impliedFeatures(q({ { "voice", "passive" }, { "aspect", "past" } }), t));
	EXPECT_EQ(std::get<Query>(impliedFeatures(once, t)), once);
}

TEST(ImplicationFile, MatchesDefaults)
{
	const auto file = ImplicationTable::load(fixture::dataDir() / "implications.txt");
	const auto def = ImplicationTable::defaults();
	for (auto d : kDimensions) EXPECT_EQ(file.implied(d), def.implied(d)) << name(d);
	for (auto c : kCategories) EXPECT_EQ(file.matchClass(c), def.matchClass(c));
	EXPECT_THROW(ImplicationTable::parse("case => category=plant\n"), ParseError);
	EXPECT_THROW(ImplicationTable::parse("nonsense\n"), ParseError);
}

TEST(QueryParsing, Errors)
{
	EXPECT_THROW(q({ { "colour", "red" } }), InvalidQuery);
	EXPECT_THROW(q({ { "case", "" } }), InvalidQuery);
	EXPECT_EQ(q({ { "root", "KES" } }).root, "kes");
	const auto& s = fixture::shared().searcher;
	EXPECT_THROW(s.search(Query{}), InvalidQuery);
	EXPECT_THROW(s.search(q({ { "case", "ablative-ish" } })), UnknownFeatureValue);
	EXPECT_THROW(s.search(q({ { "suffix", "NOPE" } })), UnknownFeatureValue);
}

TEST(Search, PassiveKes)
{
	const auto& s = fixture::shared().searcher;
	auto h = hits(s.search(q({ { "root", "kes" }, { "voice", "passive" } })));
	ASSERT_FALSE(h.empty());
	EXPECT_EQ(h[0].sentenceId, 0u);
	EXPECT_EQ(h[0].matches, std::vector<std::size_t>{ 4 });
	EXPECT_EQ(h[0].text, "Musluğun akıntısı bir türlü kesilemedi.");
}

TEST(Search, ThirdSingularPastPassive)
{
	const auto& s = fixture::shared().searcher;
	auto r = s.search(q({ { "agreement", "3sg" }, { "aspect", "past" }, { "voice", "passive" } }));
	auto ids = sentenceIds(r);
	EXPECT_TRUE(ids.count(0));
	EXPECT_TRUE(ids.count(3));
	EXPECT_FALSE(ids.count(1));
	// every passive in the gold file is 3sg past
	std::set<std::size_t> expect;
	for (auto& g : gold())
		if (g.signature.find("+PASS") != std::string::npos) expect.insert(g.sid);
	EXPECT_EQ(ids, expect);
}

TEST(Search, ConflictReturnedNotThrown)
{
	const auto& s = fixture::shared().searcher;
	auto r = s.search(q({ { "case", "dative" }, { "tense", "past" } }));
	EXPECT_TRUE(std::holds_alternative<Conflict>(r));
}

TEST(Search, NoVerbsMeansNoVerbHits)
{
	auto tagged = fixture::shared().dis.tagCorpus(readCorpus("Kitaplar masada.\nYazı güzel.\n"));
	auto idx = buildIndex(tagged);
	Searcher s(tagged, idx, fixture::shared().wb.vocabulary(), ImplicationTable::defaults());
	EXPECT_TRUE(hits(s.search(q({ { "aspect", "past" } }))).empty());
	EXPECT_TRUE(hits(s.search(q({ { "category", "verb" } }))).empty());
	EXPECT_EQ(sentenceIds(s.search(q({ { "case", "locative" } }))), (std::set<std::size_t>{ 0 }));
}

TEST(Search, ImpliedNounMatchesPronouns)
{
	const auto& s = fixture::shared().searcher;
	// "Senin" (sentence 1) is a genitive pronoun
	EXPECT_TRUE(sentenceIds(s.search(q({ { "case", "genitive" } }))).count(1));
	EXPECT_FALSE(sentenceIds(s.search(q({ { "case", "genitive" }, { "category", "noun" } }))).count(1));
}

TEST(Search, NominativeMeansNominalWithoutCase)
{
	const auto& s = fixture::shared().searcher;
	auto h = hits(s.search(q({ { "case", "nominative" }, { "root", "yazı" } })));
	ASSERT_EQ(h.size(), 1u);
	EXPECT_EQ(h[0].sentenceId, 10u);
}

TEST(Search, SuffixAndRootCountsMatchGold)
{
	const auto& s = fixture::shared().searcher;
	std::map<std::string, std::size_t> suffixCount, rootCount;
	for (auto& g : gold())
	{
		auto slash = g.signature.find('/');
		++rootCount[g.signature.substr(0, slash)];
		std::string rest = g.signature.substr(slash + 1);
		std::istringstream parts(rest);
		std::string part;
		std::getline(parts, part, '+');
		while (std::getline(parts, part, '+')) ++suffixCount[part];
	}
	for (auto& [suffix, n] : suffixCount) EXPECT_EQ(tokenCount(s.search(q({ { "suffix", suffix } }))), n) << suffix;
	for (auto& [root, n] : rootCount) EXPECT_EQ(tokenCount(s.search(q({ { "root", root } }))), n) << root;
}

TEST(Search, FrozenExpectedCounts)
{
	// counted by hand from sample_gold.tsv
	const auto& s = fixture::shared().searcher;
	EXPECT_EQ(tokenCount(s.search(q({ { "voice", "passive" } }))), 14u);
	EXPECT_EQ(tokenCount(s.search(q({ { "sense", "negative-capability" } }))), 3u);
	EXPECT_EQ(tokenCount(s.search(q({ { "aspect", "progressive" } }))), 5u);
	EXPECT_EQ(tokenCount(s.search(q({ { "agreement", "3pl" } }))), 6u);
	EXPECT_EQ(tokenCount(s.search(q({ { "case", "dative" } }))), 5u);
	EXPECT_EQ(tokenCount(s.search(q({ { "category", "pronoun" } }))), 5u);
}

TEST(Search, RandomQueriesIndexEqualsScan)
{
	const auto& s = fixture::shared().searcher;
	const auto& vocab = s.vocabulary();
	std::mt19937 rng(12345);
	std::vector<std::pair<std::string, std::vector<std::string>>> fields;
	for (auto& [d, vals] : vocab.values) fields.push_back({ std::string(name(d)), { vals.begin(), vals.end() } });
	fields.push_back({ "suffix", { vocab.suffixes.begin(), vocab.suffixes.end() } });
	fields.push_back({ "root", { "kes", "ev", "kapı", "gel", "sen", "yazı", "kır", "nothing" } });

	for (int i = 0; i < 200; ++i)
	{
		std::vector<std::pair<std::string, std::string>> pairs;
		std::shuffle(fields.begin(), fields.end(), rng);
		const int n = 1 + static_cast<int>(rng() % 3);
		for (int k = 0; k < n; ++k)
		{
			auto& f = fields[k];
			pairs.push_back({ f.first, f.second[rng() % f.second.size()] });
		}
		auto query = q(pairs);
		auto a = s.search(query);
		auto b = s.scan(query);
		ASSERT_EQ(a.index(), b.index()) << query.str();
		if (a.index() == 0) EXPECT_EQ(hits(a), hits(b)) << query.str();
		else EXPECT_EQ(std::get<Conflict>(a).explanation, std::get<Conflict>(b).explanation);

		// adding a field never widens the result
		if (a.index() == 0 && n < 3)
		{
			auto& f = fields[n];
			pairs.push_back({ f.first, f.second[rng() % f.second.size()] });
			auto narrower = s.search(q(pairs));
			if (narrower.index() == 0)
			{
				auto wide = sentenceIds(a);
				for (auto id : sentenceIds(narrower)) EXPECT_TRUE(wide.count(id)) << q(pairs).str();
			}
		}
	}
}

TEST(Search, ConflictsAreSound)
{
	// a conflicting pair never co-occurs on one token in the corpus
	const auto& s = fixture::shared();
	for (auto& [d1, v1] : s.searcher.vocabulary().values)
		for (auto& [d2, v2] : s.searcher.vocabulary().values)
		{
			if (d1 >= d2 || d1 == Dimension::Category || d2 == Dimension::Category) continue;
			for (auto& a : v1)
				for (auto& b : v2)
				{
					Query query;
					query[d1] = a;
					query[d2] = b;
					if (!std::holds_alternative<Conflict>(impliedFeatures(query, s.table))) continue;
					Query raw = query;
					EXPECT_TRUE(s.searcher.scanPostings(raw).empty()) << raw.str();
				}
		}
}

TEST(Search, Idempotent)
{
	const auto& s = fixture::shared().searcher;
	auto query = q({ { "case", "genitive" } });
	EXPECT_EQ(hits(s.search(query)), hits(s.search(query)));
}

TEST(AnalysisView, Kesilemedi)
{
	const auto& s = fixture::shared();
	auto v = analysisView(s.tagged, 0, 4, s.wb.morphotactics());
	EXPECT_EQ(v.token, "kesilemedi");
	EXPECT_EQ(v.lexicalGloss, "kes+Hl+yAmA+DH");
	std::vector<std::pair<std::string, std::string>> expect = {
		{ "Root", "kes" },
		{ "Category", "Verb" },
		{ "Sense", "Negative capability" },
		{ "Voice", "Passive" },
		{ "Agreement", "3rd singular" },
		{ "Aspect", "Past" },
	};
	EXPECT_EQ(v.fields, expect);
}

TEST(AnalysisView, BareNounAndErrors)
{
	const auto& s = fixture::shared();
	// sentence 44: "Çocuk eve geldi."
	auto v = analysisView(s.tagged, 44, 0, s.wb.morphotactics());
	EXPECT_EQ(v.fields, (std::vector<std::pair<std::string, std::string>>{ { "Root", "çocuk" }, { "Category", "Noun" } }));
	EXPECT_EQ(v.lexicalGloss, "çocuk");
	EXPECT_THROW(analysisView(s.tagged, 0, 5, s.wb.morphotactics()), NoAnalysis);
	EXPECT_THROW(analysisView(s.tagged, 0, 6, s.wb.morphotactics()), OutOfRange);
	EXPECT_THROW(analysisView(s.tagged, 999, 0, s.wb.morphotactics()), OutOfRange);
}
