#include <morfwork/workbench.hpp>

#include <benchmark/benchmark.h>

#include <set>

using namespace morfwork;

namespace
{
	struct State
	{
		Workbench wb{ Config::defaults(MORFWORK_BENCH_DATA_DIR) };
		Disambiguator dis = wb.disambiguator();
		std::vector<Sentence> corpus = loadCorpus(wb.config().corpus);
		TaggedCorpus tagged = dis.tagCorpus(corpus);
		FeatureIndex index = buildIndex(tagged);
		Searcher searcher{ tagged, index, wb.vocabulary(), wb.implications() };
		std::vector<std::string> words = [this]
		{
			std::set<std::string> w;
			for (auto& s : corpus)
				for (auto& t : s.tokens)
					if (!isPunctuation(t.text)) w.insert(t.text);
			return std::vector<std::string>(w.begin(), w.end());
		}();
	};

	const State& state()
	{
		static const State s;
		return s;
	}

	std::vector<Sentence> replicate(std::size_t n)
	{
		std::vector<Sentence> out;
		while (out.size() < n)
			for (auto s : state().corpus)
			{
				s.id = out.size();
				out.push_back(std::move(s));
			}
		out.resize(n);
		return out;
	}
}

static void BM_AnalyzeCorpusVocabulary(benchmark::State& st)
{
	const auto& s = state();
	for (auto _ : st)
		for (auto& w : s.words) benchmark::DoNotOptimize(s.wb.analyzer().analyze(w));
	st.SetItemsProcessed(static_cast<std::int64_t>(st.iterations() * s.words.size()));
}
BENCHMARK(BM_AnalyzeCorpusVocabulary);

static void BM_Generate(benchmark::State& st)
{
	const auto& a = state().wb.analyzer();
	for (auto _ : st)
	{
		benchmark::DoNotOptimize(a.generate("ev", { "1PL-POSS", "DAT" }));
		benchmark::DoNotOptimize(a.generate("kes", { "PASS", "NEG-CAP", "PAST", "3SG" }));
		benchmark::DoNotOptimize(a.generate("ayak", { "GEN" }));
	}
	st.SetItemsProcessed(st.iterations() * 3);
}
BENCHMARK(BM_Generate);

static void BM_TagCorpus(benchmark::State& st)
{
	const auto sentences = replicate(static_cast<std::size_t>(st.range(0)));
	for (auto _ : st) benchmark::DoNotOptimize(state().dis.tagCorpus(sentences));
	st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_TagCorpus)->Arg(45)->Arg(1600)->Unit(benchmark::kMillisecond);

static void BM_BuildIndex(benchmark::State& st)
{
	const auto tagged = state().dis.tagCorpus(replicate(static_cast<std::size_t>(st.range(0))));
	for (auto _ : st) benchmark::DoNotOptimize(buildIndex(tagged));
	st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_BuildIndex)->Arg(1600)->Unit(benchmark::kMillisecond);

static void BM_SearchIndex(benchmark::State& st)
{
	const auto q = Query::fromPairs({ { "agreement", "3sg" }, { "aspect", "past" }, { "voice", "passive" } });
	for (auto _ : st) benchmark::DoNotOptimize(state().searcher.search(q));
}
BENCHMARK(BM_SearchIndex);

static void BM_SearchScan(benchmark::State& st)
{
	const auto q = Query::fromPairs({ { "agreement", "3sg" }, { "aspect", "past" }, { "voice", "passive" } });
	for (auto _ : st) benchmark::DoNotOptimize(state().searcher.scan(q));
}
BENCHMARK(BM_SearchScan);
BENCHMARK_MAIN();
