#include "test_support.hpp"

#include <morfwork_tools/cli.hpp>
#include <morfwork_tools/service.hpp>

#include <httplib.h>
#include <json.hpp>

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>
#include <thread>

using namespace morfwork;
using namespace morfwork::tools;
using nlohmann::json;

namespace
{
	using Params = std::multimap<std::string, std::string>;

	const SearchSession& session()
	{
		static const SearchSession s(fixture::shared().tagged, fixture::shared().index, fixture::shared().wb.vocabulary(),
			fixture::shared().table);
		return s;
	}

	const Service& service()
	{
		static const Service s(fixture::shared().wb, &session());
		return s;
	}

	struct CliResult
	{
		int rc;
		std::string out, err;
	};

	/// Config whose generated files land in a scratch directory.
	std::filesystem::path scratchConfig()
	{
		static const auto path = []
		{
			const auto dir = fixture::scratchDir("cli");
			std::filesystem::copy_file(fixture::dataDir() / "sample_corpus.tagged", dir / "c.tagged",
				std::filesystem::copy_options::overwrite_existing);
			std::filesystem::copy_file(fixture::dataDir() / "sample_corpus.index", dir / "c.index",
				std::filesystem::copy_options::overwrite_existing);
			std::ofstream f(dir / "morfwork.conf");
			f << "data_dir = " << fixture::dataDir().string() << "\n"
			  << "tagged = c.tagged\nindex = c.index\n";
			return dir / "morfwork.conf";
		}();
		return path;
	}

	CliResult cli(std::vector<std::string> args, const std::string& input = "")
	{
		const auto conf = scratchConfig().string();
		std::vector<std::string> full = { "morfwork", "--config", conf };
		full.insert(full.end(), args.begin(), args.end());
		std::vector<const char*> argv;
		for (auto& a : full) argv.push_back(a.c_str());
		std::ostringstream out, err;
		std::istringstream in(input);
		const int rc = runCli(static_cast<int>(argv.size()), argv.data(), out, err, in);
		return { rc, out.str(), err.str() };
	}

	json body(const Response& r) { return json::parse(r.body); }

	/// (sentence, token) pairs from the JSON search response.
	std::set<std::pair<std::size_t, std::size_t>> jsonHits(const json& j)
	{
		std::set<std::pair<std::size_t, std::size_t>> out;
		for (auto& h : j["hits"])
			for (auto& m : h["matches"]) out.insert({ h["sentenceId"].get<std::size_t>(), m["token"].get<std::size_t>() });
		return out;
	}

	std::set<std::pair<std::size_t, std::size_t>> cliHits(const std::string& out)
	{
		std::set<std::pair<std::size_t, std::size_t>> hits;
		std::istringstream lines(out);
		std::string line;
		while (std::getline(lines, line))
		{
			std::istringstream f(line);
			std::string sid, toks;
			std::getline(f, sid, '\t');
			std::getline(f, toks, '\t');
			std::istringstream ts(toks);
			std::string t;
			while (std::getline(ts, t, ',')) hits.insert({ std::stoul(sid), std::stoul(t) });
		}
		return hits;
	}
}

TEST(Service, FeaturesListsEveryDimension)
{
	auto r = service().handle("/api/features", {});
	ASSERT_EQ(r.status, 200);
	auto j = body(r);
	ASSERT_EQ(j["dimensions"].size(), 10u);
	std::map<std::string, json> byName;
	for (auto& d : j["dimensions"]) byName[d["name"]] = d;
	EXPECT_EQ(byName["case"]["implies"]["category"], "noun");
	EXPECT_EQ(byName["voice"]["implies"]["category"], "verb");
	EXPECT_FALSE(byName["agreement"].contains("implies"));
	EXPECT_TRUE(byName["root"]["freeText"].get<bool>());
	bool sawNominative = false;
	for (auto& v : byName["case"]["values"]) sawNominative |= v["value"] == "nominative";
	EXPECT_TRUE(sawNominative);
}

TEST(Service, SearchOk)
{
	auto r = service().handle("/api/search", { { "root", "kes" }, { "voice", "passive" } });
	ASSERT_EQ(r.status, 200) << r.body;
	auto j = body(r);
	EXPECT_EQ(j["impliedCategory"], "verb");
	EXPECT_EQ(j["sentenceCount"], 2);
	EXPECT_EQ(j["hits"][0]["sentenceId"], 0);
	EXPECT_EQ(j["hits"][0]["matches"][0]["token"], 4);
	EXPECT_EQ(j["hits"][0]["matches"][0]["text"], "kesilemedi");
	EXPECT_EQ(j["hits"][0]["matches"][0]["start"], 28);
	EXPECT_EQ(j["hits"][0]["matches"][0]["end"], 38);
}

TEST(Service, SearchErrors)
{
	auto conflict = service().handle("/api/search", { { "case", "dative" }, { "tense", "past" } });
	EXPECT_EQ(conflict.status, 409);
	auto c = body(conflict);
	EXPECT_EQ(c["error"], "conflict");
	EXPECT_EQ(c["conflict"]["dimension"], "category");
	EXPECT_EQ(c["conflict"]["features"].size(), 2u);
	EXPECT_FALSE(c["conflict"]["explanation"].get<std::string>().empty());

	EXPECT_EQ(service().handle("/api/search", {}).status, 400);
	EXPECT_EQ(service().handle("/api/search", { { "colour", "red" } }).status, 400);
	EXPECT_EQ(service().handle("/api/search", { { "case", "bogus" } }).status, 422);
	EXPECT_EQ(service().handle("/api/search", { { "suffix", "BOGUS" } }).status, 422);

	Service noCorpus(fixture::shared().wb, nullptr);
	EXPECT_EQ(noCorpus.handle("/api/search", { { "case", "dative" } }).status, 503);
	EXPECT_EQ(noCorpus.handle("/api/features", {}).status, 200);
}

TEST(Service, Analysis)
{
	auto r = service().handle("/api/analysis", { { "sentence", "0" }, { "token", "4" } });
	ASSERT_EQ(r.status, 200) << r.body;
	auto j = body(r);
	EXPECT_EQ(j["text"], "kesilemedi");
	EXPECT_EQ(j["lexicalGloss"], "kes+Hl+yAmA+DH");
	EXPECT_EQ(j["fields"][0]["label"], "Root");
	EXPECT_EQ(j["fields"][2]["value"], "Negative capability");

	EXPECT_EQ(service().handle("/api/analysis", { { "sentence", "0" }, { "token", "5" } }).status, 404);
	EXPECT_EQ(service().handle("/api/analysis", { { "sentence", "0" }, { "token", "50" } }).status, 404);
	EXPECT_EQ(service().handle("/api/analysis", { { "sentence", "x" }, { "token", "0" } }).status, 400);
	EXPECT_EQ(service().handle("/api/analysis", { { "sentence", "0" } }).status, 400);
}

TEST(Service, SentencesAndAnalyze)
{
	auto r = service().handle("/api/sentences/1", {});
	ASSERT_EQ(r.status, 200);
	auto j = body(r);
	EXPECT_EQ(j["text"], "Senin evin güzel.");
	EXPECT_EQ(j["tokens"].size(), 4u);
	EXPECT_TRUE(j["tokens"][3]["analysis"].is_null());
	EXPECT_EQ(j["tokens"][1]["analysis"]["features"]["possessive"], "2sg");
	EXPECT_EQ(service().handle("/api/sentences/999", {}).status, 404);
	EXPECT_EQ(service().handle("/api/sentences/-1", {}).status, 400);
	EXPECT_EQ(service().handle("/api/nope", {}).status, 404);

	auto a = body(service().handle("/api/analyze", { { "word", "Evin" } }));
	EXPECT_EQ(a["word"], "evin");
	EXPECT_EQ(a["parses"].size(), 3u);
	EXPECT_EQ(service().handle("/api/analyze", { { "word", "xyz" } }).status, 404);
	EXPECT_EQ(service().handle("/api/analyze", {}).status, 400);
}

TEST(Service, AsciiFold)
{
	Service folded(fixture::shared().wb, &session(), true);
	auto r = folded.handle("/api/sentences/0", {});
	EXPECT_EQ(r.body.find("ğ"), std::string::npos);
	EXPECT_EQ(r.body.find("ı"), std::string::npos);
}

TEST(Service, HttpRoundTripMatchesHandler)
{
	httplib::Server server;
	mount(server, service(), {});
	const int port = server.bind_to_any_port("127.0.0.1");
	ASSERT_GT(port, 0);
	std::thread t([&] { server.listen_after_bind(); });
	server.wait_until_ready();

	httplib::Client client("127.0.0.1", port);
	auto res = client.Get("/api/search?case=genitive");
	ASSERT_TRUE(res);
	EXPECT_EQ(res->status, 200);
	EXPECT_EQ(res->body, service().handle("/api/search", { { "case", "genitive" } }).body);
	EXPECT_EQ(res->get_header_value("Content-Type"), "application/json; charset=utf-8");

	auto enc = client.Get("/api/search?root=kap%C4%B1");
	ASSERT_TRUE(enc);
	EXPECT_EQ(enc->status, 200);
	EXPECT_GT(json::parse(enc->body)["tokenCount"].get<int>(), 0);

	auto conflict = client.Get("/api/search?case=dative&tense=past");
	ASSERT_TRUE(conflict);
	EXPECT_EQ(conflict->status, 409);

	server.stop();
	t.join();
}

TEST(Service, ResponsesStableAcrossRestarts)
{
	// a second, independently loaded stack answers byte-identically
	Workbench wb(fixture::testConfig());
	SearchSession s(loadTagged(fixture::dataDir() / "sample_corpus.tagged"),
		loadIndex(fixture::dataDir() / "sample_corpus.index"), wb.vocabulary(), wb.implications());
	Service fresh(wb, &s);
	const std::vector<std::pair<std::string, Params>> requests = {
		{ "/api/features", {} },
		{ "/api/search", { { "case", "genitive" } } },
		{ "/api/search", { { "voice", "passive" }, { "aspect", "past" } } },
		{ "/api/search", { { "case", "dative" }, { "tense", "past" } } },
		{ "/api/analysis", { { "sentence", "0" }, { "token", "4" } } },
		{ "/api/sentences/17", {} },
	};
	for (auto& [path, params] : requests)
	{
		auto a = service().handle(path, params);
		auto b = fresh.handle(path, params);
		EXPECT_EQ(a.status, b.status) << path;
		EXPECT_EQ(a.body, b.body) << path;
	}
}

TEST(Cli, Analyze)
{
	auto r = cli({ "analyze", "evin" });
	EXPECT_EQ(r.rc, 0) << r.err;
	EXPECT_EQ(r.out.rfind("evin: 3 parses\n", 0), 0u) << r.out;
	EXPECT_NE(r.out.find("ev/noun+GEN\tev+nHn\t"), std::string::npos) << r.out;
	EXPECT_EQ(cli({ "analyze", "xyz" }).rc, 1);
	EXPECT_EQ(cli({ "analyze" }).rc, 2);
	EXPECT_EQ(cli({ "frobnicate" }).rc, 2);
}

TEST(Cli, Generate)
{
	auto r = cli({ "generate", "ev", "1PL-POSS,DAT" });
	EXPECT_EQ(r.rc, 0) << r.err;
	EXPECT_EQ(r.out, "evimize\n");
	EXPECT_EQ(cli({ "generate", "ev", "DAT,PL" }).rc, 1);
	EXPECT_EQ(cli({ "generate", "ev", "NOPE" }).rc, 1);
}

TEST(Cli, MissingConfigIsUsageError)
{
	std::vector<const char*> argv = { "morfwork", "--config", "/nonexistent/morfwork.conf", "analyze", "ev" };
	std::ostringstream out, err;
	std::istringstream in;
	EXPECT_EQ(runCli(static_cast<int>(argv.size()), argv.data(), out, err, in), 2);
}

TEST(Cli, SearchMatchesHttp)
{
	for (const Params& params : std::vector<Params>{
			 { { "case", "genitive" } },
			 { { "voice", "passive" } },
			 { { "root", "kes" }, { "voice", "passive" } },
			 { { "suffix", "3SG-POSS" } },
			 { { "case", "nominative" } },
		 })
	{
		std::vector<std::string> args = { "search" };
		for (auto& [k, v] : params) args.push_back("--" + k + "=" + v);
		auto r = cli(args);
		ASSERT_EQ(r.rc, 0) << r.err;
		auto scanArgs = args;
		scanArgs.push_back("--scan");
		EXPECT_EQ(cli(scanArgs).out, r.out);
		EXPECT_EQ(cliHits(r.out), jsonHits(body(service().handle("/api/search", params))));
	}
	auto c = cli({ "search", "--case=dative", "--tense=past" });
	EXPECT_EQ(c.rc, 1);
	EXPECT_NE(c.err.find("conflict"), std::string::npos);
	EXPECT_EQ(cli({ "search" }).rc, 2);
	EXPECT_EQ(cli({ "search", "--case=bogus" }).rc, 1);
}

TEST(Cli, TagThenIndexReproducesSampleFiles)
{
	const auto dir = scratchConfig().parent_path();
	auto t = cli({ "tag", "-o", (dir / "fresh.tagged").string() });
	ASSERT_EQ(t.rc, 0) << t.err;
	EXPECT_NE(t.out.find("unresolved"), std::string::npos);
	auto i = cli({ "index", (dir / "fresh.tagged").string(), "-o", (dir / "fresh.index").string() });
	ASSERT_EQ(i.rc, 0) << i.err;
	EXPECT_EQ(readFile(dir / "fresh.tagged"), readFile(fixture::dataDir() / "sample_corpus.tagged"));
	EXPECT_EQ(readFile(dir / "fresh.index"), readFile(fixture::dataDir() / "sample_corpus.index"));
}

TEST(Cli, InteractiveTagging)
{
	const auto dir = scratchConfig().parent_path();
	{
		std::ofstream f(dir / "amb.txt");
		f << "Evin\n";
	}
	// invalid answers are re-asked
	auto r = cli({ "tag", "--interactive", (dir / "amb.txt").string(), "-o", (dir / "amb.tagged").string() }, "9\nx\n1\n");
	ASSERT_EQ(r.rc, 0) << r.err;
	EXPECT_NE(r.err.find("[Evin]"), std::string::npos) << r.err;
	auto tagged = loadTagged(dir / "amb.tagged");
	ASSERT_TRUE(tagged.at(0).readings[0]);

	auto strict = cli({ "tag", "--strict", (dir / "amb.txt").string(), "-o", (dir / "amb2.tagged").string() });
	EXPECT_EQ(strict.rc, 1);
	EXPECT_FALSE(std::filesystem::exists(dir / "amb2.tagged"));
}

TEST(Cli, RulesCheck)
{
	auto r = cli({ "rules", "check" });
	EXPECT_EQ(r.rc, 0) << r.err;
	EXPECT_EQ(r.out, "7 rules, 0 conflicts\n");
}
