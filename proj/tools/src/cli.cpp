#include <morfwork_tools/cli.hpp>
#include <morfwork_tools/service.hpp>
#include <morfwork/error.hpp>
#include <morfwork/text.hpp>
#include <morfwork/workbench.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

namespace morfwork::tools
{
	namespace
	{
		struct Output
		{
			std::ostream& os;
			bool fold;

			Output& operator<<(const std::string& s)
			{
				os << (fold ? text::asciiFold(s) : s);
				return *this;
			}
		};

		SearchSession openSession(const Workbench& wb, const std::filesystem::path& tagged, const std::filesystem::path& index)
		{
			requireFile(tagged, "tagged corpus");
			requireFile(index, "index");
			return SearchSession(loadTagged(tagged), loadIndex(index), wb.vocabulary(), wb.implications());
		}

		std::string describe(const Parse& p)
		{
			std::string s = p.signature() + "\t" + p.gloss + "\t";
			bool first = true;
			for (auto d : kDimensions)
			{
				if (!p.features[d]) continue;
				s += (first ? "" : ",") + std::string(name(d)) + "=" + *p.features[d];
				first = false;
			}
			return s;
		}
	}

	int runCli(int argc, const char* const* argv, std::ostream& outStream, std::ostream& err, std::istream& in)
	{
		CLI::App app{ "morfwork: Turkish morphology workbench", "morfwork" };
		app.require_subcommand(1);
		std::string configPath;
		bool ascii = false;
		app.add_option("--config", configPath, "key=value config file (default: $MORFWORK_CONFIG)");
		app.add_flag("--ascii", ascii, "fold Turkish letters to upper-case ASCII on output");

		auto* analyzeCmd = app.add_subcommand("analyze", "print every parse of each word");
		std::vector<std::string> words;
		analyzeCmd->add_option("word", words, "surface word(s)")->required();

		auto* generateCmd = app.add_subcommand("generate", "realize a root plus morphemes");
		std::string genRoot, genMorphs;
		generateCmd->add_option("root", genRoot)->required();
		generateCmd->add_option("morphemes", genMorphs, "comma-separated morpheme names");

		auto* tagCmd = app.add_subcommand("tag", "analyze and disambiguate a corpus");
		bool interactive = false, strict = false;
		std::string tagInput, tagOutput;
		tagCmd->add_flag("--interactive", interactive, "ask on the terminal for unresolved tokens");
		tagCmd->add_flag("--strict", strict, "fail when tokens remain unresolved");
		tagCmd->add_option("corpus", tagInput, "plain-text corpus, one sentence per line");
		tagCmd->add_option("-o,--output", tagOutput, "tagged corpus file to write");

		auto* indexCmd = app.add_subcommand("index", "build the feature index of a tagged corpus");
		std::string indexInput, indexOutput;
		indexCmd->add_option("tagged", indexInput);
		indexCmd->add_option("-o,--output", indexOutput);

		auto* searchCmd = app.add_subcommand("search", "find sentences with words matching features");
		std::map<Dimension, std::string> dimValues;
		for (auto d : kDimensions)
			searchCmd->add_option("--" + std::string(name(d)), dimValues[d], std::string(label(d)));
		std::string qSuffix, qRoot, sTagged, sIndex;
		bool scanMode = false;
		searchCmd->add_option("--suffix", qSuffix, "morpheme name");
		searchCmd->add_option("--root", qRoot);
		searchCmd->add_option("--tagged", sTagged);
		searchCmd->add_option("--index", sIndex);
		searchCmd->add_flag("--scan", scanMode, "linear scan instead of the index");

		auto* serveCmd = app.add_subcommand("serve", "run the HTTP/JSON service");
		std::string host;
		int port = -1;
		std::string staticDir;
		serveCmd->add_option("--host", host);
		serveCmd->add_option("--port", port);
		serveCmd->add_option("--static", staticDir, "directory served at /");

		auto* rulesCmd = app.add_subcommand("rules", "rule file utilities");
		auto* checkCmd = rulesCmd->add_subcommand("check", "parse a rule file and report coercion conflicts");
		rulesCmd->require_subcommand(1);
		std::string rulesFile;
		checkCmd->add_option("file", rulesFile);

		try
		{
			app.parse(argc, argv);
		}
		catch (const CLI::ParseError& e)
		{
			const int code = app.exit(e, outStream, err);
			return code == 0 ? 0 : 2;
		}

		try
		{
			Config config = configPath.empty() ? Config::fromEnvironment() : Config::load(configPath);
			Output out{ outStream, ascii || config.asciiFold };

			if (*rulesCmd)
			{
				const auto path = rulesFile.empty() ? config.rules : std::filesystem::path(rulesFile);
				requireFile(path, "rules");
				const auto rules = loadRules(path);
				const auto diags = checkRuleConflicts(rules);
				out << std::to_string(rules.rules.size()) + " rules, " + std::to_string(diags.size()) + " conflicts\n";
				for (auto& d : diags) out << d.message + "\n";
				return diags.empty() ? 0 : 1;
			}

			Workbench wb(config);
			if (*analyzeCmd)
			{
				int rc = 0;
				for (auto& w : words)
				{
					try
					{
						const auto parses = wb.analyzer().analyze(w);
						out << text::lower(std::string_view(w)) + ": " + std::to_string(parses.size()) + " parse" +
								(parses.size() == 1 ? "" : "s") + "\n";
						for (auto& p : parses) out << "  " + describe(p) + "\n";
					}
					catch (const UnknownWord& e)
					{
						err << "morfwork: " << e.what() << "\n";
						rc = 1;
					}
				}
				return rc;
			}
			if (*generateCmd)
			{
				std::vector<std::string> names;
				for (auto n : text::split(genMorphs, ','))
					if (!text::trim(n).empty()) names.emplace_back(text::trim(n));
				out << wb.analyzer().generate(genRoot, names) + "\n";
				return 0;
			}
			if (*tagCmd)
			{
				const auto input = tagInput.empty() ? config.corpus : std::filesystem::path(tagInput);
				requireFile(input, "corpus");
				const auto output = tagOutput.empty() ? config.tagged : std::filesystem::path(tagOutput);
				const auto dis = wb.disambiguator();
				TagOptions opts;
				opts.strict = strict;
				if (interactive)
				{
					opts.interactive = [&](const std::vector<std::string>& toks, std::size_t idx, const std::vector<const Parse*>& cands)
					{
						std::string sentence;
						for (std::size_t i = 0; i < toks.size(); ++i)
							sentence += (i ? " " : "") + (i == idx ? "[" + toks[i] + "]" : toks[i]);
						err << sentence << "\n";
						for (std::size_t i = 0; i < cands.size(); ++i) err << "  " << i + 1 << ") " << describe(*cands[i]) << "\n";
						for (;;)
						{
							err << "choice [1-" << cands.size() << "]: " << std::flush;
							std::string line;
							if (!std::getline(in, line)) throw morfwork::Error("interactive input ended");
							try
							{
								const auto k = std::stoul(line);
								if (k >= 1 && k <= cands.size()) return static_cast<std::size_t>(k - 1);
							}
							catch (const std::exception&)
							{
							}
						}
					};
				}
				TagReport report;
				const auto tagged = dis.tagCorpus(loadCorpus(input), &report, opts);
				saveTagged(tagged, output);
				out << report.str();
				out << "wrote " + output.string() + "\n";
				return 0;
			}
			if (*indexCmd)
			{
				const auto input = indexInput.empty() ? config.tagged : std::filesystem::path(indexInput);
				requireFile(input, "tagged corpus");
				const auto output = indexOutput.empty() ? config.index : std::filesystem::path(indexOutput);
				const auto idx = buildIndex(loadTagged(input));
				saveIndex(idx, output);
				out << "indexed " + std::to_string(idx.postings.size() + idx.suffixPostings.size() + idx.rootPostings.size()) +
						" keys into " + output.string() + "\n";
				return 0;
			}
			if (*searchCmd)
			{
				std::vector<std::pair<std::string, std::string>> pairs;
				for (auto d : kDimensions)
					if (searchCmd->count("--" + std::string(name(d)))) pairs.emplace_back(std::string(name(d)), dimValues[d]);
				if (searchCmd->count("--suffix")) pairs.emplace_back("suffix", qSuffix);
				if (searchCmd->count("--root")) pairs.emplace_back("root", qRoot);
				const auto query = Query::fromPairs(pairs);
				const auto session = openSession(wb, sTagged.empty() ? config.tagged : std::filesystem::path(sTagged),
					sIndex.empty() ? config.index : std::filesystem::path(sIndex));
				const auto result = scanMode ? session.searcher().scan(query) : session.searcher().search(query);
				if (auto* c = std::get_if<Conflict>(&result))
				{
					err << "morfwork: conflict: " << c->explanation << "\n";
					return 1;
				}
				const auto& hits = std::get<std::vector<SentenceHit>>(result);
				for (auto& h : hits)
				{
					std::string idx;
					for (auto t : h.matches) idx += (idx.empty() ? "" : ",") + std::to_string(t);
					out << std::to_string(h.sentenceId) + "\t" + idx + "\t" + h.text + "\n";
				}
				err << hits.size() << " sentence(s)\n";
				return 0;
			}
			if (*serveCmd)
			{
				const auto session = openSession(wb, config.tagged, config.index);
				Service service(wb, &session, config.asciiFold || ascii);
				serve(service, host.empty() ? config.host : host, port >= 0 ? port : config.port,
					staticDir.empty() ? config.staticDir : std::filesystem::path(staticDir));
				return 0;
			}
		}
		catch (const ConfigError& e)
		{
			err << "morfwork: " << e.what() << "\n";
			return 2;
		}
		catch (const InvalidQuery& e)
		{
			err << "morfwork: " << e.what() << "\n";
			return 2;
		}
		catch (const morfwork::ParseError& e)
		{
			err << "morfwork: " << e.what() << "\n";
			return 2;
		}
		catch (const UnknownWord& e)
		{
			err << "morfwork: " << e.what() << "\n";
			return 1;
		}
		catch (const morfwork::Error& e)
		{
			// remaining library errors are domain failures: bad morphotactics,
			// unknown feature value, unresolved tokens, damaged files
			err << "morfwork: " << e.what() << "\n";
			return 1;
		}
		catch (const std::exception& e)
		{
			err << "morfwork: " << e.what() << "\n";
			return 2;
		}
		return 0;
	}
}
