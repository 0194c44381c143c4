#include <morfwork/workbench.hpp>
#include <morfwork/text.hpp>

#include <cstdlib>

#ifndef MORFWORK_DEFAULT_DATA_DIR
#define MORFWORK_DEFAULT_DATA_DIR "data"
#endif

namespace morfwork
{
	Config Config::defaults(const std::filesystem::path& dir)
	{
		Config c;
		c.rules = dir / "turkish.rules";
		c.paradigms = dir / "paradigms.txt";
		c.lexicon = dir / "lexicon.tsv";
		c.constraints = dir / "constraints.txt";
		c.stats = dir / "stats.tsv";
		c.implications = dir / "implications.txt";
		c.corpus = dir / "sample_corpus.txt";
		c.tagged = dir / "sample_corpus.tagged";
		c.index = dir / "sample_corpus.index";
		c.staticDir = dir / "www";
		return c;
	}

	std::filesystem::path Config::defaultDataDir()
	{
		if (const char* env = std::getenv("MORFWORK_DATA_DIR"); env && *env) return env;
		return MORFWORK_DEFAULT_DATA_DIR;
	}

	Config Config::parse(std::string_view textIn, const std::filesystem::path& baseDir, const std::string& source)
	{
		std::map<std::string, std::string> kv;
		std::size_t lineNo = 0;
		for (auto line : text::split(textIn, '\n'))
		{
			++lineNo;
			line = text::trim(line);
			if (line.empty() || line.front() == '#') continue;
			const auto eq = line.find('=');
			if (eq == std::string_view::npos) throw ParseError(source, lineNo, 1, "expected key=value");
			const std::string key(text::trim(line.substr(0, eq)));
			if (kv.count(key)) throw ParseError(source, lineNo, 1, "duplicate key '" + key + "'");
			kv[key] = std::string(text::trim(line.substr(eq + 1)));
		}

		auto resolve = [&](const std::string& p) -> std::filesystem::path
		{
			std::filesystem::path path(p);
			return path.is_absolute() ? path : baseDir / path;
		};
		Config c = defaults(kv.count("data_dir") ? resolve(kv["data_dir"]) : defaultDataDir());
		const std::map<std::string, std::filesystem::path Config::*> paths = {
			{ "rules", &Config::rules }, { "paradigms", &Config::paradigms }, { "lexicon", &Config::lexicon },
			{ "constraints", &Config::constraints }, { "stats", &Config::stats },
			{ "implications", &Config::implications }, { "corpus", &Config::corpus }, { "tagged", &Config::tagged },
			{ "index", &Config::index }, { "static_dir", &Config::staticDir },
		};
		for (auto& [key, value] : kv)
		{
			if (key == "data_dir") continue;
			if (auto it = paths.find(key); it != paths.end()) c.*(it->second) = resolve(value);
			else if (key == "host") c.host = value;
			else if (key == "port")
			{
				try
				{
					std::size_t used = 0;
					c.port = std::stoi(value, &used);
					if (used != value.size() || c.port < 0 || c.port > 65535) throw std::out_of_range(value);
				}
				catch (const std::exception&)
				{
					throw ConfigError(source + ": invalid port '" + value + "'");
				}
			}
			else if (key == "ascii_fold")
			{
				if (value == "true" || value == "1" || value == "yes") c.asciiFold = true;
				else if (value == "false" || value == "0" || value == "no") c.asciiFold = false;
				else throw ConfigError(source + ": ascii_fold must be true or false");
			}
			else
				throw ConfigError(source + ": unknown key '" + key + "'");
		}
		return c;
	}

	Config Config::load(const std::filesystem::path& path)
	{
		if (!std::filesystem::is_regular_file(path)) throw ConfigError("config file not found: " + path.string());
		return parse(readFile(path), path.parent_path(), path.string());
	}

	Config Config::fromEnvironment()
	{
		if (const char* env = std::getenv("MORFWORK_CONFIG"); env && *env) return load(env);
		return defaults(defaultDataDir());
	}

	void requireFile(const std::filesystem::path& path, std::string_view what)
	{
		if (!std::filesystem::is_regular_file(path))
			throw ConfigError(std::string(what) + " file not found: " + path.string());
	}

	Workbench::Workbench(const Config& config) : config_(config)
	{
		requireFile(config.rules, "rules");
		requireFile(config.paradigms, "paradigm");
		requireFile(config.lexicon, "lexicon");
		engine_ = std::make_unique<PhonologyEngine>(loadRules(config.rules));
		morph_ = std::make_unique<Morphotactics>(Morphotactics::load(config.paradigms));
		lexicon_ = std::make_unique<Lexicon>(Lexicon::load(config.lexicon));
		for (auto& e : lexicon_->entries()) LexicalString(e.lexicalForm()).validate(engine_->alphabet());
		analyzer_ = std::make_unique<Analyzer>(*lexicon_, *morph_, *engine_);
	}

	Disambiguator Workbench::disambiguator() const
	{
		requireFile(config_.constraints, "constraint");
		requireFile(config_.stats, "statistics");
		return Disambiguator(*analyzer_, loadConstraints(config_.constraints), RootStats::load(config_.stats));
	}

	ImplicationTable Workbench::implications() const
	{
		if (config_.implications.empty() || !std::filesystem::exists(config_.implications)) return ImplicationTable::defaults();
		return ImplicationTable::load(config_.implications);
	}

	SearchSession::SearchSession(TaggedCorpus tagged, FeatureIndex index, Vocabulary vocabulary, ImplicationTable table)
		: tagged_(std::make_unique<TaggedCorpus>(std::move(tagged))),
		  index_(std::make_unique<FeatureIndex>(std::move(index)))
	{
		searcher_ = std::make_unique<Searcher>(*tagged_, *index_, std::move(vocabulary), std::move(table));
	}
}
