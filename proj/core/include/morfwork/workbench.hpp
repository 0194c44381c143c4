#pragma once

#include <morfwork/analyzer.hpp>
#include <morfwork/corpus.hpp>
#include <morfwork/disambiguator.hpp>
#include <morfwork/error.hpp>
#include <morfwork/index.hpp>
#include <morfwork/lexicon.hpp>
#include <morfwork/morphotactics.hpp>
#include <morfwork/phonology.hpp>
#include <morfwork/search.hpp>

#include <filesystem>
#include <memory>
#include <string>

namespace morfwork
{
	/// Thrown for missing or malformed configuration.
	class ConfigError : public Error
	{
	public:
		using Error::Error;
	};

	struct Config
	{
		std::filesystem::path rules;
		std::filesystem::path paradigms;
		std::filesystem::path lexicon;
		std::filesystem::path constraints;
		std::filesystem::path stats;
		std::filesystem::path implications;
		std::filesystem::path corpus;
		std::filesystem::path tagged;
		std::filesystem::path index;
		std::filesystem::path staticDir;
		std::string host = "127.0.0.1";
		int port = 8080;
		bool asciiFold = false;

		/// Every path under `dataDir` with the shipped file names.
		static Config defaults(const std::filesystem::path& dataDir);
		/// Directory compiled in at build time, overridable by MORFWORK_DATA_DIR.
		static std::filesystem::path defaultDataDir();
		/// key=value lines; relative paths resolve against the file's directory.
		/// A `data_dir` key re-bases every path not set explicitly.
		static Config parse(std::string_view text, const std::filesystem::path& baseDir, const std::string& sourceName = "<config>");
		static Config load(const std::filesystem::path& path);
		/// Loads $MORFWORK_CONFIG when set, else the defaults.
		static Config fromEnvironment();
	};

	/// Throws ConfigError naming the first missing file.
	void requireFile(const std::filesystem::path& path, std::string_view what);

	/// Loaded linguistic resources plus the analyzer built over them.
	class Workbench
	{
	public:
		explicit Workbench(const Config& config);
		Workbench(const Workbench&) = delete;
		Workbench& operator=(const Workbench&) = delete;

		const Config& config() const { return config_; }
		const Lexicon& lexicon() const { return *lexicon_; }
		const Morphotactics& morphotactics() const { return *morph_; }
		const PhonologyEngine& engine() const { return *engine_; }
		const Analyzer& analyzer() const { return *analyzer_; }

		/// Loads constraints and statistics from the configured files.
		Disambiguator disambiguator() const;
		ImplicationTable implications() const;
		Vocabulary vocabulary() const { return Vocabulary::from(*morph_); }

	private:
		Config config_;
		std::unique_ptr<Lexicon> lexicon_;
		std::unique_ptr<Morphotactics> morph_;
		std::unique_ptr<PhonologyEngine> engine_;
		std::unique_ptr<Analyzer> analyzer_;
	};

	/// A tagged corpus, its index and a searcher over both.
	class SearchSession
	{
	public:
		SearchSession(TaggedCorpus tagged, FeatureIndex index, Vocabulary vocabulary, ImplicationTable table);
		SearchSession(const SearchSession&) = delete;
		SearchSession& operator=(const SearchSession&) = delete;

		const TaggedCorpus& tagged() const { return *tagged_; }
		const FeatureIndex& index() const { return *index_; }
		const Searcher& searcher() const { return *searcher_; }

	private:
		std::unique_ptr<TaggedCorpus> tagged_;
		std::unique_ptr<FeatureIndex> index_;
		std::unique_ptr<Searcher> searcher_;
	};
}
