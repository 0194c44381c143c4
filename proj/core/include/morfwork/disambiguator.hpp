#pragma once

#include <morfwork/analyzer.hpp>
#include <morfwork/corpus.hpp>

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace morfwork
{
	/// One test inside a window slot.
	struct SlotTest
	{
		enum class Kind
		{
			Feature,    // dim=value, dim!=value, dim=* (present), dim!=* (absent)
			Suffix,     // suffix~NAME, suffix!~NAME
			Root,       // root=ev, root!=ev
			Word,       // word="senin"
		};

		Kind kind = Kind::Feature;
		Dimension dimension = Dimension::Category;
		std::string value;
		bool negated = false;

		std::string str() const;
	};

	struct SlotPattern
	{
		std::vector<SlotTest> tests;
		std::string str() const;
	};

	struct Constraint
	{
		enum class Action
		{
			Select,
			Discard,
		};

		std::string name;
		int priority = 0;
		Action action = Action::Select;
		std::vector<SlotPattern> window;
		std::size_t target = 0;
		std::size_t line = 0;

		std::string str() const;
	};

	/// Parses the constraint DSL; result sorted by priority, highest first.
	/// Throws ParseError (also for duplicate priorities or names).
	std::vector<Constraint> parseConstraints(std::string_view text, const std::string& sourceName = "<constraints>");
	std::vector<Constraint> loadConstraints(const std::filesystem::path& path);

	/// Root unigram counts from previously tagged text.
	class RootStats
	{
	public:
		static RootStats parse(std::string_view tsv, const std::string& sourceName = "<stats>");
		static RootStats load(const std::filesystem::path& path);

		void add(const std::string& root, std::uint64_t count);
		std::uint64_t count(const std::string& root) const;
		const std::map<std::string, std::uint64_t>& counts() const { return counts_; }

	private:
		std::map<std::string, std::uint64_t> counts_;
	};

	enum class Resolution
	{
		Unambiguous,
		Constraint,
		Statistics,
		Interactive,
		Unresolved,
		/// Punctuation tokens carry no analysis.
		Punctuation,
		/// No parse exists; chosen is absent.
		Unknown,
	};

	std::string_view name(Resolution r);

	struct TokenAnalysis
	{
		std::string token;
		std::vector<Parse> candidates;
		std::optional<std::size_t> chosen;
		Resolution resolvedBy = Resolution::Unresolved;
		/// Constraint that made the final cut when resolvedBy == Constraint.
		std::string constraint;

		const Parse* chosenParse() const { return chosen ? &candidates[*chosen] : nullptr; }
		/// "constraint:NAME" or the plain resolution name.
		std::string resolutionText() const;
	};

	/// Asked for tokens still ambiguous after constraints and statistics.
	/// Receives (sentence tokens, token index, remaining candidates) and
	/// returns an index into the remaining candidates.
	using InteractiveCallback =
		std::function<std::size_t(const std::vector<std::string>&, std::size_t, const std::vector<const Parse*>&)>;

	struct TagReport
	{
		std::size_t sentences = 0;
		std::size_t tokens = 0;
		std::map<Resolution, std::size_t> counts;
		std::map<std::string, std::size_t> constraintFirings;

		/// Tokens that went through the resolution pipeline (not punctuation or unknown).
		std::size_t analyzedTokens() const;
		/// Unresolved share of the analyzed tokens.
		double unresolvedRate() const;
		std::string str() const;
	};

	struct TagOptions
	{
		InteractiveCallback interactive;
		/// Throw UnresolvedTokens instead of falling back to the first candidate.
		bool strict = false;
		/// 0 picks hardware concurrency; ignored with an interactive callback.
		unsigned threads = 0;
	};

	class Disambiguator
	{
	public:
		Disambiguator(const Analyzer& analyzer, std::vector<Constraint> constraints, RootStats stats);

		std::vector<TokenAnalysis> tagSentence(const std::vector<std::string>& tokens,
			const InteractiveCallback& interactive = {}) const;

		/// Tags every sentence; the report counts resolutions.
		TaggedCorpus tagCorpus(const std::vector<Sentence>& sentences, TagReport* report = nullptr,
			const TagOptions& options = {}) const;

		const std::vector<Constraint>& constraints() const { return constraints_; }
		const RootStats& stats() const { return stats_; }

	private:
		const Analyzer& analyzer_;
		std::vector<Constraint> constraints_;
		RootStats stats_;
	};
}
