#pragma once

#include <morfwork/features.hpp>
#include <morfwork/lexicon.hpp>
#include <morfwork/morphotactics.hpp>
#include <morfwork/phonology.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace morfwork
{
	/// One morphological reading of a surface word.
	struct Parse
	{
		RootEntry root;
		std::vector<Morpheme> morphemes;
		LexicalString lexical;
		FeatureBundle features;
		/// Root followed by non-zero lexical forms, e.g. "kes+Hl+yAmA+DH".
		std::string gloss;

		std::vector<std::string> morphemeNames() const;
		/// "ev/noun+GEN"; zero morphemes included.
		std::string signature() const;

		bool operator==(const Parse& other) const { return signature() == other.signature(); }
	};

	FeatureBundle makeFeatures(const RootEntry& root, const std::vector<const Morpheme*>& morphemes);
	std::string makeGloss(std::string_view root, const std::vector<std::string>& lexicalForms);

	/// Word-level analysis and generation over borrowed, immutable resources.
	/// The referenced objects must outlive the analyzer.
	class Analyzer
	{
	public:
		Analyzer(const Lexicon& lexicon, const Morphotactics& morphotactics, const PhonologyEngine& engine);

		/// All parses of `word` (Turkish case folding applied), in a fixed
		/// order: longer root first, fewer morphemes first, then by gloss.
		/// Throws UnknownWord when nothing parses, Error on empty input.
		std::vector<Parse> analyze(std::string_view word) const;
		/// |analyze(word)|, 0 for unknown words.
		std::size_t ambiguityDegree(std::string_view word) const;

		/// Throws IllegalMorphotactics or NoRealization.
		std::string generate(const RootEntry& root, const std::vector<std::string>& morphemeNames) const;
		/// Resolves `root` in the lexicon; when it has several categories the
		/// first whose paradigm accepts the path wins.
		std::string generate(std::string_view root, const std::vector<std::string>& morphemeNames) const;

		Parse makeParse(const RootEntry& root, const std::vector<const Morpheme*>& path) const;

		const Lexicon& lexicon() const { return lexicon_; }
		const Morphotactics& morphotactics() const { return morph_; }
		const PhonologyEngine& engine() const { return engine_; }

	private:
		const Lexicon& lexicon_;
		const Morphotactics& morph_;
		const PhonologyEngine& engine_;
	};

	/// The ordering used by Analyzer::analyze.
	bool parseOrder(const Parse& a, const Parse& b);
}
