#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace morfwork
{
	using Symbol = char32_t;

	inline constexpr Symbol kNullSymbol = U'0';
	inline constexpr Symbol kBoundarySymbol = U'+';

	struct SymbolPair
	{
		Symbol lexical = kNullSymbol;
		Symbol surface = kNullSymbol;

		auto operator<=>(const SymbolPair&) const = default;
		std::string str() const;
	};

	/// A named contiguous run of a lexical string. Spans of zero width mark
	/// zero morphemes (no lexical material).
	struct MorphemeSpan
	{
		std::size_t start = 0;
		std::size_t end = 0;
		std::string name;

		bool operator==(const MorphemeSpan&) const = default;
	};

	class Alphabet;

	/// Root plus suffix material over surface characters, meta-phonemes and
	/// '+' boundaries, e.g. "ev+HmHz+yA".
	class LexicalString
	{
	public:
		LexicalString() = default;
		explicit LexicalString(std::u32string root);

		/// Parses "root+suf+suf"; spans are named root, 1, 2, ...
		static LexicalString parse(std::string_view text);

		/// Appends a morpheme; `form` is either empty (zero morpheme) or
		/// starts with '+'.
		void append(std::string_view name, std::u32string_view form);

		const std::u32string& symbols() const { return symbols_; }
		const std::vector<MorphemeSpan>& spans() const { return spans_; }
		std::string str() const;

		/// Throws morfwork::Error when a symbol is undeclared, spans are
		/// malformed, or a vowel meta-phoneme occurs in the root span.
		void validate(const Alphabet& alphabet) const;

		bool operator==(const LexicalString&) const = default;

	private:
		std::u32string symbols_;
		std::vector<MorphemeSpan> spans_;
	};

	class Alphabet
	{
	public:
		/// Ordinary (surface) symbols; '0' and '+' are implicit.
		const std::set<Symbol>& symbols() const { return symbols_; }
		const std::map<std::string, std::set<Symbol>>& classes() const { return classes_; }
		/// Meta-phoneme -> resolutions, in declaration order.
		const std::map<Symbol, std::vector<Symbol>>& metaPhonemes() const { return metas_; }
		const std::vector<SymbolPair>& feasiblePairs() const { return pairs_; }

		bool isDeclared(Symbol s) const;
		bool isMeta(Symbol s) const { return metas_.count(s) != 0; }
		bool hasClass(const std::string& name) const { return classes_.count(name) != 0; }
		/// Id of the pair in feasiblePairs(), or -1.
		int pairId(SymbolPair pair) const;
		/// Ids of feasible pairs with the given lexical symbol.
		const std::vector<int>& pairsFor(Symbol lexical) const;

		void addSymbol(Symbol s);
		void addClass(const std::string& name, std::set<Symbol> members);
		void addMeta(Symbol meta, std::vector<Symbol> resolutions);
		void addPair(SymbolPair pair);
		/// Adds implied pairs (identities, meta resolutions, +:0) and indexes.
		void finalize();

	private:
		std::set<Symbol> symbols_;
		std::map<std::string, std::set<Symbol>> classes_;
		std::map<Symbol, std::vector<Symbol>> metas_;
		std::vector<SymbolPair> pairs_;
		std::map<SymbolPair, int> pairIds_;
		std::map<Symbol, std::vector<int>> byLexical_;
	};

	enum class RuleOperator
	{
		ContextRestriction, // =>
		SurfaceCoercion,    // <=
		Composite,          // <=>
		Exclusion,          // /<=
	};

	std::string_view operatorToken(RuleOperator op);

	/// One context element: a pair pattern such as "H:0", ":Vowel", "Cons:"
	/// (empty side = any), or a grouping of such elements.
	struct ContextPattern
	{
		enum class Kind { Empty, Atom, Sequence, Alternation, Star };

		Kind kind = Kind::Empty;
		std::string lexical;
		std::string surface;
		std::vector<ContextPattern> items;

		std::string str() const;
	};

	struct VariableBinding
	{
		std::string variable;
		std::vector<std::string> values;
	};

	struct TwoLevelRule
	{
		std::string name;
		/// Pair as written; either side may be a variable bound by `where`.
		std::string lexical;
		std::string surface;
		RuleOperator op = RuleOperator::Composite;
		ContextPattern left;
		ContextPattern right;
		std::vector<VariableBinding> where;
		/// Variables advance together instead of forming a cross product.
		bool matched = false;
		std::size_t line = 0;

		std::string str() const;
	};

	struct RuleSet
	{
		Alphabet alphabet;
		std::vector<TwoLevelRule> rules;
	};

	/// Parses the rule DSL. Throws ParseError.
	RuleSet parseRules(std::string_view text, const std::string& sourceName = "<rules>");
	RuleSet loadRules(const std::filesystem::path& path);

	struct RuleDiagnostic
	{
		std::string firstRule;
		std::string secondRule;
		SymbolPair firstPair;
		SymbolPair secondPair;
		std::string message;
	};

	/// Approximate coercion-conflict check over a bounded context window.
	std::vector<RuleDiagnostic> checkRuleConflicts(const RuleSet& rules, std::size_t window = 3);

	using Alignment = std::vector<SymbolPair>;

	/// Compiled two-level rules run in parallel. Immutable and thread-safe.
	class PhonologyEngine
	{
	public:
		/// Configuration of a left-to-right alignment search: consumed
		/// surface length and the state of every rule automaton.
		struct Configuration
		{
			std::uint32_t surface = 0;
			std::vector<std::int32_t> states;

			auto operator<=>(const Configuration&) const = default;
		};
		using Frontier = std::vector<Configuration>;

		explicit PhonologyEngine(RuleSet rules);
		~PhonologyEngine();
		PhonologyEngine(PhonologyEngine&&) noexcept;
		PhonologyEngine& operator=(PhonologyEngine&&) noexcept;

		const Alphabet& alphabet() const;
		const std::vector<TwoLevelRule>& rules() const;
		std::size_t stateCount(std::size_t rule) const;

		/// All surface strings (nulls removed) admitted by every rule.
		std::set<std::u32string> generate(const LexicalString& lexical) const;
		/// Every admitted alignment of `lexical`.
		std::vector<Alignment> alignments(const LexicalString& lexical) const;
		/// Alignment search constrained by `surface`; does not enumerate generate.
		bool recognize(std::u32string_view surface, const LexicalString& lexical) const;

		Frontier start() const;
		/// Consumes lexical symbols against `surface`, dropping dead configurations.
		Frontier advance(const Frontier& frontier, std::u32string_view lexical, std::u32string_view surface) const;
		bool accepts(const Frontier& frontier, std::size_t surfaceLength) const;

	private:
		struct Impl;
		std::unique_ptr<Impl> impl_;
	};
}
