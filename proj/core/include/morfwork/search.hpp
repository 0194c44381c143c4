#pragma once

#include <morfwork/corpus.hpp>
#include <morfwork/features.hpp>
#include <morfwork/index.hpp>
#include <morfwork/morphotactics.hpp>

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace morfwork
{
	/// Conjunctive query: one optional value per scalar dimension plus
	/// optional suffix and root.
	struct Query
	{
		std::array<std::optional<std::string>, kDimensionCount> values;
		std::optional<std::string> suffix;
		std::optional<std::string> root;
		/// Set when category was filled in by implication rather than by the
		/// user; an implied category matches its whole class (see ImplicationTable).
		bool categoryImplied = false;

		const std::optional<std::string>& operator[](Dimension d) const { return values[static_cast<std::size_t>(d)]; }
		std::optional<std::string>& operator[](Dimension d) { return values[static_cast<std::size_t>(d)]; }

		bool empty() const;
		/// "agreement=3sg,aspect=past"; fields in dimension order, then suffix, root.
		std::string str() const;

		/// Builds a query from (field, value) pairs; fields are the dimension
		/// names plus "suffix" and "root". Throws InvalidQuery.
		static Query fromPairs(const std::vector<std::pair<std::string, std::string>>& pairs);

		bool operator==(const Query&) const = default;
	};

	struct Conflict
	{
		/// The user-set fields whose implications clash.
		std::vector<std::pair<std::string, std::string>> features;
		/// The dimension on which they clash, and the incompatible values.
		std::string dimension;
		std::vector<std::string> values;
		std::string explanation;
	};

	/// Which dimensions imply a category, and which categories an implied
	/// category admits.
	class ImplicationTable
	{
	public:
		/// The built-in table: case/possessive imply noun, verbal dimensions
		/// imply verb, an implied noun admits adjectives and pronouns too.
		static ImplicationTable defaults();
		static ImplicationTable parse(std::string_view text, const std::string& sourceName = "<implications>");
		static ImplicationTable load(const std::filesystem::path& path);

		std::optional<Category> implied(Dimension d) const;
		/// Categories matched by an implied category.
		const std::set<Category>& matchClass(Category c) const;

	private:
		std::map<Dimension, Category> implies_;
		std::map<Category, std::set<Category>> classes_;
	};

	using Expansion = std::variant<Query, Conflict>;

	Expansion impliedFeatures(const Query& q, const ImplicationTable& table);

	/// Values accepted per field.
	struct Vocabulary
	{
		std::map<Dimension, std::set<std::string>> values;
		std::set<std::string> suffixes;

		static Vocabulary from(const Morphotactics& morph);
	};

	struct SentenceHit
	{
		std::size_t sentenceId = 0;
		std::string text;
		std::vector<std::size_t> matches;

		bool operator==(const SentenceHit&) const = default;
	};

	using SearchResult = std::variant<std::vector<SentenceHit>, Conflict>;

	/// Does the reading satisfy every field of an expanded query?
	bool matches(const FeatureBundle& reading, const Query& expanded, const ImplicationTable& table);

	/// Read-only search over a tagged corpus and its index. The referenced
	/// objects must outlive the searcher.
	class Searcher
	{
	public:
		Searcher(const TaggedCorpus& tagged, const FeatureIndex& index, Vocabulary vocabulary, ImplicationTable table);

		/// Throws InvalidQuery (empty) or UnknownFeatureValue.
		void validate(const Query& q) const;
		Expansion expand(const Query& q) const { return impliedFeatures(q, table_); }

		/// Posting-list intersection.
		SearchResult search(const Query& q) const;
		/// Linear scan of the tagged corpus; same contract as search.
		SearchResult scan(const Query& q) const;

		/// Matching tokens of an already expanded query.
		PostingList indexPostings(const Query& expanded) const;
		PostingList scanPostings(const Query& expanded) const;

		const Vocabulary& vocabulary() const { return vocab_; }
		const ImplicationTable& implications() const { return table_; }
		const TaggedCorpus& tagged() const { return tagged_; }
		const FeatureIndex& index() const { return index_; }

	private:
		std::vector<SentenceHit> group(const PostingList& postings) const;

		const TaggedCorpus& tagged_;
		const FeatureIndex& index_;
		Vocabulary vocab_;
		ImplicationTable table_;
	};

	struct AnalysisView
	{
		std::string token;
		/// Root plus lexical forms, e.g. "kes+Hl+yAmA+DH".
		std::string lexicalGloss;
		/// (label, display value): Root, Category, then present dimensions.
		std::vector<std::pair<std::string, std::string>> fields;
	};

	/// Throws OutOfRange or NoAnalysis.
	AnalysisView analysisView(const TaggedCorpus& tagged, std::size_t sentenceId, std::size_t tokenIndex,
		const Morphotactics& morph);
}
